//! Modular evaluation points: each variable's r-th root is assigned a nonzero
//! residue modulo a large prime, so evaluation is a ring homomorphism on the
//! (1/r)-exponent lattice.
//!
//! Invariant: every residue is nonzero mod p, hence invertible, so Laurent
//! (negative) exponents always evaluate.

use crate::coeff::poly::LaurentPoly;
use crate::coeff::scalar::ParamScalar;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Default evaluation primes, all below 2^61 so products fit in u128.
pub const PRIMES: [u64; 3] = [
    2305843009213693951,
    1152921504606846883,
    576460752303423433,
];

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Deterministic Miller-Rabin, exact for all u64.
pub fn is_probably_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// One evaluation point: a prime and a residue for each variable's r-th root.
#[derive(Clone, Debug)]
pub struct ModPoint {
    pub p: u64,
    pub root_res: Vec<u64>,
}

impl ModPoint {
    /// Deterministic point for (seed, index): the prime cycles through
    /// PRIMES and the residues come from a seeded stream.
    pub fn generate(nvars: usize, seed: u64, index: usize) -> Self {
        let p = PRIMES[index % PRIMES.len()];
        let mut rng = ChaCha20Rng::seed_from_u64(seed ^ ((index as u64).wrapping_mul(0x9e3779b97f4a7c15)));
        let root_res = (0..nvars).map(|_| rng.gen_range(2..p - 1)).collect();
        ModPoint { p, root_res }
    }

    /// Evaluate a stored (r-scaled) exponent of variable k.
    fn eval_var(&self, k: usize, e: i64) -> u64 {
        let ord = self.p - 1;
        let e = (e.rem_euclid(ord as i64)) as u64;
        powmod(self.root_res[k], e, self.p)
    }

    pub fn eval_poly(&self, poly: &LaurentPoly) -> u64 {
        let pbig = BigInt::from(self.p);
        let mut acc = 0u64;
        for (e, c) in &poly.terms {
            let mut t = {
                let m = ((c % &pbig) + &pbig) % &pbig;
                m.to_u64().expect("residue fits u64")
            };
            for (k, &ek) in e.iter().enumerate() {
                if ek != 0 {
                    t = mulmod(t, self.eval_var(k, ek), self.p);
                }
            }
            acc = (acc + t) % self.p;
        }
        acc
    }

    /// Evaluate a scalar; a vanishing denominator at this point is reported
    /// as a retryable error, not a verdict about the scalar.
    pub fn eval_scalar(&self, s: &ParamScalar) -> Result<u64> {
        let d = self.eval_poly(&s.den);
        if d == 0 {
            return Err(Error::RetryPoint);
        }
        let n = self.eval_poly(&s.num);
        Ok(mulmod(n, invmod(d, self.p), self.p))
    }
}
