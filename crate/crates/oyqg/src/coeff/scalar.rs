//! Exact scalars: fractions of integer Laurent polynomials in q and the
//! off-diagonal parameters.
//!
//! Invariants: the denominator is never zero; after reduce() the integer
//! content gcd of numerator and denominator is 1, the denominator's minimal
//! exponent per variable is 0, its leading (lex-maximal) coefficient is
//! positive, and zero is stored as 0/1. Equality is decided by
//! cross-multiplication, so unreduced representatives compare correctly.

use crate::coeff::poly::{ExpVec, LaurentPoly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

/// Exact rational function in the parameter variables.
#[derive(Clone, Debug)]
pub struct ParamScalar {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
    pub nvars: usize,
}

impl ParamScalar {
    pub fn zero(nvars: usize) -> Self {
        ParamScalar {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(nvars),
            nvars,
        }
    }

    pub fn one(nvars: usize) -> Self {
        ParamScalar {
            num: LaurentPoly::one(nvars),
            den: LaurentPoly::one(nvars),
            nvars,
        }
    }

    pub fn from_int(nvars: usize, k: i64) -> Self {
        ParamScalar {
            num: LaurentPoly::constant(nvars, BigInt::from(k)),
            den: LaurentPoly::one(nvars),
            nvars,
        }
    }

    pub fn from_poly(nvars: usize, num: LaurentPoly) -> Self {
        ParamScalar {
            num,
            den: LaurentPoly::one(nvars),
            nvars,
        }
    }

    /// Single monomial c * prod v_k^{exps_k}.
    pub fn monomial(nvars: usize, exps: ExpVec, c: i64) -> Self {
        debug_assert_eq!(exps.len(), nvars);
        ParamScalar {
            num: LaurentPoly::monomial(exps, BigInt::from(c)),
            den: LaurentPoly::one(nvars),
            nvars,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when numerator and denominator are single terms.
    pub fn is_monomial(&self) -> bool {
        self.num.is_monomial() && self.den.is_monomial()
    }

    /// Canonical representative: content gcd 1, denominator min exponents 0,
    /// denominator leading coefficient positive.
    pub fn reduce(&self) -> Self {
        if self.num.is_zero() {
            return ParamScalar::zero(self.nvars);
        }
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        // Shift so the denominator's per-variable minimum exponent is 0.
        if let Some(m) = den.min_exps() {
            if m.iter().any(|&x| x != 0) {
                let shift: ExpVec = m.iter().map(|x| -x).collect();
                num = num.mul_monomial(&shift, &BigInt::one());
                den = den.mul_monomial(&shift, &BigInt::one());
            }
        }
        let g = num.content().gcd(&den.content());
        if !g.is_one() {
            num = num.div_int(&g);
            den = den.div_int(&g);
        }
        if let Some((_, c)) = den.leading() {
            if c.is_negative() {
                num = num.neg();
                den = den.neg();
            }
        }
        ParamScalar {
            num,
            den,
            nvars: self.nvars,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.den == other.den {
            return ParamScalar {
                num: self.num.add(&other.num),
                den: self.den.clone(),
                nvars: self.nvars,
            }
            .reduce();
        }
        ParamScalar {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
            nvars: self.nvars,
        }
        .reduce()
    }

    pub fn neg(&self) -> Self {
        ParamScalar {
            num: self.num.neg(),
            den: self.den.clone(),
            nvars: self.nvars,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return ParamScalar::zero(self.nvars);
        }
        ParamScalar {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
            nvars: self.nvars,
        }
        .reduce()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ParamScalar {
            num: self.den.clone(),
            den: self.num.clone(),
            nvars: self.nvars,
        }
        .reduce())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(ParamScalar::one(self.nvars));
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = ParamScalar::one(self.nvars);
        let mut sq = base;
        let mut n = k.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&sq);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Fractional power a/b of a monomial scalar with unit coefficient.
    /// Every exponent times a must be divisible by b.
    pub fn pow_frac(&self, a: i64, b: i64) -> Result<Self> {
        debug_assert!(b > 0);
        if b == 1 {
            return self.pow(a);
        }
        let r = self.reduce();
        if r.is_zero() {
            return Err(Error::FractionalPower { num: a, den: b });
        }
        let (ne, nc) = match r.num.single_term() {
            Some(t) => t,
            None => return Err(Error::FractionalPower { num: a, den: b }),
        };
        let (de, dc) = match r.den.single_term() {
            Some(t) => t,
            None => return Err(Error::FractionalPower { num: a, den: b }),
        };
        if !nc.is_one() || !dc.is_one() {
            return Err(Error::FractionalPower { num: a, den: b });
        }
        let mut exps = Vec::with_capacity(r.nvars);
        for (x, y) in ne.iter().zip(de) {
            let e = (x - y).checked_mul(a).ok_or(Error::FractionalPower { num: a, den: b })?;
            if e % b != 0 {
                return Err(Error::FractionalPower { num: a, den: b });
            }
            exps.push(e / b);
        }
        Ok(ParamScalar::monomial(r.nvars, exps, 1))
    }

    /// Specialize every off-diagonal parameter to 1; the result lives in the
    /// one-variable ring over q alone.
    pub fn specialize_t_one(&self) -> Self {
        ParamScalar {
            num: self.num.specialize_t_one(),
            den: self.den.specialize_t_one(),
            nvars: 1,
        }
        .reduce()
    }

    pub fn eq_scalar(&self, other: &Self) -> bool {
        debug_assert_eq!(self.nvars, other.nvars);
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl PartialEq for ParamScalar {
    fn eq(&self, other: &Self) -> bool {
        self.eq_scalar(other)
    }
}

impl Eq for ParamScalar {}

/// Quantum integer [m] at q^d: (q^{dm} - q^{-dm})/(q^d - q^{-d}) as a Laurent
/// polynomial. Stored exponents are scaled by the lattice denominator r.
pub fn quantum_integer(nvars: usize, r: i64, d: i64, m: i64) -> ParamScalar {
    let sign = if m < 0 { -1 } else { 1 };
    let mm = m.abs();
    let mut p = LaurentPoly::zero();
    for s in 0..mm {
        let mut e = vec![0i64; nvars];
        e[0] = r * d * (mm - 1 - 2 * s);
        p = p.add(&LaurentPoly::monomial(e, BigInt::from(sign)));
    }
    ParamScalar::from_poly(nvars, p)
}

/// Gaussian binomial coefficient [m choose k] at q^d, computed by exact
/// division of products of quantum integers. Zero when k > m; errors on
/// negative arguments.
pub fn quantum_binomial(nvars: usize, r: i64, d: i64, m: i64, k: i64) -> Result<ParamScalar> {
    if m < 0 || k < 0 {
        return Err(Error::BinomialRange { m, k });
    }
    if k > m {
        return Ok(ParamScalar::zero(nvars));
    }
    let mut num = LaurentPoly::one(nvars);
    let mut den = LaurentPoly::one(nvars);
    for s in 1..=k {
        num = num.mul(&quantum_integer(nvars, r, d, m - k + s).num);
        den = den.mul(&quantum_integer(nvars, r, d, s).num);
    }
    let q = num
        .try_exact_div(&den)
        .expect("Gaussian binomials are Laurent polynomials");
    Ok(ParamScalar::from_poly(nvars, q))
}
