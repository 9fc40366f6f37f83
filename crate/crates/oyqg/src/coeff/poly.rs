//! Sparse multivariate Laurent polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Invariants: no stored zero coefficients; every exponent vector has the
//! same length (the VarSet's variable count); the canonical term order is
//! lexicographic on exponent vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Exponent vector, entries scaled by the lattice denominator r.
pub type ExpVec = Vec<i64>;

/// Sparse Laurent polynomial: exponent vector -> nonzero integer coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    pub terms: BTreeMap<ExpVec, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        LaurentPoly { terms }
    }

    /// Single term c * x^exps.
    pub fn monomial(exps: ExpVec, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True if the polynomial is a single term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_one(&self) -> bool {
        if let Some((e, c)) = self.single_term() {
            e.iter().all(|&x| x == 0) && c.is_one()
        } else {
            false
        }
    }

    pub fn single_term(&self) -> Option<(&ExpVec, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            match terms.get_mut(e) {
                Some(acc) => {
                    *acc += c;
                    if acc.is_zero() {
                        terms.remove(e);
                    }
                }
                None => {
                    terms.insert(e.clone(), c.clone());
                }
            }
        }
        LaurentPoly { terms }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<ExpVec, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: ExpVec = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let prod = c1 * c2;
                match terms.get_mut(&e) {
                    Some(acc) => {
                        *acc += prod;
                        if acc.is_zero() {
                            terms.remove(&e);
                        }
                    }
                    None => {
                        terms.insert(e, prod);
                    }
                }
            }
        }
        LaurentPoly { terms }
    }

    /// Multiply by a single term (exponent shift plus integer scaling).
    pub fn mul_monomial(&self, exps: &[i64], c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), k * c))
                .collect(),
        }
    }

    /// Greatest common divisor of all coefficients (zero for the zero poly).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Exact division of every coefficient by d.
    pub fn div_int(&self, d: &BigInt) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let (q, r) = c.div_rem(d);
                    debug_assert!(r.is_zero(), "non-exact integer division");
                    (e.clone(), q)
                })
                .collect(),
        }
    }

    /// Per-variable minimum exponent over all terms. None for the zero poly.
    pub fn min_exps(&self) -> Option<ExpVec> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |mut acc, e| {
            for (a, b) in acc.iter_mut().zip(e) {
                if *b < *a {
                    *a = *b;
                }
            }
            acc
        }))
    }

    /// Leading term under the canonical (lexicographic) order.
    pub fn leading(&self) -> Option<(&ExpVec, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Exact polynomial division: Some(q) with self = q * d, or None when the
    /// division is not exact. Both sides are shifted to nonnegative
    /// exponents first; there, lexicographic leading-term elimination is
    /// well-founded and a negative quotient exponent certifies failure.
    pub fn try_exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let ms = self.min_exps().expect("nonzero");
        let md = d.min_exps().expect("nonzero");
        let unshift_s: ExpVec = ms.iter().map(|x| -x).collect();
        let unshift_d: ExpVec = md.iter().map(|x| -x).collect();
        let sp = self.mul_monomial(&unshift_s, &BigInt::one());
        let dp = d.mul_monomial(&unshift_d, &BigInt::one());
        let (dl_e, dl_c) = dp.leading()?;
        let dl_e = dl_e.clone();
        let dl_c = dl_c.clone();
        let mut rem = sp;
        let mut quot = LaurentPoly::zero();
        while !rem.is_zero() {
            let (rl_e, rl_c) = rem.leading().expect("nonzero has a leading term");
            let qe: ExpVec = rl_e.iter().zip(&dl_e).map(|(a, b)| a - b).collect();
            // In an exact quotient of min-exponent-0 polynomials, every
            // quotient exponent is nonnegative.
            if qe.iter().any(|&x| x < 0) {
                return None;
            }
            let (qc, r) = rl_c.div_rem(&dl_c);
            if !r.is_zero() {
                return None;
            }
            let qt = LaurentPoly::monomial(qe, qc);
            rem = rem.sub(&qt.mul(&dp));
            quot = quot.add(&qt);
        }
        // Undo the shifts: self/d = (sp/dp) * x^{ms - md}.
        let back: ExpVec = ms.iter().zip(&md).map(|(a, b)| a - b).collect();
        Some(quot.mul_monomial(&back, &BigInt::one()))
    }

    /// Substitute every t-variable by 1, keeping only the q-exponent.
    /// Variable 0 is q; all others are t's.
    pub fn specialize_t_one(&self) -> Self {
        let mut terms: BTreeMap<ExpVec, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            let key = vec![e[0]];
            match terms.get_mut(&key) {
                Some(acc) => {
                    *acc += c;
                    if acc.is_zero() {
                        terms.remove(&key);
                    }
                }
                None => {
                    terms.insert(key, c.clone());
                }
            }
        }
        LaurentPoly { terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn qpow(k: i64) -> LaurentPoly {
        LaurentPoly::monomial(vec![k], BigInt::one())
    }

    #[test]
    fn arithmetic_basics() {
        let a = qpow(2).add(&qpow(-2));
        let b = qpow(2).sub(&qpow(-2));
        let prod = a.mul(&b);
        assert_eq!(prod, qpow(4).sub(&qpow(-4)));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn exact_division() {
        // (q^2 - q^-2) / (q - q^-1) = q + q^-1
        let num = qpow(2).sub(&qpow(-2));
        let den = qpow(1).sub(&qpow(-1));
        let q = num.try_exact_div(&den).expect("exact");
        assert_eq!(q, qpow(1).add(&qpow(-1)));
        // Non-exact division is detected.
        assert!(qpow(1).add(&LaurentPoly::one(1)).try_exact_div(&den).is_none());
    }

    #[test]
    fn content_and_min_exps() {
        let p = LaurentPoly::monomial(vec![2], BigInt::from(6))
            .add(&LaurentPoly::monomial(vec![-1], BigInt::from(-9)));
        assert_eq!(p.content().to_i64(), Some(3));
        assert_eq!(p.min_exps(), Some(vec![-1]));
    }
}
