//! Word enumeration and element-level structural operations (addition,
//! scaling, equality, degree) that only need the coefficient backend.

use super::{NFElement, NFMono};
use crate::algebra::Algebra;
use crate::coeff::{CoeffBackend, ParamScalar};
use crate::error::{Error, Result};

/// All words with the given content, in lexicographic order on letter
/// sequences. The empty content yields exactly the empty word.
pub fn enumerate_words(content: &[i64]) -> Vec<Vec<u8>> {
    let total: i64 = content.iter().sum();
    let mut out = Vec::new();
    let mut remaining: Vec<i64> = content.to_vec();
    let mut cur: Vec<u8> = Vec::with_capacity(total as usize);
    fn rec(remaining: &mut [i64], cur: &mut Vec<u8>, left: i64, out: &mut Vec<Vec<u8>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in 0..remaining.len() {
            if remaining[i] > 0 {
                remaining[i] -= 1;
                cur.push(i as u8);
                rec(remaining, cur, left - 1, out);
                cur.pop();
                remaining[i] += 1;
            }
        }
    }
    rec(&mut remaining, &mut cur, total, &mut out);
    out
}

impl<C: CoeffBackend> Algebra<C> {
    /// The identity element.
    pub fn nf_one(&self) -> NFElement<C::Elt> {
        NFElement::single(NFMono::identity(self.rank()), self.backend.one())
    }

    /// The generator e_i.
    pub fn gen_e(&self, i: usize) -> NFElement<C::Elt> {
        let mut m = NFMono::identity(self.rank());
        m.e = vec![i as u8];
        NFElement::single(m, self.backend.one())
    }

    /// The generator f_i.
    pub fn gen_f(&self, i: usize) -> NFElement<C::Elt> {
        let mut m = NFMono::identity(self.rank());
        m.f = vec![i as u8];
        NFElement::single(m, self.backend.one())
    }

    /// The torus monomial w'_eta w_phi.
    pub fn gen_torus(&self, eta: &[i64], phi: &[i64]) -> NFElement<C::Elt> {
        let m = NFMono {
            f: Vec::new(),
            eta: eta.to_vec(),
            phi: phi.to_vec(),
            e: Vec::new(),
        };
        NFElement::single(m, self.backend.one())
    }

    /// A scalar multiple of the identity.
    pub fn nf_scalar(&self, c: C::Elt) -> NFElement<C::Elt> {
        if self.backend.is_zero(&c) {
            return NFElement::zero();
        }
        NFElement::single(NFMono::identity(self.rank()), c)
    }

    pub fn nf_from_param(&self, s: &ParamScalar) -> Result<NFElement<C::Elt>> {
        Ok(self.nf_scalar(self.backend.from_param(s)?))
    }

    /// Add `coeff * mono` into `acc`, pruning a resulting zero.
    pub fn nf_insert(&self, acc: &mut NFElement<C::Elt>, mono: NFMono, coeff: C::Elt) {
        if self.backend.is_zero(&coeff) {
            return;
        }
        match acc.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.backend.add(o.get(), &coeff);
                if self.backend.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nf_add(&self, a: &NFElement<C::Elt>, b: &NFElement<C::Elt>) -> NFElement<C::Elt> {
        let mut out = a.clone();
        for (m, c) in b.iter() {
            self.nf_insert(&mut out, m.clone(), c.clone());
        }
        out
    }

    pub fn nf_sub(&self, a: &NFElement<C::Elt>, b: &NFElement<C::Elt>) -> NFElement<C::Elt> {
        let mut out = a.clone();
        for (m, c) in b.iter() {
            self.nf_insert(&mut out, m.clone(), self.backend.neg(c));
        }
        out
    }

    pub fn nf_scale(&self, a: &NFElement<C::Elt>, c: &C::Elt) -> NFElement<C::Elt> {
        if self.backend.is_zero(c) {
            return NFElement::zero();
        }
        let mut out = NFElement::zero();
        for (m, x) in a.iter() {
            self.nf_insert(&mut out, m.clone(), self.backend.mul(x, c));
        }
        out
    }

    pub fn nf_neg(&self, a: &NFElement<C::Elt>) -> NFElement<C::Elt> {
        let mut out = NFElement::zero();
        for (m, x) in a.iter() {
            out.terms.insert(m.clone(), self.backend.neg(x));
        }
        out
    }

    pub fn nf_is_zero(&self, a: &NFElement<C::Elt>) -> bool {
        a.terms.values().all(|c| self.backend.is_zero(c))
    }

    pub fn nf_eq(&self, a: &NFElement<C::Elt>, b: &NFElement<C::Elt>) -> bool {
        self.nf_is_zero(&self.nf_sub(a, b))
    }

    /// The Q-degree if homogeneous, else an error naming the element's role.
    pub fn nf_degree(&self, a: &NFElement<C::Elt>, role: &str) -> Result<Vec<i64>> {
        let mut deg: Option<Vec<i64>> = None;
        for (m, _) in a.iter() {
            let d = m.degree(self.rank());
            match &deg {
                None => deg = Some(d),
                Some(existing) if *existing == d => {}
                Some(_) => {
                    return Err(Error::NonHomogeneous(format!(
                        "{role}: mixed Q-degrees in element"
                    )))
                }
            }
        }
        Ok(deg.unwrap_or_else(|| vec![0; self.rank()]))
    }
}
