//! Hopf structure: coproduct, counit, antipode, and the left adjoint action.
//!
//! On generators:
//!   coproduct(e_i) = e_i (x) 1 + w_i (x) e_i
//!   coproduct(f_i) = f_i (x) w'_i + 1 (x) f_i
//!   coproduct(w'_i) = w'_i (x) w'_i,  coproduct(w_i) = w_i (x) w_i
//!   counit(e_i) = counit(f_i) = 0, counit on the torus = 1
//!   antipode(e_i) = -w_i^{-1} e_i,  antipode(f_i) = -f_i w'^{-1}_i,
//!   antipode inverts torus monomials.
//! The coproduct and counit extend multiplicatively, the antipode
//! antimultiplicatively.

use super::{NFElement, NFMono};
use crate::algebra::Algebra;
use crate::coeff::CoeffBackend;
use crate::error::Result;
use std::collections::BTreeMap;

/// An element of the two-fold tensor product, as a sum of pairs of
/// normal-form monomials with a single coefficient.
#[derive(Clone, Debug)]
pub struct TensorElement<T> {
    pub terms: BTreeMap<(NFMono, NFMono), T>,
}

impl<T: Clone> TensorElement<T> {
    pub fn zero() -> Self {
        TensorElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(NFMono, NFMono), &T)> {
        self.terms.iter()
    }
}

impl<C: CoeffBackend> Algebra<C> {
    pub fn tensor_one(&self) -> TensorElement<C::Elt> {
        let mut t = TensorElement::zero();
        let id = NFMono::identity(self.rank());
        t.terms.insert((id.clone(), id), self.backend.one());
        t
    }

    pub fn tensor_insert(
        &self,
        acc: &mut TensorElement<C::Elt>,
        key: (NFMono, NFMono),
        coeff: C::Elt,
    ) {
        if self.backend.is_zero(&coeff) {
            return;
        }
        match acc.terms.entry(key) {
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

    pub fn tensor_add(
        &self,
        a: &TensorElement<C::Elt>,
        b: &TensorElement<C::Elt>,
    ) -> TensorElement<C::Elt> {
        let mut out = a.clone();
        for (k, c) in b.iter() {
            self.tensor_insert(&mut out, k.clone(), c.clone());
        }
        out
    }

    pub fn tensor_sub(
        &self,
        a: &TensorElement<C::Elt>,
        b: &TensorElement<C::Elt>,
    ) -> TensorElement<C::Elt> {
        let mut out = a.clone();
        for (k, c) in b.iter() {
            self.tensor_insert(&mut out, k.clone(), self.backend.neg(c));
        }
        out
    }

    pub fn tensor_is_zero(&self, a: &TensorElement<C::Elt>) -> bool {
        a.terms.values().all(|c| self.backend.is_zero(c))
    }

    pub fn tensor_eq(&self, a: &TensorElement<C::Elt>, b: &TensorElement<C::Elt>) -> bool {
        self.tensor_is_zero(&self.tensor_sub(a, b))
    }

    /// Componentwise product of tensor elements.
    pub fn tensor_mul(
        &self,
        a: &TensorElement<C::Elt>,
        b: &TensorElement<C::Elt>,
    ) -> Result<TensorElement<C::Elt>> {
        let mut out = TensorElement::zero();
        for ((a1, a2), ca) in a.iter() {
            for ((b1, b2), cb) in b.iter() {
                let left = self.multiply(
                    &NFElement::single(a1.clone(), self.backend.one()),
                    &NFElement::single(b1.clone(), self.backend.one()),
                )?;
                let right = self.multiply(
                    &NFElement::single(a2.clone(), self.backend.one()),
                    &NFElement::single(b2.clone(), self.backend.one()),
                )?;
                let cab = self.backend.mul(ca, cb);
                for (ml, cl) in left.iter() {
                    let c_part = self.backend.mul(&cab, cl);
                    for (mr, cr) in right.iter() {
                        self.tensor_insert(
                            &mut out,
                            (ml.clone(), mr.clone()),
                            self.backend.mul(&c_part, cr),
                        );
                    }
                }
            }
        }
        Ok(out)
    }

    /// Tensor product of two plain elements.
    pub fn tensor_of(
        &self,
        a: &NFElement<C::Elt>,
        b: &NFElement<C::Elt>,
    ) -> TensorElement<C::Elt> {
        let mut out = TensorElement::zero();
        for (ma, ca) in a.iter() {
            for (mb, cb) in b.iter() {
                self.tensor_insert(
                    &mut out,
                    (ma.clone(), mb.clone()),
                    self.backend.mul(ca, cb),
                );
            }
        }
        out
    }

    fn coproduct_e(&self, i: usize) -> TensorElement<C::Elt> {
        let mut t = TensorElement::zero();
        let rank = self.rank();
        let mut e = NFMono::identity(rank);
        e.e = vec![i as u8];
        let mut w = NFMono::identity(rank);
        w.phi[i] = 1;
        t.terms
            .insert((e.clone(), NFMono::identity(rank)), self.backend.one());
        t.terms.insert((w, e), self.backend.one());
        t
    }

    fn coproduct_f(&self, i: usize) -> TensorElement<C::Elt> {
        let mut t = TensorElement::zero();
        let rank = self.rank();
        let mut f = NFMono::identity(rank);
        f.f = vec![i as u8];
        let mut wp = NFMono::identity(rank);
        wp.eta[i] = 1;
        t.terms.insert((f.clone(), wp), self.backend.one());
        t.terms.insert((NFMono::identity(rank), f), self.backend.one());
        t
    }

    /// The coproduct, extended multiplicatively over normal-form monomials.
    pub fn coproduct(&self, x: &NFElement<C::Elt>) -> Result<TensorElement<C::Elt>> {
        let mut out = TensorElement::zero();
        for (m, c) in x.iter() {
            let mut acc = self.tensor_one();
            for &l in &m.f {
                acc = self.tensor_mul(&acc, &self.coproduct_f(l as usize))?;
            }
            // Group-like torus block.
            let mut t = TensorElement::zero();
            let tm = NFMono {
                f: Vec::new(),
                eta: m.eta.clone(),
                phi: m.phi.clone(),
                e: Vec::new(),
            };
            t.terms.insert((tm.clone(), tm), self.backend.one());
            acc = self.tensor_mul(&acc, &t)?;
            for &l in &m.e {
                acc = self.tensor_mul(&acc, &self.coproduct_e(l as usize))?;
            }
            for (k, v) in acc.iter() {
                self.tensor_insert(&mut out, k.clone(), self.backend.mul(c, v));
            }
        }
        Ok(out)
    }

    /// The counit: kills e- and f-letters, sends torus monomials to one.
    pub fn counit(&self, x: &NFElement<C::Elt>) -> C::Elt {
        let mut acc = self.backend.zero();
        for (m, c) in x.iter() {
            if m.f.is_empty() && m.e.is_empty() {
                acc = self.backend.add(&acc, c);
            }
        }
        acc
    }

    /// The antipode, extended antimultiplicatively.
    pub fn antipode(&self, x: &NFElement<C::Elt>) -> Result<NFElement<C::Elt>> {
        let mut out = NFElement::zero();
        let rank = self.rank();
        for (m, c) in x.iter() {
            // S(f T e) = S(e_last)...S(e_first) S(T) S(f_last)...S(f_first).
            let mut factors: Vec<NFElement<C::Elt>> = Vec::new();
            for &l in m.e.iter().rev() {
                // S(e_i) = -w_i^{-1} e_i.
                let i = l as usize;
                let mut mono = NFMono::identity(rank);
                mono.phi[i] = -1;
                mono.e = vec![l];
                factors.push(NFElement::single(
                    mono,
                    self.backend.neg(&self.backend.one()),
                ));
            }
            {
                let mut mono = NFMono::identity(rank);
                mono.eta = m.eta.iter().map(|x| -x).collect();
                mono.phi = m.phi.iter().map(|x| -x).collect();
                factors.push(NFElement::single(mono, self.backend.one()));
            }
            for &l in m.f.iter().rev() {
                // S(f_i) = -f_i w'^{-1}_i.
                let i = l as usize;
                let mut mono = NFMono::identity(rank);
                mono.eta[i] = -1;
                mono.f = vec![l];
                factors.push(NFElement::single(
                    mono,
                    self.backend.neg(&self.backend.one()),
                ));
            }
            let prod = self.multiply_all(&factors)?;
            for (mp, cp) in prod.iter() {
                self.nf_insert(&mut out, mp.clone(), self.backend.mul(c, cp));
            }
        }
        Ok(out)
    }

    /// Left adjoint action: ad(x) b = sum x_(1) b S(x_(2)).
    pub fn ad_left(
        &self,
        x: &NFElement<C::Elt>,
        b: &NFElement<C::Elt>,
    ) -> Result<NFElement<C::Elt>> {
        let cop = self.coproduct(x)?;
        let mut out = NFElement::zero();
        let mut antipode_cache: BTreeMap<NFMono, NFElement<C::Elt>> = BTreeMap::new();
        for ((m1, m2), c) in cop.iter() {
            let s2 = match antipode_cache.get(m2) {
                Some(v) => v.clone(),
                None => {
                    let v = self
                        .antipode(&NFElement::single(m2.clone(), self.backend.one()))?;
                    antipode_cache.insert(m2.clone(), v.clone());
                    v
                }
            };
            let left = self.multiply(&NFElement::single(m1.clone(), self.backend.one()), b)?;
            let prod = self.multiply(&left, &s2)?;
            for (mp, cp) in prod.iter() {
                self.nf_insert(&mut out, mp.clone(), self.backend.mul(c, cp));
            }
        }
        Ok(out)
    }

    /// Apply counit to the second tensor leg: (id (x) counit).
    pub fn tensor_counit_right(&self, t: &TensorElement<C::Elt>) -> NFElement<C::Elt> {
        let mut out = NFElement::zero();
        for ((m1, m2), c) in t.iter() {
            if m2.f.is_empty() && m2.e.is_empty() {
                self.nf_insert(&mut out, m1.clone(), c.clone());
            }
        }
        out
    }

    /// Apply counit to the first tensor leg: (counit (x) id).
    pub fn tensor_counit_left(&self, t: &TensorElement<C::Elt>) -> NFElement<C::Elt> {
        let mut out = NFElement::zero();
        for ((m1, m2), c) in t.iter() {
            if m1.f.is_empty() && m1.e.is_empty() {
                self.nf_insert(&mut out, m2.clone(), c.clone());
            }
        }
        out
    }

    /// Multiplication after applying the antipode to one leg:
    /// m (S (x) id) or m (id (x) S). Used for the antipode axiom.
    pub fn tensor_contract_antipode(
        &self,
        t: &TensorElement<C::Elt>,
        antipode_on_left: bool,
    ) -> Result<NFElement<C::Elt>> {
        let mut out = NFElement::zero();
        for ((m1, m2), c) in t.iter() {
            let x1 = NFElement::single(m1.clone(), self.backend.one());
            let x2 = NFElement::single(m2.clone(), self.backend.one());
            let prod = if antipode_on_left {
                self.multiply(&self.antipode(&x1)?, &x2)?
            } else {
                self.multiply(&x1, &self.antipode(&x2)?)?
            };
            for (mp, cp) in prod.iter() {
                self.nf_insert(&mut out, mp.clone(), self.backend.mul(c, cp));
            }
        }
        Ok(out)
    }
}
