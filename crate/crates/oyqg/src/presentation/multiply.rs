//! The product on normal-form elements.
//!
//! Straightening moves every e-letter of the left factor past every f-letter
//! of the right factor using the commutator relation
//! e_i f_j - f_j e_i = delta_ij (w'_i - w_i)/(q_i - q_i^{-1}),
//! and moves torus monomials past words with monomial scalars. The recursion
//!
//!   cross(u ++ [k], [l] ++ w) = cross(u, [l]) * cross([k], w)
//!     + delta_kl c_k ( <w'_k moved past f_w> cross(u, w) w'_k
//!                    - <w_k moved past f_w> cross(u, w) w_k )
//!
//! strictly decreases |u| + |w|, so it terminates; results are memoized.
//! After straightening, both word sides of every monomial are rewritten
//! through their graded bases, so products stay in normal form.

use super::{NFElement, NFMono};
use crate::algebra::Algebra;
use crate::coeff::CoeffBackend;
use crate::error::Result;
use std::sync::Arc;

impl<C: CoeffBackend> Algebra<C> {
    /// Normal form of e_u * f_w for raw letter sequences u, w.
    fn cross(&self, u: &[u8], w: &[u8]) -> Result<Arc<NFElement<C::Elt>>> {
        if u.is_empty() || w.is_empty() {
            let mut m = NFMono::identity(self.rank());
            m.f = w.to_vec();
            m.e = u.to_vec();
            return Ok(Arc::new(NFElement::single(m, self.backend.one())));
        }
        let key = (u.to_vec(), w.to_vec());
        if let Some(hit) = self.cached_cross(&key) {
            return Ok(hit);
        }
        let k = *u.last().unwrap();
        let u_head = &u[..u.len() - 1];
        let l = w[0];
        let w_tail = &w[1..];

        let left = self.cross(u_head, &[l])?;
        let right = self.cross(&[k], w_tail)?;
        let mut acc = self.multiply(&left, &right)?;

        if k == l {
            let i = k as usize;
            let ck = self.backend.from_param(&self.c_i(i))?;
            let base = self.cross(u_head, w_tail)?;
            let nu = self.content(w_tail);
            let mut delta = vec![0i64; self.rank()];
            delta[i] = 1;
            // w'_k f_{w_tail} = torus_pair(delta_k, nu) f_{w_tail} w'_k
            let s1 = self.backend.from_param(&self.torus_pair(&delta, &nu))?;
            // w_k f_{w_tail} = torus_pair(nu, delta_k)^{-1} f_{w_tail} w_k
            let s2 = self
                .backend
                .from_param(&self.torus_pair(&nu, &delta).inv()?)?;
            let term_a = self.rmul_torus(&base, &delta, &vec![0; self.rank()])?;
            let term_b = self.rmul_torus(&base, &vec![0; self.rank()], &delta)?;
            let coeff_a = self.backend.mul(&ck, &s1);
            let coeff_b = self.backend.neg(&self.backend.mul(&ck, &s2));
            acc = self.nf_add(&acc, &self.nf_scale(&term_a, &coeff_a));
            acc = self.nf_add(&acc, &self.nf_scale(&term_b, &coeff_b));
        }

        let out = Arc::new(acc);
        self.store_cross(key.clone(), Arc::clone(&out));
        Ok(self.cached_cross(&key).unwrap_or(out))
    }

    /// Right-multiply by a torus monomial: (f T e) (w'_a w_b) picks up the
    /// inverse commutation scalar for moving the new torus past the e-word.
    fn rmul_torus(
        &self,
        x: &NFElement<C::Elt>,
        eta_add: &[i64],
        phi_add: &[i64],
    ) -> Result<NFElement<C::Elt>> {
        let mut out = NFElement::zero();
        for (m, c) in x.iter() {
            let mu = self.content(&m.e);
            let chi_inv = self.chi_e(eta_add, phi_add, &mu).inv()?;
            let scal = self.backend.from_param(&chi_inv)?;
            let mono = NFMono {
                f: m.f.clone(),
                eta: m.eta.iter().zip(eta_add).map(|(a, b)| a + b).collect(),
                phi: m.phi.iter().zip(phi_add).map(|(a, b)| a + b).collect(),
                e: m.e.clone(),
            };
            self.nf_insert(&mut out, mono, self.backend.mul(c, &scal));
        }
        Ok(out)
    }

    /// Rewrite a raw monomial into basis form and accumulate it.
    fn reduce_into(
        &self,
        out: &mut NFElement<C::Elt>,
        mono: &NFMono,
        coeff: &C::Elt,
    ) -> Result<()> {
        let bf = self.graded_basis(super::Sign::Minus, &self.content(&mono.f))?;
        let be = self.graded_basis(super::Sign::Plus, &self.content(&mono.e))?;
        let rf = bf
            .rewrite
            .get(&mono.f)
            .expect("every word of a component has a rewrite entry");
        let re = be
            .rewrite
            .get(&mono.e)
            .expect("every word of a component has a rewrite entry");
        for (fi, cf) in rf {
            let cf_total = self.backend.mul(coeff, cf);
            for (ej, ce) in re {
                let m = NFMono {
                    f: bf.words[*fi].clone(),
                    eta: mono.eta.clone(),
                    phi: mono.phi.clone(),
                    e: be.words[*ej].clone(),
                };
                self.nf_insert(out, m, self.backend.mul(&cf_total, ce));
            }
        }
        Ok(())
    }

    /// The product of two normal-form elements, returned in normal form.
    /// Errors with HeightOverflow when a graded component above the height
    /// bound is needed.
    pub fn multiply(
        &self,
        a: &NFElement<C::Elt>,
        b: &NFElement<C::Elt>,
    ) -> Result<NFElement<C::Elt>> {
        let mut out = NFElement::zero();
        for (ma, ca) in a.iter() {
            for (mb, cb) in b.iter() {
                let cab = self.backend.mul(ca, cb);
                let crossed = self.cross(&ma.e, &mb.f)?;
                for (mc, cc) in crossed.iter() {
                    // f_a T_a (f_c T_c e_c) T_b e_b:
                    // T_a past f_c, then e_c past T_b.
                    let nu_c = self.content(&mc.f);
                    let mu_c = self.content(&mc.e);
                    let chi1 = self.chi_f(&ma.eta, &ma.phi, &nu_c);
                    let chi2 = self.chi_e(&mb.eta, &mb.phi, &mu_c).inv()?;
                    let scal = self.backend.from_param(&chi1.mul(&chi2))?;
                    let coeff = self.backend.mul(&self.backend.mul(&cab, cc), &scal);

                    let mut f_word = ma.f.clone();
                    f_word.extend_from_slice(&mc.f);
                    let mut e_word = mc.e.clone();
                    e_word.extend_from_slice(&mb.e);
                    let mono = NFMono {
                        f: f_word,
                        eta: ma
                            .eta
                            .iter()
                            .zip(&mc.eta)
                            .zip(&mb.eta)
                            .map(|((x, y), z)| x + y + z)
                            .collect(),
                        phi: ma
                            .phi
                            .iter()
                            .zip(&mc.phi)
                            .zip(&mb.phi)
                            .map(|((x, y), z)| x + y + z)
                            .collect(),
                        e: e_word,
                    };
                    self.reduce_into(&mut out, &mono, &coeff)?;
                }
            }
        }
        Ok(out)
    }

    /// Product of a list of elements, left to right.
    pub fn multiply_all(&self, xs: &[NFElement<C::Elt>]) -> Result<NFElement<C::Elt>> {
        let mut acc = self.nf_one();
        for x in xs {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    /// x^n for n >= 0.
    pub fn nf_pow(&self, x: &NFElement<C::Elt>, n: usize) -> Result<NFElement<C::Elt>> {
        let mut acc = self.nf_one();
        for _ in 0..n {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }
}
