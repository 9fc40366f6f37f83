//! Central elements, the Harish-Chandra homomorphism, and the desk-scale
//! verification of the center isomorphism.
//!
//! For dominant lambda in the root lattice, the central element is assembled
//! directly from the closed formula
//!
//! ```text
//! z_lambda = sum_{tau} sum_{mu in Q+} sum_{i,j} q^{-2(rho,tau+mu)}
//!            <w'_mu, w_{tau+mu}> tr(v_j^mu u_i^mu . P_tau)
//!            . v_i^mu w'_tau w_{tau+mu}^{-1} u_j^mu
//! ```
//!
//! where tau runs over the weights of L(lambda), P_tau projects onto the
//! tau-weight space, and (u_i^mu, v_i^mu) are dual bases of the graded
//! component mu under the Rosso form. tau + mu must again be a weight of
//! L(lambda): the trace factor vanishes for any other mu, which bounds the
//! summation (checked as a property on rank one). The element is the unique
//! preimage of the quantum trace t_lambda under u -> <u | .>, and centrality
//! is verified exactly before the element is returned.
//!
//! The Harish-Chandra map is xi = gamma^{-rho} . pi, with pi the projection
//! of U_0 onto the torus subalgebra along the ideal spanned by normal-form
//! monomials with nonempty word parts, and gamma^{-rho} the character twist
//! w'_eta w_phi -> rho^{-rho}(w'_eta w_phi) w'_eta w_phi. On central inputs
//! the image is supported on the flat monomials w'_eta w_{-eta}, where the
//! Weyl group acts by sigma(w'_eta w_{-eta}) = w'_{sigma(eta)} w_{-sigma(eta)};
//! images of the z_lambda are W-invariant and triangular against the orbit
//! averages av(lambda), which yields the surjectivity decomposition.

use crate::algebra::Algebra;
use crate::coeff::poly::{ExpVec, LaurentPoly};
use crate::coeff::{CoeffBackend, ParamScalar};
use crate::error::{Error, Result};
use crate::presentation::{NFElement, NFMono};
use crate::weightmod::SimpleModule;
use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::sync::Arc;

/// An assembled central element with its per-block audit trail.
pub struct CentralElement<T> {
    /// Defining dominant weight, fundamental coordinates (must lie in Q).
    pub lambda_fund: Vec<i64>,
    /// The element itself, in normal form.
    pub element: NFElement<T>,
    /// Per-(tau, mu) audit: tau is a weight of L(lambda) in root
    /// coordinates, mu in Q+, and the count of nonzero (i, j) contributions.
    pub provenance: Vec<(Vec<i64>, Vec<i64>, usize)>,
}

/// An element of U^0 as a sparse sum of torus monomials w'_eta w_phi.
#[derive(Clone, Debug)]
pub struct HCImage<T> {
    /// (eta, phi) -> coefficient; no zero coefficients stored.
    pub terms: BTreeMap<(Vec<i64>, Vec<i64>), T>,
    /// True iff every monomial is flat: phi = -eta.
    pub flat: bool,
}

impl<T> HCImage<T> {
    pub fn is_one<C: CoeffBackend<Elt = T>>(&self, backend: &C, rank: usize) -> bool {
        let zero = vec![0i64; rank];
        self.terms.len() == 1
            && self
                .terms
                .get(&(zero.clone(), zero))
                .is_some_and(|c| backend.is_zero(&backend.sub(c, &backend.one())))
    }
}

/// Triangular expansion of an orbit average over HC images.
pub struct Decomposition<T> {
    pub lambda_fund: Vec<i64>,
    /// (mu in fundamental coordinates, coefficient of xi(z_mu)), sorted by mu.
    pub coefficients: Vec<(Vec<i64>, T)>,
}

impl<C: CoeffBackend> Algebra<C> {
    fn hc_from_terms(&self, raw: BTreeMap<(Vec<i64>, Vec<i64>), C::Elt>) -> HCImage<C::Elt> {
        let mut terms = BTreeMap::new();
        let mut flat = true;
        for ((eta, phi), c) in raw {
            if self.backend.is_zero(&c) {
                continue;
            }
            if phi.iter().zip(&eta).any(|(p, e)| *p != -e) {
                flat = false;
            }
            terms.insert((eta, phi), c);
        }
        HCImage { terms, flat }
    }

    fn hc_insert(
        &self,
        acc: &mut BTreeMap<(Vec<i64>, Vec<i64>), C::Elt>,
        key: (Vec<i64>, Vec<i64>),
        val: C::Elt,
    ) {
        match acc.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !self.backend.is_zero(&val) {
                    e.insert(val);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.backend.add(e.get(), &val);
                if self.backend.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// a + c * b on torus-monomial sums.
    pub fn hc_add_scaled(
        &self,
        a: &HCImage<C::Elt>,
        b: &HCImage<C::Elt>,
        c: &C::Elt,
    ) -> HCImage<C::Elt> {
        let mut acc = a.terms.clone();
        for (key, v) in &b.terms {
            self.hc_insert(&mut acc, key.clone(), self.backend.mul(v, c));
        }
        self.hc_from_terms(acc)
    }

    pub fn hc_eq(&self, a: &HCImage<C::Elt>, b: &HCImage<C::Elt>) -> bool {
        let minus_one = self.backend.neg(&self.backend.one());
        self.hc_add_scaled(a, b, &minus_one).terms.is_empty()
    }

    /// Product in U^0: torus monomials multiply by adding exponents.
    pub fn hc_mul(&self, a: &HCImage<C::Elt>, b: &HCImage<C::Elt>) -> HCImage<C::Elt> {
        let mut acc = BTreeMap::new();
        for ((ea, pa), ca) in &a.terms {
            for ((eb, pb), cb) in &b.terms {
                let eta: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let phi: Vec<i64> = pa.iter().zip(pb).map(|(x, y)| x + y).collect();
                self.hc_insert(&mut acc, (eta, phi), self.backend.mul(ca, cb));
            }
        }
        self.hc_from_terms(acc)
    }

    /// The projection pi: U_0 -> U^0 along the span of normal-form monomials
    /// with nonempty word parts. Defined on all of U_0, not only the center.
    pub fn pi_u0(&self, z: &NFElement<C::Elt>) -> Result<NFElement<C::Elt>> {
        let mut out = NFElement::zero();
        for (m, c) in z.iter() {
            if self.content(&m.e) != self.content(&m.f) {
                return Err(Error::NonZeroDegree);
            }
            if m.f.is_empty() && m.e.is_empty() {
                self.nf_insert(
                    &mut out,
                    NFMono {
                        f: Vec::new(),
                        eta: m.eta.clone(),
                        phi: m.phi.clone(),
                        e: Vec::new(),
                    },
                    c.clone(),
                );
            }
        }
        Ok(out)
    }

    /// The Harish-Chandra map xi = gamma^{-rho} . pi on degree-0 elements.
    pub fn hc_xi(&self, z: &NFElement<C::Elt>) -> Result<HCImage<C::Elt>> {
        let projected = self.pi_u0(z)?;
        let neg_rho: Vec<_> = self
            .datum
            .fund_to_root(&self.datum.rho_fund())
            .into_iter()
            .map(|x| -x)
            .collect();
        let mut acc = BTreeMap::new();
        for (m, c) in projected.iter() {
            let twist = self.elt(&self.rho_eval(&neg_rho, &m.eta, &m.phi)?)?;
            self.hc_insert(
                &mut acc,
                (m.eta.clone(), m.phi.clone()),
                self.backend.mul(c, &twist),
            );
        }
        Ok(self.hc_from_terms(acc))
    }

    /// Weyl element k acting on a flat torus-monomial sum.
    pub fn weyl_act_flat(&self, k: usize, img: &HCImage<C::Elt>) -> Result<HCImage<C::Elt>> {
        if !img.flat {
            return Err(Error::NotFlat);
        }
        let w = self.weyl()?;
        let mut acc = BTreeMap::new();
        for ((eta, _), c) in &img.terms {
            let s = w.act(k, eta);
            let neg: Vec<i64> = s.iter().map(|x| -x).collect();
            self.hc_insert(&mut acc, (s, neg), c.clone());
        }
        Ok(self.hc_from_terms(acc))
    }

    /// True iff every Weyl element fixes the (flat) image.
    pub fn hc_is_w_invariant(&self, img: &HCImage<C::Elt>) -> Result<bool> {
        let w = self.weyl()?;
        for k in 0..w.order() {
            if !self.hc_eq(&self.weyl_act_flat(k, img)?, img) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// av(lambda) = (1/|W|) sum_sigma w'_{sigma(lambda)} w_{-sigma(lambda)}.
    pub fn average(&self, lambda_fund: &[i64]) -> Result<HCImage<C::Elt>> {
        if !self.datum.is_dominant_fund(lambda_fund) {
            return Err(Error::NotDominant(format!("{lambda_fund:?}")));
        }
        let lam = self.datum.fund_to_root_integral(lambda_fund)?;
        let w = self.weyl()?;
        let inv_order = self
            .backend
            .div(&self.backend.one(), &self.backend.from_int(w.order() as i64))?;
        let mut acc = BTreeMap::new();
        for k in 0..w.order() {
            let s = w.act(k, &lam);
            let neg: Vec<i64> = s.iter().map(|x| -x).collect();
            self.hc_insert(&mut acc, (s, neg), inv_order.clone());
        }
        Ok(self.hc_from_terms(acc))
    }

    /// Exact centrality check: commutators with every e_i and f_i, and with
    /// the torus generators, must vanish. Returns the first offending
    /// generator and its nonzero commutator; None means central.
    pub fn is_central(
        &self,
        z: &NFElement<C::Elt>,
    ) -> Result<Option<(String, NFElement<C::Elt>)>> {
        for i in 0..self.rank() {
            let mut gens: Vec<(String, NFElement<C::Elt>)> = vec![
                (format!("e_{}", i + 1), self.gen_e(i)),
                (format!("f_{}", i + 1), self.gen_f(i)),
            ];
            let mut eta = vec![0i64; self.rank()];
            eta[i] = 1;
            gens.push((
                format!("omega_{}", i + 1),
                self.gen_torus(&vec![0; self.rank()], &eta),
            ));
            gens.push((
                format!("omega'_{}", i + 1),
                self.gen_torus(&eta, &vec![0; self.rank()]),
            ));
            for (name, g) in gens {
                let comm = self.nf_sub(&self.multiply(&g, z)?, &self.multiply(z, &g)?);
                if !self.nf_is_zero(&comm) {
                    return Ok(Some((name, comm)));
                }
            }
        }
        Ok(None)
    }

    /// Assemble z_lambda from the closed formula and verify centrality.
    pub fn central_element(
        &self,
        lambda_fund: &[i64],
        dim_cap: usize,
    ) -> Result<Arc<CentralElement<C::Elt>>> {
        if let Some(z) = self.cached_central(lambda_fund) {
            return Ok(z);
        }
        let lam = self
            .datum
            .fund_to_root_integral(lambda_fund)
            .map_err(|_| Error::NotInRootLattice(format!("{lambda_fund:?}")))?;
        let m = self.build_simple(lambda_fund, dim_cap)?;
        let mut acc = NFElement::zero();
        let mut provenance = Vec::new();
        for s_lo in 0..m.spaces.len() {
            let nu_lo = m.spaces[s_lo].nu.clone();
            let tau: Vec<i64> = lam.iter().zip(&nu_lo).map(|(l, n)| l - n).collect();
            for s_hi in 0..m.spaces.len() {
                let nu_hi = &m.spaces[s_hi].nu;
                let mu: Vec<i64> = nu_lo.iter().zip(nu_hi).map(|(a, b)| a - b).collect();
                if mu.iter().any(|&x| x < 0) {
                    continue;
                }
                let tau_mu: Vec<i64> = tau.iter().zip(&mu).map(|(a, b)| a + b).collect();
                let dual = self.dual_basis(&mu)?;
                let d = dual.dim();
                // trace_word[k][i] = tr(fword_k u_i^mu . P_tau), before
                // combining the f-words into the dual elements v_j^mu.
                let mut trace_word = vec![vec![self.backend.zero(); d]; d];
                let lo_dim = m.spaces[s_lo].dim();
                for b in 0..lo_dim {
                    let idx = m.offset(s_lo) + b;
                    for i in 0..d {
                        let u_i = NFElement::single(
                            NFMono {
                                f: Vec::new(),
                                eta: vec![0; self.rank()],
                                phi: vec![0; self.rank()],
                                e: dual.uwords[i].clone(),
                            },
                            self.backend.one(),
                        );
                        let mid = self.apply_to_basis(&u_i, &m, idx)?;
                        if mid.is_empty() {
                            continue;
                        }
                        for k in 0..d {
                            let w_k = NFElement::single(
                                NFMono {
                                    f: dual.fwords[k].clone(),
                                    eta: vec![0; self.rank()],
                                    phi: vec![0; self.rank()],
                                    e: Vec::new(),
                                },
                                self.backend.one(),
                            );
                            let fin = self.apply_sparse(&w_k, &m, &mid)?;
                            for (p, c) in &fin {
                                if *p == idx {
                                    trace_word[k][i] =
                                        self.backend.add(&trace_word[k][i], c);
                                }
                            }
                        }
                    }
                }
                // Prefactor q^{-2(rho, tau+mu)} <w'_mu, w_{tau+mu}>.
                let pref = self
                    .q_pow(-2 * self.datum.rho_pair_int(&tau_mu))
                    .mul(&self.torus_pair(&mu, &tau_mu));
                let pref = self.elt(&pref)?;
                let phi: Vec<i64> = tau_mu.iter().map(|x| -x).collect();
                let mut count = 0usize;
                for i in 0..d {
                    // v_i^mu as an f-side element.
                    let mut v_i = NFElement::zero();
                    for (k, c) in dual.vcoeffs[i].iter().enumerate() {
                        if self.backend.is_zero(c) {
                            continue;
                        }
                        self.nf_insert(
                            &mut v_i,
                            NFMono {
                                f: dual.fwords[k].clone(),
                                eta: vec![0; self.rank()],
                                phi: vec![0; self.rank()],
                                e: Vec::new(),
                            },
                            c.clone(),
                        );
                    }
                    for j in 0..d {
                        // tr(v_j^mu u_i^mu . P_tau).
                        let mut tr = self.backend.zero();
                        for (k, c) in dual.vcoeffs[j].iter().enumerate() {
                            tr = self
                                .backend
                                .add(&tr, &self.backend.mul(c, &trace_word[k][i]));
                        }
                        if self.backend.is_zero(&tr) {
                            continue;
                        }
                        let term = self.multiply_all(&[
                            v_i.clone(),
                            self.gen_torus(&tau, &phi),
                            NFElement::single(
                                NFMono {
                                    f: Vec::new(),
                                    eta: vec![0; self.rank()],
                                    phi: vec![0; self.rank()],
                                    e: dual.uwords[j].clone(),
                                },
                                self.backend.one(),
                            ),
                        ])?;
                        let coeff = self.backend.mul(&pref, &tr);
                        acc = self.nf_add(&acc, &self.nf_scale(&term, &coeff));
                        count += 1;
                    }
                }
                if count > 0 {
                    provenance.push((tau.clone(), mu, count));
                }
            }
        }
        if let Some((generator, witness)) = self.is_central(&acc)? {
            return Err(Error::NotCentral {
                generator,
                witness: self.render_nf(&witness),
            });
        }
        let z = Arc::new(CentralElement {
            lambda_fund: lambda_fund.to_vec(),
            element: acc,
            provenance,
        });
        self.store_central(lambda_fund.to_vec(), Arc::clone(&z));
        Ok(z)
    }

    /// Triangular expansion av(lambda) = sum_mu c_mu xi(z_mu) over dominant
    /// mu <= lambda, with an exact zero-residual check.
    pub fn surjectivity_decompose(
        &self,
        lambda_fund: &[i64],
        dim_cap: usize,
    ) -> Result<Decomposition<C::Elt>> {
        let lam = self
            .datum
            .fund_to_root_integral(lambda_fund)
            .map_err(|_| Error::NotInRootLattice(format!("{lambda_fund:?}")))?;
        let w = self.weyl()?;
        // Dominant weights of L(lambda), sorted by increasing height.
        let mults = self.datum.l_weights(lambda_fund)?;
        let mut dominants: Vec<(Vec<i64>, Vec<i64>)> = Vec::new(); // (root, fund)
        for nu in mults.keys() {
            let d_root: Vec<i64> = lam.iter().zip(nu).map(|(l, n)| l - n).collect();
            let d_fund = self.datum.root_to_fund(&d_root);
            if self.datum.is_dominant_fund(&d_fund) {
                dominants.push((d_root, d_fund));
            }
        }
        dominants.sort_by_key(|(r, _)| (r.iter().sum::<i64>(), r.clone()));
        // expansion[delta_fund] = coefficients over xi(z_mu).
        let mut expansion: BTreeMap<Vec<i64>, BTreeMap<Vec<i64>, C::Elt>> = BTreeMap::new();
        for (d_root, d_fund) in &dominants {
            let orbit = w.orbit(d_root).len() as i64;
            let inv_orbit = self
                .backend
                .div(&self.backend.one(), &self.backend.from_int(orbit))?;
            // av(delta) = (1/|W.delta|) [ xi(z_delta)
            //             - sum_{delta' < delta dominant} dim L(delta)_{delta'}
            //               |W.delta'| av(delta') ].
            let mut coeffs: BTreeMap<Vec<i64>, C::Elt> = BTreeMap::new();
            coeffs.insert(d_fund.clone(), inv_orbit.clone());
            let sub_mults = self.datum.l_weights(d_fund)?;
            for (nu, mult) in &sub_mults {
                if nu.iter().all(|&x| x == 0) {
                    continue;
                }
                let dp_root: Vec<i64> = d_root.iter().zip(nu).map(|(l, n)| l - n).collect();
                let dp_fund = self.datum.root_to_fund(&dp_root);
                if !self.datum.is_dominant_fund(&dp_fund) {
                    continue;
                }
                let sub_orbit = w.orbit(&dp_root).len() as i64;
                let factor = self.backend.mul(
                    &inv_orbit,
                    &self.backend.from_int(-(*mult as i64) * sub_orbit),
                );
                let prev = expansion
                    .get(&dp_fund)
                    .expect("heights increase through the dominant list");
                for (mu, c) in prev {
                    let add = self.backend.mul(&factor, c);
                    match coeffs.entry(mu.clone()) {
                        std::collections::btree_map::Entry::Vacant(e) => {
                            if !self.backend.is_zero(&add) {
                                e.insert(add);
                            }
                        }
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            let s = self.backend.add(e.get(), &add);
                            if self.backend.is_zero(&s) {
                                e.remove();
                            } else {
                                *e.get_mut() = s;
                            }
                        }
                    }
                }
            }
            expansion.insert(d_fund.clone(), coeffs);
        }
        let coefficients: Vec<(Vec<i64>, C::Elt)> = expansion
            .remove(lambda_fund)
            .expect("lambda itself is in its own dominant list")
            .into_iter()
            .collect();
        // Exact residual check: av(lambda) - sum c_mu xi(z_mu) must be 0.
        let mut residual = self.average(lambda_fund)?;
        for (mu, c) in &coefficients {
            let z = self.central_element(mu, dim_cap)?;
            let xi = self.hc_xi(&z.element)?;
            residual = self.hc_add_scaled(&residual, &xi, &self.backend.neg(c));
        }
        if !residual.terms.is_empty() {
            return Err(Error::NonZeroResidual(format!(
                "{} torus monomials survive for lambda = {lambda_fund:?}",
                residual.terms.len()
            )));
        }
        Ok(Decomposition {
            lambda_fund: lambda_fund.to_vec(),
            coefficients,
        })
    }

    /// Scalar action of a central element on L(mu), verified two ways: the
    /// action matrix must be scalar, and the scalar must equal the
    /// highest-weight character of the torus part, rho^mu(pi(z)).
    pub fn eigenvalue(
        &self,
        z: &CentralElement<C::Elt>,
        m: &SimpleModule<C::Elt>,
    ) -> Result<C::Elt> {
        let mat = self.act(&z.element, m)?;
        let scalar = mat.as_scalar(&self.backend).map_err(|bad| {
            Error::NonScalarAction(format!("{bad:?}"))
        })?;
        let mut predicted = self.backend.zero();
        for (mono, c) in self.pi_u0(&z.element)?.iter() {
            let chi = self.elt(&self.rho_eval(&m.lambda_root, &mono.eta, &mono.phi)?)?;
            predicted = self.backend.add(&predicted, &self.backend.mul(c, &chi));
        }
        if !self.backend.is_zero(&self.backend.sub(&scalar, &predicted)) {
            return Err(Error::InvalidInput(format!(
                "central eigenvalue mismatch on L({:?}): action gives {}, character gives {}",
                m.lambda_fund,
                self.backend.render(&scalar),
                self.backend.render(&predicted)
            )));
        }
        Ok(scalar)
    }

    /// Verify <z_lambda | v> = t_lambda(v) for every normal-form monomial v
    /// whose word contents lie in the weight-difference window of L(lambda)
    /// and whose torus exponents range over a small box, plus off-window
    /// spot checks where both sides must vanish. Returns the number of
    /// monomials checked.
    pub fn verify_trace_realization(
        &self,
        z: &CentralElement<C::Elt>,
        dim_cap: usize,
    ) -> Result<usize> {
        let m = self.build_simple(&z.lambda_fund, dim_cap)?;
        // The mu window: all differences of module depths.
        let mut window: Vec<Vec<i64>> = Vec::new();
        for lo in &m.spaces {
            for hi in &m.spaces {
                let mu: Vec<i64> = lo.nu.iter().zip(&hi.nu).map(|(a, b)| a - b).collect();
                if mu.iter().all(|&x| x >= 0) && !window.contains(&mu) {
                    window.push(mu);
                }
            }
        }
        window.sort_by_key(|mu| (mu.iter().sum::<i64>(), mu.clone()));
        // Torus-exponent box: zero and +-delta_1, plus the last coordinate.
        let mut box_exps: Vec<Vec<i64>> = vec![vec![0; self.rank()]];
        for (k, sign) in [(0usize, 1i64), (0, -1), (self.rank() - 1, 1)] {
            let mut v = vec![0; self.rank()];
            v[k] += sign;
            if !box_exps.contains(&v) {
                box_exps.push(v);
            }
        }
        let mut checked = 0usize;
        let mut check = |v: NFElement<C::Elt>| -> Result<()> {
            let lhs = self.rosso(&z.element, &v)?;
            let rhs = self.quantum_trace(&m, &v)?;
            if !self.backend.is_zero(&self.backend.sub(&lhs, &rhs)) {
                return Err(Error::TraceMismatch {
                    monomial: self.render_nf(&v),
                    form: self.backend.render(&lhs),
                    trace: self.backend.render(&rhs),
                });
            }
            checked += 1;
            Ok(())
        };
        for mu in &window {
            let fb = self.graded_basis(crate::presentation::Sign::Minus, mu)?;
            let eb = self.graded_basis(crate::presentation::Sign::Plus, mu)?;
            for fw in &fb.words {
                for ew in &eb.words {
                    for eta in &box_exps {
                        for phi in &box_exps {
                            check(NFElement::single(
                                NFMono {
                                    f: fw.clone(),
                                    eta: eta.clone(),
                                    phi: phi.clone(),
                                    e: ew.clone(),
                                },
                                self.backend.one(),
                            ))?;
                        }
                    }
                }
            }
        }
        // Off-window monomials: pure f, pure e, and mismatched degree all
        // pair to zero and have zero quantum trace.
        let deepest = window.last().cloned().unwrap_or_else(|| vec![0; self.rank()]);
        let mut beyond = deepest.clone();
        beyond[0] += 1;
        if beyond.iter().sum::<i64>() as usize <= self.max_height {
            let fb = self.graded_basis(crate::presentation::Sign::Minus, &beyond)?;
            if let Some(fw) = fb.words.first() {
                check(NFElement::single(
                    NFMono {
                        f: fw.clone(),
                        eta: vec![0; self.rank()],
                        phi: vec![0; self.rank()],
                        e: Vec::new(),
                    },
                    self.backend.one(),
                ))?;
            }
        }
        for single in [true, false] {
            check(NFElement::single(
                NFMono {
                    f: if single { vec![0] } else { Vec::new() },
                    eta: vec![0; self.rank()],
                    phi: vec![0; self.rank()],
                    e: if single { Vec::new() } else { vec![0] },
                },
                self.backend.one(),
            ))?;
        }
        Ok(checked)
    }
}

impl<C: CoeffBackend<Elt = ParamScalar>> Algebra<C> {
    /// Substitute every q_ij -> 1 in the coefficients, keeping the variable
    /// universe (all t-exponents collapse onto the constant direction).
    /// Errors when a denominator vanishes under the substitution.
    pub fn specialize_element_t_one(
        &self,
        x: &NFElement<ParamScalar>,
    ) -> Result<NFElement<ParamScalar>> {
        let nv = self.nvars();
        let project = |p: &LaurentPoly| -> LaurentPoly {
            let mut terms: BTreeMap<ExpVec, BigInt> = BTreeMap::new();
            for (e, c) in &p.terms {
                let mut key = vec![0i64; nv];
                key[0] = e[0];
                match terms.get_mut(&key) {
                    Some(acc) => {
                        *acc += c;
                        if num_traits::Zero::is_zero(acc) {
                            terms.remove(&key);
                        }
                    }
                    None => {
                        terms.insert(key, c.clone());
                    }
                }
            }
            LaurentPoly { terms }
        };
        let mut out = NFElement::zero();
        for (m, c) in x.iter() {
            let num = project(&c.num);
            let den = project(&c.den);
            if den.is_zero() {
                return Err(Error::InvalidInput(
                    "denominator vanishes under the q_ij -> 1 specialization".to_string(),
                ));
            }
            let s = ParamScalar {
                num,
                den,
                nvars: nv,
            }
            .reduce();
            self.nf_insert(&mut out, m.clone(), s);
        }
        Ok(out)
    }
}
