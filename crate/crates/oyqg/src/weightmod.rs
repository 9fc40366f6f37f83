//! Finite-dimensional simple highest-weight modules L(lambda).
//!
//! For dominant lambda, the Verma module M(lambda) has weight spaces
//! M(lambda)_{lambda-nu} = U^-_{-nu} v_lambda, realized here on the f-side
//! graded basis. The maximal submodule is spanned weightwise by
//! {y f_i^{c_i+1} v_lambda : c_i = <lambda, alpha_i^vee>}, and L(lambda) is
//! the quotient. Torus generators act diagonally on L(lambda)_eta by the
//! character values rho^eta(omega_i) and rho^eta(omega'_i); e_i acts by
//! straightening e_i (f-word) in the algebra and evaluating torus monomials
//! on the highest-weight vector through rho^lambda.
//!
//! The operator Theta scales L(lambda)_eta by q^{-2(rho,eta)}; it intertwines
//! u with S^2(u), which makes the quantum trace t_lambda(v) = tr(v . Theta)
//! ad_l-invariant. Matrix coefficients C_{f,m}(v) = f(v.m) are realized
//! against the Rosso form via the dual-basis formula implemented in
//! `realize_coefficient` (requires the weight set inside the root lattice).

use crate::algebra::Algebra;
use crate::coeff::{CoeffBackend, ParamScalar};
use crate::error::{Error, Result};
use crate::presentation::{rref, NFElement, NFMono, Sign};
use num_rational::Ratio;
use std::collections::BTreeMap;
use std::sync::Arc;

/// One weight space of a simple module, at depth `nu` below the highest
/// weight (so its weight is lambda - nu).
pub struct WeightSpace<T> {
    /// Depth below lambda in simple-root coordinates; an element of Q+.
    pub nu: Vec<i64>,
    /// Quotient basis tags: f-words applied to the highest-weight vector,
    /// a subset of the ambient graded-basis words, in lexicographic order.
    pub words: Vec<Vec<u8>>,
    /// Ambient Verma basis at this depth (all graded-basis words).
    pub ambient: Vec<Vec<u8>>,
    ambient_index: BTreeMap<Vec<u8>, usize>,
    /// RREF rows spanning the maximal submodule at this depth, over ambient
    /// coordinates.
    sub_rows: Vec<Vec<T>>,
    /// (ambient column, row index) pivots of `sub_rows`.
    sub_pivots: Vec<(usize, usize)>,
    /// Ambient column -> quotient position; None on pivot (submodule) columns.
    quot_pos: Vec<Option<usize>>,
    /// Exponent x in Theta|_(this space) = q^x, namely -2(rho, lambda - nu).
    pub theta_exp: Ratio<i64>,
}

impl<T> WeightSpace<T> {
    pub fn dim(&self) -> usize {
        self.words.len()
    }
}

/// A finite-dimensional simple module L(lambda) with explicit bases.
pub struct SimpleModule<T> {
    /// Highest weight in fundamental-weight coordinates (dominant).
    pub lambda_fund: Vec<i64>,
    /// Highest weight in simple-root coordinates (rational outside Q).
    pub lambda_root: Vec<Ratio<i64>>,
    /// Weight spaces ordered by (height of nu, lex nu).
    pub spaces: Vec<WeightSpace<T>>,
    space_index: BTreeMap<Vec<i64>, usize>,
    offsets: Vec<usize>,
    /// Total dimension.
    pub dim: usize,
}

impl<T> SimpleModule<T> {
    /// Index of the weight space at depth nu, if present.
    pub fn space_at(&self, nu: &[i64]) -> Option<usize> {
        self.space_index.get(nu).copied()
    }

    /// Global basis offset of space `s`.
    pub fn offset(&self, s: usize) -> usize {
        self.offsets[s]
    }

    /// Map a global basis index to (space, position).
    pub fn locate(&self, idx: usize) -> (usize, usize) {
        let s = match self.offsets.binary_search(&idx) {
            Ok(s) => s,
            Err(s) => s - 1,
        };
        (s, idx - self.offsets[s])
    }

    /// Weight of the space `s` in simple-root coordinates.
    pub fn weight_of(&self, s: usize) -> Vec<Ratio<i64>> {
        self.lambda_root
            .iter()
            .zip(&self.spaces[s].nu)
            .map(|(l, n)| l - Ratio::from_integer(*n))
            .collect()
    }

    /// Index of the highest-weight vector (depth 0).
    pub fn highest(&self) -> usize {
        0
    }
}

/// Sparse matrix over a module's global basis; no stored zero entries.
#[derive(Clone, Debug)]
pub struct ModuleMatrix<T> {
    pub dim: usize,
    /// (row, column) -> entry.
    pub entries: BTreeMap<(usize, usize), T>,
}

impl<T: Clone> ModuleMatrix<T> {
    pub fn zero(dim: usize) -> Self {
        ModuleMatrix {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn insert<C: CoeffBackend<Elt = T>>(&mut self, backend: &C, r: usize, c: usize, v: T) {
        match self.entries.entry((r, c)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !backend.is_zero(&v) {
                    e.insert(v);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = backend.add(e.get(), &v);
                if backend.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn identity<C: CoeffBackend<Elt = T>>(backend: &C, dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries.insert((i, i), backend.one());
        }
        m
    }

    pub fn scale<C: CoeffBackend<Elt = T>>(&self, backend: &C, c: &T) -> Self {
        let mut out = Self::zero(self.dim);
        for ((r, s), v) in &self.entries {
            out.insert(backend, *r, *s, backend.mul(v, c));
        }
        out
    }

    pub fn add<C: CoeffBackend<Elt = T>>(&self, backend: &C, other: &Self) -> Self {
        let mut out = self.clone();
        for ((r, c), v) in &other.entries {
            out.insert(backend, *r, *c, v.clone());
        }
        out
    }

    pub fn sub<C: CoeffBackend<Elt = T>>(&self, backend: &C, other: &Self) -> Self {
        let mut out = self.clone();
        for ((r, c), v) in &other.entries {
            out.insert(backend, *r, *c, backend.neg(v));
        }
        out
    }

    /// Matrix product self * other (composition: self applied after other).
    pub fn mul<C: CoeffBackend<Elt = T>>(&self, backend: &C, other: &Self) -> Self {
        // Index self's entries by column for the middle contraction.
        let mut by_col: BTreeMap<usize, Vec<(usize, &T)>> = BTreeMap::new();
        for ((r, c), v) in &self.entries {
            by_col.entry(*c).or_default().push((*r, v));
        }
        let mut out = Self::zero(self.dim);
        for ((k, c), w) in &other.entries {
            if let Some(rows) = by_col.get(k) {
                for (r, v) in rows {
                    out.insert(backend, *r, *c, backend.mul(v, w));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn eq<C: CoeffBackend<Elt = T>>(&self, backend: &C, other: &Self) -> bool {
        self.sub(backend, other).is_zero()
    }

    pub fn trace<C: CoeffBackend<Elt = T>>(&self, backend: &C) -> T {
        let mut t = backend.zero();
        for ((r, c), v) in &self.entries {
            if r == c {
                t = backend.add(&t, v);
            }
        }
        t
    }

    /// True when the matrix is scalar; returns the scalar and, on failure,
    /// the offending positions.
    pub fn as_scalar<C: CoeffBackend<Elt = T>>(
        &self,
        backend: &C,
    ) -> std::result::Result<T, Vec<(usize, usize)>> {
        if self.dim == 0 {
            return Ok(backend.zero());
        }
        let mut bad = Vec::new();
        let first = self
            .entries
            .get(&(0, 0))
            .cloned()
            .unwrap_or_else(|| backend.zero());
        for ((r, c), v) in &self.entries {
            if r != c {
                bad.push((*r, *c));
            } else if !backend.is_zero(&backend.sub(v, &first)) {
                bad.push((*r, *c));
            }
        }
        // Diagonal positions missing from the map are zero entries; they
        // disagree with a nonzero scalar.
        if !backend.is_zero(&first) {
            for i in 0..self.dim {
                if !self.entries.contains_key(&(i, i)) {
                    bad.push((i, i));
                }
            }
        }
        if bad.is_empty() {
            Ok(first)
        } else {
            Err(bad)
        }
    }
}

impl<C: CoeffBackend> Algebra<C> {
    /// Build L(lambda) for dominant lambda given in fundamental-weight
    /// coordinates, with a cap on the Weyl dimension.
    pub fn build_simple(
        &self,
        lambda_fund: &[i64],
        dim_cap: usize,
    ) -> Result<Arc<SimpleModule<C::Elt>>> {
        if lambda_fund.len() != self.rank() {
            return Err(Error::InvalidInput(format!(
                "lambda has {} coordinates, rank is {}",
                lambda_fund.len(),
                self.rank()
            )));
        }
        if !self.datum.is_dominant_fund(lambda_fund) {
            return Err(Error::NotDominant(format!("{lambda_fund:?}")));
        }
        let wd = self.datum.weyl_dim(lambda_fund)? as usize;
        if wd > dim_cap {
            return Err(Error::DimCapExceeded { dim: wd, cap: dim_cap });
        }
        if let Some(m) = self.cached_module(lambda_fund) {
            return Ok(m);
        }
        let lambda_root = self.datum.fund_to_root(lambda_fund);
        let mults = self.datum.l_weights(lambda_fund)?;
        // Depths sorted by (height, lex): BTreeMap orders lex; sort stably.
        let mut depths: Vec<(Vec<i64>, u64)> = mults.into_iter().collect();
        depths.sort_by_key(|(nu, _)| (nu.iter().sum::<i64>(), nu.clone()));

        // f_i^{c_i+1} generators of the maximal submodule.
        let mut fpow = Vec::with_capacity(self.rank());
        for (i, &ci) in lambda_fund.iter().enumerate() {
            fpow.push(self.nf_pow(&self.gen_f(i), ci as usize + 1)?);
        }

        let mut spaces: Vec<WeightSpace<C::Elt>> = Vec::new();
        let mut space_index = BTreeMap::new();
        let mut offsets = Vec::new();
        let mut dim = 0usize;
        for (nu, mult) in depths {
            let ambient_basis = self.graded_basis(Sign::Minus, &nu)?;
            let ambient = ambient_basis.words.clone();
            let ambient_index: BTreeMap<Vec<u8>, usize> = ambient
                .iter()
                .enumerate()
                .map(|(k, w)| (w.clone(), k))
                .collect();
            // Submodule rows: y * f_i^{c_i+1} for y ranging over the graded
            // basis one step above.
            let mut rows: Vec<Vec<C::Elt>> = Vec::new();
            for i in 0..self.rank() {
                let step = lambda_fund[i] + 1;
                let rem: Vec<i64> = nu
                    .iter()
                    .enumerate()
                    .map(|(k, &v)| if k == i { v - step } else { v })
                    .collect();
                if rem.iter().any(|&v| v < 0) {
                    continue;
                }
                let upper = self.graded_basis(Sign::Minus, &rem)?;
                for y in &upper.words {
                    let y_elem = NFElement::single(
                        NFMono {
                            f: y.clone(),
                            eta: vec![0; self.rank()],
                            phi: vec![0; self.rank()],
                            e: Vec::new(),
                        },
                        self.backend.one(),
                    );
                    let prod = self.multiply(&y_elem, &fpow[i])?;
                    let mut row = vec![self.backend.zero(); ambient.len()];
                    for (mono, coeff) in prod.iter() {
                        debug_assert!(mono.e.is_empty() && mono.eta.iter().all(|&x| x == 0));
                        let k = ambient_index[&mono.f];
                        row[k] = self.backend.add(&row[k], coeff);
                    }
                    rows.push(row);
                }
            }
            let sub_pivots = rref(&self.backend, &mut rows)?;
            rows.truncate(sub_pivots.len());
            let pivot_cols: Vec<usize> = sub_pivots.iter().map(|(c, _)| *c).collect();
            let mut quot_pos = vec![None; ambient.len()];
            let mut words = Vec::new();
            for (k, w) in ambient.iter().enumerate() {
                if !pivot_cols.contains(&k) {
                    quot_pos[k] = Some(words.len());
                    words.push(w.clone());
                }
            }
            if words.len() != mult as usize {
                return Err(Error::DimensionMismatch {
                    mu: format!("module weight depth {nu:?}"),
                    found: words.len(),
                    expected: mult as usize,
                });
            }
            let theta_exp = Ratio::from_integer(-2)
                * (self.datum.rho_pair_frac(&lambda_root)
                    - Ratio::from_integer(self.datum.rho_pair_int(&nu)));
            space_index.insert(nu.clone(), spaces.len());
            offsets.push(dim);
            dim += words.len();
            spaces.push(WeightSpace {
                nu,
                words,
                ambient,
                ambient_index,
                sub_rows: rows,
                sub_pivots,
                quot_pos,
                theta_exp,
            });
        }
        debug_assert_eq!(dim, wd, "Weyl dimension cross-check");
        let m = Arc::new(SimpleModule {
            lambda_fund: lambda_fund.to_vec(),
            lambda_root,
            spaces,
            space_index,
            offsets,
            dim,
        });
        self.store_module(lambda_fund.to_vec(), Arc::clone(&m));
        Ok(m)
    }

    /// Reduce an ambient-coordinate vector at space `s` modulo the submodule
    /// rows, in place.
    fn reduce_in_space(&self, sp: &WeightSpace<C::Elt>, v: &mut [C::Elt]) {
        for (col, row) in &sp.sub_pivots {
            if self.backend.is_zero(&v[*col]) {
                continue;
            }
            let f = v[*col].clone();
            for (k, r) in sp.sub_rows[*row].iter().enumerate() {
                let s = self.backend.mul(&f, r);
                v[k] = self.backend.sub(&v[k], &s);
            }
        }
    }

    /// Apply u to the module basis vector with global index `idx`; the
    /// result is a sparse list of (global index, coefficient).
    pub fn apply_to_basis(
        &self,
        u: &NFElement<C::Elt>,
        m: &SimpleModule<C::Elt>,
        idx: usize,
    ) -> Result<Vec<(usize, C::Elt)>> {
        let (s, pos) = m.locate(idx);
        let word = m.spaces[s].words[pos].clone();
        // A monomial with f-content a and e-content b sends depth nu to
        // nu - b + a through the intermediate depth nu - b; whenever either
        // leaves the weight support of L it acts as zero, so those terms are
        // dropped before the normal-form product. Besides the speedup, this
        // keeps monomials far outside the module from demanding normal-form
        // words beyond the height budget for contributions that the grading
        // already forces to vanish.
        let nu0 = &m.spaces[s].nu;
        let mut kept = NFElement::zero();
        'mono: for (mono, coeff) in u.iter() {
            let a = self.content(&mono.f);
            let b = self.content(&mono.e);
            let mut target = vec![0i64; self.rank()];
            for i in 0..self.rank() {
                let mid = nu0[i] - b[i];
                if mid < 0 {
                    continue 'mono;
                }
                target[i] = mid + a[i];
            }
            if m.space_at(&target).is_none() {
                continue;
            }
            kept.terms.insert(mono.clone(), coeff.clone());
        }
        if kept.is_empty() {
            return Ok(Vec::new());
        }
        let w_elem = NFElement::single(
            NFMono {
                f: word,
                eta: vec![0; self.rank()],
                phi: vec![0; self.rank()],
                e: Vec::new(),
            },
            self.backend.one(),
        );
        let prod = self.multiply(&kept, &w_elem)?;
        // Group the surviving pure-f contributions by depth.
        let mut by_depth: BTreeMap<usize, Vec<C::Elt>> = BTreeMap::new();
        for (mono, coeff) in prod.iter() {
            if !mono.e.is_empty() {
                // The e-part annihilates the highest-weight vector.
                continue;
            }
            let nu = self.content(&mono.f);
            let Some(s2) = m.space_at(&nu) else {
                // Depth outside the weight support: the quotient space is 0.
                continue;
            };
            let scal = self.rho_eval(&m.lambda_root, &mono.eta, &mono.phi)?;
            let c = self.backend.mul(coeff, &self.elt(&scal)?);
            let sp2 = &m.spaces[s2];
            let vec = by_depth
                .entry(s2)
                .or_insert_with(|| vec![self.backend.zero(); sp2.ambient.len()]);
            let k = sp2.ambient_index[&mono.f];
            vec[k] = self.backend.add(&vec[k], &c);
        }
        let mut out = Vec::new();
        for (s2, mut vec) in by_depth {
            let sp2 = &m.spaces[s2];
            self.reduce_in_space(sp2, &mut vec);
            for (k, c) in vec.into_iter().enumerate() {
                if self.backend.is_zero(&c) {
                    continue;
                }
                let p = sp2.quot_pos[k].expect("reduced vector is supported off pivots");
                out.push((m.offset(s2) + p, c));
            }
        }
        Ok(out)
    }

    /// The action matrix of u on L(lambda); an algebra homomorphism in u.
    pub fn act(
        &self,
        u: &NFElement<C::Elt>,
        m: &SimpleModule<C::Elt>,
    ) -> Result<ModuleMatrix<C::Elt>> {
        let mut out = ModuleMatrix::zero(m.dim);
        for j in 0..m.dim {
            for (i, c) in self.apply_to_basis(u, m, j)? {
                out.insert(&self.backend, i, j, c);
            }
        }
        Ok(out)
    }

    /// The diagonal operator Theta with Theta|_(L_eta) = q^{-2(rho,eta)}.
    pub fn theta_matrix(&self, m: &SimpleModule<C::Elt>) -> Result<ModuleMatrix<C::Elt>> {
        let mut out = ModuleMatrix::zero(m.dim);
        for (s, sp) in m.spaces.iter().enumerate() {
            let scal = self.elt(&self.q_pow_frac(sp.theta_exp)?)?;
            for p in 0..sp.dim() {
                let i = m.offset(s) + p;
                out.insert(&self.backend, i, i, scal.clone());
            }
        }
        Ok(out)
    }

    /// Quantum trace t_lambda(u) = tr(act(u) . Theta).
    pub fn quantum_trace(
        &self,
        m: &SimpleModule<C::Elt>,
        u: &NFElement<C::Elt>,
    ) -> Result<C::Elt> {
        let mut t = self.backend.zero();
        for (s, sp) in m.spaces.iter().enumerate() {
            let theta = self.elt(&self.q_pow_frac(sp.theta_exp)?)?;
            for p in 0..sp.dim() {
                let j = m.offset(s) + p;
                // Column of act(u).Theta at j is theta_j * act(u) e_j.
                for (i, c) in self.apply_to_basis(u, m, j)? {
                    if i == j {
                        t = self.backend.add(&t, &self.backend.mul(&c, &theta));
                    }
                }
            }
        }
        Ok(t)
    }

    /// Matrix coefficient C_{f,m}(u) = f(u.m) for the dual-basis functional
    /// with global index `f_idx` and basis vector `m_idx`.
    pub fn matrix_coefficient(
        &self,
        m: &SimpleModule<C::Elt>,
        f_idx: usize,
        m_idx: usize,
        u: &NFElement<C::Elt>,
    ) -> Result<C::Elt> {
        for (i, c) in self.apply_to_basis(u, m, m_idx)? {
            if i == f_idx {
                return Ok(c);
            }
        }
        Ok(self.backend.zero())
    }

    /// The unique u with <u | v> = C_{f,m}(v) for all v, via the explicit
    /// dual-basis construction. Requires the weight set inside Q, hence
    /// lambda in the root lattice.
    pub fn realize_coefficient(
        &self,
        m: &SimpleModule<C::Elt>,
        f_idx: usize,
        m_idx: usize,
    ) -> Result<NFElement<C::Elt>> {
        let lam_int = self
            .datum
            .fund_to_root_integral(&m.lambda_fund)
            .map_err(|_| Error::NotInRootLattice(format!("{:?}", m.lambda_fund)))?;
        let (s_m, _) = m.locate(m_idx);
        let (s_f, _) = m.locate(f_idx);
        let nu_m = m.spaces[s_m].nu.clone();
        let nu_f = m.spaces[s_f].nu.clone();
        // Weight of m in root coordinates (integral since lambda is in Q).
        let wt_m: Vec<i64> = lam_int.iter().zip(&nu_m).map(|(l, n)| l - n).collect();
        let mut acc = NFElement::zero();
        // nu ranges so that wt(m)+nu stays in the weight support: the depth
        // of wt(m)+nu is nu_m - nu.
        for s_hi in 0..m.spaces.len() {
            let nu_hi = m.spaces[s_hi].nu.clone();
            let nu: Vec<i64> = nu_m.iter().zip(&nu_hi).map(|(a, b)| a - b).collect();
            if nu.iter().any(|&x| x < 0) {
                continue;
            }
            // mu = (wt(m)+nu) - wt(f); its depth difference is nu_f - nu_hi.
            let mu: Vec<i64> = nu_f.iter().zip(&nu_hi).map(|(a, b)| a - b).collect();
            if mu.iter().any(|&x| x < 0) {
                continue;
            }
            let dual_nu = self.dual_basis(&nu)?;
            let dual_mu = self.dual_basis(&mu)?;
            let d_nu = dual_nu.dim();
            let d_mu = dual_mu.dim();
            // wt(m) + nu in root coordinates.
            let wt_hi: Vec<i64> = wt_m.iter().zip(&nu).map(|(a, b)| a + b).collect();
            // Psi(v_j^mu, u_i^nu) = f((v_j^mu w'_mu^{-1}) u_i^nu . m)
            //                     = tp(mu, wt_hi) * f(v_j^mu . (u_i^nu . m)).
            let twist = self.elt(&self.torus_pair(&mu, &wt_hi))?;
            // phi_k[i] = coefficient at f_idx of fword_k . (u_i^nu . m).
            let mut psi = vec![vec![self.backend.zero(); d_nu]; d_mu];
            for i in 0..d_nu {
                let u_i = NFElement::single(
                    NFMono {
                        f: Vec::new(),
                        eta: vec![0; self.rank()],
                        phi: vec![0; self.rank()],
                        e: dual_nu.uwords[i].clone(),
                    },
                    self.backend.one(),
                );
                let mid = self.apply_sparse(&u_i, m, &[(m_idx, self.backend.one())])?;
                for k in 0..d_mu {
                    let w_k = NFElement::single(
                        NFMono {
                            f: dual_mu.fwords[k].clone(),
                            eta: vec![0; self.rank()],
                            phi: vec![0; self.rank()],
                            e: Vec::new(),
                        },
                        self.backend.one(),
                    );
                    let fin = self.apply_sparse(&w_k, m, &mid)?;
                    let mut val = self.backend.zero();
                    for (p, c) in &fin {
                        if *p == f_idx {
                            val = c.clone();
                        }
                    }
                    if self.backend.is_zero(&val) {
                        continue;
                    }
                    // Psi against the dual f-element v_j = sum_k vcoeffs[j][k] fword_k.
                    for j in 0..d_mu {
                        let cjk = &dual_mu.vcoeffs[j][k];
                        if self.backend.is_zero(cjk) {
                            continue;
                        }
                        let add = self.backend.mul(cjk, &val);
                        psi[j][i] = self.backend.add(&psi[j][i], &add);
                    }
                }
            }
            let kappa = self.elt(&self.q_pow(-2 * self.datum.rho_pair_int(&nu)))?;
            // Torus decoration: (v_i^nu w'_nu^{-1}) w'_{wt_hi} w_{-wt_hi}
            // has net exponents eta = wt(m), phi = -(wt(m)+nu).
            let eta = wt_m.clone();
            let phi: Vec<i64> = wt_hi.iter().map(|x| -x).collect();
            for i in 0..d_nu {
                // v_i^nu as an f-side element.
                let mut v_i = NFElement::zero();
                for (k, c) in dual_nu.vcoeffs[i].iter().enumerate() {
                    if self.backend.is_zero(c) {
                        continue;
                    }
                    self.nf_insert(
                        &mut v_i,
                        NFMono {
                            f: dual_nu.fwords[k].clone(),
                            eta: vec![0; self.rank()],
                            phi: vec![0; self.rank()],
                            e: Vec::new(),
                        },
                        c.clone(),
                    );
                }
                for (j, psi_row) in psi.iter().enumerate() {
                    let p_ji = &psi_row[i];
                    if self.backend.is_zero(p_ji) {
                        continue;
                    }
                    let coeff = self.backend.mul(&self.backend.mul(&kappa, &twist), p_ji);
                    let term = self.multiply_all(&[
                        v_i.clone(),
                        self.gen_torus(&eta, &phi),
                        NFElement::single(
                            NFMono {
                                f: Vec::new(),
                                eta: vec![0; self.rank()],
                                phi: vec![0; self.rank()],
                                e: dual_mu.uwords[j].clone(),
                            },
                            self.backend.one(),
                        ),
                    ])?;
                    acc = self.nf_add(&acc, &self.nf_scale(&term, &coeff));
                }
            }
        }
        Ok(acc)
    }

    /// Apply u to a sparse vector (list of (global index, coefficient)).
    pub fn apply_sparse(
        &self,
        u: &NFElement<C::Elt>,
        m: &SimpleModule<C::Elt>,
        v: &[(usize, C::Elt)],
    ) -> Result<Vec<(usize, C::Elt)>> {
        let mut acc: BTreeMap<usize, C::Elt> = BTreeMap::new();
        for (idx, c) in v {
            for (i, w) in self.apply_to_basis(u, m, *idx)? {
                let add = self.backend.mul(&w, c);
                match acc.entry(i) {
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
        Ok(acc.into_iter().collect())
    }

    /// JSON dump of a module: weights, dimensions, basis tags, and the
    /// generator action matrices in canonical scalar rendering.
    pub fn module_dump(&self, m: &SimpleModule<C::Elt>) -> Result<serde_json::Value> {
        use serde_json::{json, Value};
        let mut weights = Vec::new();
        for (s, sp) in m.spaces.iter().enumerate() {
            let wt: Vec<String> = m.weight_of(s).iter().map(|x| x.to_string()).collect();
            let words: Vec<Vec<u8>> = sp
                .words
                .iter()
                .map(|w| w.iter().map(|l| l + 1).collect())
                .collect();
            weights.push(json!({
                "weight": wt,
                "depth": sp.nu,
                "dim": sp.dim(),
                "f_word_tags": words,
            }));
        }
        let mut actions = serde_json::Map::new();
        for i in 0..self.rank() {
            let gens: Vec<(String, NFElement<C::Elt>)> = vec![
                (format!("e_{}", i + 1), self.gen_e(i)),
                (format!("f_{}", i + 1), self.gen_f(i)),
                (format!("omega_{}", i + 1), {
                    let mut eta = vec![0; self.rank()];
                    eta[i] = 1;
                    self.gen_torus(&vec![0; self.rank()], &eta)
                }),
                (format!("omega'_{}", i + 1), {
                    let mut eta = vec![0; self.rank()];
                    eta[i] = 1;
                    self.gen_torus(&eta, &vec![0; self.rank()])
                }),
            ];
            for (name, g) in gens {
                let mat = self.act(&g, m)?;
                let triplets: Vec<Value> = mat
                    .entries
                    .iter()
                    .map(|((r, c), v)| json!([r, c, self.backend.render(v)]))
                    .collect();
                actions.insert(name, Value::Array(triplets));
            }
        }
        Ok(json!({
            "cartan_type": self.datum.label,
            "lambda": m.lambda_fund,
            "dim": m.dim,
            "weights": weights,
            "actions": actions,
        }))
    }
}
