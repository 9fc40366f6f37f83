//! Cartan data, root systems, Weyl groups, the symmetric bilinear form, and
//! classical multiplicity oracles (Kostant partition count, Freudenthal).
//!
//! Conventions: a_ij = <alpha_j, alpha_i^vee>, so the simple reflection s_i
//! acts on simple-root coordinates by the matrix I - E_ii A, and the form is
//! (mu, nu) = mu^T D A nu with (alpha_i, alpha_i) = 2 d_i.
//! Invariants: d_i a_ij = d_j a_ji; gcd{d_i} = 1; DA is positive definite;
//! conversions Q -> Lambda are exact integers, Lambda -> Q has denominators
//! dividing r.

use crate::error::{Error, Result};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Hard ceiling on enumerated Weyl group order.
pub const WEYL_ORDER_LIMIT: usize = 100_000;

/// Coordinate basis tag for weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    /// Coordinates in fundamental weights (the lattice Lambda).
    Fundamental,
    /// Coordinates in simple roots (the lattice Q).
    SimpleRoot,
}

/// Integer weight vector tagged with its basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weight {
    pub coords: Vec<i64>,
    pub basis: Basis,
}

impl Weight {
    pub fn fundamental(coords: Vec<i64>) -> Self {
        Weight {
            coords,
            basis: Basis::Fundamental,
        }
    }

    pub fn simple_root(coords: Vec<i64>) -> Self {
        Weight {
            coords,
            basis: Basis::SimpleRoot,
        }
    }
}

/// Cartan datum: type label, Cartan matrix, symmetrizers, and derived data.
#[derive(Clone, Debug)]
pub struct CartanDatum {
    pub label: String,
    pub rank: usize,
    /// Cartan matrix entries a_ij.
    pub a: Vec<Vec<i64>>,
    /// Symmetrizers d_i with d_i a_ij = d_j a_ji and gcd 1.
    pub d: Vec<i64>,
    /// Exponent lattice denominator: lcm of denominators of A^{-1}.
    pub r: i64,
    /// Positive roots in simple-root coordinates, by height then lex.
    pub positive: Vec<Vec<i64>>,
    a_inv: Vec<Vec<Ratio<i64>>>,
}

impl CartanDatum {
    /// Parse a type label like "A2", "B2", "G2" into a validated datum.
    pub fn parse(label: &str) -> Result<Self> {
        let bad = || Error::BadCartanType(label.to_string());
        let mut chars = label.chars();
        let family = chars.next().ok_or_else(bad)?;
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        let (a, d) = match (family, n) {
            ('A', 1..=7) => {
                let mut a = identity_times_two(n);
                for i in 0..n - 1 {
                    a[i][i + 1] = -1;
                    a[i + 1][i] = -1;
                }
                (a, vec![1; n])
            }
            ('B', 2..=4) => {
                // First simple root short: a_12 = -2, a_21 = -1, d = (1,2,..,2).
                let mut a = identity_times_two(n);
                a[0][1] = -2;
                a[1][0] = -1;
                for i in 1..n - 1 {
                    a[i][i + 1] = -1;
                    a[i + 1][i] = -1;
                }
                let mut d = vec![2; n];
                d[0] = 1;
                (a, d)
            }
            ('C', 2..=4) => {
                // Transpose of B_n: first simple root long.
                let mut a = identity_times_two(n);
                a[0][1] = -1;
                a[1][0] = -2;
                for i in 1..n - 1 {
                    a[i][i + 1] = -1;
                    a[i + 1][i] = -1;
                }
                let mut d = vec![1; n];
                d[0] = 2;
                (a, d)
            }
            ('G', 2) => (vec![vec![2, -3], vec![-1, 2]], vec![1, 3]),
            _ => return Err(bad()),
        };
        Self::from_matrix(label, a, d)
    }

    /// Validate and finish construction from an explicit matrix.
    pub fn from_matrix(label: &str, a: Vec<Vec<i64>>, d: Vec<i64>) -> Result<Self> {
        let n = a.len();
        let bad = |why: &str| Error::BadCartanType(format!("{label}: {why}"));
        if n == 0 || a.iter().any(|row| row.len() != n) || d.len() != n {
            return Err(bad("shape"));
        }
        let mut g = 0i64;
        for i in 0..n {
            if a[i][i] != 2 || d[i] <= 0 {
                return Err(bad("diagonal"));
            }
            g = g.gcd(&d[i]);
            for j in 0..n {
                if i != j && a[i][j] > 0 {
                    return Err(bad("positive off-diagonal"));
                }
                if d[i] * a[i][j] != d[j] * a[j][i] {
                    return Err(bad("not symmetrizable by d"));
                }
            }
        }
        if g != 1 {
            return Err(bad("gcd of symmetrizers is not 1"));
        }
        // Positive definiteness of DA via leading principal minors.
        for k in 1..=n {
            let mut m: Vec<Vec<Ratio<i64>>> = (0..k)
                .map(|i| (0..k).map(|j| Ratio::from_integer(d[i] * a[i][j])).collect())
                .collect();
            if det(&mut m) <= Ratio::zero() {
                return Err(bad("not of finite type"));
            }
        }
        let a_inv = invert(&a).ok_or_else(|| bad("singular Cartan matrix"))?;
        let mut r = 1i64;
        for row in &a_inv {
            for x in row {
                r = r.lcm(x.denom());
            }
        }
        let mut datum = CartanDatum {
            label: label.to_string(),
            rank: n,
            a,
            d,
            r,
            positive: Vec::new(),
            a_inv,
        };
        datum.positive = datum.compute_positive_roots();
        Ok(datum)
    }

    /// Unit vector for alpha_i in simple-root coordinates.
    pub fn simple(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        v
    }

    /// Symmetric form on integer simple-root coordinates.
    pub fn bilinear_int(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut acc = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += x[i] * self.d[i] * self.a[i][j] * y[j];
            }
        }
        acc
    }

    /// Symmetric form on rational simple-root coordinates.
    pub fn bilinear_frac(&self, x: &[Ratio<i64>], y: &[Ratio<i64>]) -> Ratio<i64> {
        let mut acc = Ratio::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += x[i] * Ratio::from_integer(self.d[i] * self.a[i][j]) * y[j];
            }
        }
        acc
    }

    /// (rho, mu) for mu in integer simple-root coordinates: sum d_i mu_i.
    pub fn rho_pair_int(&self, mu: &[i64]) -> i64 {
        mu.iter().zip(&self.d).map(|(m, d)| m * d).sum()
    }

    /// (rho, x) for x in simple-root coordinates with rational entries.
    pub fn rho_pair_frac(&self, x: &[Ratio<i64>]) -> Ratio<i64> {
        x.iter()
            .zip(&self.d)
            .map(|(c, d)| c * Ratio::from_integer(*d))
            .sum()
    }

    /// Fundamental -> simple-root coordinates (A^{-1} c), possibly rational.
    pub fn fund_to_root(&self, c: &[i64]) -> Vec<Ratio<i64>> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| self.a_inv[i][j] * Ratio::from_integer(c[j]))
                    .sum()
            })
            .collect()
    }

    /// Simple-root -> fundamental coordinates (A x), always integral.
    pub fn root_to_fund(&self, x: &[i64]) -> Vec<i64> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.a[i][j] * x[j]).sum())
            .collect()
    }

    /// Fundamental coordinates lying in the root lattice, as integers.
    pub fn fund_to_root_integral(&self, c: &[i64]) -> Result<Vec<i64>> {
        let x = self.fund_to_root(c);
        x.iter()
            .map(|v| {
                if v.denom().is_one() {
                    Ok(*v.numer())
                } else {
                    Err(Error::NotInRootLattice(format!("{c:?}")))
                }
            })
            .collect()
    }

    /// rho in fundamental coordinates: all ones.
    pub fn rho_fund(&self) -> Vec<i64> {
        vec![1; self.rank]
    }

    pub fn is_dominant_fund(&self, c: &[i64]) -> bool {
        c.iter().all(|&x| x >= 0)
    }

    /// Dominance order: mu <= lambda iff lambda - mu is a nonnegative integer
    /// combination of simple roots. Both weights in fundamental coordinates.
    pub fn dominance_leq(&self, mu: &[i64], lambda: &[i64]) -> bool {
        let diff: Vec<i64> = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
        match self.fund_to_root_integral(&diff) {
            Ok(x) => x.iter().all(|&v| v >= 0),
            Err(_) => false,
        }
    }

    /// Matrix of the simple reflection s_i in the alpha basis: I - E_ii A.
    pub fn reflection_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.rank]; self.rank];
        for k in 0..self.rank {
            m[k][k] = 1;
        }
        for j in 0..self.rank {
            m[i][j] -= self.a[i][j];
        }
        m
    }

    fn compute_positive_roots(&self) -> Vec<Vec<i64>> {
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..self.rank {
            let s = self.simple(i);
            seen.insert(s.clone());
            queue.push_back(s);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..self.rank {
                // s_i(beta) = beta - <beta, alpha_i^vee> alpha_i.
                let pairing: i64 = (0..self.rank).map(|j| self.a[i][j] * beta[j]).sum();
                let mut img = beta.clone();
                img[i] -= pairing;
                if img.iter().all(|&x| x >= 0) && seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
        roots.sort_by_key(|b| (b.iter().sum::<i64>(), b.clone()));
        roots
    }

    /// Kostant partition count: multisets of positive roots summing to mu.
    /// Zero when mu has a negative coordinate.
    pub fn kostant_count(&self, mu: &[i64]) -> u64 {
        fn rec(
            roots: &[Vec<i64>],
            mu: &[i64],
            k: usize,
            memo: &mut BTreeMap<(Vec<i64>, usize), u64>,
        ) -> u64 {
            if mu.iter().all(|&x| x == 0) {
                return 1;
            }
            if mu.iter().any(|&x| x < 0) || k == 0 {
                return 0;
            }
            let key = (mu.to_vec(), k);
            if let Some(&v) = memo.get(&key) {
                return v;
            }
            let root = &roots[k - 1];
            let mut total = 0;
            let mut rest = mu.to_vec();
            loop {
                total += rec(roots, &rest, k - 1, memo);
                if rest.iter().zip(root).any(|(a, b)| a < b) {
                    break;
                }
                for (a, b) in rest.iter_mut().zip(root) {
                    *a -= b;
                }
            }
            memo.insert(key, total);
            total
        }
        let mut memo = BTreeMap::new();
        rec(&self.positive, mu, self.positive.len(), &mut memo)
    }

    /// Weight multiplicities of the simple module of highest weight lambda
    /// (dominant, fundamental coordinates), via the Freudenthal recursion.
    /// Keys are drops beta in Q+ with dim L(lambda)_{lambda-beta} > 0.
    pub fn l_weights(&self, lambda_fund: &[i64]) -> Result<BTreeMap<Vec<i64>, u64>> {
        if !self.is_dominant_fund(lambda_fund) {
            return Err(Error::NotDominant(format!("{lambda_fund:?}")));
        }
        let x_lambda = self.fund_to_root(lambda_fund);
        let x_rho = self.fund_to_root(&self.rho_fund());
        let lam_rho: Vec<Ratio<i64>> = x_lambda.iter().zip(&x_rho).map(|(a, b)| a + b).collect();
        let top_norm = self.bilinear_frac(&lam_rho, &lam_rho);
        let mut mults: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        mults.insert(vec![0; self.rank], 1);
        let mut level: Vec<Vec<i64>> = vec![vec![0; self.rank]];
        loop {
            // Candidates one simple root lower, deduplicated.
            let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
            for beta in &level {
                for i in 0..self.rank {
                    let mut b = beta.clone();
                    b[i] += 1;
                    next.insert(b);
                }
            }
            let mut any = false;
            let mut next_level = Vec::new();
            for beta in next {
                let m = self.freudenthal_at(&x_lambda, &x_rho, top_norm, &beta, &mults);
                next_level.push(beta.clone());
                if m > 0 {
                    mults.insert(beta, m);
                    any = true;
                }
            }
            if !any {
                break;
            }
            level = next_level;
        }
        Ok(mults)
    }

    /// One Freudenthal step: multiplicity at drop beta given all higher ones.
    fn freudenthal_at(
        &self,
        x_lambda: &[Ratio<i64>],
        x_rho: &[Ratio<i64>],
        top_norm: Ratio<i64>,
        beta: &[i64],
        higher: &BTreeMap<Vec<i64>, u64>,
    ) -> u64 {
        let x_mu: Vec<Ratio<i64>> = x_lambda
            .iter()
            .zip(beta)
            .map(|(a, b)| a - Ratio::from_integer(*b))
            .collect();
        let mu_rho: Vec<Ratio<i64>> = x_mu.iter().zip(x_rho).map(|(a, b)| a + b).collect();
        let denom = top_norm - self.bilinear_frac(&mu_rho, &mu_rho);
        if denom <= Ratio::zero() {
            return 0;
        }
        let mut rhs = Ratio::zero();
        for alpha in &self.positive {
            let alpha_frac: Vec<Ratio<i64>> =
                alpha.iter().map(|&x| Ratio::from_integer(x)).collect();
            let mut k = 1i64;
            loop {
                let up: Vec<i64> = beta.iter().zip(alpha).map(|(b, a)| b - k * a).collect();
                if up.iter().any(|&x| x < 0) {
                    break;
                }
                if let Some(&m) = higher.get(&up) {
                    let shifted: Vec<Ratio<i64>> = x_mu
                        .iter()
                        .zip(&alpha_frac)
                        .map(|(x, a)| x + Ratio::from_integer(k) * a)
                        .collect();
                    rhs += Ratio::from_integer(m as i64) * self.bilinear_frac(&shifted, &alpha_frac);
                }
                k += 1;
            }
        }
        let m = rhs * Ratio::from_integer(2) / denom;
        debug_assert!(m.denom().is_one() && !m.is_negative(), "Freudenthal gave {m}");
        *m.numer() as u64
    }

    /// Multiplicity of the weight lambda - beta in L(lambda).
    pub fn freudenthal_mult(&self, lambda_fund: &[i64], beta: &[i64]) -> Result<u64> {
        if beta.iter().any(|&x| x < 0) {
            return Ok(0);
        }
        Ok(self.l_weights(lambda_fund)?.get(beta).copied().unwrap_or(0))
    }

    /// Weyl dimension formula for L(lambda).
    pub fn weyl_dim(&self, lambda_fund: &[i64]) -> Result<u64> {
        if !self.is_dominant_fund(lambda_fund) {
            return Err(Error::NotDominant(format!("{lambda_fund:?}")));
        }
        let x_lambda = self.fund_to_root(lambda_fund);
        let x_rho = self.fund_to_root(&self.rho_fund());
        let lam_rho: Vec<Ratio<i64>> = x_lambda.iter().zip(&x_rho).map(|(a, b)| a + b).collect();
        let mut dim = Ratio::one();
        for alpha in &self.positive {
            let alpha_frac: Vec<Ratio<i64>> =
                alpha.iter().map(|&x| Ratio::from_integer(x)).collect();
            dim *= self.bilinear_frac(&lam_rho, &alpha_frac)
                / self.bilinear_frac(&x_rho, &alpha_frac);
        }
        debug_assert!(dim.denom().is_one());
        Ok(*dim.numer() as u64)
    }
}

fn identity_times_two(n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    a
}

/// Determinant by Gaussian elimination; consumes the matrix.
fn det(m: &mut [Vec<Ratio<i64>>]) -> Ratio<i64> {
    let n = m.len();
    let mut acc = Ratio::one();
    for col in 0..n {
        let pivot = match (col..n).find(|&row| !m[row][col].is_zero()) {
            Some(p) => p,
            None => return Ratio::zero(),
        };
        if pivot != col {
            m.swap(pivot, col);
            acc = -acc;
        }
        let p = m[col][col];
        acc *= p;
        for row in col + 1..n {
            let factor = m[row][col] / p;
            for k in col..n {
                let sub = factor * m[col][k];
                m[row][k] -= sub;
            }
        }
    }
    acc
}

/// Exact inverse of an integer matrix, if nonsingular.
fn invert(a: &[Vec<i64>]) -> Option<Vec<Vec<Ratio<i64>>>> {
    let n = a.len();
    let mut m: Vec<Vec<Ratio<i64>>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        Ratio::from_integer(a[i][j])
                    } else if j - n == i {
                        Ratio::one()
                    } else {
                        Ratio::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&row| !m[row][col].is_zero())?;
        m.swap(pivot, col);
        let p = m[col][col];
        for k in 0..2 * n {
            m[col][k] /= p;
        }
        for row in 0..n {
            if row != col && !m[row][col].is_zero() {
                let factor = m[row][col];
                for k in 0..2 * n {
                    let sub = factor * m[col][k];
                    m[row][k] -= sub;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0 {
                for j in 0..n {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    c
}

/// Fully enumerated Weyl group with reduced words and alpha-basis matrices.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub rank: usize,
    /// (reduced word, matrix), breadth-first from the identity.
    pub elements: Vec<(Vec<usize>, Vec<Vec<i64>>)>,
}

impl WeylGroup {
    pub fn build(datum: &CartanDatum) -> Result<Self> {
        Self::build_with_limit(datum, WEYL_ORDER_LIMIT)
    }

    pub fn build_with_limit(datum: &CartanDatum, limit: usize) -> Result<Self> {
        let n = datum.rank;
        let gens: Vec<Vec<Vec<i64>>> = (0..n).map(|i| datum.reflection_matrix(i)).collect();
        let id: Vec<Vec<i64>> = {
            let mut m = vec![vec![0; n]; n];
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = 1;
            }
            m
        };
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        seen.insert(flatten(&id));
        let mut elements = vec![(Vec::new(), id)];
        let mut frontier = 0;
        while frontier < elements.len() {
            let (word, mat) = elements[frontier].clone();
            frontier += 1;
            for (i, gen) in gens.iter().enumerate() {
                let m2 = mat_mul(&mat, gen);
                if seen.insert(flatten(&m2)) {
                    let mut w2 = word.clone();
                    w2.push(i);
                    elements.push((w2, m2));
                    if elements.len() > limit {
                        return Err(Error::WeylTooLarge {
                            order: elements.len(),
                            limit,
                        });
                    }
                }
            }
        }
        Ok(WeylGroup { rank: n, elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Apply element k to integer simple-root coordinates.
    pub fn act(&self, k: usize, x: &[i64]) -> Vec<i64> {
        let m = &self.elements[k].1;
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| m[i][j] * x[j]).sum())
            .collect()
    }

    /// Apply element k to rational simple-root coordinates.
    pub fn act_frac(&self, k: usize, x: &[Ratio<i64>]) -> Vec<Ratio<i64>> {
        let m = &self.elements[k].1;
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| Ratio::from_integer(m[i][j]) * x[j])
                    .sum()
            })
            .collect()
    }

    /// Sorted orbit of an integer simple-root vector.
    pub fn orbit(&self, x: &[i64]) -> Vec<Vec<i64>> {
        let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
        for k in 0..self.order() {
            set.insert(self.act(k, x));
        }
        set.into_iter().collect()
    }
}

fn flatten(m: &[Vec<i64>]) -> Vec<i64> {
    m.iter().flatten().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(label: &str) -> CartanDatum {
        CartanDatum::parse(label).unwrap()
    }

    #[test]
    fn parses_supported_types_and_rejects_others() {
        for label in ["A1", "A2", "A3", "A7", "B2", "B4", "C2", "C4", "G2"] {
            let d = datum(label);
            assert_eq!(d.label, label);
        }
        assert!(CartanDatum::parse("A8").is_err());
        assert!(CartanDatum::parse("D4").is_err());
        assert!(CartanDatum::parse("Q3").is_err());
        assert!(CartanDatum::parse("A0").is_err());
    }

    #[test]
    fn lattice_denominators() {
        for (label, r) in [("A1", 2), ("A2", 3), ("B2", 2), ("G2", 1), ("A3", 4)] {
            assert_eq!(datum(label).r, r, "{label}");
        }
    }

    #[test]
    fn positive_root_counts() {
        for (label, count) in [
            ("A1", 1),
            ("A2", 3),
            ("B2", 4),
            ("G2", 6),
            ("A3", 6),
            ("B3", 9),
            ("C3", 9),
            ("A7", 28),
        ] {
            assert_eq!(datum(label).positive.len(), count, "{label}");
        }
        // A2 positive roots are alpha1, alpha2, alpha1+alpha2.
        assert_eq!(
            datum("A2").positive,
            vec![vec![0, 1], vec![1, 0], vec![1, 1]]
        );
    }

    #[test]
    fn bilinear_form_values() {
        for label in ["A2", "B2", "G2"] {
            let d = datum(label);
            let x_rho = d.fund_to_root(&d.rho_fund());
            for i in 0..d.rank {
                let ai = d.simple(i);
                assert_eq!(d.bilinear_int(&ai, &ai), 2 * d.d[i]);
                // (rho, alpha_i) = d_i.
                let ai_frac: Vec<Ratio<i64>> =
                    ai.iter().map(|&x| Ratio::from_integer(x)).collect();
                assert_eq!(
                    d.bilinear_frac(&x_rho, &ai_frac),
                    Ratio::from_integer(d.d[i])
                );
                assert_eq!(d.rho_pair_int(&ai), d.d[i]);
            }
        }
        let a2 = datum("A2");
        assert_eq!(a2.bilinear_int(&a2.simple(0), &a2.simple(1)), -1);
    }

    #[test]
    fn weyl_group_orders_and_invariance() {
        for (label, order) in [("A1", 2), ("A2", 6), ("B2", 8), ("G2", 12), ("A3", 24)] {
            let d = datum(label);
            let w = WeylGroup::build(&d).unwrap();
            assert_eq!(w.order(), order, "{label}");
            // The form is W-invariant.
            for k in 0..w.order() {
                for i in 0..d.rank {
                    for j in 0..d.rank {
                        let si = d.simple(i);
                        let sj = d.simple(j);
                        assert_eq!(
                            d.bilinear_int(&w.act(k, &si), &w.act(k, &sj)),
                            d.bilinear_int(&si, &sj)
                        );
                    }
                }
            }
            // Each element permutes the root set.
            let all_roots: BTreeSet<Vec<i64>> = d
                .positive
                .iter()
                .flat_map(|b| [b.clone(), b.iter().map(|x| -x).collect()])
                .collect();
            for k in 0..w.order() {
                for beta in &d.positive {
                    assert!(all_roots.contains(&w.act(k, beta)));
                }
            }
        }
    }

    #[test]
    fn simple_reflection_on_fundamental_weight() {
        // s_i(w_i) = w_i - alpha_i; s(0) = 0; |W.w1| = 3 in A2.
        let d = datum("A2");
        let w = WeylGroup::build(&d).unwrap();
        let x_w1 = d.fund_to_root(&[1, 0]);
        let s1 = &w.elements.iter().find(|(word, _)| word == &vec![0]).unwrap().1;
        let img: Vec<Ratio<i64>> = (0..2)
            .map(|i| (0..2).map(|j| Ratio::from_integer(s1[i][j]) * x_w1[j]).sum())
            .collect();
        assert_eq!(img[0], x_w1[0] - Ratio::one());
        assert_eq!(img[1], x_w1[1]);
        assert_eq!(w.orbit(&[0, 0]), vec![vec![0, 0]]);
        // Orbit of w1: scale by r=3 to land in integer coordinates.
        let scaled: Vec<i64> = x_w1.iter().map(|x| (x * Ratio::from_integer(3)).to_integer()).collect();
        assert_eq!(w.orbit(&scaled).len(), 3);
    }

    #[test]
    fn kostant_counts() {
        let a2 = datum("A2");
        assert_eq!(a2.kostant_count(&[1, 0]), 1);
        assert_eq!(a2.kostant_count(&[1, 1]), 2);
        assert_eq!(a2.kostant_count(&[2, 2]), 3);
        assert_eq!(a2.kostant_count(&[-1, 0]), 0);
        let b2 = datum("B2");
        // mu = alpha1 + alpha2: {a1+a2}, {a1, a2} -> 2.
        assert_eq!(b2.kostant_count(&[1, 1]), 2);
        // mu = 2 alpha1 + alpha2: {2a1+a2}, {a1, a1+a2}, {a1, a1, a2} -> 3.
        assert_eq!(b2.kostant_count(&[2, 1]), 3);
    }

    #[test]
    fn freudenthal_and_weyl_dim_agree() {
        // A1, lambda = 2w: string alpha, 0, -alpha each with multiplicity 1.
        let a1 = datum("A1");
        let w = a1.l_weights(&[2]).unwrap();
        assert_eq!(w.len(), 3);
        assert!(w.values().all(|&m| m == 1));
        // A2 adjoint: dim 8, zero weight has multiplicity 2.
        let a2 = datum("A2");
        let w = a2.l_weights(&[1, 1]).unwrap();
        assert_eq!(w.values().sum::<u64>(), 8);
        assert_eq!(w[&vec![1, 1]], 2);
        assert_eq!(w[&vec![0, 0]], 1);
        assert_eq!(a2.freudenthal_mult(&[1, 1], &[1, 0]).unwrap(), 1);
        assert_eq!(a2.weyl_dim(&[1, 1]).unwrap(), 8);
        // Totals match the Weyl dimension formula across a test set.
        for (label, lam) in [
            ("A2", vec![2, 1]),
            ("B2", vec![1, 1]),
            ("G2", vec![1, 0]),
            ("A3", vec![1, 0, 1]),
        ] {
            let d = datum(label);
            let total: u64 = d.l_weights(&lam).unwrap().values().sum();
            assert_eq!(total, d.weyl_dim(&lam).unwrap(), "{label} {lam:?}");
        }
        // G2 adjoint: dim 14, zero weight multiplicity 2.
        let g2 = datum("G2");
        let adj = g2.l_weights(&[0, 1]).unwrap();
        assert_eq!(adj.values().sum::<u64>(), 14);
    }

    #[test]
    fn dominance_and_conversions() {
        let a2 = datum("A2");
        assert_eq!(a2.root_to_fund(&[1, 1]), vec![1, 1]);
        assert_eq!(a2.fund_to_root_integral(&[1, 1]).unwrap(), vec![1, 1]);
        assert!(a2.fund_to_root_integral(&[1, 0]).is_err());
        assert!(a2.dominance_leq(&[0, 0], &[1, 1]));
        assert!(!a2.dominance_leq(&[1, 0], &[1, 1]));
        // Conversions are mutually inverse on the root lattice.
        for x in [[2, 1], [0, 3], [1, 1]] {
            let c = a2.root_to_fund(&x);
            assert_eq!(a2.fund_to_root_integral(&c).unwrap(), x.to_vec());
        }
    }

    #[test]
    fn weyl_cap_is_enforced() {
        let d = datum("A3");
        assert!(matches!(
            WeylGroup::build_with_limit(&d, 10),
            Err(Error::WeylTooLarge { limit: 10, .. })
        ));
        let d = datum("A5");
        assert_eq!(WeylGroup::build(&d).unwrap().order(), 720);
    }
}
