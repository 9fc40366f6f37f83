//! Graded components: word bases modulo the quantum Serre relations.
//!
//! For a content vector mu the relation subspace is spanned by all words
//! w1 · S_ij · w2 where S_ij ranges over the Serre elements and w1, w2 over
//! words of complementary content. Row reduction over the coefficient field
//! selects pivot words (eliminated) and leaves the lexicographically
//! determined basis words; the count must equal the Kostant partition number
//! of mu — any mismatch is a hard error, never a warning.

use super::words::enumerate_words;
use super::{NFElement, NFMono, Sign};
use crate::algebra::Algebra;
use crate::coeff::scalar::quantum_binomial;
use crate::coeff::{CoeffBackend, ParamScalar};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Basis data for one graded component.
#[derive(Debug)]
pub struct GradedBasis<T> {
    pub mu: Vec<i64>,
    /// Basis words in lexicographic order.
    pub words: Vec<Vec<u8>>,
    /// Every word of content mu, expressed over `words` by basis index.
    pub rewrite: BTreeMap<Vec<u8>, Vec<(usize, T)>>,
}

impl<T> GradedBasis<T> {
    pub fn dim(&self) -> usize {
        self.words.len()
    }
}

impl<C: CoeffBackend> Algebra<C> {
    /// The terms of the Serre element S_ij as (word, exact coefficient)
    /// pairs. On the e-side:
    /// sum_n (-q_ij)^n [1-a_ij choose n]_i e_i^{1-a_ij-n} e_j e_i^n.
    /// The f-side relation carries q_ij^{-1} in place of q_ij: that is the
    /// unique choice lying in the radical of the pairing and killed by the
    /// coproduct, so the two sides share basis words while their rewrite
    /// coefficients differ by inverting every q_ij.
    pub fn serre_terms(
        &self,
        i: usize,
        j: usize,
        sign: Sign,
    ) -> Result<Vec<(Vec<u8>, ParamScalar)>> {
        if i == j {
            return Err(Error::InvalidInput(format!(
                "serre element requires distinct indices, got i = j = {}",
                i + 1
            )));
        }
        let m = 1 - self.datum.a[i][j];
        let q_param = match sign {
            Sign::Plus => self.q_ij(i, j),
            Sign::Minus => self.q_ij(j, i),
        };
        let mut out = Vec::with_capacity((m + 1) as usize);
        for n in 0..=m {
            let mut coeff = quantum_binomial(self.nvars(), self.vars.r, self.datum.d[i], m, n)?;
            coeff = coeff.mul(&q_param.pow(n)?);
            if n % 2 == 1 {
                coeff = coeff.neg();
            }
            let mut word = vec![i as u8; (m - n) as usize];
            word.push(j as u8);
            word.extend(std::iter::repeat(i as u8).take(n as usize));
            out.push((word, coeff));
        }
        Ok(out)
    }

    /// The Serre element for (i, j) on the chosen side, as a raw (unreduced)
    /// normal-form element. Rewriting it through its graded component gives
    /// zero, since it generates the defining ideal there.
    pub fn serre_element(&self, i: usize, j: usize, sign: Sign) -> Result<NFElement<C::Elt>> {
        let mut out = NFElement::zero();
        for (word, coeff) in self.serre_terms(i, j, sign)? {
            let mut mono = NFMono::identity(self.rank());
            match sign {
                Sign::Plus => mono.e = word,
                Sign::Minus => mono.f = word,
            }
            self.nf_insert(&mut out, mono, self.backend.from_param(&coeff)?);
        }
        Ok(out)
    }

    /// The graded basis of the component of content mu on the given side,
    /// memoized. The two sides share their basis word lists but not their
    /// rewrite coefficients.
    pub fn graded_basis(&self, sign: Sign, mu: &[i64]) -> Result<Arc<GradedBasis<C::Elt>>> {
        let plus = sign == Sign::Plus;
        if let Some(b) = self.cached_basis(plus, mu) {
            return Ok(b);
        }
        if mu.iter().any(|&x| x < 0) {
            return Err(Error::InvalidInput(format!(
                "graded component needs a nonnegative content vector, got {mu:?}"
            )));
        }
        self.height_check(mu)?;
        let basis = Arc::new(self.build_basis(sign, mu)?);
        self.store_basis(plus, mu.to_vec(), Arc::clone(&basis));
        Ok(self.cached_basis(plus, mu).unwrap_or(basis))
    }

    fn build_basis(&self, sign: Sign, mu: &[i64]) -> Result<GradedBasis<C::Elt>> {
        let all_words = enumerate_words(mu);
        let ncols = all_words.len();
        let col_of: BTreeMap<&[u8], usize> = all_words
            .iter()
            .enumerate()
            .map(|(k, w)| (w.as_slice(), k))
            .collect();

        // Assemble relation rows: w1 * S_ij * w2 over all applicable (i, j).
        let mut rows: Vec<Vec<C::Elt>> = Vec::new();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                if i == j {
                    continue;
                }
                let terms = self.serre_terms(i, j, sign)?;
                let mut s_content = vec![0i64; self.rank()];
                s_content[i] = 1 - self.datum.a[i][j];
                s_content[j] += 1;
                let rest: Vec<i64> = mu
                    .iter()
                    .zip(&s_content)
                    .map(|(m, s)| m - s)
                    .collect();
                if rest.iter().any(|&x| x < 0) {
                    continue;
                }
                for nu1 in split_contents(&rest) {
                    let nu2: Vec<i64> = rest.iter().zip(&nu1).map(|(r, a)| r - a).collect();
                    for w1 in enumerate_words(&nu1) {
                        for w2 in enumerate_words(&nu2) {
                            let mut row = vec![self.backend.zero(); ncols];
                            for (sw, sc) in &terms {
                                let mut word = w1.clone();
                                word.extend_from_slice(sw);
                                word.extend_from_slice(&w2);
                                let col = col_of[word.as_slice()];
                                let c = self.backend.from_param(sc)?;
                                row[col] = self.backend.add(&row[col], &c);
                            }
                            rows.push(row);
                        }
                    }
                }
            }
        }

        let pivots = rref(&self.backend, &mut rows)?;
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().map(|&(c, _)| c).collect();
        let mut basis_cols: Vec<usize> = Vec::new();
        let mut basis_index_of_col: BTreeMap<usize, usize> = BTreeMap::new();
        for c in 0..ncols {
            if !pivot_set.contains(&c) {
                basis_index_of_col.insert(c, basis_cols.len());
                basis_cols.push(c);
            }
        }
        let expected = self.datum.kostant_count(mu);
        if basis_cols.len() as u64 != expected {
            return Err(Error::DimensionMismatch {
                mu: format!("{mu:?}"),
                found: basis_cols.len(),
                expected: expected as usize,
            });
        }

        let words: Vec<Vec<u8>> = basis_cols.iter().map(|&c| all_words[c].clone()).collect();
        let mut rewrite: BTreeMap<Vec<u8>, Vec<(usize, C::Elt)>> = BTreeMap::new();
        for (&c, &k) in &basis_index_of_col {
            rewrite.insert(all_words[c].clone(), vec![(k, self.backend.one())]);
        }
        for &(col, rowi) in &pivots {
            // Row reads: word_col + sum over free columns = 0.
            let mut combo = Vec::new();
            for (&c, &k) in &basis_index_of_col {
                let entry = &rows[rowi][c];
                if !self.backend.is_zero(entry) {
                    combo.push((k, self.backend.neg(entry)));
                }
            }
            rewrite.insert(all_words[col].clone(), combo);
        }
        Ok(GradedBasis {
            mu: mu.to_vec(),
            words,
            rewrite,
        })
    }
}

/// All content vectors nu with 0 <= nu <= bound componentwise.
fn split_contents(bound: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &b in bound {
        let mut next = Vec::with_capacity(out.len() * (b as usize + 1));
        for prefix in &out {
            for v in 0..=b {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Reduced row echelon form in place. Returns (pivot column, row index)
/// pairs; after reduction each pivot column is zero except for a one in its
/// own row, so non-pivot entries of a row express its pivot word.
pub fn rref<C: CoeffBackend>(
    backend: &C,
    rows: &mut Vec<Vec<C::Elt>>,
) -> Result<Vec<(usize, usize)>> {
    backend.rref(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::coeff::parse::render_scalar;

    #[test]
    fn serre_element_matches_rank_two_expansion() {
        // For the standard two-parameter A2 datum: e1^2 e2 - q_12 (q + q^-1)
        // e1 e2 e1 + q_12^2 e2 e1^2.
        let alg = Algebra::exact("A2", 6).unwrap();
        let terms = alg.serre_terms(0, 1, Sign::Plus).unwrap();
        assert_eq!(terms.len(), 3);
        assert_eq!(terms[0].0, vec![0, 0, 1]);
        assert_eq!(terms[1].0, vec![0, 1, 0]);
        assert_eq!(terms[2].0, vec![1, 0, 0]);
        assert!(terms[0].1.eq_scalar(&ParamScalar::from_int(alg.nvars(), 1)));
        let q = alg.q_pow(1);
        let qinv = alg.q_pow(-1);
        let expect1 = alg.q_ij(0, 1).mul(&q.add(&qinv)).neg();
        assert!(
            terms[1].1.eq_scalar(&expect1),
            "middle coefficient {} != {}",
            render_scalar(&alg.vars, &terms[1].1),
            render_scalar(&alg.vars, &expect1)
        );
        let expect2 = alg.q_ij(0, 1).pow(2).unwrap();
        assert!(terms[2].1.eq_scalar(&expect2));
        // f-side mirror: same words, coefficients with every q_ij inverted.
        let f_terms = alg.serre_terms(0, 1, Sign::Minus).unwrap();
        assert_eq!(f_terms.len(), 3);
        for (k, (wf, cf)) in f_terms.iter().enumerate() {
            assert_eq!(*wf, terms[k].0);
            let expected = match k {
                0 => ParamScalar::from_int(alg.nvars(), 1),
                1 => alg.q_ij(1, 0).mul(&q.add(&qinv)).neg(),
                _ => alg.q_ij(1, 0).pow(2).unwrap(),
            };
            assert!(cf.eq_scalar(&expected), "f-side coefficient {k}");
        }
    }

    #[test]
    fn serre_diagonal_rejected() {
        let alg = Algebra::exact("A2", 6).unwrap();
        assert!(matches!(
            alg.serre_terms(1, 1, Sign::Plus),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn graded_basis_dimensions_match_kostant() {
        let alg = Algebra::exact("A2", 6).unwrap();
        for mu in [
            vec![0, 0],
            vec![1, 0],
            vec![1, 1],
            vec![2, 1],
            vec![2, 2],
            vec![3, 2],
            vec![3, 3],
        ] {
            let b = alg.graded_basis(Sign::Plus, &mu).unwrap();
            assert_eq!(
                b.dim() as u64,
                alg.datum.kostant_count(&mu),
                "dimension at {mu:?}"
            );
            // Every word of the content has a rewrite entry.
            assert_eq!(b.rewrite.len(), enumerate_words(&mu).len());
            // f-side: identical basis words, independently reduced.
            let bf = alg.graded_basis(Sign::Minus, &mu).unwrap();
            assert_eq!(bf.words, b.words, "sides must share basis words at {mu:?}");
        }
        // A2 at a1+a2: words e1e2, e2e1; Serre needs height 3, so dim 2.
        let b = alg.graded_basis(Sign::Plus, &[1, 1]).unwrap();
        assert_eq!(b.dim(), 2);
        // 2a1+a2: three words, one Serre relation, dim 2 = kostant(2,1).
        let b = alg.graded_basis(Sign::Plus, &[2, 1]).unwrap();
        assert_eq!(b.dim(), 2);
        assert_eq!(alg.datum.kostant_count(&[2, 1]), 2);
    }

    #[test]
    fn graded_basis_rewrite_is_consistent() {
        // The pivot word must expand into basis words whose combination,
        // substituted back into any Serre row, gives zero.
        let alg = Algebra::exact("A2", 6).unwrap();
        let b = alg.graded_basis(Sign::Plus, &[2, 1]).unwrap();
        // The component has words [e1e1e2, e1e2e1, e2e1e1]; exactly one is
        // rewritten (the pivot), the rest are basis words.
        let mut pivot_count = 0;
        for (w, combo) in &b.rewrite {
            let self_idx = b.words.iter().position(|bw| bw == w);
            match self_idx {
                Some(k) => {
                    assert_eq!(combo.len(), 1);
                    assert_eq!(combo[0].0, k);
                }
                None => pivot_count += 1,
            }
        }
        assert_eq!(pivot_count, 1);
    }

    #[test]
    fn height_overflow_is_reported() {
        let alg = Algebra::exact("A2", 4).unwrap();
        let err = alg.graded_basis(Sign::Plus, &[3, 2]).unwrap_err();
        match err {
            Error::HeightOverflow { needed, bound } => {
                assert_eq!(needed, 5);
                assert_eq!(bound, 4);
            }
            other => panic!("expected HeightOverflow, got {other:?}"),
        }
    }

    #[test]
    fn g2_component_dimensions() {
        let alg = Algebra::exact("G2", 5).unwrap();
        for mu in [vec![1, 1], vec![2, 1], vec![3, 1], vec![3, 2]] {
            let b = alg.graded_basis(Sign::Plus, &mu).unwrap();
            assert_eq!(b.dim() as u64, alg.datum.kostant_count(&mu));
            let bf = alg.graded_basis(Sign::Minus, &mu).unwrap();
            assert_eq!(bf.words, b.words);
        }
    }
}
