//! Coefficient backends: exact rational-function arithmetic and modular
//! evaluation behind one trait, so the whole pipeline can run in either mode.
//!
//! Invariant: for any fixed evaluation point, the modular backend is a ring
//! homomorphism image of the exact one wherever denominators do not vanish.

use crate::coeff::modular::{invmod, mulmod, ModPoint};
use crate::coeff::parse::render_scalar;
use crate::coeff::poly::LaurentPoly;
use crate::coeff::scalar::ParamScalar;
use crate::coeff::VarSet;
use crate::error::{Error, Result};

/// Arithmetic interface shared by the exact and modular coefficient rings.
pub trait CoeffBackend: Clone + Send + Sync + 'static {
    type Elt: Clone + PartialEq + std::fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elt;
    fn one(&self) -> Self::Elt;
    fn from_int(&self, k: i64) -> Self::Elt;
    /// Image of an exact scalar; fails with RetryPoint when a denominator
    /// vanishes at a modular point.
    fn from_param(&self, s: &ParamScalar) -> Result<Self::Elt>;
    fn add(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn sub(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn mul(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn neg(&self, a: &Self::Elt) -> Self::Elt;
    fn div(&self, a: &Self::Elt, b: &Self::Elt) -> Result<Self::Elt>;
    fn pow(&self, a: &Self::Elt, k: i64) -> Result<Self::Elt>;
    fn is_zero(&self, a: &Self::Elt) -> bool;
    /// Some(true) means certainly nonzero (sound to pivot on); None means no
    /// cheap verdict. Never returns Some(false) unless the element is zero.
    fn fast_nonzero_hint(&self, _a: &Self::Elt) -> Option<bool> {
        None
    }
    fn render(&self, a: &Self::Elt) -> String;
    fn name(&self) -> &'static str;
    /// Parse a canonically rendered scalar back; None when the text is not a
    /// valid scalar for this backend (disk-cache loads then fall back to
    /// recomputation).
    fn parse_elt(&self, s: &str) -> Option<Self::Elt>;
    /// Description string folded into disk-cache keys; must pin down every
    /// backend datum that can change a computed value.
    fn cache_tag(&self) -> String;

    /// Inverse of a square matrix, or None when the matrix is singular.
    ///
    /// The default is division-based Gauss-Jordan on the augmented matrix
    /// [g | I]; backends with expensive division may override it.
    fn matrix_inverse(&self, g: &[Vec<Self::Elt>]) -> Result<Option<Vec<Vec<Self::Elt>>>> {
        let n = g.len();
        let mut rows: Vec<Vec<Self::Elt>> = Vec::with_capacity(n);
        for (i, grow) in g.iter().enumerate() {
            debug_assert_eq!(grow.len(), n, "matrix must be square");
            let mut row = grow.clone();
            for j in 0..n {
                row.push(if j == i { self.one() } else { self.zero() });
            }
            rows.push(row);
        }
        for col in 0..n {
            let Some(k) = (col..n).find(|&k| !self.is_zero(&rows[k][col])) else {
                return Ok(None);
            };
            rows.swap(col, k);
            let inv = self.div(&self.one(), &rows[col][col].clone())?;
            for j in col..2 * n {
                rows[col][j] = self.mul(&rows[col][j], &inv);
            }
            for i in 0..n {
                if i == col || self.is_zero(&rows[i][col]) {
                    continue;
                }
                let f = rows[i][col].clone();
                for j in col..2 * n {
                    let s = self.mul(&f, &rows[col][j]);
                    rows[i][j] = self.sub(&rows[i][j], &s);
                }
            }
        }
        Ok(Some(rows.into_iter().map(|r| r[n..].to_vec()).collect()))
    }

    /// Reduced row echelon form in place. Returns (pivot column, row index)
    /// pairs; after reduction each pivot column is zero except for a one in
    /// its own row, pivot rows sit in the top rows in pivot-column order, and
    /// every remaining row is zero.
    ///
    /// The default is division-based Gauss-Jordan; backends with expensive
    /// division may override it.
    fn rref(&self, rows: &mut Vec<Vec<Self::Elt>>) -> Result<Vec<(usize, usize)>> {
        let nrows = rows.len();
        let ncols = if nrows == 0 { 0 } else { rows[0].len() };
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for col in 0..ncols {
            if r == nrows {
                break;
            }
            let mut sel = None;
            for k in r..nrows {
                if !self.is_zero(&rows[k][col]) {
                    sel = Some(k);
                    break;
                }
            }
            let Some(k) = sel else { continue };
            rows.swap(r, k);
            let inv = self.div(&self.one(), &rows[r][col].clone())?;
            for c in col..ncols {
                rows[r][c] = self.mul(&rows[r][c], &inv);
            }
            for k in 0..nrows {
                if k == r || self.is_zero(&rows[k][col]) {
                    continue;
                }
                let factor = rows[k][col].clone();
                for c in col..ncols {
                    let sub = self.mul(&factor, &rows[r][c]);
                    rows[k][c] = self.sub(&rows[k][c], &sub);
                }
            }
            pivots.push((col, r));
            r += 1;
        }
        Ok(pivots)
    }
}

/// Exact backend over fractions of Laurent polynomials.
#[derive(Clone)]
pub struct ExactBackend {
    pub vars: VarSet,
    hint: ModPoint,
}

/// Fixed seed for the nonzero-hint point, so hints are reproducible.
const HINT_SEED: u64 = 0x6f79_7167;

impl ExactBackend {
    pub fn new(vars: VarSet) -> Self {
        let hint = ModPoint::generate(vars.num_vars(), HINT_SEED, 0);
        ExactBackend { vars, hint }
    }
}

impl CoeffBackend for ExactBackend {
    type Elt = ParamScalar;

    fn zero(&self) -> Self::Elt {
        ParamScalar::zero(self.vars.num_vars())
    }
    fn one(&self) -> Self::Elt {
        ParamScalar::one(self.vars.num_vars())
    }
    fn from_int(&self, k: i64) -> Self::Elt {
        ParamScalar::from_int(self.vars.num_vars(), k)
    }
    fn from_param(&self, s: &ParamScalar) -> Result<Self::Elt> {
        Ok(s.clone())
    }
    fn add(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt {
        a.add(b)
    }
    fn sub(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt {
        a.sub(b)
    }
    fn mul(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt {
        a.mul(b)
    }
    fn neg(&self, a: &Self::Elt) -> Self::Elt {
        a.neg()
    }
    fn div(&self, a: &Self::Elt, b: &Self::Elt) -> Result<Self::Elt> {
        a.div(b)
    }
    fn pow(&self, a: &Self::Elt, k: i64) -> Result<Self::Elt> {
        a.pow(k)
    }
    fn is_zero(&self, a: &Self::Elt) -> bool {
        a.is_zero()
    }
    fn fast_nonzero_hint(&self, a: &Self::Elt) -> Option<bool> {
        match self.hint.eval_scalar(a) {
            Ok(v) if v != 0 => Some(true),
            _ => None,
        }
    }
    fn render(&self, a: &Self::Elt) -> String {
        render_scalar(&self.vars, a)
    }
    fn name(&self) -> &'static str {
        "exact"
    }
    fn parse_elt(&self, s: &str) -> Option<Self::Elt> {
        crate::coeff::parse::parse_scalar(&self.vars, s).ok()
    }
    fn cache_tag(&self) -> String {
        format!("exact nv={}", self.vars.num_vars())
    }

    /// Fraction-free inversion. Division-based elimination compounds
    /// unreduced rational functions (there is no polynomial gcd here), so
    /// dense matrices blow up; instead clear each row's denominators and run
    /// one-step Bareiss Gauss-Jordan, where every intermediate entry is a
    /// minor of the cleared matrix and every division is exact.
    fn matrix_inverse(&self, g: &[Vec<Self::Elt>]) -> Result<Option<Vec<Vec<Self::Elt>>>> {
        let n = g.len();
        let nv = self.vars.num_vars();
        if n == 0 {
            return Ok(Some(Vec::new()));
        }
        // Row i of the cleared matrix is d_i * (row i of g) with d_i the
        // product of the row's distinct denominators; the right block starts
        // as diag(d_i), so the final right block over the final diagonal is
        // exactly g^{-1}.
        let mut rows: Vec<Vec<LaurentPoly>> = Vec::with_capacity(n);
        for (i, grow) in g.iter().enumerate() {
            debug_assert_eq!(grow.len(), n, "matrix must be square");
            let mut dens: Vec<&LaurentPoly> = Vec::new();
            for e in grow {
                if !dens.iter().any(|d| **d == e.den) {
                    dens.push(&e.den);
                }
            }
            let mut di = LaurentPoly::one(nv);
            for d in &dens {
                di = di.mul(d);
            }
            let mut row = Vec::with_capacity(2 * n);
            for e in grow {
                let cof = di
                    .try_exact_div(&e.den)
                    .expect("row denominator product is divisible by each factor");
                row.push(e.num.mul(&cof));
            }
            for j in 0..n {
                row.push(if j == i { di.clone() } else { LaurentPoly::zero() });
            }
            rows.push(row);
        }
        let mut prev = LaurentPoly::one(nv);
        for col in 0..n {
            let Some(k) = (col..n).find(|&k| !rows[k][col].is_zero()) else {
                return Ok(None);
            };
            rows.swap(col, k);
            let pivot = rows[col][col].clone();
            for i in 0..n {
                if i == col {
                    continue;
                }
                let f = std::mem::replace(&mut rows[i][col], LaurentPoly::zero());
                for j in (col + 1..2 * n).chain(0..col) {
                    let t = pivot.mul(&rows[i][j]).sub(&f.mul(&rows[col][j]));
                    rows[i][j] = t
                        .try_exact_div(&prev)
                        .expect("Bareiss update divides by the previous pivot");
                }
            }
            prev = pivot;
        }
        let mut inv = Vec::with_capacity(n);
        for (i, row) in rows.into_iter().enumerate() {
            let d = row[i].clone();
            let mut out = Vec::with_capacity(n);
            for b in &row[n..] {
                out.push(
                    ParamScalar {
                        num: b.clone(),
                        den: d.clone(),
                        nvars: nv,
                    }
                    .reduce(),
                );
            }
            inv.push(out);
        }
        Ok(Some(inv))
    }

    /// Fraction-free reduction, for the same reason as `matrix_inverse`.
    /// Scaling a row by a nonzero scalar leaves the row space alone, and the
    /// reduced form depends only on the row space, so each row's denominators
    /// can be cleared up front; one-step Bareiss Gauss-Jordan then keeps every
    /// intermediate entry polynomial, with every division exact.
    fn rref(&self, rows: &mut Vec<Vec<Self::Elt>>) -> Result<Vec<(usize, usize)>> {
        let nrows = rows.len();
        let ncols = if nrows == 0 { 0 } else { rows[0].len() };
        let nv = self.vars.num_vars();
        let mut work: Vec<Vec<LaurentPoly>> = Vec::with_capacity(nrows);
        for row in rows.iter() {
            let mut dens: Vec<&LaurentPoly> = Vec::new();
            for e in row {
                if !e.num.is_zero() && !dens.iter().any(|d| **d == e.den) {
                    dens.push(&e.den);
                }
            }
            let mut di = LaurentPoly::one(nv);
            for d in &dens {
                di = di.mul(d);
            }
            let cleared = row
                .iter()
                .map(|e| {
                    if e.num.is_zero() {
                        LaurentPoly::zero()
                    } else {
                        let cof = di
                            .try_exact_div(&e.den)
                            .expect("row denominator product is divisible by each factor");
                        e.num.mul(&cof)
                    }
                })
                .collect();
            work.push(cleared);
        }
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut prev = LaurentPoly::one(nv);
        let mut r = 0usize;
        for col in 0..ncols {
            if r == nrows {
                break;
            }
            let Some(k) = (r..nrows).find(|&k| !work[k][col].is_zero()) else {
                continue;
            };
            work.swap(r, k);
            let pivot = work[r][col].clone();
            for i in 0..nrows {
                if i == r {
                    continue;
                }
                let f = std::mem::replace(&mut work[i][col], LaurentPoly::zero());
                // Every row, the already-processed ones included, is updated
                // in every column: the pivot columns stay zero, the skipped
                // columns pick up the Jordan combination, and each earlier
                // pivot entry is rescaled to the current pivot, which is what
                // makes the one-step division exact at the next step.
                for j in (col + 1..ncols).chain(0..col) {
                    let t = if f.is_zero() {
                        if work[i][j].is_zero() {
                            continue;
                        }
                        pivot.mul(&work[i][j])
                    } else {
                        pivot.mul(&work[i][j]).sub(&f.mul(&work[r][j]))
                    };
                    work[i][j] = t
                        .try_exact_div(&prev)
                        .expect("Bareiss update divides by the previous pivot");
                }
            }
            prev = pivot;
            pivots.push((col, r));
            r += 1;
        }
        for (idx, row_out) in rows.iter_mut().enumerate() {
            if idx < pivots.len() {
                // Dividing the row by its own pivot entry restores the
                // leading one; the quotients are the reduced coefficients.
                let pc = pivots[idx].0;
                let den = work[idx][pc].clone();
                for (j, slot) in row_out.iter_mut().enumerate() {
                    *slot = if j == pc {
                        self.one()
                    } else if work[idx][j].is_zero() {
                        self.zero()
                    } else {
                        ParamScalar {
                            num: work[idx][j].clone(),
                            den: den.clone(),
                            nvars: nv,
                        }
                        .reduce()
                    };
                }
            } else {
                debug_assert!(
                    work[idx].iter().all(|e| e.is_zero()),
                    "rows beyond the pivot block must be eliminated"
                );
                for slot in row_out.iter_mut() {
                    *slot = self.zero();
                }
            }
        }
        Ok(pivots)
    }
}

/// Modular backend: all arithmetic at one evaluation point mod a prime.
#[derive(Clone)]
pub struct ModBackend {
    pub point: ModPoint,
}

impl ModBackend {
    pub fn new(point: ModPoint) -> Self {
        ModBackend { point }
    }
}

impl CoeffBackend for ModBackend {
    type Elt = u64;

    fn zero(&self) -> Self::Elt {
        0
    }
    fn one(&self) -> Self::Elt {
        1
    }
    fn from_int(&self, k: i64) -> Self::Elt {
        k.rem_euclid(self.point.p as i64) as u64
    }
    fn from_param(&self, s: &ParamScalar) -> Result<Self::Elt> {
        self.point.eval_scalar(s)
    }
    fn add(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt {
        (a + b) % self.point.p
    }
    fn sub(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt {
        (a + self.point.p - b) % self.point.p
    }
    fn mul(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt {
        mulmod(*a, *b, self.point.p)
    }
    fn neg(&self, a: &Self::Elt) -> Self::Elt {
        if *a == 0 {
            0
        } else {
            self.point.p - a
        }
    }
    fn div(&self, a: &Self::Elt, b: &Self::Elt) -> Result<Self::Elt> {
        if *b == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(mulmod(*a, invmod(*b, self.point.p), self.point.p))
    }
    fn pow(&self, a: &Self::Elt, k: i64) -> Result<Self::Elt> {
        let base = if k < 0 {
            if *a == 0 {
                return Err(Error::DivisionByZero);
            }
            invmod(*a, self.point.p)
        } else {
            *a
        };
        Ok(crate::coeff::modular::powmod(
            base,
            k.unsigned_abs(),
            self.point.p,
        ))
    }
    fn is_zero(&self, a: &Self::Elt) -> bool {
        *a == 0
    }
    fn fast_nonzero_hint(&self, a: &Self::Elt) -> Option<bool> {
        Some(*a != 0)
    }
    fn render(&self, a: &Self::Elt) -> String {
        a.to_string()
    }
    fn name(&self) -> &'static str {
        "modular"
    }
    fn parse_elt(&self, s: &str) -> Option<Self::Elt> {
        s.parse::<u64>().ok().filter(|v| *v < self.point.p)
    }
    fn cache_tag(&self) -> String {
        format!("modular p={} roots={:?}", self.point.p, self.point.root_res)
    }
}
