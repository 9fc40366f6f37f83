//! Exact arithmetic in the parameter field Q(q, {t_ij}) with fractional
//! exponents on a (1/r)Z lattice, plus a modular-evaluation backend for fast
//! probabilistic identity testing.
//!
//! Variables: `q` (index 0) and one `t<i>_<j>` per pair i < j. The symbol
//! t_ij stands for the parameter q_ij; q_ji is t_ij^{-1} and q_ii is 1.
//! Exponents are stored as integers scaled by r, so the true exponent of a
//! stored value e is e/r.

pub mod backend;
pub mod modular;
pub mod parse;
pub mod poly;
pub mod scalar;

pub use backend::{CoeffBackend, ExactBackend, ModBackend};
pub use modular::ModPoint;
pub use poly::LaurentPoly;
pub use scalar::ParamScalar;

use serde::{Deserialize, Serialize};

/// Variable universe for a rank-n Cartan datum with exponent lattice (1/r)Z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarSet {
    /// Number of simple roots.
    pub rank: usize,
    /// Denominator scale: exponents live in (1/r)Z, stored multiplied by r.
    pub r: i64,
}

impl VarSet {
    pub fn new(rank: usize, r: i64) -> Self {
        assert!(rank >= 1 && r >= 1);
        VarSet { rank, r }
    }

    /// Total number of variables: q plus one t_ij per pair i < j.
    pub fn num_vars(&self) -> usize {
        1 + self.rank * (self.rank - 1) / 2
    }

    /// Index of the variable q.
    pub fn q_var(&self) -> usize {
        0
    }

    /// Index of t_ij for 0-based i < j.
    pub fn t_var(&self, i: usize, j: usize) -> usize {
        assert!(i < j && j < self.rank, "t-variable needs i < j < rank");
        // Pairs ordered (0,1), (0,2), ..., (0,n-1), (1,2), ...
        let before_row = i * (2 * self.rank - i - 1) / 2;
        1 + before_row + (j - i - 1)
    }

    /// Display name of a variable (1-based generator indices).
    pub fn var_name(&self, v: usize) -> String {
        if v == 0 {
            return "q".to_string();
        }
        let mut k = v - 1;
        for i in 0..self.rank {
            let row = self.rank - i - 1;
            if k < row {
                return format!("t{}_{}", i + 1, i + k + 2);
            }
            k -= row;
        }
        panic!("variable index {v} out of range");
    }

    /// Parse a variable name produced by `var_name`.
    pub fn var_index(&self, name: &str) -> Option<usize> {
        if name == "q" {
            return Some(0);
        }
        let rest = name.strip_prefix('t')?;
        let (a, b) = rest.split_once('_')?;
        let i: usize = a.parse().ok()?;
        let j: usize = b.parse().ok()?;
        if i >= 1 && i < j && j <= self.rank {
            Some(self.t_var(i - 1, j - 1))
        } else {
            None
        }
    }
}
