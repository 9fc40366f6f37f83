//! Error type shared across the engine.

use thiserror::Error;

/// Unified error for algebraic, numeric, and I/O failures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("denominator vanishes at the evaluation point; retry with a fresh point")]
    RetryPoint,

    #[error("quantum binomial requires 0 <= k <= m, got m={m}, k={k}")]
    BinomialRange { m: i64, k: i64 },

    #[error("unsupported or non-finite Cartan type: {0}")]
    BadCartanType(String),

    #[error("Weyl group order {order} exceeds the desk-scale limit {limit}")]
    WeylTooLarge { order: usize, limit: usize },

    #[error("height bound exceeded: the computation needs graded components up to height {needed}, configured bound is {bound}")]
    HeightOverflow { needed: usize, bound: usize },

    #[error("graded basis at {mu} has {found} words after reduction, expected {expected} (Kostant count)")]
    DimensionMismatch {
        mu: String,
        found: usize,
        expected: usize,
    },

    #[error("Gram matrix at {mu} is singular")]
    SingularGram { mu: String },

    #[error("input is not homogeneous or not in the expected half: {0}")]
    NonHomogeneous(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("weight is not dominant: {0}")]
    NotDominant(String),

    #[error("weight is not in the root lattice: {0}")]
    NotInRootLattice(String),

    #[error("module dimension {dim} exceeds the cap {cap}")]
    DimCapExceeded { dim: usize, cap: usize },

    #[error("element has nonzero degree; operation requires degree 0")]
    NonZeroDegree,

    #[error("element is not supported on the flat torus monomials")]
    NotFlat,

    #[error("centrality check failed: commutator with {generator} is nonzero: {witness}")]
    NotCentral { generator: String, witness: String },

    #[error("central element does not act as a scalar on the module (positions {0})")]
    NonScalarAction(String),

    #[error("trace realization mismatch at monomial {monomial}: form value {form}, trace value {trace}")]
    TraceMismatch {
        monomial: String,
        form: String,
        trace: String,
    },

    #[error("surjectivity decomposition left a nonzero residual: {0}")]
    NonZeroResidual(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("serialization error: {0}")]
    Serde(String),

    #[error("fractional power {num}/{den} does not keep exponents on the lattice")]
    FractionalPower { num: i64, den: i64 },

    #[error("cache I/O: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
