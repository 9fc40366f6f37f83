//! Symbolic engine for multi-parameter quantum groups with a doubled torus,
//! over the exact field of rational functions in q and the off-diagonal
//! parameters q_ij.
//!
//! The crate computes normal forms and Hopf operations from the defining
//! presentation, the Rosso pairing and its Gram data, simple weight modules
//! with explicit matrix actions, central elements attached to dominant
//! weights, and a Harish-Chandra homomorphism that identifies their images.

pub mod algebra;
pub mod cache;
pub mod cartan;
pub mod center;
pub mod coeff;
pub mod error;
pub mod pairing;
pub mod presentation;
pub mod weightmod;

pub use algebra::Algebra;
pub use error::{Error, Result};
