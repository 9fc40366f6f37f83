//! Presentation layer: words in the generators, graded components with their
//! Serre-reduced bases, normal-form elements f · (torus) · e, the product
//! (straightening), and the Hopf structure maps.
//!
//! Normal form: every element is a finite sum of monomials
//! `f_{w} · w'_eta w_phi · e_{v}` where w and v are basis words of their
//! graded components. The product straightens e-letters past f-letters with
//! the commutator relation and past torus generators with monomial scalars,
//! then rewrites both word sides through the graded bases.

mod basis;
mod hopf;
mod multiply;
mod render;
mod words;

pub use basis::{rref, GradedBasis};
pub use hopf::TensorElement;
pub use words::enumerate_words;

use std::collections::BTreeMap;

/// Which family of generators a word lives in: `Plus` = e-side, `Minus` = f-side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

/// A word in one family of generators; letters are 0-based generator indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Word {
    pub sign: Sign,
    pub letters: Vec<u8>,
}

impl Word {
    pub fn content(&self, rank: usize) -> Vec<i64> {
        let mut c = vec![0i64; rank];
        for &l in &self.letters {
            c[l as usize] += 1;
        }
        c
    }

    pub fn height(&self) -> usize {
        self.letters.len()
    }
}

/// A torus monomial w'_eta w_phi with integer exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TorusMonomial {
    pub eta: Vec<i64>,
    pub phi: Vec<i64>,
}

impl TorusMonomial {
    pub fn identity(rank: usize) -> Self {
        TorusMonomial {
            eta: vec![0; rank],
            phi: vec![0; rank],
        }
    }

    pub fn inverse(&self) -> Self {
        TorusMonomial {
            eta: self.eta.iter().map(|x| -x).collect(),
            phi: self.phi.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        TorusMonomial {
            eta: self.eta.iter().zip(&other.eta).map(|(a, b)| a + b).collect(),
            phi: self.phi.iter().zip(&other.phi).map(|(a, b)| a + b).collect(),
        }
    }
}

/// One normal-form monomial: f-word, torus exponents, e-word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct NFMono {
    pub f: Vec<u8>,
    pub eta: Vec<i64>,
    pub phi: Vec<i64>,
    pub e: Vec<u8>,
}

impl NFMono {
    pub fn identity(rank: usize) -> Self {
        NFMono {
            f: Vec::new(),
            eta: vec![0; rank],
            phi: vec![0; rank],
            e: Vec::new(),
        }
    }

    /// Q-degree: content(e) - content(f).
    pub fn degree(&self, rank: usize) -> Vec<i64> {
        let mut d = vec![0i64; rank];
        for &l in &self.e {
            d[l as usize] += 1;
        }
        for &l in &self.f {
            d[l as usize] -= 1;
        }
        d
    }

    pub fn torus(&self) -> TorusMonomial {
        TorusMonomial {
            eta: self.eta.clone(),
            phi: self.phi.clone(),
        }
    }
}

/// A normal-form element: finite sum of monomials with backend coefficients.
/// The zero element has an empty term map; stored coefficients are nonzero.
#[derive(Clone, Debug)]
pub struct NFElement<T> {
    pub terms: BTreeMap<NFMono, T>,
}

impl<T: Clone> NFElement<T> {
    pub fn zero() -> Self {
        NFElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn single(mono: NFMono, coeff: T) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(mono, coeff);
        NFElement { terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NFMono, &T)> {
        self.terms.iter()
    }
}
