//! Exact exterior-algebra engine for G-structures: invariant forms, differential
//! graded algebras on them, integral-element spaces, stability of forms and
//! Cartan's test on coordinate flags.
//!
//! All arithmetic is exact over Q(√2, √3, √5, √7).

pub mod cartan;
pub mod catalog;
pub mod dga;
pub mod error;
pub mod exterior;
pub mod linalg;
pub mod literal;
pub mod rational;
pub mod rep;
pub mod restriction;
pub mod scalar;
pub mod stability;

pub use error::{Error, Result};
pub use exterior::{Form, MultiIndex, Subspace};
pub use linalg::{AffineSpace, Matrix};
pub use rational::Rational;
pub use scalar::Scalar;
