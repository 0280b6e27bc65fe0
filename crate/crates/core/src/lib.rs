//! Exact computations in quantum Borcherds-Bozec superalgebras at truncated
//! weight depth.
//!
//! The positive half is built as the free superalgebra on the generators
//! `a[i,l]` modulo the radical of the canonical bilinear form. On top of it the
//! crate provides the full algebra in triangular normal form, Verma modules
//! and their irreducible quotients, the quasi-R-matrix, the Casimir operator,
//! and the character formula together with a brute-force check.

pub mod cartan;
pub mod characters;
pub mod error;
pub mod freesuper;
pub mod linalg;
pub mod modules;
pub mod pairing;
pub mod rtheta;
pub mod scalar;
pub mod ualgebra;

pub use error::{Error, Result};
pub use scalar::{LaurentPoly, QScalar};
