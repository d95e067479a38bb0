//! Exact polynomial algebra for strength, collective strength and regular
//! sequences of homogeneous forms.
//!
//! The crate is organised bottom-up:
//!
//! * [`polycore`]: coefficient fields (ℚ and `F_p`), sparse polynomials,
//!   multigradings, parsing and multivariate gcd.
//! * [`groebner`]: Buchberger's algorithm and the ideal queries built on it
//!   (normal form, dimension, intersection, quotient, regular sequences).
//! * [`quadforms`]: quadratic forms as Gram matrices, rank, minrank of pencils,
//!   Jacobian minor ideals of diagonal pairs.
//! * [`determinantal`]: generic matrices and their maximal minors.
//! * [`strengthcert`]: column-graded decompositions, exclusion matrices,
//!   brute-force strength and the assembled certificates.

pub mod determinantal;
pub mod error;
pub mod groebner;
pub mod polycore;
pub mod quadforms;
pub mod sampling;
pub mod strengthcert;

pub use error::{AlgebraError, Result};
pub use polycore::{parse_poly, Coeff, Field, MultiPoly, Ring};

/// Crate version recorded in certificates.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
