//! Coefficient domains, sparse polynomials, gradings, text I/O and gcd.

mod coeff;
mod gcd;
mod grading;
pub mod linalg;
mod monomial;
mod parse;
mod poly;

pub use coeff::{Coeff, Field, DEFAULT_PRIME};
pub use gcd::{content, gcd, primitive_part, pseudo_rem};
pub use grading::{GradingSpec, Homogeneity, MultiDegree};
pub use linalg::Matrix;
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{format_poly, parse_poly};
pub use poly::{MultiPoly, Ring, VarLayout};
