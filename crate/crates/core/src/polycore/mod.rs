//! Exact polynomial kernel.
//!
//! Everything symbolic in this crate is a [`MultiPoly`]: a sparse polynomial
//! over the rationals in named variables. Floating point enters only through
//! [`MultiPoly::evaluate`] and [`uni_roots`].

mod gcd;
mod json;
mod modular;
mod monomial;
mod parse;
mod poly;
mod resultant;
mod roots;

use thiserror::Error;

pub(crate) use poly::rational_to_f64;
pub use gcd::{content_in, content_primitive, gcd, square_free, square_free_decomposition, square_free_keep_content};
pub use json::PolyJson;
pub use monomial::{compare_vars, Monomial, CANONICAL_VARS};
pub use poly::MultiPoly;
pub use modular::{gcd_modular, resultant_modular};
pub use resultant::{determinant, resultant_bareiss, resultant_uni, sylvester_matrix};
pub use roots::{complex_roots, uni_roots, RootOptions};

/// Arbitrary-precision rational, always stored reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Double-precision complex value used for all numeric evaluation.
pub type ComplexVal = num_complex::Complex64;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PolyError {
    #[error("negative exponent {0} in polynomial power")]
    NegativePower(i64),
    #[error("variable `{var}` has degree 0 in a resultant argument")]
    DegreeZero { var: String },
    #[error("no value assigned to variable `{0}`")]
    MissingVariable(String),
    #[error("expected a univariate polynomial, found variables {0:?}")]
    NotUnivariate(Vec<String>),
    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence {
        iterations: usize,
        partial: Vec<ComplexVal>,
    },
    #[error("inexact polynomial division")]
    InexactDivision,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("malformed polynomial json: {0}")]
    Json(String),
}
