//! Exact coefficient rings, Laurent polynomials, matrices and determinants.

mod coeff;
mod gcd;
mod matrix;
mod parse;
mod poly;
mod quat;

use thiserror::Error;

pub use coeff::{Coeff, GaussInt, GaussRational, GcdCoeff, RingTag};
pub use gcd::laurent_gcd;
pub use matrix::{bareiss_det, cofactor_det, complex_embedding, quat_to_complex, study_det, PolyMatrix, RingMatrix};
pub use poly::{LaurentPoly, Monomial, UnitGroup, Var, Vars};
pub use quat::{t_vars, QuatLaurent};

pub type Int = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;

/// Laurent polynomial with integer coefficients.
pub type Poly = LaurentPoly<Int>;
/// Laurent polynomial with Gaussian-integer coefficients.
pub type GaussPoly = LaurentPoly<GaussInt>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("variable sets differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("exponent denominator {0} is not one of 1, 2, 4")]
    BadDenominator(i64),
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("incompatible shapes ({rows} rows vs {cols} columns)")]
    Shape { rows: usize, cols: usize },
    #[error("rows have different lengths")]
    Ragged,
    #[error("empty input")]
    Empty,
    #[error("division was not exact")]
    InexactDivision,
    #[error("expected a univariate polynomial, found {0} variables")]
    NotUnivariate(usize),
    #[error("cannot parse `{input}`: {message}")]
    Parse { input: String, message: String },
}

/// The variable set `{A}` used by bracket-type invariants.
pub fn a_vars() -> Vars {
    thread_local! {
        static A: Vars = Vars::new(&["A"]);
    }
    A.with(|v| v.clone())
}

/// Loop value `d = -A^2 - A^-2`.
pub fn loop_value() -> Poly {
    let v = a_vars();
    &(-&Poly::var_pow(&v, "A", 2)) - &Poly::var_pow(&v, "A", -2)
}

/// `A^e`.
pub fn a_pow(e: i64) -> Poly {
    Poly::var_pow(&a_vars(), "A", e)
}
