//! Univariate polynomials and rational functions over a tower context.
//!
//! Pole locations are always supplied by the caller; nothing here factors
//! polynomials.

mod linsolve;
mod partial;
mod poly;
mod ratfunc;

pub use linsolve::{solve_linear, LinearSolution};
pub use partial::{partial_fractions, root_product, PartialFraction, PartialFractionTerm};
pub use poly::{poly_gcd, Poly};
pub use ratfunc::{differentiate, evaluate, RatFunc};

use crate::exactfield::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CalcError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("polynomial division left a remainder")]
    NotDivisible,
    #[error("supplied roots do not factor the denominator")]
    BadFactorization,
    #[error("evaluation at a pole")]
    PoleEvaluation,
    #[error("result depends on the square-root branch (zero divisor encountered)")]
    ZeroDivisor,
    #[error(transparent)]
    Field(FieldError),
}
