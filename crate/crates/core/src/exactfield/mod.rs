//! Exact scalars: big rationals, Gaussian rationals and the two-root tower
//! over Q(i) that carries κ and λ.

mod gauss;
mod rational;
mod tower;

pub use gauss::GaussRational;
pub use rational::{
    fmt_rational, int, is_integer, lcm_denominators, parse_rational, rat, rational_sqrt, to_f64,
    ParseRationalError, RatDisplay, Rational,
};
pub use tower::{make_context, Branch, FieldError, TowerContext, TowerScalar};
