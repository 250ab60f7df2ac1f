//! Turning "find a polynomial P with L(P) = 0" into exact linear algebra.

use std::sync::Arc;

use crate::exactfield::{TowerContext, TowerScalar};
use crate::ratcalc::{poly_gcd, solve_linear, CalcError, LinearSolution, Poly, RatFunc};

/// Least common multiple of the denominators; falls back to a plain
/// product when a gcd is branch dependent.
pub(crate) fn common_denominator(ctx: &Arc<TowerContext>, fs: &[RatFunc]) -> Poly {
    fs.iter().fold(Poly::one(ctx), |acc, f| {
        let d = f.den();
        match poly_gcd(&acc, d) {
            Ok(g) => &acc * &d.exact_div(&g).expect("gcd divides"),
            Err(_) => &acc * d,
        }
    })
}

fn clear(f: &RatFunc, den: &Poly) -> Poly {
    f.num() * &den.exact_div(f.den()).expect("common denominator is a multiple")
}

/// Solves fixed + Σ x_k images_k = 0 coefficientwise after clearing
/// denominators.
pub(crate) fn solve_images(
    ctx: &Arc<TowerContext>,
    fixed: Option<&RatFunc>,
    images: &[RatFunc],
) -> Result<Option<LinearSolution>, CalcError> {
    let mut all: Vec<RatFunc> = images.to_vec();
    if let Some(f) = fixed {
        all.push(f.clone());
    }
    let den = common_denominator(ctx, &all);
    let cols: Vec<Poly> = images.iter().map(|f| clear(f, &den)).collect();
    let rhs_poly = fixed.map(|f| -&clear(f, &den)).unwrap_or_else(|| Poly::zero(ctx));
    let rows = cols
        .iter()
        .chain(std::iter::once(&rhs_poly))
        .filter_map(Poly::degree)
        .max()
        .map_or(0, |d| d + 1);
    let matrix: Vec<Vec<TowerScalar>> = (0..rows).map(|j| cols.iter().map(|c| c.coeff(j)).collect()).collect();
    let rhs: Vec<TowerScalar> = (0..rows).map(|j| rhs_poly.coeff(j)).collect();
    solve_linear(ctx, &matrix, &rhs, images.len())
}
