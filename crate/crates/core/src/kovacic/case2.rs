//! Steps 1 to 3 of the case-II search.

use std::sync::Arc;

use crate::exactfield::{int, is_integer, rat, Rational, TowerContext, TowerScalar};
use crate::linode::{Location, NormalFormODE, SingularitySpectrum};
use crate::ratcalc::{CalcError, Poly, RatFunc};

use super::linear::solve_images;

/// One choice of e per spectrum point, aligned with `spectrum.points`.
#[derive(Clone, Debug, PartialEq)]
pub struct ECandidate {
    pub locations: Vec<Location>,
    pub e: Vec<i64>,
    pub d: Rational,
}

impl ECandidate {
    pub fn degree(&self) -> Option<usize> {
        (is_integer(&self.d) && self.d >= int(0)).then(|| self.d.to_integer().try_into().unwrap())
    }
}

#[derive(Clone, Debug)]
pub struct CaseTwoSolution {
    pub candidate: ECandidate,
    pub theta: RatFunc,
    pub p: Poly,
    /// Θ + P′/P.
    pub psi: RatFunc,
    /// ω² + b ω + c = 0 with b = −ψ and c = ½ψ′ + ½ψ² − r.
    pub quad_b: RatFunc,
    pub quad_c: RatFunc,
}

fn doubled_shifts(point_delta: Option<&Rational>) -> Vec<i64> {
    let mut out = vec![2];
    if let Some(d) = point_delta {
        for s in [int(2) + int(2) * d, int(2) - int(2) * d] {
            if is_integer(&s) {
                let v: i64 = s.to_integer().try_into().expect("small exponent");
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Admissible e values at every point, sorted ascending.
pub fn e_sets(spectrum: &SingularitySpectrum) -> Vec<Vec<i64>> {
    spectrum
        .points
        .iter()
        .map(|p| {
            let mut set = match (p.location.is_infinity(), p.order) {
                (true, 0) | (true, 1) => vec![0, 2, 4],
                (false, 1) => vec![4],
                (_, 2) => doubled_shifts(p.delta_rational.as_ref()),
                (false, k) => vec![k as i64],
                (true, k) => vec![4 - k as i64],
            };
            set.sort_unstable();
            set
        })
        .collect()
}

/// Every combination with d = (e∞ − Σ e_c)/2 a nonnegative integer, in
/// lexicographic order of e.
pub fn candidates(spectrum: &SingularitySpectrum) -> Vec<ECandidate> {
    let sets = e_sets(spectrum);
    let locations: Vec<Location> = spectrum.points.iter().map(|p| p.location.clone()).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; sets.len()];
    if sets.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let e: Vec<i64> = idx.iter().zip(&sets).map(|(&i, s)| s[i]).collect();
        let mut twice_d = 0i64;
        for (loc, v) in locations.iter().zip(&e) {
            twice_d += if loc.is_infinity() { *v } else { -*v };
        }
        let d = rat(twice_d, 2);
        if is_integer(&d) && d >= int(0) {
            out.push(ECandidate { locations: locations.clone(), e, d });
        }
        let mut k = sets.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < sets[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Θ = ½ Σ e_c/(z − c) over the finite points.
pub fn theta(ctx: &Arc<TowerContext>, cand: &ECandidate) -> RatFunc {
    let terms: Vec<(TowerScalar, usize, TowerScalar)> = cand
        .locations
        .iter()
        .zip(&cand.e)
        .filter_map(|(loc, e)| {
            loc.finite()
                .map(|c| (c.clone(), 1, TowerScalar::from_rational(ctx, rat(*e, 2))))
        })
        .collect();
    RatFunc::from_pole_terms(ctx, &terms, None)
}

/// Θ″ + 3ΘΘ′ + Θ³ − 4rΘ − 2r′, the image of P = 1 under the step-3 operator.
pub fn xi(r: &NormalFormODE, th: &RatFunc) -> RatFunc {
    let ctx = th.context();
    let k = |n: i64| RatFunc::constant(TowerScalar::from_int(ctx, n));
    let t1 = th.derivative();
    let t2 = t1.derivative();
    let cube = &(th * th) * th;
    let a = &(&t2 + &(&k(3) * &(th * &t1))) + &cube;
    &(&a - &(&k(4) * &(&r.r * th))) - &(&k(2) * &r.r.derivative())
}

/// P‴ + 3ΘP″ + (3Θ² + 3Θ′ − 4r)P′ + ΞP.
pub(crate) fn step3_operator(r: &NormalFormODE, th: &RatFunc, xi_f: &RatFunc, p: &Poly) -> RatFunc {
    let ctx = th.context();
    let k = |n: i64| RatFunc::constant(TowerScalar::from_int(ctx, n));
    let p0 = RatFunc::from_poly(p.clone());
    let p1 = RatFunc::from_poly(p.derivative());
    let p2 = RatFunc::from_poly(p.derivative().derivative());
    let p3 = RatFunc::from_poly(p.derivative().derivative().derivative());
    let coef1 = &(&(&k(3) * &(th * th)) + &(&k(3) * &th.derivative())) - &(&k(4) * &r.r);
    let s = &(&p3 + &(&k(3) * &(th * &p2))) + &(&coef1 * &p1);
    &s + &(xi_f * &p0)
}

/// Looks for a monic P of degree d annihilated by the step-3 operator.
/// `Err(ZeroDivisor)` means the linear system is branch dependent.
pub fn search_p(r: &NormalFormODE, cand: &ECandidate) -> Result<Option<CaseTwoSolution>, CalcError> {
    let ctx = r.r.context().clone();
    let Some(d) = cand.degree() else { return Ok(None) };
    let th = theta(&ctx, cand);
    let xi_f = xi(r, &th);
    let one = TowerScalar::one(&ctx);
    let lead = step3_operator(r, &th, &xi_f, &Poly::monomial(one.clone(), d));
    let images: Vec<RatFunc> = (0..d)
        .map(|k| step3_operator(r, &th, &xi_f, &Poly::monomial(one.clone(), k)))
        .collect();
    let p = if d == 0 {
        if !lead.is_zero() {
            return Ok(None);
        }
        Poly::one(&ctx)
    } else {
        let Some(sol) = solve_images(&ctx, Some(&lead), &images)? else { return Ok(None) };
        let mut coeffs = sol.particular;
        coeffs.push(one);
        Poly::new(&ctx, coeffs)
    };
    assert!(step3_operator(r, &th, &xi_f, &p).is_zero(), "step-3 residual");
    let psi = &th + &(&RatFunc::from_poly(p.derivative()) * &RatFunc::from_poly(p.clone()).recip()?);
    let half = RatFunc::constant(TowerScalar::from_rational(&ctx, rat(1, 2)));
    let quad_c = &(&(&half * &psi.derivative()) + &(&half * &(&psi * &psi))) - &r.r;
    Ok(Some(CaseTwoSolution { candidate: cand.clone(), theta: th, p, quad_b: -&psi, psi, quad_c }))
}
