//! Case I for Fuchsian equations: solutions y = P·Π(z − c)^ρ_c with
//! rational exponents, and the symmetric-square test for a rational
//! product y₁y₂.

use num_bigint::BigInt;

use crate::exactfield::{int, is_integer, lcm_denominators, Rational, TowerScalar};
use crate::linode::{riccati_residual, symmetric_power_residual, Location, NormalFormODE, SingularitySpectrum};
use crate::ratcalc::{CalcError, Poly, RatFunc};

use super::linear::solve_images;

#[derive(Clone, Debug)]
pub struct RiccatiSolution {
    /// Σ ρ_c/(z − c) + P′/P.
    pub omega: RatFunc,
    /// Chosen exponent at each point; at infinity y ~ z^(−ρ).
    pub exponent_choices: Vec<(Location, Rational)>,
    pub p: Poly,
}

impl RiccatiSolution {
    /// Smallest m with y^m ∈ C(z).
    pub fn cyclic_order(&self) -> BigInt {
        lcm_denominators(self.exponent_choices.iter().filter(|(l, _)| !l.is_infinity()).map(|(_, r)| r))
    }
}

#[derive(Clone, Debug)]
pub struct CaseOneResult {
    /// Distinct ω found, at most two. Any two distinct ω give independent
    /// solutions, so two entries form a basis and the search stops there.
    pub solutions: Vec<RiccatiSolution>,
    /// Points whose exponents are not rational; every branch through them
    /// was pruned.
    pub pruned: Vec<Location>,
    /// Exponent combinations whose linear system was branch dependent.
    pub undecided: usize,
}

impl CaseOneResult {
    /// True when every rational-exponent branch was decided and none was
    /// pruned, so `solutions` lists all case-I solutions up to scaling.
    pub fn complete(&self) -> bool {
        self.pruned.is_empty() && self.undecided == 0
    }
}

fn exponent_menu(pair: &Option<(Rational, Rational)>) -> Option<Vec<Rational>> {
    pair.as_ref().map(|(a, b)| if a == b { vec![a.clone()] } else { vec![a.clone(), b.clone()] })
}

fn log_derivative_part(spectrum: &SingularitySpectrum, rho: &[Rational]) -> RatFunc {
    let ctx = spectrum.context();
    let terms: Vec<(TowerScalar, usize, TowerScalar)> = spectrum
        .finite()
        .zip(rho)
        .map(|(pt, r)| (pt.location.finite().unwrap().clone(), 1, TowerScalar::from_rational(ctx, r.clone())))
        .collect();
    RatFunc::from_pole_terms(ctx, &terms, None)
}

/// P″ + 2ω₀P′ + shift·P with shift = ω₀′ + ω₀² − r.
fn reduced_operator(w0: &RatFunc, shift: &RatFunc, p: &Poly) -> RatFunc {
    let ctx = w0.context();
    let two = RatFunc::constant(TowerScalar::from_int(ctx, 2));
    let p1 = RatFunc::from_poly(p.derivative());
    let p2 = RatFunc::from_poly(p.derivative().derivative());
    &(&p2 + &(&two * &(w0 * &p1))) + &(shift * &RatFunc::from_poly(p.clone()))
}

/// Enumerates exponent choices with rational exponents and solves for P.
pub fn case1_search(r: &NormalFormODE, spectrum: &SingularitySpectrum) -> CaseOneResult {
    let ctx = spectrum.context().clone();
    let mut pruned = Vec::new();
    let mut menus = Vec::new();
    for pt in spectrum.finite() {
        match exponent_menu(&pt.exponents.rational) {
            Some(m) => menus.push(m),
            None => pruned.push(pt.location.clone()),
        }
    }
    let inf_menu = match spectrum.infinity() {
        Some(pt) => match exponent_menu(&pt.exponents.rational) {
            Some(m) => m,
            None => {
                pruned.push(Location::Infinity);
                Vec::new()
            }
        },
        None => vec![int(0), int(-1)],
    };
    let mut result = CaseOneResult { solutions: Vec::new(), pruned, undecided: 0 };
    if !result.pruned.is_empty() {
        return result;
    }

    // Branches in order of increasing deg P, so the simplest basis comes first.
    let mut branches: Vec<(Vec<Rational>, Rational, usize)> = Vec::new();
    let mut idx = vec![0usize; menus.len()];
    'enumerate: loop {
        let rho: Vec<Rational> = idx.iter().zip(&menus).map(|(&i, m)| m[i].clone()).collect();
        let total: Rational = rho.iter().fold(int(0), |a, b| a + b);
        for rho_inf in &inf_menu {
            let n = -rho_inf - &total;
            if is_integer(&n) && n >= int(0) {
                branches.push((rho.clone(), rho_inf.clone(), n.to_integer().try_into().expect("small degree")));
            }
        }
        let mut k = menus.len();
        loop {
            if k == 0 {
                break 'enumerate;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < menus[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
    branches.sort_by_key(|b| b.2);

    for (rho, rho_inf, n) in branches {
        if result.solutions.len() == 2 {
            break;
        }
        let w0 = log_derivative_part(spectrum, &rho);
        let shift = &(&w0.derivative() + &(&w0 * &w0)) - &r.r;
        let one = TowerScalar::one(&ctx);
        let lead = reduced_operator(&w0, &shift, &Poly::monomial(one.clone(), n));
        let images: Vec<RatFunc> =
            (0..n).map(|k| reduced_operator(&w0, &shift, &Poly::monomial(one.clone(), k))).collect();
        let polys: Vec<Poly> = if n == 0 {
            if lead.is_zero() { vec![Poly::one(&ctx)] } else { Vec::new() }
        } else {
            match solve_images(&ctx, Some(&lead), &images) {
                Ok(Some(sol)) => {
                    let mut base = sol.particular.clone();
                    base.push(one.clone());
                    let mut out = vec![Poly::new(&ctx, base.clone())];
                    for kv in &sol.kernel {
                        let mut c: Vec<TowerScalar> = base.iter().zip(kv).map(|(a, b)| a + b).collect();
                        c.push(one.clone());
                        out.push(Poly::new(&ctx, c));
                    }
                    out
                }
                Ok(None) => Vec::new(),
                Err(CalcError::ZeroDivisor) => {
                    result.undecided += 1;
                    Vec::new()
                }
                Err(e) => panic!("case-I linear system: {e}"),
            }
        };
        for p in polys {
            if result.solutions.len() == 2 {
                break;
            }
            let omega = match RatFunc::from_poly(p.clone()).recip() {
                Ok(inv) => &w0 + &(&RatFunc::from_poly(p.derivative()) * &inv),
                Err(_) => continue,
            };
            assert!(riccati_residual(r, &omega).is_zero(), "case-I Riccati residual");
            if result.solutions.iter().any(|s| s.omega == omega) {
                continue;
            }
            let mut exponent_choices: Vec<(Location, Rational)> =
                spectrum.finite().zip(&rho).map(|(pt, r)| (pt.location.clone(), r.clone())).collect();
            exponent_choices.push((Location::Infinity, rho_inf.clone()));
            result.solutions.push(RiccatiSolution { omega, exponent_choices, p });
        }
    }
    result
}

/// Outcome of the search for a rational v with v‴ = 4rv′ + 2r′v.
#[derive(Clone, Debug)]
pub struct ProductTest {
    /// Lowest admissible exponent of v at each finite point.
    pub floors: Vec<(Location, i64)>,
    /// Largest admissible growth exponent of v at infinity.
    pub growth_bound: i64,
    /// deg P bound for v = P·Π(z − c)^floor; None when negative.
    pub max_p_degree: Option<usize>,
    pub v: Option<RatFunc>,
    /// False when the linear system was branch dependent.
    pub decided: bool,
}

fn integer_shifts(delta: Option<&Rational>, base: i64) -> Vec<i64> {
    let mut out = vec![base];
    if let Some(d) = delta {
        for s in [int(base) + d, int(base) - d] {
            if is_integer(&s) {
                out.push(s.to_integer().try_into().expect("small exponent"));
            }
        }
    }
    out
}

/// Two independent case-I solutions have a rational product v = y₁y₂;
/// this searches for one with exponents drawn from {2ρ₁, ρ₁ + ρ₂, 2ρ₂}.
pub fn product_test(r: &NormalFormODE, spectrum: &SingularitySpectrum) -> ProductTest {
    let ctx = spectrum.context().clone();
    let floors: Vec<(Location, i64)> = spectrum
        .finite()
        .map(|pt| (pt.location.clone(), *integer_shifts(pt.delta_rational.as_ref(), 1).iter().min().unwrap()))
        .collect();
    // At infinity y ~ z^s with s = −ρ, and s₁ + s₂ = 1.
    let growth_bound = match spectrum.infinity() {
        Some(pt) => *integer_shifts(pt.delta_rational.as_ref(), 1).iter().max().unwrap(),
        None => 1,
    };
    let floor_sum: i64 = floors.iter().map(|(_, k)| k).sum();
    let bound = growth_bound - floor_sum;
    let mut out = ProductTest { floors, growth_bound, max_p_degree: None, v: None, decided: true };
    if bound < 0 {
        return out;
    }
    let deg = bound as usize;
    out.max_p_degree = Some(deg);
    let mut w_num = Poly::one(&ctx);
    let mut w_den = Poly::one(&ctx);
    for (loc, k) in &out.floors {
        let f = Poly::linear_root(loc.finite().unwrap()).pow(k.unsigned_abs() as u32);
        if *k >= 0 {
            w_num = &w_num * &f;
        } else {
            w_den = &w_den * &f;
        }
    }
    let weight = RatFunc::new(w_num, w_den).expect("nonzero weight");
    let one = TowerScalar::one(&ctx);
    let basis: Vec<RatFunc> = (0..=deg)
        .map(|k| &RatFunc::from_poly(Poly::monomial(one.clone(), k)) * &weight)
        .collect();
    let images: Vec<RatFunc> = basis.iter().map(|b| symmetric_power_residual(r, b)).collect();
    match solve_images(&ctx, None, &images) {
        Ok(Some(sol)) => {
            if let Some(kv) = sol.kernel.first() {
                let p = Poly::new(&ctx, kv.clone());
                let v = &RatFunc::from_poly(p) * &weight;
                assert!(symmetric_power_residual(r, &v).is_zero(), "symmetric-square residual");
                out.v = Some(v);
            }
        }
        Ok(None) => {}
        Err(CalcError::ZeroDivisor) => out.decided = false,
        Err(e) => panic!("symmetric-square linear system: {e}"),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{make_context, rat, GaussRational};
    use crate::linode::singularity_spectrum;
    use std::sync::Arc;

    fn ctx() -> Arc<crate::exactfield::TowerContext> {
        make_context(GaussRational::from_int(2), GaussRational::from_int(3)).unwrap()
    }

    fn pure_power(c: &Arc<crate::exactfield::TowerContext>, z0: i64) -> (NormalFormODE, SingularitySpectrum) {
        let zz = Poly::linear_root(&TowerScalar::from_int(c, z0));
        let r = NormalFormODE {
            r: RatFunc::new(Poly::constant(TowerScalar::from_rational(c, rat(3, 4))), &zz * &zz).unwrap(),
        };
        let spec = singularity_spectrum(&r, &[(TowerScalar::from_int(c, z0), 2)]).unwrap();
        (r, spec)
    }

    #[test]
    fn pure_power_has_two_solutions() {
        let c = ctx();
        let (r, spec) = pure_power(&c, 2);
        let res = case1_search(&r, &spec);
        assert!(res.complete());
        assert_eq!(res.solutions.len(), 2);
        let zz = Poly::linear_root(&TowerScalar::from_int(&c, 2));
        for q in [rat(3, 2), rat(-1, 2)] {
            let w = RatFunc::new(Poly::constant(TowerScalar::from_rational(&c, q)), zz.clone()).unwrap();
            assert!(res.solutions.iter().any(|s| s.omega == w));
        }
        assert!(res.solutions.iter().all(|s| s.cyclic_order() == BigInt::from(2)));
        let pt = product_test(&r, &spec);
        assert!(pt.decided);
        // Here every product y_i y_j is rational; any of them will do.
        let v = pt.v.expect("rational product");
        assert!(symmetric_power_residual(&r, &v).is_zero());
        assert!(symmetric_power_residual(&r, &RatFunc::from_poly(zz)).is_zero());
    }

    #[test]
    fn free_particle_kernel_gives_second_solution() {
        let c = ctx();
        let r = NormalFormODE { r: RatFunc::zero(&c) };
        let spec = singularity_spectrum(&r, &[]).unwrap();
        let res = case1_search(&r, &spec);
        assert!(res.complete());
        assert_eq!(res.solutions.len(), 2);
    }

    #[test]
    fn irrational_exponent_prunes() {
        let c = ctx();
        let z = Poly::z(&c);
        let r = NormalFormODE { r: RatFunc::new(Poly::one(&c), &z * &z).unwrap() };
        let spec = singularity_spectrum(&r, &[(TowerScalar::zero(&c), 2)]).unwrap();
        let res = case1_search(&r, &spec);
        assert!(!res.complete());
        assert!(res.solutions.is_empty());
        // y = z^((1±√5)/2): the product z is rational.
        let pt = product_test(&r, &spec);
        assert_eq!(pt.v, Some(RatFunc::z(&c)));
    }
}
