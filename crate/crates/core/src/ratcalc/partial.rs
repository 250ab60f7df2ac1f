use std::sync::Arc;

use crate::exactfield::{TowerContext, TowerScalar};

use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::CalcError;

#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractionTerm {
    pub pole: TowerScalar,
    pub order: usize,
    pub coefficient: TowerScalar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartialFraction {
    pub terms: Vec<PartialFractionTerm>,
    pub polynomial_part: Poly,
}

impl PartialFraction {
    pub fn context(&self) -> &Arc<TowerContext> {
        self.polynomial_part.context()
    }

    /// Coefficient of (z − pole)^(−order), zero when absent.
    pub fn coefficient(&self, pole: &TowerScalar, order: usize) -> TowerScalar {
        self.terms
            .iter()
            .find(|t| &t.pole == pole && t.order == order)
            .map(|t| t.coefficient.clone())
            .unwrap_or_else(|| TowerScalar::zero(self.context()))
    }

    pub fn reconstruct(&self) -> RatFunc {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|t| (t.pole.clone(), t.order, t.coefficient.clone()))
            .collect();
        RatFunc::from_pole_terms(self.context(), &terms, Some(&self.polynomial_part))
    }
}

/// Product Π (z − c)^m over the supplied roots.
pub fn root_product(ctx: &Arc<TowerContext>, roots: &[(TowerScalar, usize)]) -> Poly {
    roots
        .iter()
        .fold(Poly::one(ctx), |acc, (c, m)| &acc * &Poly::linear_root(c).pow(*m as u32))
}

/// Partial fractions with supplied poles, by Taylor expansion at each pole.
///
/// For a pole c of multiplicity m, write den = (z − c)^m D_c. The principal
/// part at c comes from the first m Taylor coefficients of num/D_c at c,
/// computed by power-series division after shifting both polynomials to c.
/// Only D_c(c) is inverted.
pub fn partial_fractions(f: &RatFunc, roots: &[(TowerScalar, usize)]) -> Result<PartialFraction, CalcError> {
    let ctx = f.context().clone();
    let roots: Vec<_> = roots.iter().filter(|(_, m)| *m > 0).cloned().collect();
    if root_product(&ctx, &roots) != *f.den() {
        return Err(CalcError::BadFactorization);
    }
    let (polynomial_part, _) = f.num().div_rem(f.den())?;
    let mut terms = Vec::new();
    for (c, m) in &roots {
        let lin = Poly::linear_root(c).pow(*m as u32);
        let d_c = f.den().exact_div(&lin)?;
        let n_shift = f.num().taylor_shift(c);
        let d_shift = d_c.taylor_shift(c);
        let d0_inv = d_shift.coeff(0).inv().map_err(|_| CalcError::BadFactorization)?;
        let mut g: Vec<TowerScalar> = Vec::with_capacity(*m);
        for j in 0..*m {
            let mut acc = n_shift.coeff(j);
            for (i, gi) in g.iter().enumerate() {
                acc = &acc - &(&d_shift.coeff(j - i) * gi);
            }
            g.push(&acc * &d0_inv);
        }
        for (j, coefficient) in g.into_iter().enumerate() {
            if !coefficient.is_zero() {
                terms.push(PartialFractionTerm { pole: c.clone(), order: m - j, coefficient });
            }
        }
    }
    let pf = PartialFraction { terms, polynomial_part };
    debug_assert!(pf.reconstruct() == *f);
    Ok(pf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{int, make_context, rat, GaussRational};

    #[test]
    fn two_simple_poles() {
        let c = make_context(GaussRational::from_int(-1), GaussRational::from_int(-3)).unwrap();
        let one = TowerScalar::one(&c);
        let den = Poly::from_rationals(&c, &[int(-1), int(0), int(1)]);
        let f = RatFunc::new(Poly::one(&c), den).unwrap();
        let pf = partial_fractions(&f, &[(one.clone(), 1), (-&one, 1)]).unwrap();
        assert_eq!(pf.coefficient(&one, 1), TowerScalar::from_rational(&c, rat(1, 2)));
        assert_eq!(pf.coefficient(&-&one, 1), TowerScalar::from_rational(&c, rat(-1, 2)));
        assert!(pf.polynomial_part.is_zero());
        assert_eq!(pf.reconstruct(), f);
    }

    #[test]
    fn double_pole_and_polynomial_part() {
        let c = make_context(GaussRational::imag(rat(1, 2)), GaussRational::imag(rat(-1, 2))).unwrap();
        let z0 = TowerScalar::from_rational(&c, rat(1, 4));
        let k = TowerScalar::kappa(&c);
        let f = RatFunc::from_pole_terms(
            &c,
            &[
                (z0.clone(), 2, TowerScalar::from_rational(&c, rat(3, 4))),
                (k.clone(), 2, TowerScalar::i(&c)),
                (k.clone(), 1, TowerScalar::lambda(&c)),
            ],
            Some(&Poly::from_rationals(&c, &[int(1), int(2)])),
        );
        let pf = partial_fractions(&f, &[(z0.clone(), 2), (k.clone(), 2)]).unwrap();
        assert_eq!(pf.coefficient(&z0, 2), TowerScalar::from_rational(&c, rat(3, 4)));
        assert!(pf.coefficient(&z0, 1).is_zero());
        assert_eq!(pf.coefficient(&k, 2), TowerScalar::i(&c));
        assert_eq!(pf.coefficient(&k, 1), TowerScalar::lambda(&c));
        assert_eq!(pf.polynomial_part, Poly::from_rationals(&c, &[int(1), int(2)]));
        assert_eq!(pf.reconstruct(), f);
    }

    #[test]
    fn wrong_roots_rejected() {
        let c = make_context(GaussRational::from_int(-1), GaussRational::from_int(-3)).unwrap();
        let f = RatFunc::from_pole_terms(&c, &[(TowerScalar::one(&c), 2, TowerScalar::one(&c))], None);
        assert_eq!(partial_fractions(&f, &[(TowerScalar::one(&c), 1)]), Err(CalcError::BadFactorization));
    }
}
