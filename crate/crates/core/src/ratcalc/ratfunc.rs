use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use crate::exactfield::{Branch, Rational, TowerContext, TowerScalar};

use super::poly::{poly_gcd, Poly};
use super::CalcError;

/// Ratio num/den with den monic.
///
/// The pair is reduced by the Euclidean gcd whenever that gcd is uniform
/// across square-root branches. When it is not (a zero divisor surfaces as
/// a leading coefficient), the fraction is kept unreduced; equality is by
/// cross-multiplication, so values are unaffected. `is_reduced` reports
/// which situation applies.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
    reduced: bool,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, CalcError> {
        if den.is_zero() {
            return Err(CalcError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        let ctx = den.context().clone();
        if num.is_zero() {
            return Self { num, den: Poly::one(&ctx), reduced: true };
        }
        if den.degree() == Some(0) {
            let inv = den.leading().unwrap().inv().expect("constant denominator must be invertible");
            return Self { num: num.scale(&inv), den: Poly::one(&ctx), reduced: true };
        }
        let (num, den, reduced) = match poly_gcd(&num, &den) {
            Ok(g) if g.degree() == Some(0) => (num, den, true),
            Ok(g) => (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"), true),
            Err(_) => (num, den, false),
        };
        let inv = den.leading().unwrap().inv().expect("denominator leading coefficient must be invertible");
        Self { num: num.scale(&inv), den: den.scale(&inv), reduced }
    }

    pub fn from_poly(p: Poly) -> Self {
        let ctx = p.context().clone();
        Self { num: p, den: Poly::one(&ctx), reduced: true }
    }

    pub fn constant(c: TowerScalar) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero(ctx: &Arc<TowerContext>) -> Self {
        Self::from_poly(Poly::zero(ctx))
    }

    pub fn one(ctx: &Arc<TowerContext>) -> Self {
        Self::from_poly(Poly::one(ctx))
    }

    pub fn z(ctx: &Arc<TowerContext>) -> Self {
        Self::from_poly(Poly::z(ctx))
    }

    pub fn from_rational(ctx: &Arc<TowerContext>, q: Rational) -> Self {
        Self::constant(TowerScalar::from_rational(ctx, q))
    }

    /// Σ coeff/(z − pole)^order built over the common denominator
    /// Π (z − pole)^max_order, plus an optional polynomial part.
    ///
    /// When each pole's top-order coefficient is invertible and the poles
    /// are pairwise separated by invertible differences, the result is
    /// already coprime and no gcd is needed.
    pub fn from_pole_terms(
        ctx: &Arc<TowerContext>,
        terms: &[(TowerScalar, usize, TowerScalar)],
        polynomial_part: Option<&Poly>,
    ) -> Self {
        let mut poles: Vec<(TowerScalar, usize)> = Vec::new();
        for (c, k, coeff) in terms {
            if coeff.is_zero() || *k == 0 {
                continue;
            }
            match poles.iter_mut().find(|(p, _)| p == c) {
                Some((_, m)) => *m = (*m).max(*k),
                None => poles.push((c.clone(), *k)),
            }
        }
        let den = poles
            .iter()
            .fold(Poly::one(ctx), |acc, (c, m)| &acc * &Poly::linear_root(c).pow(*m as u32));
        let mut num = match polynomial_part {
            Some(p) => p * &den,
            None => Poly::zero(ctx),
        };
        for (c, k, coeff) in terms {
            if coeff.is_zero() {
                continue;
            }
            if *k == 0 {
                num = &num + &den.scale(coeff);
                continue;
            }
            let m = poles.iter().find(|(p, _)| p == c).unwrap().1;
            let cofactor = poles.iter().fold(Poly::one(ctx), |acc, (p, mp)| {
                let e = if p == c { mp - k } else { *mp };
                &acc * &Poly::linear_root(p).pow(e as u32)
            });
            debug_assert!(m >= *k);
            num = &num + &cofactor.scale(coeff);
        }
        let separated = poles.iter().enumerate().all(|(i, (p, _))| {
            poles[i + 1..].iter().all(|(q, _)| (p - q).is_invertible())
        });
        let tops_invertible = poles.iter().all(|(p, m)| {
            terms
                .iter()
                .filter(|(c, k, _)| c == p && k == m)
                .fold(TowerScalar::zero(ctx), |acc, (_, _, v)| &acc + v)
                .is_invertible()
        });
        if separated && tops_invertible {
            Self { num, den, reduced: true }
        } else {
            Self::normalize(num, den)
        }
    }

    pub fn context(&self) -> &Arc<TowerContext> {
        self.den.context()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// deg num − deg den (None for the zero function).
    pub fn degree_balance(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap() as i64)
    }

    pub fn derivative(&self) -> Self {
        if self.is_polynomial() {
            return Self::from_poly(self.num.derivative());
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let d = &self.den * &self.den;
        Self::normalize(n, d)
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |f, _| f.derivative())
    }

    pub fn eval(&self, x: &TowerScalar) -> Result<TowerScalar, CalcError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(CalcError::PoleEvaluation);
        }
        let d_inv = d.inv().map_err(|_| CalcError::PoleEvaluation)?;
        Ok(&self.num.eval(x) * &d_inv)
    }

    pub fn eval_complex(&self, x: Complex64, branch: Branch) -> Complex64 {
        self.num.eval_complex(x, branch) / self.den.eval_complex(x, branch)
    }

    pub fn recip(&self) -> Result<Self, CalcError> {
        if self.is_zero() {
            return Err(CalcError::DivisionByZero);
        }
        let lead = self.num.leading().unwrap();
        if !lead.is_invertible() {
            return Err(CalcError::ZeroDivisor);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, s: &TowerScalar) -> Self {
        Self { num: self.num.scale(s), den: self.den.clone(), reduced: self.reduced || s.is_invertible() }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.context()), |acc, _| &acc * self)
    }

    /// Canonical `(num)/(den)` text in descending powers.
    pub fn render(&self) -> String {
        if self.is_polynomial() {
            return self.num.render();
        }
        format!("({})/({})", self.num.render(), self.den.render())
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Eq for RatFunc {}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl<'a> Add<&'a RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &'a RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::normalize(&self.num + &o.num, self.den.clone());
        }
        if o.is_polynomial() {
            return RatFunc::normalize(&self.num + &(&o.num * &self.den), self.den.clone());
        }
        if self.is_polynomial() {
            return RatFunc::normalize(&(&self.num * &o.den) + &o.num, o.den.clone());
        }
        RatFunc::normalize(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl<'a> Sub<&'a RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &'a RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &'a RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero(self.context());
        }
        if self.is_polynomial() && o.is_polynomial() {
            return RatFunc::from_poly(&self.num * &o.num);
        }
        RatFunc::normalize(&self.num * &o.num, &self.den * &o.den)
    }
}

impl<'a> Div<&'a RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn div(self, o: &'a RatFunc) -> RatFunc {
        self * &o.recip().expect("division by a zero or non-invertible rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone(), reduced: self.reduced }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: &'a RatFunc) -> RatFunc { (&self).$m(o) }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc { self.$m(&o) }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

/// Exact derivative of a rational function.
pub fn differentiate(f: &RatFunc) -> RatFunc {
    f.derivative()
}

/// Exact value of f at z.
pub fn evaluate(f: &RatFunc, z: &TowerScalar) -> Result<TowerScalar, CalcError> {
    f.eval(z)
}
