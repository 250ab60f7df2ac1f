use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use crate::exactfield::{Branch, FieldError, GaussRational, Rational, TowerContext, TowerScalar};

use super::CalcError;

/// Dense univariate polynomial, coefficients low to high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    ctx: Arc<TowerContext>,
    coeffs: Vec<TowerScalar>,
}

impl Poly {
    pub fn new(ctx: &Arc<TowerContext>, mut coeffs: Vec<TowerScalar>) -> Self {
        while coeffs.last().is_some_and(TowerScalar::is_zero) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.same_context(&TowerScalar::zero(ctx))));
        Self { ctx: ctx.clone(), coeffs }
    }

    pub fn zero(ctx: &Arc<TowerContext>) -> Self {
        Self { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn one(ctx: &Arc<TowerContext>) -> Self {
        Self::constant(TowerScalar::one(ctx))
    }

    pub fn constant(c: TowerScalar) -> Self {
        let ctx = c.context().clone();
        Self::new(&ctx, vec![c])
    }

    /// The variable z.
    pub fn z(ctx: &Arc<TowerContext>) -> Self {
        Self::monomial(TowerScalar::one(ctx), 1)
    }

    pub fn monomial(c: TowerScalar, k: usize) -> Self {
        let ctx = c.context().clone();
        let mut coeffs = vec![TowerScalar::zero(&ctx); k];
        coeffs.push(c);
        Self::new(&ctx, coeffs)
    }

    /// z − c.
    pub fn linear_root(c: &TowerScalar) -> Self {
        let ctx = c.context().clone();
        Self::new(&ctx, vec![-c, TowerScalar::one(&ctx)])
    }

    /// Polynomial with Gaussian-rational coefficients, low to high.
    pub fn from_gauss(ctx: &Arc<TowerContext>, coeffs: &[GaussRational]) -> Self {
        Self::new(ctx, coeffs.iter().map(|g| TowerScalar::from_gauss(ctx, g.clone())).collect())
    }

    pub fn from_rationals(ctx: &Arc<TowerContext>, coeffs: &[Rational]) -> Self {
        Self::new(ctx, coeffs.iter().map(|q| TowerScalar::from_rational(ctx, q.clone())).collect())
    }

    pub fn context(&self) -> &Arc<TowerContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[TowerScalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&TowerScalar> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> TowerScalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| TowerScalar::zero(&self.ctx))
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(TowerScalar::is_one)
    }

    /// True when every coefficient lies in Q(i).
    pub fn is_base(&self) -> bool {
        self.coeffs.iter().all(TowerScalar::is_base)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale_rational(&Rational::from_integer((k as i64).into())))
            .collect();
        Self::new(&self.ctx, coeffs)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &TowerScalar) -> TowerScalar {
        let mut acc = TowerScalar::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Floating-point value after embedding the coefficients on `branch`.
    pub fn eval_complex(&self, x: Complex64, branch: Branch) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c.embed_complex(branch))
    }

    pub fn scale(&self, s: &TowerScalar) -> Self {
        Self::new(&self.ctx, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Division with remainder; the divisor's leading coefficient must be
    /// invertible in the tower.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), CalcError> {
        let dd = d.degree().ok_or(CalcError::DivisionByZero)?;
        let lead_inv = d.leading().unwrap().inv().map_err(CalcError::from)?;
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return Ok((Self::zero(&self.ctx), self.clone()));
        }
        let mut quot = vec![TowerScalar::zero(&self.ctx); n - dd];
        for k in (0..n - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&c * dc);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(&self.ctx, quot), Self::new(&self.ctx, rem)))
    }

    /// Exact quotient; fails when the remainder is nonzero.
    pub fn exact_div(&self, d: &Self) -> Result<Self, CalcError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(CalcError::NotDivisible)
        }
    }

    pub fn monic(&self) -> Result<Self, CalcError> {
        let lead = self.leading().ok_or(CalcError::DivisionByZero)?;
        Ok(self.scale(&lead.inv()?))
    }

    /// Coefficients of p(c + u) as a polynomial in u.
    pub fn taylor_shift(&self, c: &TowerScalar) -> Self {
        // Repeated synthetic division by (z − c).
        let mut work = self.coeffs.clone();
        let n = work.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &work[j + 1] * c;
                work[j] = &work[j] + &t;
            }
        }
        Self::new(&self.ctx, work)
    }

    /// Multiplicity of c as a root; errors when the answer depends on the
    /// choice of square-root branch (a value that is a nonzero zero divisor).
    pub fn root_multiplicity(&self, c: &TowerScalar) -> Result<usize, CalcError> {
        if self.is_zero() {
            return Err(CalcError::ZeroPolynomial);
        }
        let shifted = self.taylor_shift(c);
        let mut m = 0;
        for coef in shifted.coeffs() {
            if coef.is_zero() {
                m += 1;
                continue;
            }
            if !coef.is_invertible() {
                return Err(CalcError::ZeroDivisor);
            }
            break;
        }
        Ok(m)
    }

    fn binary(&self, o: &Self, f: impl Fn(&TowerScalar, &TowerScalar) -> TowerScalar) -> Self {
        assert!(
            Arc::ptr_eq(&self.ctx, &o.ctx) || *self.ctx == *o.ctx,
            "polynomials from different contexts"
        );
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|k| f(&self.coeff(k), &o.coeff(k))).collect();
        Self::new(&self.ctx, coeffs)
    }

    /// Canonical descending-degree text, e.g. `(c)z^2 + (c)z + (c)`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let var = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            parts.push(format!("[{c}]{var}"));
        }
        parts.join(" + ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<'a> Add<&'a Poly> for &Poly {
    type Output = Poly;
    fn add(self, o: &'a Poly) -> Poly {
        self.binary(o, |a, b| a + b)
    }
}

impl<'a> Sub<&'a Poly> for &Poly {
    type Output = Poly;
    fn sub(self, o: &'a Poly) -> Poly {
        self.binary(o, |a, b| a - b)
    }
}

impl<'a> Mul<&'a Poly> for &Poly {
    type Output = Poly;
    fn mul(self, o: &'a Poly) -> Poly {
        assert!(
            Arc::ptr_eq(&self.ctx, &o.ctx) || *self.ctx == *o.ctx,
            "polynomials from different contexts"
        );
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.ctx);
        }
        let mut out = vec![TowerScalar::zero(&self.ctx); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(&self.ctx, out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(&self.ctx, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl From<FieldError> for CalcError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::NotInvertible => CalcError::ZeroDivisor,
            FieldError::DivisionByZero => CalcError::DivisionByZero,
            other => CalcError::Field(other),
        }
    }
}

/// Monic gcd by the Euclidean algorithm.
///
/// Over a tower with zero divisors a remainder can vanish on some branches
/// only; its leading coefficient is then a nonzero zero divisor and the gcd
/// is not uniform across branches, reported as `ZeroDivisor`.
pub fn poly_gcd(p: &Poly, q: &Poly) -> Result<Poly, CalcError> {
    if p.is_zero() && q.is_zero() {
        return Err(CalcError::ZeroPolynomial);
    }
    let (mut a, mut b) = if p.degree() >= q.degree() { (p.clone(), q.clone()) } else { (q.clone(), p.clone()) };
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b)?;
        a = b;
        b = r;
    }
    a.monic()
}
