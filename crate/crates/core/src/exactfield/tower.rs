//! The biquadratic tower Q(i)[κ, λ] / (κ² − a, λ² − b).
//!
//! Elements are stored in the basis {1, κ, λ, κλ}. The algebra is a field
//! only when none of a, b, ab is a square in Q(i); otherwise it splits into
//! a product of fields and has zero divisors. Both situations occur at the
//! parameter sets this crate cares about (e.g. a = i/2 = ((1+i)/2)²), so
//! inversion is a linear solve that reports `NotInvertible` instead of
//! assuming a field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use super::gauss::GaussRational;
use super::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("degenerate tower: {0}")]
    DegenerateTower(&'static str),
    #[error("division by zero")]
    DivisionByZero,
    #[error("tower scalars belong to different contexts")]
    ContextMismatch,
    #[error("element is a zero divisor and has no inverse")]
    NotInvertible,
}

/// The pair (a, b) = (κ², λ²).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TowerContext {
    a: GaussRational,
    b: GaussRational,
}

impl TowerContext {
    pub fn new(a: GaussRational, b: GaussRational) -> Result<Arc<Self>, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DegenerateTower("kappa^2 = 0"));
        }
        if b.is_zero() {
            return Err(FieldError::DegenerateTower("lambda^2 = 0"));
        }
        if a == b {
            return Err(FieldError::DegenerateTower("kappa^2 = lambda^2"));
        }
        Ok(Arc::new(Self { a, b }))
    }

    pub fn a(&self) -> &GaussRational {
        &self.a
    }

    pub fn b(&self) -> &GaussRational {
        &self.b
    }

    /// κ as an element of Q(i), when a is a Gaussian square.
    pub fn exact_kappa(&self) -> Option<GaussRational> {
        self.a.sqrt_exact()
    }

    pub fn exact_lambda(&self) -> Option<GaussRational> {
        self.b.sqrt_exact()
    }

    /// True when the algebra is a field (no zero divisors).
    pub fn is_field(&self) -> bool {
        self.a.sqrt_exact().is_none()
            && self.b.sqrt_exact().is_none()
            && (&self.a * &self.b).sqrt_exact().is_none()
    }
}

pub fn make_context(a: GaussRational, b: GaussRational) -> Result<Arc<TowerContext>, FieldError> {
    TowerContext::new(a, b)
}

/// Sign choice for κ = ±√a and λ = ±√b, where √ is the principal root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Branch {
    pub kappa_positive: bool,
    pub lambda_positive: bool,
}

impl Branch {
    pub const PRINCIPAL: Branch = Branch { kappa_positive: true, lambda_positive: true };

    pub fn all() -> [Branch; 4] {
        [
            Branch { kappa_positive: true, lambda_positive: true },
            Branch { kappa_positive: true, lambda_positive: false },
            Branch { kappa_positive: false, lambda_positive: true },
            Branch { kappa_positive: false, lambda_positive: false },
        ]
    }
}

#[derive(Clone, Debug)]
pub struct TowerScalar {
    ctx: Arc<TowerContext>,
    c: [GaussRational; 4],
}

impl PartialEq for TowerScalar {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.c == other.c
    }
}

impl Eq for TowerScalar {}

fn same_ctx(x: &Arc<TowerContext>, y: &Arc<TowerContext>) -> bool {
    Arc::ptr_eq(x, y) || **x == **y
}

impl TowerScalar {
    pub fn from_coords(ctx: &Arc<TowerContext>, c: [GaussRational; 4]) -> Self {
        Self { ctx: ctx.clone(), c }
    }

    pub fn from_gauss(ctx: &Arc<TowerContext>, g: GaussRational) -> Self {
        Self::from_coords(
            ctx,
            [g, GaussRational::zero(), GaussRational::zero(), GaussRational::zero()],
        )
    }

    pub fn from_rational(ctx: &Arc<TowerContext>, q: Rational) -> Self {
        Self::from_gauss(ctx, GaussRational::real(q))
    }

    pub fn from_int(ctx: &Arc<TowerContext>, n: i64) -> Self {
        Self::from_gauss(ctx, GaussRational::from_int(n))
    }

    pub fn zero(ctx: &Arc<TowerContext>) -> Self {
        Self::from_gauss(ctx, GaussRational::zero())
    }

    pub fn one(ctx: &Arc<TowerContext>) -> Self {
        Self::from_int(ctx, 1)
    }

    pub fn i(ctx: &Arc<TowerContext>) -> Self {
        Self::from_gauss(ctx, GaussRational::i())
    }

    pub fn kappa(ctx: &Arc<TowerContext>) -> Self {
        let z = GaussRational::zero;
        Self::from_coords(ctx, [z(), GaussRational::one(), z(), z()])
    }

    pub fn lambda(ctx: &Arc<TowerContext>) -> Self {
        let z = GaussRational::zero;
        Self::from_coords(ctx, [z(), z(), GaussRational::one(), z()])
    }

    pub fn context(&self) -> &Arc<TowerContext> {
        &self.ctx
    }

    /// Coordinates (c00, c10, c01, c11) in the basis {1, κ, λ, κλ}.
    pub fn coords(&self) -> &[GaussRational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(GaussRational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(GaussRational::is_zero)
    }

    /// The Q(i) value when the scalar has no κ, λ, κλ components.
    pub fn base_value(&self) -> Option<&GaussRational> {
        self.c[1..].iter().all(GaussRational::is_zero).then_some(&self.c[0])
    }

    pub fn is_base(&self) -> bool {
        self.base_value().is_some()
    }

    pub fn same_context(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx)
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.same_context(other) {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch)
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, FieldError> {
        self.check(o)?;
        Ok(self.add_unchecked(o))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, FieldError> {
        self.check(o)?;
        Ok(self.sub_unchecked(o))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, FieldError> {
        self.check(o)?;
        Ok(self.mul_unchecked(o))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, FieldError> {
        self.check(o)?;
        Ok(self.mul_unchecked(&o.inv()?))
    }

    fn add_unchecked(&self, o: &Self) -> Self {
        let c = std::array::from_fn(|k| &self.c[k] + &o.c[k]);
        Self { ctx: self.ctx.clone(), c }
    }

    fn sub_unchecked(&self, o: &Self) -> Self {
        let c = std::array::from_fn(|k| &self.c[k] - &o.c[k]);
        Self { ctx: self.ctx.clone(), c }
    }

    fn mul_unchecked(&self, o: &Self) -> Self {
        match (self.base_value(), o.base_value()) {
            (Some(x), Some(y)) => return Self::from_gauss(&self.ctx, x * y),
            (Some(x), None) => return o.scale(x),
            (None, Some(y)) => return self.scale(y),
            _ => {}
        }
        let (a, b) = (&self.ctx.a, &self.ctx.b);
        let ab = a * b;
        let [x0, x1, x2, x3] = &self.c;
        let [y0, y1, y2, y3] = &o.c;
        let c0 = &(&(x0 * y0) + &(a * &(x1 * y1))) + &(&(b * &(x2 * y2)) + &(&ab * &(x3 * y3)));
        let c1 = &(&(x0 * y1) + &(x1 * y0)) + &(b * &(&(x2 * y3) + &(x3 * y2)));
        let c2 = &(&(x0 * y2) + &(x2 * y0)) + &(a * &(&(x1 * y3) + &(x3 * y1)));
        let c3 = &(&(x0 * y3) + &(x3 * y0)) + &(&(x1 * y2) + &(x2 * y1));
        Self { ctx: self.ctx.clone(), c: [c0, c1, c2, c3] }
    }

    /// Multiplies every coordinate by a Gaussian rational.
    pub fn scale(&self, g: &GaussRational) -> Self {
        let c = std::array::from_fn(|k| &self.c[k] * g);
        Self { ctx: self.ctx.clone(), c }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        let c = std::array::from_fn(|k| self.c[k].scale(q));
        Self { ctx: self.ctx.clone(), c }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            k >>= 1;
        }
        acc
    }

    /// Column j of the multiplication-by-self matrix is self·e_j.
    fn mult_matrix(&self) -> [[GaussRational; 4]; 4] {
        let (a, b) = (&self.ctx.a, &self.ctx.b);
        let ab = a * b;
        let [x0, x1, x2, x3] = &self.c;
        // rows = output coordinate, columns = basis element multiplied
        [
            [x0.clone(), a * x1, b * x2, &ab * x3],
            [x1.clone(), x0.clone(), b * x3, b * x2],
            [x2.clone(), a * x3, x0.clone(), a * x1],
            [x3.clone(), x2.clone(), x1.clone(), x0.clone()],
        ]
    }

    /// Multiplicative inverse via the 4×4 system M·y = e₀ over Q(i).
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if let Some(g) = self.base_value() {
            return Ok(Self::from_gauss(&self.ctx, g.inv().expect("nonzero")));
        }
        let m = self.mult_matrix();
        let rhs = [
            GaussRational::one(),
            GaussRational::zero(),
            GaussRational::zero(),
            GaussRational::zero(),
        ];
        let y = solve4(m, rhs).ok_or(FieldError::NotInvertible)?;
        Ok(Self { ctx: self.ctx.clone(), c: y })
    }

    pub fn is_invertible(&self) -> bool {
        self.inv().is_ok()
    }

    /// The rational value when the scalar is a real rational multiple of 1.
    pub fn is_real_rational(&self) -> Option<Rational> {
        let g = self.base_value()?;
        g.is_real().then(|| g.re.clone())
    }

    /// Complex value after choosing signs for κ and λ.
    pub fn embed_complex(&self, branch: Branch) -> Complex64 {
        let mut k = self.ctx.a.to_complex().sqrt();
        let mut l = self.ctx.b.to_complex().sqrt();
        if !branch.kappa_positive {
            k = -k;
        }
        if !branch.lambda_positive {
            l = -l;
        }
        let [c0, c1, c2, c3] = &self.c;
        c0.to_complex() + c1.to_complex() * k + c2.to_complex() * l + c3.to_complex() * k * l
    }

    /// Substitutes exact values for κ and/or λ (each must square to the
    /// context's a or b). The result stays in the same context but lives in
    /// the subalgebra generated by the unsubstituted roots.
    pub fn specialize(&self, kappa: Option<&GaussRational>, lambda: Option<&GaussRational>) -> Self {
        if let Some(k) = kappa {
            assert_eq!(&(k * k), &self.ctx.a, "kappa value does not square to a");
        }
        if let Some(l) = lambda {
            assert_eq!(&(l * l), &self.ctx.b, "lambda value does not square to b");
        }
        let [c0, c1, c2, c3] = self.c.clone();
        let z = GaussRational::zero;
        // Substitute κ first: x = (c0 + c1 κ) + (c2 + c3 κ) λ.
        let (u0, u1, v0, v1) = match kappa {
            Some(k) => (&c0 + &(&c1 * k), z(), &c2 + &(&c3 * k), z()),
            None => (c0, c1, c2, c3),
        };
        let c = match lambda {
            Some(l) => [&u0 + &(&v0 * l), &u1 + &(&v1 * l), z(), z()],
            None => [u0, u1, v0, v1],
        };
        Self { ctx: self.ctx.clone(), c }
    }

    /// Image under the automorphism κ ↦ −κ.
    pub fn conj_kappa(&self) -> Self {
        let [c0, c1, c2, c3] = &self.c;
        Self { ctx: self.ctx.clone(), c: [c0.clone(), -c1, c2.clone(), -c3] }
    }

    /// Image under λ ↦ −λ.
    pub fn conj_lambda(&self) -> Self {
        let [c0, c1, c2, c3] = &self.c;
        Self { ctx: self.ctx.clone(), c: [c0.clone(), c1.clone(), -c2, -c3] }
    }
}

/// Gauss–Jordan on a 4×4 system over Q(i); `None` when singular.
fn solve4(mut m: [[GaussRational; 4]; 4], mut rhs: [GaussRational; 4]) -> Option<[GaussRational; 4]> {
    for col in 0..4 {
        let pivot = (col..4).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = m[col][col].inv().expect("nonzero pivot");
        for k in col..4 {
            m[col][k] = &m[col][k] * &inv;
        }
        rhs[col] = &rhs[col] * &inv;
        for r in 0..4 {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for k in col..4 {
                let t = &factor * &m[col][k];
                m[r][k] -= &t;
            }
            let t = &factor * &rhs[col];
            rhs[r] -= &t;
        }
    }
    Some(rhs)
}

impl fmt::Display for TowerScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [c0, c1, c2, c3] = &self.c;
        write!(f, "{c0} + {c1}κ + {c2}λ + {c3}κλ")
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl<'a> $tr<&'a TowerScalar> for &TowerScalar {
            type Output = TowerScalar;
            fn $method(self, o: &'a TowerScalar) -> TowerScalar {
                assert!(self.same_context(o), "tower scalars from different contexts");
                self.$imp(o)
            }
        }
        impl $tr<TowerScalar> for TowerScalar {
            type Output = TowerScalar;
            fn $method(self, o: TowerScalar) -> TowerScalar {
                (&self).$method(&o)
            }
        }
        impl<'a> $tr<&'a TowerScalar> for TowerScalar {
            type Output = TowerScalar;
            fn $method(self, o: &'a TowerScalar) -> TowerScalar {
                (&self).$method(o)
            }
        }
        impl $tr<TowerScalar> for &TowerScalar {
            type Output = TowerScalar;
            fn $method(self, o: TowerScalar) -> TowerScalar {
                self.$method(&o)
            }
        }
    };
}

binop!(Add, add, add_unchecked);
binop!(Sub, sub, sub_unchecked);
binop!(Mul, mul, mul_unchecked);

impl Neg for &TowerScalar {
    type Output = TowerScalar;
    fn neg(self) -> TowerScalar {
        let c = std::array::from_fn(|k| -&self.c[k]);
        TowerScalar { ctx: self.ctx.clone(), c }
    }
}

impl Neg for TowerScalar {
    type Output = TowerScalar;
    fn neg(self) -> TowerScalar {
        -&self
    }
}
