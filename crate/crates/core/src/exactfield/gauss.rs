//! Gaussian rationals Q(i).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::rational::{int, rational_sqrt, to_f64, Rational, RatDisplay};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn imag(im: Rational) -> Self {
        Self { re: Rational::zero(), im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(int(n))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::imag(int(1))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// |x|² = re² + im².
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(&self.re * q, &self.im * q)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Square root inside Q(i), if one exists.
    ///
    /// For x = u + iv with a rational modulus m = |x|, the root is
    /// s + it with s² = (u + m)/2 and t = v/(2s) (or the purely imaginary
    /// root when s vanishes). The root with non-negative real part is
    /// returned, and the positive-imaginary one on the negative real axis.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let m = rational_sqrt(&self.norm_sqr())?;
        let two = int(2);
        let s2 = (&self.re + &m) / &two;
        if s2.is_zero() {
            // u = -m, v = 0: purely imaginary root.
            let t = rational_sqrt(&(-&self.re))?;
            return Some(Self::imag(t));
        }
        let s = rational_sqrt(&s2)?;
        let t = &self.im / (&two * &s);
        let root = Self::new(s, t);
        debug_assert_eq!(&root * &root, *self);
        Some(root)
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_negative() { "-" } else { "+" };
        let im_abs = self.im.abs();
        write!(f, "({}{}{} i)", RatDisplay(&self.re), sign, RatDisplay(&im_abs))
    }
}

impl From<Rational> for GaussRational {
    fn from(q: Rational) -> Self {
        Self::real(q)
    }
}

impl<'a> Add<&'a GaussRational> for &GaussRational {
    type Output = GaussRational;
    fn add(self, o: &'a GaussRational) -> GaussRational {
        GaussRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a GaussRational> for &GaussRational {
    type Output = GaussRational;
    fn sub(self, o: &'a GaussRational) -> GaussRational {
        GaussRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a GaussRational> for &GaussRational {
    type Output = GaussRational;
    fn mul(self, o: &'a GaussRational) -> GaussRational {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRational::real(&self.re * &o.re);
        }
        GaussRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-&self.re, -&self.im)
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re, -self.im)
    }
}

impl Add for GaussRational {
    type Output = GaussRational;
    fn add(self, o: GaussRational) -> GaussRational {
        &self + &o
    }
}

impl Sub for GaussRational {
    type Output = GaussRational;
    fn sub(self, o: GaussRational) -> GaussRational {
        &self - &o
    }
}

impl Mul for GaussRational {
    type Output = GaussRational;
    fn mul(self, o: GaussRational) -> GaussRational {
        &self * &o
    }
}

impl AddAssign<&GaussRational> for GaussRational {
    fn add_assign(&mut self, o: &GaussRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussRational> for GaussRational {
    fn sub_assign(&mut self, o: &GaussRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rational::rat;

    fn g(a: i64, b: i64, c: i64, d: i64) -> GaussRational {
        GaussRational::new(rat(a, b), rat(c, d))
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&GaussRational::i() * &GaussRational::i(), GaussRational::from_int(-1));
    }

    #[test]
    fn inverse_round_trip() {
        let x = g(3, 4, -2, 5);
        assert!((&x * &x.inv().unwrap()).is_one());
        assert!(GaussRational::zero().inv().is_none());
    }

    #[test]
    fn exact_square_roots() {
        // (1+i)/2 squared is i/2.
        assert_eq!(g(0, 1, 1, 2).sqrt_exact(), Some(g(1, 2, 1, 2)));
        assert_eq!(g(-1, 1, 0, 1).sqrt_exact(), Some(GaussRational::i()));
        assert_eq!(g(-9, 4, 0, 1).sqrt_exact(), Some(g(0, 1, 3, 2)));
        assert_eq!(g(2, 1, 0, 1).sqrt_exact(), None);
        assert_eq!(g(-3, 1, 0, 1).sqrt_exact(), None);
        let z = g(3, 7, -5, 11);
        let sq = &z * &z;
        let r = sq.sqrt_exact().unwrap();
        assert_eq!(&r * &r, sq);
    }

    #[test]
    fn display_form() {
        assert_eq!(g(1, 2, -3, 4).to_string(), "(1/2-3/4 i)");
        assert_eq!(GaussRational::zero().to_string(), "(0/1+0/1 i)");
    }
}
