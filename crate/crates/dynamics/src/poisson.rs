use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg};

use num_traits::Zero;
use twobody_core::exactfield::{int, Rational};
use twobody_core::models::Space;

/// Polynomial in (θ, p_θ, p₀, p₁, p₂) with rational coefficients, used to
/// check the bracket identities exactly.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<[u32; 5], Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, [0; 5])
    }

    pub fn var(k: usize) -> Self {
        let mut e = [0; 5];
        e[k] = 1;
        Self::monomial(int(1), e)
    }

    pub fn monomial(c: Rational, e: [u32; 5]) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn partial(&self, k: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[k] > 0 {
                let mut e2 = *e;
                e2[k] -= 1;
                out.add_term(e2, c * Rational::from_integer(e[k].into()));
            }
        }
        out
    }

    fn add_term(&mut self, e: [u32; 5], c: Rational) {
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// All monomials of total degree ≤ `d`.
    pub fn monomials_up_to(d: u32) -> Vec<Self> {
        let mut out = Vec::new();
        for a in 0..=d {
            for b in 0..=d - a {
                for c in 0..=d - a - b {
                    for e in 0..=d - a - b - c {
                        for f in 0..=d - a - b - c - e {
                            out.push(Self::monomial(int(1), [a, b, c, e, f]));
                        }
                    }
                }
            }
        }
        out
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = std::array::from_fn(|k| e1[k] + e2[k]);
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

/// The Lie–Poisson bracket on T*I × so*(3) or T*R₊ × so*(1,2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PoissonStructure {
    pub space: Space,
}

const THETA: usize = 0;
const PTHETA: usize = 1;
const P0: usize = 2;
const P1: usize = 3;
const P2: usize = 4;

impl PoissonStructure {
    pub fn new(space: Space) -> Self {
        Self { space }
    }

    /// {x_a, x_b} as (coefficient, coordinate index) with `None` for a
    /// constant; zero entries are `None` with coefficient 0.
    fn entry(&self, a: usize, b: usize) -> (f64, Option<usize>) {
        if a > b {
            let (c, k) = self.entry(b, a);
            return (-c, k);
        }
        let h = self.space == Space::Hyperbolic;
        match (a, b) {
            (THETA, PTHETA) => (1.0, None),
            (P0, P1) => (if h { 1.0 } else { -1.0 }, Some(P2)),
            (P1, P2) => (-1.0, Some(P0)),
            (P0, P2) => (1.0, Some(P1)),
            _ => (0.0, None),
        }
    }

    pub fn matrix(&self, x: &[f64]) -> [[f64; 5]; 5] {
        std::array::from_fn(|a| {
            std::array::from_fn(|b| match self.entry(a, b) {
                (c, None) => c,
                (c, Some(k)) => c * x[k],
            })
        })
    }

    pub fn entry_poly(&self, a: usize, b: usize) -> MultiPoly {
        match self.entry(a, b) {
            (c, None) => MultiPoly::constant(Rational::from_float(c).unwrap()),
            (c, Some(k)) => &MultiPoly::constant(Rational::from_float(c).unwrap()) * &MultiPoly::var(k),
        }
    }

    /// {f, g} = Σ Π_ab ∂_a f ∂_b g.
    pub fn bracket(&self, f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for a in 0..5 {
            let fa = f.partial(a);
            if fa.is_zero() {
                continue;
            }
            for b in 0..5 {
                let gb = g.partial(b);
                if gb.is_zero() {
                    continue;
                }
                out = &out + &(&(&self.entry_poly(a, b) * &fa) * &gb);
            }
        }
        out
    }

    pub fn casimir_poly(&self) -> MultiPoly {
        let sq = |k| &MultiPoly::var(k) * &MultiPoly::var(k);
        let p2 = sq(P2);
        let p2 = if self.space == Space::Hyperbolic { -&p2 } else { p2 };
        &(&sq(P0) + &sq(P1)) + &p2
    }

    pub fn antisymmetric(&self) -> bool {
        (0..5).all(|a| (0..5).all(|b| self.entry_poly(a, b) == -&self.entry_poly(b, a)))
    }

    /// Jacobi identity on every triple of monomials of degree ≤ `d`.
    pub fn jacobi_holds(&self, d: u32) -> bool {
        let mons = MultiPoly::monomials_up_to(d);
        for i in 0..mons.len() {
            for j in i..mons.len() {
                let fg = self.bracket(&mons[i], &mons[j]);
                for k in j..mons.len() {
                    let (f, g, h) = (&mons[i], &mons[j], &mons[k]);
                    let gh = self.bracket(g, h);
                    let hf = self.bracket(h, f);
                    let sum = &(&self.bracket(f, &gh) + &self.bracket(g, &hf)) + &self.bracket(h, &fg);
                    if !sum.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn casimir_is_central(&self) -> bool {
        let c = self.casimir_poly();
        (0..5).all(|k| self.bracket(&c, &MultiPoly::var(k)).is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brackets_match_tables() {
        let s = PoissonStructure::new(Space::Sphere);
        let x = [0.3, 0.1, 2.0, 3.0, 5.0];
        let m = s.matrix(&x);
        assert_eq!(m[P0][P1], -5.0);
        assert_eq!(m[P1][P2], -2.0);
        assert_eq!(m[P2][P0], -3.0);
        assert_eq!(m[THETA][PTHETA], 1.0);
        let h = PoissonStructure::new(Space::Hyperbolic).matrix(&x);
        assert_eq!(h[P0][P1], 5.0);
        assert_eq!(h[P1][P2], -2.0);
        assert_eq!(h[P0][P2], 3.0);
    }

    #[test]
    fn structure_identities_hold_exactly() {
        for space in [Space::Sphere, Space::Hyperbolic] {
            let s = PoissonStructure::new(space);
            assert!(s.antisymmetric());
            assert!(s.casimir_is_central());
            assert!(s.jacobi_holds(2), "{space}");
        }
    }

    #[test]
    fn broken_structure_fails_jacobi() {
        // {p₀,p₁} = p₂, {p₁,p₂} = p₀, {p₂,p₀} = p₂ is not a Lie algebra.
        let (a, b, c) = (MultiPoly::var(P0), MultiPoly::var(P1), MultiPoly::var(P2));
        let br = |f: &MultiPoly, g: &MultiPoly| {
            let mut out = MultiPoly::zero();
            let tab = [(P0, P1, P2), (P1, P2, P0), (P2, P0, P2)];
            for (i, j, k) in tab {
                let t = &(&f.partial(i) * &g.partial(j)) + &(-&(&f.partial(j) * &g.partial(i)));
                out = &out + &(&t * &MultiPoly::var(k));
            }
            out
        };
        let sum = &(&br(&a, &br(&b, &c)) + &br(&b, &br(&c, &a))) + &br(&c, &br(&a, &b));
        assert!(!sum.is_zero());
    }
}
