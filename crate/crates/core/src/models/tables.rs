//! Closed forms r(z) = Σ α_j/(z − z_j)² + β_j/(z − z_j) for the four cases.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::exactfield::{int, rat, Rational, TowerScalar};
use crate::ratcalc::RatFunc;

use super::{system::candidate_poles, ModelError, ModelParams, Potential, Space};

/// Owned tower arithmetic for transcribing long formulas.
#[derive(Clone)]
struct E(TowerScalar);

impl Add for E {
    type Output = E;
    fn add(self, o: E) -> E {
        E(&self.0 + &o.0)
    }
}

impl Sub for E {
    type Output = E;
    fn sub(self, o: E) -> E {
        E(&self.0 - &o.0)
    }
}

impl Mul for E {
    type Output = E;
    fn mul(self, o: E) -> E {
        E(&self.0 * &o.0)
    }
}

impl Div for E {
    type Output = E;
    fn div(self, o: E) -> E {
        E(&self.0 * &o.0.inv().expect("table denominator is guarded"))
    }
}

impl Neg for E {
    type Output = E;
    fn neg(self) -> E {
        E(-&self.0)
    }
}

impl E {
    fn pow(&self, k: u32) -> E {
        E(self.0.pow(k))
    }
}

/// Leading and residue coefficients at z₀, ±κ, ±λ (in that order).
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTable {
    pub poles: Vec<TowerScalar>,
    pub alphas: Vec<TowerScalar>,
    pub betas: Vec<TowerScalar>,
}

impl CoefficientTable {
    pub fn to_ratfunc(&self) -> RatFunc {
        let ctx = self.poles[0].context();
        let mut terms = Vec::new();
        for ((z, a), b) in self.poles.iter().zip(&self.alphas).zip(&self.betas) {
            terms.push((z.clone(), 2, a.clone()));
            terms.push((z.clone(), 1, b.clone()));
        }
        RatFunc::from_pole_terms(ctx, &terms, None)
    }

    /// α at the pole with the given table index (0 is z₀).
    pub fn alpha(&self, j: usize) -> &TowerScalar {
        &self.alphas[j]
    }
}

struct Sym {
    one: E,
    i: E,
    k: E,
    l: E,
    k2: E,
    l2: E,
    dd: E,
    p: E,
    mu: E,
}

impl Sym {
    fn new(m: &ModelParams) -> Self {
        let ctx = m.context();
        let k2 = E(TowerScalar::from_gauss(ctx, m.kappa_sq.clone()));
        let l2 = E(TowerScalar::from_gauss(ctx, m.lambda_sq.clone()));
        Sym {
            one: E(TowerScalar::one(ctx)),
            i: E(TowerScalar::i(ctx)),
            k: E(m.kappa()),
            l: E(m.lambda()),
            dd: k2.clone() - l2.clone(),
            k2,
            l2,
            p: E(TowerScalar::from_rational(ctx, m.p.clone())),
            mu: E(TowerScalar::from_rational(ctx, m.mu.clone())),
        }
    }

    fn n(&self, q: Rational) -> E {
        E(TowerScalar::from_rational(self.one.0.context(), q))
    }
}

fn newton_sphere(s: &Sym) -> (Vec<E>, Vec<E>) {
    let n = |v: i64| s.n(int(v));
    let (mu, p, i, k, l, k2, l2, dd) = (&s.mu, &s.p, &s.i, &s.k, &s.l, &s.k2, &s.l2, &s.dd);
    let m1 = mu.clone() - s.one.clone();
    let om = s.one.clone() - mu.clone();
    let mp = mu.clone() + s.one.clone();
    let ik = i.clone() * k.clone();
    let il = i.clone() * l.clone();
    let a1 = om.clone() / (n(64) * k2.clone())
        * (p.clone() * m1.clone() * (l2.clone() - k2.clone()) + n(4) * ik.clone() * mp.clone())
        * (p.clone() * (l2.clone() - k2.clone()) + n(4) * ik.clone());
    let a2 = om.clone() / (n(64) * k2.clone())
        * (p.clone() * m1.clone() * (l2.clone() - k2.clone()) - n(4) * ik.clone() * mp.clone())
        * (p.clone() * (l2.clone() - k2.clone()) - n(4) * ik.clone());
    let a3 = om.clone() / (n(64) * l2.clone())
        * (p.clone() * m1.clone() * dd.clone() - n(4) * il.clone() * mp.clone())
        * (p.clone() * dd.clone() - n(4) * il.clone());
    let a4 = om.clone() / (n(64) * l2.clone())
        * (p.clone() * m1.clone() * dd.clone() + n(4) * il.clone() * mp.clone())
        * (p.clone() * dd.clone() + n(4) * il.clone());
    let k3 = k.pow(3);
    let l3 = l.pow(3);
    let pk = m1.clone() / (n(64) * dd.clone() * k3.clone());
    let pl = m1.clone() / (n(64) * dd.clone() * l3.clone());
    let dd2p2 = dd.pow(2) * p.pow(2);
    let b1 = pk.clone()
        * (m1.clone() * (n(5) * k2.clone() - l2.clone()) * dd2p2.clone()
            - n(32) * i.clone() * mu.clone() * dd.clone() * k3.clone() * p.clone()
            - n(16) * mp.clone() * k2.clone() * (n(3) * k2.clone() + l2.clone()));
    let b2 = pk
        * (om.clone() * (n(5) * k2.clone() - l2.clone()) * dd2p2.clone()
            - n(32) * i.clone() * mu.clone() * dd.clone() * k3.clone() * p.clone()
            + n(16) * mp.clone() * k2.clone() * (n(3) * k2.clone() + l2.clone()));
    let b3 = pl.clone()
        * (om * (n(5) * l2.clone() - k2.clone()) * dd2p2.clone()
            + n(32) * i.clone() * mu.clone() * dd.clone() * l3.clone() * p.clone()
            + n(16) * mp.clone() * l2.clone() * (n(3) * l2.clone() + k2.clone()));
    let b4 = pl
        * (m1 * (n(5) * l2.clone() - k2.clone()) * dd2p2
            + n(32) * i.clone() * mu.clone() * dd.clone() * l3 * p.clone()
            - n(16) * mp * l2.clone() * (n(3) * l2.clone() + k2.clone()));
    (vec![s.n(rat(3, 4)), a1, a2, a3, a4], vec![n(0), b1, b2, b3, b4])
}

fn newton_hyperbolic(s: &Sym) -> (Vec<E>, Vec<E>) {
    let n = |v: i64| s.n(int(v));
    let (mu, p, k, l, k2, l2, dd) = (&s.mu, &s.p, &s.k, &s.l, &s.k2, &s.l2, &s.dd);
    let m1 = mu.clone() - s.one.clone();
    let mp = mu.clone() + s.one.clone();
    let pdd = p.clone() * dd.clone();
    let alpha = |root: &E, root2: &E, sign: i64| {
        m1.clone() / (n(64) * root2.clone())
            * (pdd.clone() * m1.clone() + n(4 * sign) * root.clone() * mp.clone())
            * (pdd.clone() + n(4 * sign) * root.clone())
    };
    let a1 = alpha(k, k2, -1);
    let a2 = alpha(k, k2, 1);
    let a3 = alpha(l, l2, -1);
    let a4 = alpha(l, l2, 1);
    let k3 = k.pow(3);
    let l3 = l.pow(3);
    let pk = m1.clone() / (n(64) * dd.clone() * k3.clone());
    let pl = m1.clone() / (n(64) * dd.clone() * l3.clone());
    let dd2p2 = dd.pow(2) * p.pow(2);
    let kk = n(16) * mp.clone() * k2.clone() * (n(3) * k2.clone() + l2.clone());
    let ll = n(16) * mp * l2.clone() * (n(3) * l2.clone() + k2.clone());
    let b1 = pk.clone()
        * (m1.clone() * (l2.clone() - n(5) * k2.clone()) * dd2p2.clone()
            + n(32) * mu.clone() * dd.clone() * k3.clone() * p.clone()
            - kk.clone());
    let b2 = pk
        * (m1.clone() * (n(5) * k2.clone() - l2.clone()) * dd2p2.clone()
            + n(32) * mu.clone() * dd.clone() * k3 * p.clone()
            + kk);
    let b3 = pl.clone()
        * (m1.clone() * (n(5) * l2.clone() - k2.clone()) * dd2p2.clone()
            - n(32) * mu.clone() * dd.clone() * l3.clone() * p.clone()
            + ll.clone());
    let b4 = pl
        * (m1 * (k2.clone() - n(5) * l2.clone()) * dd2p2
            - n(32) * mu.clone() * dd.clone() * l3 * p.clone()
            - ll);
    (vec![s.n(rat(3, 4)), a1, a2, a3, a4], vec![n(0), b1, b2, b3, b4])
}

fn oscillator(s: &Sym, hyperbolic: bool) -> (Vec<E>, Vec<E>) {
    let n = |v: i64| s.n(int(v));
    let (mu, p, k, l, k2, l2, dd) = (&s.mu, &s.p, &s.k, &s.l, &s.k2, &s.l2, &s.dd);
    let m1 = mu.clone() - s.one.clone();
    let mp = mu.clone() + s.one.clone();
    let pdd = p.clone() * dd.clone();
    // The hyperbolic table swaps the roles of ±κ and flips several signs.
    let h = if hyperbolic { -1 } else { 1 };
    let b0_num = if hyperbolic { dd.clone() } else { -dd.clone() };
    let b0 = n(3) * b0_num * p.clone() / (n(2) * (dd.pow(2) * p.pow(2) - l2.clone()));
    let alpha = |sign: i64| {
        m1.clone() / (n(4) * k2.clone())
            * (pdd.clone() * m1.clone() + n(sign) * k.clone() * mp.clone())
            * (pdd.clone() + n(sign) * k.clone())
    };
    let a1 = alpha(-h);
    let a2 = alpha(h);
    let k3 = k.pow(3);
    let pk = m1.clone() / (n(4) * dd.clone() * k3.clone());
    let dd2p2 = dd.pow(2) * p.pow(2);
    let kk = mp * k2.clone() * (k2.clone() + l2.clone());
    let mid = n(4 * h) * mu.clone() * dd.clone() * k3 * p.clone();
    let b1 = pk.clone() * (m1.clone() * (l2.clone() - n(3) * k2.clone()) * dd2p2.clone() + mid.clone() - kk.clone());
    let b2 = pk * (m1.clone() * (n(3) * k2.clone() - l2.clone()) * dd2p2.clone() + mid + kk);
    let c24 = n(24) * mu.pow(2) - n(16) * mu.clone() - n(17);
    let c8 = n(8) * mu.pow(2) - n(5);
    let tail = n(9) * k2.clone() + c24 * l2.clone();
    let cubic = n(8) * m1.pow(2) * p.pow(3);
    let quad = n(8 * h) * (n(3) * mu.clone() - s.one.clone()) * m1 * l.clone() * dd2p2;
    // λ((5 − 8μ²)λ² + 3κ²) on the sphere, its negative on the hyperbolic side.
    let lin = n(-h) * l.clone() * (c8 * l2.clone() - n(3) * k2.clone());
    let b3 = (cubic.clone() * dd.pow(3) - quad.clone() + lin.clone() + dd.clone() * tail.clone() * p.clone())
        / (n(16) * l.clone() * dd.clone() * (pdd.clone() - n(h) * l.clone()));
    let b4 = (cubic * (-dd.clone()).pow(3) - quad + lin - dd.clone() * tail * p.clone())
        / (n(16) * l.clone() * dd.clone() * (pdd + n(h) * l.clone()));
    let a34 = s.n(rat(-3, 16));
    (vec![s.n(rat(3, 4)), a1, a2, a34.clone(), a34], vec![b0, b1, b2, b3, b4])
}

/// Transcribed coefficient table for the parameter set.
pub fn closed_form_r(m: &ModelParams) -> Result<CoefficientTable, ModelError> {
    let s = Sym::new(m);
    let (alphas, betas) = match (m.space, m.potential) {
        (Space::Sphere, Potential::Newton) => newton_sphere(&s),
        (Space::Hyperbolic, Potential::Newton) => newton_hyperbolic(&s),
        (Space::Sphere, Potential::Oscillator) => oscillator(&s, false),
        (Space::Hyperbolic, Potential::Oscillator) => oscillator(&s, true),
    };
    Ok(CoefficientTable {
        poles: candidate_poles(m),
        alphas: alphas.into_iter().map(|e| e.0).collect(),
        betas: betas.into_iter().map(|e| e.0).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{derive_params, pipeline_r};

    #[test]
    fn tables_match_pipeline_at_reference_points() {
        let cases = [
            (Space::Sphere, Potential::Newton, int(2), int(0)),
            (Space::Hyperbolic, Potential::Newton, int(1), int(-2)),
            (Space::Sphere, Potential::Oscillator, int(1), int(-1)),
            (Space::Hyperbolic, Potential::Oscillator, int(1), int(-1)),
        ];
        for (space, pot, strength, eps) in cases {
            let m = derive_params(space, pot, strength, rat(1, 2), int(1), eps).unwrap();
            let table = closed_form_r(&m).unwrap();
            let r = pipeline_r(&m).unwrap();
            assert_eq!(table.to_ratfunc(), r.r, "{space}/{pot}");
        }
    }

    #[test]
    fn oscillator_fixed_entries() {
        let m = derive_params(Space::Sphere, Potential::Oscillator, int(3), rat(2, 5), rat(-1, 3), rat(-3, 2)).unwrap();
        let t = closed_form_r(&m).unwrap();
        assert_eq!(t.alphas[0], TowerScalar::from_rational(m.context(), rat(3, 4)));
        assert_eq!(t.alphas[3], TowerScalar::from_rational(m.context(), rat(-3, 16)));
        assert_eq!(t.alphas[4], t.alphas[3]);
    }
}
