use twobody_core::models::Space;

/// A point of T*I × O_γ in the (θ, p_θ, p₀, p₁, p₂) chart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseState {
    pub theta: f64,
    pub p_theta: f64,
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
    pub space: Space,
}

impl PhaseState {
    pub fn new(space: Space, theta: f64, p_theta: f64, p0: f64, p1: f64, p2: f64) -> Self {
        Self { theta, p_theta, p0, p1, p2, space }
    }

    pub fn from_slice(space: Space, x: &[f64]) -> Self {
        assert_eq!(x.len(), 5);
        Self::new(space, x[0], x[1], x[2], x[3], x[4])
    }

    pub fn to_vec(&self) -> Vec<f64> {
        vec![self.theta, self.p_theta, self.p0, self.p1, self.p2]
    }

    /// p₀² + p₁² + p₂² (= γ²) on the sphere, p₀² + p₁² − p₂² (= γ) on the
    /// hyperbolic plane.
    pub fn casimir(&self) -> f64 {
        casimir(self.space, &self.to_vec())
    }

    pub fn in_domain(&self) -> bool {
        match self.space {
            Space::Sphere => self.theta > 0.0 && self.theta < std::f64::consts::PI,
            Space::Hyperbolic => self.theta > 0.0 && self.theta.is_finite(),
        }
    }
}

pub(crate) fn casimir(space: Space, x: &[f64]) -> f64 {
    let (p0, p1, p2) = (x[2], x[3], x[4]);
    match space {
        Space::Sphere => p0 * p0 + p1 * p1 + p2 * p2,
        Space::Hyperbolic => p0 * p0 + p1 * p1 - p2 * p2,
    }
}
