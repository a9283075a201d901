//! Character variety of the pretzel knot `P(2k1+1, 2k2+1, 2k3)` in the trace
//! coordinates `(t, s1, s2, s3, τ)`.
//!
//! With `X1 = ρ(x1)`, `X2 = ρ(x2)`, `X3 = ρ(x3⁻¹)` and
//! `Y1 = X2X3⁻¹`, `Y2 = X3X1⁻¹`, `Y3 = X1X2⁻¹`, a point records
//! `t = tr X_j`, `s_j = tr Y_j` and `τ = t³ + t − tr(X1X2X3)`.

mod relations;
mod sampling;
mod systems;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::elimination::EliminationError;
use crate::polycore::{ComplexVal, MultiPoly, PolyError};
use crate::sl2::Sl2Error;

pub use relations::{a_matrices, aj_trace_closed, build_representation, build_representation_unchecked, pair_with_trace, RepTriple};
pub use sampling::{sample_x3, SampleOptions, X3Sample};
pub use systems::{
    adjudicate_x2, classify_t0, component_systems, delta_poly, enumerate_x2, kappa_lambda_poly, kappa_poly, membership,
    membership_detail, sigma_polys, x3_equations, x3_excluded_factors, ComponentSystem, Conic, MembershipEntry,
    NumericCondition, T0Bullet, X2Component, X2Verdict, INEQUATION_MARGIN,
};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CharVarError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("point lies on no component: {0}")]
    NotOnVariety(String),
    #[error("reconstructed representation misses the group relations by {residual:.3e}")]
    ComponentDiscrepancy { residual: f64 },
    #[error("t = 0 classification needs t = 0, got |t| = {0:.3e}")]
    NonZeroTrace(f64),
    #[error("sampling failed: {0}")]
    Sampling(String),
    #[error(transparent)]
    Sl2(#[from] Sl2Error),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Elimination(#[from] EliminationError),
}

/// The integers `(k1, k2, k3)` of `P(2k1+1, 2k2+1, 2k3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PretzelParams {
    pub k1: i64,
    pub k2: i64,
    pub k3: i64,
}

impl PretzelParams {
    /// Accepts `k1, k2 ≥ 0` and `k3 ≥ 1`.
    pub fn new(k1: i64, k2: i64, k3: i64) -> Result<Self, CharVarError> {
        if k1 < 0 || k2 < 0 || k3 < 1 {
            return Err(CharVarError::InvalidParams(format!(
                "need k1, k2 >= 0 and k3 >= 1, got ({k1}, {k2}, {k3})"
            )));
        }
        Ok(PretzelParams { k1, k2, k3 })
    }

    /// `k_j` for `j ∈ {1, 2, 3}`.
    pub fn k(&self, j: usize) -> i64 {
        match j {
            1 => self.k1,
            2 => self.k2,
            3 => self.k3,
            _ => panic!("tangle index {j} out of range"),
        }
    }

    pub fn knot_name(&self) -> String {
        format!("P({}, {}, {})", 2 * self.k1 + 1, 2 * self.k2 + 1, 2 * self.k3)
    }
}

impl std::fmt::Display for PretzelParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.k1, self.k2, self.k3)
    }
}

/// A point `(t, s1, s2, s3, τ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharPoint {
    pub t: ComplexVal,
    pub s1: ComplexVal,
    pub s2: ComplexVal,
    pub s3: ComplexVal,
    pub tau: ComplexVal,
}

impl CharPoint {
    pub fn new(t: ComplexVal, s1: ComplexVal, s2: ComplexVal, s3: ComplexVal, tau: ComplexVal) -> Self {
        CharPoint { t, s1, s2, s3, tau }
    }

    pub fn real(t: f64, s1: f64, s2: f64, s3: f64, tau: f64) -> Self {
        let c = |x: f64| ComplexVal::new(x, 0.0);
        CharPoint::new(c(t), c(s1), c(s2), c(s3), c(tau))
    }

    pub fn s(&self, j: usize) -> ComplexVal {
        [self.s1, self.s2, self.s3][j - 1]
    }

    /// `λ = τ/t`; zero when `t` vanishes (every system using `λ` excludes `t = 0`).
    pub fn lambda(&self) -> ComplexVal {
        if self.t.norm() == 0.0 {
            ComplexVal::new(0.0, 0.0)
        } else {
            self.tau / self.t
        }
    }

    /// Values of every coordinate variable, `lambda` included.
    pub fn assignment(&self) -> Vec<(&'static str, ComplexVal)> {
        vec![
            ("t", self.t),
            ("s1", self.s1),
            ("s2", self.s2),
            ("s3", self.s3),
            ("tau", self.tau),
            ("lambda", self.lambda()),
        ]
    }

    pub fn is_finite(&self) -> bool {
        [self.t, self.s1, self.s2, self.s3, self.tau].iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn distance(&self, other: &CharPoint) -> f64 {
        [
            self.t - other.t,
            self.s1 - other.s1,
            self.s2 - other.s2,
            self.s3 - other.s3,
            self.tau - other.tau,
        ]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
    }
}

/// Derived quantities at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Invariants {
    pub sigma1: ComplexVal,
    pub sigma2: ComplexVal,
    pub sigma3: ComplexVal,
    pub delta: ComplexVal,
    pub kappa: ComplexVal,
    /// `τ/t`, absent when `t = 0`.
    pub lambda: Option<ComplexVal>,
    /// `tr(X1X2X3) = t³ + t − τ`.
    pub r: ComplexVal,
}

pub fn point_invariants(p: &CharPoint) -> Invariants {
    let (s1, s2, s3, t, tau) = (p.s1, p.s2, p.s3, p.t, p.tau);
    let sigma1 = s1 + s2 + s3;
    let sigma2 = s1 * s2 + s2 * s3 + s3 * s1;
    let sigma3 = s1 * s2 * s3;
    let delta = 4.0 + sigma3 + 2.0 * sigma2 - sigma1 * sigma1;
    let kappa = tau * tau - t * (sigma1 + 2.0) * tau + t * t * (sigma2 + 4.0);
    Invariants {
        sigma1,
        sigma2,
        sigma3,
        delta,
        kappa,
        lambda: (t.norm() > 0.0).then(|| tau / t),
        r: t * t * t + t - tau,
    }
}

/// `s_j` as a polynomial variable.
pub fn s_var(j: usize) -> MultiPoly {
    MultiPoly::var(["s1", "s2", "s3"][j - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_point_invariants() {
        let inv = point_invariants(&CharPoint::real(2.0, 2.0, 2.0, 2.0, 8.0));
        assert_eq!(inv.sigma1, ComplexVal::new(6.0, 0.0));
        assert_eq!(inv.sigma2, ComplexVal::new(12.0, 0.0));
        assert_eq!(inv.sigma3, ComplexVal::new(8.0, 0.0));
        assert_eq!(inv.delta, ComplexVal::new(0.0, 0.0));
        // 64 − 2·8·8 + 4·16
        assert_eq!(inv.kappa, ComplexVal::new(0.0, 0.0));
        assert_eq!(inv.lambda, Some(ComplexVal::new(4.0, 0.0)));
        assert_eq!(inv.r, ComplexVal::new(2.0, 0.0));
    }

    #[test]
    fn params_validation() {
        assert!(PretzelParams::new(0, 0, 1).is_ok());
        assert!(PretzelParams::new(0, 0, 0).is_err());
        assert!(PretzelParams::new(-1, 0, 1).is_err());
        assert_eq!(PretzelParams::new(1, 2, 3).unwrap().knot_name(), "P(3, 5, 6)");
    }
}
