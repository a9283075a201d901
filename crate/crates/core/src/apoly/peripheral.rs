use serde::{Deserialize, Serialize};

use super::word::longitude_word;
use super::ApolyError;
use crate::charvariety::{CharPoint, PretzelParams, RepTriple};
use crate::chebyshev::abg_eval;
use crate::polycore::ComplexVal;
use crate::sl2::{canonical_eigenvalue, power_via_omega, Mat2};

/// Upper-left entries of the meridian and longitude images in a frame where
/// both are upper triangular.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeripheralPair {
    pub u: ComplexVal,
    pub w: ComplexVal,
}

impl PeripheralPair {
    /// The pair read off in the other eigenbasis.
    pub fn inverse(&self) -> PeripheralPair {
        PeripheralPair { u: self.u.inv(), w: self.w.inv() }
    }

    pub fn assignment(&self) -> [(&'static str, ComplexVal); 2] {
        [("u", self.u), ("w", self.w)]
    }
}

/// A peripheral pair with the residuals of the checks made on the way.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeripheralCheck {
    pub pair: PeripheralPair,
    /// `‖ρ(𝔩)X1 − X1ρ(𝔩)‖ / (1 + ‖ρ(𝔩)‖·‖X1‖)`.
    pub commutator: f64,
    /// Distance of `ρ(𝔩)` from `((w−w⁻¹)X1 + (uw⁻¹−wu⁻¹)I)/(u−u⁻¹)`, relative to `1 + ‖ρ(𝔩)‖`.
    pub l1_residual: f64,
    /// `|(w+1)tr(B3X2⁻¹) − (u+u⁻¹w)tr(B3)|` over the sum of the two magnitudes.
    pub trace_identity_residual: f64,
}

/// Change of basis whose first column is an eigenvector of `m` for `lambda`.
fn eigenframe(m: &Mat2, lambda: ComplexVal) -> Mat2 {
    let one = ComplexVal::new(1.0, 0.0);
    let zero = ComplexVal::new(0.0, 0.0);
    let a = [m.a12, lambda - m.a11];
    let b = [lambda - m.a22, m.a21];
    let norm = |v: &[ComplexVal; 2]| v[0].norm().max(v[1].norm());
    let v = if norm(&a) >= norm(&b) { a } else { b };
    if norm(&v) == 0.0 {
        // m is scalar: any frame triangularizes it
        return Mat2::identity();
    }
    let scale = norm(&v);
    let v = [v[0] / scale, v[1] / scale];
    if v[0].norm() >= v[1].norm() {
        Mat2::new(v[0], zero, v[1], one)
    } else {
        Mat2::new(v[0], one, v[1], zero)
    }
}

fn check_in_frame(rep: &RepTriple, lambda: ComplexVal, tol: f64) -> Result<PeripheralCheck, ApolyError> {
    let x1 = rep.x1;
    let u = lambda;
    if (u - u.inv()).norm() < tol.sqrt() {
        return Err(ApolyError::ParabolicMeridian { u });
    }
    let long = longitude_word(rep.params).evaluate(rep);
    let commutator = (long * x1 - x1 * long).max_norm() / (1.0 + long.max_norm() * x1.max_norm());
    if !(commutator < tol) {
        return Err(ApolyError::NotCommuting { residual: commutator });
    }
    let p = eigenframe(&x1, u);
    let lt = long.conjugate_by(&p.inv());
    // the diagonal is (w, w⁻¹); read the small entry as the inverse of the
    // large one, which carries full relative precision
    let w = if lt.a11.norm() >= lt.a22.norm() { lt.a11 } else { lt.a22.inv() };
    let denom = u - u.inv();
    let predicted = x1 * ((w - w.inv()) / denom) + Mat2::scalar((u / w - w / u) / denom);
    let l1_residual = (long - predicted).max_norm() / (1.0 + long.max_norm());
    let [tr_b3x2inv, _, tr_b3] = b3_traces_direct(rep);
    let lhs = (w + 1.0) * tr_b3x2inv;
    let rhs = (u + w / u) * tr_b3;
    let scale = lhs.norm() + rhs.norm();
    let trace_identity_residual = if scale == 0.0 { 0.0 } else { (lhs - rhs).norm() / scale };
    Ok(PeripheralCheck { pair: PeripheralPair { u, w }, commutator, l1_residual, trace_identity_residual })
}

/// Reads `(u, w)` in the eigenbasis of `X1` for the eigenvalue with `|u| ≥ 1`
/// (ties towards non-negative imaginary part), after checking that the
/// longitude commutes with the meridian.
pub fn peripheral_pair(rep: &RepTriple, tol: f64) -> Result<PeripheralPair, ApolyError> {
    peripheral_check(rep, tol).map(|c| c.pair)
}

pub fn peripheral_check(rep: &RepTriple, tol: f64) -> Result<PeripheralCheck, ApolyError> {
    check_in_frame(rep, canonical_eigenvalue(rep.x1.trace()), tol)
}

/// Same as [`peripheral_check`] in the frame of the other eigenvalue `u⁻¹`.
pub fn peripheral_check_other_frame(rep: &RepTriple, tol: f64) -> Result<PeripheralCheck, ApolyError> {
    check_in_frame(rep, canonical_eigenvalue(rep.x1.trace()).inv(), tol)
}

/// `[tr(B3X2⁻¹), tr(B3X1), tr(B3)]` for `B3 = Y1^-k1 Y2^(k2+1)` from the matrices.
pub fn b3_traces_direct(rep: &RepTriple) -> [ComplexVal; 3] {
    let PretzelParams { k1, k2, .. } = rep.params;
    let b3 = power_via_omega(&rep.y(1), -k1) * power_via_omega(&rep.y(2), k2 + 1);
    [(b3 * rep.x2.inv()).trace(), (b3 * rep.x1).trace(), b3.trace()]
}

/// The closed forms
/// `tr(B3X2⁻¹) = tβ1β2(σ1+2−λ−t²)κλ / D`, `tr(B3X1) = tβ1β2(λ−t²)κλ / D`,
/// `tr(B3) = β1β2(σ1+2−2t²)κλ / D` with `D = (λ−2−s1)(λ−2−s2)` and
/// `κλ = κ/t² = λ² − (σ1+2)λ + σ2 + 4`, valid on the main component.
pub fn b3_traces_closed(p: &CharPoint, params: PretzelParams) -> Result<[ComplexVal; 3], ApolyError> {
    let (t, l) = (p.t, p.lambda());
    let d1 = l - 2.0 - p.s1;
    let d2 = l - 2.0 - p.s2;
    let scale = 1.0 + l.norm() + p.s1.norm().max(p.s2.norm());
    if d1.norm() < 1e-12 * scale || d2.norm() < 1e-12 * scale {
        return Err(ApolyError::Degenerate("λ − 2 − s_j vanishes".into()));
    }
    let beta1 = abg_eval(params.k1, p.s1).1;
    let beta2 = abg_eval(params.k2, p.s2).1;
    let sig1 = p.s1 + p.s2 + p.s3;
    let sig2 = p.s1 * p.s2 + p.s2 * p.s3 + p.s3 * p.s1;
    let kappa_l = l * l - (sig1 + 2.0) * l + sig2 + 4.0;
    let f = beta1 * beta2 * kappa_l / (d1 * d2);
    let t2 = t * t;
    Ok([t * f * (sig1 + 2.0 - l - t2), t * f * (l - t2), f * (sig1 + 2.0 - 2.0 * t2)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn eigenframe_triangularizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let m = Mat2::random_sl2(&mut rng);
            let u = canonical_eigenvalue(m.trace());
            let t = m.conjugate_by(&eigenframe(&m, u).inv());
            assert!(t.a21.norm() < 1e-9 * m.max_norm().powi(2), "{t:?}");
            assert!((t.a11 - u).norm() < 1e-9 * u.norm().max(1.0));
        }
    }

    #[test]
    fn identity_meridian_rejected() {
        let params = PretzelParams::new(0, 0, 1).unwrap();
        let rep = RepTriple::new(params, Mat2::identity(), Mat2::identity(), Mat2::identity());
        assert!(matches!(peripheral_pair(&rep, 1e-8), Err(ApolyError::ParabolicMeridian { .. })));
    }

    #[test]
    fn closed_forms_match_matrices() {
        use crate::charvariety::{sample_x3, build_representation_unchecked, SampleOptions};
        let params = PretzelParams::new(1, 2, 1).unwrap();
        for s in sample_x3(params, SampleOptions { count: 6, ..Default::default() }).unwrap() {
            let rep = build_representation_unchecked(&s.point, params, 1e-8).unwrap();
            let direct = b3_traces_direct(&rep);
            // expansion of B3 in Y1, Y3⁻¹, I, Y2 before the component's equations are used
            let (_, b1, g1) = abg_eval(1, s.point.s1);
            let (_, b2, g2) = abg_eval(2, s.point.s2);
            let (t, l) = (s.point.t, s.point.lambda());
            let expanded = t * (b1 * b2 - b1 * g2 - g1 * b2 + g1 * g2 * (s.point.s1 + s.point.s2 + 1.0 - l));
            assert!((expanded - direct[0]).norm() < 1e-8 * (1.0 + direct[0].norm()));
            let closed = b3_traces_closed(&s.point, params).unwrap();
            for (d, c) in direct.iter().zip(closed) {
                assert!((d - c).norm() < 1e-8 * (1.0 + d.norm()), "{d} vs {c}");
            }
        }
    }

    #[test]
    fn closed_forms_are_consistent() {
        // t·tr(B3) = tr(B3X2⁻¹) + tr(B3X1) holds for the closed forms at any point
        let p = CharPoint::new(
            ComplexVal::new(0.7, 0.2),
            ComplexVal::new(-1.3, 0.5),
            ComplexVal::new(0.4, -0.9),
            ComplexVal::new(2.2, 0.1),
            ComplexVal::new(1.9, -0.6),
        );
        let [a, b, c] = b3_traces_closed(&p, PretzelParams::new(1, 2, 1).unwrap()).unwrap();
        assert!((p.t * c - a - b).norm() < 1e-12 * (a.norm() + b.norm()));
    }
}
