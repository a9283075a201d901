use serde::Serialize;

use super::{membership, CharPoint, CharVarError, PretzelParams};
use crate::chebyshev::abg_eval;
use crate::polycore::ComplexVal;
use crate::sl2::{canonical_eigenvalue, power_via_omega, triple_from_traces, Mat2, TraceData};

/// Images `X1 = ρ(x1)`, `X2 = ρ(x2)`, `X3 = ρ(x3⁻¹)` of a representation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RepTriple {
    pub params: PretzelParams,
    pub x1: Mat2,
    pub x2: Mat2,
    pub x3: Mat2,
}

impl RepTriple {
    pub fn new(params: PretzelParams, x1: Mat2, x2: Mat2, x3: Mat2) -> Self {
        RepTriple { params, x1, x2, x3 }
    }

    pub fn x(&self, j: usize) -> Mat2 {
        [self.x1, self.x2, self.x3][j - 1]
    }

    /// `Y1 = X2X3⁻¹`, `Y2 = X3X1⁻¹`, `Y3 = X1X2⁻¹`.
    pub fn y(&self, j: usize) -> Mat2 {
        match j {
            1 => self.x2 * self.x3.inv(),
            2 => self.x3 * self.x1.inv(),
            3 => self.x1 * self.x2.inv(),
            _ => panic!("tangle index {j} out of range"),
        }
    }

    /// Trace coordinates of the triple.
    pub fn point(&self) -> CharPoint {
        let t = self.x1.trace();
        CharPoint::new(
            t,
            self.y(1).trace(),
            self.y(2).trace(),
            self.y(3).trace(),
            t * t * t + t - (self.x1 * self.x2 * self.x3).trace(),
        )
    }

    /// Largest entry of the three relation differences
    /// `Y1^k1 X2 Y1^-k1 − Y2^(k2+1) X1 Y2^-(k2+1)`,
    /// `Y2^k2 X3 Y2^-k2 − Y3^k3 X1⁻¹ Y3^-k3`,
    /// `Y3^k3 X2 Y3^-k3 − Y1^(k1+1) X3⁻¹ Y1^-(k1+1)`.
    pub fn relation_residual(&self) -> f64 {
        let PretzelParams { k1, k2, k3 } = self.params;
        let conj = |y: &Mat2, k: i64, x: &Mat2| power_via_omega(y, k) * *x * power_via_omega(y, -k);
        let (y1, y2, y3) = (self.y(1), self.y(2), self.y(3));
        let r1 = conj(&y1, k1, &self.x2) - conj(&y2, k2 + 1, &self.x1);
        let r2 = conj(&y2, k2, &self.x3) - conj(&y3, k3, &self.x1.inv());
        let r3 = conj(&y3, k3, &self.x2) - conj(&y1, k1 + 1, &self.x3.inv());
        r1.max_norm().max(r2.max_norm()).max(r3.max_norm())
    }

    pub fn is_finite(&self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }
}

/// `A1 = Y1^k1 X2 Y1^-k1 X3`, `A2 = Y2^k2 X3 Y2^-k2 X1`, `A3 = Y3^k3 X1⁻¹ Y3^-k3 X1`.
/// The first relation holds exactly when `A1 = A2`.
pub fn a_matrices(rep: &RepTriple) -> [Mat2; 3] {
    let PretzelParams { k1, k2, k3 } = rep.params;
    let conj = |y: &Mat2, k: i64, x: &Mat2| power_via_omega(y, k) * *x * power_via_omega(y, -k);
    [
        conj(&rep.y(1), k1, &rep.x2) * rep.x3,
        conj(&rep.y(2), k2, &rep.x3) * rep.x1,
        conj(&rep.y(3), k3, &rep.x1.inv()) * rep.x1,
    ]
}

/// Closed form of `tr A_j` from `t`, `s = s_j` and `k = k_j`:
/// `2 − (s + 2 − t²)(γ − β)²` for `j = 1, 2` and
/// `2 + (s − 2)(s + 2 − t²)β²` for `j = 3`.
pub fn aj_trace_closed(j: usize, t: ComplexVal, s: ComplexVal, k: i64) -> ComplexVal {
    let (_, beta, gamma) = abg_eval(k, s);
    let w = s + 2.0 - t * t;
    match j {
        1 | 2 => 2.0 - w * (gamma - beta) * (gamma - beta),
        3 => 2.0 + (s - 2.0) * w * beta * beta,
        _ => panic!("tangle index {j} out of range"),
    }
}

/// Two trace-`t` matrices `(A, B)` with `tr(AB) = t_pair`.
pub fn pair_with_trace(t: ComplexVal, t_pair: ComplexVal) -> (Mat2, Mat2) {
    let one = ComplexVal::new(1.0, 0.0);
    let zero = ComplexVal::new(0.0, 0.0);
    if let Some(e) = [1.0, -1.0].into_iter().find(|e| (t - 2.0 * e).norm() < 1e-12) {
        let e = ComplexVal::new(e, 0.0);
        return (Mat2::new(e, one, zero, e), Mat2::new(e, zero, t_pair - 2.0, e));
    }
    let u = canonical_eigenvalue(t);
    let ui = u.inv();
    (Mat2::new(u, one, zero, ui), Mat2::new(u, zero, t_pair - u * u - ui * ui, ui))
}

/// Realizes a point as a matrix triple without checking which component it
/// lies on; the caller decides what to make of the relation residual.
pub fn build_representation_unchecked(p: &CharPoint, params: PretzelParams, tol: f64) -> Result<RepTriple, CharVarError> {
    let t2 = p.t * p.t;
    let data = TraceData {
        t: p.t,
        t12: t2 - p.s3,
        t23: t2 - p.s1,
        t13: t2 - p.s2,
        t123: t2 * p.t + p.t - p.tau,
    };
    let (x1, x2, x3) = triple_from_traces(&data, tol)?;
    Ok(RepTriple::new(params, x1, x2, x3))
}

/// Realizes a point of the variety and checks the group relations.
pub fn build_representation(p: &CharPoint, params: PretzelParams, tol: f64) -> Result<RepTriple, CharVarError> {
    if membership(p, params, tol).is_empty() {
        return Err(CharVarError::NotOnVariety(format!("{p:?}")));
    }
    let rep = build_representation_unchecked(p, params, tol)?;
    let residual = rep.relation_residual();
    if !(residual < tol) {
        return Err(CharVarError::ComponentDiscrepancy { residual });
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn z(re: f64, im: f64) -> ComplexVal {
        ComplexVal::new(re, im)
    }

    #[test]
    fn pair_has_requested_traces() {
        for t in [z(0.7, 0.2), z(2.0, 0.0), z(-2.0, 0.0)] {
            let (a, b) = pair_with_trace(t, z(-1.3, 0.4));
            assert!((a.trace() - t).norm() < 1e-12 && (b.trace() - t).norm() < 1e-12);
            assert!(((a * b).trace() - z(-1.3, 0.4)).norm() < 1e-12);
            assert!((a.det() - 1.0).norm() < 1e-12 && (b.det() - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn closed_traces_match_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let params = PretzelParams::new(2, 2, 2).unwrap();
        for _ in 0..20 {
            let t = z(rng.gen_range(-2.5..2.5), rng.gen_range(-1.0..1.0));
            let s = z(rng.gen_range(-2.5..2.5), rng.gen_range(-1.0..1.0));
            // A1 only sees (X2, X3); A3 only sees (X1, X2).
            let (x2, x3) = pair_with_trace(t, t * t - s);
            let rep = RepTriple::new(params, Mat2::identity(), x2, x3);
            let a1 = a_matrices(&rep)[0];
            assert!((a1.trace() - aj_trace_closed(1, t, s, 2)).norm() < 1e-9 * (1.0 + a1.max_norm()));
            let (x1, x2) = pair_with_trace(t, t * t - s);
            let rep = RepTriple::new(params, x1, x2, Mat2::identity());
            let a3 = a_matrices(&rep)[2];
            assert!((a3.trace() - aj_trace_closed(3, t, s, 2)).norm() < 1e-9 * (1.0 + a3.max_norm()));
        }
    }

    #[test]
    fn a1_equals_a2_iff_first_relation() {
        // A1 − A2 = (Y1^k1 X2 Y1^-k1 − Y2^(k2+1) X1 Y2^-(k2+1)) X3 after
        // rewriting Y2^k2 X3 Y2^-k2 X1 = Y2^(k2+1) X1 Y2^-(k2+1) X3.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let params = PretzelParams::new(1, 2, 1).unwrap();
        let rep = RepTriple::new(params, Mat2::random_sl2(&mut rng), Mat2::random_sl2(&mut rng), Mat2::random_sl2(&mut rng));
        let [a1, a2, _] = a_matrices(&rep);
        let conj = |y: &Mat2, k: i64, x: &Mat2| power_via_omega(y, k) * *x * power_via_omega(y, -k);
        let diff = (conj(&rep.y(1), 1, &rep.x2) - conj(&rep.y(2), 3, &rep.x1)) * rep.x3;
        assert!(((a1 - a2) - diff).max_norm() < 1e-8 * (1.0 + diff.max_norm()));
    }
}
