//! 2×2 complex matrices, the SL(2,ℂ) trace identities, regularity tests and
//! reconstruction of a matrix triple from its seven trace coordinates.

use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chebyshev::omega_recur;
use crate::polycore::ComplexVal;

pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Sl2Error {
    #[error("matrix is within tolerance of ±I")]
    NearScalar,
    #[error("trace data inadmissible: quadratic residual {residual:.3e}")]
    Inadmissible { residual: f64 },
    #[error("degenerate construction: {0}")]
    Degenerate(String),
}

fn c(re: f64) -> ComplexVal {
    ComplexVal::new(re, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat2 {
    pub a11: ComplexVal,
    pub a12: ComplexVal,
    pub a21: ComplexVal,
    pub a22: ComplexVal,
}

impl Mat2 {
    pub fn new(a11: ComplexVal, a12: ComplexVal, a21: ComplexVal, a22: ComplexVal) -> Self {
        Mat2 { a11, a12, a21, a22 }
    }

    pub fn real(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Mat2::new(c(a11), c(a12), c(a21), c(a22))
    }

    pub fn identity() -> Self {
        Mat2::real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn scalar(x: ComplexVal) -> Self {
        Mat2::new(x, c(0.0), c(0.0), x)
    }

    pub fn trace(&self) -> ComplexVal {
        self.a11 + self.a22
    }

    pub fn det(&self) -> ComplexVal {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    /// General inverse (adjugate over determinant).
    pub fn inv(&self) -> Mat2 {
        let d = self.det();
        Mat2::new(self.a22 / d, -self.a12 / d, -self.a21 / d, self.a11 / d)
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        [self.a11, self.a12, self.a21, self.a22].iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn entries(&self) -> [ComplexVal; 4] {
        [self.a11, self.a12, self.a21, self.a22]
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `P·self·P⁻¹`.
    pub fn conjugate_by(&self, p: &Mat2) -> Mat2 {
        *p * *self * p.inv()
    }

    /// Integer power by repeated multiplication (inverse powers for `k < 0`).
    pub fn pow_direct(&self, k: i64) -> Mat2 {
        let base = if k < 0 { self.inv() } else { *self };
        (0..k.unsigned_abs()).fold(Mat2::identity(), |acc, _| acc * base)
    }

    /// Scaled to determinant 1 (either square root of the determinant).
    pub fn normalized(&self) -> Mat2 {
        *self * self.det().sqrt().inv()
    }

    /// Eigenvectors, one per distinct eigenvalue; empty for scalar matrices.
    pub fn eigenvectors(&self, tol: f64) -> Vec<[ComplexVal; 2]> {
        let scale = self.max_norm().max(1.0);
        if self.a12.norm() < tol * scale
            && self.a21.norm() < tol * scale
            && (self.a11 - self.a22).norm() < tol * scale
        {
            return vec![];
        }
        let t = self.trace();
        let disc = (t * t - 4.0 * self.det()).sqrt();
        let mut mus = vec![(t + disc) / 2.0];
        if disc.norm() > tol * scale {
            mus.push((t - disc) / 2.0);
        }
        mus.into_iter()
            .map(|mu| {
                let v1 = [self.a12, mu - self.a11];
                let v2 = [mu - self.a22, self.a21];
                let n1 = v1[0].norm() + v1[1].norm();
                let n2 = v2[0].norm() + v2[1].norm();
                let v = if n1 >= n2 { v1 } else { v2 };
                let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
                [v[0] / n, v[1] / n]
            })
            .collect()
    }

    /// Whether `v` (unit) is an eigenvector, via the 2×2 wedge `Mv ∧ v`.
    pub fn has_eigenvector(&self, v: &[ComplexVal; 2], tol: f64) -> bool {
        let mv0 = self.a11 * v[0] + self.a12 * v[1];
        let mv1 = self.a21 * v[0] + self.a22 * v[1];
        (mv0 * v[1] - mv1 * v[0]).norm() <= tol * self.max_norm().max(1.0)
    }

    /// Random element of SL(2,ℂ) with standard normal entries before scaling.
    pub fn random_sl2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
        loop {
            let mut g = || ComplexVal::new(gauss(rng), gauss(rng));
            let m = Mat2::new(g(), g(), g(), g());
            if m.det().norm() > 0.1 {
                return m.normalized();
            }
        }
    }
}

pub(crate) fn gauss<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // Box–Muller
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }
}

impl Mul<ComplexVal> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: ComplexVal) -> Mat2 {
        Mat2::new(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a11 + o.a11, self.a12 + o.a12, self.a21 + o.a21, self.a22 + o.a22)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a11 - o.a11, self.a12 - o.a12, self.a21 - o.a21, self.a22 - o.a22)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self * c(-1.0)
    }
}

/// `X^k = ω_k(t)·X − ω_{k−1}(t)·I` for `X ∈ SL(2,ℂ)`.
pub fn power_via_omega(x: &Mat2, k: i64) -> Mat2 {
    let t = x.trace();
    *x * omega_recur(k, t) - Mat2::scalar(omega_recur(k - 1, t))
}

/// Residuals of `XYX = tr(XY)·X − Y⁻¹` and
/// `XY + YX = (tr(XY) − tr X·tr Y)·I + tr Y·X + tr X·Y`, max-entry norm.
pub fn pair_identity_residuals(x: &Mat2, y: &Mat2) -> (f64, f64) {
    let (t1, t2, t12) = (x.trace(), y.trace(), (*x * *y).trace());
    let r1 = (*x * *y * *x - (*x * t12 - y.inv())).max_norm();
    let r2 = (*x * *y + *y * *x - (Mat2::scalar(t12 - t1 * t2) + *x * t2 + *y * t1)).max_norm();
    (r1, r2)
}

/// Singular values of a complex matrix given by rows, via one-sided Jacobi.
pub(crate) fn singular_values(rows: &[Vec<ComplexVal>]) -> Vec<f64> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut cols: Vec<Vec<ComplexVal>> = (0..n).map(|j| (0..m).map(|i| rows[i][j]).collect()).collect();
    for _sweep in 0..60 {
        let mut rotated = false;
        for i in 0..n {
            for j in i + 1..n {
                let alpha: f64 = cols[i].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum();
                let gamma: ComplexVal = cols[i].iter().zip(&cols[j]).map(|(a, b)| a.conj() * b).sum();
                let g = gamma.norm();
                if g <= 1e-15 * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for r in 0..m {
                    let a = cols[i][r];
                    let b = cols[j][r] * phase.conj();
                    cols[i][r] = a * cs - b * sn;
                    cols[j][r] = a * sn + b * cs;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = cols.iter().map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

fn near_scalar_identity(x: &Mat2, tol: f64) -> bool {
    [1.0, -1.0].iter().any(|&s| (*x - Mat2::scalar(c(s))).max_norm() < tol)
}

/// `{X, Y}` has no common eigenvector, tested as linear independence of
/// `I, X, Y, XY` (smallest singular value above `tol` times the largest).
pub fn regular_pair(x: &Mat2, y: &Mat2, tol: f64) -> Result<bool, Sl2Error> {
    if near_scalar_identity(x, tol) || near_scalar_identity(y, tol) {
        return Err(Sl2Error::NearScalar);
    }
    let rows: Vec<Vec<ComplexVal>> =
        [Mat2::identity(), *x, *y, *x * *y].iter().map(|m| m.entries().to_vec()).collect();
    let sv = singular_values(&rows);
    Ok(sv[3] > tol * sv[0])
}

/// No vector is an eigenvector of all three matrices.
pub fn regular_triple(x1: &Mat2, x2: &Mat2, x3: &Mat2, tol: f64) -> bool {
    let mats = [x1, x2, x3];
    let candidates: Vec<[ComplexVal; 2]> = mats.iter().flat_map(|m| m.eigenvectors(tol)).collect();
    if candidates.is_empty() {
        // all three scalar
        return false;
    }
    !candidates.iter().any(|v| mats.iter().all(|m| m.has_eigenvector(v, tol)))
}

/// Coefficients of `tr(X1X2X3)² − ν1·tr(X1X2X3) + ν0 = 0` and its two roots.
#[derive(Debug, Clone, PartialEq)]
pub struct NuQuadratic {
    pub nu0: ComplexVal,
    pub nu1: ComplexVal,
    pub roots: [ComplexVal; 2],
    /// Which pair-trace sum enters ν0; the symmetric form is used.
    pub nu0_form: &'static str,
}

pub fn nu_quadratic(t: ComplexVal, t12: ComplexVal, t23: ComplexVal, t13: ComplexVal) -> NuQuadratic {
    let nu0 = t * t * (3.0 - t12 - t23 - t13) + t12 * t12 + t23 * t23 + t13 * t13 + t12 * t23 * t13 - 4.0;
    let nu1 = t * (t12 + t23 + t13) - t * t * t;
    let disc = (nu1 * nu1 - 4.0 * nu0).sqrt();
    NuQuadratic {
        nu0,
        nu1,
        roots: [(nu1 + disc) / 2.0, (nu1 - disc) / 2.0],
        nu0_form: "t^2*(3 - t12 - t23 - t13)",
    }
}

/// Trace coordinates of an ordered triple with a common trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceData {
    pub t: ComplexVal,
    pub t12: ComplexVal,
    pub t23: ComplexVal,
    pub t13: ComplexVal,
    pub t123: ComplexVal,
}

impl TraceData {
    pub fn measure(x1: &Mat2, x2: &Mat2, x3: &Mat2) -> TraceData {
        TraceData {
            t: x1.trace(),
            t12: (*x1 * *x2).trace(),
            t23: (*x2 * *x3).trace(),
            t13: (*x1 * *x3).trace(),
            t123: (*x1 * *x2 * *x3).trace(),
        }
    }

    /// Residual of the realizability quadratic, relative to its coefficient scale.
    pub fn admissibility_residual(&self) -> f64 {
        let q = nu_quadratic(self.t, self.t12, self.t23, self.t13);
        let r = self.t123;
        let value = r * r - q.nu1 * r + q.nu0;
        value.norm() / (1.0 + r.norm_sqr() + q.nu1.norm() * r.norm() + q.nu0.norm())
    }

    /// Largest coordinate mismatch against another trace vector.
    pub fn max_difference(&self, other: &TraceData) -> f64 {
        [
            self.t - other.t,
            self.t12 - other.t12,
            self.t23 - other.t23,
            self.t13 - other.t13,
            self.t123 - other.t123,
        ]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
    }
}

/// Eigenvalue `u` of a trace-`t` element: the root of `u² − tu + 1` with
/// `|u| ≥ 1`, ties broken towards non-negative imaginary part.
pub fn canonical_eigenvalue(t: ComplexVal) -> ComplexVal {
    let disc = (t * t - 4.0).sqrt();
    let a = (t + disc) / 2.0;
    let b = (t - disc) / 2.0;
    let (na, nb) = (a.norm(), b.norm());
    if (na - nb).abs() <= 1e-12 * na.max(1.0) {
        if a.im >= b.im {
            a
        } else {
            b
        }
    } else if na > nb {
        a
    } else {
        b
    }
}

fn solve4(a: [[ComplexVal; 4]; 4], b: [ComplexVal; 4]) -> Option<[ComplexVal; 4]> {
    let mut m: Vec<Vec<ComplexVal>> = a.iter().zip(b).map(|(row, r)| {
        let mut v = row.to_vec();
        v.push(r);
        v
    }).collect();
    let scale = m.iter().flat_map(|r| r[..4].iter()).map(|z| z.norm()).fold(0.0, f64::max);
    for col in 0..4 {
        let piv = (col..4).max_by(|&i, &j| m[i][col].norm().partial_cmp(&m[j][col].norm()).unwrap())?;
        if m[piv][col].norm() <= 1e-13 * scale {
            return None;
        }
        m.swap(col, piv);
        for i in 0..4 {
            if i != col {
                let f = m[i][col] / m[col][col];
                for j in col..5 {
                    let sub = f * m[col][j];
                    m[i][j] -= sub;
                }
            }
        }
    }
    Some([0, 1, 2, 3].map(|i| m[i][4] / m[i][i]))
}

/// Builds `(Xa, Xb, Xc)` with common trace `t`, `tr(XaXb) = tab`,
/// `tr(XaXc) = tac`, `tr(XbXc) = tbc`, `tr(XaXbXc) = tabc`.
fn construct(t: ComplexVal, tab: ComplexVal, tbc: ComplexVal, tac: ComplexVal, tabc: ComplexVal, tol: f64) -> Result<[Mat2; 3], Sl2Error> {
    let u = canonical_eigenvalue(t);
    let parabolic = [1.0, -1.0].into_iter().find(|s| (t - 2.0 * s).norm() < tol);
    let (xa, xb) = match parabolic {
        Some(s) => (Mat2::real(s, 1.0, 0.0, s), Mat2::new(c(s), c(0.0), tab - 2.0, c(s))),
        None => {
            let ui = u.inv();
            let q = tab - u * u - ui * ui;
            (Mat2::new(u, c(1.0), c(0.0), ui), Mat2::new(u, c(0.0), q, ui))
        }
    };
    // tr(M·X) = m11 x11 + m21 x12 + m12 x21 + m22 x22
    let lin = |m: Mat2| [m.a11, m.a21, m.a12, m.a22];
    let xab = xa * xb;
    let sol = solve4([lin(Mat2::identity()), lin(xa), lin(xb), lin(xab)], [t, tac, tbc, tabc])
        .ok_or_else(|| Sl2Error::Degenerate("I, Xa, Xb, XaXb are linearly dependent".into()))?;
    let xc = Mat2::new(sol[0], sol[1], sol[2], sol[3]);
    let det_err = (xc.det() - 1.0).norm();
    if det_err > tol * (1.0 + xc.max_norm().powi(2)) {
        return Err(Sl2Error::Degenerate(format!("third matrix has det − 1 = {det_err:.3e}")));
    }
    Ok([xa, xb, xc])
}

/// Reconstructs a regular triple from its trace coordinates. Tries the base
/// pairs (1,2), (1,3), (2,3) in turn; the odd reorderings use the other root
/// `ν1 − t123` of the realizability quadratic as their triple trace.
pub fn triple_from_traces(d: &TraceData, tol: f64) -> Result<(Mat2, Mat2, Mat2), Sl2Error> {
    let residual = d.admissibility_residual();
    if residual > tol {
        return Err(Sl2Error::Inadmissible { residual });
    }
    let nu1 = nu_quadratic(d.t, d.t12, d.t23, d.t13).nu1;
    let other = nu1 - d.t123;
    let attempts: [([usize; 3], ComplexVal, ComplexVal, ComplexVal, ComplexVal); 3] = [
        ([0, 1, 2], d.t12, d.t23, d.t13, d.t123),
        ([0, 2, 1], d.t13, d.t23, d.t12, other),
        ([1, 2, 0], d.t23, d.t13, d.t12, d.t123),
    ];
    let mut last_err = Sl2Error::Degenerate("no base pair attempted".into());
    for (perm, tab, tbc, tac, tabc) in attempts {
        match construct(d.t, tab, tbc, tac, tabc, tol) {
            Ok(built) => {
                let mut x = [Mat2::identity(); 3];
                for (slot, m) in perm.iter().zip(built) {
                    x[*slot] = m;
                }
                if !regular_triple(&x[0], &x[1], &x[2], tol) {
                    last_err = Sl2Error::Degenerate("constructed triple is not regular".into());
                    continue;
                }
                let measured = TraceData::measure(&x[0], &x[1], &x[2]);
                let scale = 1.0 + d.t123.norm() + d.t12.norm() + d.t23.norm() + d.t13.norm();
                if measured.max_difference(d) > tol * scale {
                    last_err = Sl2Error::Degenerate("reconstructed traces disagree".into());
                    continue;
                }
                return Ok((x[0], x[1], x[2]));
            }
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z(re: f64, im: f64) -> ComplexVal {
        ComplexVal::new(re, im)
    }

    #[test]
    fn power_examples() {
        let i = Mat2::identity();
        assert!((power_via_omega(&i, 7) - i).max_norm() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = Mat2::random_sl2(&mut rng);
        let inv = power_via_omega(&x, -1);
        assert!((inv - (Mat2::scalar(x.trace()) - x)).max_norm() < 1e-12);
        let x4 = x * x * x * x;
        assert!((power_via_omega(&x, 4) - x4).max_norm() < 1e-9 * x4.max_norm().max(1.0));
    }

    #[test]
    fn pair_identity_examples() {
        let i = Mat2::identity();
        assert_eq!(pair_identity_residuals(&i, &i), (0.0, 0.0));
        let d = Mat2::real(2.0, 0.0, 0.0, 0.5);
        assert_eq!(pair_identity_residuals(&d, &i), (0.0, 0.0));
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (x, y) = (Mat2::random_sl2(&mut rng), Mat2::random_sl2(&mut rng));
        let (r1, r2) = pair_identity_residuals(&x, &y);
        assert!(r1 < 1e-9 && r2 < 1e-9);
    }

    #[test]
    fn regular_pair_examples() {
        let x = Mat2::real(2.0, 0.0, 0.0, 0.5);
        let y = Mat2::real(1.0, 1.0, 0.0, 1.0);
        assert_eq!(regular_pair(&x, &y, 1e-8), Ok(false));
        let y2 = Mat2::real(1.0, 0.0, 1.0, 1.0) * Mat2::real(1.0, 1.0, 0.0, 1.0);
        assert_eq!(regular_pair(&x, &y2, 1e-8), Ok(true));
        // oracle: no eigenvector of x is an eigenvector of y2
        assert!(x.eigenvectors(1e-12).iter().all(|v| !y2.has_eigenvector(v, 1e-9)));
        let p = Mat2::real(1.0, 1.0, 0.0, 1.0);
        let q = Mat2::real(1.0, 2.0, 0.0, 1.0);
        assert_eq!(regular_pair(&p, &q, 1e-8), Ok(false));
        assert_eq!(regular_pair(&Mat2::identity(), &q, 1e-8), Err(Sl2Error::NearScalar));
        assert_eq!(regular_pair(&-Mat2::identity(), &q, 1e-8), Err(Sl2Error::NearScalar));
    }

    #[test]
    fn regular_triple_examples() {
        let i = Mat2::identity();
        assert!(!regular_triple(&i, &i, &i, 1e-8));
        let a = Mat2::real(1.0, 1.0, 0.0, 1.0);
        let b = Mat2::real(2.0, 3.0, 0.0, 0.5);
        let c3 = Mat2::real(-1.0, 5.0, 0.0, -1.0);
        assert!(!regular_triple(&a, &b, &c3, 1e-8));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (x, y, w) = (Mat2::random_sl2(&mut rng), Mat2::random_sl2(&mut rng), Mat2::random_sl2(&mut rng));
        assert!(regular_triple(&x, &y, &w, 1e-8));
    }

    #[test]
    fn nu_quadratic_examples() {
        let q = nu_quadratic(z(2.0, 0.0), z(2.0, 0.0), z(2.0, 0.0), z(2.0, 0.0));
        assert!((q.nu1 - 4.0).norm() < 1e-15 && (q.nu0 - 4.0).norm() < 1e-15);
        assert!(q.roots.iter().all(|r| (r - 2.0).norm() < 1e-7));
        let q = nu_quadratic(z(0.0, 0.0), z(0.0, 0.0), z(0.0, 0.0), z(0.0, 0.0));
        assert!((q.nu0 + 4.0).norm() < 1e-15 && q.nu1.norm() < 1e-15);
        let mut r: Vec<f64> = q.roots.iter().map(|x| x.re).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(r, vec![-2.0, 2.0]);
        // direct arithmetic: 0 + (4+4+4) + 8 − 4 = 16
        let q = nu_quadratic(z(0.0, 0.0), z(2.0, 0.0), z(2.0, 0.0), z(2.0, 0.0));
        assert!((q.nu0 - 16.0).norm() < 1e-15 && q.nu1.norm() < 1e-15);
        assert!(q.roots.iter().any(|r| (r - z(0.0, 4.0)).norm() < 1e-12));
        assert!(q.roots.iter().any(|r| (r - z(0.0, -4.0)).norm() < 1e-12));
    }

    #[test]
    fn triple_identity_data_rejected() {
        let d = TraceData { t: z(2.0, 0.0), t12: z(2.0, 0.0), t23: z(2.0, 0.0), t13: z(2.0, 0.0), t123: z(2.0, 0.0) };
        assert!(matches!(triple_from_traces(&d, 1e-8), Err(Sl2Error::Degenerate(_))));
    }

    #[test]
    fn triple_zero_traces() {
        let d = TraceData { t: z(0.0, 0.0), t12: z(0.0, 0.0), t23: z(0.0, 0.0), t13: z(0.0, 0.0), t123: z(2.0, 0.0) };
        let (x1, x2, x3) = triple_from_traces(&d, 1e-8).unwrap();
        assert!(TraceData::measure(&x1, &x2, &x3).max_difference(&d) < 1e-8);
        assert!(regular_triple(&x1, &x2, &x3, 1e-8));
        for m in [x1, x2, x3] {
            assert!((m.det() - 1.0).norm() < 1e-9);
        }
    }

    #[test]
    fn triple_inadmissible() {
        let d = TraceData { t: z(0.0, 0.0), t12: z(0.0, 0.0), t23: z(0.0, 0.0), t13: z(0.0, 0.0), t123: z(1.0, 0.0) };
        assert!(matches!(triple_from_traces(&d, 1e-8), Err(Sl2Error::Inadmissible { .. })));
    }

    #[test]
    fn triple_roundtrip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let x1 = Mat2::random_sl2(&mut rng);
            let p = Mat2::random_sl2(&mut rng);
            let q = Mat2::random_sl2(&mut rng);
            let (x2, x3) = (x1.conjugate_by(&p), x1.conjugate_by(&q));
            let d = TraceData::measure(&x1, &x2, &x3);
            let (y1, y2, y3) = triple_from_traces(&d, 1e-8).unwrap();
            assert!(TraceData::measure(&y1, &y2, &y3).max_difference(&d) < 1e-8);
        }
    }

    #[test]
    fn singular_values_of_diagonal() {
        let rows = vec![vec![z(3.0, 0.0), z(0.0, 0.0)], vec![z(0.0, 0.0), z(0.0, -2.0)]];
        let sv = singular_values(&rows);
        assert!((sv[0] - 3.0).abs() < 1e-14 && (sv[1] - 2.0).abs() < 1e-14);
    }
}
