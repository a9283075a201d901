use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{build_representation_unchecked, point_invariants, s_var, CharPoint, CharVarError, PretzelParams};
use crate::chebyshev::{abg, abg_eval, first_kind_poly_in, omega_eval};
use crate::polycore::{ComplexVal, MultiPoly};

/// Smallest magnitude an inequation may take at a member point.
pub const INEQUATION_MARGIN: f64 = 1e-6;

fn v(name: &str) -> MultiPoly {
    MultiPoly::var(name)
}

fn int(c: i64) -> MultiPoly {
    MultiPoly::int(c)
}

/// Elementary symmetric functions of `s1, s2, s3`.
pub fn sigma_polys() -> [MultiPoly; 3] {
    let (s1, s2, s3) = (s_var(1), s_var(2), s_var(3));
    [&(&s1 + &s2) + &s3, &(&(&s1 * &s2) + &(&s2 * &s3)) + &(&s3 * &s1), &(&s1 * &s2) * &s3]
}

/// `δ = 4 + σ3 + 2σ2 − σ1²`.
pub fn delta_poly() -> MultiPoly {
    let [s1, s2, s3] = sigma_polys();
    &(&(&int(4) + &s3) + &(&int(2) * &s2)) - &(&s1 * &s1)
}

/// `κ = τ² − t(σ1 + 2)τ + t²(σ2 + 4)`.
pub fn kappa_poly() -> MultiPoly {
    let [s1, s2, _] = sigma_polys();
    let (t, tau) = (v("t"), v("tau"));
    &(&(&tau * &tau) - &(&(&t * &(&s1 + &int(2))) * &tau)) + &(&(&t * &t) * &(&s2 + &int(4)))
}

/// `λ² − (σ1 + 2)λ + σ2 + 4`, so that `κ = t²·(this)` when `τ = tλ`.
pub fn kappa_lambda_poly() -> MultiPoly {
    let [s1, s2, _] = sigma_polys();
    let l = v("lambda");
    &(&(&l * &l) - &(&(&s1 + &int(2)) * &l)) + &(&s2 + &int(4))
}

fn kappa_minus_delta() -> MultiPoly {
    &kappa_poly() - &delta_poly()
}

/// `γ_j − β_j` (or `γ_j + β_j` with `sign = -1`).
fn gamma_beta(params: PretzelParams, j: usize, sign: i64) -> MultiPoly {
    let (_, beta, gamma) = abg(params.k(j), ["s1", "s2", "s3"][j - 1]);
    &gamma - &(&int(sign) * &beta)
}

fn beta3(params: PretzelParams) -> MultiPoly {
    abg(params.k3, "s3").1
}

/// The four polynomials cutting out the main component in `(t, s1, s2, s3, λ)`:
/// `(λ−2−s_j)γ_j − (σ1−s_j−λ)β_j` for `j = 1, 2`,
/// `(σ1+2−2λ)α3 − (s3²−s3λ+σ1−2)β3`, and `t²(λ²−(σ1+2)λ+σ2+4) − δ`.
pub fn x3_equations(params: PretzelParams) -> Vec<MultiPoly> {
    let [sig1, _, _] = sigma_polys();
    let l = v("lambda");
    let mut eqs = Vec::new();
    for j in 1..=2 {
        let s = s_var(j);
        let (_, beta, gamma) = abg(params.k(j), ["s1", "s2", "s3"][j - 1]);
        let left = &(&(&l - &int(2)) - &s) * &gamma;
        let right = &(&(&sig1 - &s) - &l) * &beta;
        eqs.push(&left - &right);
    }
    let s3 = s_var(3);
    let (alpha3, beta3, _) = abg(params.k3, "s3");
    let left = &(&(&sig1 + &int(2)) - &(&int(2) * &l)) * &alpha3;
    let inner = &(&(&(&s3 * &s3) - &(&s3 * &l)) + &sig1) - &int(2);
    eqs.push(&left - &(&inner * &beta3));
    let t = v("t");
    eqs.push(&(&(&t * &t) * &kappa_lambda_poly()) - &delta_poly());
    eqs
}

/// Factors that cannot vanish on the main component: `s3 − 2`,
/// `s_j − t² + 2`, `σ1 + 2 − 2λ` and `t`.
pub fn x3_excluded_factors() -> Vec<MultiPoly> {
    let [sig1, _, _] = sigma_polys();
    let t2 = &v("t") * &v("t");
    let mut out = vec![&s_var(3) - &int(2)];
    for j in 1..=3 {
        out.push(&(&s_var(j) - &t2) + &int(2));
    }
    out.push(&(&sig1 + &int(2)) - &(&int(2) * &v("lambda")));
    out.push(v("t"));
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NumericCondition {
    /// `var` is real and lies in `[lo, hi]`.
    RealInterval { var: String, lo: f64, hi: f64 },
    /// `|var − value| ≤ radius`.
    Near { var: String, value: f64, radius: f64 },
}

impl NumericCondition {
    fn holds(&self, p: &CharPoint, tol: f64) -> bool {
        let get = |name: &str| p.assignment().into_iter().find(|(n, _)| *n == name).map(|(_, x)| x);
        match self {
            NumericCondition::RealInterval { var, lo, hi } => get(var).is_some_and(|x| {
                x.im.abs() <= tol * (1.0 + x.re.abs()) && x.re >= lo - tol && x.re <= hi + tol
            }),
            NumericCondition::Near { var, value, radius } => {
                get(var).is_some_and(|x| (x - ComplexVal::new(*value, 0.0)).norm() <= *radius)
            }
        }
    }
}

/// Equations and inequations of one component, in the variables
/// `t, s1, s2, s3, tau` (and `lambda = tau/t` where noted).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentSystem {
    pub label: String,
    pub equations: Vec<MultiPoly>,
    pub inequations: Vec<MultiPoly>,
    /// A second reading of the inequations; membership reports both.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alternative_inequations: Vec<MultiPoly>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub conditions: Vec<NumericCondition>,
    pub notes: Vec<String>,
}

fn x0_systems(params: PretzelParams) -> Vec<ComponentSystem> {
    let p1 = first_kind_poly_in((2 * params.k1 + 1) as u32, "s1");
    let p2 = first_kind_poly_in((2 * params.k2 + 1) as u32, "s2");
    let p3 = first_kind_poly_in((2 * params.k3) as u32, "s3");
    let real = |var: &str| NumericCondition::RealInterval { var: var.into(), lo: -2.0, hi: 2.0 };
    vec![
        ComponentSystem {
            label: "X0_1".into(),
            equations: vec![v("t"), gamma_beta(params, 1, -1), gamma_beta(params, 2, -1), beta3(params), kappa_minus_delta()],
            inequations: vec![v("tau")],
            alternative_inequations: vec![],
            conditions: vec![],
            notes: vec!["gamma_j = -beta_j (j = 1, 2), beta_3 = 0, t = 0".into()],
        },
        ComponentSystem {
            label: "X0_2".into(),
            equations: vec![v("t"), v("tau"), delta_poly(), &p1 - &p2, &p2 - &p3, kappa_minus_delta()],
            inequations: vec![&p1 + &int(2)],
            alternative_inequations: vec![&p1 + &int(2), &p1 - &int(2)],
            conditions: vec![real("s1"), real("s2"), real("s3")],
            notes: vec![
                "s_j = 2cos(theta_j) with theta_j real; P_n(2cos x) = 2cos(nx)".into(),
                "inequations exclude cos = -1; the alternative set excludes cos = +1 as well".into(),
            ],
        },
    ]
}

fn x1_systems(params: PretzelParams) -> Vec<ComponentSystem> {
    let t2 = &v("t") * &v("t");
    let mut out = Vec::new();
    // j = 1: X2 = X3⁻¹; j = 2: X3 = X1⁻¹. The third tangle always contributes β3 = 0.
    for (j, other) in [(1usize, 2usize), (2, 1)] {
        let (jp, jm) = if j == 1 { (2, 3) } else { (3, 1) };
        out.push(ComponentSystem {
            label: format!("X1_{j}"),
            equations: vec![
                gamma_beta(params, other, 1),
                beta3(params),
                &(&t2 - &s_var(j)) - &int(2),
                &(&t2 - &s_var(jp)) - &s_var(jm),
                kappa_minus_delta(),
            ],
            inequations: vec![],
            alternative_inequations: vec![],
            conditions: vec![],
            notes: vec![format!("gamma_{other} = beta_{other}, beta_3 = 0, t^2 = s{j} + 2 = s{jp} + s{jm}")],
        });
    }
    out.push(ComponentSystem {
        label: "X1_3".into(),
        equations: vec![
            &t2 - &int(4),
            &s_var(3) - &int(2),
            gamma_beta(params, 1, 1),
            gamma_beta(params, 2, 1),
            kappa_minus_delta(),
        ],
        inequations: vec![],
        alternative_inequations: vec![],
        conditions: vec![],
        notes: vec!["X1 and X2 commute, t = ±2".into()],
    });
    out
}

/// The main component. `lambda` stands for `tau/t`.
fn x3_system(params: PretzelParams) -> ComponentSystem {
    let eqs = x3_equations(params);
    let [sig1, _, _] = sigma_polys();
    ComponentSystem {
        label: "X3".into(),
        equations: vec![
            &(&v("t") * &v("lambda")) - &v("tau"),
            eqs[0].clone(),
            eqs[1].clone(),
            eqs[2].clone(),
            kappa_minus_delta(),
        ],
        inequations: vec![v("t"), &(&sig1 + &int(2)) - &(&int(2) * &v("lambda"))],
        alternative_inequations: vec![],
        conditions: vec![],
        notes: vec!["lambda = tau/t".into()],
    }
}

/// Fixed `(s1, s2, s3)` of the component indexed by `(h1, h2, h3)`.
fn x2_values(params: PretzelParams, h: [i64; 3]) -> [f64; 3] {
    [
        2.0 * ((2 * h[0] + 1) as f64 * PI / (2 * params.k1 + 1) as f64).cos(),
        2.0 * ((2 * h[1] + 1) as f64 * PI / (2 * params.k2 + 1) as f64).cos(),
        2.0 * (h[2] as f64 * PI / params.k3 as f64).cos(),
    ]
}

fn x2_indices(params: PretzelParams) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for h1 in 0..=params.k1 {
        for h2 in 0..=params.k2 {
            for h3 in 0..params.k3 {
                out.push([h1, h2, h3]);
            }
        }
    }
    out
}

fn is_interior(params: PretzelParams, h: [i64; 3]) -> bool {
    h[0] < params.k1 && h[1] < params.k2 && h[2] >= 1
}

fn x2_system(params: PretzelParams, h: [i64; 3]) -> ComponentSystem {
    let s = x2_values(params, h);
    let label = format!("X2({},{},{})", h[0], h[1], h[2]);
    let note = if is_interior(params, h) {
        "interior index: the s-values are roots of the exact conditions".to_string()
    } else {
        "endpoint index: the exact conditions fail at these s-values; unverified".to_string()
    };
    ComponentSystem {
        label,
        equations: vec![gamma_beta(params, 1, 1), gamma_beta(params, 2, 1), beta3(params), kappa_minus_delta()],
        inequations: vec![],
        alternative_inequations: vec![],
        conditions: ["s1", "s2", "s3"]
            .iter()
            .zip(s)
            .map(|(var, value)| NumericCondition::Near { var: var.to_string(), value, radius: 1e-6 })
            .collect(),
        notes: vec![note, "{X1, X2} regular; the conic kappa = delta in (t, tau)".into()],
    }
}

/// Every component system, in the order X0, X1, X2, X3.
pub fn component_systems(params: PretzelParams) -> Vec<ComponentSystem> {
    let mut out = x0_systems(params);
    out.extend(x1_systems(params));
    out.extend(x2_indices(params).into_iter().map(|h| x2_system(params, h)));
    out.push(x3_system(params));
    out
}

/// Per-system membership diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipEntry {
    pub label: String,
    /// Largest `|f(p)| / max(1, Σ|terms of f at p|)` over the equations.
    pub equation_residual: f64,
    /// Smallest inequation magnitude, if there are inequations.
    pub inequation_min: Option<f64>,
    pub conditions_hold: bool,
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alternative_member: Option<bool>,
}

fn scaled_residual(f: &MultiPoly, assignment: &[(&str, ComplexVal)]) -> f64 {
    let value = f.evaluate(assignment).map(|z| z.norm()).unwrap_or(f64::INFINITY);
    let scale = f.magnitude_at(assignment).unwrap_or(1.0).max(1.0);
    value / scale
}

fn min_abs(fs: &[MultiPoly], assignment: &[(&str, ComplexVal)]) -> Option<f64> {
    fs.iter()
        .map(|g| g.evaluate(assignment).map(|z| z.norm()).unwrap_or(0.0))
        .reduce(f64::min)
}

pub fn membership_detail(p: &CharPoint, params: PretzelParams, tol: f64) -> Vec<MembershipEntry> {
    let assignment = p.assignment();
    component_systems(params)
        .into_iter()
        .map(|sys| {
            let equation_residual = sys.equations.iter().map(|f| scaled_residual(f, &assignment)).fold(0.0, f64::max);
            let inequation_min = min_abs(&sys.inequations, &assignment);
            let conditions_hold = sys.conditions.iter().all(|c| c.holds(p, tol));
            let base = p.is_finite() && equation_residual < tol && conditions_hold;
            let member = base && inequation_min.map_or(true, |m| m > INEQUATION_MARGIN);
            let alternative_member = (!sys.alternative_inequations.is_empty())
                .then(|| base && min_abs(&sys.alternative_inequations, &assignment).map_or(true, |m| m > INEQUATION_MARGIN));
            MembershipEntry {
                label: sys.label,
                equation_residual,
                inequation_min,
                conditions_hold,
                member,
                alternative_member,
            }
        })
        .collect()
}

/// Labels of the components whose equations vanish at `p` (scaled residual
/// below `tol`) and whose inequations stay above [`INEQUATION_MARGIN`].
pub fn membership(p: &CharPoint, params: PretzelParams, tol: f64) -> Vec<String> {
    membership_detail(p, params, tol).into_iter().filter(|e| e.member).map(|e| e.label).collect()
}

/// The conic `t2·t² + t_tau·t·τ + tau2·τ² + constant = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Conic {
    pub t2: f64,
    pub t_tau: f64,
    pub tau2: f64,
    pub constant: f64,
}

impl Conic {
    /// Both roots in `τ` at a given `t`.
    pub fn taus(&self, t: ComplexVal) -> [ComplexVal; 2] {
        let b = t * self.t_tau;
        let c = t * t * self.t2 + self.constant;
        let disc = (b * b - 4.0 * self.tau2 * c).sqrt();
        [(-b + disc) / (2.0 * self.tau2), (-b - disc) / (2.0 * self.tau2)]
    }
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |x: f64| if x < 0.0 { "-" } else { "+" };
        write!(
            f,
            "tau^2 {} {:.12}*t*tau {} {:.12}*t^2 {} {:.12}",
            sign(self.t_tau),
            self.t_tau.abs(),
            sign(self.t2),
            self.t2.abs(),
            sign(self.constant),
            self.constant.abs()
        )
    }
}

/// One of the 0-dimensional-in-s components, with its conic in `(t, τ)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct X2Component {
    pub h: [i64; 3],
    pub s: [f64; 3],
    pub conic: Conic,
    pub interior: bool,
    /// `|γ1 − β1|, |γ2 − β2|, |β3|` at the listed s-values.
    pub exact_residuals: [f64; 3],
}

pub fn enumerate_x2(params: PretzelParams) -> Vec<X2Component> {
    x2_indices(params)
        .into_iter()
        .map(|h| {
            let s = x2_values(params, h);
            let (s1, s2, s3) = (s[0], s[1], s[2]);
            let sigma1 = s1 + s2 + s3;
            let sigma2 = s1 * s2 + s2 * s3 + s3 * s1;
            let delta = 4.0 + s1 * s2 * s3 + 2.0 * sigma2 - sigma1 * sigma1;
            let c = |x: f64| ComplexVal::new(x, 0.0);
            let gb = |k: i64, x: f64| {
                let (_, b, g) = abg_eval(k, c(x));
                (g - b).norm()
            };
            X2Component {
                h,
                s,
                conic: Conic { t2: sigma2 + 4.0, t_tau: -(sigma1 + 2.0), tau2: 1.0, constant: -delta },
                interior: is_interior(params, h),
                exact_residuals: [gb(params.k1, s1), gb(params.k2, s2), omega_eval(params.k3, c(s3)).norm()],
            }
        })
        .collect()
}

/// Outcome of realizing sample points of an X2 conic as representations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct X2Verdict {
    pub verified: bool,
    pub relation_residual: f64,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Builds representations at random points of the conic and checks the
/// group relations there.
pub fn adjudicate_x2(params: PretzelParams, comp: &X2Component, seed: u64, tol: f64) -> X2Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(comp.h.iter().fold(17u64, |acc, &h| acc * 31 + h as u64));
    let mut worst: f64 = 0.0;
    let mut samples = 0;
    let mut reason = None;
    for _ in 0..3 {
        let t = ComplexVal::new(rng.gen_range(-2.5..2.5), rng.gen_range(0.2..1.2));
        for tau in comp.conic.taus(t) {
            let p = CharPoint::new(t, comp.s[0].into(), comp.s[1].into(), comp.s[2].into(), tau);
            match build_representation_unchecked(&p, params, tol) {
                Ok(rep) => {
                    samples += 1;
                    worst = worst.max(rep.relation_residual());
                }
                Err(e) => {
                    reason.get_or_insert_with(|| e.to_string());
                    worst = f64::INFINITY;
                }
            }
        }
    }
    let verified = worst < tol;
    if !verified && reason.is_none() {
        reason = Some(format!("relation residual {worst:.3e} at conic points"));
    }
    X2Verdict { verified, relation_residual: worst, samples, reason }
}

/// The three families of `t = 0` representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum T0Bullet {
    /// `γ_j = β_j` (j = 1, 2) and `v3^(2k3) = −1`, i.e. `P_{2k3}(s3) = −2`.
    Bullet1,
    /// `γ_j = −β_j` (j = 1, 2) and `β3 = 0`.
    Bullet2,
    /// `δ = 0`, real angles, `cos((2k1+1)θ1) = cos((2k2+1)θ2) = cos(2k3θ3) ≠ ±1`.
    Bullet3,
}

impl fmt::Display for T0Bullet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            T0Bullet::Bullet1 => "bullet1",
            T0Bullet::Bullet2 => "bullet2",
            T0Bullet::Bullet3 => "bullet3",
        };
        f.write_str(name)
    }
}

/// Which `t = 0` families contain `p`. Points off `κ = δ` belong to none.
pub fn classify_t0(p: &CharPoint, params: PretzelParams, tol: f64) -> Result<Vec<T0Bullet>, CharVarError> {
    if p.t.norm() > tol {
        return Err(CharVarError::NonZeroTrace(p.t.norm()));
    }
    let inv = point_invariants(p);
    let small = |x: ComplexVal, scale: f64| x.norm() <= tol * (1.0 + scale);
    if !small(inv.kappa - inv.delta, inv.kappa.norm() + inv.delta.norm()) {
        return Ok(vec![]);
    }
    let pair = |j: usize, sign: f64| {
        let (_, b, g) = abg_eval(params.k(j), p.s(j));
        small(g - b * sign, g.norm() + b.norm())
    };
    let cheb = |n: i64, s: ComplexVal| omega_eval(n + 1, s) - omega_eval(n - 1, s);
    let mut out = Vec::new();
    let p3 = cheb(2 * params.k3, p.s3);
    if pair(1, 1.0) && pair(2, 1.0) && small(p3 + 2.0, p3.norm()) {
        out.push(T0Bullet::Bullet1);
    }
    let b3 = omega_eval(params.k3, p.s3);
    if pair(1, -1.0) && pair(2, -1.0) && small(b3, omega_eval(params.k3 + 1, p.s3).norm()) {
        out.push(T0Bullet::Bullet2);
    }
    let real = [p.s1, p.s2, p.s3].iter().all(|s| s.im.abs() <= tol && s.re.abs() <= 2.0 + tol);
    let p1 = cheb(2 * params.k1 + 1, p.s1);
    let p2 = cheb(2 * params.k2 + 1, p.s2);
    let scale = p1.norm() + p2.norm() + p3.norm();
    if real
        && small(inv.delta, inv.sigma1.norm_sqr() + inv.sigma2.norm())
        && small(p1 - p2, scale)
        && small(p2 - p3, scale)
        && (p1 - 2.0).norm() > INEQUATION_MARGIN
        && (p1 + 2.0).norm() > INEQUATION_MARGIN
    {
        out.push(T0Bullet::Bullet3);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(k1: i64, k2: i64, k3: i64) -> PretzelParams {
        PretzelParams::new(k1, k2, k3).unwrap()
    }

    #[test]
    fn identity_point_is_on_no_component() {
        let p = CharPoint::real(2.0, 2.0, 2.0, 2.0, 8.0);
        assert!(membership(&p, params(0, 0, 1), 1e-8).is_empty());
    }

    #[test]
    fn labels_and_counts() {
        let sys = component_systems(params(1, 1, 2));
        let labels: Vec<&str> = sys.iter().map(|s| s.label.as_str()).collect();
        assert_eq!(&labels[..5], &["X0_1", "X0_2", "X1_1", "X1_2", "X1_3"]);
        assert_eq!(labels.last(), Some(&"X3"));
        // (k1+1)(k2+1)k3 conics
        assert_eq!(labels.iter().filter(|l| l.starts_with("X2(")).count(), 8);
        assert_eq!(enumerate_x2(params(1, 1, 2)).len(), 8);
    }

    #[test]
    fn x3_equations_for_trefoil_like_case() {
        // k = 0 leaves λ − 2 − s_j in the first two equations.
        let eqs = x3_equations(params(0, 0, 1));
        assert_eq!(eqs[0], "lambda - 2 - s1".parse().unwrap());
        assert_eq!(eqs[1], "lambda - 2 - s2".parse().unwrap());
    }

    #[test]
    fn system_json_roundtrip() {
        for sys in component_systems(params(1, 0, 2)) {
            let text = serde_json::to_string(&sys).unwrap();
            let back: ComponentSystem = serde_json::from_str(&text).unwrap();
            assert_eq!(back, sys);
        }
    }

    #[test]
    fn interior_x2_exact_conditions_hold() {
        for c in enumerate_x2(params(2, 1, 3)) {
            if c.interior {
                assert!(c.exact_residuals.iter().all(|r| *r < 1e-12), "{c:?}");
            } else {
                assert!(c.exact_residuals.iter().any(|r| *r > 1e-3), "{c:?}");
            }
        }
    }

    #[test]
    fn t0_bullet1_example() {
        // s1 = s2 = 1 solves γ = β for k = 1; s3 = 0 gives P_2(s3) = s3² − 2 = −2.
        let pr = params(1, 1, 1);
        let tau = 2f64.sqrt();
        let p = CharPoint::real(0.0, 1.0, 1.0, 0.0, tau);
        assert_eq!(classify_t0(&p, pr, 1e-9).unwrap(), vec![T0Bullet::Bullet1]);
        let off = CharPoint::real(0.0, 1.0, 1.0, 0.0, 0.3);
        assert!(classify_t0(&off, pr, 1e-9).unwrap().is_empty());
        assert!(classify_t0(&CharPoint::real(0.5, 1.0, 1.0, 0.0, tau), pr, 1e-9).is_err());
    }
}
