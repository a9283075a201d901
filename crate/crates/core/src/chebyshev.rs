//! Trace polynomials of matrix powers.
//!
//! For `X ∈ SL(2,ℂ)` with trace `t`, Cayley–Hamilton gives
//! `X^k = ω_k(t)·X − ω_{k−1}(t)·I`, where `ω_0 = 0`, `ω_1 = 1` and
//! `ω_{k+1} = t·ω_k − ω_{k−1}`. At `t = a + a⁻¹` this is
//! `(a^k − a^{−k}) / (a − a^{−1})`, a second-kind Chebyshev polynomial in `t/2`.

use std::collections::BTreeMap;
use std::sync::{OnceLock, RwLock};

use crate::polycore::{ComplexVal, MultiPoly};

/// Memoized `ω_k(t)` for `k ≥ 0`; negative indices come from `ω_{−k} = −ω_k`.
pub struct OmegaFamily {
    cache: RwLock<BTreeMap<u32, MultiPoly>>,
}

impl Default for OmegaFamily {
    fn default() -> Self {
        let mut base = BTreeMap::new();
        base.insert(0, MultiPoly::zero());
        base.insert(1, MultiPoly::one());
        OmegaFamily { cache: RwLock::new(base) }
    }
}

impl OmegaFamily {
    /// `ω_k` as a polynomial in `t`.
    pub fn get(&self, k: i64) -> MultiPoly {
        if k < 0 {
            return -self.get(-k);
        }
        let k = k as u32;
        if let Some(p) = self.cache.read().unwrap().get(&k) {
            return p.clone();
        }
        let t = MultiPoly::var("t");
        let mut cache = self.cache.write().unwrap();
        let (&top, _) = cache.iter().next_back().unwrap();
        for j in top..k {
            let next = &(&t * &cache[&j]) - &cache[&(j - 1)];
            cache.insert(j + 1, next);
        }
        cache[&k].clone()
    }
}

fn family() -> &'static OmegaFamily {
    static FAMILY: OnceLock<OmegaFamily> = OnceLock::new();
    FAMILY.get_or_init(OmegaFamily::default)
}

/// `ω_k(t)`, any integer `k`.
pub fn omega_poly(k: i64) -> MultiPoly {
    family().get(k)
}

/// `ω_k` in the variable `var` instead of `t`.
pub fn omega_poly_in(k: i64, var: &str) -> MultiPoly {
    omega_poly(k).substitute("t", &MultiPoly::var(var))
}

/// Numeric `ω_k(t)` through the eigenvalue formula, with the `a = ±1` limit
/// `k·a^{k−1}` used when `t` is within `1e−12` of `±2`.
pub fn omega_eval(k: i64, t: ComplexVal) -> ComplexVal {
    for sign in [1.0, -1.0] {
        if (t - 2.0 * sign).norm() < 1e-12 {
            return k as f64 * ComplexVal::new(sign, 0.0).powi(k as i32 - 1);
        }
    }
    let disc = (t * t - 4.0).sqrt();
    let mut a = (t + disc) / 2.0;
    if a.norm() < 1.0 {
        a = a.inv();
    }
    let ainv = a.inv();
    (a.powi(k as i32) - ainv.powi(k as i32)) / (a - ainv)
}

/// `ω_k(t)` by running the three-term recursion numerically; agrees with
/// evaluating [`omega_poly`] and stays accurate near `t = ±2`.
pub fn omega_recur(k: i64, t: ComplexVal) -> ComplexVal {
    if k < 0 {
        return -omega_recur(-k, t);
    }
    let (mut prev, mut cur) = (ComplexVal::new(0.0, 0.0), ComplexVal::new(1.0, 0.0));
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = t * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `P_n(s) = ω_{n+1}(s) − ω_{n−1}(s)`, so that `P_n(2cos θ) = 2cos(nθ)`.
pub fn first_kind_poly(n: u32) -> MultiPoly {
    let n = n as i64;
    (&omega_poly(n + 1) - &omega_poly(n - 1)).substitute("t", &MultiPoly::var("s"))
}

/// `P_n` in a chosen variable.
pub fn first_kind_poly_in(n: u32, var: &str) -> MultiPoly {
    first_kind_poly(n).substitute("s", &MultiPoly::var(var))
}

/// Per-tangle coefficients `(α, β, γ) = (ω_{k−1}, ω_k, ω_{k+1})` in `var`.
pub fn abg(k: i64, var: &str) -> (MultiPoly, MultiPoly, MultiPoly) {
    (omega_poly_in(k - 1, var), omega_poly_in(k, var), omega_poly_in(k + 1, var))
}

/// Numeric `(α, β, γ)` at `s`.
pub fn abg_eval(k: i64, s: ComplexVal) -> (ComplexVal, ComplexVal, ComplexVal) {
    (omega_eval(k - 1, s), omega_eval(k, s), omega_eval(k + 1, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega_poly(0), MultiPoly::zero());
        assert_eq!(omega_poly(2), p("t"));
        assert_eq!(omega_poly(3), p("t^2 - 1"));
        assert_eq!(omega_poly(-2), p("-t"));
        assert_eq!(omega_poly(4), p("t^3 - 2*t"));
    }

    #[test]
    fn omega_eval_examples() {
        let r = |x: f64| ComplexVal::new(x, 0.0);
        assert!((omega_eval(5, r(2.0)) - 5.0).norm() < 1e-15);
        assert!((omega_eval(3, r(2f64.sqrt())) - 1.0).norm() < 1e-12);
        let t = 2.0 * (std::f64::consts::PI / 4.0).cos();
        assert!(omega_eval(4, r(t)).norm() < 1e-12);
        let via_poly = omega_poly(4).evaluate(&[("t", r(2f64.sqrt()))]).unwrap();
        assert!(via_poly.norm() < 1e-12);
        // a = -1 branch: ω_k(−2) = k·(−1)^{k−1}
        assert!((omega_eval(4, r(-2.0)) + 4.0).norm() < 1e-15);
    }

    #[test]
    fn omega_eval_matches_polynomial() {
        let t = ComplexVal::new(0.7, -1.3);
        for k in -8..=8 {
            let a = omega_eval(k, t);
            let b = omega_poly(k).evaluate(&[("t", t)]).unwrap();
            assert!((a - b).norm() <= 1e-10 * b.norm().max(1.0), "k={k}");
        }
    }

    #[test]
    fn first_kind_examples() {
        assert_eq!(first_kind_poly(0), p("2"));
        assert_eq!(first_kind_poly(1), p("s"));
        assert_eq!(first_kind_poly(2), p("s^2 - 2"));
    }

    #[test]
    fn abg_examples() {
        assert_eq!(abg(0, "s"), (p("-1"), p("0"), p("1")));
        assert_eq!(abg(1, "s"), (p("0"), p("1"), p("s")));
        assert_eq!(abg(2, "s"), (p("1"), p("s"), p("s^2 - 1")));
    }
}
