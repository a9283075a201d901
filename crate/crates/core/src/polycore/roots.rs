use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::rational_to_f64;
use super::{ComplexVal, MultiPoly, PolyError, Rational};

#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    /// Bound on `|p(z)| / (1 + |a_n|·|z|^n)` for the coefficient-scaled polynomial.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions { tol: 1e-10, max_iter: 1000 }
    }
}

/// All complex roots of a univariate polynomial, with multiplicity.
pub fn uni_roots(p: &MultiPoly, tol: f64) -> Result<Vec<ComplexVal>, PolyError> {
    if p.vars().len() != 1 {
        return Err(PolyError::NotUnivariate(p.vars().to_vec()));
    }
    let var = p.vars()[0].clone();
    let coeffs: Vec<Rational> = p
        .coefficients_in(&var)
        .into_iter()
        .map(|c| c.constant_value().unwrap_or_else(Rational::zero))
        .collect();
    // Substitute x = 2^e·y with 2^e near the geometric mean of the root moduli,
    // so that neither end of the coefficient list underflows after scaling.
    let nonzero: Vec<(usize, i64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.numer().bits() as i64 - c.denom().bits() as i64))
        .collect();
    let e = match (nonzero.first(), nonzero.last()) {
        (Some(&(lo, blo)), Some(&(hi, bhi))) if hi > lo => ((blo - bhi) as f64 / (hi - lo) as f64).round() as i64,
        _ => 0,
    };
    let shifted: Vec<Rational> = coeffs.iter().enumerate().map(|(k, c)| c * pow2(e * k as i64)).collect();
    let factor = 2f64.powi(e as i32);
    let opts = RootOptions { tol, ..Default::default() };
    match complex_roots(&scaled_coefficients(&shifted), opts) {
        Ok(r) => Ok(r.into_iter().map(|z| z * factor).collect()),
        Err(PolyError::NoConvergence { iterations, partial }) => Err(PolyError::NoConvergence {
            iterations,
            partial: partial.into_iter().map(|z| z * factor).collect(),
        }),
        Err(other) => Err(other),
    }
}

fn pow2(e: i64) -> Rational {
    let p = Rational::from_integer(BigInt::from(1) << (e.unsigned_abs() as usize));
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

/// Converts exact coefficients to floats after a common power-of-two scaling
/// that brings the largest one near 1, so huge integers do not overflow.
pub(crate) fn scaled_coefficients(coeffs: &[Rational]) -> Vec<ComplexVal> {
    let max_bits = coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.numer().bits() as i64 - c.denom().bits() as i64)
        .max()
        .unwrap_or(0);
    coeffs
        .iter()
        .map(|c| {
            let scaled = if max_bits >= 0 {
                c / Rational::from_integer(BigInt::from(1) << (max_bits as usize))
            } else {
                c * Rational::from_integer(BigInt::from(1) << ((-max_bits) as usize))
            };
            ComplexVal::new(rational_to_f64(&scaled), 0.0)
        })
        .collect()
}

fn horner_with_derivative(coeffs: &[ComplexVal], z: ComplexVal) -> (ComplexVal, ComplexVal, f64) {
    let mut p = ComplexVal::new(0.0, 0.0);
    let mut dp = ComplexVal::new(0.0, 0.0);
    let mut mag = 0.0;
    let az = z.norm();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        mag = mag * az + c.norm();
    }
    (p, dp, mag)
}

/// Aberth–Ehrlich simultaneous iteration on complex coefficients given in
/// ascending degree order.
pub fn complex_roots(coeffs: &[ComplexVal], opts: RootOptions) -> Result<Vec<ComplexVal>, PolyError> {
    let mut c: Vec<ComplexVal> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    if c.len() < 2 {
        return Ok(vec![]);
    }
    let mut roots = Vec::new();
    let zeros = c.iter().take_while(|x| x.norm() == 0.0).count();
    roots.extend(std::iter::repeat(ComplexVal::new(0.0, 0.0)).take(zeros));
    let c: Vec<ComplexVal> = c[zeros..].to_vec();
    let n = c.len() - 1;
    if n == 0 {
        return Ok(roots);
    }
    let lead = c[n];
    let monic: Vec<ComplexVal> = c.iter().map(|x| x / lead).collect();

    // Initial guesses on a circle through the geometric mean of the root moduli.
    let radius = monic[0].norm().powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<ComplexVal> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            ComplexVal::from_polar(radius, angle)
        })
        .collect();
    let mut frozen = vec![false; n];
    let eps = f64::EPSILON;
    let mut iterations = 0;
    while iterations < opts.max_iter && frozen.iter().any(|f| !f) {
        iterations += 1;
        for i in 0..n {
            if frozen[i] {
                continue;
            }
            let (p, dp, mag) = horner_with_derivative(&monic, z[i]);
            if p.norm() <= 4.0 * eps * mag {
                frozen[i] = true;
                continue;
            }
            let ratio = p / dp;
            let sum: ComplexVal = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        ComplexVal::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (ComplexVal::new(1.0, 0.0) - ratio * sum);
            if !step.re.is_finite() || !step.im.is_finite() {
                // Newton step as a fallback when the Aberth correction degenerates.
                z[i] -= if ratio.re.is_finite() && ratio.im.is_finite() { ratio } else { ComplexVal::new(1e-3, 1e-3) };
                continue;
            }
            z[i] -= step;
            if step.norm() <= eps * z[i].norm().max(1e-300) {
                frozen[i] = true;
            }
        }
    }
    let residual_ok = |x: &ComplexVal| {
        let (p, _, _) = horner_with_derivative(&c, *x);
        p.norm() / (1.0 + lead.norm() * x.norm().powi(n as i32)) < opts.tol
    };
    if !z.iter().all(residual_ok) {
        roots.extend(z);
        return Err(PolyError::NoConvergence { iterations, partial: roots });
    }
    roots.extend(z);
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    fn contains(roots: &[ComplexVal], target: ComplexVal, tol: f64) -> bool {
        roots.iter().any(|r| (r - target).norm() < tol)
    }

    #[test]
    fn cube_roots_of_unity() {
        let r = uni_roots(&p("x^3 - 1"), 1e-10).unwrap();
        assert_eq!(r.len(), 3);
        let w = ComplexVal::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!(contains(&r, ComplexVal::new(1.0, 0.0), 1e-12));
        assert!(contains(&r, w, 1e-12));
        assert!(contains(&r, w.conj(), 1e-12));
    }

    #[test]
    fn imaginary_pair_and_double_root() {
        let r = uni_roots(&p("x^2 + 1"), 1e-10).unwrap();
        assert!(contains(&r, ComplexVal::i(), 1e-12) && contains(&r, -ComplexVal::i(), 1e-12));
        let r = uni_roots(&p("(x - 2)^2"), 1e-10).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|z| (z - 2.0).norm() < 1e-6));
    }

    #[test]
    fn zero_roots_and_huge_coefficients() {
        let r = uni_roots(&p("x^3 - 4*x"), 1e-10).unwrap();
        assert!(contains(&r, ComplexVal::new(0.0, 0.0), 1e-300));
        let big = p("x^2 - 10^320");
        let r = uni_roots(&big, 1e-10).unwrap();
        assert!(r.iter().all(|z| (z.norm().log10() - 160.0).abs() < 1e-9), "{r:?}");
    }

    #[test]
    fn rejects_multivariate() {
        assert!(matches!(uni_roots(&p("x*y + 1"), 1e-10), Err(PolyError::NotUnivariate(_))));
    }
}
