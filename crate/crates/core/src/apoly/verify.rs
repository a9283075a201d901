use serde::{Deserialize, Serialize};

use super::peripheral::{peripheral_check, PeripheralCheck, PeripheralPair};
use super::{APolyResult, ApolyError, PieceKind};
use crate::charvariety::{build_representation_unchecked, sample_x3, PretzelParams, SampleOptions};
use crate::polycore::{complex_roots, MultiPoly, RootOptions};

/// `|A(u, w)|` divided by the largest monomial magnitude at the point.
pub fn scaled_residual(poly: &MultiPoly, pair: &PeripheralPair) -> f64 {
    let at = pair.assignment();
    let value = poly.evaluate(&at).map(|z| z.norm()).unwrap_or(f64::INFINITY);
    let scale = poly.max_term_at(&at).unwrap_or(1.0);
    if scale == 0.0 {
        value
    } else {
        value / scale
    }
}

/// Relative distance from `w` to the nearest root of `A(u, ·)`. Better
/// conditioned than [`scaled_residual`] when `A` is a product of many
/// factors, whose scaled residuals multiply.
pub fn root_distance(poly: &MultiPoly, pair: &PeripheralPair) -> f64 {
    let Ok(coeffs) = poly.univariate_at("w", &[("u", pair.u)]) else {
        return f64::INFINITY;
    };
    let roots = match complex_roots(&coeffs, RootOptions::default()) {
        Ok(r) => r,
        Err(crate::polycore::PolyError::NoConvergence { partial, .. }) => partial,
        Err(_) => return f64::INFINITY,
    };
    roots.iter().map(|r| (r - pair.w).norm()).fold(f64::INFINITY, f64::min) / pair.w.norm()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleResidual {
    pub pair: PeripheralPair,
    /// [`scaled_residual`]; decides `pass`.
    pub residual: f64,
    pub root_distance: f64,
    /// Residual at `(u⁻¹, w⁻¹)`, the pair read in the other eigenbasis.
    pub inverse_residual: f64,
    pub pass: bool,
}

/// How many samples a piece of the polynomial vanishes on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PieceSupport {
    pub kind: PieceKind,
    pub multiplicity: u32,
    pub degree_u: u32,
    pub degree_w: u32,
    pub terms: usize,
    pub vanishing_samples: usize,
    pub supported: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n_samples: usize,
    pub passed: usize,
    pub failed: usize,
    pub tol: f64,
    pub max_scaled_residual: f64,
    pub max_root_distance: f64,
    pub samples: Vec<SampleResidual>,
    pub pieces: Vec<PieceSupport>,
    /// Some nonconstant piece vanishes on none of the samples. Such pieces
    /// stay in the polynomial; this only flags them.
    pub unsupported_factors: bool,
}

/// Checks that the polynomial vanishes at each pair and at its inverse, and
/// which of its square-free pieces the samples actually touch.
pub fn verify_apoly(result: &APolyResult, samples: &[PeripheralPair], tol: f64) -> VerifyReport {
    let rows: Vec<SampleResidual> = samples
        .iter()
        .map(|pair| {
            let residual = scaled_residual(&result.poly, pair);
            let inverse_residual = scaled_residual(&result.poly, &pair.inverse());
            SampleResidual {
                pair: *pair,
                residual,
                root_distance: root_distance(&result.poly, pair),
                inverse_residual,
                pass: residual < tol && inverse_residual < tol,
            }
        })
        .collect();
    let passed = rows.iter().filter(|r| r.pass).count();
    let max_scaled_residual = rows.iter().map(|r| r.residual.max(r.inverse_residual)).fold(0.0, f64::max);
    let max_root_distance = rows.iter().map(|r| r.root_distance).fold(0.0, f64::max);
    let pieces: Vec<PieceSupport> = result
        .pieces
        .iter()
        .map(|piece| {
            let vanishing_samples = samples.iter().filter(|s| scaled_residual(&piece.poly, s) < tol).count();
            PieceSupport {
                kind: piece.kind,
                multiplicity: piece.multiplicity,
                degree_u: piece.poly.degree_in("u"),
                degree_w: piece.poly.degree_in("w"),
                terms: piece.poly.num_terms(),
                vanishing_samples,
                supported: vanishing_samples > 0,
            }
        })
        .collect();
    let unsupported_factors = !samples.is_empty() && pieces.iter().any(|p| !p.supported);
    VerifyReport {
        n_samples: rows.len(),
        passed,
        failed: rows.len() - passed,
        tol,
        max_scaled_residual,
        max_root_distance,
        samples: rows,
        pieces,
        unsupported_factors,
    }
}

/// Peripheral pairs of `count` sampled points of the main component, each
/// realized as a representation and checked on the way (see
/// [`peripheral_check`]). Points whose realization misses the relations by
/// more than `tol` are skipped and replaced.
pub fn sample_peripheral_pairs(params: PretzelParams, count: usize, seed: u64, tol: f64) -> Result<Vec<PeripheralCheck>, ApolyError> {
    let mut want = count;
    loop {
        let samples = sample_x3(params, SampleOptions { count: want + count / 4 + 2, seed, ..Default::default() })?;
        let total = samples.len();
        let checks: Vec<PeripheralCheck> = samples
            .iter()
            .filter_map(|s| {
                let rep = build_representation_unchecked(&s.point, params, tol).ok()?;
                if !(rep.relation_residual() < tol) {
                    return None;
                }
                peripheral_check(&rep, tol).ok()
            })
            .take(count)
            .collect();
        if checks.len() == count {
            return Ok(checks);
        }
        if want > 8 * count {
            return Err(ApolyError::Degenerate(format!(
                "only {} of {total} sampled points gave a peripheral pair",
                checks.len()
            )));
        }
        want *= 2;
    }
}
