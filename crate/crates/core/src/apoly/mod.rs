//! The hard part of the A-polynomial: the curve in `(u, w)` traced by the
//! main component, where `u`, `w` are the upper-left entries of the meridian
//! and longitude images in a common triangular frame.

mod cache;
mod peripheral;
mod system;
mod verify;
mod word;

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charvariety::{CharVarError, PretzelParams};
use crate::elimination::{eliminate_chain, EliminationError, PolyStats};
use crate::polycore::{content_in, content_primitive, square_free_decomposition, ComplexVal, MultiPoly, PolyError};

pub use cache::{cache_file, default_cache_dir, CACHE_ENV};
pub use peripheral::{
    b3_traces_closed, b3_traces_direct, peripheral_check, peripheral_check_other_frame, peripheral_pair, PeripheralCheck,
    PeripheralPair,
};
pub use system::{ap_excluded_factors, ap_system, clear_t, strip_power};
pub use verify::{root_distance, sample_peripheral_pairs, scaled_residual, verify_apoly, PieceSupport, SampleResidual, VerifyReport};
pub use word::{evaluate_word, longitude_word, GroupWord, Letter, MERIDIAN_ORIENTATION};

/// Orders tried in turn when none is given.
pub const DEFAULT_ORDERS: [[&str; 4]; 4] = [
    ["s1", "s2", "s3", "lambda"],
    ["s3", "s1", "s2", "lambda"],
    ["lambda", "s1", "s2", "s3"],
    ["s2", "s1", "s3", "lambda"],
];

/// Largest `k_j` for which elimination is attempted at all.
pub const DESK_SCALE_MAX_K: i64 = 2;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ApolyError {
    #[error("meridian is parabolic (u = {u}), so the longitude is not determined by (u, w)")]
    ParabolicMeridian { u: ComplexVal },
    #[error("longitude does not commute with the meridian (residual {residual:.3e})")]
    NotCommuting { residual: f64 },
    #[error("degenerate point: {0}")]
    Degenerate(String),
    #[error("{params} is too large to eliminate: {reason}")]
    TooLarge { params: PretzelParams, reason: String },
    #[error("invalid elimination order {0:?}: need a permutation of s1, s2, s3, lambda")]
    InvalidOrder(Vec<String>),
    #[error("every elimination order failed: {}", .0.join("; "))]
    OrdersExhausted(Vec<String>),
    #[error("order {order:?}: {source}")]
    Elimination { order: Vec<String>, source: EliminationError },
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    CharVar(#[from] CharVarError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// One entry of the record kept while computing the hard part.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum ApolyStep {
    OrderFailed { order: Vec<String>, error: String },
    Eliminate { var: String, pivot_degree: u32, inputs: usize, outputs: Vec<PolyStats>, saturated: Vec<String> },
    /// Gcd of the polynomials left once every variable is gone.
    Combine { polynomials: usize, degree_u: u32, degree_w: u32, terms: usize },
    SquareFree { degree_u: u32, degree_w: u32, terms: usize, repeated_pieces: usize },
    Normalize { content_removed: String, sign_flipped: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PieceKind {
    /// Involves `u` only.
    UOnly,
    /// Involves `w` only.
    WOnly,
    Mixed,
}

/// Product of the factors of one kind and one multiplicity in the
/// polynomial the chain produced before repeated factors were removed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorPiece {
    pub kind: PieceKind,
    pub multiplicity: u32,
    pub poly: MultiPoly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct APolyResult {
    pub knot: PretzelParams,
    pub elimination_order: Vec<String>,
    /// Primitive, square-free in `u` and in `w`, positive leading coefficient.
    pub poly: MultiPoly,
    pub steps: Vec<ApolyStep>,
    /// Square-free pieces of `poly`, kept apart for adjudication.
    pub pieces: Vec<FactorPiece>,
}

fn parse_order(order: &[String]) -> Result<Vec<String>, ApolyError> {
    let mut sorted: Vec<&str> = order.iter().map(|s| s.as_str()).collect();
    sorted.sort_unstable();
    if sorted != ["lambda", "s1", "s2", "s3"] {
        return Err(ApolyError::InvalidOrder(order.to_vec()));
    }
    Ok(order.to_vec())
}

/// Refuses knots whose elimination is out of reach on a desk machine.
/// Beyond `k_j ≤ 2` the refusal is unconditional; inside it the estimate is
/// the Bezout number of the system in `(s1, s2, s3, λ, w)`.
pub fn size_estimate(params: PretzelParams) -> Result<u64, ApolyError> {
    let PretzelParams { k1, k2, k3 } = params;
    if k1.max(k2).max(k3) > DESK_SCALE_MAX_K {
        return Err(ApolyError::TooLarge {
            params,
            reason: format!("k1, k2, k3 must be at most {DESK_SCALE_MAX_K}"),
        });
    }
    let inner = ["s1", "s2", "s3", "lambda", "w"];
    let bezout = ap_system(params)
        .iter()
        .map(|p| {
            p.terms()
                .map(|(m, _)| p.vars().iter().zip(&m.0).filter(|(v, _)| inner.contains(&v.as_str())).map(|(_, e)| *e as u64).sum::<u64>())
                .max()
                .unwrap_or(0)
                .max(1)
        })
        .product();
    if bezout > BEZOUT_LIMIT {
        return Err(ApolyError::TooLarge {
            params,
            reason: format!("Bezout estimate {bezout} exceeds {BEZOUT_LIMIT}"),
        });
    }
    Ok(bezout)
}

/// Largest Bezout estimate still attempted. (1,1,1) sits at 48 and takes
/// seconds; the next knots up, at 54 and 72, blow up the last resultant.
pub const BEZOUT_LIMIT: u64 = 48;

fn piece_kind(p: &MultiPoly) -> PieceKind {
    match (p.has_var("u"), p.has_var("w")) {
        (true, false) => PieceKind::UOnly,
        (false, true) => PieceKind::WOnly,
        _ => PieceKind::Mixed,
    }
}

/// Splits the chain output into its `u`-only part, its `w`-only part and
/// the square-free pieces of the rest, each with its multiplicity.
fn pieces_of(combined: &MultiPoly) -> Vec<FactorPiece> {
    let mut out = Vec::new();
    let u_only = content_in(combined, "w");
    let w_only = content_in(combined, "u");
    let core = combined.div_exact(&(&u_only * &w_only)).expect("contents divide");
    for (part, var) in [(&u_only, "u"), (&w_only, "w"), (&core, "u")] {
        for (f, m) in square_free_decomposition(part, var) {
            out.push(FactorPiece { kind: piece_kind(&f), multiplicity: m, poly: f });
        }
    }
    out
}

fn uw_degrees(p: &MultiPoly) -> (u32, u32) {
    (p.degree_in("u"), p.degree_in("w"))
}

fn compute(params: PretzelParams, orders: &[Vec<String>]) -> Result<APolyResult, ApolyError> {
    let system = ap_system(params);
    let excluded = ap_excluded_factors();
    let mut steps = Vec::new();
    let mut failures = Vec::new();
    for order in orders {
        let names: Vec<&str> = order.iter().map(|s| s.as_str()).collect();
        let elim = match eliminate_chain(&system, &names, &excluded) {
            Ok(e) => e,
            Err(e @ (EliminationError::ZeroResultant { .. } | EliminationError::Inconsistent { .. })) => {
                failures.push(format!("{order:?}: {e}"));
                steps.push(ApolyStep::OrderFailed { order: order.clone(), error: e.to_string() });
                continue;
            }
            Err(source) => return Err(ApolyError::Elimination { order: order.clone(), source }),
        };
        for r in &elim.reports {
            steps.push(ApolyStep::Eliminate {
                var: r.var.clone(),
                pivot_degree: r.pivot_degree,
                inputs: r.inputs,
                outputs: r.outputs.clone(),
                saturated: r.saturated.clone(),
            });
        }
        let (du, dw) = uw_degrees(&elim.combined);
        steps.push(ApolyStep::Combine {
            polynomials: elim.stages.last().map_or(0, |s| s.len()),
            degree_u: du,
            degree_w: dw,
            terms: elim.combined.num_terms(),
        });
        let pieces = pieces_of(&elim.combined);
        let (du, dw) = uw_degrees(&elim.result);
        steps.push(ApolyStep::SquareFree {
            degree_u: du,
            degree_w: dw,
            terms: elim.result.num_terms(),
            repeated_pieces: pieces.iter().filter(|p| p.multiplicity > 1).count(),
        });
        let (content, poly) = content_primitive(&elim.result);
        let sign_flipped = content < crate::polycore::Rational::from_integer(0.into());
        steps.push(ApolyStep::Normalize { content_removed: content.to_string(), sign_flipped });
        if !poly.has_var("u") && !poly.has_var("w") {
            failures.push(format!("{order:?}: constant result"));
            continue;
        }
        return Ok(APolyResult { knot: params, elimination_order: order.clone(), poly, steps, pieces });
    }
    Err(ApolyError::OrdersExhausted(failures))
}

/// The hard part of the A-polynomial, cached under [`default_cache_dir`].
pub fn hard_apoly(params: PretzelParams, order: Option<&[String]>) -> Result<APolyResult, ApolyError> {
    hard_apoly_with(params, order, default_cache_dir().as_deref())
}

/// As [`hard_apoly`] with an explicit cache directory (`None` disables caching).
/// Without an order the default orders are tried until one gives a nonzero
/// result; a failed explicit order is an error.
pub fn hard_apoly_with(params: PretzelParams, order: Option<&[String]>, cache: Option<&Path>) -> Result<APolyResult, ApolyError> {
    size_estimate(params)?;
    let orders: Vec<Vec<String>> = match order {
        Some(o) => vec![parse_order(o)?],
        None => DEFAULT_ORDERS.iter().map(|o| o.iter().map(|s| s.to_string()).collect()).collect(),
    };
    let key = cache::key(params, order);
    if let Some(dir) = cache {
        if let Some(hit) = cache::load(dir, &key) {
            return Ok(hit);
        }
    }
    let result = compute(params, &orders)?;
    if let Some(dir) = cache {
        cache::store(dir, &key, &result)?;
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn envelope() {
        let big = PretzelParams::new(3, 3, 3).unwrap();
        assert!(matches!(size_estimate(big), Err(ApolyError::TooLarge { .. })));
        assert!(size_estimate(PretzelParams::new(0, 0, 1).unwrap()).is_ok());
        assert_eq!(size_estimate(PretzelParams::new(1, 1, 1).unwrap()), Ok(48));
        assert_eq!(size_estimate(PretzelParams::new(0, 0, 1).unwrap()), Ok(12));
        for (k1, k2, k3) in [(1, 1, 2), (1, 2, 1), (2, 2, 2)] {
            let p = PretzelParams::new(k1, k2, k3).unwrap();
            assert!(matches!(size_estimate(p), Err(ApolyError::TooLarge { .. })), "{p}");
        }
    }

    #[test]
    fn order_validation() {
        let bad: Vec<String> = ["s1", "s2", "s2", "lambda"].iter().map(|s| s.to_string()).collect();
        let params = PretzelParams::new(0, 0, 1).unwrap();
        assert!(matches!(hard_apoly_with(params, Some(&bad), None), Err(ApolyError::InvalidOrder(_))));
    }

    #[test]
    fn pieces_split_by_kind_and_multiplicity() {
        let f = p("(u^2 + 3)*(w - 2)^2*(u*w - 1)*(u + w)^3");
        let mut pieces = pieces_of(&f);
        pieces.sort_by_key(|x| (x.multiplicity, x.poly.num_terms()));
        let got: Vec<(PieceKind, u32, MultiPoly)> = pieces.into_iter().map(|x| (x.kind, x.multiplicity, x.poly)).collect();
        assert_eq!(
            got,
            vec![
                (PieceKind::UOnly, 1, p("u^2 + 3")),
                (PieceKind::Mixed, 1, p("u*w - 1")),
                (PieceKind::WOnly, 2, p("w - 2")),
                (PieceKind::Mixed, 3, p("u + w")),
            ]
        );
    }

    #[test]
    fn small_knot_hard_part() {
        let params = PretzelParams::new(0, 0, 1).unwrap();
        let r = hard_apoly_with(params, None, None).unwrap();
        assert_eq!(r.elimination_order, ["s1", "s2", "s3", "lambda"]);
        assert!(r.poly.is_integral());
        assert_eq!(content_primitive(&r.poly).1, r.poly);
        let again = hard_apoly_with(params, None, None).unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), serde_json::to_string(&again).unwrap());
    }
}
