//! Successive resultant elimination with saturation by factors that are
//! known not to vanish on the solutions of interest.

use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polycore::{content_primitive, gcd, resultant_uni, square_free_keep_content, MultiPoly, PolyError, Rational};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum EliminationError {
    #[error("resultant vanished identically while eliminating {var} (stage {stage})")]
    ZeroResultant { stage: usize, var: String },
    #[error("system became inconsistent while eliminating {var} (stage {stage})")]
    Inconsistent { stage: usize, var: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyStats {
    pub terms: usize,
    pub total_degree: u32,
    pub coefficient_bits: u64,
}

impl PolyStats {
    pub fn of(p: &MultiPoly) -> PolyStats {
        PolyStats {
            terms: p.num_terms(),
            total_degree: p.total_degree(),
            coefficient_bits: p.terms().map(|(_, c)| c.numer().bits().max(c.denom().bits())).max().unwrap_or(0),
        }
    }
}

/// What one elimination stage did.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageReport {
    pub var: String,
    pub pivot_degree: u32,
    pub inputs: usize,
    pub outputs: Vec<PolyStats>,
    /// Excluded factors divided out, as `factor^multiplicity`.
    pub saturated: Vec<String>,
    pub millis: u128,
}

#[derive(Debug, Clone)]
pub struct Elimination {
    pub order: Vec<String>,
    /// `stages[0]` is the normalized input; `stages[i]` no longer involves `order[..i]`.
    pub stages: Vec<Vec<MultiPoly>>,
    pub reports: Vec<StageReport>,
    /// Gcd of the polynomials left after the last stage.
    pub combined: MultiPoly,
    /// `combined` with repeated factors removed in every remaining variable.
    pub result: MultiPoly,
}

fn primitive(p: &MultiPoly) -> MultiPoly {
    content_primitive(p).1
}

/// Cheap exact test that rules out most non-divisors: specialize every
/// variable but one to fixed integers and take a univariate remainder.
fn may_divide(p: &MultiPoly, f: &MultiPoly) -> bool {
    const POINTS: [i64; 8] = [3, -5, 7, 2, -11, 13, 6, -4];
    let Some(var) = f.vars().iter().find(|v| p.has_var(v)) else {
        return false;
    };
    let mut others: Vec<&String> = p.vars().iter().chain(f.vars()).filter(|v| *v != var).collect();
    others.sort();
    others.dedup();
    let values: Vec<(&str, Rational)> = others
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), Rational::from_integer(BigInt::from(POINTS[i % POINTS.len()]))))
        .collect();
    let fs = f.substitute_values(&values);
    if fs.degree_in(var) != f.degree_in(var) || fs.is_constant() {
        return true;
    }
    p.substitute_values(&values).pseudo_rem(&fs, var).is_zero()
}

/// Divides out every power of each excluded factor that divides `p` exactly.
pub fn saturate(mut p: MultiPoly, excluded: &[MultiPoly], log: &mut Vec<String>) -> MultiPoly {
    for f in excluded {
        if f.is_constant() || !f.vars().iter().all(|v| p.has_var(v)) {
            continue;
        }
        let mut count = 0;
        while !p.is_constant() && may_divide(&p, f) {
            match p.div_exact(f) {
                Ok(q) => {
                    p = q;
                    count += 1;
                }
                Err(_) => break,
            }
        }
        if count > 0 {
            log.push(format!("({f})^{count}"));
        }
    }
    p
}

/// Eliminates the variables of `order` one at a time. At each stage the
/// polynomial of lowest degree in the current variable is the pivot and is
/// paired with every other polynomial involving that variable. Each
/// resultant is saturated by `excluded`, made primitive, and stripped of
/// repeated factors in the next variable to be eliminated.
pub fn eliminate_chain(system: &[MultiPoly], order: &[&str], excluded: &[MultiPoly]) -> Result<Elimination, EliminationError> {
    let mut current: Vec<MultiPoly> = Vec::new();
    for p in system.iter().filter(|p| !p.is_zero()) {
        let q = primitive(p);
        if !current.contains(&q) {
            current.push(q);
        }
    }
    let mut stages = vec![current.clone()];
    let mut reports = Vec::new();
    for (i, var) in order.iter().enumerate() {
        let start = Instant::now();
        let stage = i + 1;
        let next = order.get(i + 1).copied();
        let (with, without): (Vec<MultiPoly>, Vec<MultiPoly>) = current.iter().cloned().partition(|p| p.has_var(var));
        let inputs = current.len();
        let mut saturated = Vec::new();
        let mut pivot_degree = 0;
        let mut produced = Vec::new();
        if !with.is_empty() {
            let pivot_idx = (0..with.len())
                .min_by_key(|&j| (with[j].degree_in(var), with[j].num_terms()))
                .unwrap();
            let pivot = &with[pivot_idx];
            pivot_degree = pivot.degree_in(var);
            let others: Vec<&MultiPoly> = with.iter().enumerate().filter(|(j, _)| *j != pivot_idx).map(|(_, p)| p).collect();
            let results: Vec<Result<(MultiPoly, Vec<String>), EliminationError>> = others
                .par_iter()
                .map(|q| {
                    let r = resultant_uni(pivot, q, var)?;
                    if r.is_zero() {
                        return Err(EliminationError::ZeroResultant { stage, var: var.to_string() });
                    }
                    let mut log = Vec::new();
                    let r = primitive(&saturate(primitive(&r), excluded, &mut log));
                    if r.is_constant() {
                        return Err(EliminationError::Inconsistent { stage, var: var.to_string() });
                    }
                    let r = match next {
                        Some(v) if r.has_var(v) => square_free_keep_content(&r, v),
                        _ => r,
                    };
                    Ok((r, log))
                })
                .collect();
            for res in results {
                let (r, log) = res?;
                saturated.extend(log);
                produced.push(r);
            }
        }
        let mut next_stage: Vec<MultiPoly> = Vec::new();
        for p in without.into_iter().chain(produced) {
            if !next_stage.contains(&p) {
                next_stage.push(p);
            }
        }
        reports.push(StageReport {
            var: var.to_string(),
            pivot_degree,
            inputs,
            outputs: next_stage.iter().map(PolyStats::of).collect(),
            saturated,
            millis: start.elapsed().as_millis(),
        });
        current = next_stage;
        stages.push(current.clone());
    }
    let combined = current.iter().fold(MultiPoly::zero(), |acc, p| gcd(&acc, p));
    let mut result = combined.clone();
    let remaining: Vec<String> = result.vars().to_vec();
    for v in &remaining {
        result = square_free_keep_content(&result, v);
    }
    if result.is_constant() {
        let var = order.last().map(|s| s.to_string()).unwrap_or_default();
        return Err(EliminationError::Inconsistent { stage: order.len(), var });
    }
    Ok(Elimination {
        order: order.iter().map(|s| s.to_string()).collect(),
        stages,
        reports,
        combined,
        result,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn circle_and_line() {
        let sys = [p("x^2 + y^2 - 5"), p("x - y - 1")];
        let e = eliminate_chain(&sys, &["x"], &[]).unwrap();
        // (y+1)^2 + y^2 - 5 = 2(y^2 + y - 2)
        assert_eq!(e.result, p("y^2 + y - 2"));
        assert_eq!(e.stages.len(), 2);
    }

    #[test]
    fn final_result_is_square_free() {
        let sys = [p("x - y^2"), p("(x - 1)^2*(x + y)")];
        let e = eliminate_chain(&sys, &["x"], &[]).unwrap();
        // (y^2 - 1)^2 (y^2 + y) reduces to (y - 1)(y + 1) y (y + 1) without repeats
        assert_eq!(e.result, p("(y^2 - 1)*y"));
    }

    #[test]
    fn saturation_removes_planted_factor() {
        let sys = [p("x - y"), p("(y - 2)*(x^2 - 3)")];
        let plain = eliminate_chain(&sys, &["x"], &[]).unwrap();
        assert_eq!(plain.result, p("(y - 2)*(y^2 - 3)"));
        let e = eliminate_chain(&sys, &["x"], &[p("y - 2")]).unwrap();
        assert_eq!(e.result, p("y^2 - 3"));
        assert_eq!(e.reports[0].saturated, vec!["(y - 2)^1".to_string()]);
    }

    #[test]
    fn common_factor_gives_zero_resultant() {
        let sys = [p("(y - 2)*(x + 1)"), p("(y - 2)*(x - 3)")];
        let err = eliminate_chain(&sys, &["y"], &[]).unwrap_err();
        assert_eq!(err, EliminationError::ZeroResultant { stage: 1, var: "y".into() });
    }

    #[test]
    fn saturate_counts_multiplicity() {
        let mut log = Vec::new();
        let q = saturate(p("(u^2+1)^2*(w - u)"), &[p("u^2 + 1"), p("u")], &mut log);
        assert_eq!(q, p("w - u"));
        assert_eq!(log, vec!["(u^2 + 1)^2".to_string()]);
    }
}
