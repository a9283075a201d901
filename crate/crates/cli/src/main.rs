use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use pretzel_charvar::apoly::{
    default_cache_dir, hard_apoly_with, peripheral_check, sample_peripheral_pairs, verify_apoly, APolyResult, ApolyError, ApolyStep,
    FactorPiece, PeripheralCheck, PeripheralPair, PieceSupport, VerifyReport,
};
use pretzel_charvar::charvariety::{
    adjudicate_x2, build_representation_unchecked, component_systems, enumerate_x2, sample_x3, CharPoint, CharVarError, ComponentSystem,
    Conic, PretzelParams, SampleOptions, X2Verdict,
};
use pretzel_charvar::polycore::{ComplexVal, MultiPoly};
use pretzel_charvar::selftest::{self, SuiteReport};

/// Character varieties and A-polynomial hard parts of the pretzel knots
/// P(2k1+1, 2k2+1, 2k3).
///
/// Every random choice derives from --seed through ChaCha8 streams, one
/// stream per draw, so output does not depend on thread count.
#[derive(Parser)]
#[command(name = "pretzel", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Clone, Copy)]
struct Knot {
    #[arg(long, allow_negative_numbers = true)]
    k1: i64,
    #[arg(long, allow_negative_numbers = true)]
    k2: i64,
    #[arg(long, allow_negative_numbers = true)]
    k3: i64,
}

#[derive(Args, Clone, Copy)]
struct Format {
    /// Machine-readable output.
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Human-readable output (the default).
    #[arg(long)]
    text: bool,
}

#[derive(Args, Clone, Copy)]
struct Sampling {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    count: usize,
    /// Residual bound for accepting points and for vanishing.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Subcommand)]
enum Verb {
    /// Equations and inequations of every component.
    Charvar {
        #[command(flatten)]
        knot: Knot,
        #[command(flatten)]
        format: Format,
    },
    /// The conic components, each realized at a few points.
    X2 {
        #[command(flatten)]
        knot: Knot,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        format: Format,
    },
    /// Hard part of the A-polynomial, checked on sampled peripheral pairs.
    Apoly {
        #[command(flatten)]
        knot: Knot,
        /// Elimination order, a comma list of s1, s2, s3, lambda.
        #[arg(long)]
        order: Option<String>,
        /// Defaults to $APOLY_CACHE_DIR, then a directory under the system temp dir.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[command(flatten)]
        sampling: Sampling,
        #[command(flatten)]
        format: Format,
    },
    /// Points of the main component with their representations.
    Sample {
        #[command(flatten)]
        knot: Knot,
        #[command(flatten)]
        sampling: Sampling,
        #[command(flatten)]
        format: Format,
    },
    /// Checks a saved hard part against saved peripheral pairs.
    Verify {
        /// Output of `apoly --json`.
        #[arg(long)]
        apoly: PathBuf,
        /// Output of `sample --json`, or a JSON list of {"u", "w"} pairs.
        #[arg(long)]
        samples: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        format: Format,
    },
    /// Runs the invariant suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also compute the hard part of (1,1,1).
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        format: Format,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<CharVarError> for Failure {
    fn from(e: CharVarError) -> Self {
        match e {
            CharVarError::InvalidParams(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<ApolyError> for Failure {
    fn from(e: ApolyError) -> Self {
        match e {
            ApolyError::InvalidOrder(_) => Failure::Usage(e.to_string()),
            ApolyError::CharVar(inner) => inner.into(),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Outcome = Result<ExitCode, Failure>;

fn params(k: Knot) -> Result<PretzelParams, Failure> {
    Ok(PretzelParams::new(k.k1, k.k2, k.k3)?)
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    if format.json {
        println!("{}", serde_json::to_string_pretty(value).expect("output serializes"));
    } else {
        print!("{}", text());
    }
}

fn fmt_c(z: ComplexVal) -> String {
    if z.im == 0.0 {
        format!("{:.6}", z.re)
    } else {
        format!("{:.6}{:+.6}i", z.re, z.im)
    }
}

#[derive(Serialize)]
struct CharvarOut {
    knot: PretzelParams,
    components: Vec<ComponentSystem>,
}

fn charvar(knot: Knot, format: Format) -> Outcome {
    let knot = params(knot)?;
    let out = CharvarOut { knot, components: component_systems(knot) };
    emit(format, &out, || {
        let mut s = format!("{} {knot}: {} components\n", knot.knot_name(), out.components.len());
        for c in &out.components {
            let _ = writeln!(s, "  {:<16} {} equations, {} inequations", c.label, c.equations.len(), c.inequations.len());
        }
        s
    });
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct X2Out {
    knot: PretzelParams,
    count: usize,
    components: Vec<X2Entry>,
}

#[derive(Serialize)]
struct X2Entry {
    h: [i64; 3],
    s: [f64; 3],
    conic: Conic,
    conic_text: String,
    interior: bool,
    exact_residuals: [f64; 3],
    verdict: X2Verdict,
}

fn x2(knot: Knot, seed: u64, tol: f64, format: Format) -> Outcome {
    let knot = params(knot)?;
    let components: Vec<X2Entry> = enumerate_x2(knot)
        .into_iter()
        .map(|c| X2Entry {
            verdict: adjudicate_x2(knot, &c, seed, tol),
            conic_text: c.conic.to_string(),
            h: c.h,
            s: c.s,
            conic: c.conic,
            interior: c.interior,
            exact_residuals: c.exact_residuals,
        })
        .collect();
    let out = X2Out { knot, count: components.len(), components };
    emit(format, &out, || {
        let mut s = format!("{} {knot}: {} conic components\n", knot.knot_name(), out.count);
        for c in &out.components {
            let kind = if c.interior { "interior" } else { "endpoint" };
            let verdict = if c.verdict.verified {
                format!("realized, relations {:.1e}", c.verdict.relation_residual)
            } else {
                format!("not realized: {}", c.verdict.reason.as_deref().unwrap_or("relations fail"))
            };
            let _ = writeln!(s, "  h={:?} s=({:.6}, {:.6}, {:.6}) {kind}; {verdict}", c.h, c.s[0], c.s[1], c.s[2]);
        }
        s
    });
    Ok(ExitCode::SUCCESS)
}

#[derive(Debug, Serialize, Deserialize)]
struct Verification {
    n_samples: usize,
    max_scaled_residual: f64,
    unsupported_factors: bool,
    passed: usize,
    failed: usize,
    tol: f64,
    max_root_distance: f64,
    pieces: Vec<PieceSupport>,
}

impl From<&VerifyReport> for Verification {
    fn from(r: &VerifyReport) -> Self {
        Verification {
            n_samples: r.n_samples,
            max_scaled_residual: r.max_scaled_residual,
            unsupported_factors: r.unsupported_factors,
            passed: r.passed,
            failed: r.failed,
            tol: r.tol,
            max_root_distance: r.max_root_distance,
            pieces: r.pieces.clone(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct ApolyOut {
    knot: PretzelParams,
    order: Vec<String>,
    apoly: MultiPoly,
    apoly_text: String,
    /// `(u, w)` are the upper-left entries of the meridian and longitude.
    convention: String,
    steps: Vec<ApolyStep>,
    #[serde(default)]
    pieces: Vec<FactorPiece>,
    verification: Verification,
}

const CONVENTION: &str = "u, w: upper-left entries of the meridian and longitude images in a common upper-triangular frame";

fn verification_text(v: &Verification) -> String {
    let mut s = format!(
        "verification: {}/{} pairs vanish (tol {:e}), max scaled residual {:.2e}, max root distance {:.2e}\n",
        v.passed, v.n_samples, v.tol, v.max_scaled_residual, v.max_root_distance
    );
    for p in &v.pieces {
        let _ = writeln!(
            s,
            "  piece {:?} multiplicity {} degree ({}, {}), {} terms: vanishes on {}{}",
            p.kind,
            p.multiplicity,
            p.degree_u,
            p.degree_w,
            p.terms,
            p.vanishing_samples,
            if p.supported { "" } else { " (unsupported)" }
        );
    }
    s
}

fn apoly(knot: Knot, order: Option<String>, cache_dir: Option<PathBuf>, sampling: Sampling, format: Format) -> Outcome {
    let knot = params(knot)?;
    let order: Option<Vec<String>> = order.map(|o| o.split(',').map(|v| v.trim().to_string()).collect());
    let cache = cache_dir.or_else(default_cache_dir);
    if let Some(dir) = &cache {
        std::fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("cache directory {}: {e}", dir.display())))?;
    }
    let result = hard_apoly_with(knot, order.as_deref(), cache.as_deref())?;
    let pairs: Vec<PeripheralPair> =
        sample_peripheral_pairs(knot, sampling.count, sampling.seed, sampling.tol)?.iter().map(|c| c.pair).collect();
    let report = verify_apoly(&result, &pairs, sampling.tol);
    let out = ApolyOut {
        knot,
        order: result.elimination_order.clone(),
        apoly_text: result.poly.to_string(),
        apoly: result.poly,
        convention: CONVENTION.into(),
        steps: result.steps,
        pieces: result.pieces,
        verification: Verification::from(&report),
    };
    emit(format, &out, || {
        format!(
            "hard part of {} {knot} in (u, w), order {}\n{}\ndegree ({}, {}), {} terms\n{}",
            knot.knot_name(),
            out.order.join(","),
            out.apoly_text,
            out.apoly.degree_in("u"),
            out.apoly.degree_in("w"),
            out.apoly.num_terms(),
            verification_text(&out.verification)
        )
    });
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize, Deserialize)]
struct Residuals {
    equation: f64,
    relation: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct SampleOut {
    point: CharPoint,
    lambda: ComplexVal,
    draw: usize,
    residuals: Residuals,
    membership: Vec<String>,
    local_dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    construction_error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    peripheral: Option<PeripheralCheck>,
}

#[derive(Serialize)]
struct SampleReportOut {
    knot: PretzelParams,
    seed: u64,
    tol: f64,
    samples: Vec<SampleOut>,
}

fn sample(knot: Knot, sampling: Sampling, format: Format) -> Outcome {
    let knot = params(knot)?;
    let opts = SampleOptions { count: sampling.count, seed: sampling.seed, tol: sampling.tol, ..Default::default() };
    let samples: Vec<SampleOut> = sample_x3(knot, opts)?
        .into_iter()
        .map(|s| {
            let peripheral = match s.relation_residual {
                Some(r) if r < sampling.tol => {
                    build_representation_unchecked(&s.point, knot, sampling.tol).ok().and_then(|rep| peripheral_check(&rep, sampling.tol).ok())
                }
                _ => None,
            };
            SampleOut {
                point: s.point,
                lambda: s.lambda,
                draw: s.draw,
                residuals: Residuals { equation: s.equation_residual, relation: s.relation_residual },
                membership: s.membership,
                local_dimension: s.local_dimension,
                construction_error: s.construction_error,
                peripheral,
            }
        })
        .collect();
    let out = SampleReportOut { knot, seed: sampling.seed, tol: sampling.tol, samples };
    emit(format, &out, || {
        let mut s = format!("{} {knot}: {} points of X3 (seed {})\n", knot.knot_name(), out.samples.len(), out.seed);
        for x in &out.samples {
            let rel = x.residuals.relation.map_or_else(|| "none".to_string(), |r| format!("{r:.1e}"));
            let per = x.peripheral.as_ref().map_or_else(String::new, |p| format!(" u={} w={}", fmt_c(p.pair.u), fmt_c(p.pair.w)));
            let _ = writeln!(
                s,
                "  draw {:>3} t={} s=({}, {}, {}) lambda={} equations {:.1e} relations {rel}{per}",
                x.draw,
                fmt_c(x.point.t),
                fmt_c(x.point.s1),
                fmt_c(x.point.s2),
                fmt_c(x.point.s3),
                fmt_c(x.lambda),
                x.residuals.equation
            );
        }
        s
    });
    Ok(ExitCode::SUCCESS)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ApolyInput {
    Cli(ApolyOut),
    Raw(APolyResult),
}

#[derive(Deserialize)]
struct SampleIn {
    #[serde(default)]
    peripheral: Option<PeripheralCheck>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SamplesInput {
    Report { samples: Vec<SampleIn> },
    Pairs(Vec<PeripheralPair>),
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path, what: &str) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{} is not {what}: {e}", path.display())))
}

#[derive(Serialize)]
struct VerifyOut {
    knot: PretzelParams,
    report: VerifyReport,
}

fn verify(apoly: &Path, samples: &Path, tol: f64, format: Format) -> Outcome {
    let result = match read_json::<ApolyInput>(apoly, "an apoly result")? {
        ApolyInput::Raw(r) => r,
        ApolyInput::Cli(o) => APolyResult { knot: o.knot, elimination_order: o.order, poly: o.apoly, steps: o.steps, pieces: o.pieces },
    };
    let pairs: Vec<PeripheralPair> = match read_json::<SamplesInput>(samples, "a sample report or a list of pairs")? {
        SamplesInput::Report { samples } => samples.into_iter().filter_map(|s| s.peripheral.map(|p| p.pair)).collect(),
        SamplesInput::Pairs(p) => p,
    };
    if pairs.is_empty() {
        return Err(Failure::Usage(format!("{} holds no peripheral pairs", samples.display())));
    }
    let report = verify_apoly(&result, &pairs, tol);
    let ok = report.failed == 0;
    let out = VerifyOut { knot: result.knot, report };
    emit(format, &out, || {
        let mut s = format!("{} {}: ", out.knot.knot_name(), out.knot);
        s.push_str(&verification_text(&Verification::from(&out.report)));
        for r in out.report.samples.iter().filter(|r| !r.pass) {
            let _ = writeln!(s, "  fails at u={} w={}: residual {:.2e}", fmt_c(r.pair.u), fmt_c(r.pair.w), r.residual.max(r.inverse_residual));
        }
        s
    });
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[derive(Serialize)]
struct SuiteOut {
    id: String,
    name: String,
    pass: bool,
    detail: String,
}

fn run_selftest(seed: u64, full: bool, format: Format) -> Outcome {
    let mut reports: Vec<SuiteReport> = selftest::quick_suites(seed);
    if full {
        reports.push(selftest::hard_part((1, 1, 1), (0, 0, 1), seed, 600.0));
    }
    let ok = reports.iter().all(|r| r.pass);
    // timings stay out of the JSON so that it is reproducible
    let json: Vec<SuiteOut> =
        reports.iter().map(|r| SuiteOut { id: r.id.clone(), name: r.name.clone(), pass: r.pass, detail: r.detail.clone() }).collect();
    emit(format, &json, || {
        let mut s: String = reports.iter().map(|r| r.line() + "\n").collect();
        let _ = writeln!(s, "{}/{} suites pass", reports.iter().filter(|r| r.pass).count(), reports.len());
        s
    });
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.verb {
        Verb::Charvar { knot, format } => charvar(knot, format),
        Verb::X2 { knot, seed, tol, format } => x2(knot, seed, tol, format),
        Verb::Apoly { knot, order, cache_dir, sampling, format } => apoly(knot, order, cache_dir, sampling, format),
        Verb::Sample { knot, sampling, format } => sample(knot, sampling, format),
        Verb::Verify { apoly, samples, tol, format } => verify(&apoly, &samples, tol, format),
        Verb::Selftest { seed, full, format } => run_selftest(seed, full, format),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
