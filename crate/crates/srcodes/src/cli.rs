//! Command surface: build a code pair from a config file, report its
//! parameters and design-region status, encode and decode single words,
//! verify the decoder exhaustively over all errors up to the radius, run
//! Monte Carlo comparisons against the baseline decoder, and search for
//! code pairs that only the two-step decoder covers.
//!
//! The config format is two `[C1]` / `[C2]` sections of `key=value` lines
//! (`kind`, `n`, `k`, `delta`, `points`, `G`), `#` comments allowed.
//! Distances of small component codes (up to 4^8 codewords) are made
//! exact on load, so radius computations use the best verifiable value.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::channel::{self, count_errors_up_to};
use crate::codes::{codeword_count, Distance, LinearCode};
use crate::gf::{parse_gf4_vec, Gf4};
use crate::rng::SplitMix64;
use crate::srdec::{
    check_design_conditions, decode_ccq, decode_two_step, decode_two_step_symmetric,
    DesignReport, SrCode, SrOutcome,
};
use crate::sumrank::{DsrEstimate, SrWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("usage error: {0}")]
    Usage(String),
}

/// Which sum-rank decoder(s) a command should run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderChoice {
    TwoStep,
    Symmetric,
    Ccq,
    Both,
}

impl std::str::FromStr for DecoderChoice {
    type Err = CliError;
    fn from_str(s: &str) -> Result<DecoderChoice, CliError> {
        match s {
            "two-step" => Ok(DecoderChoice::TwoStep),
            "symmetric" => Ok(DecoderChoice::Symmetric),
            "ccq" => Ok(DecoderChoice::Ccq),
            "both" => Ok(DecoderChoice::Both),
            other => Err(CliError::Usage(format!(
                "unknown decoder {other:?} (expected two-step, symmetric, ccq or both)"
            ))),
        }
    }
}

/// Parses the two-section config text into the component codes, upgrading
/// cheap distances to exact. Returns any construction warnings.
pub fn load_pair(config: &str) -> Result<(LinearCode, LinearCode, Vec<String>), CliError> {
    let mut sections: Vec<(String, std::collections::BTreeMap<String, String>)> = Vec::new();
    for (lineno, raw) in config.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            sections.push((name.to_string(), Default::default()));
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Config(format!(
                "line {}: expected key=value, got {line:?}",
                lineno + 1
            )));
        };
        let Some((_, map)) = sections.last_mut() else {
            return Err(CliError::Config(format!(
                "line {}: key=value outside a [C1]/[C2] section",
                lineno + 1
            )));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    let mut warnings = Vec::new();
    let take = |name: &str, warnings: &mut Vec<String>| -> Result<LinearCode, CliError> {
        let map = sections
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| CliError::Config(format!("missing [{name}] section")))?;
        let mut code =
            LinearCode::from_kv(map).map_err(|e| CliError::Config(format!("[{name}] {e}")))?;
        if let Some(g) = map.get("G") {
            let given = g.split(';').count();
            if given > code.k() {
                warnings.push(format!(
                    "[{name}] dropped {} dependent generator row(s)",
                    given - code.k()
                ));
            }
        }
        if !code.distance().is_exact() && codeword_count(code.k()) <= 1 << 16 {
            code.min_distance_exhaustive().expect("within cap");
        }
        Ok(code)
    };
    let c1 = take("C1", &mut warnings)?;
    let c2 = take("C2", &mut warnings)?;
    if c1.n() != c2.n() {
        return Err(CliError::Config(format!(
            "C1 and C2 lengths differ: {} vs {}",
            c1.n(),
            c2.n()
        )));
    }
    Ok((c1, c2, warnings))
}

fn build_sr(config: &str) -> Result<(SrCode, Vec<String>), CliError> {
    let (c1, c2, warnings) = load_pair(config)?;
    let code = SrCode::new(c1, c2).map_err(|e| CliError::Config(e.to_string()))?;
    Ok((code, warnings))
}

fn fmt_distance(d: Distance) -> String {
    match d {
        Distance::Exact(v) => format!("{v} (exact)"),
        Distance::Designed(v) => format!("{v} (designed)"),
        Distance::Bound(v) => format!("{v} (lower bound)"),
    }
}

/// Parameter and design-region report for a configured pair.
#[derive(Debug, Clone)]
pub struct ParamsReport {
    pub warnings: Vec<String>,
    pub l: usize,
    pub k1: usize,
    pub k2: usize,
    pub d1: Distance,
    pub d2: Distance,
    pub binary_dimension: usize,
    pub dsr: DsrEstimate,
    pub unique_radius: usize,
    pub design: DesignReport,
    pub two_step_applicable: Result<(), String>,
    pub ccq_applicable: Result<(), String>,
}

impl fmt::Display for ParamsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        writeln!(f, "l = {}", self.l)?;
        writeln!(f, "C1: k1 = {}, d1 = {}", self.k1, fmt_distance(self.d1))?;
        writeln!(f, "C2: k2 = {}, d2 = {}", self.k2, fmt_distance(self.d2))?;
        writeln!(f, "binary dimension 2(k1+k2) = {}", self.binary_dimension)?;
        writeln!(f, "dsr = {}", self.dsr)?;
        writeln!(f, "unique radius = {}", self.unique_radius)?;
        let (a, b) = self.design.delta1;
        writeln!(f, "delta1 = d1/dsr in [{a:.3}, {b:.3}]")?;
        let (a, b) = self.design.delta2;
        writeln!(f, "delta2 = d2/dsr in [{a:.3}, {b:.3}]")?;
        writeln!(f, "condition d2 >= dsr: {}", self.design.two_step_ok)?;
        writeln!(f, "condition d1 >= (2/3) dsr: {}", self.design.ccq_ok)?;
        writeln!(
            f,
            "sufficient condition d2 >= 2 d1: {}",
            if self.design.sufficient_d2_ge_2d1 { "yes" } else { "no" }
        )?;
        match &self.two_step_applicable {
            Ok(()) => writeln!(f, "two-step decoder: applicable")?,
            Err(e) => writeln!(f, "two-step decoder: not applicable ({e})")?,
        }
        match &self.ccq_applicable {
            Ok(()) => writeln!(f, "ccq decoder: applicable")?,
            Err(e) => writeln!(f, "ccq decoder: not applicable ({e})")?,
        }
        Ok(())
    }
}

pub fn cmd_params(config: &str) -> Result<ParamsReport, CliError> {
    let (code, warnings) = build_sr(config)?;
    let (c1, c2) = (code.c1(), code.c2());
    Ok(ParamsReport {
        warnings,
        l: code.block_len(),
        k1: c1.k(),
        k2: c2.k(),
        d1: c1.distance(),
        d2: c2.distance(),
        binary_dimension: code.binary_dimension(),
        dsr: code.dsr(),
        unique_radius: code.unique_radius(),
        design: check_design_conditions(
            c1.distance().value(),
            c2.distance().value(),
            code.dsr(),
        ),
        two_step_applicable: code.can_decode_two_step().map_err(|e| e.to_string()),
        ccq_applicable: code.can_decode_ccq().map_err(|e| e.to_string()),
    })
}

/// Encodes a message pair; output is the two-line word format, plus the
/// matrix dump when requested.
pub fn cmd_encode(
    config: &str,
    m1: &str,
    m2: &str,
    matrices: bool,
) -> Result<String, CliError> {
    let (c1, c2, _) = load_pair(config)?;
    let m1 = parse_gf4_vec(m1).map_err(|e| CliError::Usage(e.to_string()))?;
    let m2 = parse_gf4_vec(m2).map_err(|e| CliError::Usage(e.to_string()))?;
    let a1 = c1.encode(&m1).map_err(|e| CliError::Usage(format!("m1: {e}")))?;
    let a2 = c2.encode(&m2).map_err(|e| CliError::Usage(format!("m2: {e}")))?;
    let word = SrWord::new(a1, a2).expect("codeword lengths match");
    let mut out = word.to_text();
    if matrices {
        out.push('\n');
        out.push_str(&word.matrix_dump());
    }
    out.push('\n');
    Ok(out)
}

/// Decodes a received word (two-line format) and renders the report(s).
pub fn cmd_decode(
    config: &str,
    word_text: &str,
    choice: DecoderChoice,
) -> Result<String, CliError> {
    let (code, _) = build_sr(config)?;
    let word: SrWord = word_text
        .parse()
        .map_err(|e: crate::sumrank::SumrankError| CliError::Usage(e.to_string()))?;
    let mut out = String::new();
    let run = |which: DecoderChoice| -> Result<String, CliError> {
        let report = match which {
            DecoderChoice::TwoStep => decode_two_step(&code, &word),
            DecoderChoice::Symmetric => decode_two_step_symmetric(&code, &word),
            DecoderChoice::Ccq => decode_ccq(&code, &word),
            DecoderChoice::Both => unreachable!(),
        }
        .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(report.to_kv())
    };
    match choice {
        DecoderChoice::Both => {
            out.push_str("decoder=two-step\n");
            out.push_str(&run(DecoderChoice::TwoStep)?);
            out.push_str("decoder=ccq\n");
            out.push_str(&run(DecoderChoice::Ccq)?);
        }
        one => out.push_str(&run(one)?),
    }
    Ok(out)
}

/// Exhaustive verification outcome.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub warnings: Vec<String>,
    pub radius: usize,
    pub w_max: usize,
    /// Number of error words checked (the zero word included).
    pub total: usize,
    pub successes: usize,
    pub failures_within_radius: usize,
    pub failures_beyond_radius: usize,
    /// Filled when the baseline decoder was run for comparison.
    pub ccq: Option<CcqComparison>,
}

#[derive(Debug, Clone, Default)]
pub struct CcqComparison {
    pub attempted: usize,
    pub successes: usize,
    /// Instances within the radius where both decoders succeeded with the
    /// same codeword.
    pub agreements: usize,
    pub disagreements: usize,
    pub failures_within_radius: usize,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        writeln!(f, "unique radius = {}", self.radius)?;
        writeln!(f, "checked every error of weight <= {}: {} words", self.w_max, self.total)?;
        writeln!(f, "two-step successes: {}", self.successes)?;
        writeln!(
            f,
            "two-step failures within radius: {}",
            self.failures_within_radius
        )?;
        if self.w_max > self.radius {
            writeln!(
                f,
                "two-step failures beyond radius (allowed): {}",
                self.failures_beyond_radius
            )?;
        }
        if let Some(ccq) = &self.ccq {
            writeln!(f, "ccq attempted: {}", ccq.attempted)?;
            writeln!(f, "ccq successes: {}", ccq.successes)?;
            writeln!(f, "ccq failures within radius: {}", ccq.failures_within_radius)?;
            writeln!(f, "agreements within radius: {}", ccq.agreements)?;
            writeln!(f, "disagreements: {}", ccq.disagreements)?;
        }
        Ok(())
    }
}

pub fn cmd_verify(
    config: &str,
    w_max: Option<usize>,
    choice: DecoderChoice,
) -> Result<VerifyReport, CliError> {
    let (code, warnings) = build_sr(config)?;
    let mut report = verify_code(&code, w_max, choice)?;
    report.warnings = warnings;
    Ok(report)
}

/// Exhaustively decodes a fixed transmitted codeword under every error of
/// weight up to `w_max` (default: the unique radius).
pub fn verify_code(
    code: &SrCode,
    w_max: Option<usize>,
    choice: DecoderChoice,
) -> Result<VerifyReport, CliError> {
    code.can_decode_two_step()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let run_ccq = matches!(choice, DecoderChoice::Ccq | DecoderChoice::Both)
        && code.can_decode_ccq().is_ok();
    let radius = code.unique_radius();
    let w_max = w_max.unwrap_or(radius);
    let l = code.block_len();
    if count_errors_up_to(l, w_max) + 1 > channel::ERROR_ENUM_CAP {
        return Err(CliError::Usage(format!(
            "error space too large to enumerate at w_max = {w_max}; use simulate instead"
        )));
    }

    let a1 = deterministic_codeword(code.c1());
    let a2 = deterministic_codeword(code.c2());

    let mut errors = vec![SrWord::zero(l)];
    errors.extend(
        channel::enumerate_errors(l, w_max).map_err(|e| CliError::Usage(e.to_string()))?,
    );

    let mut report = VerifyReport {
        warnings: Vec::new(),
        radius,
        w_max,
        total: errors.len(),
        successes: 0,
        failures_within_radius: 0,
        failures_beyond_radius: 0,
        ccq: run_ccq.then(CcqComparison::default),
    };
    for e in &errors {
        let y = SrWord::new(
            a1.iter().zip(&e.v1).map(|(&a, &b)| a + b).collect(),
            a2.iter().zip(&e.v2).map(|(&a, &b)| a + b).collect(),
        )
        .expect("lengths match");
        let w = crate::sumrank::sr_weight(e);
        let ts = decode_two_step(code, &y).map_err(|e| CliError::Config(e.to_string()))?;
        let ts_correct = matches!(
            &ts.outcome,
            SrOutcome::Success { a1: x1, a2: x2, .. } if x1 == &a1 && x2 == &a2
        );
        if ts_correct {
            report.successes += 1;
        } else if w <= radius {
            report.failures_within_radius += 1;
        } else {
            report.failures_beyond_radius += 1;
        }
        if let Some(ccq_stats) = report.ccq.as_mut() {
            let cq = decode_ccq(code, &y).map_err(|e| CliError::Config(e.to_string()))?;
            ccq_stats.attempted += 1;
            let cq_correct = matches!(
                &cq.outcome,
                SrOutcome::Success { a1: x1, a2: x2, .. } if x1 == &a1 && x2 == &a2
            );
            if cq_correct {
                ccq_stats.successes += 1;
            } else if w <= radius {
                ccq_stats.failures_within_radius += 1;
            }
            if w <= radius {
                if ts_correct && cq_correct {
                    ccq_stats.agreements += 1;
                } else if ts.outcome.is_success() != cq.outcome.is_success() {
                    ccq_stats.disagreements += 1;
                }
            }
        }
    }
    Ok(report)
}

fn deterministic_codeword(code: &LinearCode) -> Vec<Gf4> {
    let msg: Vec<Gf4> = (0..code.k()).map(|i| Gf4::new((i as u8 % 3) + 1)).collect();
    code.encode(&msg).expect("message length matches")
}

/// Monte Carlo comparison output: a deterministic CSV (the two timing
/// columns excepted; they are wall-clock means and never asserted).
#[derive(Debug, Clone)]
pub struct SimulateReport {
    pub csv: String,
    pub warnings: Vec<String>,
}

pub fn cmd_simulate(
    config: &str,
    weights: &[usize],
    trials: usize,
    seed: u64,
) -> Result<SimulateReport, CliError> {
    let (code, load_warnings) = build_sr(config)?;
    let mut report = simulate_code(&code, weights, trials, seed)?;
    report.warnings.splice(0..0, load_warnings);
    Ok(report)
}

pub fn simulate_code(
    code: &SrCode,
    weights: &[usize],
    trials: usize,
    seed: u64,
) -> Result<SimulateReport, CliError> {
    if trials == 0 {
        return Err(CliError::Usage("trials must be at least 1".into()));
    }
    code.can_decode_two_step()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let ccq_applicable = code.can_decode_ccq().is_ok();
    let l = code.block_len();
    let mut csv =
        String::from("w,trials,ts_success,ccq_success,ts_calls1,ccq_calls1,ts_time_us,ccq_time_us\n");
    let mut warnings = Vec::new();

    for (wi, &w) in weights.iter().enumerate() {
        if w > 0 && channel::ErrorBudget::compositions(l, w).is_empty() {
            warnings.push(format!("weight {w} not achievable at block length {l}; skipped"));
            continue;
        }
        // one derived stream per (weight, trial)
        let results: Vec<TrialResult> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng =
                    SplitMix64::new(seed).fork((wi as u64) << 32 | t as u64);
                run_trial(code, w, ccq_applicable, &mut rng)
            })
            .collect();

        let n = trials as f64;
        let ts_success = results.iter().filter(|r| r.ts_correct).count() as f64 / n;
        let ts_calls1: f64 = results.iter().map(|r| r.ts_calls1 as f64).sum::<f64>() / n;
        let ts_time_us: f64 = results.iter().map(|r| r.ts_micros).sum::<f64>() / n;
        if ccq_applicable {
            let ccq_success = results.iter().filter(|r| r.ccq_correct).count() as f64 / n;
            let ccq_calls1: f64 =
                results.iter().map(|r| r.ccq_calls1 as f64).sum::<f64>() / n;
            let ccq_time_us: f64 = results.iter().map(|r| r.ccq_micros).sum::<f64>() / n;
            csv.push_str(&format!(
                "{w},{trials},{ts_success:.6},{ccq_success:.6},{ts_calls1:.4},{ccq_calls1:.4},{ts_time_us:.2},{ccq_time_us:.2}\n"
            ));
        } else {
            csv.push_str(&format!(
                "{w},{trials},{ts_success:.6},,{ts_calls1:.4},,{ts_time_us:.2},\n"
            ));
        }
    }
    Ok(SimulateReport { csv, warnings })
}

struct TrialResult {
    ts_correct: bool,
    ts_calls1: usize,
    ts_micros: f64,
    ccq_correct: bool,
    ccq_calls1: usize,
    ccq_micros: f64,
}

fn run_trial(code: &SrCode, w: usize, run_ccq: bool, rng: &mut SplitMix64) -> TrialResult {
    let l = code.block_len();
    let msg1: Vec<Gf4> = (0..code.c1().k()).map(|_| Gf4::new(rng.index(4) as u8)).collect();
    let msg2: Vec<Gf4> = (0..code.c2().k()).map(|_| Gf4::new(rng.index(4) as u8)).collect();
    let a1 = code.c1().encode(&msg1).expect("length");
    let a2 = code.c2().encode(&msg2).expect("length");
    let e = channel::sample_error_with(l, w, rng).expect("achievable checked");
    let y = SrWord::new(
        a1.iter().zip(&e.v1).map(|(&a, &b)| a + b).collect(),
        a2.iter().zip(&e.v2).map(|(&a, &b)| a + b).collect(),
    )
    .expect("lengths match");

    let started = Instant::now();
    let ts = decode_two_step(code, &y).expect("precondition checked");
    let ts_micros = started.elapsed().as_secs_f64() * 1e6;
    let ts_correct = matches!(
        &ts.outcome,
        SrOutcome::Success { a1: x1, a2: x2, .. } if x1 == &a1 && x2 == &a2
    );

    let (ccq_correct, ccq_calls1, ccq_micros) = if run_ccq {
        let started = Instant::now();
        let cq = decode_ccq(code, &y).expect("precondition checked");
        let micros = started.elapsed().as_secs_f64() * 1e6;
        let correct = matches!(
            &cq.outcome,
            SrOutcome::Success { a1: x1, a2: x2, .. } if x1 == &a1 && x2 == &a2
        );
        (correct, cq.calls_dec1, micros)
    } else {
        (false, 0, 0.0)
    };

    TrialResult {
        ts_correct,
        ts_calls1: ts.calls_dec1,
        ts_micros,
        ccq_correct,
        ccq_calls1,
        ccq_micros,
    }
}

/// A code pair covered by the two-step decoder but outside the baseline
/// decoder's design region: d2 >= dsr and d1 < (2/3) dsr.
#[derive(Debug, Clone)]
pub struct DesignWitness {
    pub l: usize,
    pub c1_desc: String,
    pub c2_desc: String,
    pub d1: usize,
    pub d2: usize,
    pub dsr: usize,
    pub delta1: f64,
    pub radius: usize,
    pub errors_checked: usize,
    pub verified: bool,
}

impl fmt::Display for DesignWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "l={} C1={} C2={} d1={} d2={} dsr={} delta1={:.3} radius={} verified={} ({} errors)",
            self.l,
            self.c1_desc,
            self.c2_desc,
            self.d1,
            self.d2,
            self.dsr,
            self.delta1,
            self.radius,
            self.verified,
            self.errors_checked
        )
    }
}

/// Searches small code pairs (RS and constant codes up to length 4, and
/// constant plus seeded generic codes beyond) for design-region witnesses,
/// then confirms each witness by exhaustive verification at its radius.
pub fn cmd_design_region_search(l_max: usize) -> Result<Vec<DesignWitness>, CliError> {
    let mut witnesses = Vec::new();
    let points: Vec<Gf4> = vec![Gf4::ZERO, Gf4::ONE, Gf4::W, Gf4::W2];
    for l in 2..=l_max.min(8) {
        let mut family: Vec<(String, LinearCode)> = Vec::new();
        if l <= 4 {
            for k in 1..=l {
                let code = LinearCode::reed_solomon(&points[..l], k).expect("valid dims");
                family.push((format!("rs[{l},{k}]"), code));
            }
        } else {
            family.push((format!("constant[{l}]"), LinearCode::constant(l).expect("n >= 1")));
            // a few deterministic generator matrices per dimension
            for k in 1..=2usize {
                for sample in 0..3u64 {
                    let mut rng = SplitMix64::new(0x5ea_c0de ^ (l as u64) << 8 ^ k as u64 ^ sample << 16);
                    let rows: Vec<Vec<Gf4>> = (0..k)
                        .map(|_| (0..l).map(|_| Gf4::new(rng.index(4) as u8)).collect())
                        .collect();
                    if let Ok((code, _)) = LinearCode::generic(&rows) {
                        if code.k() == k {
                            family.push((format!("generic[{l},{k}]#{sample}"), code));
                        }
                    }
                }
            }
        }
        for (desc1, c1) in &family {
            for (desc2, c2) in &family {
                let Ok(code) = SrCode::new(c1.clone(), c2.clone()) else {
                    continue;
                };
                let Some(dsr) = code.dsr().exact() else {
                    continue;
                };
                let (d1, d2) = (c1.distance().value(), c2.distance().value());
                // covered by the two-step decoder, outside the baseline
                // region: d2 >= dsr and d1 < (2/3) dsr
                if d2 < dsr || 3 * d1 >= 2 * dsr {
                    continue;
                }
                if code.can_decode_two_step().is_err() {
                    continue;
                }
                let verify = verify_code(&code, None, DecoderChoice::TwoStep)?;
                let witness = DesignWitness {
                    l,
                    c1_desc: desc1.clone(),
                    c2_desc: desc2.clone(),
                    d1,
                    d2,
                    dsr,
                    delta1: d1 as f64 / dsr as f64,
                    radius: code.unique_radius(),
                    errors_checked: verify.total,
                    verified: verify.failures_within_radius == 0,
                };
                witnesses.push(witness);
            }
        }
    }
    Ok(witnesses)
}
