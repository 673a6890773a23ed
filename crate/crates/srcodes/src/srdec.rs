//! Decoders for the sum-rank code built from a pair (C1, C2) of quaternary
//! codes of common length.
//!
//! [`decode_two_step`] is the erasure-guided procedure: one bounded-
//! minimum-distance decoding of C2 recovers the second error component,
//! whose support then serves as an erasure pattern for a single
//! error/erasure decoding of C1. It uniquely decodes every error of
//! sum-rank weight up to floor((dsr - 1) / 2) whenever d2 >= dsr, and it
//! spends exactly one call on each component decoder.
//!
//! [`decode_ccq`] is the three-candidate baseline it is compared against:
//! after the same C2 step it runs a BMD decoding of C1 on each of the
//! words y1 + s * e2 for s in {1, w, w^2} (at positions where both error
//! components are nonzero, exactly one s cancels the first component) and
//! accepts the unique radius-consistent result. Its guarantee additionally
//! needs d1 >= (2/3) dsr, which is the design constraint the two-step
//! decoder removes.
//!
//! Reports carry the erasure set, the (t, r) actually used, per-stage
//! decoder call counts, and per-stage wall-clock for the complexity
//! comparison.

use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::algdec::{self, AlgdecError};
use crate::codes::{
    self, codeword_count, CodeKind, DecodeOutcome, LinearCode, Received,
};
use crate::gf::{format_gf4_vec, Gf4};
use crate::sumrank::{
    sr_min_distance_with_cap, sr_weight, DsrEstimate, SrWord, PAIR_ENUM_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SrdecError {
    #[error("component codes have different lengths: {0} vs {1}")]
    CodeLengthMismatch(usize, usize),
    #[error("component codes must have dimension at least 1")]
    ZeroDimension,
    #[error("component of dimension {k} has no algebraic decoder and is too large to scan")]
    ComponentTooLarge { k: usize },
    #[error("word length {got} does not match block length {want}")]
    WordLength { got: usize, want: usize },
    #[error("{decoder} decoder not applicable: {detail}")]
    PreconditionViolated { decoder: &'static str, detail: String },
}

/// Which implementation backs a component decoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    /// Exhaustive nearest-codeword scan (any code small enough).
    Exhaustive,
    /// Polynomial-time algebraic decoder (RS and BCH codes).
    Algebraic,
}

/// The sum-rank code SR(C1, C2) with its decoder configuration and what is
/// known about its minimum sum-rank distance.
#[derive(Debug, Clone)]
pub struct SrCode {
    c1: LinearCode,
    c2: LinearCode,
    dsr: DsrEstimate,
    dec1: Backend,
    dec2: Backend,
}

impl SrCode {
    /// Builds the pair code and settles the distance policy: the exact
    /// minimum sum-rank distance when the pair enumeration fits the
    /// default cap, otherwise rigorous bounds (the general bracket,
    /// tightened by concrete witness codewords).
    pub fn new(c1: LinearCode, c2: LinearCode) -> Result<SrCode, SrdecError> {
        SrCode::with_pair_cap(c1, c2, PAIR_ENUM_CAP)
    }

    pub fn with_pair_cap(c1: LinearCode, c2: LinearCode, cap: u128) -> Result<SrCode, SrdecError> {
        if c1.n() != c2.n() {
            return Err(SrdecError::CodeLengthMismatch(c1.n(), c2.n()));
        }
        if c1.k() == 0 || c2.k() == 0 {
            return Err(SrdecError::ZeroDimension);
        }
        let dsr = if codeword_count(c1.k()) * codeword_count(c2.k()) <= cap {
            sr_min_distance_with_cap(&c1, &c2, cap).expect("lengths match")
        } else {
            DsrEstimate::Bounds {
                lower: c1.distance().value().min(2 * c2.distance().value()),
                upper: witness_upper_bound(&c1, &c2),
            }
        };
        let backend = |c: &LinearCode| match c.kind() {
            CodeKind::Rs { .. } | CodeKind::Bch { .. } => Backend::Algebraic,
            _ => Backend::Exhaustive,
        };
        let (dec1, dec2) = (backend(&c1), backend(&c2));
        for (b, c) in [(dec1, &c1), (dec2, &c2)] {
            if b == Backend::Exhaustive && codeword_count(c.k()) > codes::ENUM_CAP {
                return Err(SrdecError::ComponentTooLarge { k: c.k() });
            }
        }
        Ok(SrCode { c1, c2, dsr, dec1, dec2 })
    }

    pub fn c1(&self) -> &LinearCode {
        &self.c1
    }

    pub fn c2(&self) -> &LinearCode {
        &self.c2
    }

    /// Block length l.
    pub fn block_len(&self) -> usize {
        self.c1.n()
    }

    /// Dimension over GF(2): 2 (k1 + k2).
    pub fn binary_dimension(&self) -> usize {
        2 * (self.c1.k() + self.c2.k())
    }

    pub fn dsr(&self) -> DsrEstimate {
        self.dsr
    }

    pub fn backends(&self) -> (Backend, Backend) {
        (self.dec1, self.dec2)
    }

    fn d1(&self) -> usize {
        self.c1.distance().value()
    }

    fn d2(&self) -> usize {
        self.c2.distance().value()
    }

    /// The unique decoding radius floor((dsr - 1) / 2), from the exact
    /// distance when known and from its lower bound otherwise.
    pub fn unique_radius(&self) -> usize {
        self.dsr.lower().saturating_sub(1) / 2
    }

    /// The distance a backend's guarantee rests on: the designed distance
    /// for an algebraic BCH decoder (its syndrome budget), the flagged
    /// value otherwise. An exact flag upgraded past the designed distance
    /// widens what the code supports, not what this decoder can correct.
    fn backend_distance(backend: Backend, code: &LinearCode) -> usize {
        match (backend, code.kind()) {
            (Backend::Algebraic, CodeKind::Bch { delta, .. }) => *delta,
            _ => code.distance().value(),
        }
    }

    fn check_stage_capabilities(
        &self,
        decoder: &'static str,
        bmd_backend: (Backend, &LinearCode, &'static str),
        ee_backend: (Backend, &LinearCode, &'static str),
    ) -> Result<(), SrdecError> {
        let rho = self.unique_radius();
        let bmd_radius = (Self::backend_distance(bmd_backend.0, bmd_backend.1) - 1) / 2;
        if rho > bmd_radius {
            return Err(SrdecError::PreconditionViolated {
                decoder,
                detail: format!(
                    "radius {rho} exceeds the {} BMD decoder radius {bmd_radius}",
                    bmd_backend.2
                ),
            });
        }
        let ee_bound = Self::backend_distance(ee_backend.0, ee_backend.1);
        if rho >= ee_bound {
            return Err(SrdecError::PreconditionViolated {
                decoder,
                detail: format!(
                    "radius {rho} exceeds the {} error/erasure guarantee 2t + r < {ee_bound}",
                    ee_backend.2
                ),
            });
        }
        Ok(())
    }

    /// Checks d2 >= dsr (against every distance the bracket allows when
    /// the exact value is unknown), plus the radius fitting within both
    /// component decoders' guarantees.
    pub fn can_decode_two_step(&self) -> Result<(), SrdecError> {
        let need = self.dsr.upper();
        if self.d2() < need {
            return Err(SrdecError::PreconditionViolated {
                decoder: "two-step",
                detail: format!("requires d2 >= dsr, but d2 = {} and dsr may reach {need}", self.d2()),
            });
        }
        self.check_stage_capabilities(
            "two-step",
            (self.dec2, &self.c2, "C2"),
            (self.dec1, &self.c1, "C1"),
        )
    }

    /// Mirror-image precondition: d1 >= dsr.
    pub fn can_decode_two_step_symmetric(&self) -> Result<(), SrdecError> {
        let need = self.dsr.upper();
        if self.d1() < need {
            return Err(SrdecError::PreconditionViolated {
                decoder: "two-step-symmetric",
                detail: format!("requires d1 >= dsr, but d1 = {} and dsr may reach {need}", self.d1()),
            });
        }
        self.check_stage_capabilities(
            "two-step-symmetric",
            (self.dec1, &self.c1, "C1"),
            (self.dec2, &self.c2, "C2"),
        )
    }

    /// The baseline decoder needs d2 >= dsr and additionally
    /// d1 >= (2/3) dsr.
    pub fn can_decode_ccq(&self) -> Result<(), SrdecError> {
        let need = self.dsr.upper();
        if self.d2() < need {
            return Err(SrdecError::PreconditionViolated {
                decoder: "ccq",
                detail: format!("requires d2 >= dsr, but d2 = {} and dsr may reach {need}", self.d2()),
            });
        }
        if 3 * self.d1() < 2 * need {
            return Err(SrdecError::PreconditionViolated {
                decoder: "ccq",
                detail: format!(
                    "requires d1 >= (2/3) dsr, but 3 d1 = {} < 2 dsr = {}",
                    3 * self.d1(),
                    2 * need
                ),
            });
        }
        let rho = self.unique_radius();
        let bmd2_radius = (Self::backend_distance(self.dec2, &self.c2) - 1) / 2;
        if rho > bmd2_radius {
            return Err(SrdecError::PreconditionViolated {
                decoder: "ccq",
                detail: format!("radius {rho} exceeds the C2 BMD decoder radius {bmd2_radius}"),
            });
        }
        // the lightest candidate carries at most 2/3 of the error weight
        let candidate_budget = 2 * rho / 3;
        let bmd1_radius = (Self::backend_distance(self.dec1, &self.c1) - 1) / 2;
        if candidate_budget > bmd1_radius {
            return Err(SrdecError::PreconditionViolated {
                decoder: "ccq",
                detail: format!(
                    "candidate weight budget {candidate_budget} exceeds the C1 BMD radius {bmd1_radius}"
                ),
            });
        }
        Ok(())
    }

    fn check_word(&self, y: &SrWord) -> Result<(), SrdecError> {
        if y.len() != self.block_len() {
            return Err(SrdecError::WordLength { got: y.len(), want: self.block_len() });
        }
        Ok(())
    }

    fn run_bmd(&self, backend: Backend, code: &LinearCode, y: &[Gf4]) -> DecodeOutcome {
        self.run_ee(backend, code, &Received::plain(y.to_vec()))
    }

    fn run_ee(&self, backend: Backend, code: &LinearCode, rx: &Received) -> DecodeOutcome {
        match backend {
            Backend::Exhaustive => {
                let out = code
                    .decode_error_erasure_exhaustive(rx)
                    .expect("component code within enumeration cap");
                if out.is_success() {
                    out
                } else {
                    // ties and radius overruns alike are stage failures
                    DecodeOutcome::failure(out.t_used, out.r_used)
                }
            }
            Backend::Algebraic => match algdec::decode_algebraic(code, rx) {
                Ok(out) => out,
                Err(AlgdecError::TooManyErasures { r, .. }) => DecodeOutcome::failure(0, r),
                Err(e) => panic!("algebraic backend misconfigured: {e}"),
            },
        }
    }
}

/// Stage at which a decoding attempt gave up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailStage {
    /// The C2 bounded-minimum-distance decoding failed.
    C2,
    /// The C1 decoding failed (error/erasure step, or all candidates).
    C1,
    /// Candidate selection found no unique consistent output.
    Consistency,
}

impl fmt::Display for FailStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailStage::C2 => "c2",
            FailStage::C1 => "c1",
            FailStage::Consistency => "consistency",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SrOutcome {
    Success { a1: Vec<Gf4>, a2: Vec<Gf4>, e1: Vec<Gf4>, e2: Vec<Gf4> },
    Failure { stage: FailStage, reason: String },
}

impl SrOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, SrOutcome::Success { .. })
    }
}

/// Result of one sum-rank decoding attempt, with instrumentation.
#[derive(Debug, Clone)]
pub struct SrDecodeReport {
    pub outcome: SrOutcome,
    pub calls_dec1: usize,
    pub calls_dec2: usize,
    /// Erasure set handed to the second stage (0-based).
    pub erasures: Vec<usize>,
    /// Errors corrected outside the erasure set in the second stage.
    pub t: usize,
    /// Number of erasures.
    pub r: usize,
    pub dec1_time: Duration,
    pub dec2_time: Duration,
}

impl SrDecodeReport {
    /// Key=value serialization; index sets are printed 1-based.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        match &self.outcome {
            SrOutcome::Success { a1, a2, .. } => {
                out.push_str("status=success\n");
                out.push_str(&format!("a1={}\n", format_gf4_vec(a1, ",")));
                out.push_str(&format!("a2={}\n", format_gf4_vec(a2, ",")));
            }
            SrOutcome::Failure { stage, reason } => {
                out.push_str("status=failure\n");
                out.push_str(&format!("stage={stage}\n"));
                out.push_str(&format!("reason={reason}\n"));
            }
        }
        let one_based: Vec<String> =
            self.erasures.iter().map(|p| (p + 1).to_string()).collect();
        out.push_str(&format!("J={}\n", one_based.join(",")));
        out.push_str(&format!("t={}\nr={}\n", self.t, self.r));
        out.push_str(&format!(
            "calls_dec1={}\ncalls_dec2={}\n",
            self.calls_dec1, self.calls_dec2
        ));
        out
    }
}

/// Two-step erasure-guided decoding: BMD-decode C2, reuse the support of
/// the recovered error as erasures for one error/erasure decoding of C1.
/// Succeeds on every error of sum-rank weight up to the unique radius when
/// the precondition d2 >= dsr holds.
pub fn decode_two_step(code: &SrCode, y: &SrWord) -> Result<SrDecodeReport, SrdecError> {
    code.can_decode_two_step()?;
    code.check_word(y)?;

    let started = Instant::now();
    let out2 = code.run_bmd(code.dec2, &code.c2, &y.v2);
    let dec2_time = started.elapsed();

    let mut report = SrDecodeReport {
        outcome: SrOutcome::Failure { stage: FailStage::C2, reason: String::new() },
        calls_dec1: 0,
        calls_dec2: 1,
        erasures: Vec::new(),
        t: 0,
        r: 0,
        dec1_time: Duration::ZERO,
        dec2_time,
    };
    if !out2.is_success() {
        report.outcome = SrOutcome::Failure {
            stage: FailStage::C2,
            reason: format!("C2 decoding failed at distance {}", out2.t_used),
        };
        return Ok(report);
    }
    let a2 = out2.codeword.expect("success carries a codeword");
    let e2: Vec<Gf4> = y.v2.iter().zip(&a2).map(|(&y, &c)| y - c).collect();

    let erasures = codes::support(&e2);
    let rx = Received::with_erased(y.v1.clone(), &erasures);
    let started = Instant::now();
    let out1 = code.run_ee(code.dec1, &code.c1, &rx);
    report.dec1_time = started.elapsed();
    report.calls_dec1 = 1;
    report.r = erasures.len();
    report.erasures = erasures;
    report.t = out1.t_used;

    if !out1.is_success() {
        report.outcome = SrOutcome::Failure {
            stage: FailStage::C1,
            reason: format!(
                "C1 error/erasure decoding failed with r = {} erasures",
                report.r
            ),
        };
        return Ok(report);
    }
    let a1 = out1.codeword.expect("success carries a codeword");
    let e1: Vec<Gf4> = y.v1.iter().zip(&a1).map(|(&y, &c)| y - c).collect();
    report.outcome = SrOutcome::Success { a1, a2, e1, e2 };
    Ok(report)
}

/// The symmetric variant for pairs with d1 >= dsr: decode C1 first, then
/// use the support of its error as erasures for C2. In the report, t and
/// r describe the C2 stage.
pub fn decode_two_step_symmetric(
    code: &SrCode,
    y: &SrWord,
) -> Result<SrDecodeReport, SrdecError> {
    code.can_decode_two_step_symmetric()?;
    code.check_word(y)?;

    let started = Instant::now();
    let out1 = code.run_bmd(code.dec1, &code.c1, &y.v1);
    let dec1_time = started.elapsed();

    let mut report = SrDecodeReport {
        outcome: SrOutcome::Failure { stage: FailStage::C1, reason: String::new() },
        calls_dec1: 1,
        calls_dec2: 0,
        erasures: Vec::new(),
        t: 0,
        r: 0,
        dec1_time,
        dec2_time: Duration::ZERO,
    };
    if !out1.is_success() {
        report.outcome = SrOutcome::Failure {
            stage: FailStage::C1,
            reason: format!("C1 decoding failed at distance {}", out1.t_used),
        };
        return Ok(report);
    }
    let a1 = out1.codeword.expect("success carries a codeword");
    let e1: Vec<Gf4> = y.v1.iter().zip(&a1).map(|(&y, &c)| y - c).collect();

    let erasures = codes::support(&e1);
    let rx = Received::with_erased(y.v2.clone(), &erasures);
    let started = Instant::now();
    let out2 = code.run_ee(code.dec2, &code.c2, &rx);
    report.dec2_time = started.elapsed();
    report.calls_dec2 = 1;
    report.r = erasures.len();
    report.erasures = erasures;
    report.t = out2.t_used;

    if !out2.is_success() {
        report.outcome = SrOutcome::Failure {
            stage: FailStage::C2,
            reason: format!(
                "C2 error/erasure decoding failed with r = {} erasures",
                report.r
            ),
        };
        return Ok(report);
    }
    let a2 = out2.codeword.expect("success carries a codeword");
    let e2: Vec<Gf4> = y.v2.iter().zip(&a2).map(|(&y, &c)| y - c).collect();
    report.outcome = SrOutcome::Success { a1, a2, e1, e2 };
    Ok(report)
}

/// The three-candidate baseline: after the C2 step, BMD-decode each of
/// y1 + s * e2 for s in {1, w, w^2} against C1 (duplicate candidate words
/// are decoded once) and accept the unique decoded word whose implied full
/// error stays within the unique radius.
pub fn decode_ccq(code: &SrCode, y: &SrWord) -> Result<SrDecodeReport, SrdecError> {
    code.can_decode_ccq()?;
    code.check_word(y)?;
    let radius = code.unique_radius();

    let started = Instant::now();
    let out2 = code.run_bmd(code.dec2, &code.c2, &y.v2);
    let dec2_time = started.elapsed();

    let mut report = SrDecodeReport {
        outcome: SrOutcome::Failure { stage: FailStage::C2, reason: String::new() },
        calls_dec1: 0,
        calls_dec2: 1,
        erasures: Vec::new(),
        t: 0,
        r: 0,
        dec1_time: Duration::ZERO,
        dec2_time,
    };
    if !out2.is_success() {
        report.outcome = SrOutcome::Failure {
            stage: FailStage::C2,
            reason: format!("C2 decoding failed at distance {}", out2.t_used),
        };
        return Ok(report);
    }
    let a2 = out2.codeword.expect("success carries a codeword");
    let e2: Vec<Gf4> = y.v2.iter().zip(&a2).map(|(&y, &c)| y - c).collect();

    // Distinct candidate words: at an I3 position, y1 + s * e2 cancels the
    // first error component exactly when e1 = s * e2 there.
    let mut candidates: Vec<Vec<Gf4>> = Vec::new();
    for s in Gf4::nonzero() {
        let z: Vec<Gf4> = y.v1.iter().zip(&e2).map(|(&a, &b)| a + s * b).collect();
        if !candidates.contains(&z) {
            candidates.push(z);
        }
    }

    let mut consistent: Vec<(Vec<Gf4>, usize)> = Vec::new();
    let started = Instant::now();
    for z in &candidates {
        report.calls_dec1 += 1;
        let out = code.run_bmd(code.dec1, &code.c1, z);
        if !out.is_success() {
            continue;
        }
        let a1 = out.codeword.expect("success carries a codeword");
        let e1: Vec<Gf4> = y.v1.iter().zip(&a1).map(|(&y, &c)| y - c).collect();
        let implied = SrWord::new(e1, e2.clone()).expect("lengths match");
        if sr_weight(&implied) > radius {
            continue;
        }
        if !consistent.iter().any(|(c, _)| c == &a1) {
            consistent.push((a1, out.t_used));
        }
    }
    report.dec1_time = started.elapsed();

    match consistent.len() {
        1 => {
            let (a1, t) = consistent.pop().expect("one candidate");
            let e1: Vec<Gf4> = y.v1.iter().zip(&a1).map(|(&y, &c)| y - c).collect();
            report.t = t;
            report.outcome = SrOutcome::Success { a1, a2, e1, e2 };
        }
        0 => {
            report.outcome = SrOutcome::Failure {
                stage: FailStage::Consistency,
                reason: "no candidate within the unique radius".into(),
            };
        }
        n => {
            report.outcome = SrOutcome::Failure {
                stage: FailStage::Consistency,
                reason: format!("{n} distinct consistent candidates"),
            };
        }
    }
    Ok(report)
}

/// Tri-state verdict for design-condition checks under distance brackets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// The bracket straddles the threshold; only an exact distance can
    /// settle it.
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "yes",
            Verdict::Fails => "no",
            Verdict::Unknown => "unknown",
        })
    }
}

/// Design-region report for a (d1, d2, dsr) configuration.
#[derive(Debug, Clone)]
pub struct DesignReport {
    /// d2 >= dsr: the two-step decoder's only distance condition.
    pub two_step_ok: Verdict,
    /// d1 >= (2/3) dsr: the extra constraint of the baseline decoder.
    pub ccq_ok: Verdict,
    /// d2 >= 2 d1 implies d2 >= dsr without knowing dsr.
    pub sufficient_d2_ge_2d1: bool,
    /// delta1 = d1 / dsr as an interval (collapsed when dsr is exact).
    pub delta1: (f64, f64),
    /// delta2 = d2 / dsr as an interval.
    pub delta2: (f64, f64),
}

pub fn check_design_conditions(d1: usize, d2: usize, dsr: DsrEstimate) -> DesignReport {
    let verdict = |holds_at_upper: bool, fails_at_lower: bool| {
        if holds_at_upper {
            Verdict::Holds
        } else if fails_at_lower {
            Verdict::Fails
        } else {
            Verdict::Unknown
        }
    };
    let (lo, hi) = (dsr.lower(), dsr.upper());
    DesignReport {
        two_step_ok: verdict(d2 >= hi, d2 < lo),
        ccq_ok: verdict(3 * d1 >= 2 * hi, 3 * d1 < 2 * lo),
        sufficient_d2_ge_2d1: d2 >= 2 * d1,
        delta1: (d1 as f64 / hi as f64, d1 as f64 / lo as f64),
        delta2: (d2 as f64 / hi as f64, d2 as f64 / lo as f64),
    }
}

/// Rigorous upper bound on the minimum sum-rank distance from concrete
/// codewords: a nonzero a1 gives the weight-2wt(a1) word a1*x, a nonzero
/// a2 gives 2wt(a2), and a codeword common to both components gives an
/// equal-support pair of weight wt (the designed-distance flags cannot be
/// used here, because an upper bound needs true weights).
fn witness_upper_bound(c1: &LinearCode, c2: &LinearCode) -> usize {
    let light = |c: &LinearCode| {
        codes::scan_min_weight(c).unwrap_or_else(|| {
            c.generator()
                .row_iter()
                .map(codes::hamming_weight)
                .min()
                .expect("k >= 1")
        })
    };
    let mut upper = (2 * light(c1)).min(2 * light(c2));
    let common = if codeword_count(c2.k()) <= codeword_count(c1.k()) {
        codes::scan_min_common_weight(c2, c1)
    } else {
        codes::scan_min_common_weight(c1, c2)
    };
    if let Some(w) = common {
        upper = upper.min(w);
    }
    upper
}
