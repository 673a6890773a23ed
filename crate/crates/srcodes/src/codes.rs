//! Linear codes over GF(4): generic generator-matrix codes, Reed-Solomon
//! evaluation codes, narrow-sense BCH codes, and constant (repetition)
//! codes, together with exhaustive minimum-distance computation and
//! exhaustive nearest-codeword decoding oracles for the bounded-minimum-
//! distance and error/erasure settings.
//!
//! The exhaustive decoders are oracles: they scan every codeword and are
//! the reference that the polynomial-time decoders in [`crate::algdec`]
//! are checked against.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::gf::{format_gf4_vec, parse_gf4_vec, Embedding, FieldCtx, Gf4};
use crate::mat::Mat;

/// Default enumeration cap: 4^12 codewords.
pub const ENUM_CAP: u128 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodesError {
    #[error("evaluation points must be pairwise distinct")]
    DuplicatePoints,
    #[error("dimension {k} out of range for length {n}")]
    DimensionOutOfRange { k: usize, n: usize },
    #[error("vector length {got} does not match expected {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("generator matrix has rank 0")]
    ZeroDimension,
    #[error("no BCH code of length {0}: it does not divide 4^m - 1 for any m <= 4")]
    InvalidBchLength(usize),
    #[error("designed distance {delta} out of range 2..={n} for length {n}")]
    DeltaOutOfRange { delta: usize, n: usize },
    #[error("enumerating {needed} codewords exceeds the cap {cap}")]
    EnumerationCapExceeded { needed: u128, cap: u128 },
    #[error("config: {0}")]
    Config(String),
}

/// Minimum-distance value with provenance, so radius computations never
/// treat an unverified bound as exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distance {
    /// Verified: no lighter nonzero codeword exists.
    Exact(usize),
    /// BCH designed distance; the true distance may be larger.
    Designed(usize),
    /// A plain lower bound.
    Bound(usize),
}

impl Distance {
    /// The usable (conservative) distance value.
    pub fn value(self) -> usize {
        match self {
            Distance::Exact(d) | Distance::Designed(d) | Distance::Bound(d) => d,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Distance::Exact(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeKind {
    Generic,
    Rs { points: Vec<Gf4> },
    Bch { delta: usize, m: usize },
    Constant,
}

impl CodeKind {
    pub fn name(&self) -> &'static str {
        match self {
            CodeKind::Generic => "generic",
            CodeKind::Rs { .. } => "rs",
            CodeKind::Bch { .. } => "bch",
            CodeKind::Constant => "constant",
        }
    }
}

/// Hamming weight of a GF(4) vector.
pub fn hamming_weight(v: &[Gf4]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

/// Support (0-based positions of nonzero symbols).
pub fn support(v: &[Gf4]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter_map(|(i, x)| (!x.is_zero()).then_some(i))
        .collect()
}

/// A received word: symbols plus an erasure mask (`true` = erased; the
/// symbol value at an erased position is ignored).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Received {
    pub symbols: Vec<Gf4>,
    pub erasures: Vec<bool>,
}

impl Received {
    pub fn new(symbols: Vec<Gf4>, erasures: Vec<bool>) -> Result<Received, CodesError> {
        if symbols.len() != erasures.len() {
            return Err(CodesError::LengthMismatch {
                got: erasures.len(),
                want: symbols.len(),
            });
        }
        Ok(Received { symbols, erasures })
    }

    /// A received word with no erasures.
    pub fn plain(symbols: Vec<Gf4>) -> Received {
        let erasures = vec![false; symbols.len()];
        Received { symbols, erasures }
    }

    /// A received word with the given 0-based positions erased.
    pub fn with_erased(symbols: Vec<Gf4>, positions: &[usize]) -> Received {
        let mut erasures = vec![false; symbols.len()];
        for &p in positions {
            erasures[p] = true;
        }
        Received { symbols, erasures }
    }

    pub fn n(&self) -> usize {
        self.symbols.len()
    }

    pub fn erased_count(&self) -> usize {
        self.erasures.iter().filter(|&&e| e).count()
    }

    pub fn erased_positions(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.erasures[i]).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeStatus {
    Success,
    Failure,
    Ambiguous,
}

/// Outcome of a decoding attempt.
///
/// On `Success`, `error[i]` is the difference between the received and the
/// decoded symbol at non-erased positions and 0 at erased positions, so
/// `codeword + error` reproduces the received word with erasures filled in
/// by the codeword symbols. `t_used` counts errors outside the erasure
/// set, `r_used` the erasures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub status: DecodeStatus,
    pub codeword: Option<Vec<Gf4>>,
    pub error: Option<Vec<Gf4>>,
    pub t_used: usize,
    pub r_used: usize,
}

impl DecodeOutcome {
    pub fn is_success(&self) -> bool {
        self.status == DecodeStatus::Success
    }

    fn success(codeword: Vec<Gf4>, error: Vec<Gf4>, t: usize, r: usize) -> DecodeOutcome {
        DecodeOutcome {
            status: DecodeStatus::Success,
            codeword: Some(codeword),
            error: Some(error),
            t_used: t,
            r_used: r,
        }
    }

    pub(crate) fn failure(t: usize, r: usize) -> DecodeOutcome {
        DecodeOutcome { status: DecodeStatus::Failure, codeword: None, error: None, t_used: t, r_used: r }
    }

    fn ambiguous(t: usize, r: usize) -> DecodeOutcome {
        DecodeOutcome { status: DecodeStatus::Ambiguous, codeword: None, error: None, t_used: t, r_used: r }
    }
}

/// An `[n, k]` linear code over GF(4).
///
/// `gen` is the encoding generator matrix: the reduced row-echelon form for
/// generic and BCH codes, the Vandermonde evaluation matrix for RS and
/// constant codes (so that messages are polynomial coefficients). The
/// parity-check matrix always satisfies `gen * par^T = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    n: usize,
    k: usize,
    kind: CodeKind,
    gen: Mat,
    par: Mat,
    dist: Distance,
}

impl LinearCode {
    /// Reed-Solomon evaluation code: codewords are the evaluations of all
    /// polynomials of degree < k at the given distinct points. MDS, so the
    /// distance n - k + 1 is exact.
    pub fn reed_solomon(points: &[Gf4], k: usize) -> Result<LinearCode, CodesError> {
        let n = points.len();
        for i in 0..n {
            for j in i + 1..n {
                if points[i] == points[j] {
                    return Err(CodesError::DuplicatePoints);
                }
            }
        }
        if n == 0 || n > 4 || k == 0 || k > n {
            return Err(CodesError::DimensionOutOfRange { k, n });
        }
        let mut rows = Vec::with_capacity(k);
        let mut row = vec![Gf4::ONE; n];
        rows.push(row.clone());
        for _ in 1..k {
            for (r, p) in row.iter_mut().zip(points) {
                *r *= *p;
            }
            rows.push(row.clone());
        }
        let gen = Mat::from_rows(&rows);
        let mut rref = gen.clone();
        let pivots = rref.rref();
        debug_assert_eq!(rref.rows(), k);
        let par = parity_from_rref(&rref, &pivots, n);
        // a dimension-1 RS code is the constant code; it keeps the rs kind
        // so the algebraic decoder stays applicable
        let kind = CodeKind::Rs { points: points.to_vec() };
        Ok(LinearCode { n, k, kind, gen, par, dist: Distance::Exact(n - k + 1) })
    }

    /// The `[n, 1, n]` constant (repetition) code.
    pub fn constant(n: usize) -> Result<LinearCode, CodesError> {
        if n == 0 {
            return Err(CodesError::DimensionOutOfRange { k: 1, n });
        }
        let gen = Mat::from_rows(&[vec![Gf4::ONE; n]]);
        let mut rref = gen.clone();
        let pivots = rref.rref();
        let par = parity_from_rref(&rref, &pivots, n);
        Ok(LinearCode { n, k: 1, kind: CodeKind::Constant, gen, par, dist: Distance::Exact(n) })
    }

    /// Code spanned by the rows of `g`. Dependent rows are dropped, never
    /// silently: the second return value is the number of dropped rows.
    pub fn generic(g: &[Vec<Gf4>]) -> Result<(LinearCode, usize), CodesError> {
        if g.is_empty() || g[0].is_empty() {
            return Err(CodesError::ZeroDimension);
        }
        let n = g[0].len();
        if g.iter().any(|row| row.len() != n) {
            return Err(CodesError::LengthMismatch { got: g.iter().map(Vec::len).max().unwrap(), want: n });
        }
        let mut gen = Mat::from_rows(g);
        let pivots = gen.rref();
        let k = gen.rows();
        if k == 0 {
            return Err(CodesError::ZeroDimension);
        }
        let dropped = g.len() - k;
        let par = parity_from_rref(&gen, &pivots, n);
        let mut code =
            LinearCode { n, k, kind: CodeKind::Generic, gen, par, dist: Distance::Bound(1) };
        // Small codes get an exact distance immediately.
        if codeword_count(k) <= 1 << 16 {
            code.min_distance_exhaustive().expect("within cap");
        }
        Ok((code, dropped))
    }

    /// Narrow-sense BCH code over GF(4) of length n with designed distance
    /// delta: the cyclic code whose generator polynomial has the roots
    /// a^1, ..., a^(delta-1) for an n-th root of unity a in GF(4^m).
    pub fn bch(n: usize, delta: usize) -> Result<LinearCode, CodesError> {
        let Some(m) = (1..=4).find(|&m| n >= 2 && (pow4(m) - 1).is_multiple_of(n)) else {
            return Err(CodesError::InvalidBchLength(n));
        };
        if delta < 2 || delta > n {
            return Err(CodesError::DeltaOutOfRange { delta, n });
        }
        let big = FieldCtx::canonical(2 * m);
        let emb = Embedding::new(FieldCtx::gf4(), big).expect("degrees divide");
        let alpha_step = big.order() / n;

        // Union of the 4-ary cyclotomic cosets of 1..delta-1 mod n.
        let mut in_union = vec![false; n];
        for j in 1..delta {
            let mut s = j;
            while !in_union[s] {
                in_union[s] = true;
                s = s * 4 % n;
            }
        }
        // g(x) = prod over the union of (x + a^s), computed in GF(4^m);
        // the coefficients land in the embedded GF(4) because the union is
        // closed under multiplication by 4.
        let mut g_big: Vec<u8> = vec![1];
        for (s, _) in in_union.iter().enumerate().filter(|&(_, &b)| b) {
            let root = big.exp_at(alpha_step * s);
            let mut next = vec![0u8; g_big.len() + 1];
            for (i, &c) in g_big.iter().enumerate() {
                next[i + 1] ^= c;
                next[i] ^= big.mul(c, root);
            }
            g_big = next;
        }
        let g_poly: Vec<Gf4> = g_big
            .iter()
            .map(|&c| {
                Gf4::new(emb.retract_raw(c).expect("generator coefficients lie in GF(4)"))
            })
            .collect();
        let deg = g_poly.len() - 1;
        let k = n - deg;
        let mut rows = Vec::with_capacity(k);
        for i in 0..k {
            let mut row = vec![Gf4::ZERO; n];
            row[i..=i + deg].copy_from_slice(&g_poly);
            rows.push(row);
        }
        let mut gen = Mat::from_rows(&rows);
        let pivots = gen.rref();
        debug_assert_eq!(gen.rows(), k);
        let par = parity_from_rref(&gen, &pivots, n);
        Ok(LinearCode {
            n,
            k,
            kind: CodeKind::Bch { delta, m },
            gen,
            par,
            dist: Distance::Designed(delta),
        })
    }

    /// The zero-dimensional code {0} of length n. Its distance is vacuous
    /// (there is no nonzero codeword); the stored flag is `Exact(0)` and
    /// must not feed radius computations.
    pub fn zero(n: usize) -> LinearCode {
        LinearCode {
            n,
            k: 0,
            kind: CodeKind::Generic,
            gen: Mat::zero(0, n),
            par: Mat::identity(n),
            dist: Distance::Exact(0),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn kind(&self) -> &CodeKind {
        &self.kind
    }

    pub fn distance(&self) -> Distance {
        self.dist
    }

    /// Bounded-minimum-distance radius floor((d - 1) / 2) from the flagged
    /// (conservative) distance.
    pub fn bmd_radius(&self) -> usize {
        (self.dist.value().saturating_sub(1)) / 2
    }

    pub fn generator(&self) -> &Mat {
        self.gen_matrix()
    }

    pub(crate) fn gen_matrix(&self) -> &Mat {
        &self.gen
    }

    pub fn parity_check(&self) -> &Mat {
        &self.par
    }

    /// Encodes a length-k message as `msg * G`.
    pub fn encode(&self, msg: &[Gf4]) -> Result<Vec<Gf4>, CodesError> {
        if msg.len() != self.k {
            return Err(CodesError::LengthMismatch { got: msg.len(), want: self.k });
        }
        Ok(self.gen.left_mul(msg))
    }

    /// Syndrome `H * y^T`; zero iff y is a codeword.
    pub fn syndrome(&self, y: &[Gf4]) -> Result<Vec<Gf4>, CodesError> {
        if y.len() != self.n {
            return Err(CodesError::LengthMismatch { got: y.len(), want: self.n });
        }
        Ok(self.par.right_mul(y))
    }

    pub fn contains(&self, y: &[Gf4]) -> bool {
        self.syndrome(y).map(|s| s.iter().all(|x| x.is_zero())).unwrap_or(false)
    }

    fn check_cap(&self) -> Result<(), CodesError> {
        let needed = codeword_count(self.k);
        if needed > ENUM_CAP {
            return Err(CodesError::EnumerationCapExceeded { needed, cap: ENUM_CAP });
        }
        Ok(())
    }

    /// Visits every codeword exactly once, starting from zero. The visitor
    /// returns `false` to stop early.
    pub(crate) fn visit_codewords(&self, mut f: impl FnMut(&[Gf4]) -> bool) {
        let mut digits = vec![0u8; self.k];
        let mut cw = vec![Gf4::ZERO; self.n];
        if !f(&cw) || self.k == 0 {
            return;
        }
        loop {
            let mut i = 0;
            loop {
                let old = digits[i];
                let new = (old + 1) & 3;
                digits[i] = new;
                let delta = Gf4::new(old ^ new);
                for (c, &g) in cw.iter_mut().zip(self.gen.row(i)) {
                    *c += delta * g;
                }
                if new != 0 {
                    break;
                }
                i += 1;
                if i == self.k {
                    return;
                }
            }
            if !f(&cw) {
                return;
            }
        }
    }

    /// Materializes all 4^k codewords (cap-checked), in enumeration order
    /// starting from zero.
    pub fn codewords(&self) -> Result<Vec<Vec<Gf4>>, CodesError> {
        self.check_cap()?;
        let mut out = Vec::with_capacity(codeword_count(self.k) as usize);
        self.visit_codewords(|cw| {
            out.push(cw.to_vec());
            true
        });
        Ok(out)
    }

    /// Exact minimum Hamming weight by exhaustive enumeration; upgrades the
    /// stored distance flag to `Exact`.
    pub fn min_distance_exhaustive(&mut self) -> Result<usize, CodesError> {
        if self.k == 0 {
            return Err(CodesError::ZeroDimension);
        }
        self.check_cap()?;
        let mut best = self.n + 1;
        if let Some(packed) = PackedScan::new(&self.gen) {
            packed.scan(|cw| {
                if cw != 0 {
                    best = best.min(nonzero_count(cw));
                }
                best > 1
            });
        } else {
            let mut first = true;
            self.visit_codewords(|cw| {
                if first {
                    first = false;
                } else {
                    best = best.min(hamming_weight(cw));
                }
                best > 1
            });
        }
        // Early exit above can only trigger at the true minimum (weight 1).
        if let Distance::Exact(d) = self.dist {
            assert_eq!(d, best, "stored exact distance disagrees with enumeration");
        }
        self.dist = Distance::Exact(best);
        Ok(best)
    }

    /// Exhaustive bounded-minimum-distance decoding: scans all codewords
    /// and returns the unique one within floor((d-1)/2) of y, `Failure` if
    /// the nearest codeword is farther than that.
    pub fn decode_bmd_exhaustive(&self, y: &[Gf4]) -> Result<DecodeOutcome, CodesError> {
        let rx = Received::plain(y.to_vec());
        let out = self.ee_scan(&rx)?;
        match out.status {
            DecodeStatus::Success => Ok(out),
            // Outside the radius BMD reports plain failure, tie or not.
            _ => Ok(DecodeOutcome::failure(out.t_used, out.r_used)),
        }
    }

    /// Exhaustive error/erasure decoding oracle. With r erasures and a
    /// minimal error count t on the non-erased positions: `Success`
    /// whenever 2t + r < d (the codeword is then unique), `Ambiguous` when
    /// several codewords tie at the minimal t outside that region,
    /// `Failure` otherwise.
    pub fn decode_error_erasure_exhaustive(
        &self,
        rx: &Received,
    ) -> Result<DecodeOutcome, CodesError> {
        self.ee_scan(rx)
    }

    fn ee_scan(&self, rx: &Received) -> Result<DecodeOutcome, CodesError> {
        if rx.n() != self.n {
            return Err(CodesError::LengthMismatch { got: rx.n(), want: self.n });
        }
        self.check_cap()?;
        let r = rx.erased_count();
        let d = self.dist.value();

        let (t_min, best, ties) = if let Some(packed) = PackedScan::new(&self.gen) {
            let keep = pack_keep_mask(&rx.erasures);
            let y_packed = pack(&rx.symbols) & keep;
            let mut t_min = usize::MAX;
            let mut best = 0u64;
            let mut ties = 0usize;
            packed.scan(|cw| {
                let t = nonzero_count((cw & keep) ^ y_packed);
                if t < t_min {
                    t_min = t;
                    best = cw;
                    ties = 1;
                } else if t == t_min {
                    ties += 1;
                }
                true
            });
            (t_min, unpack(best, self.n), ties)
        } else {
            let mut t_min = usize::MAX;
            let mut best = Vec::new();
            let mut ties = 0usize;
            self.visit_codewords(|cw| {
                let t = cw
                    .iter()
                    .zip(&rx.symbols)
                    .zip(&rx.erasures)
                    .filter(|((c, y), &e)| !e && c != y)
                    .count();
                if t < t_min {
                    t_min = t;
                    best = cw.to_vec();
                    ties = 1;
                } else if t == t_min {
                    ties += 1;
                }
                true
            });
            (t_min, best, ties)
        };

        if 2 * t_min + r < d {
            // Lemma-level uniqueness: a tie here would contradict the
            // minimum distance.
            assert_eq!(ties, 1, "ambiguity inside the 2t + r < d region");
            let error: Vec<Gf4> = (0..self.n)
                .map(|i| {
                    if rx.erasures[i] {
                        Gf4::ZERO
                    } else {
                        rx.symbols[i] - best[i]
                    }
                })
                .collect();
            Ok(DecodeOutcome::success(best, error, t_min, r))
        } else if ties > 1 {
            Ok(DecodeOutcome::ambiguous(t_min, r))
        } else {
            Ok(DecodeOutcome::failure(t_min, r))
        }
    }

    // -- config text format ------------------------------------------------

    /// Dumps the code as `key=value` lines (the config text format).
    pub fn to_kv(&self) -> String {
        let mut out = format!("kind={}\nn={}\n", self.kind.name(), self.n);
        match &self.kind {
            CodeKind::Rs { points } => {
                out.push_str(&format!("k={}\npoints={}\n", self.k, format_gf4_vec(points, ",")));
            }
            CodeKind::Bch { delta, .. } => {
                out.push_str(&format!("delta={delta}\n"));
            }
            CodeKind::Constant => {}
            CodeKind::Generic => {
                let rows: Vec<String> =
                    self.gen.row_iter().map(|r| format_gf4_vec(r, ",")).collect();
                out.push_str(&format!("k={}\nG={}\n", self.k, rows.join(";")));
            }
        }
        out
    }

    /// Builds a code from parsed `key=value` pairs.
    pub fn from_kv(kv: &BTreeMap<String, String>) -> Result<LinearCode, CodesError> {
        let kind = kv
            .get("kind")
            .ok_or_else(|| CodesError::Config("missing kind".into()))?
            .as_str();
        let get_usize = |key: &str| -> Result<usize, CodesError> {
            kv.get(key)
                .ok_or_else(|| CodesError::Config(format!("missing {key}")))?
                .parse()
                .map_err(|_| CodesError::Config(format!("bad integer for {key}")))
        };
        match kind {
            "rs" => {
                let points = parse_gf4_vec(
                    kv.get("points")
                        .ok_or_else(|| CodesError::Config("missing points".into()))?,
                )
                .map_err(|e| CodesError::Config(e.to_string()))?;
                let k = get_usize("k")?;
                if let Some(n) = kv.get("n") {
                    let n: usize = n
                        .parse()
                        .map_err(|_| CodesError::Config("bad integer for n".into()))?;
                    if n != points.len() {
                        return Err(CodesError::Config("n does not match points".into()));
                    }
                }
                LinearCode::reed_solomon(&points, k)
            }
            "constant" => LinearCode::constant(get_usize("n")?),
            "bch" => LinearCode::bch(get_usize("n")?, get_usize("delta")?),
            "generic" => {
                let g = kv
                    .get("G")
                    .ok_or_else(|| CodesError::Config("missing G".into()))?;
                let rows: Result<Vec<Vec<Gf4>>, _> = g
                    .split(';')
                    .map(|row| parse_gf4_vec(row).map_err(|e| CodesError::Config(e.to_string())))
                    .collect();
                Ok(LinearCode::generic(&rows?)?.0)
            }
            other => Err(CodesError::Config(format!("unknown kind {other:?}"))),
        }
    }
}

fn pow4(m: usize) -> usize {
    1 << (2 * m)
}

/// Non-mutating exact minimum weight; `None` when the code is too large to
/// scan or zero-dimensional.
pub(crate) fn scan_min_weight(c: &LinearCode) -> Option<usize> {
    if c.k() == 0 || codeword_count(c.k()) > ENUM_CAP {
        return None;
    }
    let mut best = usize::MAX;
    if let Some(packed) = PackedScan::new(c.gen_matrix()) {
        packed.scan(|cw| {
            if cw != 0 {
                best = best.min(nonzero_count(cw));
            }
            best > 1
        });
    } else {
        let mut first = true;
        c.visit_codewords(|cw| {
            if first {
                first = false;
            } else {
                best = best.min(hamming_weight(cw));
            }
            best > 1
        });
    }
    Some(best)
}

/// Minimum weight over the nonzero codewords of `small` that also lie in
/// `other`; `None` when `small` cannot be scanned or no common codeword
/// exists.
pub(crate) fn scan_min_common_weight(small: &LinearCode, other: &LinearCode) -> Option<usize> {
    if small.k() == 0 || codeword_count(small.k()) > ENUM_CAP || small.n() != other.n() {
        return None;
    }
    let mut best = usize::MAX;
    let mut first = true;
    small.visit_codewords(|cw| {
        if first {
            first = false;
        } else if other.contains(cw) {
            best = best.min(hamming_weight(cw));
        }
        true
    });
    (best != usize::MAX).then_some(best)
}

pub(crate) fn codeword_count(k: usize) -> u128 {
    1u128 << (2 * k)
}

/// Parity-check matrix from a reduced generator matrix: one row per free
/// column f with a 1 at f and the pivot-column entries copied from G.
fn parity_from_rref(rref: &Mat, pivots: &[usize], n: usize) -> Mat {
    let k = rref.rows();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut h = Mat::zero(n - k, n);
    for (j, &fc) in free.iter().enumerate() {
        h.set(j, fc, Gf4::ONE);
        for (i, &pc) in pivots.iter().enumerate() {
            h.set(j, pc, rref.at(i, fc));
        }
    }
    h
}

// ---------------------------------------------------------------------------
// Packed codeword scans (n <= 32: two bits per symbol in a u64)
// ---------------------------------------------------------------------------

const LO_BITS: u64 = 0x5555_5555_5555_5555;

pub(crate) fn pack(v: &[Gf4]) -> u64 {
    v.iter()
        .enumerate()
        .fold(0u64, |acc, (i, x)| acc | (x.value() as u64) << (2 * i))
}

pub(crate) fn unpack(bits: u64, n: usize) -> Vec<Gf4> {
    (0..n).map(|i| Gf4::new((bits >> (2 * i) & 3) as u8)).collect()
}

/// One low bit per position marking the nonzero GF(4) symbols.
pub(crate) fn nonzero_mask_packed(x: u64) -> u64 {
    (x | (x >> 1)) & LO_BITS
}

/// Number of nonzero GF(4) symbols in a packed vector.
pub(crate) fn nonzero_count(x: u64) -> usize {
    nonzero_mask_packed(x).count_ones() as usize
}

fn pack_keep_mask(erasures: &[bool]) -> u64 {
    erasures
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &e)| if e { acc } else { acc | 3u64 << (2 * i) })
}

pub(crate) struct PackedScan {
    k: usize,
    rows: Vec<[u64; 3]>,
}

impl PackedScan {
    pub(crate) fn new(gen: &Mat) -> Option<PackedScan> {
        if gen.cols() > 32 {
            return None;
        }
        let rows = gen
            .row_iter()
            .map(|row| {
                let scaled = |s: u8| {
                    pack(&row.iter().map(|&x| Gf4::new(s) * x).collect::<Vec<_>>())
                };
                [scaled(1), scaled(2), scaled(3)]
            })
            .collect();
        Some(PackedScan { k: gen.rows(), rows })
    }

    /// Odometer walk over all 4^k codewords; each step changes one message
    /// digit (plus carries), so the packed codeword updates by XOR.
    pub(crate) fn scan(&self, mut f: impl FnMut(u64) -> bool) {
        let mut digits = vec![0u8; self.k];
        let mut cw = 0u64;
        if !f(cw) || self.k == 0 {
            return;
        }
        loop {
            let mut i = 0;
            loop {
                let old = digits[i];
                let new = (old + 1) & 3;
                digits[i] = new;
                cw ^= self.rows[i][(old ^ new) as usize - 1];
                if new != 0 {
                    break;
                }
                i += 1;
                if i == self.k {
                    return;
                }
            }
            if !f(cw) {
                return;
            }
        }
    }
}
