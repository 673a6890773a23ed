//! Polynomial-time error/erasure decoding for RS and BCH codes over GF(4).
//!
//! Two algebraic paths sit behind one entry point, [`decode_algebraic`]:
//!
//! * BCH codes decode through syndromes over GF(4^m): erased positions are
//!   zero-filled, the erasure locator multiplies the syndrome polynomial,
//!   and the key equation is solved by the extended Euclidean algorithm
//!   (Sugiyama), followed by a Chien-style root search over the n-th roots
//!   of unity and Forney value recovery.
//! * RS evaluation codes of length <= 4 use all of GF(4) as evaluation
//!   points, including 0, so they are not cyclic and the root-of-unity
//!   locator machinery does not apply. They decode by the Euclidean
//!   interpolation method instead: erased points are punctured away, the
//!   received values are interpolated, and the same extended-Euclidean
//!   loop extracts the message polynomial.
//!
//! Both run in O(n^2) field operations. Whenever the true error pattern
//! satisfies 2t + r < d the output matches the exhaustive oracle
//! [`LinearCode::decode_error_erasure_exhaustive`]; a decoded word is only
//! ever reported as `Success` after its syndrome and its implied (t, r)
//! have been re-checked, so failures outside that region are reported as
//! `Failure`, never as a bogus codeword.

use thiserror::Error;

use crate::codes::{CodeKind, CodesError, DecodeOutcome, LinearCode, Received};
use crate::gf::{Embedding, FieldCtx, Gf4};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgdecError {
    #[error("algebraic decoding supports rs and bch codes, not {0}")]
    UnsupportedKind(&'static str),
    #[error("{r} erasures reach the distance {d}; the word is undecodable")]
    TooManyErasures { r: usize, d: usize },
    #[error("received word length {got}, code length {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("error locator degree exceeds the budget (too many errors)")]
    TooManyErrors,
}

impl From<CodesError> for AlgdecError {
    fn from(e: CodesError) -> AlgdecError {
        match e {
            CodesError::LengthMismatch { got, want } => AlgdecError::LengthMismatch { got, want },
            other => panic!("unexpected codes error during algebraic decode: {other}"),
        }
    }
}

/// Working state of the BCH key-equation solver. Coefficient vectors are
/// ascending-degree polynomials over GF(4^m) (raw table values), with the
/// zero polynomial represented by an empty vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyEquationState {
    /// S_1 .. S_(d-1), the syndromes of the zero-filled received word.
    pub syndromes: Vec<u8>,
    /// Erasure locator: product of (1 - a^p z) over erased positions p.
    pub erasure_locator: Vec<u8>,
    /// Error locator sigma(z); filled by the solver.
    pub error_locator: Vec<u8>,
    /// Error evaluator omega(z); filled by the solver.
    pub evaluator: Vec<u8>,
    /// Extension degree: the syndrome field is GF(4^m).
    pub m: usize,
}

impl KeyEquationState {
    pub fn new(syndromes: Vec<u8>, erasure_locator: Vec<u8>, m: usize) -> KeyEquationState {
        KeyEquationState {
            syndromes,
            erasure_locator,
            error_locator: Vec::new(),
            evaluator: Vec::new(),
            m,
        }
    }
}

/// Solves the key equation sigma * (Gamma * S) = omega mod z^(d-1) by the
/// extended Euclidean algorithm, stopping at the classical degree split.
/// Fails with [`AlgdecError::TooManyErrors`] when the locator degree
/// exceeds (d - 1 - r) / 2.
pub fn solve_key_equation(
    state: KeyEquationState,
    d: usize,
) -> Result<KeyEquationState, AlgdecError> {
    solve_key_equation_traced(state, d, None, &mut 0)
}

/// As [`solve_key_equation`], optionally recording each Euclidean division
/// step, and accumulating field-operation counts.
pub fn solve_key_equation_traced(
    mut state: KeyEquationState,
    d: usize,
    mut trace: Option<&mut Vec<String>>,
    ops: &mut u64,
) -> Result<KeyEquationState, AlgdecError> {
    let ctx = FieldCtx::canonical(2 * state.m);
    let r = deg(&state.erasure_locator).max(0) as usize;
    assert_eq!(state.syndromes.len(), d - 1, "need d - 1 syndromes");

    // T = Gamma * S mod z^(d-1)
    let s_poly = trimmed(state.syndromes.clone());
    let t_poly = mul_mod(ctx, &state.erasure_locator, &s_poly, d - 1, ops);

    let (sigma, omega) = if t_poly.is_empty() {
        (vec![1], Vec::new())
    } else {
        let mut r_prev = monomial(d - 1);
        let mut r_cur = t_poly;
        let mut u_prev: Vec<u8> = Vec::new();
        let mut u_cur: Vec<u8> = vec![1];
        while 2 * deg(&r_cur) >= (d - 1 + r) as isize {
            let (q, rem) = divrem(ctx, &r_prev, &r_cur, ops);
            let u_next = add(&u_prev, &mul(ctx, &q, &u_cur, ops));
            if let Some(t) = trace.as_deref_mut() {
                t.push(format!(
                    "quotient {} remainder {} locator {}",
                    poly_text(&q),
                    poly_text(&rem),
                    poly_text(&u_next)
                ));
            }
            r_prev = r_cur;
            r_cur = rem;
            u_prev = u_cur;
            u_cur = u_next;
        }
        (u_cur, r_cur)
    };

    if 2 * deg(&sigma) > (d - 1 - r) as isize {
        return Err(AlgdecError::TooManyErrors);
    }
    state.error_locator = sigma;
    state.evaluator = omega;
    Ok(state)
}

/// Error/erasure decoding of an RS or BCH code over GF(4). The contract
/// matches the exhaustive oracle whenever the true (t, r) satisfy
/// 2t + r < d; see the module docs.
pub fn decode_algebraic(code: &LinearCode, rx: &Received) -> Result<DecodeOutcome, AlgdecError> {
    decode_algebraic_with_ops(code, rx).map(|(out, _)| out)
}

/// As [`decode_algebraic`], also reporting the number of field
/// multiplications/inversions spent (the O(n^2) complexity witness).
pub fn decode_algebraic_with_ops(
    code: &LinearCode,
    rx: &Received,
) -> Result<(DecodeOutcome, u64), AlgdecError> {
    if rx.n() != code.n() {
        return Err(AlgdecError::LengthMismatch { got: rx.n(), want: code.n() });
    }
    match code.kind() {
        CodeKind::Rs { points } => decode_rs(code, &points.clone(), rx),
        CodeKind::Bch { delta, m } => decode_bch(code, *delta, *m, rx),
        other => Err(AlgdecError::UnsupportedKind(other.name())),
    }
}

/// Bounded-minimum-distance decoding: the erasure-free special case.
pub fn decode_bmd_algebraic(
    code: &LinearCode,
    y: &[Gf4],
) -> Result<DecodeOutcome, AlgdecError> {
    decode_algebraic(code, &Received::plain(y.to_vec()))
}

// ---------------------------------------------------------------------------
// RS path: Euclidean interpolation decoding on the non-erased points
// ---------------------------------------------------------------------------

fn decode_rs(
    code: &LinearCode,
    points: &[Gf4],
    rx: &Received,
) -> Result<(DecodeOutcome, u64), AlgdecError> {
    let ctx = FieldCtx::gf4();
    let mut ops = 0u64;
    let (n, k, d) = (code.n(), code.k(), code.distance().value());
    let r = rx.erased_count();
    if r >= d {
        return Err(AlgdecError::TooManyErasures { r, d });
    }
    let kept: Vec<usize> = (0..n).filter(|&i| !rx.erasures[i]).collect();
    let pts: Vec<u8> = kept.iter().map(|&i| points[i].value()).collect();
    let vals: Vec<u8> = kept.iter().map(|&i| rx.symbols[i].value()).collect();
    let n_kept = pts.len();
    debug_assert!(n_kept >= k, "r < d implies at least k surviving points");

    // g0 = prod (z - t_i), g1 = interpolation of the received values.
    let mut g0: Vec<u8> = vec![1];
    for &t in &pts {
        g0 = mul(ctx, &g0, &[t, 1], &mut ops);
    }
    let g1 = interpolate(ctx, &g0, &pts, &vals, &mut ops);

    // Extended Euclid until the remainder degree drops below (n' + k) / 2;
    // the message polynomial is remainder / multiplier when the division
    // is exact.
    let f = if g1.is_empty() {
        Some(Vec::new())
    } else {
        let mut r_prev = g0;
        let mut r_cur = g1;
        let mut v_prev: Vec<u8> = Vec::new();
        let mut v_cur: Vec<u8> = vec![1];
        while 2 * deg(&r_cur) >= (n_kept + k) as isize {
            let (q, rem) = divrem(ctx, &r_prev, &r_cur, &mut ops);
            let v_next = add(&v_prev, &mul(ctx, &q, &v_cur, &mut ops));
            r_prev = r_cur;
            r_cur = rem;
            v_prev = v_cur;
            v_cur = v_next;
        }
        let (q, rem) = divrem(ctx, &r_cur, &v_cur, &mut ops);
        (rem.is_empty() && deg(&q) < k as isize).then_some(q)
    };

    let Some(f) = f else {
        return Ok((DecodeOutcome::failure(0, r), ops));
    };
    let codeword: Vec<Gf4> = points
        .iter()
        .map(|&t| Gf4::new(eval(ctx, &f, t.value(), &mut ops)))
        .collect();
    Ok((finish(code, rx, codeword, &mut ops), ops))
}

/// Lagrange interpolation through (pts[i], vals[i]), reusing g0: the i-th
/// basis polynomial is g0 / (z - t_i) scaled by its value at t_i.
fn interpolate(
    ctx: &FieldCtx,
    g0: &[u8],
    pts: &[u8],
    vals: &[u8],
    ops: &mut u64,
) -> Vec<u8> {
    let mut acc: Vec<u8> = Vec::new();
    for (&t, &v) in pts.iter().zip(vals) {
        if v == 0 {
            continue;
        }
        let basis = synth_div(ctx, g0, t, ops);
        let denom = eval(ctx, &basis, t, ops);
        let scale = ctx.div(v, denom);
        *ops += 1;
        let scaled: Vec<u8> = basis.iter().map(|&c| ctx.mul(c, scale)).collect();
        *ops += basis.len() as u64;
        acc = add(&acc, &trimmed(scaled));
    }
    acc
}

/// Exact synthetic division of p by (z - t).
fn synth_div(ctx: &FieldCtx, p: &[u8], t: u8, ops: &mut u64) -> Vec<u8> {
    let mut out = vec![0u8; p.len() - 1];
    let mut carry = 0u8;
    for j in (0..p.len() - 1).rev() {
        carry = ctx.add(p[j + 1], ctx.mul(carry, t));
        *ops += 1;
        out[j] = carry;
    }
    debug_assert_eq!(ctx.add(p[0], ctx.mul(carry, t)), 0, "division not exact");
    trimmed(out)
}

// ---------------------------------------------------------------------------
// BCH path: syndromes, key equation, Chien search, Forney values
// ---------------------------------------------------------------------------

fn decode_bch(
    code: &LinearCode,
    delta: usize,
    m: usize,
    rx: &Received,
) -> Result<(DecodeOutcome, u64), AlgdecError> {
    let ctx = FieldCtx::canonical(2 * m);
    let emb = Embedding::new(FieldCtx::gf4(), ctx).expect("degrees divide");
    let mut ops = 0u64;
    let n = code.n();
    let erased = rx.erased_positions();
    let r = erased.len();
    if r >= delta {
        return Err(AlgdecError::TooManyErasures { r, d: delta });
    }
    let alpha_step = ctx.order() / n;

    // Zero-filled received word, embedded into the syndrome field.
    let filled: Vec<u8> = (0..n)
        .map(|i| if rx.erasures[i] { 0 } else { emb.apply_raw(rx.symbols[i].value()) })
        .collect();

    let syndromes = bch_syndromes(ctx, &filled, alpha_step, delta, &mut ops);

    let mut gamma: Vec<u8> = vec![1];
    for &p in &erased {
        // (1 - a^p z)
        gamma = mul(ctx, &gamma, &[1, ctx.exp_at(alpha_step * p)], &mut ops);
    }

    let state = KeyEquationState::new(syndromes, gamma, m);
    let state = match solve_key_equation_traced(state, delta, None, &mut ops) {
        Ok(state) => state,
        Err(AlgdecError::TooManyErrors) => {
            return Ok((DecodeOutcome::failure(0, r), ops));
        }
        Err(other) => return Err(other),
    };

    // Combined locator and its roots among a^-p, p = 0..n-1.
    let lambda = mul(ctx, &state.error_locator, &state.erasure_locator, &mut ops);
    let mut located = Vec::new();
    for p in 0..n {
        let x = ctx.exp_at(alpha_step * (n - p));
        if eval(ctx, &lambda, x, &mut ops) == 0 {
            located.push(p);
        }
    }
    if located.len() as isize != deg(&lambda) {
        return Ok((DecodeOutcome::failure(0, r), ops));
    }

    // Forney: e_p = omega(a^-p) / lambda'(a^-p); the Euclid scalar cancels.
    let lambda_deriv = formal_derivative(&lambda);
    let mut corrected: Vec<Gf4> =
        (0..n).map(|i| if rx.erasures[i] { Gf4::ZERO } else { rx.symbols[i] }).collect();
    for &p in &located {
        let x = ctx.exp_at(alpha_step * (n - p));
        let den = eval(ctx, &lambda_deriv, x, &mut ops);
        if den == 0 {
            return Ok((DecodeOutcome::failure(0, r), ops));
        }
        let value = ctx.div(eval(ctx, &state.evaluator, x, &mut ops), den);
        ops += 1;
        let Some(small) = emb.retract_raw(value) else {
            return Ok((DecodeOutcome::failure(0, r), ops));
        };
        if !rx.erasures[p] && small == 0 {
            // a locator root with no error there is inconsistent
            return Ok((DecodeOutcome::failure(0, r), ops));
        }
        corrected[p] += Gf4::new(small);
    }
    Ok((finish(code, rx, corrected, &mut ops), ops))
}

fn bch_syndromes(
    ctx: &FieldCtx,
    filled: &[u8],
    alpha_step: usize,
    delta: usize,
    ops: &mut u64,
) -> Vec<u8> {
    (1..delta)
        .map(|j| {
            let x = ctx.exp_at(alpha_step * j);
            // Horner over the received polynomial
            let mut acc = 0u8;
            for &c in filled.iter().rev() {
                acc = ctx.add(ctx.mul(acc, x), c);
            }
            *ops += filled.len() as u64;
            acc
        })
        .collect()
}

/// Final validation shared by both paths: the candidate must be a
/// codeword and its implied error pattern must sit inside 2t + r < d.
fn finish(code: &LinearCode, rx: &Received, codeword: Vec<Gf4>, ops: &mut u64) -> DecodeOutcome {
    let n = code.n();
    let r = rx.erased_count();
    let d = code.distance().value();
    let syndrome = code.syndrome(&codeword).expect("length checked");
    *ops += (n * (n - code.k())) as u64;
    if syndrome.iter().any(|s| !s.is_zero()) {
        return DecodeOutcome::failure(0, r);
    }
    let error: Vec<Gf4> = (0..n)
        .map(|i| if rx.erasures[i] { Gf4::ZERO } else { rx.symbols[i] - codeword[i] })
        .collect();
    let t = error.iter().filter(|e| !e.is_zero()).count();
    if 2 * t + r >= d {
        return DecodeOutcome::failure(t, r);
    }
    DecodeOutcome {
        status: crate::codes::DecodeStatus::Success,
        codeword: Some(codeword),
        error: Some(error),
        t_used: t,
        r_used: r,
    }
}

// ---------------------------------------------------------------------------
// Polynomial arithmetic over a FieldCtx (ascending coefficients, trimmed)
// ---------------------------------------------------------------------------

fn deg(p: &[u8]) -> isize {
    p.len() as isize - 1
}

fn trimmed(mut p: Vec<u8>) -> Vec<u8> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn monomial(n: usize) -> Vec<u8> {
    let mut p = vec![0u8; n + 1];
    p[n] = 1;
    p
}

fn add(a: &[u8], b: &[u8]) -> Vec<u8> {
    let len = a.len().max(b.len());
    let mut out = vec![0u8; len];
    for (i, o) in out.iter_mut().enumerate() {
        *o = a.get(i).copied().unwrap_or(0) ^ b.get(i).copied().unwrap_or(0);
    }
    trimmed(out)
}

fn mul(ctx: &FieldCtx, a: &[u8], b: &[u8], ops: &mut u64) -> Vec<u8> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ctx.add(out[i + j], ctx.mul(x, y));
        }
        *ops += b.len() as u64;
    }
    trimmed(out)
}

fn mul_mod(ctx: &FieldCtx, a: &[u8], b: &[u8], n: usize, ops: &mut u64) -> Vec<u8> {
    let mut out = mul(ctx, a, b, ops);
    out.truncate(n);
    trimmed(out)
}

fn divrem(ctx: &FieldCtx, a: &[u8], b: &[u8], ops: &mut u64) -> (Vec<u8>, Vec<u8>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut rem = a.to_vec();
    if deg(&rem) < deg(b) {
        return (Vec::new(), trimmed(rem));
    }
    let mut quot = vec![0u8; a.len() - b.len() + 1];
    let lead_inv = ctx.inv(*b.last().unwrap());
    *ops += 1;
    while deg(&rem) >= deg(b) {
        let shift = rem.len() - b.len();
        let coef = ctx.mul(*rem.last().unwrap(), lead_inv);
        *ops += 1;
        quot[shift] = coef;
        for (i, &bc) in b.iter().enumerate() {
            rem[shift + i] = ctx.add(rem[shift + i], ctx.mul(coef, bc));
        }
        *ops += b.len() as u64;
        rem = trimmed(rem);
    }
    (trimmed(quot), rem)
}

fn eval(ctx: &FieldCtx, p: &[u8], x: u8, ops: &mut u64) -> u8 {
    let mut acc = 0u8;
    for &c in p.iter().rev() {
        acc = ctx.add(ctx.mul(acc, x), c);
    }
    *ops += p.len() as u64;
    acc
}

/// Formal derivative in characteristic 2: only odd-degree terms survive.
fn formal_derivative(p: &[u8]) -> Vec<u8> {
    if p.len() <= 1 {
        return Vec::new();
    }
    let out: Vec<u8> = (1..p.len())
        .map(|j| if j % 2 == 1 { p[j] } else { 0 })
        .collect();
    trimmed(out)
}

fn poly_text(p: &[u8]) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let terms: Vec<String> = p
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| format!("{c:x}z^{j}"))
        .collect();
    terms.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn g(v: u8) -> Gf4 {
        Gf4::new(v)
    }

    fn gv(vals: &[u8]) -> Vec<Gf4> {
        vals.iter().map(|&v| g(v)).collect()
    }

    fn rs42() -> LinearCode {
        LinearCode::reed_solomon(&gv(&[0, 1, 2, 3]), 2).unwrap()
    }

    #[test]
    fn clean_codeword_decodes_to_itself() {
        let c = rs42();
        let cw = c.encode(&gv(&[1, 2])).unwrap();
        let out = decode_bmd_algebraic(&c, &cw).unwrap();
        assert!(out.is_success());
        assert_eq!(out.codeword.unwrap(), cw);
        assert_eq!(out.t_used, 0);

        let bch = LinearCode::bch(15, 5).unwrap();
        let cw = bch.encode(&[Gf4::W; 9]).unwrap();
        let out = decode_bmd_algebraic(&bch, &cw).unwrap();
        assert!(out.is_success());
        assert_eq!(out.codeword.unwrap(), cw);
    }

    #[test]
    fn golden_erasure_instance() {
        // erase position 3 (1-based) of y1 = a1 + e1; zero errors elsewhere
        let c = rs42();
        let rx = Received::with_erased(gv(&[1, 3, 3, 0]), &[2]);
        let out = decode_algebraic(&c, &rx).unwrap();
        assert!(out.is_success());
        assert_eq!(out.codeword.unwrap(), gv(&[1, 3, 2, 0]));
        assert_eq!((out.t_used, out.r_used), (0, 1));
    }

    #[test]
    fn rejects_unsupported_kinds_and_overlong_erasures() {
        let constant = LinearCode::constant(4).unwrap();
        assert!(matches!(
            decode_bmd_algebraic(&constant, &gv(&[1, 1, 1, 1])),
            Err(AlgdecError::UnsupportedKind("constant"))
        ));
        let c = rs42();
        let rx = Received::with_erased(gv(&[0, 0, 0, 0]), &[0, 1, 2]);
        assert!(matches!(
            decode_algebraic(&c, &rx),
            Err(AlgdecError::TooManyErasures { r: 3, d: 3 })
        ));
        assert!(decode_bmd_algebraic(&c, &gv(&[0, 0])).is_err());
    }

    #[test]
    fn rs_agrees_with_oracle_exhaustively() {
        // every (error, erasure-set) pair with 2t + r < d, for d = 3:
        // (t, r) in {(0,0), (1,0), (0,1), (0,2)}
        for k in [2usize, 3] {
            let c = LinearCode::reed_solomon(&gv(&[0, 1, 2, 3]), k).unwrap();
            let cw = c.encode(&gv(&(0..k).map(|i| (i as u8 % 3) + 1).collect::<Vec<_>>())).unwrap();
            let d = c.distance().value();
            for_each_error_erasure(4, d, &mut |err, erased| {
                let symbols: Vec<Gf4> = cw.iter().zip(err).map(|(&a, &b)| a + b).collect();
                let rx = Received::with_erased(symbols, erased);
                let alg = decode_algebraic(&c, &rx).unwrap();
                let oracle = c.decode_error_erasure_exhaustive(&rx).unwrap();
                assert_eq!(alg.status, oracle.status, "status split on {rx:?}");
                assert!(alg.is_success());
                assert_eq!(alg.codeword, oracle.codeword);
                assert_eq!(alg.codeword.as_deref(), Some(&cw[..]));
                assert_eq!((alg.t_used, alg.r_used), (oracle.t_used, oracle.r_used));
            });
        }
    }

    /// All (error pattern, erasure set) pairs with 2t + r < d, where the
    /// error is supported outside the erasure set.
    fn for_each_error_erasure(
        n: usize,
        d: usize,
        f: &mut impl FnMut(&[Gf4], &[usize]),
    ) {
        for mask in 0u32..1 << n {
            let erased: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let r = erased.len();
            if r >= d {
                continue;
            }
            let t_max = (d - 1 - r) / 2;
            let free: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 0).collect();
            for tmask in 0u32..1 << free.len() {
                let spots: Vec<usize> = free
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| tmask >> j & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect();
                if spots.len() > t_max {
                    continue;
                }
                for assignment in 0..3usize.pow(spots.len() as u32) {
                    let mut err = vec![Gf4::ZERO; n];
                    let mut a = assignment;
                    for &p in &spots {
                        err[p] = Gf4::new((a % 3) as u8 + 1);
                        a /= 3;
                    }
                    f(&err, &erased);
                }
            }
        }
    }

    #[test]
    fn bch_matches_oracle_on_random_instances() {
        for (delta, trials) in [(3usize, 60usize), (5, 400)] {
            bch_oracle_agreement(delta, trials);
        }
    }

    fn bch_oracle_agreement(delta: usize, trials: usize) {
        let code = LinearCode::bch(15, delta).unwrap();
        let mut rng = SplitMix64::new(31);
        for trial in 0..trials {
            let msg: Vec<Gf4> = (0..code.k()).map(|_| g(rng.index(4) as u8)).collect();
            let cw = code.encode(&msg).unwrap();
            // random (t, r) with 2t + r < delta
            let r = rng.index(delta);
            let t_max = (delta - 1 - r) / 2;
            let t = rng.index(t_max + 1);
            let mut positions: Vec<usize> = (0..15).collect();
            for j in 0..(t + r) {
                let s = j + rng.index(15 - j);
                positions.swap(j, s);
            }
            let mut symbols = cw.clone();
            for &p in &positions[..t] {
                symbols[p] += Gf4::new(rng.index(3) as u8 + 1);
            }
            // erased positions may or may not hold an error
            for &p in &positions[t..t + r] {
                if rng.index(2) == 1 {
                    symbols[p] += Gf4::new(rng.index(3) as u8 + 1);
                }
            }
            let rx = Received::with_erased(symbols, &positions[t..t + r]);
            let alg = decode_algebraic(&code, &rx).unwrap();
            assert!(alg.is_success(), "trial {trial} failed: t={t} r={r}");
            assert_eq!(alg.codeword.as_deref(), Some(&cw[..]), "trial {trial}");
            assert_eq!(alg.r_used, r);
            let oracle = code.decode_error_erasure_exhaustive(&rx).unwrap();
            assert_eq!(alg.codeword, oracle.codeword);
            assert_eq!(alg.t_used, oracle.t_used);
        }
    }

    #[test]
    fn bch_beyond_radius_never_returns_wrong_success_quietly() {
        // push more errors than the designed radius: the decoder may fail
        // or may land on some codeword, but a Success must be a codeword
        // with 2t + r < d
        let code = LinearCode::bch(15, 5).unwrap();
        let cw = code.encode(&[Gf4::ONE; 9]).unwrap();
        let mut rng = SplitMix64::new(77);
        for _ in 0..200 {
            let mut y = cw.clone();
            for _ in 0..4 {
                y[rng.index(15)] += Gf4::new(rng.index(3) as u8 + 1);
            }
            let out = decode_algebraic(&code, &Received::plain(y)).unwrap();
            if out.is_success() {
                let c = out.codeword.unwrap();
                assert!(code.contains(&c));
                assert!(2 * out.t_used + out.r_used < 5);
            }
        }
    }

    #[test]
    fn key_equation_zero_syndromes() {
        let state = KeyEquationState::new(vec![0, 0, 0, 0], vec![1], 2);
        let solved = solve_key_equation(state, 5).unwrap();
        assert_eq!(solved.error_locator, vec![1]);
        assert!(solved.evaluator.is_empty());
    }

    #[test]
    fn key_equation_single_error_closed_form() {
        // syndromes S_j = v * a^(j p) give the locator 1 + a^p z, with the
        // single root a^-p
        let m = 2;
        let ctx = FieldCtx::canonical(2 * m);
        let delta = 5;
        for p in [0usize, 3, 7, 14] {
            let v = ctx.exp_at(9); // any nonzero value
            let syndromes: Vec<u8> =
                (1..delta).map(|j| ctx.mul(v, ctx.exp_at(j * p))).collect();
            let state = KeyEquationState::new(syndromes, vec![1], m);
            let solved = solve_key_equation(state, delta).unwrap();
            let sigma = solved.error_locator;
            assert_eq!(deg(&sigma), 1, "p={p}");
            // root at a^-p: sigma(a^-p) = 0
            let root = ctx.exp_at(ctx.order() - p % ctx.order());
            let mut ops = 0;
            assert_eq!(eval(ctx, &sigma, root, &mut ops), 0, "p={p}");
        }
    }

    #[test]
    fn key_equation_locator_degree_stays_in_budget() {
        // the Euclid stop rule pins deg(sigma) <= (d - 1 - r) / 2 for any
        // syndrome input, so the TooManyErrors path never triggers here
        let ctx = FieldCtx::canonical(4);
        let delta = 5;
        for seed in 0..50u64 {
            let mut rng = SplitMix64::new(seed);
            let syndromes: Vec<u8> =
                (1..delta).map(|_| ctx.exp_at(rng.index(15))).collect();
            let state = KeyEquationState::new(syndromes, vec![1], 2);
            let solved = solve_key_equation(state, delta).unwrap();
            assert!(2 * deg(&solved.error_locator) <= (delta - 1) as isize);
        }
    }

    #[test]
    fn overweight_errors_are_rejected_downstream() {
        // three errors against a two-error budget: the locator from the
        // key equation cannot describe them, so the decode fails at the
        // root-structure or re-check stage (or lands on a different
        // codeword, which finish() only accepts inside its own region)
        let code = LinearCode::bch(15, 5).unwrap();
        let cw = code.encode(&[Gf4::ZERO; 9]).unwrap();
        let mut failures = 0;
        let mut rng = SplitMix64::new(3);
        for _ in 0..50 {
            let mut y = cw.clone();
            let mut pos: Vec<usize> = (0..15).collect();
            for j in 0..3 {
                let s = j + rng.index(15 - j);
                pos.swap(j, s);
                y[pos[j]] += Gf4::new(rng.index(3) as u8 + 1);
            }
            let out = decode_algebraic(&code, &Received::plain(y)).unwrap();
            if !out.is_success() {
                failures += 1;
            }
        }
        assert!(failures > 25, "only {failures}/50 overweight patterns rejected");
    }

    #[test]
    fn erasures_only_recovery_at_full_budget() {
        // r = d - 1 erasures, t = 0: locator stays 1 and the erased values
        // come back from the evaluator
        let code = LinearCode::bch(15, 5).unwrap();
        let cw = code.encode(&gv(&[1, 2, 3, 0, 1, 2, 3, 0, 1])).unwrap();
        let erased = [1usize, 5, 8, 12];
        let mut symbols = cw.clone();
        for &p in &erased {
            symbols[p] = Gf4::ZERO; // value is ignored anyway
        }
        let rx = Received::with_erased(symbols, &erased);
        let out = decode_algebraic(&code, &rx).unwrap();
        assert!(out.is_success());
        assert_eq!(out.codeword.unwrap(), cw);
        assert_eq!((out.t_used, out.r_used), (0, 4));

        // same on the RS side
        let c = rs42();
        let cw = c.encode(&gv(&[2, 1])).unwrap();
        let rx = Received::with_erased(cw.clone(), &[0, 3]);
        let out = decode_algebraic(&c, &rx).unwrap();
        assert_eq!(out.codeword.unwrap(), cw);
    }

    #[test]
    fn operation_count_is_reported() {
        let code = LinearCode::bch(15, 5).unwrap();
        let cw = code.encode(&[Gf4::W2; 9]).unwrap();
        let (out, ops) = decode_algebraic_with_ops(&code, &Received::plain(cw)).unwrap();
        assert!(out.is_success());
        assert!(ops > 0);
    }

    #[test]
    fn trace_records_euclid_steps() {
        let ctx = FieldCtx::canonical(4);
        let delta = 5;
        // two errors: positions 2 and 9 with values 1
        let p1 = 2usize;
        let p2 = 9usize;
        let syndromes: Vec<u8> = (1..delta)
            .map(|j| ctx.add(ctx.exp_at(j * p1), ctx.exp_at(j * p2)))
            .collect();
        let state = KeyEquationState::new(syndromes, vec![1], 2);
        let mut trace = Vec::new();
        let mut ops = 0;
        let solved =
            solve_key_equation_traced(state, delta, Some(&mut trace), &mut ops).unwrap();
        assert_eq!(deg(&solved.error_locator), 2);
        assert!(!trace.is_empty());
        assert!(trace[0].contains("locator"));
    }
}
