//! Acceptance suite: one test per criterion, each printing a PASS line
//! (run with `cargo test --test acceptance -- --nocapture` to see them).
//!
//! Heavy and timing-sensitive criteria take a shared lock so wall-clock
//! measurements are not distorted by concurrently running tests.

use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use srcodes::algdec::{decode_algebraic, decode_algebraic_with_ops};
use srcodes::channel::{enumerate_errors, sample_error_with};
use srcodes::cli::cmd_design_region_search;
use srcodes::codes::{DecodeStatus, LinearCode, Received};
use srcodes::gf::Gf4;
use srcodes::rng::SplitMix64;
use srcodes::srdec::{decode_ccq, decode_two_step, SrCode, SrOutcome};
use srcodes::sumrank::{
    phi, sr_min_distance_exhaustive, weight_identity_check, DsrEstimate, SrWord,
};

static HEAVY: Mutex<()> = Mutex::new(());

fn heavy_guard() -> std::sync::MutexGuard<'static, ()> {
    HEAVY.lock().unwrap_or_else(|e| e.into_inner())
}

fn g(v: u8) -> Gf4 {
    Gf4::new(v)
}

fn gv(vals: &[u8]) -> Vec<Gf4> {
    vals.iter().map(|&v| g(v)).collect()
}

fn all_points() -> Vec<Gf4> {
    vec![g(0), g(1), g(2), g(3)]
}

/// RS[4,2,3] x constant[4,1,4], the worked example pair.
fn example_pair() -> SrCode {
    let c1 = LinearCode::reed_solomon(&all_points(), 2).unwrap();
    let c2 = LinearCode::reed_solomon(&all_points(), 1).unwrap();
    SrCode::new(c1, c2).unwrap()
}

/// BCH pair at length 15 satisfying both decoders' preconditions:
/// C1 = [15,6,7], C2 = [15,4] with exact distance 10; dsr = 10.
fn bch15_pair() -> SrCode {
    let c1 = LinearCode::bch(15, 7).unwrap();
    let mut c2 = LinearCode::bch(15, 9).unwrap();
    c2.min_distance_exhaustive().unwrap();
    SrCode::new(c1, c2).unwrap()
}

/// BCH pair at length 63: C1 = [63,14,>=28], C2 = [63,8] with exact
/// distance; dsr known only by bounds, tightened by witness codewords.
fn bch63_pair() -> SrCode {
    let c1 = LinearCode::bch(63, 28).unwrap();
    let mut c2 = LinearCode::bch(63, 32).unwrap();
    c2.min_distance_exhaustive().unwrap();
    SrCode::new(c1, c2).unwrap()
}

fn add_words(a: &[Gf4], b: &[Gf4]) -> Vec<Gf4> {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

fn received_word(a1: &[Gf4], a2: &[Gf4], e: &SrWord) -> SrWord {
    SrWord::new(add_words(a1, &e.v1), add_words(a2, &e.v2)).unwrap()
}

#[test]
fn criterion_01_phi_structure() {
    let started = Instant::now();
    // all 16 matrices distinct
    let mut seen = [false; 16];
    for a in Gf4::all() {
        for b in Gf4::all() {
            let m = phi(a, b);
            assert!(!seen[m.bits() as usize], "phi collides at ({a}, {b})");
            seen[m.bits() as usize] = true;
        }
    }
    // GF(2)-linear over all 256 input pairs
    for a in Gf4::all() {
        for b in Gf4::all() {
            for c in Gf4::all() {
                for d in Gf4::all() {
                    assert_eq!(phi(a + c, b + d).bits(), phi(a, b).bits() ^ phi(c, d).bits());
                }
            }
        }
    }
    // rank table by zero pattern: 0 / 2 / 2 / 1
    for a in Gf4::all() {
        for b in Gf4::all() {
            let expected = match (a.is_zero(), b.is_zero()) {
                (true, true) => 0,
                (false, false) => 1,
                _ => 2,
            };
            assert_eq!(phi(a, b).rank(), expected);
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_millis(1), "took {elapsed:?}");
    println!("criterion 1 (phi structure, exhaustive, {elapsed:?}): PASS");
}

#[test]
fn criterion_02_weight_identity() {
    let started = Instant::now();
    let code = example_pair();
    let mut pairs = 0usize;
    for a1 in code.c1().codewords().unwrap() {
        for a2 in code.c2().codewords().unwrap() {
            let (lhs, rhs) = weight_identity_check(&a1, &a2).unwrap();
            assert_eq!(lhs, rhs, "identity fails at {a1:?} x {a2:?}");
            pairs += 1;
        }
    }
    assert_eq!(pairs, 64);
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_millis(10), "took {elapsed:?}");
    println!("criterion 2 (weight identity on all 64 pairs, {elapsed:?}): PASS");
}

#[test]
fn criterion_03_golden_example() {
    let code = example_pair();
    // y1 = (1, 1+w, 1+w, 0), y2 = (w, w, 0, w)
    let y = SrWord::new(gv(&[1, 3, 3, 0]), gv(&[2, 2, 0, 2])).unwrap();
    let report = decode_two_step(&code, &y).unwrap();
    let SrOutcome::Success { a1, a2, e1, e2 } = &report.outcome else {
        panic!("golden instance failed to decode: {:?}", report.outcome);
    };
    assert_eq!(a1, &gv(&[1, 3, 2, 0]), "a1 = (1, 1+w, w, 0)");
    assert_eq!(a2, &gv(&[2, 2, 2, 2]), "a2 = (w, w, w, w)");
    assert_eq!(e1, &gv(&[0, 0, 1, 0]));
    assert_eq!(e2, &gv(&[0, 0, 2, 0]));
    let one_based: Vec<usize> = report.erasures.iter().map(|p| p + 1).collect();
    assert_eq!(one_based, vec![3], "J = {{3}}");
    assert_eq!((report.t, report.r), (0, 1));
    let d1 = code.c1().distance().value();
    assert_eq!(d1, 3);
    assert!(2 * report.t + report.r == 1 && 1 < d1, "2t + r = 1 < d1 = 3");
    println!("criterion 3 (golden worked example, exact values): PASS");
}

#[test]
fn criterion_04_radius_guarantee() {
    let started = Instant::now();
    let code = example_pair();
    // dsr from the enumeration oracle
    let dsr = sr_min_distance_exhaustive(code.c1(), code.c2()).unwrap();
    assert_eq!(dsr, DsrEstimate::Exact(4));
    assert_eq!(code.dsr(), dsr);
    let radius = code.unique_radius();
    assert_eq!(radius, 1);

    let a1 = code.c1().encode(&gv(&[1, 2])).unwrap();
    let a2 = code.c2().encode(&gv(&[2])).unwrap();
    let mut errors = vec![SrWord::zero(4)];
    errors.extend(enumerate_errors(4, radius).unwrap());
    assert_eq!(errors.len(), 37, "zero word plus 36 rank-1 errors");

    let mut failures = 0usize;
    for e in &errors {
        let y = received_word(&a1, &a2, e);
        let report = decode_two_step(&code, &y).unwrap();
        match &report.outcome {
            SrOutcome::Success { a1: x1, a2: x2, .. } if x1 == &a1 && x2 == &a2 => {}
            _ => failures += 1,
        }
        assert_eq!((report.calls_dec1, report.calls_dec2), (1, 1));
    }
    assert_eq!(failures, 0, "all {} errors within the radius decode", errors.len());
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!(
        "criterion 4 (radius guarantee, {}/{} successes, {elapsed:?}): PASS",
        errors.len(),
        errors.len()
    );
}

/// Every (error, erasure-set) pair with 2t + r < d: erasure sets as
/// bitmasks, error supports outside them, all nonzero value assignments.
fn for_each_error_erasure(n: usize, d: usize, f: &mut impl FnMut(&[Gf4], &[usize])) {
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
fn criterion_05_lemma1_oracle() {
    let started = Instant::now();
    let rs = LinearCode::reed_solomon(&all_points(), 2).unwrap();
    let (generic, _) = LinearCode::generic(&[
        gv(&[1, 0, 1, 1, 1, 1]),
        gv(&[0, 1, 1, 2, 3, 0]),
    ])
    .unwrap();
    // d = 4, so the region includes simultaneous errors and erasures
    assert_eq!(generic.distance().value(), 4);
    assert!(generic.distance().is_exact());

    // closed-form size of the 2t + r < d region, to pin the enumeration
    let region_size = |n: usize, d: usize| -> usize {
        let binom = |n: usize, k: usize| -> usize {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        };
        (0..d)
            .map(|r| {
                let t_max = (d - 1 - r) / 2;
                binom(n, r)
                    * (0..=t_max)
                        .map(|t| binom(n - r, t) * 3usize.pow(t as u32))
                        .sum::<usize>()
            })
            .sum()
    };

    let mut checked_total = 0usize;
    for code in [&rs, &generic] {
        let d = code.distance().value();
        let msg: Vec<Gf4> = (0..code.k()).map(|i| g((i as u8 % 3) + 1)).collect();
        let cw = code.encode(&msg).unwrap();
        let mut checked = 0usize;
        for_each_error_erasure(code.n(), d, &mut |err, erased| {
            let symbols = add_words(&cw, err);
            let rx = Received::with_erased(symbols, erased);
            let out = code.decode_error_erasure_exhaustive(&rx).unwrap();
            assert_eq!(out.status, DecodeStatus::Success, "at e={err:?} J={erased:?}");
            assert_eq!(out.codeword.as_deref(), Some(&cw[..]));
            checked += 1;
        });
        assert_eq!(checked, region_size(code.n(), d), "enumeration incomplete");
        checked_total += checked;
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!(
        "criterion 5 (error/erasure oracle, {checked_total} instances on RS[4,2,3] and [6,2], {elapsed:?}): PASS"
    );
}

#[test]
fn criterion_06_algebraic_equivalence() {
    let _lock = heavy_guard();
    let started = Instant::now();

    // exhaustive agreement on RS[4,2,3]
    let rs = LinearCode::reed_solomon(&all_points(), 2).unwrap();
    let cw = rs.encode(&gv(&[1, 2])).unwrap();
    let mut rs_checked = 0usize;
    for_each_error_erasure(4, 3, &mut |err, erased| {
        let rx = Received::with_erased(add_words(&cw, err), erased);
        let alg = decode_algebraic(&rs, &rx).unwrap();
        let oracle = rs.decode_error_erasure_exhaustive(&rx).unwrap();
        assert_eq!(alg.status, oracle.status);
        assert_eq!(alg.codeword, oracle.codeword);
        assert_eq!((alg.t_used, alg.r_used), (oracle.t_used, oracle.r_used));
        rs_checked += 1;
    });

    // >= 10^4 random (t, r) instances with 2t + r < 5 on BCH[15, 9, delta=5]
    let bch = LinearCode::bch(15, 5).unwrap();
    let delta = 5usize;
    let trials = 10_000usize;
    let base = SplitMix64::new(0xACCE97);
    let disagreements: usize = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = base.fork(i as u64);
            let msg: Vec<Gf4> = (0..bch.k()).map(|_| g(rng.index(4) as u8)).collect();
            let cw = bch.encode(&msg).unwrap();
            let r = rng.index(delta);
            let t = rng.index((delta - 1 - r) / 2 + 1);
            let mut pos: Vec<usize> = (0..15).collect();
            for j in 0..t + r {
                let s = j + rng.index(15 - j);
                pos.swap(j, s);
            }
            let mut symbols = cw.clone();
            for &p in &pos[..t] {
                symbols[p] += g(rng.index(3) as u8 + 1);
            }
            for &p in &pos[t..t + r] {
                if rng.index(2) == 1 {
                    symbols[p] += g(rng.index(3) as u8 + 1);
                }
            }
            let rx = Received::with_erased(symbols, &pos[t..t + r]);
            let alg = decode_algebraic(&bch, &rx).unwrap();
            let oracle = bch.decode_error_erasure_exhaustive(&rx).unwrap();
            let agree = alg.status == oracle.status
                && alg.codeword == oracle.codeword
                && alg.codeword.as_deref() == Some(&cw[..]);
            usize::from(!agree)
        })
        .sum();
    assert_eq!(disagreements, 0, "algebraic decoder diverged from the oracle");
    let elapsed = started.elapsed();
    println!(
        "criterion 6 (algebraic = oracle: {rs_checked} RS instances exhaustive, {trials} BCH[15] samples, {elapsed:?}): PASS"
    );
}

#[test]
fn criterion_07_call_counts() {
    // two-step: exactly one call to each decoder; baseline: one C2 call
    // and at most three C1 calls, on every decoded instance
    let code = example_pair();
    let a1 = code.c1().encode(&gv(&[1, 2])).unwrap();
    let a2 = code.c2().encode(&gv(&[2])).unwrap();
    let mut errors = vec![SrWord::zero(4)];
    errors.extend(enumerate_errors(4, code.unique_radius()).unwrap());
    for e in &errors {
        let y = received_word(&a1, &a2, e);
        let ts = decode_two_step(&code, &y).unwrap();
        assert_eq!((ts.calls_dec1, ts.calls_dec2), (1, 1));
        let cq = decode_ccq(&code, &y).unwrap();
        assert_eq!(cq.calls_dec2, 1);
        assert!(cq.calls_dec1 <= 3, "ccq made {} C1 calls", cq.calls_dec1);
    }

    // same contract on the BCH[15] pair with sampled errors
    let pair = bch15_pair();
    let mut rng = SplitMix64::new(7);
    for _ in 0..100 {
        let msg1: Vec<Gf4> = (0..pair.c1().k()).map(|_| g(rng.index(4) as u8)).collect();
        let msg2: Vec<Gf4> = (0..pair.c2().k()).map(|_| g(rng.index(4) as u8)).collect();
        let a1 = pair.c1().encode(&msg1).unwrap();
        let a2 = pair.c2().encode(&msg2).unwrap();
        let w = 1 + rng.index(pair.unique_radius());
        let e = sample_error_with(15, w, &mut rng).unwrap();
        let y = received_word(&a1, &a2, &e);
        let ts = decode_two_step(&pair, &y).unwrap();
        assert!(ts.outcome.is_success());
        assert_eq!((ts.calls_dec1, ts.calls_dec2), (1, 1));
        let cq = decode_ccq(&pair, &y).unwrap();
        assert!(cq.outcome.is_success());
        assert_eq!(cq.calls_dec2, 1);
        assert!(cq.calls_dec1 <= 3);
        // within the radius the two decoders must return the same pair
        let SrOutcome::Success { a1: t1, a2: t2, .. } = &ts.outcome else { panic!() };
        let SrOutcome::Success { a1: q1, a2: q2, .. } = &cq.outcome else { panic!() };
        assert_eq!((t1, t2), (q1, q2));
        assert_eq!((t1, t2), (&a1, &a2));
    }
    println!("criterion 7 (call counts: 1+1 for two-step, 1+<=3 for baseline): PASS");
}

#[test]
fn criterion_08_design_region_witness() {
    let _lock = heavy_guard();
    let started = Instant::now();
    let witnesses = cmd_design_region_search(8).unwrap();
    assert!(!witnesses.is_empty(), "no design-region witness found up to l = 8");
    for w in &witnesses {
        assert!(w.d2 >= w.dsr, "filter violated: d2 < dsr in the output");
        assert!(3 * w.d1 < 2 * w.dsr, "filter violated: baseline region");
        assert!(
            (0.5..2.0 / 3.0).contains(&w.delta1),
            "delta1 = {} outside [1/2, 2/3)",
            w.delta1
        );
        assert!(w.verified, "witness not verified at full radius: {w}");
    }
    // at least one witness with a substantive radius
    let strong = witnesses
        .iter()
        .find(|w| w.radius >= 1)
        .expect("no witness with radius >= 1");
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    println!(
        "criterion 8 (design-region witness: {} found, e.g. {strong}, {elapsed:?}): PASS",
        witnesses.len()
    );
}

#[test]
fn criterion_09_subcode_distance() {
    // the subcode {a1 x} has sum-rank distance exactly 2 d1
    let mut cases: Vec<(String, LinearCode)> = Vec::new();
    for k in 1..=3 {
        let c = LinearCode::reed_solomon(&all_points(), k).unwrap();
        cases.push((format!("rs[4,{k}]"), c));
    }
    let (generic, _) =
        LinearCode::generic(&[gv(&[1, 0, 1, 2, 3, 1]), gv(&[0, 1, 2, 1, 2, 3])]).unwrap();
    cases.push(("generic[6,2]".into(), generic));
    let mut bch = LinearCode::bch(15, 5).unwrap();
    bch.min_distance_exhaustive().unwrap();
    cases.push(("bch[15,9]".into(), bch));

    for (name, c1) in &cases {
        let d1 = c1.distance().value();
        assert!(c1.distance().is_exact());
        let dsr = sr_min_distance_exhaustive(c1, &LinearCode::zero(c1.n())).unwrap();
        assert_eq!(
            dsr,
            DsrEstimate::Exact(2 * d1),
            "subcode distance for {name} is not 2 d1"
        );
    }
    println!("criterion 9 (subcode {{a1 x}} distance = 2 d1 on {} codes): PASS", cases.len());
}

struct TrendSample {
    ts_total: Duration,
    ts_dec1: Duration,
    ccq_total: Duration,
    ccq_dec1: Duration,
}

fn measure_pair(code: &SrCode, trials: usize, seed: u64) -> TrendSample {
    let l = code.block_len();
    let mut rng = SplitMix64::new(seed);
    let mut sample = TrendSample {
        ts_total: Duration::ZERO,
        ts_dec1: Duration::ZERO,
        ccq_total: Duration::ZERO,
        ccq_dec1: Duration::ZERO,
    };
    // a short warmup keeps one-time table setup out of the measurement
    for i in 0..trials + 8 {
        let msg1: Vec<Gf4> = (0..code.c1().k()).map(|_| g(rng.index(4) as u8)).collect();
        let msg2: Vec<Gf4> = (0..code.c2().k()).map(|_| g(rng.index(4) as u8)).collect();
        let a1 = code.c1().encode(&msg1).unwrap();
        let a2 = code.c2().encode(&msg2).unwrap();
        let e = sample_error_with(l, 1, &mut rng).unwrap();
        let y = received_word(&a1, &a2, &e);

        let ts = decode_two_step(code, &y).unwrap();
        let cq = decode_ccq(code, &y).unwrap();
        assert!(ts.outcome.is_success() && cq.outcome.is_success());
        if i < 8 {
            continue;
        }
        sample.ts_total += ts.dec1_time + ts.dec2_time;
        sample.ts_dec1 += ts.dec1_time;
        sample.ccq_total += cq.dec1_time + cq.dec2_time;
        sample.ccq_dec1 += cq.dec1_time;
    }
    sample
}

#[test]
fn criterion_10_complexity_trend() {
    let _lock = heavy_guard();

    // quadratic scaling of the algebraic decoder: mean field-op counts at
    // a fixed relative radius grow no faster than 2 * (n ratio)^2
    let ops_at = |n: usize, delta: usize, trials: usize| -> f64 {
        let code = LinearCode::bch(n, delta).unwrap();
        let t = (delta - 1) / 2;
        let mut rng = SplitMix64::new(0xC0DE + n as u64);
        let mut total = 0u64;
        for _ in 0..trials {
            let msg: Vec<Gf4> = (0..code.k()).map(|_| g(rng.index(4) as u8)).collect();
            let mut y = code.encode(&msg).unwrap();
            let mut pos: Vec<usize> = (0..n).collect();
            for j in 0..t {
                let s = j + rng.index(n - j);
                pos.swap(j, s);
                y[pos[j]] += g(rng.index(3) as u8 + 1);
            }
            let (out, ops) = decode_algebraic_with_ops(&code, &Received::plain(y)).unwrap();
            assert!(out.is_success());
            total += ops;
        }
        total as f64 / trials as f64
    };
    let ops15 = ops_at(15, 5, 60); // corrects 2 of 15
    let ops63 = ops_at(63, 17, 60); // corrects 8 of 63
    let ratio = ops63 / ops15;
    let quad = (63.0f64 / 15.0).powi(2);
    assert!(
        ratio <= 2.0 * quad,
        "op-count ratio {ratio:.1} exceeds 2 x quadratic {quad:.1}"
    );

    // wall-clock comparison on both BCH pairs at equal weight
    let mut lines = Vec::new();
    for (name, code, trials) in [
        ("BCH[15]", bch15_pair(), 600usize),
        ("BCH[63]", bch63_pair(), 200usize),
    ] {
        assert!(code.can_decode_two_step().is_ok(), "{name} two-step precondition");
        assert!(code.can_decode_ccq().is_ok(), "{name} baseline precondition");
        let s = measure_pair(&code, trials, 0xBE27C4);
        let mean_ts = s.ts_total.as_secs_f64() / trials as f64 * 1e6;
        let mean_ccq = s.ccq_total.as_secs_f64() / trials as f64 * 1e6;
        assert!(
            s.ccq_total > s.ts_total,
            "{name}: baseline ({mean_ccq:.1} us) not slower than two-step ({mean_ts:.1} us)"
        );
        let share_factor = s.ccq_dec1.as_secs_f64() / s.ts_dec1.as_secs_f64();
        assert!(
            (2.0..=4.0).contains(&share_factor),
            "{name}: C1-decoder time factor {share_factor:.2} outside [2, 4]"
        );
        lines.push(format!(
            "{name}: two-step {mean_ts:.1} us, baseline {mean_ccq:.1} us, C1 time factor {share_factor:.2}"
        ));
    }
    println!(
        "criterion 10 (complexity trend; op ratio {ratio:.1} <= {:.1}; {}): PASS",
        2.0 * quad,
        lines.join("; ")
    );
}
