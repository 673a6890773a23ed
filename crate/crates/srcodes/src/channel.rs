//! Sum-rank error generation: exhaustive enumeration of all error words up
//! to a target sum-rank weight, and uniform sampling of errors of exactly a
//! given weight.
//!
//! An error word of weight w splits into i1 positions with only the first
//! component set, i2 with only the second, and i3 with both, subject to
//! 2 i1 + 2 i2 + i3 = w. Each split has a closed-form word count, which is
//! what makes uniform sampling over the whole weight shell possible.

use thiserror::Error;

use crate::gf::Gf4;
use crate::rng::SplitMix64;
use crate::sumrank::{sr_weight, SrWord};

/// Default cap on the number of enumerated error words: 2^24.
pub const ERROR_ENUM_CAP: u128 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChannelError {
    #[error("no error of sum-rank weight {w} fits in block length {l}")]
    UnachievableWeight { l: usize, w: usize },
    #[error("enumerating {needed} error words exceeds the cap {cap}")]
    CapExceeded { needed: u128, cap: u128 },
}

/// One feasible split (i1, i2, i3) of a weight budget over a block length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ErrorBudget {
    pub l: usize,
    pub w: usize,
    pub i1: usize,
    pub i2: usize,
    pub i3: usize,
}

impl ErrorBudget {
    /// All splits with 2 i1 + 2 i2 + i3 = w and i1 + i2 + i3 <= l, in a
    /// fixed deterministic order.
    pub fn compositions(l: usize, w: usize) -> Vec<ErrorBudget> {
        let mut out = Vec::new();
        for i1 in 0..=w / 2 {
            for i2 in 0..=(w - 2 * i1) / 2 {
                let i3 = w - 2 * i1 - 2 * i2;
                if i1 + i2 + i3 <= l {
                    out.push(ErrorBudget { l, w, i1, i2, i3 });
                }
            }
        }
        out
    }

    /// Number of error words with this split:
    /// multinomial(l; i1, i2, i3) * 3^i1 * 3^i2 * 9^i3.
    pub fn count(&self) -> u128 {
        binom(self.l, self.i1)
            * binom(self.l - self.i1, self.i2)
            * binom(self.l - self.i1 - self.i2, self.i3)
            * pow_u128(3, self.i1)
            * pow_u128(3, self.i2)
            * pow_u128(9, self.i3)
    }
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn pow_u128(base: u128, e: usize) -> u128 {
    base.pow(e as u32)
}

/// Exact number of error words of sum-rank weight exactly w.
pub fn count_errors_exact(l: usize, w: usize) -> u128 {
    ErrorBudget::compositions(l, w).iter().map(ErrorBudget::count).sum()
}

/// Exact number of error words with 1 <= weight <= w_max.
pub fn count_errors_up_to(l: usize, w_max: usize) -> u128 {
    (1..=w_max).map(|w| count_errors_exact(l, w)).sum()
}

/// Every error word with 1 <= sum-rank weight <= w_max, each exactly once,
/// ordered by weight then composition then support then values.
pub fn enumerate_errors(l: usize, w_max: usize) -> Result<Vec<SrWord>, ChannelError> {
    enumerate_errors_with_cap(l, w_max, ERROR_ENUM_CAP)
}

pub fn enumerate_errors_with_cap(
    l: usize,
    w_max: usize,
    cap: u128,
) -> Result<Vec<SrWord>, ChannelError> {
    let needed = count_errors_up_to(l, w_max);
    if needed > cap {
        return Err(ChannelError::CapExceeded { needed, cap });
    }
    let mut out = Vec::with_capacity(needed as usize);
    for w in 1..=w_max {
        for budget in ErrorBudget::compositions(l, w) {
            emit_for_budget(&budget, &mut out);
        }
    }
    debug_assert_eq!(out.len() as u128, needed);
    Ok(out)
}

fn emit_for_budget(budget: &ErrorBudget, out: &mut Vec<SrWord>) {
    let l = budget.l;
    let pool: Vec<usize> = (0..l).collect();
    for_each_subset(&pool, budget.i1, &mut |s1| {
        let rest1: Vec<usize> = pool.iter().copied().filter(|p| !s1.contains(p)).collect();
        for_each_subset(&rest1, budget.i2, &mut |s2| {
            let rest2: Vec<usize> =
                rest1.iter().copied().filter(|p| !s2.contains(p)).collect();
            for_each_subset(&rest2, budget.i3, &mut |s3| {
                emit_values(budget, s1, s2, s3, out);
            });
        });
    });
}

/// Walks all value assignments for fixed supports: one nonzero symbol per
/// I1/I2 position, a nonzero pair per I3 position.
fn emit_values(
    budget: &ErrorBudget,
    s1: &[usize],
    s2: &[usize],
    s3: &[usize],
    out: &mut Vec<SrWord>,
) {
    let slots = s1.len() + s2.len() + 2 * s3.len();
    let mut digits = vec![0u8; slots]; // each in 0..3, symbol = digit + 1
    loop {
        let mut e = SrWord::zero(budget.l);
        let mut d = digits.iter();
        for &p in s1 {
            e.v1[p] = Gf4::new(*d.next().unwrap() + 1);
        }
        for &p in s2 {
            e.v2[p] = Gf4::new(*d.next().unwrap() + 1);
        }
        for &p in s3 {
            e.v1[p] = Gf4::new(*d.next().unwrap() + 1);
            e.v2[p] = Gf4::new(*d.next().unwrap() + 1);
        }
        debug_assert_eq!(sr_weight(&e), budget.w);
        out.push(e);
        // odometer over base-3 digits
        let mut i = 0;
        loop {
            if i == digits.len() {
                return;
            }
            digits[i] += 1;
            if digits[i] < 3 {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn for_each_subset(pool: &[usize], k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(pool: &[usize], k: usize, start: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if acc.len() == k {
            f(acc);
            return;
        }
        let remaining = k - acc.len();
        for i in start..=pool.len().saturating_sub(remaining) {
            acc.push(pool[i]);
            rec(pool, k, i + 1, acc, f);
            acc.pop();
        }
    }
    if k > pool.len() {
        return;
    }
    rec(pool, k, 0, &mut Vec::with_capacity(k), f);
}

/// A uniformly random error word of sum-rank weight exactly w,
/// deterministic in the seed. Uniformity is over words, not compositions:
/// the split is drawn proportionally to its closed-form count, then
/// supports and values are drawn uniformly.
pub fn sample_error(l: usize, w: usize, seed: u64) -> Result<SrWord, ChannelError> {
    sample_error_with(l, w, &mut SplitMix64::new(seed))
}

/// As [`sample_error`] but drawing from a caller-owned stream.
pub fn sample_error_with(
    l: usize,
    w: usize,
    rng: &mut SplitMix64,
) -> Result<SrWord, ChannelError> {
    if w == 0 {
        return Ok(SrWord::zero(l));
    }
    let comps = ErrorBudget::compositions(l, w);
    let total: u128 = comps.iter().map(ErrorBudget::count).sum();
    if total == 0 {
        return Err(ChannelError::UnachievableWeight { l, w });
    }
    let mut pick = next_below_u128(rng, total);
    let budget = comps
        .iter()
        .find(|c| {
            let n = c.count();
            if pick < n {
                true
            } else {
                pick -= n;
                false
            }
        })
        .expect("pick < total");

    // Disjoint supports from a partial Fisher-Yates shuffle.
    let s = budget.i1 + budget.i2 + budget.i3;
    let mut positions: Vec<usize> = (0..l).collect();
    for j in 0..s {
        let swap_with = j + rng.index(l - j);
        positions.swap(j, swap_with);
    }
    let mut e = SrWord::zero(l);
    for &p in &positions[..budget.i1] {
        e.v1[p] = Gf4::new(rng.index(3) as u8 + 1);
    }
    for &p in &positions[budget.i1..budget.i1 + budget.i2] {
        e.v2[p] = Gf4::new(rng.index(3) as u8 + 1);
    }
    for &p in &positions[budget.i1 + budget.i2..s] {
        e.v1[p] = Gf4::new(rng.index(3) as u8 + 1);
        e.v2[p] = Gf4::new(rng.index(3) as u8 + 1);
    }
    debug_assert_eq!(sr_weight(&e), w);
    Ok(e)
}

fn next_below_u128(rng: &mut SplitMix64, n: u128) -> u128 {
    debug_assert!(n > 0);
    if n <= u64::MAX as u128 {
        return rng.next_below(n as u64) as u128;
    }
    let zone = u128::MAX - u128::MAX % n;
    loop {
        let v = (rng.next_u64() as u128) << 64 | rng.next_u64() as u128;
        if v < zone {
            return v % n;
        }
    }
}
