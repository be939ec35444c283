//! Fast counting of `h(m, d_m - k)` above the strong-boundedness threshold.
//!
//! For `m > 24k + 12 - 8b` every counted set of size `d_m - k` is strongly
//! bounded, its insertion offsets sit in `{b - 2k - 1, ..., 0}`, and
//! working is equivalent to constraint-system compatibility. Counting
//! therefore splits by insertion set: for each insertion set, the
//! compatible removal sets of the forced size are counted by enumerating
//! subsets of the small constrained universe and completing them from the
//! unconstrained offsets with a binomial coefficient. Insertion sets are
//! processed in parallel; summation of exact integers makes the result
//! independent of scheduling.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::ri::{
    constraint_system, frame, min_insertion_offset, strong_bound_threshold, ConstraintSystem,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FastCountError {
    #[error("threshold not met: need n > {bound} (24k + 12 - 8b with k = {k}, b = {b})")]
    ThresholdNotMet { n: u32, k: u32, b: u8, bound: i64 },
    #[error("constrained offset {offset} exceeds universe bound {d}")]
    OffsetBeyondUniverse { offset: u32, d: u32 },
}

/// Binomial coefficient `C(n, k)`, exactly; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut res = BigUint::one();
    for i in 0..k {
        res *= n - i;
        res /= i + 1; // exact: the running product is C(n, i+1) * (i+1)!
    }
    res
}

/// Number of removal sets `R ⊆ {1, ..., d}` with `|R| = target_size` that
/// contain every forced offset and hit every clause.
///
/// Subsets of the constrained universe are enumerated explicitly; each
/// satisfying subset of size `s` is completed by any `target_size - s`
/// unconstrained offsets, contributing `C(d - |universe|, target_size - s)`.
pub fn count_completions(
    cs: &ConstraintSystem,
    target_size: u32,
    d: u32,
) -> Result<BigUint, FastCountError> {
    let universe = cs.universe();
    if let Some(&max) = universe.last() {
        if max > d {
            return Err(FastCountError::OffsetBeyondUniverse { offset: max, d });
        }
    }
    let optional: Vec<u32> = universe
        .iter()
        .copied()
        .filter(|o| cs.forced.binary_search(o).is_err())
        .collect();
    assert!(optional.len() < 64, "constrained universe too large to enumerate");
    let clause_masks: Vec<u64> = cs
        .clauses
        .iter()
        .map(|&(y, z)| {
            let iy = optional.binary_search(&y).expect("clause offset not forced");
            let iz = optional.binary_search(&z).expect("clause offset not forced");
            1u64 << iy | 1u64 << iz
        })
        .collect();

    let forced_len = cs.forced.len() as u32;
    let free = (d - universe.len() as u32) as u64;
    let mut total = BigUint::zero();
    for mask in 0u64..1 << optional.len() {
        if clause_masks.iter().all(|&c| mask & c != 0) {
            let chosen = forced_len + mask.count_ones();
            if chosen <= target_size {
                total += binomial(free, (target_size - chosen) as u64);
            }
        }
    }
    Ok(total)
}

/// Computes `h(m, d_m - k)` exactly, for `m` strictly above the
/// strong-boundedness threshold `24k + 12 - 8b`. Below the threshold the
/// decomposition is not known to be complete, so the call is refused.
pub fn fast_h(m: u32, k: u32) -> Result<BigUint, FastCountError> {
    let fr = frame(m);
    let bound = strong_bound_threshold(k, fr.b);
    if (m as i64) <= bound {
        return Err(FastCountError::ThresholdNotMet { n: m, k, b: fr.b, bound });
    }
    debug_assert!(k <= fr.d, "above the threshold d_m always dominates k");

    let lowest = min_insertion_offset(k, fr.b);
    let candidates: Vec<i64> = (lowest..=0).collect(); // empty when lowest > 0
    assert!(candidates.len() < 32);

    (0u32..1 << candidates.len())
        .into_par_iter()
        .map(|mask| {
            let inserting: Vec<i64> = candidates
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &a)| a)
                .collect();
            let target = inserting.len() as u32 + k;
            if target > fr.d {
                return Ok(BigUint::zero());
            }
            match constraint_system(&inserting, fr.b) {
                None => Ok(BigUint::zero()),
                Some(cs) => count_completions(&cs, target, fr.d),
            }
        })
        .try_reduce(BigUint::zero, |a, b| Ok(a + b))
}
