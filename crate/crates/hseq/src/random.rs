//! The random generating-set model and its expectation.
//!
//! A set is drawn by including each integer `1, ..., M` independently with
//! probability `p`; the quantity of interest is the expected embedding
//! dimension (number of minimal generators) of the generated semigroup.
//! Three routes are provided and cross-validated:
//!
//! * a seeded Monte Carlo estimator,
//! * the analytic series `Σ_n p (1-p)^⌊n/2⌋ (h_{n,0} + h_{n,1} p + ...)`
//!   driven by computed rows,
//! * an exhaustive exact oracle that enumerates all `2^M` subsets
//!   (feasible for `M ≤ 22`).
//!
//! Randomness contract: trial `t` draws from a counter-based ChaCha stream
//! selected by `(seed, t)`, so draw `i` of trial `t` is a pure function of
//! `(seed, t, i)` and parallel runs are reproducible for any scheduling.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::oracle::HRow;
use crate::semigroup::{GenSet, MembershipTable};

/// Largest universe the exhaustive oracle will enumerate.
pub const EXACT_ORACLE_MAX: u32 = 22;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RandomModelError {
    #[error("row for n = {n} is required but was not supplied")]
    MissingRow { n: u32 },
    #[error("exact expectation needs M <= {max}, got {m}", max = EXACT_ORACLE_MAX)]
    UniverseTooLarge { m: u32 },
}

/// Model parameters: universe bound `M`, inclusion probability, trial
/// count, and the stream seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelConfig {
    pub max_value: u32,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
}

/// Draws trial `trial` of the model: each of `1..=M` kept with
/// probability `p`, from the stream keyed by `(seed, trial)`.
pub fn sample(cfg: &ModelConfig, trial: u64) -> GenSet {
    debug_assert!((0.0..=1.0).contains(&cfg.p));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(trial);
    let elements = (1..=cfg.max_value).filter(|_| rng.random_bool(cfg.p));
    GenSet::from_elements(elements).expect("model elements are positive")
}

/// Monte Carlo mean and standard error of the embedding dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
}

/// Estimates the expected embedding dimension over `cfg.trials` draws.
/// Per-trial results are integers and are reduced by exact integer sums,
/// so the estimate is identical for any worker count.
pub fn mc_embedding_dim(cfg: &ModelConfig) -> McEstimate {
    assert!(cfg.trials >= 1);
    let (sum, sum_sq) = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let e = crate::semigroup::embedding_dimension(&sample(cfg, t)) as u128;
            (e, e * e)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let trials = cfg.trials as f64;
    let mean = sum as f64 / trials;
    let stderr = if cfg.trials < 2 {
        0.0
    } else {
        let var = (sum_sq as f64 - trials * mean * mean) / (trials - 1.0);
        (var.max(0.0) / trials).sqrt()
    };
    McEstimate { mean, stderr }
}

/// The analytic series for the expected embedding dimension, evaluated in
/// double precision. `rows[i]` must be the row for `n = i + 1`; rows for
/// all `n ≤ M` are required.
pub fn expectation_series(m: u32, p: f64, rows: &[HRow]) -> Result<f64, RandomModelError> {
    let mut total = 0.0;
    for n in 1..=m {
        let row = rows
            .get(n as usize - 1)
            .filter(|r| r.n == n)
            .ok_or(RandomModelError::MissingRow { n })?;
        // inner polynomial h_{n,0} + h_{n,1} p + ... by Horner
        let mut inner = 0.0;
        for v in row.values.iter().rev() {
            inner = inner * p + v.to_f64().expect("row values fit f64");
        }
        total += p * (1.0 - p).powi((n / 2) as i32) * inner;
    }
    Ok(total)
}

/// The same series over exact rationals.
pub fn expectation_series_exact(
    m: u32,
    p: &BigRational,
    rows: &[HRow],
) -> Result<BigRational, RandomModelError> {
    let one_minus = BigRational::from_integer(1.into()) - p;
    let mut total = BigRational::zero();
    for n in 1..=m {
        let row = rows
            .get(n as usize - 1)
            .filter(|r| r.n == n)
            .ok_or(RandomModelError::MissingRow { n })?;
        let mut inner = BigRational::zero();
        for v in row.values.iter().rev() {
            inner = inner * p + BigRational::from_integer(v.clone().into());
        }
        total += p * one_minus.pow((n / 2) as i32) * inner;
    }
    Ok(total)
}

/// Sum of embedding dimensions over all subsets of `{1..m}` of each size.
/// Every subset is visited once in increasing-element order; an element
/// already generated by its predecessors leaves the dimension unchanged.
fn embedding_dim_totals(m: u32) -> Vec<u64> {
    fn descend(
        m: u32,
        next: u32,
        table: &MembershipTable,
        size: usize,
        dim: u64,
        totals: &mut [u64],
    ) {
        totals[size] += dim;
        for x in next..=m {
            if table.contains(x) {
                descend(m, x + 1, table, size + 1, dim, totals);
            } else {
                let extended = table.with_element(x);
                descend(m, x + 1, &extended, size + 1, dim + 1, totals);
            }
        }
    }
    let mut totals = vec![0u64; m as usize + 1];
    descend(m, 1, &MembershipTable::new(m), 0, 0, &mut totals);
    totals
}

/// Exact expectation by exhaustive enumeration:
/// `Σ_A p^|A| (1-p)^{M-|A|} e(A)` over all `A ⊆ {1..M}`. Independent of the
/// series route; restricted to `M ≤ 22`.
pub fn expectation_exact(m: u32, p: f64) -> Result<f64, RandomModelError> {
    if m > EXACT_ORACLE_MAX {
        return Err(RandomModelError::UniverseTooLarge { m });
    }
    let totals = embedding_dim_totals(m);
    let mut total = 0.0;
    for (size, t) in totals.iter().enumerate() {
        total += *t as f64 * p.powi(size as i32) * (1.0 - p).powi((m as usize - size) as i32);
    }
    Ok(total)
}

/// Exact-rational version of [`expectation_exact`].
pub fn expectation_exact_rational(
    m: u32,
    p: &BigRational,
) -> Result<BigRational, RandomModelError> {
    if m > EXACT_ORACLE_MAX {
        return Err(RandomModelError::UniverseTooLarge { m });
    }
    let totals = embedding_dim_totals(m);
    let one_minus = BigRational::from_integer(1.into()) - p;
    let mut total = BigRational::zero();
    for (size, t) in totals.iter().enumerate() {
        total += BigRational::from_integer((*t).into())
            * p.pow(size as i32)
            * one_minus.pow((m - size as u32) as i32);
    }
    Ok(total)
}
