//! Exact combinatorics of minimal generating sets of numerical semigroups.
//!
//! For `n >= 1` and `i >= 0`, let `h(n, i)` be the number of sets
//! `A ⊆ [1, n/2) ∩ Z` with `|A| = i` that minimally generate a numerical
//! semigroup not containing `n`. This crate computes these counts exactly
//! along several independent routes and cross-validates them:
//!
//! * [`oracle`] — pruned depth-first enumeration of full rows
//!   `h(n, 0), ..., h(n, d_n)`, the ground truth for everything else;
//! * [`ri`] — the removal/insertion coordinate system on the interval
//!   `X_n = (n/3, n/2) ∩ Z`, with the classification of compatible pairs
//!   as forced elements plus disjunctive clauses;
//! * [`fastcount`] — counting `h(m, d_m - k)` above the strong-boundedness
//!   threshold by enumerating insertion sets in parallel;
//! * [`quasipoly`] — exact-rational extraction of the eventual degree-`k`,
//!   period-6 quasipolynomial for `n ↦ h(n, d_n - k)`;
//! * [`random`] — the random generating-set model: a seeded sampler, a
//!   Monte Carlo estimator, the analytic series for the expected embedding
//!   dimension, and an exhaustive exact oracle for small universes;
//! * [`cache`] / [`bfile`] — row persistence and OEIS b-file ingestion
//!   (A319608 rows, A158206 row sums) for external cross-checks.
//!
//! All counting is exact: big integers for counts, big rationals for
//! quasipolynomial coefficients. No floating point enters any count.

pub mod bfile;
pub mod cache;
pub mod fastcount;
pub mod oracle;
pub mod quasipoly;
pub mod random;
pub mod ri;
pub mod semigroup;

pub use fastcount::{count_completions, fast_h};
pub use oracle::{h_row, HRow};
pub use quasipoly::{d_closed_form, extract, recurrence_eval, Quasipolynomial};
pub use ri::{frame, ConstraintSystem, NFrame, RIPair};
pub use semigroup::{GenSet, MembershipTable};
