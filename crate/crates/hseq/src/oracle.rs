//! Brute-force row computation by pruned depth-first search.
//!
//! A set `A ⊆ [1, n/2) ∩ Z` built in increasing order is a minimal
//! generating set exactly when each element avoids the semigroup generated
//! by its predecessors, and `n ∉ ⟨A⟩` is monotone under extension. Both
//! facts together make the search tree of working sets self-pruning: every
//! visited node is itself a counted set, and a branch is cut as soon as `n`
//! becomes representable. The forest is split at depth one and the per-root
//! partial rows are summed, so the result does not depend on thread count.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::ri::frame;
use crate::semigroup::MembershipTable;

/// One full row `h(n, 0), ..., h(n, d_n)` of exact counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRow {
    pub n: u32,
    pub values: Vec<BigUint>,
}

impl HRow {
    /// Row sum: the number of irreducible numerical semigroups with
    /// Frobenius number `n` (OEIS A158206).
    pub fn sum(&self) -> BigUint {
        self.values.iter().sum()
    }

    /// Largest set size counted by this row.
    pub fn d(&self) -> u32 {
        (self.values.len() - 1) as u32
    }
}

/// Computes `h(n, i)` for all `i`, in parallel over first elements.
pub fn h_row(n: u32) -> HRow {
    h_row_with_nodes(n).0
}

/// Like [`h_row`], also reporting the number of search-tree nodes visited.
/// Every node is a counted set, so the node count must equal the row sum.
pub fn h_row_with_nodes(n: u32) -> (HRow, u64) {
    assert!(n >= 1, "rows are defined for n >= 1");
    let d = frame(n).d;
    let max_elem = (n - 1) / 2; // elements must satisfy 2x < n

    let partials: Vec<(Vec<u64>, u64)> = (1..=max_elem)
        .into_par_iter()
        .map(|first| {
            let mut tallies = vec![0u64; d as usize + 1];
            let mut nodes = 0u64;
            if !n.is_multiple_of(first) {
                let table = MembershipTable::new(n).with_element(first);
                debug_assert!(!table.contains(n));
                tallies[1] += 1;
                nodes += 1;
                descend(n, max_elem, first, &table, 1, &mut tallies, &mut nodes);
            }
            (tallies, nodes)
        })
        .collect();

    let mut tallies = vec![0u64; d as usize + 1];
    tallies[0] = 1; // the empty set
    let mut nodes = 1u64;
    for (part, part_nodes) in partials {
        for (acc, v) in tallies.iter_mut().zip(part) {
            *acc += v;
        }
        nodes += part_nodes;
    }

    let values = tallies.into_iter().map(BigUint::from).collect();
    (HRow { n, values }, nodes)
}

fn descend(
    n: u32,
    max_elem: u32,
    last: u32,
    table: &MembershipTable,
    depth: usize,
    tallies: &mut [u64],
    nodes: &mut u64,
) {
    for x in last + 1..=max_elem {
        if table.contains(x) {
            continue; // x is redundant: A ∪ {x} would not be minimal
        }
        let extended = table.with_element(x);
        if extended.contains(n) {
            continue; // n became representable: the whole branch is dead
        }
        assert!(depth + 1 < tallies.len(), "set larger than d_n found");
        tallies[depth + 1] += 1;
        *nodes += 1;
        descend(n, max_elem, x, &extended, depth + 1, tallies, nodes);
    }
}
