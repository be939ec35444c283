//! Numerical semigroup primitives.
//!
//! A numerical semigroup is a subset of the nonnegative integers that
//! contains 0 and is closed under addition. `⟨A⟩` denotes the smallest
//! such set containing `A`, i.e. all nonnegative integer combinations of
//! the elements of `A`. The empty set generates `{0}`.
//!
//! Everything here is exact and bounded: membership is decided by the
//! standard coin-problem dynamic program up to an explicit bound, stored
//! packed one bit per value.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("generating-set elements must be positive")]
    ZeroElement,
}

/// A finite candidate generating set: positive integers, strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenSet {
    elements: Vec<u32>,
}

impl GenSet {
    /// The empty set, generating `{0}`.
    pub fn empty() -> Self {
        GenSet { elements: Vec::new() }
    }

    /// Builds a set from arbitrary positive integers; input is sorted and
    /// deduplicated. Zero is rejected.
    pub fn from_elements<I: IntoIterator<Item = u32>>(iter: I) -> Result<Self, SemigroupError> {
        let mut elements: Vec<u32> = iter.into_iter().collect();
        if elements.contains(&0) {
            return Err(SemigroupError::ZeroElement);
        }
        elements.sort_unstable();
        elements.dedup();
        Ok(GenSet { elements })
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn min(&self) -> Option<u32> {
        self.elements.first().copied()
    }

    pub fn max(&self) -> Option<u32> {
        self.elements.last().copied()
    }
}

/// Membership indicator for `⟨A⟩` restricted to `[0, bound]`, one bit per
/// value. `table[0]` is always set. Extending `A` never clears a bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipTable {
    bound: u32,
    words: Vec<u64>,
}

impl MembershipTable {
    /// Table of `⟨∅⟩ = {0}` up to `bound`.
    pub fn new(bound: u32) -> Self {
        let words = vec![0u64; bound as usize / 64 + 1];
        let mut t = MembershipTable { bound, words };
        t.set(0);
        t
    }

    /// Table of `⟨A⟩` up to `bound`.
    pub fn for_set(set: &GenSet, bound: u32) -> Self {
        let mut t = MembershipTable::new(bound);
        for &x in set.elements() {
            t.absorb(x);
        }
        t
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn contains(&self, t: u32) -> bool {
        debug_assert!(t <= self.bound);
        self.words[t as usize / 64] >> (t % 64) & 1 == 1
    }

    fn set(&mut self, t: u32) {
        self.words[t as usize / 64] |= 1 << (t % 64);
    }

    /// Adds one generator in place. The ascending pass accumulates all
    /// multiples of `x`, so the result is the closure under the enlarged set.
    pub fn absorb(&mut self, x: u32) {
        if x == 0 || x > self.bound {
            return;
        }
        for t in x..=self.bound {
            if self.contains(t - x) {
                self.set(t);
            }
        }
    }

    /// A copy of this table with one more generator absorbed. The receiver
    /// is untouched, so siblings in a search tree can share it.
    pub fn with_element(&self, x: u32) -> Self {
        let mut next = self.clone();
        next.absorb(x);
        next
    }
}

/// Whether `t ∈ ⟨A⟩`, by dynamic programming up to `t`.
pub fn contains(set: &GenSet, t: u32) -> bool {
    MembershipTable::for_set(set, t).contains(t)
}

/// The unique minimal generating set of `⟨A⟩`: elements of `A` not generated
/// by the others. Only smaller elements can take part in a representation,
/// so a single ascending sweep with an incremental table decides it.
pub fn minimal_generators(set: &GenSet) -> GenSet {
    let bound = match set.max() {
        Some(m) => m,
        None => return GenSet::empty(),
    };
    let mut table = MembershipTable::new(bound);
    let mut kept = Vec::new();
    for &x in set.elements() {
        if !table.contains(x) {
            kept.push(x);
            table.absorb(x);
        }
    }
    GenSet { elements: kept }
}

/// Size of the minimal generating set of `⟨A⟩`.
pub fn embedding_dimension(set: &GenSet) -> usize {
    minimal_generators(set).len()
}

/// Whether `A` works for `n`: `n ∉ ⟨A⟩`, every element is below `n/2`, and
/// `A` minimally generates its semigroup.
pub fn works_for(set: &GenSet, n: u32) -> bool {
    debug_assert!(n >= 1);
    if set.elements().iter().any(|&x| 2 * x as u64 >= n as u64) {
        return false;
    }
    let mut table = MembershipTable::new(n);
    for &x in set.elements() {
        if table.contains(x) {
            return false; // x generated by smaller elements: not minimal
        }
        table.absorb(x);
    }
    !table.contains(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gs(v: &[u32]) -> GenSet {
        GenSet::from_elements(v.iter().copied()).unwrap()
    }

    /// Independent membership oracle: exhaustive search over coefficient
    /// vectors whose weighted sum stays within `t`.
    fn slow_contains(elements: &[u32], t: u32) -> bool {
        fn rec(elements: &[u32], remaining: u32) -> bool {
            if remaining == 0 {
                return true;
            }
            match elements.split_first() {
                None => false,
                Some((&a, rest)) => {
                    let mut used = 0u32;
                    loop {
                        if rec(rest, remaining - used) {
                            return true;
                        }
                        used += a;
                        if used > remaining {
                            return false;
                        }
                    }
                }
            }
        }
        rec(elements, t)
    }

    #[test]
    fn contains_examples() {
        let a = gs(&[6, 9, 20]);
        assert!(contains(&a, 18)); // 9 + 9
        assert!(contains(&a, 32)); // 20 + 6 + 6
        assert!(!contains(&a, 11));
        assert!(contains(&GenSet::empty(), 0));
        assert!(!contains(&GenSet::empty(), 5));
    }

    #[test]
    fn contains_agrees_with_exhaustive_enumeration() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5e111);
        for _ in 0..200 {
            let size = rng.random_range(0..5usize);
            let set = GenSet::from_elements((0..size).map(|_| rng.random_range(1..=60u32)))
                .unwrap();
            let table = MembershipTable::for_set(&set, 120);
            for _ in 0..40 {
                let t = rng.random_range(0..=120u32);
                assert_eq!(
                    table.contains(t),
                    slow_contains(set.elements(), t),
                    "set {:?}, t {}",
                    set,
                    t
                );
            }
        }
    }

    #[test]
    fn minimal_generators_examples() {
        assert_eq!(minimal_generators(&gs(&[6, 9, 18, 20, 32])), gs(&[6, 9, 20]));
        assert_eq!(minimal_generators(&gs(&[1, 2])), gs(&[1]));
        assert_eq!(minimal_generators(&GenSet::empty()), GenSet::empty());
    }

    #[test]
    fn embedding_dimension_examples() {
        assert_eq!(embedding_dimension(&gs(&[6, 9, 18, 20, 32])), 3);
        assert_eq!(embedding_dimension(&GenSet::empty()), 0);
        assert_eq!(embedding_dimension(&gs(&[2, 3])), 2);
    }

    #[test]
    fn works_for_examples() {
        assert!(works_for(&gs(&[2]), 11));
        assert!(works_for(&gs(&[4, 5]), 11));
        for n in 1..=20 {
            assert!(!works_for(&gs(&[1]), n));
        }
        assert!(!works_for(&gs(&[4, 6]), 11)); // 6 is not below 11/2
        assert!(works_for(&GenSet::empty(), 1));
    }

    #[test]
    fn zero_element_rejected() {
        assert_eq!(
            GenSet::from_elements([0, 3]).unwrap_err(),
            SemigroupError::ZeroElement
        );
    }

    proptest! {
        #[test]
        fn minimal_generators_is_idempotent(v in proptest::collection::vec(1..80u32, 0..8)) {
            let set = GenSet::from_elements(v).unwrap();
            let once = minimal_generators(&set);
            prop_assert_eq!(minimal_generators(&once), once.clone());
        }

        #[test]
        fn minimal_generators_preserve_semigroup(v in proptest::collection::vec(1..60u32, 0..8)) {
            let set = GenSet::from_elements(v).unwrap();
            let min = minimal_generators(&set);
            let bound = set.max().map_or(0, |m| 2 * m);
            prop_assert_eq!(
                MembershipTable::for_set(&set, bound),
                MembershipTable::for_set(&min, bound)
            );
        }

        #[test]
        fn one_in_set_never_works(v in proptest::collection::vec(1..40u32, 0..6), n in 1..80u32) {
            let mut v = v;
            v.push(1);
            let set = GenSet::from_elements(v).unwrap();
            prop_assert!(!works_for(&set, n));
        }
    }
}
