//! Removal/insertion coordinates for sets counted by the `h` rows.
//!
//! For fixed `n`, every element of `X_n = (n/3, n/2) ∩ Z` can stay or be
//! removed, and elements at or below `⌊n/3⌋` can be inserted. Working with
//! offsets from `⌊n/3⌋` makes the bookkeeping independent of `n`: the
//! offsets of `X_n` are exactly `{1, ..., d_n}`, removal offsets live in
//! that range, and insertion offsets are nonpositive.
//!
//! A set `A ⊂ (n/4, n/2)` (strongly bounded) works for `n` exactly when
//! `b_n ∉ 3A_offsets`, where `b_n = n mod 3` and `3S` is the 3-fold sumset
//! with repetition. Spelling out the ways three offsets can sum to
//! `b_n ∈ {0, 1, 2}` turns that test into a [`ConstraintSystem`]: offsets
//! that must be removed, plus two-element clauses of which at least one
//! must be removed. The constraint system depends only on the insertion
//! offsets and `b_n`, never on the size of `n` — that independence is what
//! the fast counting and quasipolynomial layers exploit.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::semigroup::GenSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RiError {
    #[error("element {element} is not below {n}/2")]
    ElementTooLarge { element: u32, n: u32 },
    #[error("removal offset {offset} outside 1..={d}")]
    RemovalOutOfRange { offset: u32, d: u32 },
    #[error("insertion offset {offset} would name a nonpositive element for n = {n}")]
    InsertionOutOfRange { offset: i64, n: u32 },
}

/// Derived quantities of a fixed `n`: its residue `b` mod 3, `⌊n/3⌋`, and
/// `d = |X_n|` where `X_n = (n/3, n/2) ∩ Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NFrame {
    pub n: u32,
    pub b: u8,
    pub floor_n3: u32,
    pub d: u32,
}

impl NFrame {
    /// The interval `X_n` as a set: `{⌊n/3⌋ + 1, ..., ⌊n/3⌋ + d}`.
    pub fn x_set(&self) -> GenSet {
        GenSet::from_elements(self.floor_n3 + 1..=self.floor_n3 + self.d)
            .expect("X_n elements are positive")
    }
}

pub fn frame(n: u32) -> NFrame {
    assert!(n >= 1);
    let floor_n3 = n / 3;
    let d = (n - 1) / 2 - floor_n3;
    NFrame { n, b: (n % 3) as u8, floor_n3, d }
}

/// `A - ⌊n/3⌋`, ascending.
pub fn offset_form(set: &GenSet, n: u32) -> Vec<i64> {
    let shift = (n / 3) as i64;
    set.elements().iter().map(|&x| x as i64 - shift).collect()
}

/// A removal/insertion pair in offset form. `removing ⊆ {1, ..., d}` names
/// elements of `X_n` that are dropped; `inserting` holds nonpositive
/// offsets of adjoined elements (at least `1 - ⌊n/3⌋`, so that the named
/// element is positive). The encoded set is `(X_n ∖ R) ∪ I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RIPair {
    pub removing: Vec<u32>,
    pub inserting: Vec<i64>,
}

impl RIPair {
    pub fn new(
        mut removing: Vec<u32>,
        mut inserting: Vec<i64>,
        frame: &NFrame,
    ) -> Result<Self, RiError> {
        removing.sort_unstable();
        removing.dedup();
        inserting.sort_unstable();
        inserting.dedup();
        for &r in &removing {
            if r < 1 || r > frame.d {
                return Err(RiError::RemovalOutOfRange { offset: r, d: frame.d });
            }
        }
        for &i in &inserting {
            if i > 0 || i + (frame.floor_n3 as i64) < 1 {
                return Err(RiError::InsertionOutOfRange { offset: i, n: frame.n });
            }
        }
        Ok(RIPair { removing, inserting })
    }
}

/// Encodes `A` as its removal/insertion pair. Requires every element below
/// `n/2`; elements of `X_n` map to kept offsets, smaller elements to
/// insertions.
pub fn to_ri_pair(set: &GenSet, n: u32) -> Result<RIPair, RiError> {
    let fr = frame(n);
    let mut in_x = vec![false; fr.d as usize + 1];
    let mut inserting = Vec::new();
    for &x in set.elements() {
        if 2 * x as u64 >= n as u64 {
            return Err(RiError::ElementTooLarge { element: x, n });
        }
        let off = x as i64 - fr.floor_n3 as i64;
        if off >= 1 {
            in_x[off as usize] = true;
        } else {
            inserting.push(off);
        }
    }
    let removing = (1..=fr.d).filter(|&o| !in_x[o as usize]).collect();
    Ok(RIPair { removing, inserting })
}

/// Decodes a pair back to the set `(X_n ∖ R) ∪ I`. The pair must be valid
/// for `frame(n)`.
pub fn from_ri_pair(pair: &RIPair, n: u32) -> GenSet {
    let fr = frame(n);
    let base = fr.floor_n3 as i64;
    let mut elements: Vec<u32> = Vec::new();
    let mut removed = vec![false; fr.d as usize + 1];
    for &r in &pair.removing {
        assert!(r >= 1 && r <= fr.d, "removal offset {r} outside 1..={}", fr.d);
        removed[r as usize] = true;
    }
    for o in 1..=fr.d {
        if !removed[o as usize] {
            elements.push(fr.floor_n3 + o);
        }
    }
    for &i in &pair.inserting {
        assert!(i <= 0 && base + i >= 1, "insertion offset {i} invalid for n = {n}");
        elements.push((base + i) as u32);
    }
    GenSet::from_elements(elements).expect("decoded elements are positive")
}

/// Whether `A ⊂ (n/4, n/2)` strictly. The empty set qualifies.
pub fn is_strongly_bounded(set: &GenSet, n: u32) -> bool {
    set.elements()
        .iter()
        .all(|&x| 4 * x as u64 > n as u64 && 2 * (x as u64) < n as u64)
}

/// Whether `target = x + y + z` for some `x, y, z` in `offsets`, repetition
/// allowed. `offsets` must be sorted ascending.
pub fn in_3sumset(target: i64, offsets: &[i64]) -> bool {
    debug_assert!(offsets.windows(2).all(|w| w[0] < w[1]));
    for (i, &x) in offsets.iter().enumerate() {
        if 3 * x > target {
            break;
        }
        for (j, &y) in offsets[i..].iter().enumerate() {
            let z = target - x - y;
            if z < y {
                break;
            }
            if offsets[i + j..].binary_search(&z).is_ok() {
                return true;
            }
        }
    }
    false
}

/// Forced removals plus disjunctive clauses equivalent to
/// `b ∉ 3(((1..=d) ∖ R) ∪ I)` for every unbounded universe `d` large enough
/// to contain all constrained offsets. Clauses touching a forced offset are
/// dropped; clause pairs are deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    /// Offsets that must be removed, ascending.
    pub forced: Vec<u32>,
    /// Unordered pairs `(y, z)`, `y < z`; at least one of each must be removed.
    pub clauses: Vec<(u32, u32)>,
}

impl ConstraintSystem {
    /// All constrained offsets, ascending.
    pub fn universe(&self) -> Vec<u32> {
        let mut u: BTreeSet<u32> = self.forced.iter().copied().collect();
        for &(y, z) in &self.clauses {
            u.insert(y);
            u.insert(z);
        }
        u.into_iter().collect()
    }

    /// Whether a removal set (sorted ascending) contains every forced offset
    /// and hits every clause.
    pub fn admits(&self, removing: &[u32]) -> bool {
        debug_assert!(removing.windows(2).all(|w| w[0] < w[1]));
        self.forced.iter().all(|f| removing.binary_search(f).is_ok())
            && self
                .clauses
                .iter()
                .all(|&(y, z)| {
                    removing.binary_search(&y).is_ok() || removing.binary_search(&z).is_ok()
                })
    }
}

/// Derives the constraint system for a set of insertion offsets and residue
/// `b`. Returns `None` when the conditions force a nonpositive offset into
/// the removal set, which no removal set can satisfy (for example inserting
/// offset 0 when `b = 0`: three copies of 0 already sum to `b`).
///
/// The conditions, for each insertion offset `α ≤ 0`:
/// * `b - 2α` must be removed (kills the triple `α + α + (b - 2α)`);
/// * `(b - α)/2` must be removed when `α ≡ b (mod 2)` (kills `α + y + y`);
/// * `b - α - β` must be removed for every other insertion `β` (kills
///   `α + β + z`);
/// * for every split `b - α = y + z` with `1 ≤ y < z`, at least one of
///   `y, z` must be removed.
pub fn constraint_system(inserting: &[i64], b: u8) -> Option<ConstraintSystem> {
    debug_assert!(inserting.windows(2).all(|w| w[0] < w[1]));
    debug_assert!(inserting.iter().all(|&a| a <= 0));
    let b = b as i64;
    let mut forced: BTreeSet<i64> = BTreeSet::new();
    for (idx, &alpha) in inserting.iter().enumerate() {
        let double = b - 2 * alpha;
        if double <= 0 {
            return None;
        }
        forced.insert(double);
        if (b - alpha) % 2 == 0 {
            let half = (b - alpha) / 2;
            if half <= 0 {
                return None;
            }
            forced.insert(half);
        }
        for &beta in &inserting[idx + 1..] {
            let cross = b - alpha - beta;
            debug_assert!(cross >= 1);
            forced.insert(cross);
        }
    }
    let mut clauses: BTreeSet<(u32, u32)> = BTreeSet::new();
    for &alpha in inserting {
        let mut y = 1;
        while y < b - alpha - y {
            let z = b - alpha - y;
            if !forced.contains(&y) && !forced.contains(&z) {
                clauses.insert((y as u32, z as u32));
            }
            y += 1;
        }
    }
    Some(ConstraintSystem {
        forced: forced.into_iter().map(|v| v as u32).collect(),
        clauses: clauses.into_iter().collect(),
    })
}

/// Whether the set encoded by `pair` satisfies `b_n ∉ 3A_offsets`, checked
/// directly on the 3-fold sumset. [`ConstraintSystem::admits`] is the
/// second, independent route to the same predicate; the two must agree
/// whenever every constrained offset fits inside `{1, ..., d_n}`.
pub fn compatible(pair: &RIPair, n: u32) -> bool {
    let fr = frame(n);
    let mut offsets: Vec<i64> = pair.inserting.clone();
    let removed: BTreeSet<u32> = pair.removing.iter().copied().collect();
    for o in 1..=fr.d {
        if !removed.contains(&o) {
            offsets.push(o as i64);
        }
    }
    offsets.sort_unstable();
    !in_3sumset(fr.b as i64, &offsets)
}

/// Minimum size of a removal set compatible with inserting the single
/// offset `alpha`: `1 + ⌈(b - α - 1)/2⌉`. The lone exception is
/// `α = 0, b = 0`, where no removal set is compatible at all (the formula
/// still yields its formal value 1).
pub fn removal_degree(alpha: i64, b: u8) -> u32 {
    assert!(alpha <= 0);
    (1 + (b as i64 - alpha) / 2) as u32
}

/// Smallest insertion offset that can appear in a compatible pair whose set
/// has size at least `d_n - k`: `b - 2k - 1`.
pub fn min_insertion_offset(k: u32, b: u8) -> i64 {
    b as i64 - 2 * k as i64 - 1
}

/// Every working set for `n` of size `d_n - k` is strongly bounded once
/// `n` exceeds `24k + 12 - 8b`; the fast counting route is valid strictly
/// above this bound.
pub fn strong_bound_threshold(k: u32, b: u8) -> i64 {
    24 * k as i64 + 12 - 8 * b as i64
}
