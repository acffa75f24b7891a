//! Families of subsets of `[n]` and the freeness/closure predicates on them.

use std::cmp::Ordering;
use std::collections::hash_map::{Entry, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::Result;
use crate::set::{GroundSize, SetWord};

/// Dense presence bitmap over all `2^n` words.
#[derive(Clone, Debug)]
struct Membership(Vec<u64>);

impl Membership {
    fn new(ground: GroundSize) -> Self {
        Membership(vec![0; ground.word_count().div_ceil(64)])
    }

    #[inline]
    fn get(&self, w: SetWord) -> bool {
        let i = w.0 as usize;
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    fn set(&mut self, w: SetWord) {
        let i = w.0 as usize;
        self.0[i >> 6] |= 1 << (i & 63);
    }
}

/// A deduplicated set of subsets of `[n]`.
///
/// Members are kept in ascending bitmask order, which is also the order every
/// witness search and serializer walks.
#[derive(Clone)]
pub struct Family {
    ground: GroundSize,
    members: Vec<SetWord>,
    table: Membership,
}

/// Two members whose symmetric difference breaks the checked property.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairWitness {
    pub a: SetWord,
    pub b: SetWord,
    pub result: SetWord,
}

/// Two distinct member pairs that combine to the same set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadWitness {
    pub first: (SetWord, SetWord),
    pub second: (SetWord, SetWord),
    pub result: SetWord,
}

impl Family {
    /// Builds a family from arbitrary words; sorts and drops duplicates.
    pub fn new(ground: GroundSize, words: impl IntoIterator<Item = SetWord>) -> Result<Self> {
        let mut members = words
            .into_iter()
            .map(|w| ground.check(w))
            .collect::<Result<Vec<_>>>()?;
        members.sort_unstable();
        members.dedup();
        Ok(Self::from_sorted(ground, members))
    }

    /// All words of `[n]` satisfying `keep`.
    pub fn from_predicate(ground: GroundSize, mut keep: impl FnMut(SetWord) -> bool) -> Self {
        let members = ground.words().filter(|&w| keep(w)).collect();
        Self::from_sorted(ground, members)
    }

    fn from_sorted(ground: GroundSize, members: Vec<SetWord>) -> Self {
        debug_assert!(members.windows(2).all(|p| p[0] < p[1]));
        let mut table = Membership::new(ground);
        for &w in &members {
            table.set(w);
        }
        Family { ground, members, table }
    }

    pub fn empty(ground: GroundSize) -> Self {
        Self::from_sorted(ground, Vec::new())
    }

    pub fn power_set(ground: GroundSize) -> Self {
        Self::from_predicate(ground, |_| true)
    }

    #[inline]
    pub fn ground(&self) -> GroundSize {
        self.ground
    }

    #[inline]
    pub fn members(&self) -> &[SetWord] {
        &self.members
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = SetWord> + '_ {
        self.members.iter().copied()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Membership test; words outside `[n]` are never members.
    #[inline]
    pub fn contains(&self, w: SetWord) -> bool {
        self.ground.contains(w) && self.table.get(w)
    }

    /// Complement within the power set of `[n]`.
    pub fn complement(&self) -> Family {
        Self::from_predicate(self.ground, |w| !self.table.get(w))
    }

    pub fn singletons(&self) -> impl Iterator<Item = SetWord> + '_ {
        self.iter().filter(|w| w.is_singleton())
    }

    /// First pair `(A, B)` (by member index, `A <= B`) with `A Δ B` in the family.
    pub fn delta_free_witness(&self) -> Option<PairWitness> {
        for (i, &a) in self.members.iter().enumerate() {
            for &b in &self.members[i..] {
                let result = a ^ b;
                if self.table.get(result) {
                    return Some(PairWitness { a, b, result });
                }
            }
        }
        None
    }

    /// No member is the symmetric difference of two (not necessarily
    /// distinct) members. A family holding `∅` always fails via `∅ Δ ∅`.
    pub fn is_delta_free(&self) -> bool {
        self.delta_free_witness().is_none()
    }

    /// First pair `(A, B)` with `A Δ B` missing from the family.
    pub fn delta_closed_witness(&self) -> Option<PairWitness> {
        for (i, &a) in self.members.iter().enumerate() {
            for &b in &self.members[i..] {
                let result = a ^ b;
                if !self.table.get(result) {
                    return Some(PairWitness { a, b, result });
                }
            }
        }
        None
    }

    pub fn is_delta_closed(&self) -> bool {
        self.delta_closed_witness().is_none()
    }

    /// Scans pairs `A < B` in lexicographic order and reports the first pair
    /// whose symmetric difference was already produced by an earlier pair.
    pub fn quadruple_witness(&self) -> Option<QuadWitness> {
        self.first_pair_collision(|a, b| a ^ b)
    }

    /// No two distinct unordered pairs of distinct members share a symmetric
    /// difference.
    pub fn is_quadruple_delta_free(&self) -> bool {
        self.quadruple_witness().is_none()
    }

    /// Same as [`Family::quadruple_witness`] with union in place of `Δ`.
    pub fn union_witness(&self) -> Option<QuadWitness> {
        self.first_pair_collision(|a, b| a.union(b))
    }

    pub fn is_union_free(&self) -> bool {
        self.union_witness().is_none()
    }

    fn first_pair_collision(&self, combine: impl Fn(SetWord, SetWord) -> SetWord) -> Option<QuadWitness> {
        // At most 2^n distinct values exist, so the map stays bounded.
        let mut seen: HashMap<SetWord, (SetWord, SetWord)> = HashMap::new();
        for (i, &a) in self.members.iter().enumerate() {
            for &b in &self.members[i + 1..] {
                let result = combine(a, b);
                match seen.entry(result) {
                    Entry::Occupied(e) => {
                        return Some(QuadWitness { first: *e.get(), second: (a, b), result });
                    }
                    Entry::Vacant(e) => {
                        e.insert((a, b));
                    }
                }
            }
        }
        None
    }
}

/// All `2^(n-1)` odd-cardinality subsets of `[n]`.
pub fn all_odd_family(ground: GroundSize) -> Family {
    Family::from_predicate(ground, |w| w.card_parity().is_odd())
}

/// All even-cardinality subsets of `[n]`, `∅` included.
pub fn all_even_family(ground: GroundSize) -> Family {
    Family::from_predicate(ground, |w| !w.card_parity().is_odd())
}

impl PartialEq for Family {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.members == other.members
    }
}

impl Eq for Family {}

impl Hash for Family {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ground.hash(state);
        self.members.hash(state);
    }
}

impl PartialOrd for Family {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ground size first, then lexicographic on the sorted member list.
impl Ord for Family {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ground
            .cmp(&other.ground)
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family(n={}, {})", self.ground, crate::io::format_family_braces(self))
    }
}
