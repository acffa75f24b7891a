//! Four-way split of a family by (cardinality parity, trace parity against `T`).

use std::fmt;
use std::ops::BitXor;

use serde::Serialize;

use crate::construction::Generator;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::set::{GroundSize, Parity, SetWord};

/// The class `A_{card,trace}` a set falls into relative to a reference set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ParityPair {
    pub card: Parity,
    pub trace: Parity,
}

impl ParityPair {
    /// The four classes in display order `oo, oe, eo, ee`.
    pub const ALL: [ParityPair; 4] = [
        ParityPair { card: Parity::Odd, trace: Parity::Odd },
        ParityPair { card: Parity::Odd, trace: Parity::Even },
        ParityPair { card: Parity::Even, trace: Parity::Odd },
        ParityPair { card: Parity::Even, trace: Parity::Even },
    ];

    pub const IDENTITY: ParityPair = ParityPair { card: Parity::Even, trace: Parity::Even };

    pub fn of(a: SetWord, t: SetWord) -> ParityPair {
        ParityPair { card: a.card_parity(), trace: a.trace_parity(t) }
    }

    fn index(self) -> usize {
        // Position in ALL.
        3 - (self.card.bit() as usize * 2 + self.trace.bit() as usize)
    }
}

impl BitXor for ParityPair {
    type Output = ParityPair;

    fn bitxor(self, rhs: ParityPair) -> ParityPair {
        delta_class(self, rhs)
    }
}

impl fmt::Display for ParityPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.card.letter(), self.trace.letter())
    }
}

/// Class of `A Δ B` given the classes of `A` and `B`.
pub fn delta_class(p: ParityPair, q: ParityPair) -> ParityPair {
    ParityPair { card: p.card ^ q.card, trace: p.trace ^ q.trace }
}

/// A family split into its four parity classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionCounts {
    pub reference: SetWord,
    subfamilies: [Family; 4],
}

impl PartitionCounts {
    pub fn subfamily(&self, class: ParityPair) -> &Family {
        &self.subfamilies[class.index()]
    }

    pub fn count(&self, class: ParityPair) -> usize {
        self.subfamily(class).len()
    }

    /// `(class, subfamily)` in the order of [`ParityPair::ALL`].
    pub fn classes(&self) -> impl Iterator<Item = (ParityPair, &Family)> {
        ParityPair::ALL.into_iter().map(move |c| (c, self.subfamily(c)))
    }

    pub fn total(&self) -> usize {
        self.subfamilies.iter().map(Family::len).sum()
    }

    /// All four classes have exactly `size` members.
    pub fn is_uniform(&self, size: usize) -> bool {
        self.subfamilies.iter().all(|f| f.len() == size)
    }
}

pub fn partition_family(f: &Family, t: SetWord) -> Result<PartitionCounts> {
    let ground = f.ground();
    ground.check(t)?;
    let mut buckets: [Vec<SetWord>; 4] = Default::default();
    for a in f.iter() {
        buckets[ParityPair::of(a, t).index()].push(a);
    }
    let subfamilies = buckets.map(|words| {
        Family::new(ground, words).expect("members already lie in the ground set")
    });
    Ok(PartitionCounts { reference: t, subfamilies })
}

/// Whether `A(S^C)` splits into four classes of `2^(n-3)` against `t`.
///
/// Holds exactly when `S^C ≠ ∅` and `t ∉ {∅, S, S^C, [n]}`: the family is the
/// coset `|A ∩ S| = 1` of a hyperplane, and the two parity functionals are
/// equidistributed on it unless `[n]`, `t` or `[n] Δ t` coincides with `∅` or `S`.
pub fn equal_split_predicate(g: &Generator, t: SetWord) -> Result<bool> {
    let ground: GroundSize = g.ground();
    if ground.get() < 3 {
        return Err(Error::GroundSizeOutOfRange { n: ground.get(), min: 3, max: crate::set::MAX_GROUND });
    }
    ground.check(t)?;
    let degenerate = [SetWord::EMPTY, g.s(), g.sc(), ground.full()];
    Ok(!g.sc().is_empty() && !degenerate.contains(&t))
}
