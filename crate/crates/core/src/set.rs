//! Bitmask subsets of `[n]` and their parity arithmetic.
//!
//! Element `i` of the ground set (1-based, as written by humans) lives at bit
//! `i - 1`. Conversion between the two conventions happens only in [`crate::io`].

use std::fmt;
use std::ops::BitXor;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported ground size. Keeps the dense membership table at 2 MiB.
pub const MAX_GROUND: u32 = 24;

/// Number of elements `n` in the ground set `[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct GroundSize(u32);

impl GroundSize {
    pub fn new(n: u32) -> Result<Self> {
        if (1..=MAX_GROUND).contains(&n) {
            Ok(GroundSize(n))
        } else {
            Err(Error::GroundSizeOutOfRange { n, min: 1, max: MAX_GROUND })
        }
    }

    /// Like [`GroundSize::new`] but with a tighter upper bound, for operations
    /// whose cost explodes with `n`.
    pub fn bounded(n: u32, min: u32, max: u32) -> Result<Self> {
        if (min..=max).contains(&n) {
            Self::new(n)
        } else {
            Err(Error::GroundSizeOutOfRange { n, min, max })
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// `2^n`, the number of subsets of `[n]`.
    #[inline]
    pub fn word_count(self) -> usize {
        1usize << self.0
    }

    /// `2^(n-1)`, the size of a maximum Δ-free family.
    #[inline]
    pub fn half(self) -> usize {
        1usize << (self.0 - 1)
    }

    /// The full ground set `[n]`.
    #[inline]
    pub fn full(self) -> SetWord {
        SetWord(((1u64 << self.0) - 1) as u32)
    }

    #[inline]
    pub fn contains(self, w: SetWord) -> bool {
        w.0 & !self.full().0 == 0
    }

    /// Error unless `w` has no bits at positions `>= n`.
    pub fn check(self, w: SetWord) -> Result<SetWord> {
        if self.contains(w) {
            Ok(w)
        } else {
            Err(Error::WordOutOfRange { word: w.0, n: self.0 })
        }
    }

    /// Every subset of `[n]` in ascending bitmask order.
    pub fn words(self) -> impl DoubleEndedIterator<Item = SetWord> + ExactSizeIterator {
        (0..self.word_count() as u32).map(SetWord)
    }

    /// Complement of `w` within `[n]`.
    #[inline]
    pub fn complement(self, w: SetWord) -> SetWord {
        SetWord(!w.0 & self.full().0)
    }
}

impl TryFrom<u32> for GroundSize {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        GroundSize::new(n)
    }
}

impl From<GroundSize> for u32 {
    fn from(g: GroundSize) -> u32 {
        g.0
    }
}

impl fmt::Display for GroundSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A subset of `[n]` stored as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetWord(pub u32);

impl SetWord {
    pub const EMPTY: SetWord = SetWord(0);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// The singleton holding bit `pos` (0-based).
    #[inline]
    pub fn singleton(pos: u32) -> SetWord {
        SetWord(1 << pos)
    }

    #[inline]
    pub fn is_singleton(self) -> bool {
        self.0.is_power_of_two()
    }

    #[inline]
    pub fn sym_diff(self, other: SetWord) -> SetWord {
        SetWord(self.0 ^ other.0)
    }

    #[inline]
    pub fn union(self, other: SetWord) -> SetWord {
        SetWord(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: SetWord) -> SetWord {
        SetWord(self.0 & other.0)
    }

    #[inline]
    pub fn card_parity(self) -> Parity {
        Parity::of(self.0.count_ones())
    }

    /// Parity of `|self ∩ t|`.
    #[inline]
    pub fn trace_parity(self, t: SetWord) -> Parity {
        Parity::of((self.0 & t.0).count_ones())
    }

    /// 0-based positions of the set bits, ascending.
    pub fn positions(self) -> impl Iterator<Item = u32> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let pos = rest.trailing_zeros();
                rest &= rest - 1;
                Some(pos)
            }
        })
    }
}

impl BitXor for SetWord {
    type Output = SetWord;

    #[inline]
    fn bitxor(self, rhs: SetWord) -> SetWord {
        self.sym_diff(rhs)
    }
}

/// Symmetric difference of two subsets of the same ground set.
///
/// Fails if either word has bits outside `[n]`.
pub fn sym_diff(ground: GroundSize, a: SetWord, b: SetWord) -> Result<SetWord> {
    Ok(ground.check(a)?.sym_diff(ground.check(b)?))
}

/// Parity of a cardinality. `Even` is the identity for `^`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    #[inline]
    pub fn of(count: u32) -> Parity {
        if count & 1 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    #[inline]
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    #[inline]
    pub fn bit(self) -> u8 {
        self as u8
    }

    /// Single-letter tag, `e` or `o`.
    pub fn letter(self) -> char {
        match self {
            Parity::Even => 'e',
            Parity::Odd => 'o',
        }
    }
}

impl BitXor for Parity {
    type Output = Parity;

    #[inline]
    fn bitxor(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(elems: &[u32]) -> SetWord {
        SetWord(elems.iter().map(|e| 1u32 << (e - 1)).sum())
    }

    #[test]
    fn ground_size_bounds() {
        assert!(GroundSize::new(0).is_err());
        assert!(GroundSize::new(25).is_err());
        let g = GroundSize::new(24).unwrap();
        assert_eq!(g.full().len(), 24);
        assert_eq!(GroundSize::new(3).unwrap().full(), w(&[1, 2, 3]));
        assert!(GroundSize::bounded(6, 2, 5).is_err());
    }

    #[test]
    fn sym_diff_examples() {
        let g = GroundSize::new(3).unwrap();
        assert_eq!(sym_diff(g, w(&[1, 2]), w(&[2, 3])).unwrap(), w(&[1, 3]));
        for a in g.words() {
            assert_eq!(a ^ a, SetWord::EMPTY);
            assert_eq!(a ^ SetWord::EMPTY, a);
        }
        assert!(matches!(
            sym_diff(g, w(&[4]), w(&[1])),
            Err(Error::WordOutOfRange { .. })
        ));
    }

    #[test]
    fn parity_examples() {
        assert_eq!(w(&[1, 2, 3]).card_parity(), Parity::Odd);
        assert_eq!(SetWord::EMPTY.card_parity(), Parity::Even);
        assert_eq!(w(&[1, 3, 4]).trace_parity(w(&[3, 4])), Parity::Even);
        assert_eq!(w(&[1, 3, 4]).trace_parity(SetWord::EMPTY), Parity::Even);
        assert_eq!(Parity::Odd ^ Parity::Odd, Parity::Even);
        assert_eq!(Parity::Odd ^ Parity::Even, Parity::Odd);
    }

    #[test]
    fn sym_diff_group_laws_exhaustive() {
        let g = GroundSize::new(6).unwrap();
        for a in g.words() {
            for b in g.words() {
                assert_eq!(a ^ b, b ^ a);
                assert_eq!((a ^ b).len(), a.len() + b.len() - 2 * a.intersection(b).len());
                assert_eq!((a ^ b).card_parity(), a.card_parity() ^ b.card_parity());
                for c in [SetWord(0b101), SetWord(0b110011), b] {
                    assert_eq!((a ^ b) ^ c, a ^ (b ^ c));
                    assert_eq!((a ^ b).trace_parity(c), a.trace_parity(c) ^ b.trace_parity(c));
                }
            }
        }
    }

    #[test]
    fn positions_ascending() {
        assert_eq!(w(&[2, 5, 7]).positions().collect::<Vec<_>>(), vec![1, 4, 6]);
        assert_eq!(SetWord::EMPTY.positions().count(), 0);
    }
}
