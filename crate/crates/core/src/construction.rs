//! Maximum Δ-free families generated by a set `S^C`.
//!
//! `A(S^C)` holds the odd sets meeting `S^C` in an even number of points and
//! the even sets meeting it in an odd number. Writing `S = [n] \ S^C`, the
//! same family is `{A : |A ∩ S| odd}`, which [`linear_form_family`] builds
//! directly as an independent route.

use crate::error::{Error, Result};
use crate::family::Family;
use crate::set::{GroundSize, Parity, SetWord};

/// A proper subset `S^C` of `[n]`, together with its complement `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    ground: GroundSize,
    sc: SetWord,
    s: SetWord,
}

impl Generator {
    /// Rejects `sc = [n]`, which would generate the empty family.
    pub fn new(ground: GroundSize, sc: SetWord) -> Result<Self> {
        ground.check(sc)?;
        if sc == ground.full() {
            return Err(Error::ImproperGenerator);
        }
        Ok(Generator { ground, sc, s: ground.complement(sc) })
    }

    /// Builds the generator from its complement `S`, which must be nonempty.
    pub fn from_s(ground: GroundSize, s: SetWord) -> Result<Self> {
        ground.check(s)?;
        Self::new(ground, ground.complement(s))
    }

    /// Every valid generator over `[n]`, ascending by `S^C`.
    pub fn all(ground: GroundSize) -> impl Iterator<Item = Generator> {
        ground.words().filter_map(move |sc| Generator::new(ground, sc).ok())
    }

    #[inline]
    pub fn ground(&self) -> GroundSize {
        self.ground
    }

    /// The defining set `S^C`.
    #[inline]
    pub fn sc(&self) -> SetWord {
        self.sc
    }

    /// `S`, the elements whose singletons belong to the generated family.
    #[inline]
    pub fn s(&self) -> SetWord {
        self.s
    }
}

/// Builds `A(S^C)` from the two parity cases.
pub fn generate_family(g: &Generator) -> Family {
    let sc = g.sc();
    Family::from_predicate(g.ground(), |a| {
        matches!(
            (a.card_parity(), a.trace_parity(sc)),
            (Parity::Odd, Parity::Even) | (Parity::Even, Parity::Odd)
        )
    })
}

/// `{A ⊆ [n] : |A ∩ s| odd}`.
pub fn linear_form_family(ground: GroundSize, s: SetWord) -> Result<Family> {
    ground.check(s)?;
    if s.is_empty() {
        return Err(Error::EmptyLinearForm);
    }
    Ok(Family::from_predicate(ground, |a| a.trace_parity(s).is_odd()))
}

/// `[n]` minus the union of the singleton members of `f`.
///
/// Total: the result is `[n]` when `f` has no singletons, which is not a
/// valid generator. [`is_generated`] does the validity check.
pub fn recover_generator(f: &Family) -> SetWord {
    let covered = f.singletons().fold(SetWord::EMPTY, SetWord::union);
    f.ground().complement(covered)
}

/// Returns the generator `g` with `generate_family(g) == f`, if there is one.
pub fn is_generated(f: &Family) -> Option<Generator> {
    let g = Generator::new(f.ground(), recover_generator(f)).ok()?;
    // Cheap count check before materializing the candidate.
    if f.len() != f.ground().half() {
        return None;
    }
    (generate_family(&g) == *f).then_some(g)
}

/// Δ-free and of the largest possible size `2^(n-1)`.
pub fn is_maximum_family(f: &Family) -> bool {
    f.len() == f.ground().half() && f.is_delta_free()
}
