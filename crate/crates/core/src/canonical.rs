//! Canonical forms of families under relabelings of `[n]`.

use itertools::Itertools;

use crate::error::Result;
use crate::family::Family;
use crate::set::{GroundSize, SetWord};

/// Largest ground size accepted by [`canonical_form`]; cost is `n! * |f|`.
pub const MAX_CANONICAL_GROUND: u32 = 8;

fn relabel(w: SetWord, perm: &[u32]) -> SetWord {
    SetWord(w.positions().fold(0, |acc, pos| acc | 1 << perm[pos as usize]))
}

/// The lexicographically least sorted member list over all permutations of `[n]`.
///
/// Two families share a canonical form iff some permutation maps one onto the other.
pub fn canonical_form(f: &Family) -> Result<Family> {
    let ground = f.ground();
    GroundSize::bounded(ground.get(), 1, MAX_CANONICAL_GROUND)?;
    let n = ground.get();

    let mut best: Vec<SetWord> = f.members().to_vec();
    let mut scratch = Vec::with_capacity(f.len());
    for perm in (0..n).permutations(n as usize) {
        scratch.clear();
        scratch.extend(f.iter().map(|w| relabel(w, &perm)));
        scratch.sort_unstable();
        if scratch < best {
            std::mem::swap(&mut best, &mut scratch);
        }
    }
    Family::new(ground, best)
}
