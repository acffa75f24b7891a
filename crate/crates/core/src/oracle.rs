//! Brute-force search for every maximum Δ-free family on small ground sets.
//!
//! The search never consults the construction: it walks candidate words in
//! ascending order, keeps the set of words excluded by the partial family
//! (`X Δ Y` for every chosen pair), and prunes once the remaining candidates
//! cannot reach `2^(n-1)` members. `∅` is never a candidate.
//!
//! With `n <= 5` all `2^n` words fit in one `u64`, so a partial family and its
//! exclusion set are each a single mask.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::canonical::canonical_form;
use crate::construction::is_generated;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::set::{GroundSize, SetWord};

pub const MIN_ENUM_GROUND: u32 = 2;
pub const MAX_ENUM_GROUND: u32 = 5;

/// Largest ground size [`find_extension`] accepts.
pub const MAX_EXTENSION_GROUND: u32 = 12;

/// Depth at which the search tree is cut into independent tasks.
const SPLIT_DEPTH: u32 = 2;
const DEADLINE_POLL: u64 = 1 << 12;

#[derive(Clone, Debug)]
pub struct EnumerationReport {
    pub n: GroundSize,
    /// Canonical member order, sorted lexicographically, no duplicates.
    pub families: Vec<Family>,
    pub total: usize,
    /// False when the budget ran out before the search finished.
    pub complete: bool,
    pub all_generated: bool,
    /// Isomorphism class sizes, ascending.
    pub class_sizes: Vec<usize>,
    pub elapsed: Duration,
}

impl EnumerationReport {
    fn from_masks(n: GroundSize, mut masks: Vec<u64>, complete: bool, elapsed: Duration) -> Result<Self> {
        masks.sort_unstable();
        masks.dedup();
        let mut families = masks
            .into_iter()
            .map(|mask| Family::new(n, (0..64).filter(|i| mask >> i & 1 == 1).map(SetWord)))
            .collect::<Result<Vec<_>>>()?;
        families.sort();
        let all_generated = families.iter().all(|f| is_generated(f).is_some());
        let class_sizes = class_sizes_of(&families)?;
        Ok(EnumerationReport {
            n,
            total: families.len(),
            families,
            complete,
            all_generated,
            class_sizes,
            elapsed,
        })
    }

    /// Copy of the report with `families[index]` dropped and summaries recomputed.
    pub fn without(&self, index: usize) -> Result<Self> {
        let mut families = self.families.clone();
        families.remove(index);
        Ok(EnumerationReport {
            total: families.len(),
            all_generated: families.iter().all(|f| is_generated(f).is_some()),
            class_sizes: class_sizes_of(&families)?,
            families,
            ..self.clone()
        })
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EnumerateOptions {
    pub budget: Option<Duration>,
    /// Worker threads; `None` uses the ambient rayon pool.
    pub jobs: Option<usize>,
}

/// Every Δ-free family of size `2^(n-1)` over `[n]`, for `2 <= n <= 5`.
pub fn enumerate_maximum_families(n: u32, budget: Option<Duration>) -> Result<EnumerationReport> {
    enumerate_with(n, EnumerateOptions { budget, jobs: None })
}

pub fn enumerate_with(n: u32, opts: EnumerateOptions) -> Result<EnumerationReport> {
    let ground = GroundSize::bounded(n, MIN_ENUM_GROUND, MAX_ENUM_GROUND)?;
    let run = || run_search(ground, opts.budget);
    match opts.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?
            .install(run),
        None => run(),
    }
}

fn run_search(ground: GroundSize, budget: Option<Duration>) -> Result<EnumerationReport> {
    let start = Instant::now();
    let abort = AtomicBool::new(false);
    let search = Search {
        target: ground.half() as u32,
        words: ground.word_count() as u32,
        deadline: budget.map(|b| start + b),
        abort: &abort,
    };

    let mut tasks = Vec::new();
    search.split(Node::root(), SPLIT_DEPTH, &mut tasks);
    let found: Vec<u64> = tasks
        .into_par_iter()
        .flat_map_iter(|node| {
            let mut out = Vec::new();
            let mut polls = 0;
            search.dfs(node, &mut out, &mut polls);
            out
        })
        .collect();

    let complete = !abort.load(Ordering::Relaxed);
    let report = EnumerationReport::from_masks(ground, found, complete, start.elapsed())?;
    if complete {
        Ok(report)
    } else {
        Err(Error::BudgetExhausted { partial: Box::new(report) })
    }
}

#[derive(Clone, Copy, Debug)]
struct Node {
    chosen: u64,
    excluded: u64,
    next: u32,
}

impl Node {
    fn root() -> Node {
        // Bit 0 is ∅.
        Node { chosen: 0, excluded: 1, next: 1 }
    }

    fn with(self, x: u32) -> Node {
        let mut excluded = self.excluded;
        let mut rest = self.chosen;
        while rest != 0 {
            let y = rest.trailing_zeros();
            rest &= rest - 1;
            excluded |= 1 << (x ^ y);
        }
        Node { chosen: self.chosen | 1 << x, excluded, next: x + 1 }
    }
}

struct Search<'a> {
    target: u32,
    words: u32,
    deadline: Option<Instant>,
    abort: &'a AtomicBool,
}

impl Search<'_> {
    /// Words `>= node.next` still addable to the partial family.
    fn available(&self, node: &Node) -> u64 {
        let upto = if self.words == 64 { u64::MAX } else { (1u64 << self.words) - 1 };
        let from = if node.next >= 64 { 0 } else { !((1u64 << node.next) - 1) };
        upto & from & !node.excluded
    }

    /// Calls `visit` on each child in ascending order; returns false at a leaf.
    fn children(&self, node: Node, mut visit: impl FnMut(Node)) -> bool {
        let size = node.chosen.count_ones();
        if size == self.target {
            return false;
        }
        let mut avail = self.available(&node);
        while avail != 0 {
            if size + avail.count_ones() < self.target {
                break;
            }
            let x = avail.trailing_zeros();
            avail &= avail - 1;
            visit(node.with(x));
        }
        true
    }

    fn split(&self, node: Node, depth: u32, out: &mut Vec<Node>) {
        if depth == 0 || node.chosen.count_ones() == self.target {
            out.push(node);
            return;
        }
        self.children(node, |child| self.split(child, depth - 1, out));
    }

    fn dfs(&self, node: Node, out: &mut Vec<u64>, polls: &mut u64) {
        *polls += 1;
        if *polls % DEADLINE_POLL == 1 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.abort.store(true, Ordering::Relaxed);
                }
            }
        }
        if self.abort.load(Ordering::Relaxed) {
            return;
        }
        if !self.children(node, |child| self.dfs(child, out, polls)) {
            out.push(node.chosen);
        }
    }
}

/// True iff the report is complete, holds `2^n - 1` families, and every one is generated.
pub fn verify_completeness(report: &EnumerationReport) -> Result<bool> {
    if !report.complete {
        return Err(Error::IncompleteReport);
    }
    let expected = report.n.word_count() - 1;
    Ok(report.total == expected && report.families.iter().all(|f| is_generated(f).is_some()))
}

fn class_sizes_of(families: &[Family]) -> Result<Vec<usize>> {
    let mut classes: BTreeMap<Family, usize> = BTreeMap::new();
    for f in families {
        *classes.entry(canonical_form(f)?).or_default() += 1;
    }
    let mut sizes: Vec<usize> = classes.into_values().collect();
    sizes.sort_unstable();
    Ok(sizes)
}

/// Sizes of the isomorphism classes among the report's families, ascending.
pub fn isomorphism_classes(report: &EnumerationReport) -> Result<Vec<usize>> {
    if !report.complete {
        return Err(Error::IncompleteReport);
    }
    class_sizes_of(&report.families)
}

/// Least nonempty word that can be added to `f` keeping it Δ-free, if any.
pub fn find_extension(f: &Family) -> Result<Option<SetWord>> {
    let ground = f.ground();
    GroundSize::bounded(ground.get(), 1, MAX_EXTENSION_GROUND)?;
    if !f.is_delta_free() {
        return Err(Error::NotDeltaFree);
    }
    // X can join iff X ∉ f and X ≠ A Δ B for all A, B ∈ f.
    let mut blocked = vec![false; ground.word_count()];
    for (i, &a) in f.members().iter().enumerate() {
        blocked[a.bits() as usize] = true;
        for &b in &f.members()[i..] {
            blocked[(a ^ b).bits() as usize] = true;
        }
    }
    Ok(ground.words().skip(1).find(|w| !blocked[w.bits() as usize]))
}
