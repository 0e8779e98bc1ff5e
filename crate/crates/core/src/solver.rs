//! Decision procedures for Test Cover.
//!
//! The exact solver is a depth-first branch and bound over test indices in
//! increasing order. A node is pruned when
//!
//! * the remaining budget is below `⌈log₂ s⌉` for the largest current class
//!   size `s` (a class of `s` vertices needs that many further tests), or
//! * two vertices that share a class can no longer be split by any test still
//!   available to the branch.
//!
//! Tests are tried in index order with "include" before "skip", so the first
//! cover found is the lexicographically smallest index sequence among the
//! covers the search admits. Running the search at the exact optimum makes
//! that witness the canonical optimal cover. Root branches may run on the
//! rayon pool; the first successful branch in index order wins, which keeps
//! results independent of scheduling.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::{ceil_log2, Instance};
use crate::partition::{refine, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decision {
    Yes,
    No,
}

impl Decision {
    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }
}

impl From<bool> for Decision {
    fn from(b: bool) -> Self {
        if b {
            Decision::Yes
        } else {
            Decision::No
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Yes => "YES",
            Decision::No => "NO",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub decision: Decision,
    /// Selected test indices, ascending. Present iff the decision is YES.
    pub witness: Option<Vec<usize>>,
    /// Minimum test cover size, when the solver computed it and a cover exists.
    pub optimum: Option<usize>,
}

impl SolveOutcome {
    fn no(optimum: Option<usize>) -> Self {
        SolveOutcome {
            decision: Decision::No,
            witness: None,
            optimum,
        }
    }
}

/// Class labelling of the vertices, used inside the search.
#[derive(Clone)]
struct Classes {
    label: Vec<u32>,
    size: Vec<u32>,
}

impl Classes {
    fn whole(n: usize) -> Self {
        Classes {
            label: vec![0; n],
            size: vec![n as u32],
        }
    }

    fn count(&self) -> usize {
        self.size.len()
    }

    fn is_discrete(&self) -> bool {
        self.size.len() == self.label.len()
    }

    fn largest(&self) -> usize {
        self.size.iter().copied().max().unwrap_or(0) as usize
    }

    /// Refines by `test`; `None` when the test splits no class.
    fn refine(&self, test: &[usize], scratch: &mut Vec<u32>) -> Option<Classes> {
        let classes = self.count();
        scratch.clear();
        scratch.resize(classes, 0);
        for &v in test {
            scratch[self.label[v] as usize] += 1;
        }
        if test
            .iter()
            .all(|&v| scratch[self.label[v] as usize] == self.size[self.label[v] as usize])
        {
            return None;
        }
        let mut next = self.clone();
        // scratch[c] becomes the id of the split-off half of class c.
        for (c, slot) in scratch.iter_mut().enumerate().take(classes) {
            *slot = if *slot > 0 && *slot < self.size[c] {
                next.size.push(0);
                (next.size.len() - 1) as u32
            } else {
                u32::MAX
            };
        }
        for &v in test {
            let c = self.label[v] as usize;
            let fresh = scratch[c];
            if fresh != u32::MAX {
                next.label[v] = fresh;
                next.size[c] -= 1;
                next.size[fresh as usize] += 1;
            }
        }
        Some(next)
    }

    /// True iff no class of `self` contains two vertices sharing a class of
    /// `other`, i.e. the meet of both labellings is discrete.
    fn meet_is_discrete(&self, other: &[u32], scratch: &mut Vec<u64>) -> bool {
        scratch.clear();
        scratch.extend(
            self.label
                .iter()
                .zip(other)
                .map(|(&a, &b)| (u64::from(a) << 32) | u64::from(b)),
        );
        scratch.sort_unstable();
        scratch.windows(2).all(|w| w[0] != w[1])
    }
}

struct Search<'a> {
    tests: &'a [Vec<usize>],
    /// `suffix[i]` labels the classes induced by `tests[i..]`.
    suffix: Vec<Vec<u32>>,
}

impl<'a> Search<'a> {
    fn new(instance: &'a Instance) -> Self {
        let n = instance.n();
        let tests = instance.tests();
        let mut suffix = vec![vec![0u32; n]; tests.len() + 1];
        let mut classes = Classes::whole(n);
        let mut scratch = Vec::new();
        for i in (0..tests.len()).rev() {
            if let Some(next) = classes.refine(&tests[i], &mut scratch) {
                classes = next;
            }
            suffix[i] = classes.label.clone();
        }
        Search { tests, suffix }
    }

    fn dfs(
        &self,
        classes: &Classes,
        start: usize,
        remaining: usize,
        chosen: &mut Vec<usize>,
        scratch: &mut Scratch,
    ) -> bool {
        if classes.is_discrete() {
            return true;
        }
        if remaining == 0 || ceil_log2(classes.largest()) as usize > remaining {
            return false;
        }
        for i in start..self.tests.len() {
            if !classes.meet_is_discrete(&self.suffix[i], &mut scratch.pairs) {
                break;
            }
            if let Some(next) = classes.refine(&self.tests[i], &mut scratch.counts) {
                chosen.push(i);
                if self.dfs(&next, i + 1, remaining - 1, chosen, scratch) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    /// Lexicographically first cover of at most `budget` tests that the
    /// search admits, or `None` when no cover of that size exists.
    fn run(&self, budget: usize, parallel: bool) -> Option<Vec<usize>> {
        let root = Classes::whole(self.suffix[0].len());
        if root.is_discrete() {
            return Some(Vec::new());
        }
        let mut scratch = Scratch::default();
        if budget == 0
            || ceil_log2(root.largest()) as usize > budget
            || !root.meet_is_discrete(&self.suffix[0], &mut scratch.pairs)
        {
            return None;
        }
        let branch = |first: usize, scratch: &mut Scratch| -> Option<Vec<usize>> {
            if !root.meet_is_discrete(&self.suffix[first], &mut scratch.pairs) {
                return None;
            }
            let next = root.refine(&self.tests[first], &mut scratch.counts)?;
            let mut chosen = vec![first];
            self.dfs(&next, first + 1, budget - 1, &mut chosen, scratch)
                .then_some(chosen)
        };
        if parallel {
            (0..self.tests.len())
                .into_par_iter()
                .map_init(Scratch::default, |scratch, first| branch(first, scratch))
                .find_map_first(|found| found)
        } else {
            (0..self.tests.len()).find_map(|first| branch(first, &mut scratch))
        }
    }
}

#[derive(Default)]
struct Scratch {
    counts: Vec<u32>,
    pairs: Vec<u64>,
}

/// Solver settings. Results never depend on them, only running time does.
#[derive(Debug, Clone, Copy)]
pub struct Solver {
    pub parallel: bool,
}

impl Default for Solver {
    fn default() -> Self {
        Solver { parallel: true }
    }
}

impl Solver {
    pub fn sequential() -> Self {
        Solver { parallel: false }
    }

    /// Some cover of at most `budget` tests, if one exists.
    ///
    /// Cheaper than [`Solver::solve_exact`]: no optimum is computed, and the
    /// witness is not necessarily of minimum size.
    pub fn decide(&self, instance: &Instance, budget: usize) -> Option<Vec<usize>> {
        Search::new(instance).run(budget.min(instance.m()), self.parallel)
    }

    /// Canonical optimal cover: the lexicographically smallest index sequence
    /// among the minimum-size covers. `None` when the tests cannot separate
    /// every pair.
    pub fn optimal_cover(&self, instance: &Instance) -> Option<Vec<usize>> {
        let search = Search::new(instance);
        let lower = ceil_log2(instance.n()) as usize;
        (lower..=instance.m()).find_map(|q| search.run(q, self.parallel))
    }

    pub fn solve_exact(&self, instance: &Instance, budget: usize) -> SolveOutcome {
        let budget = budget.min(instance.m());
        match self.optimal_cover(instance) {
            None => SolveOutcome::no(None),
            Some(cover) if cover.len() <= budget => SolveOutcome {
                decision: Decision::Yes,
                optimum: Some(cover.len()),
                witness: Some(cover),
            },
            Some(cover) => SolveOutcome::no(Some(cover.len())),
        }
    }

    pub fn solve_fpt_standard(&self, instance: &Instance, k: usize) -> SolveOutcome {
        // Fewer than ⌈log₂ n⌉ tests induce fewer than n classes.
        if k < ceil_log2(instance.n()) as usize {
            return SolveOutcome::no(None);
        }
        self.solve_exact(instance, k)
    }

    pub fn solve_dual(&self, instance: &Instance, k: usize) -> Result<SolveOutcome> {
        let n = instance.n();
        if k > n {
            return Err(Error::SizeFunction { k, size: n });
        }
        Ok(self.solve_exact(instance, n - k))
    }
}

/// Exact decision at `budget`, with canonical witness and optimum.
pub fn solve_exact(instance: &Instance, budget: usize) -> SolveOutcome {
    Solver::default().solve_exact(instance, budget)
}

/// Size of a minimum test cover, `None` when no cover exists.
pub fn min_test_cover(instance: &Instance) -> Option<usize> {
    Solver::default().optimal_cover(instance).map(|c| c.len())
}

/// Standard parameterization: budget equals the parameter `k`.
pub fn solve_fpt_standard(instance: &Instance, k: usize) -> SolveOutcome {
    Solver::default().solve_fpt_standard(instance, k)
}

/// Dual parameterization: budget `n − k`.
pub fn solve_dual(instance: &Instance, k: usize) -> Result<SolveOutcome> {
    Solver::default().solve_dual(instance, k)
}

/// Greedy cover: repeatedly take the test that yields the most classes,
/// lowest index on ties, until the partition is discrete or stalls.
pub fn greedy_cover(instance: &Instance) -> Option<Vec<usize>> {
    let mut partition = Partition::whole(instance.n());
    let mut selected: Vec<usize> = Vec::new();
    let mut used = vec![false; instance.m()];
    while !partition.is_discrete() {
        let mut best: Option<(usize, Partition)> = None;
        for t in (0..instance.m()).filter(|&t| !used[t]) {
            let refined = refine(&partition, instance.test(t)).expect("tests are in range");
            if refined.len() > best.as_ref().map_or(partition.len(), |(_, p)| p.len()) {
                best = Some((t, refined));
            }
        }
        let (t, refined) = best?;
        used[t] = true;
        selected.push(t);
        partition = refined;
    }
    selected.sort_unstable();
    Some(selected)
}
