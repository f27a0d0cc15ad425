//! Backtracking over candidate members encoded as pair masks.
//!
//! A candidate is a `u64` whose bit `p` tells whether the `p`-th increasing
//! pair `(i, j)` is oriented `i -> j`. By the minimal-profile criterion it is
//! enough that the increasing pairs, re-oriented along the first member, end
//! up with pairwise distinct profiles over the remaining members. Pairs are
//! kept in classes of equal partial profile; a class with more than
//! `2^remaining` pairs can no longer be split into singletons and the branch
//! is cut.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::{SearchBudget, SymmetryFlags};

pub(crate) struct Candidates {
    pub masks: Vec<u64>,
    /// Index of the image of each candidate under the relabel-and-reverse symmetry.
    pub mirror: Vec<u32>,
    /// Index of the all-ones mask (the natural order).
    pub natural: u32,
    pub pairs: usize,
}

pub(crate) enum RawOutcome {
    /// Candidate indices of all `n` members, first member included.
    Found(Vec<u32>),
    Exhausted,
    BudgetExceeded,
}

struct Shared<'a> {
    budget: &'a SearchBudget,
    start: Instant,
    nodes: AtomicU64,
    stop: AtomicBool,
    exceeded: AtomicBool,
}

impl Shared<'_> {
    fn flush(&self, local: &mut u64) -> bool {
        let total = self.nodes.fetch_add(*local, Ordering::Relaxed) + *local;
        *local = 0;
        if total >= self.budget.max_nodes || self.start.elapsed() >= self.budget.max_time {
            self.exceeded.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
        }
        self.stop.load(Ordering::Relaxed)
    }
}

const FLUSH_EVERY: u64 = 1 << 14;

struct Branch<'a> {
    cands: &'a Candidates,
    flags: SymmetryFlags,
    free: usize,
    full: u64,
    shared: &'a Shared<'a>,
    local_nodes: u64,
    ticks: u64,
    chosen: Vec<u32>,
    scratch: Vec<Vec<u64>>,
}

enum Step {
    Found,
    Continue,
    Abort,
}

impl Branch<'_> {
    fn reference(&self) -> u64 {
        if self.flags.fix_first {
            self.full
        } else {
            self.cands.masks[self.chosen[0] as usize]
        }
    }

    /// Splits every class by `mask`; `None` when some part exceeds `cap`.
    fn refine(classes: &[u64], mask: u64, cap: u32, out: &mut Vec<u64>) -> bool {
        out.clear();
        for &class in classes {
            let a = class & mask;
            let b = class & !mask;
            let (ca, cb) = (a.count_ones(), b.count_ones());
            if ca > cap || cb > cap {
                return false;
            }
            if ca > 1 {
                out.push(a);
            }
            if cb > 1 {
                out.push(b);
            }
        }
        true
    }

    fn mirror_ok_at_leaf(&self) -> bool {
        if !self.flags.reversal || self.flags.sorted {
            return true;
        }
        let min_free = self.chosen.iter().copied().min();
        let min_mirror = self.chosen.iter().map(|&c| self.cands.mirror[c as usize]).min();
        min_free <= min_mirror
    }

    fn pad(&mut self) {
        let fill = self.chosen.last().copied().unwrap_or(self.cands.natural);
        self.chosen.resize(self.free, fill);
    }

    fn dfs(&mut self, depth: usize, classes: &[u64]) -> Step {
        if classes.is_empty() {
            let saved = self.chosen.len();
            self.pad();
            if self.mirror_ok_at_leaf() {
                return Step::Found;
            }
            self.chosen.truncate(saved);
            return Step::Continue;
        }
        if depth == self.free {
            return Step::Continue;
        }
        let start = if self.flags.sorted && depth > 0 { self.chosen[depth - 1] as usize } else { 0 };
        let remaining = (self.free - depth - 1) as u32;
        let cap = if remaining >= 32 { u32::MAX } else { 1u32 << remaining };
        let mut buf = std::mem::take(&mut self.scratch[depth]);
        let mut result = Step::Continue;
        for idx in start..self.cands.masks.len() {
            if !self.admissible(depth, idx) {
                continue;
            }
            self.ticks += 1;
            if self.ticks >= FLUSH_EVERY {
                self.ticks = 0;
                if self.shared.flush(&mut self.local_nodes) {
                    result = Step::Abort;
                    break;
                }
            }
            self.chosen.push(idx as u32);
            let reference = self.reference();
            let mask = !(self.cands.masks[idx] ^ reference) & self.full;
            if Self::refine(classes, mask, cap, &mut buf) {
                self.local_nodes += 1;
                let next = std::mem::take(&mut buf);
                let step = self.dfs(depth + 1, &next);
                buf = next;
                match step {
                    Step::Continue => {}
                    other => {
                        result = other;
                        break;
                    }
                }
            }
            self.chosen.pop();
        }
        self.scratch[depth] = buf;
        result
    }

    /// Symmetry filter for placing candidate `idx` at `depth`.
    fn admissible(&self, depth: usize, idx: usize) -> bool {
        if self.flags.reversal && self.flags.sorted {
            let first = if depth == 0 { idx as u32 } else { self.chosen[0] };
            if self.cands.mirror[idx] < first {
                return false;
            }
        }
        true
    }
}

/// Runs the search for `n` members. `fix_first` pins member 0 to the natural order.
pub(crate) fn run(cands: &Candidates, n: usize, flags: SymmetryFlags, budget: &SearchBudget) -> (RawOutcome, u64) {
    let shared = Shared {
        budget,
        start: Instant::now(),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        exceeded: AtomicBool::new(false),
    };
    let full = if cands.pairs == 64 { u64::MAX } else { (1u64 << cands.pairs) - 1 };
    let free = if flags.fix_first { n - 1 } else { n };
    let root_cap = if n > 64 { u64::MAX } else { 1u64 << (n - 1) };
    let root: Vec<u64> = if cands.pairs > 1 { vec![full] } else { Vec::new() };

    let finish = |chosen: Vec<u32>| -> Vec<u32> {
        if flags.fix_first {
            std::iter::once(cands.natural).chain(chosen).collect()
        } else {
            chosen
        }
    };
    let new_branch = || Branch {
        cands,
        flags,
        free,
        full,
        shared: &shared,
        local_nodes: 0,
        ticks: 0,
        chosen: Vec::with_capacity(free),
        scratch: vec![Vec::new(); free + 1],
    };

    if cands.pairs as u64 > root_cap {
        return (RawOutcome::Exhausted, 0);
    }

    let found = if root.is_empty() || free == 0 {
        let mut b = new_branch();
        match b.dfs(0, &root) {
            Step::Found => Some(b.chosen),
            _ => None,
        }
    } else if budget.parallel_width <= 1 {
        let mut b = new_branch();
        let r = match b.dfs(0, &root) {
            Step::Found => Some(b.chosen.clone()),
            _ => None,
        };
        shared.nodes.fetch_add(b.local_nodes, Ordering::Relaxed);
        r
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(budget.parallel_width)
            .build()
            .expect("thread pool");
        pool.install(|| {
            (0..cands.masks.len()).into_par_iter().find_map_any(|top| {
                if shared.stop.load(Ordering::Relaxed) {
                    return None;
                }
                let mut b = new_branch();
                let r = b.branch_from(top, &root);
                shared.nodes.fetch_add(b.local_nodes, Ordering::Relaxed);
                if r.is_some() {
                    shared.stop.store(true, Ordering::Relaxed);
                }
                r
            })
        })
    };

    let nodes = shared.nodes.load(Ordering::Relaxed);
    let outcome = match found {
        Some(chosen) => RawOutcome::Found(finish(chosen)),
        None if shared.exceeded.load(Ordering::Relaxed) => RawOutcome::BudgetExceeded,
        None => RawOutcome::Exhausted,
    };
    (outcome, nodes)
}

impl Branch<'_> {
    /// Explores the subtree whose first free member is candidate `top`.
    fn branch_from(&mut self, top: usize, root: &[u64]) -> Option<Vec<u32>> {
        if !self.admissible(0, top) {
            return None;
        }
        self.chosen.push(top as u32);
        let reference = self.reference();
        let mask = !(self.cands.masks[top] ^ reference) & self.full;
        let remaining = (self.free - 1) as u32;
        let cap = if remaining >= 32 { u32::MAX } else { 1u32 << remaining };
        let mut buf = Vec::new();
        if !Self::refine(root, mask, cap, &mut buf) {
            return None;
        }
        self.local_nodes += 1;
        match self.dfs(1, &buf) {
            Step::Found => Some(self.chosen.clone()),
            _ => None,
        }
    }
}
