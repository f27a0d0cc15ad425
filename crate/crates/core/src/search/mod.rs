//! Exact computation of the minimum size of separating families.
//!
//! [`exists_separating_lin`] and [`exists_separating_tour`] run a pruned,
//! symmetry-reduced backtracking search; [`brute_force_oracle`]
//! is a plain enumeration kept only to cross-check it.

mod engine;
mod oracle;

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bits::{increasing_pairs, pair_count, pair_index};
use crate::check::is_separating;
use crate::construct::{best_known_family, lower_bound, next_permutation, optimal_tournament_family};
use crate::error::{Error, Result};
use crate::relation::{Family, FamilyKind, LinearOrder, Tournament};

use engine::{Candidates, RawOutcome};
pub use oracle::brute_force_oracle;

/// Largest ground set for which all linear orders are enumerated as candidates.
pub const MAX_LINEAR_M: usize = 10;
/// Largest ground set for which all tournaments are enumerated as candidates.
pub const MAX_TOURNAMENT_M: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_time: Duration,
    /// Number of top-level branches explored concurrently; 1 is deterministic.
    pub parallel_width: usize,
}

impl SearchBudget {
    pub fn new(max_nodes: u64, max_time: Duration, parallel_width: usize) -> Result<Self> {
        if max_nodes == 0 || max_time.is_zero() || parallel_width == 0 {
            return Err(Error::InvalidArgument("search budget fields must be positive".into()));
        }
        Ok(Self { max_nodes, max_time, parallel_width })
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { max_nodes: 1 << 40, max_time: Duration::from_secs(600), parallel_width: 1 }
    }
}

/// Individually switchable symmetry reductions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymmetryFlags {
    /// Member 0 is the natural order (ground-set relabelling).
    pub fix_first: bool,
    /// Remaining members appear in non-decreasing candidate order (member permutation).
    pub sorted: bool,
    /// Quotient by reversing every member and relabelling `x -> m-1-x`.
    pub reversal: bool,
}

impl SymmetryFlags {
    pub const ALL: SymmetryFlags = SymmetryFlags { fix_first: true, sorted: true, reversal: true };
    pub const NONE: SymmetryFlags = SymmetryFlags { fix_first: false, sorted: false, reversal: false };

    /// All eight combinations.
    pub fn combinations() -> impl Iterator<Item = SymmetryFlags> {
        (0..8u8).map(|b| SymmetryFlags { fix_first: b & 1 != 0, sorted: b & 2 != 0, reversal: b & 4 != 0 })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    Found(Family),
    ExhaustedNone,
    BudgetExceeded,
}

impl SearchStatus {
    pub fn label(&self) -> &'static str {
        match self {
            SearchStatus::Found(_) => "FOUND",
            SearchStatus::ExhaustedNone => "EXHAUSTED_NONE",
            SearchStatus::BudgetExceeded => "BUDGET_EXCEEDED",
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchStatus::Found(_))
    }

    /// Same status, ignoring which witness was found.
    pub fn same_answer(&self, other: &SearchStatus) -> bool {
        self.label() == other.label()
    }
}

impl fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub nodes_visited: u64,
    pub elapsed: Duration,
}

fn factorial(m: usize) -> usize {
    (1..=m).product()
}

fn perm_mask(m: usize, perm: &[usize]) -> u64 {
    let mut rank = vec![0; m];
    for (pos, &x) in perm.iter().enumerate() {
        rank[x] = pos;
    }
    increasing_pairs(m).enumerate().fold(0u64, |acc, (p, (i, j))| acc | u64::from(rank[i] < rank[j]) << p)
}

/// Lexicographic rank of a permutation.
fn perm_rank(perm: &[usize]) -> usize {
    let m = perm.len();
    let mut rank = 0;
    for i in 0..m {
        let smaller = perm[i + 1..].iter().filter(|&&x| x < perm[i]).count();
        rank += smaller * factorial(m - 1 - i);
    }
    rank
}

fn perm_unrank(m: usize, mut rank: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..m).collect();
    let mut out = Vec::with_capacity(m);
    for i in (0..m).rev() {
        let f = factorial(i);
        out.push(pool.remove(rank / f));
        rank %= f;
    }
    out
}

fn linear_candidates(m: usize) -> Candidates {
    let count = factorial(m);
    let mut masks = Vec::with_capacity(count);
    let mut mirror = Vec::with_capacity(count);
    let mut perm: Vec<usize> = (0..m).collect();
    loop {
        masks.push(perm_mask(m, &perm));
        let image: Vec<usize> = (0..m).map(|i| m - 1 - perm[m - 1 - i]).collect();
        mirror.push(perm_rank(&image) as u32);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Candidates { masks, mirror, natural: 0, pairs: pair_count(m) }
}

fn tournament_candidates(m: usize) -> Candidates {
    let p = pair_count(m);
    let masks: Vec<u64> = (0..1u64 << p).collect();
    let mirror = masks
        .iter()
        .map(|&mask| {
            increasing_pairs(m).fold(0u64, |acc, (i, j)| {
                let src = pair_index(m, m - 1 - j, m - 1 - i);
                acc | (mask >> src & 1) << pair_index(m, i, j)
            }) as u32
        })
        .collect();
    Candidates { natural: ((1u64 << p) - 1) as u32, masks, mirror, pairs: p }
}

fn check_instance(m: usize, n: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::GroundTooSmall { m, min: 2 });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("family size must be at least 1".into()));
    }
    Ok(())
}

fn finish(kind: FamilyKind, m: usize, raw: RawOutcome, nodes: u64, start: Instant) -> Result<SearchOutcome> {
    let status = match raw {
        RawOutcome::Found(indices) => {
            let fam = match kind {
                FamilyKind::Linear => Family::linear(
                    m,
                    indices
                        .iter()
                        .map(|&i| LinearOrder::new(perm_unrank(m, i as usize)))
                        .collect::<Result<Vec<_>>>()?,
                )?,
                _ => Family::tournaments(m, indices.iter().map(|&i| Tournament::from_mask(m, u64::from(i))).collect())?,
            };
            // never trust the search: re-check with the plain checker
            if !is_separating(&fam)? {
                return Err(Error::Internal(format!("search produced a non-separating family: {fam:?}")));
            }
            SearchStatus::Found(fam)
        }
        RawOutcome::Exhausted => SearchStatus::ExhaustedNone,
        RawOutcome::BudgetExceeded => SearchStatus::BudgetExceeded,
    };
    Ok(SearchOutcome { status, nodes_visited: nodes, elapsed: start.elapsed() })
}

/// Is there a separating family of `n` linear orders on `m` points? All symmetry reductions on.
pub fn exists_separating_lin(m: usize, n: usize, budget: &SearchBudget) -> Result<SearchOutcome> {
    exists_separating_lin_with(m, n, budget, SymmetryFlags::ALL)
}

pub fn exists_separating_lin_with(
    m: usize,
    n: usize,
    budget: &SearchBudget,
    flags: SymmetryFlags,
) -> Result<SearchOutcome> {
    check_instance(m, n)?;
    if m > MAX_LINEAR_M {
        return Err(Error::TooLarge(format!("linear-order search supports m <= {MAX_LINEAR_M}")));
    }
    let start = Instant::now();
    let cands = linear_candidates(m);
    let (raw, nodes) = engine::run(&cands, n, flags, budget);
    finish(FamilyKind::Linear, m, raw, nodes, start)
}

/// Is there a separating family of `n` tournaments on `m` points?
pub fn exists_separating_tour(
    m: usize,
    n: usize,
    budget: &SearchBudget,
    flags: SymmetryFlags,
) -> Result<SearchOutcome> {
    check_instance(m, n)?;
    if m > MAX_TOURNAMENT_M {
        return Err(Error::TooLarge(format!("tournament search supports m <= {MAX_TOURNAMENT_M}")));
    }
    let start = Instant::now();
    let cands = tournament_candidates(m);
    let (raw, nodes) = engine::run(&cands, n, flags, budget);
    finish(FamilyKind::Tournament, m, raw, nodes, start)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSource {
    Search,
    Construction,
}

/// An exact minimum with a certified witness.
#[derive(Clone, Debug)]
pub struct HValue {
    pub m: usize,
    pub value: usize,
    pub witness: Family,
    pub source: WitnessSource,
    pub nodes_visited: u64,
    /// For tournaments: whether the search confirmed the value independently.
    pub search_confirmed: bool,
}

/// The search ran out of budget before the minimum was pinned down.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("budget exceeded for m = {m}: minimum lies in [{lower}, {upper}]")]
pub struct Bracket {
    pub m: usize,
    pub lower: usize,
    pub upper: usize,
    pub nodes_visited: u64,
}

#[derive(Debug, thiserror::Error)]
pub enum HError {
    #[error(transparent)]
    Bracket(#[from] Bracket),
    #[error(transparent)]
    Core(#[from] Error),
}

/// Minimum number of linear orders separating `m` points, searched upward from
/// [`lower_bound`]. The best construction caps the search; if the budget runs
/// out below it, the answer is reported as a bracket.
pub fn h_lin_exact(m: usize, budget: &SearchBudget) -> std::result::Result<HValue, HError> {
    let lower = lower_bound(m)?;
    let best = best_known_family(m)?;
    let upper = best.len();
    let mut nodes = 0;
    for n in lower..=upper {
        let outcome = exists_separating_lin(m, n, budget)?;
        nodes += outcome.nodes_visited;
        match outcome.status {
            SearchStatus::Found(witness) => {
                return Ok(HValue {
                    m,
                    value: n,
                    witness,
                    source: WitnessSource::Search,
                    nodes_visited: nodes,
                    search_confirmed: true,
                })
            }
            SearchStatus::ExhaustedNone if n == upper => {
                return Err(Error::Internal(format!("search exhausted at n = {n} despite a known witness")).into())
            }
            SearchStatus::ExhaustedNone => {}
            SearchStatus::BudgetExceeded if n == upper => {
                return Ok(HValue {
                    m,
                    value: upper,
                    witness: best,
                    source: WitnessSource::Construction,
                    nodes_visited: nodes,
                    search_confirmed: false,
                })
            }
            SearchStatus::BudgetExceeded => {
                return Err(Bracket { m, lower: n, upper, nodes_visited: nodes }.into());
            }
        }
    }
    unreachable!("loop returns at n = upper")
}

/// Minimum number of tournaments separating `m` points. The value equals
/// [`lower_bound`]; the witness is the explicit construction. For small `m`
/// the search also confirms that `value - 1` tournaments do not suffice and
/// that `value` do.
pub fn h_tour_exact(m: usize, budget: &SearchBudget) -> Result<HValue> {
    let value = lower_bound(m)?;
    let witness = optimal_tournament_family(m)?;
    let mut nodes = 0;
    let mut confirmed = false;
    if m <= 6 {
        let at = exists_separating_tour(m, value, budget, SymmetryFlags::ALL)?;
        nodes += at.nodes_visited;
        let below_ok = if value > 1 {
            let below = exists_separating_tour(m, value - 1, budget, SymmetryFlags::ALL)?;
            nodes += below.nodes_visited;
            below.status == SearchStatus::ExhaustedNone
        } else {
            true
        };
        confirmed = at.status.is_found() && below_ok;
    }
    Ok(HValue { m, value, witness, source: WitnessSource::Construction, nodes_visited: nodes, search_confirmed: confirmed })
}

/// One row of the h-value table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub m: usize,
    pub lower_bound: usize,
    pub upper_bound: usize,
    /// Set only when the value is certified (bounds meet, or a search closed the gap).
    pub exact: Option<usize>,
}

impl TableRow {
    pub fn is_open(&self) -> bool {
        self.exact.is_none()
    }
}

/// Bounds for `m`. With a budget, a search is attempted to close any gap.
pub fn table_row(m: usize, search: Option<&SearchBudget>) -> Result<TableRow> {
    let lower = lower_bound(m)?;
    let upper = best_known_family(m)?.len();
    let mut row = TableRow { m, lower_bound: lower, upper_bound: upper, exact: None };
    if lower == upper {
        row.exact = Some(lower);
        return Ok(row);
    }
    if let Some(budget) = search {
        if m > MAX_LINEAR_M {
            return Ok(row);
        }
        match h_lin_exact(m, budget) {
            Ok(h) => {
                row.exact = Some(h.value);
                row.upper_bound = h.value;
                row.lower_bound = h.value;
            }
            Err(HError::Bracket(b)) => {
                row.lower_bound = b.lower;
                row.upper_bound = b.upper;
            }
            Err(HError::Core(e)) => return Err(e),
        }
    }
    Ok(row)
}
