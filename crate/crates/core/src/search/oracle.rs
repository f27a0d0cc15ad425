//! Plain enumeration of all `n`-tuples of members, no pruning and no symmetry
//! reduction. Only used to validate the pruned search on small instances.

use std::time::Instant;

use super::{SearchOutcome, SearchStatus};
use crate::error::{Error, Result};
use crate::relation::{Family, FamilyKind, LinearOrder, Tournament};

const MAX_ORACLE_LINEAR_M: usize = 5;
const MAX_ORACLE_TOURNAMENT_M: usize = 4;

/// For each member, the value on every ordered pair `(x, y)`, `x != y`, row-major.
fn member_tables(m: usize, kind: FamilyKind) -> Result<Vec<Vec<bool>>> {
    let ordered: Vec<(usize, usize)> =
        (0..m).flat_map(|x| (0..m).filter(move |&y| y != x).map(move |y| (x, y))).collect();
    match kind {
        FamilyKind::Linear => {
            if m > MAX_ORACLE_LINEAR_M {
                return Err(Error::TooLarge(format!("oracle enumerates orders only for m <= {MAX_ORACLE_LINEAR_M}")));
            }
            let mut out = Vec::new();
            for_each_permutation(m, |perm| {
                let mut pos = vec![0; m];
                for (p, &x) in perm.iter().enumerate() {
                    pos[x] = p;
                }
                out.push(ordered.iter().map(|&(x, y)| pos[x] < pos[y]).collect());
            });
            Ok(out)
        }
        FamilyKind::Tournament => {
            if m > MAX_ORACLE_TOURNAMENT_M {
                return Err(Error::TooLarge(format!(
                    "oracle enumerates tournaments only for m <= {MAX_ORACLE_TOURNAMENT_M}"
                )));
            }
            let edges: Vec<(usize, usize)> = (0..m).flat_map(|x| (x + 1..m).map(move |y| (x, y))).collect();
            let mut out = Vec::new();
            for mask in 0u32..1 << edges.len() {
                let mut arc = vec![vec![false; m]; m];
                for (e, &(x, y)) in edges.iter().enumerate() {
                    if mask >> e & 1 == 1 {
                        arc[x][y] = true;
                    } else {
                        arc[y][x] = true;
                    }
                }
                out.push(ordered.iter().map(|&(x, y)| arc[x][y]).collect());
            }
            Ok(out)
        }
        FamilyKind::Relation => Err(Error::WrongKind { expected: "linear or tournament", found: kind }),
    }
}

/// Heap's algorithm.
fn for_each_permutation(m: usize, mut visit: impl FnMut(&[usize])) {
    let mut a: Vec<usize> = (0..m).collect();
    let mut c = vec![0; m];
    visit(&a);
    let mut i = 0;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            visit(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Enumerates every `n`-tuple (with repetition) of linear orders or
/// tournaments on `m` points and reports the first separating one.
pub fn brute_force_oracle(m: usize, n: usize, kind: FamilyKind) -> Result<SearchOutcome> {
    let start = Instant::now();
    if n == 0 || n > 20 {
        return Err(Error::InvalidArgument(format!("oracle needs 1 <= n <= 20, got {n}")));
    }
    let tables = member_tables(m, kind)?;
    let pairs = m * m.saturating_sub(1);
    let count = tables.len();
    // codes[d][p] = profile of pair p over the first d chosen members
    let mut codes = vec![vec![0u32; pairs]; n + 1];
    let mut choice = vec![0usize; n];
    let mut seen = vec![0u32; 1 << n];
    let mut stamp = 0u32;
    let mut leaves = 0u64;
    let mut depth = 0;
    loop {
        // descend, filling codes for levels depth+1..=n
        while depth < n {
            let t = &tables[choice[depth]];
            let (lo, hi) = codes.split_at_mut(depth + 1);
            for p in 0..pairs {
                hi[0][p] = lo[depth][p] << 1 | u32::from(t[p]);
            }
            depth += 1;
        }
        leaves += 1;
        stamp += 1;
        let separating = codes[n].iter().all(|&c| {
            let fresh = seen[c as usize] != stamp;
            seen[c as usize] = stamp;
            fresh
        });
        if separating {
            let fam = build(m, kind, &choice)?;
            return Ok(SearchOutcome { status: SearchStatus::Found(fam), nodes_visited: leaves, elapsed: start.elapsed() });
        }
        // odometer step
        loop {
            if depth == 0 {
                return Ok(SearchOutcome {
                    status: SearchStatus::ExhaustedNone,
                    nodes_visited: leaves,
                    elapsed: start.elapsed(),
                });
            }
            depth -= 1;
            choice[depth] += 1;
            if choice[depth] < count {
                break;
            }
            choice[depth] = 0;
        }
    }
}

fn build(m: usize, kind: FamilyKind, choice: &[usize]) -> Result<Family> {
    match kind {
        FamilyKind::Linear => {
            let mut all = Vec::new();
            for_each_permutation(m, |p| all.push(p.to_vec()));
            let orders = choice.iter().map(|&c| LinearOrder::new(all[c].clone())).collect::<Result<Vec<_>>>()?;
            Family::linear(m, orders)
        }
        _ => {
            let members = choice
                .iter()
                .map(|&c| {
                    Tournament::from_fn(m, |x, y| {
                        let e = (0..x).map(|a| m - 1 - a).sum::<usize>() + (y - x - 1);
                        c >> e & 1 == 1
                    })
                })
                .collect();
            Family::tournaments(m, members)
        }
    }
}
