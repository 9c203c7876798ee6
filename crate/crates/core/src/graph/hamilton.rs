//! Exact longest-path and Hamiltonicity oracles (bitmask dynamic
//! programming over vertex subsets) and exact booster detection.
//!
//! The DP keeps, for every vertex subset S, the set of vertices v such that
//! some simple path spans exactly S and ends at v. That is 2^n small
//! bitmasks, fine up to the configured caps and hopeless beyond them — the
//! game engine switches to constructive rotation witnesses past the cap.

use std::collections::BTreeSet;

use super::{Graph, GraphError};
use crate::board::Edge;

/// Cap for [`longest_path_exact`], [`is_hamiltonian_exact`], and
/// [`hamilton_cycle_exact`]. Cost grows as 2^n·n².
pub const LONGEST_PATH_MAX_N: usize = 18;

/// Cap for [`boosters_exact`], which runs an exact oracle per non-edge.
pub const BOOSTERS_MAX_N: usize = 16;

/// How a booster set was produced: exactly (complete by definition) or via
/// rotation closures (sound, possibly incomplete).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoosterMethod {
    Exact,
    Rotation,
}

/// A set of boosters: non-edges whose addition makes the graph Hamiltonian
/// or strictly lengthens its longest path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoosterSet {
    pub pairs: BTreeSet<Edge>,
    pub method: BoosterMethod,
}

impl BoosterSet {
    pub fn contains(&self, e: Edge) -> bool {
        self.pairs.contains(&e)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

fn check_cap(n: usize, cap: usize) -> Result<(), GraphError> {
    if n > cap {
        return Err(GraphError::TooLarge { n, cap });
    }
    Ok(())
}

fn adjacency_u32(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).fold(0u32, |m, w| m | (1 << w)))
        .collect()
}

/// endpoints[mask] = bitmask of vertices v such that some simple path spans
/// exactly `mask` and ends at v.
fn path_endpoint_table(n: usize, adj: &[u32]) -> Vec<u32> {
    let mut dp = vec![0u32; 1 << n];
    for v in 0..n {
        dp[1 << v] = 1 << v;
    }
    for mask in 1u32..(1 << n) as u32 {
        let mut ends = dp[mask as usize];
        if ends == 0 {
            continue;
        }
        while ends != 0 {
            let v = ends.trailing_zeros() as usize;
            ends &= ends - 1;
            let mut ext = adj[v] & !mask;
            while ext != 0 {
                let w = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                dp[(mask | (1 << w)) as usize] |= 1 << w;
            }
        }
    }
    dp
}

/// Exact longest path: the number of vertices on a longest simple path and
/// the lexicographically least witness sequence of that length.
pub fn longest_path_exact(g: &Graph) -> Result<(usize, Vec<usize>), GraphError> {
    let n = g.n();
    check_cap(n, LONGEST_PATH_MAX_N)?;
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let adj = adjacency_u32(g);
    let dp = path_endpoint_table(n, &adj);
    let best = (0..1u32 << n)
        .filter(|&m| dp[m as usize] != 0)
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap();

    // Greedy lexicographically-least witness. At each step, a vertex x can
    // come next iff x is adjacent to the prefix end and some vertex set of
    // the remaining size, disjoint from the prefix, carries a path ending at
    // x (ending = starting, paths reverse). Feasibility is exact, so the
    // greedy minimum at every step yields the lexicographic minimum overall.
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut path: Vec<usize> = Vec::with_capacity(best);
    let mut used: u32 = 0;
    for step in 0..best {
        let remaining = (best - step) as u32;
        let mut candidates: u32 = 0;
        for mask in 1u32..=full {
            if mask & used == 0 && mask.count_ones() == remaining {
                candidates |= dp[mask as usize];
            }
        }
        if let Some(&last) = path.last() {
            candidates &= adj[last];
        }
        debug_assert!(candidates != 0, "witness construction lost feasibility");
        let x = candidates.trailing_zeros() as usize;
        path.push(x);
        used |= 1 << x;
    }
    Ok((best, path))
}

/// Exact Hamilton-cycle witness: the cycle as a vertex sequence starting at
/// vertex 0 (closing edge back to 0 implied), or `None`.
pub fn hamilton_cycle_exact(g: &Graph) -> Result<Option<Vec<usize>>, GraphError> {
    let n = g.n();
    check_cap(n, LONGEST_PATH_MAX_N)?;
    if n < 3 {
        return Ok(None);
    }
    let adj = adjacency_u32(g);
    // Paths anchored at vertex 0: dp[mask] = endpoints of paths from 0
    // spanning mask (0 ∈ mask).
    let mut dp = vec![0u32; 1 << n];
    dp[1] = 1;
    for mask in 1u32..(1 << n) as u32 {
        if mask & 1 == 0 {
            continue;
        }
        let mut ends = dp[mask as usize];
        while ends != 0 {
            let v = ends.trailing_zeros() as usize;
            ends &= ends - 1;
            let mut ext = adj[v] & !mask;
            while ext != 0 {
                let w = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                dp[(mask | (1 << w)) as usize] |= 1 << w;
            }
        }
    }
    let full: u32 = (1u32 << n) - 1;
    let closers = dp[full as usize] & adj[0];
    if closers == 0 {
        return Ok(None);
    }
    // Backtrack, taking the smallest feasible predecessor at each step so
    // the witness is deterministic.
    let mut cycle_rev = Vec::with_capacity(n);
    let mut v = closers.trailing_zeros() as usize;
    let mut mask = full;
    while mask != 1 {
        cycle_rev.push(v);
        let prev_mask = mask & !(1u32 << v);
        let preds = dp[prev_mask as usize] & adj[v];
        debug_assert!(preds != 0);
        v = preds.trailing_zeros() as usize;
        mask = prev_mask;
    }
    cycle_rev.push(0);
    cycle_rev.reverse();
    Ok(Some(cycle_rev))
}

/// Exact Hamiltonicity test.
pub fn is_hamiltonian_exact(g: &Graph) -> Result<bool, GraphError> {
    Ok(hamilton_cycle_exact(g)?.is_some())
}

/// Exact booster set: every non-edge whose addition yields a Hamiltonian
/// graph or a strictly longer longest path.
///
/// By the literal definition, if G is already Hamiltonian then *every*
/// non-edge qualifies (G′ is Hamiltonian); callers that care should
/// short-circuit on Hamiltonicity first.
pub fn boosters_exact(g: &Graph) -> Result<BoosterSet, GraphError> {
    let n = g.n();
    check_cap(n, BOOSTERS_MAX_N)?;
    let mut pairs = BTreeSet::new();
    let already_hamiltonian = is_hamiltonian_exact(g)?;
    let (base_len, _) = longest_path_exact(g)?;
    for e in g.non_edges() {
        let qualifies = if already_hamiltonian {
            true
        } else {
            let mut g2 = g.clone();
            g2.add_edge(e.u(), e.v()).unwrap();
            if base_len == n {
                // A spanning path exists, so the longest path cannot grow;
                // only closing to a Hamilton cycle qualifies.
                is_hamiltonian_exact(&g2)?
            } else {
                longest_path_exact(&g2)?.0 > base_len
            }
        };
        if qualifies {
            pairs.insert(e);
        }
    }
    Ok(BoosterSet { pairs, method: BoosterMethod::Exact })
}
