//! Exact k-expander certification by exhaustive subset enumeration, plus a
//! sampling refuter for graphs too large to enumerate.
//!
//! G is a k-expander when |N(U)| ≥ 2|U| for every vertex set U with
//! 1 ≤ |U| ≤ k. The check deliberately ranges over *all* subsets, not just
//! connected ones: a minimal violator need not induce a connected subgraph.

use rand::Rng;

use super::{Graph, GraphError};

/// Default cap on Σ_{i≤k} C(n,i), the number of subsets the exact check may
/// enumerate.
pub const DEFAULT_SUBSET_BUDGET: u128 = 100_000_000;

/// Outcome of an exact expander check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpanderCheck {
    Expander,
    /// The lexicographically first violating set (smallest size first).
    Violation(Vec<usize>),
}

impl ExpanderCheck {
    pub fn holds(&self) -> bool {
        matches!(self, ExpanderCheck::Expander)
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            ExpanderCheck::Expander => None,
            ExpanderCheck::Violation(u) => Some(u),
        }
    }
}

/// Exact check with the default enumeration budget.
pub fn is_k_expander(g: &Graph, k: usize) -> Result<ExpanderCheck, GraphError> {
    is_k_expander_with_budget(g, k, DEFAULT_SUBSET_BUDGET)
}

/// Exact check; errors with `BudgetExceeded` when Σ_{i≤k} C(n,i) exceeds
/// `budget` (callers then fall back to [`refute_expander_sampling`], which
/// can refute but never certify).
pub fn is_k_expander_with_budget(
    g: &Graph,
    k: usize,
    budget: u128,
) -> Result<ExpanderCheck, GraphError> {
    let n = g.n();
    let required = subset_count(n, k);
    if required > budget {
        return Err(GraphError::BudgetExceeded { required, budget });
    }

    let words = n.div_ceil(64).max(1);
    let masks = adjacency_masks(g, words);
    let mut union = vec![0u64; words];

    // Sizes ascending, subsets of each size in lexicographic order, so the
    // returned witness is deterministic: a smallest, lexicographically first
    // violator.
    for size in 1..=k.min(n) {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            union.fill(0);
            for &v in &subset {
                for (w, m) in union.iter_mut().zip(&masks[v]) {
                    *w |= m;
                }
            }
            for &v in &subset {
                union[v / 64] &= !(1u64 << (v % 64));
            }
            let external: u32 = union.iter().map(|w| w.count_ones()).sum();
            if (external as usize) < 2 * size {
                return Ok(ExpanderCheck::Violation(subset));
            }
            if !next_combination(&mut subset, n) {
                break;
            }
        }
    }
    Ok(ExpanderCheck::Expander)
}

/// Randomized refuter for large graphs: grows connected candidate sets of
/// random sizes in 1..=k from random seed vertices and checks each exactly.
/// A returned set is a verified violation; `None` proves nothing.
pub fn refute_expander_sampling<R: Rng>(
    g: &Graph,
    k: usize,
    trials: usize,
    rng: &mut R,
) -> Option<Vec<usize>> {
    let n = g.n();
    if n == 0 || k == 0 {
        return None;
    }
    let words = n.div_ceil(64).max(1);
    let masks = adjacency_masks(g, words);
    for _ in 0..trials {
        let target = rng.gen_range(1..=k.min(n));
        let seed = rng.gen_range(0..n);
        let mut subset = vec![seed];
        let mut in_set = vec![0u64; words];
        in_set[seed / 64] |= 1 << (seed % 64);
        // Frontier = external neighborhood; grow by a uniformly random
        // frontier vertex. If the frontier empties (tiny component), the
        // smaller set is still a legitimate candidate.
        while subset.len() < target {
            let mut frontier = vec![0u64; words];
            for &v in &subset {
                for (w, m) in frontier.iter_mut().zip(&masks[v]) {
                    *w |= m;
                }
            }
            for (w, s) in frontier.iter_mut().zip(&in_set) {
                *w &= !s;
            }
            let count: u32 = frontier.iter().map(|w| w.count_ones()).sum();
            if count == 0 {
                break;
            }
            let pick = rng.gen_range(0..count);
            let v = nth_set_bit(&frontier, pick);
            subset.push(v);
            in_set[v / 64] |= 1 << (v % 64);
        }
        let external = g.neighborhood(&subset).expect("sampled vertices are in range");
        if external.len() < 2 * subset.len() {
            subset.sort_unstable();
            return Some(subset);
        }
    }
    None
}

fn adjacency_masks(g: &Graph, words: usize) -> Vec<Vec<u64>> {
    (0..g.n())
        .map(|v| {
            let mut m = vec![0u64; words];
            for w in g.neighbors(v) {
                m[w / 64] |= 1 << (w % 64);
            }
            m
        })
        .collect()
}

fn subset_count(n: usize, k: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for i in 1..=k.min(n) {
        binom = binom.saturating_mul((n - i + 1) as u128) / i as u128;
        total = total.saturating_add(binom);
    }
    total
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn nth_set_bit(words: &[u64], mut nth: u32) -> usize {
    for (wi, &w) in words.iter().enumerate() {
        let ones = w.count_ones();
        if nth < ones {
            let mut w = w;
            for _ in 0..nth {
                w &= w - 1; // clear lowest set bit
            }
            return wi * 64 + w.trailing_zeros() as usize;
        }
        nth -= ones;
    }
    unreachable!("nth_set_bit out of range")
}

#[cfg(test)]
mod tests {
    use super::super::{complete_graph, cycle_graph, path_graph, Graph};
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn k9_is_a_3_expander() {
        // |N(U)| = 9 − |U| ≥ 2|U| for |U| ≤ 3.
        let check = is_k_expander(&complete_graph(9), 3).unwrap();
        assert_eq!(check, ExpanderCheck::Expander);
    }

    #[test]
    fn path_endpoint_violates() {
        let check = is_k_expander(&path_graph(4), 1).unwrap();
        assert_eq!(check, ExpanderCheck::Violation(vec![0]));
    }

    #[test]
    fn cycle_pair_violates() {
        // Two adjacent vertices of C_9 have exactly 2 external neighbors < 4.
        let check = is_k_expander(&cycle_graph(9), 2).unwrap();
        let witness = check.witness().expect("C_9 is not a 2-expander").to_vec();
        assert_eq!(witness.len(), 2);
        let external = cycle_graph(9).neighborhood(&witness).unwrap();
        assert!(external.len() < 4, "witness {witness:?} must violate");
        // Singletons are fine (degree 2 ≥ 2), so the first violator is the
        // lexicographically first adjacent pair.
        assert_eq!(witness, vec![0, 1]);
    }

    #[test]
    fn budget_is_enforced() {
        let g = Graph::new(64);
        let err = is_k_expander_with_budget(&g, 4, 1000).unwrap_err();
        assert!(matches!(err, GraphError::BudgetExceeded { required, budget: 1000 } if required > 1000));
    }

    #[test]
    fn k_zero_is_vacuous() {
        assert_eq!(is_k_expander(&path_graph(4), 0).unwrap(), ExpanderCheck::Expander);
    }

    #[test]
    fn sampling_refutes_path_endpoints() {
        let g = path_graph(4);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let witness = refute_expander_sampling(&g, 1, 100, &mut rng).expect("should find one");
        assert!(witness == vec![0] || witness == vec![3], "got {witness:?}");
    }

    #[test]
    fn sampling_never_refutes_k9() {
        let g = complete_graph(9);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        assert_eq!(refute_expander_sampling(&g, 3, 500, &mut rng), None);
        assert_eq!(refute_expander_sampling(&g, 3, 0, &mut rng), None);
    }

    #[test]
    fn expansion_is_monotone_under_edge_addition() {
        // Spot check of the monotonicity property; the property suite does
        // randomized versions.
        let mut g = cycle_graph(9);
        assert!(!is_k_expander(&g, 2).unwrap().holds());
        for u in 0..9 {
            for v in u + 1..9 {
                g.add_edge(u, v).unwrap();
            }
        }
        assert!(is_k_expander(&g, 2).unwrap().holds());
    }
}
