//! Pósa rotation-extension: endpoint closures with replayable witnesses,
//! randomized spanning-path construction, rotation-derived boosters, and
//! constructive Hamilton-cycle search for graphs beyond the exact-DP cap.
//!
//! A rotation takes a path p₀…p_k with an edge (chord) from p_k to some
//! p_i, i ≤ k−2, removes (p_i, p_{i+1}), and yields the path
//! p₀…p_i p_k p_{k−1}…p_{i+1}: same vertices, same fixed start p₀, new
//! endpoint p_{i+1}. The chord may go all the way back to p₀ (i = 0).
//!
//! Everything emitted here is *sound by construction* and makes no
//! completeness claim: a booster pair is only reported when it visibly
//! closes a spanning path into a Hamilton cycle, so a reported pair is a
//! booster no matter what the rest of the graph looks like.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::IteratorRandom;
use rand::Rng;

use super::{BoosterMethod, BoosterSet, Graph, GraphError};
use crate::board::Edge;

/// Endpoint closure of a path under single rotations, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationCertificate {
    pub base_path: Vec<usize>,
    /// First vertex of the base path; rotations never move it.
    pub fixed_endpoint: usize,
    /// Every endpoint reachable by some rotation sequence, including the
    /// base path's own endpoint (empty sequence).
    pub reachable: BTreeSet<usize>,
    /// endpoint → the chord targets of one rotation sequence reaching it,
    /// in application order.
    pub witnesses: BTreeMap<usize, Vec<usize>>,
}

impl RotationCertificate {
    /// Re-run the recorded rotation sequence for `endpoint` and return the
    /// resulting path, re-checking every chord against `g`.
    pub fn replay(&self, g: &Graph, endpoint: usize) -> Result<Vec<usize>, GraphError> {
        let chords = self.witnesses.get(&endpoint).ok_or_else(|| GraphError::InvalidPath {
            reason: format!("endpoint {endpoint} is not in the certificate"),
        })?;
        let mut path = self.base_path.clone();
        for &chord in chords {
            let end = *path.last().unwrap();
            if !g.has_edge(end, chord) {
                return Err(GraphError::InvalidPath {
                    reason: format!("chord ({end}, {chord}) is not an edge"),
                });
            }
            let i = path.iter().position(|&v| v == chord).ok_or_else(|| {
                GraphError::InvalidPath { reason: format!("chord target {chord} not on path") }
            })?;
            if i + 2 >= path.len() {
                return Err(GraphError::InvalidPath {
                    reason: format!("chord target {chord} admits no rotation"),
                });
            }
            path = rotate(&path, i);
        }
        if *path.last().unwrap() != endpoint {
            return Err(GraphError::InvalidPath {
                reason: format!("witness ends at {} instead of {endpoint}", path.last().unwrap()),
            });
        }
        Ok(path)
    }
}

/// Closure of the second endpoint of `path` under single rotations (the
/// first endpoint stays fixed), with one witness per reachable endpoint.
/// Terminates because the reachable set only grows.
pub fn posa_endpoints(g: &Graph, path: &[usize]) -> Result<RotationCertificate, GraphError> {
    validate_path(g, path)?;
    let (reachable, chords) = closure_with_chords(g, path);
    let witnesses: BTreeMap<usize, Vec<usize>> = chords.into_iter().collect();
    Ok(RotationCertificate {
        base_path: path.to_vec(),
        fixed_endpoint: path[0],
        reachable,
        witnesses,
    })
}

fn validate_path(g: &Graph, path: &[usize]) -> Result<(), GraphError> {
    if path.is_empty() {
        return Err(GraphError::InvalidPath { reason: "empty sequence".into() });
    }
    let mut seen = vec![false; g.n()];
    for &v in path {
        if v >= g.n() {
            return Err(GraphError::InvalidPath { reason: format!("vertex {v} out of range") });
        }
        if seen[v] {
            return Err(GraphError::InvalidPath { reason: format!("vertex {v} repeats") });
        }
        seen[v] = true;
    }
    for w in path.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(GraphError::InvalidPath {
                reason: format!("({}, {}) is not an edge", w[0], w[1]),
            });
        }
    }
    Ok(())
}

fn rotate(path: &[usize], i: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(path.len());
    out.extend_from_slice(&path[..=i]);
    out.extend(path[i + 1..].iter().rev());
    out
}

/// BFS over rotation-reachable endpoints; returns (endpoint, path) in
/// discovery order. Deterministic: neighbors iterate ascending.
fn closure_paths(g: &Graph, path: &[usize]) -> Vec<(usize, Vec<usize>)> {
    let n = g.n();
    let mut discovered = vec![false; n];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    let start_end = *path.last().unwrap();
    discovered[start_end] = true;
    out.push((start_end, path.to_vec()));
    queue.push_back(path.to_vec());
    let mut pos = vec![usize::MAX; n];
    while let Some(p) = queue.pop_front() {
        for (i, &v) in p.iter().enumerate() {
            pos[v] = i;
        }
        let end = *p.last().unwrap();
        for u in g.neighbors(end) {
            let i = pos[u];
            if i == usize::MAX || i + 2 >= p.len() {
                continue;
            }
            let new_end = p[i + 1];
            if !discovered[new_end] {
                discovered[new_end] = true;
                let np = rotate(&p, i);
                out.push((new_end, np.clone()));
                queue.push_back(np);
            }
        }
        for &v in &p {
            pos[v] = usize::MAX;
        }
    }
    out
}

/// Same BFS, additionally recording the chord sequence per endpoint.
fn closure_with_chords(g: &Graph, path: &[usize]) -> (BTreeSet<usize>, Vec<(usize, Vec<usize>)>) {
    let n = g.n();
    let mut discovered = vec![false; n];
    let mut ends = BTreeSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    let start_end = *path.last().unwrap();
    discovered[start_end] = true;
    ends.insert(start_end);
    out.push((start_end, Vec::new()));
    queue.push_back((path.to_vec(), Vec::<usize>::new()));
    let mut pos = vec![usize::MAX; n];
    while let Some((p, chords)) = queue.pop_front() {
        for (i, &v) in p.iter().enumerate() {
            pos[v] = i;
        }
        let end = *p.last().unwrap();
        for u in g.neighbors(end) {
            let i = pos[u];
            if i == usize::MAX || i + 2 >= p.len() {
                continue;
            }
            let new_end = p[i + 1];
            if !discovered[new_end] {
                discovered[new_end] = true;
                ends.insert(new_end);
                let mut seq = chords.clone();
                seq.push(u);
                out.push((new_end, seq.clone()));
                queue.push_back((rotate(&p, i), seq));
            }
        }
        for &v in &p {
            pos[v] = usize::MAX;
        }
    }
    (ends, out)
}

/// One randomized attempt to build a spanning path: greedy extension at both
/// ends, then rotation-extension, then (for connected graphs) closing a
/// non-spanning path into a cycle and escaping through any outside neighbor.
fn try_spanning_once<R: Rng>(g: &Graph, rng: &mut R) -> Option<Vec<usize>> {
    let n = g.n();
    if n == 0 {
        return None;
    }
    let start = rng.gen_range(0..n);
    let mut path = vec![start];
    let mut in_path = vec![false; n];
    in_path[start] = true;

    loop {
        // Cheap phase: random greedy extension at both ends.
        loop {
            let back = *path.last().unwrap();
            if let Some(w) = g.neighbors(back).filter(|&w| !in_path[w]).choose(rng) {
                path.push(w);
                in_path[w] = true;
                continue;
            }
            let front = path[0];
            if let Some(w) = g.neighbors(front).filter(|&w| !in_path[w]).choose(rng) {
                path.reverse();
                path.push(w);
                in_path[w] = true;
                continue;
            }
            break;
        }
        if path.len() == n {
            return Some(path);
        }

        // Rotation phase, trying both orientations.
        let mut progressed = false;
        for _ in 0..2 {
            let closure = closure_paths(g, &path);
            // An endpoint with a neighbor off the path extends directly.
            for (e, p) in &closure {
                if let Some(w) = g.neighbors(*e).find(|&w| !in_path[w]) {
                    path = p.clone();
                    path.push(w);
                    in_path[w] = true;
                    progressed = true;
                    break;
                }
            }
            if progressed {
                break;
            }
            // Otherwise look for a chord back to the fixed endpoint: that
            // closes a cycle on the path's vertex set, and any edge leaving
            // the cycle re-opens it into a strictly longer path.
            'cycle: for (e, p) in &closure {
                if !g.has_edge(p[0], *e) {
                    continue;
                }
                for (idx, &x) in p.iter().enumerate() {
                    if let Some(w) = g.neighbors(x).find(|&w| !in_path[w]) {
                        let mut np = Vec::with_capacity(path.len() + 1);
                        np.push(w);
                        np.extend(p[..=idx].iter().rev());
                        np.extend(p[idx + 1..].iter().rev());
                        path = np;
                        in_path[w] = true;
                        progressed = true;
                        break 'cycle;
                    }
                }
            }
            if progressed {
                break;
            }
            path.reverse();
        }
        if !progressed {
            return None;
        }
    }
}

/// Randomized spanning-path search with `attempts` independent restarts.
pub fn find_spanning_path<R: Rng>(g: &Graph, rng: &mut R, attempts: usize) -> Option<Vec<usize>> {
    for _ in 0..attempts.max(1) {
        if let Some(p) = try_spanning_once(g, rng) {
            return Some(p);
        }
    }
    None
}

/// Booster pairs read off a spanning path: every (endpoint, endpoint) pair
/// of a rotation variant of `path` whose closing edge is absent. Adding such
/// a pair closes a Hamilton cycle, so each pair is a booster irrespective of
/// anything else in the graph. Returns the pairs plus a flag that is true
/// when some closing edge already exists — i.e. the graph was caught being
/// Hamiltonian.
///
/// Returns nothing for non-spanning paths or n < 3 (no Hamilton cycles
/// there, so nothing is locally certifiable).
pub fn spanning_closure_pairs(g: &Graph, path: &[usize]) -> (BTreeSet<Edge>, bool) {
    let n = g.n();
    let mut pairs = BTreeSet::new();
    if path.len() != n || n < 3 {
        return (pairs, false);
    }
    let mut hamiltonian = false;
    // Double rotation: rotate the free end, then re-anchor at each reached
    // endpoint and rotate what used to be the fixed end.
    for (e, p) in closure_paths(g, path) {
        let reversed: Vec<usize> = p.iter().rev().copied().collect();
        for (f, _) in closure_paths(g, &reversed) {
            if g.has_edge(e, f) {
                hamiltonian = true;
            } else {
                pairs.insert(Edge::new(e, f));
            }
        }
    }
    (pairs, hamiltonian)
}

/// Rotation-derived boosters: `effort` restarts, full rotation closure per
/// restart. Sound and possibly incomplete; may be empty even when exact
/// boosters exist. If a restart catches the graph being Hamiltonian, every
/// non-edge is a booster by the literal definition and all are returned.
pub fn rotation_boosters<R: Rng>(g: &Graph, rng: &mut R, effort: usize) -> BoosterSet {
    let mut pairs = BTreeSet::new();
    for _ in 0..effort.max(1) {
        if let Some(path) = try_spanning_once(g, rng) {
            let (p, hamiltonian) = spanning_closure_pairs(g, &path);
            if hamiltonian {
                return BoosterSet {
                    pairs: g.non_edges().into_iter().collect(),
                    method: BoosterMethod::Rotation,
                };
            }
            pairs.extend(p);
        }
    }
    BoosterSet { pairs, method: BoosterMethod::Rotation }
}

/// Is `seq` a Hamilton cycle of `g` (as a vertex sequence, closing edge from
/// last back to first implied)?
pub fn is_hamilton_cycle(g: &Graph, seq: &[usize]) -> bool {
    let n = g.n();
    if n < 3 || seq.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in seq {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    seq.windows(2).all(|w| g.has_edge(w[0], w[1])) && g.has_edge(seq[n - 1], seq[0])
}

/// Constructive Hamilton-cycle search for graphs beyond the exact-DP cap:
/// build a spanning path, rotate until some endpoint sees the fixed end,
/// verify the cycle before returning it. May miss cycles (restart-bounded);
/// never returns a non-cycle.
pub fn find_hamilton_cycle_rotation<R: Rng>(
    g: &Graph,
    rng: &mut R,
    restarts: usize,
) -> Option<Vec<usize>> {
    if g.n() < 3 {
        return None;
    }
    for _ in 0..restarts.max(1) {
        let Some(path) = try_spanning_once(g, rng) else {
            continue;
        };
        for (e, p) in closure_paths(g, &path) {
            if g.has_edge(p[0], e) && is_hamilton_cycle(g, &p) {
                return Some(p);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::super::{complete_graph, cycle_graph, path_graph, Graph};
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn triangle_rotation_reaches_both_endpoints() {
        let g = complete_graph(3);
        let cert = posa_endpoints(&g, &[0, 1, 2]).unwrap();
        assert_eq!(cert.fixed_endpoint, 0);
        assert_eq!(cert.reachable, BTreeSet::from([1, 2]));
        // Endpoint 2: the base path itself. Endpoint 1: rotate on the chord
        // (2, 0), breaking (0, 1).
        assert_eq!(cert.witnesses[&2], Vec::<usize>::new());
        assert_eq!(cert.witnesses[&1], vec![0]);
        assert_eq!(cert.replay(&g, 1).unwrap(), vec![0, 2, 1]);
        assert_eq!(cert.replay(&g, 2).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn bare_path_admits_no_rotation() {
        let g = path_graph(4);
        let cert = posa_endpoints(&g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(cert.reachable, BTreeSet::from([3]));
    }

    #[test]
    fn invalid_paths_are_rejected() {
        let g = path_graph(4);
        assert!(matches!(
            posa_endpoints(&g, &[0, 1, 0]),
            Err(GraphError::InvalidPath { .. })
        ));
        assert!(matches!(posa_endpoints(&g, &[0, 2]), Err(GraphError::InvalidPath { .. })));
        assert!(matches!(posa_endpoints(&g, &[]), Err(GraphError::InvalidPath { .. })));
        assert!(matches!(posa_endpoints(&g, &[0, 9]), Err(GraphError::InvalidPath { .. })));
    }

    #[test]
    fn witnesses_replay_on_a_denser_graph() {
        // C_6 plus chords: several rotations become available.
        let mut g = cycle_graph(6);
        g.remove_edge(5, 0).unwrap();
        g.add_edge(0, 3).unwrap();
        g.add_edge(1, 5).unwrap();
        let base = [0, 1, 2, 3, 4, 5];
        let cert = posa_endpoints(&g, &base).unwrap();
        for &e in &cert.reachable {
            let p = cert.replay(&g, e).unwrap();
            assert_eq!(*p.last().unwrap(), e);
            assert_eq!(p[0], 0);
            let mut sorted = p.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, vec![0, 1, 2, 3, 4, 5]);
        }
    }

    #[test]
    fn path_booster_is_found() {
        let set = rotation_boosters(&path_graph(4), &mut rng(3), 4);
        assert_eq!(set.method, BoosterMethod::Rotation);
        assert!(set.contains(Edge::new(0, 3)), "got {:?}", set.pairs);
    }

    #[test]
    fn broken_cycle_booster_is_found() {
        let mut g = cycle_graph(6);
        g.remove_edge(2, 3).unwrap();
        let set = rotation_boosters(&g, &mut rng(5), 6);
        assert!(set.contains(Edge::new(2, 3)), "got {:?}", set.pairs);
    }

    #[test]
    fn hamiltonian_graph_yields_all_non_edges() {
        let g = cycle_graph(5);
        let set = rotation_boosters(&g, &mut rng(11), 5);
        let expected: BTreeSet<Edge> = g.non_edges().into_iter().collect();
        assert_eq!(set.pairs, expected);
    }

    #[test]
    fn tiny_graphs_emit_nothing() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(rotation_boosters(&g, &mut rng(1), 3).is_empty());
        assert!(rotation_boosters(&Graph::new(1), &mut rng(1), 3).is_empty());
    }

    #[test]
    fn spanning_path_found_on_connected_graphs() {
        for (i, g) in [complete_graph(8), cycle_graph(9), path_graph(7)].iter().enumerate() {
            let p = find_spanning_path(g, &mut rng(i as u64), 8).expect("spanning path exists");
            assert_eq!(p.len(), g.n());
            posa_endpoints(g, &p).expect("result is a valid path");
        }
        // Disconnected: no spanning path, search must give up cleanly.
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(find_spanning_path(&g, &mut rng(0), 8), None);
    }

    #[test]
    fn rotation_cycle_search_finds_and_verifies() {
        let g = cycle_graph(8);
        let cyc = find_hamilton_cycle_rotation(&g, &mut rng(2), 8).expect("C_8 is Hamiltonian");
        assert!(is_hamilton_cycle(&g, &cyc));
        assert!(find_hamilton_cycle_rotation(&path_graph(6), &mut rng(2), 8).is_none());
        assert!(!is_hamilton_cycle(&g, &[0, 1, 2]));
    }

    #[test]
    fn soundness_against_exact_oracle_spot_checks() {
        use super::super::boosters_exact;
        let mut r = rng(42);
        for n in [6usize, 8, 10] {
            for density in [2, 3, 5] {
                let mut g = Graph::new(n);
                for u in 0..n {
                    for v in u + 1..n {
                        if r.gen_range(0..10) < density {
                            g.add_edge(u, v).unwrap();
                        }
                    }
                }
                let exact = boosters_exact(&g).unwrap();
                let rot = rotation_boosters(&g, &mut r, n);
                assert!(
                    rot.pairs.is_subset(&exact.pairs),
                    "unsound pairs on {}: {:?} ⊄ {:?}",
                    g.to_edge_list(),
                    rot.pairs,
                    exact.pairs
                );
            }
        }
    }
}
