//! Graph analysis for one player's claimed edges: components, degrees,
//! external neighborhoods, exact expander certification, exact longest-path
//! and Hamiltonicity oracles, Pósa rotation-extension, and boosters.
//!
//! Everything here is a pure function of its inputs (randomized operations
//! take the RNG explicitly), so all of it is safe to call from parallel
//! game workers.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::board::Edge;

mod expander;
mod hamilton;
mod rotation;

pub use expander::{is_k_expander, is_k_expander_with_budget, refute_expander_sampling, ExpanderCheck, DEFAULT_SUBSET_BUDGET};
pub use hamilton::{
    boosters_exact, hamilton_cycle_exact, is_hamiltonian_exact, longest_path_exact, BoosterMethod,
    BoosterSet, BOOSTERS_MAX_N, LONGEST_PATH_MAX_N,
};
pub use rotation::{
    find_hamilton_cycle_rotation, find_spanning_path, is_hamilton_cycle, posa_endpoints,
    rotation_boosters, spanning_closure_pairs, RotationCertificate,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop edge at vertex {v}")]
    LoopEdge { v: usize },
    #[error("vertex {v} out of range for n = {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },
    #[error("no eligible vertex")]
    NoEligibleVertex,
    #[error("n = {n} exceeds the exact-oracle cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("subset enumeration needs {required} sets, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("invalid path: {reason}")]
    InvalidPath { reason: String },
    #[error("edge list line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Simple undirected graph on vertices `0..n`: symmetric adjacency, no
/// loops, no multi-edges. Neighbor sets iterate in ascending order, which
/// keeps every downstream tie-break deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
    edge_count: usize,
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        Graph { n, adj: vec![BTreeSet::new(); n], edge_count: 0 }
    }

    /// Build from an edge list; rejects loops, out-of-range endpoints, and
    /// duplicates (duplicates in a fixture are almost always a mistake).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(GraphError::DuplicateEdge { u, v });
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Returns whether the edge was new. Errors on loops and range.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check_pair(u, v)?;
        if self.adj[u].insert(v) {
            self.adj[v].insert(u);
            self.edge_count += 1;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    /// Returns whether the edge was present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check_pair(u, v)?;
        if self.adj[u].remove(&v) {
            self.adj[v].remove(&u);
            self.edge_count -= 1;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(&v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    /// All edges in ascending (u, v) order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for &v in self.adj[u].range(u + 1..) {
                out.push(Edge::new(u, v));
            }
        }
        out
    }

    /// All non-edges in ascending (u, v) order.
    pub fn non_edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adj[u].contains(&v) {
                    out.push(Edge::new(u, v));
                }
            }
        }
        out
    }

    /// Vertex of minimum degree among those where `eligible` holds; ties
    /// may be broken arbitrarily, and lowest index is the deterministic
    /// choice here.
    pub fn min_degree_vertex<F: Fn(usize) -> bool>(&self, eligible: F) -> Result<usize, GraphError> {
        (0..self.n)
            .filter(|&v| eligible(v))
            .min_by_key(|&v| (self.degree(v), v))
            .ok_or(GraphError::NoEligibleVertex)
    }

    /// External neighborhood N(U) = {v ∉ U : v has a neighbor in U}.
    pub fn neighborhood(&self, us: &[usize]) -> Result<BTreeSet<usize>, GraphError> {
        let mut in_u = vec![false; self.n];
        for &u in us {
            if u >= self.n {
                return Err(GraphError::VertexOutOfRange { v: u, n: self.n });
            }
            in_u[u] = true;
        }
        let mut out = BTreeSet::new();
        for &u in us {
            for &w in &self.adj[u] {
                if !in_u[w] {
                    out.insert(w);
                }
            }
        }
        Ok(out)
    }

    /// Connected components as sorted vertex lists, ordered by smallest
    /// contained vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = vec![start];
            while let Some(v) = queue.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push(w);
                }
            }
        }
        count == self.n
    }

    /// Edge-list fixture format: a `# n = …` header line, then one `u v`
    /// pair per line in ascending order.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        writeln!(s, "# n = {}", self.n).unwrap();
        for e in self.edges() {
            writeln!(s, "{} {}", e.u(), e.v()).unwrap();
        }
        s
    }

    /// Parse the edge-list format. Lines starting with `#` are comments; a
    /// `# n = …` comment fixes the vertex count (needed when trailing
    /// vertices are isolated), otherwise n = max endpoint + 1.
    pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut n: Option<usize> = None;
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                let comment = comment.trim();
                if let Some(val) = comment.strip_prefix("n =").or_else(|| comment.strip_prefix("n=")) {
                    n = Some(val.trim().parse().map_err(|e| GraphError::Parse {
                        line: i + 1,
                        message: format!("bad n: {e}"),
                    })?);
                }
                continue;
            }
            let mut it = line.split_whitespace();
            let parse = |tok: Option<&str>, i: usize| -> Result<usize, GraphError> {
                tok.ok_or(GraphError::Parse { line: i + 1, message: "expected `u v`".into() })?
                    .parse()
                    .map_err(|e| GraphError::Parse { line: i + 1, message: format!("{e}") })
            };
            let u = parse(it.next(), i)?;
            let v = parse(it.next(), i)?;
            if it.next().is_some() {
                return Err(GraphError::Parse { line: i + 1, message: "expected `u v`".into() });
            }
            pairs.push((u, v));
        }
        let n = n.unwrap_or_else(|| pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
        Graph::from_edges(n, &pairs)
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::LoopEdge { v });
        }
        let n = self.n;
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { v: w, n });
            }
        }
        Ok(())
    }
}

/// Path graph 0-1-…-(n-1); a handy fixture shape.
pub fn path_graph(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        g.add_edge(v - 1, v).unwrap();
    }
    g
}

/// Cycle graph on n ≥ 3 vertices.
pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    let mut g = path_graph(n);
    g.add_edge(n - 1, 0).unwrap();
    g
}

/// Complete graph K_n.
pub fn complete_graph(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Complete bipartite graph K_{a,b} with left side 0..a, right side a..a+b.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::new(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_examples() {
        assert_eq!(Graph::new(3).components(), vec![vec![0], vec![1], vec![2]]);
        let mut g = path_graph(3);
        g = {
            let mut h = Graph::new(4);
            for e in g.edges() {
                h.add_edge(e.u(), e.v()).unwrap();
            }
            h
        };
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3]]);
        assert_eq!(complete_graph(5).components(), vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn min_degree_vertex_examples() {
        let mut star = Graph::new(4);
        for leaf in 1..4 {
            star.add_edge(0, leaf).unwrap();
        }
        assert_eq!(star.min_degree_vertex(|_| true).unwrap(), 1);
        assert_eq!(Graph::new(2).min_degree_vertex(|_| true).unwrap(), 0);
        // 12-regular graph: no vertex has degree < 12.
        let k13 = complete_graph(13);
        assert_eq!(
            k13.min_degree_vertex(|v| k13.degree(v) < 12).unwrap_err(),
            GraphError::NoEligibleVertex
        );
    }

    #[test]
    fn neighborhood_examples() {
        let k4 = complete_graph(4);
        assert_eq!(k4.neighborhood(&[0]).unwrap(), BTreeSet::from([1, 2, 3]));
        let p4 = path_graph(4);
        assert_eq!(p4.neighborhood(&[1, 2]).unwrap(), BTreeSet::from([0, 3]));
        assert_eq!(p4.neighborhood(&[]).unwrap(), BTreeSet::new());
        assert!(p4.neighborhood(&[7]).is_err());
    }

    #[test]
    fn add_remove_edge() {
        let mut g = Graph::new(3);
        assert!(g.add_edge(0, 1).unwrap());
        assert!(!g.add_edge(1, 0).unwrap());
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.add_edge(1, 1).unwrap_err(), GraphError::LoopEdge { v: 1 });
        assert_eq!(g.add_edge(0, 3).unwrap_err(), GraphError::VertexOutOfRange { v: 3, n: 3 });
        assert!(g.remove_edge(0, 1).unwrap());
        assert!(!g.remove_edge(0, 1).unwrap());
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn edges_and_non_edges_partition() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3), (0, 3)]).unwrap();
        let e: BTreeSet<Edge> = g.edges().into_iter().collect();
        let ne: BTreeSet<Edge> = g.non_edges().into_iter().collect();
        assert_eq!(e.len() + ne.len(), 6);
        assert!(e.is_disjoint(&ne));
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let mut g = Graph::from_edges(6, &[(0, 1), (1, 2), (4, 5)]).unwrap();
        g.add_edge(2, 3).unwrap();
        let text = g.to_edge_list();
        let back = Graph::from_edge_list(&text).unwrap();
        assert_eq!(back, g);
        // Header preserves isolated trailing vertices.
        let lone = Graph::new(5);
        assert_eq!(Graph::from_edge_list(&lone.to_edge_list()).unwrap().n(), 5);
        // Without a header, n is inferred from the endpoints.
        let inferred = Graph::from_edge_list("0 1\n1 2\n").unwrap();
        assert_eq!(inferred.n(), 3);
        assert!(Graph::from_edge_list("0 1 2\n").is_err());
        assert!(Graph::from_edge_list("0 x\n").is_err());
    }

    #[test]
    fn connectivity() {
        assert!(path_graph(5).is_connected());
        assert!(!Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap().is_connected());
        assert!(cycle_graph(3).is_connected());
        assert!(Graph::new(1).is_connected());
    }
}
