//! The K_n edge board: ownership of every edge, claim bookkeeping, and the
//! append-only move transcript that makes every game replayable.
//!
//! The board is deliberately permissive: it accepts any group of unclaimed
//! edges as one move. Turn order, claim quotas, and the last-move remainder
//! rule are game rules, enforced by the engine (and re-checked by
//! [`replay_verify`](crate::engine::replay_verify)), not by the board.

use std::fmt;
use std::io;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The two players of a Maker-Breaker game.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    Maker,
    Breaker,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Maker => Player::Breaker,
            Player::Breaker => Player::Maker,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Maker => write!(f, "Maker"),
            Player::Breaker => write!(f, "Breaker"),
        }
    }
}

/// Ownership state of a single edge. Claims never revert.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ownership {
    Unclaimed,
    Maker,
    Breaker,
}

impl From<Player> for Ownership {
    fn from(p: Player) -> Ownership {
        match p {
            Player::Maker => Ownership::Maker,
            Player::Breaker => Ownership::Breaker,
        }
    }
}

/// An undirected edge of K_n in canonical form `u < v`.
///
/// Serializes as the two-element array `[u, v]`, which is what the JSONL
/// transcript format uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "(usize, usize)", try_from = "(usize, usize)")]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Canonical edge between two distinct vertices.
    ///
    /// Panics on `u == v`; loops are a programming error here. Use
    /// [`Edge::try_new`] when the endpoints come from untrusted input.
    pub fn new(u: usize, v: usize) -> Edge {
        Edge::try_new(u, v).expect("loop edge (u, u) is not an edge of K_n")
    }

    /// Canonical edge, or `None` if `u == v`.
    pub fn try_new(u: usize, v: usize) -> Option<Edge> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Some(Edge { u, v }),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(Edge { u: v, v: u }),
        }
    }

    pub fn u(self) -> usize {
        self.u
    }

    pub fn v(self) -> usize {
        self.v
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn touches(self, w: usize) -> bool {
        self.u == w || self.v == w
    }

    /// The endpoint that is not `w`, if `w` is an endpoint at all.
    pub fn other(self, w: usize) -> Option<usize> {
        if self.u == w {
            Some(self.v)
        } else if self.v == w {
            Some(self.u)
        } else {
            None
        }
    }
}

impl From<Edge> for (usize, usize) {
    fn from(e: Edge) -> (usize, usize) {
        (e.u, e.v)
    }
}

impl TryFrom<(usize, usize)> for Edge {
    type Error = String;

    fn try_from((u, v): (usize, usize)) -> Result<Edge, String> {
        Edge::try_new(u, v).ok_or_else(|| format!("loop edge ({u}, {v})"))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// Position of `e` in the row-major triangular enumeration of K_n's edges:
/// (0,1), (0,2), …, (0,n-1), (1,2), …, (n-2,n-1).
///
/// This ordering is also the lexicographic order on `(u, v)`, so "the
/// lowest-indexed edge" and "the lexicographically least edge" coincide.
pub fn edge_index(n: usize, e: Edge) -> usize {
    debug_assert!(e.v < n);
    let u = e.u;
    // Edges with first endpoint < u: (n-1) + (n-2) + … + (n-u).
    u * (2 * n - u - 1) / 2 + (e.v - u - 1)
}

/// Inverse of [`edge_index`].
pub fn edge_at(n: usize, mut idx: usize) -> Edge {
    let mut u = 0;
    loop {
        let row = n - u - 1;
        if idx < row {
            return Edge { u, v: u + 1 + idx };
        }
        idx -= row;
        u += 1;
    }
}

/// One move of one player: every edge claimed in a single turn.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    /// 1-based, counted per mover: Breaker's k-th record and Maker's k-th
    /// record both carry round `k`.
    pub round: usize,
    pub mover: Player,
    pub edges: Vec<Edge>,
    /// Stage tag for strategies that report one (e.g. "stage1",
    /// "stage3.fallback"); absent for untagged moves.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annotation: Option<String>,
}

/// Running totals of edge ownership. Always sums to C(n,2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub unclaimed: usize,
    pub maker: usize,
    pub breaker: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoardError {
    #[error("a board needs at least one vertex")]
    ZeroVertices,
    #[error("({u}, {v}) is not an edge of K_{n}")]
    NoSuchEdge { u: usize, v: usize, n: usize },
    #[error("edge {edge} already claimed by {owner:?}")]
    AlreadyClaimed { edge: Edge, owner: Ownership },
    #[error("vertex {v} out of range for n = {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("a move must claim at least one edge")]
    EmptyMove,
}

/// Ownership state of all C(n,2) edges of K_n plus the move transcript.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Board {
    n: usize,
    own: Vec<Ownership>,
    counts: Counts,
    deg_maker: Vec<usize>,
    deg_breaker: Vec<usize>,
    deg_unclaimed: Vec<usize>,
    transcript: Vec<MoveRecord>,
    records_by: [usize; 2], // per-mover record counts, [maker, breaker]
}

impl Board {
    /// Fresh board on `n ≥ 1` vertices with every edge unclaimed.
    pub fn new(n: usize) -> Result<Board, BoardError> {
        if n == 0 {
            return Err(BoardError::ZeroVertices);
        }
        let m = n * (n - 1) / 2;
        Ok(Board {
            n,
            own: vec![Ownership::Unclaimed; m],
            counts: Counts { unclaimed: m, maker: 0, breaker: 0 },
            deg_maker: vec![0; n],
            deg_breaker: vec![0; n],
            deg_unclaimed: vec![n - 1; n],
            transcript: Vec::new(),
            records_by: [0, 0],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// C(n,2), the total number of board elements.
    pub fn edge_count(&self) -> usize {
        self.own.len()
    }

    pub fn counts(&self) -> Counts {
        self.counts
    }

    pub fn transcript(&self) -> &[MoveRecord] {
        &self.transcript
    }

    pub fn ownership_of(&self, e: Edge) -> Result<Ownership, BoardError> {
        self.check_edge(e)?;
        Ok(self.own[edge_index(self.n, e)])
    }

    /// Number of `mover`-owned edges at `v`.
    pub fn degree(&self, mover: Player, v: usize) -> usize {
        match mover {
            Player::Maker => self.deg_maker[v],
            Player::Breaker => self.deg_breaker[v],
        }
    }

    pub fn unclaimed_degree(&self, v: usize) -> usize {
        self.deg_unclaimed[v]
    }

    /// Minimum Maker degree over all vertices (the engine's cheap gate for
    /// Hamiltonicity detection: a Hamilton cycle needs minimum degree 2).
    pub fn min_degree(&self, mover: Player) -> usize {
        let deg = match mover {
            Player::Maker => &self.deg_maker,
            Player::Breaker => &self.deg_breaker,
        };
        deg.iter().copied().min().unwrap_or(0)
    }

    /// Claim a single edge. Equivalent to a one-edge [`Board::claim_many`]
    /// with no annotation.
    pub fn claim(&mut self, edge: Edge, mover: Player) -> Result<(), BoardError> {
        self.claim_many(mover, &[edge], None).map(|_| ())
    }

    /// Claim by endpoints; rejects loops and out-of-range pairs as
    /// `NoSuchEdge` (there are no loops in K_n).
    pub fn claim_pair(&mut self, u: usize, v: usize, mover: Player) -> Result<(), BoardError> {
        let n = self.n;
        let edge = Edge::try_new(u, v).ok_or(BoardError::NoSuchEdge { u, v, n })?;
        self.claim(edge, mover)
    }

    /// Claim a group of edges as one transcript record, atomically: either
    /// every edge is fresh and the whole move is applied, or nothing changes.
    ///
    /// The record's round number is derived automatically (this mover's
    /// record count + 1).
    pub fn claim_many(
        &mut self,
        mover: Player,
        edges: &[Edge],
        annotation: Option<&str>,
    ) -> Result<&MoveRecord, BoardError> {
        if edges.is_empty() {
            return Err(BoardError::EmptyMove);
        }
        // Validate everything before mutating anything.
        for (i, &e) in edges.iter().enumerate() {
            self.check_edge(e)?;
            let owner = self.own[edge_index(self.n, e)];
            if owner != Ownership::Unclaimed {
                return Err(BoardError::AlreadyClaimed { edge: e, owner });
            }
            if edges[..i].contains(&e) {
                return Err(BoardError::AlreadyClaimed { edge: e, owner: mover.into() });
            }
        }
        for &e in edges {
            self.own[edge_index(self.n, e)] = mover.into();
            self.counts.unclaimed -= 1;
            match mover {
                Player::Maker => {
                    self.counts.maker += 1;
                    self.deg_maker[e.u()] += 1;
                    self.deg_maker[e.v()] += 1;
                }
                Player::Breaker => {
                    self.counts.breaker += 1;
                    self.deg_breaker[e.u()] += 1;
                    self.deg_breaker[e.v()] += 1;
                }
            }
            self.deg_unclaimed[e.u()] -= 1;
            self.deg_unclaimed[e.v()] -= 1;
        }
        let slot = match mover {
            Player::Maker => 0,
            Player::Breaker => 1,
        };
        self.records_by[slot] += 1;
        self.transcript.push(MoveRecord {
            round: self.records_by[slot],
            mover,
            edges: edges.to_vec(),
            annotation: annotation.map(str::to_owned),
        });
        Ok(self.transcript.last().unwrap())
    }

    /// Unclaimed edges with endpoint `v`, in ascending other-endpoint order.
    pub fn unclaimed_incident(&self, v: usize) -> Result<Vec<Edge>, BoardError> {
        if v >= self.n {
            return Err(BoardError::VertexOutOfRange { v, n: self.n });
        }
        let mut out = Vec::with_capacity(self.deg_unclaimed[v]);
        for w in 0..self.n {
            if w == v {
                continue;
            }
            let e = Edge::new(v.min(w), v.max(w));
            if self.own[edge_index(self.n, e)] == Ownership::Unclaimed {
                out.push(e);
            }
        }
        Ok(out)
    }

    /// All unclaimed edges in ascending (lexicographic) order.
    pub fn iter_unclaimed(&self) -> impl Iterator<Item = Edge> + '_ {
        self.own
            .iter()
            .enumerate()
            .filter(|(_, &o)| o == Ownership::Unclaimed)
            .map(|(i, _)| edge_at(self.n, i))
    }

    /// Lowest-indexed unclaimed edge, the deterministic resolution of every
    /// "arbitrary unclaimed edge" in the strategies.
    pub fn first_unclaimed(&self) -> Option<Edge> {
        self.iter_unclaimed().next()
    }

    /// Snapshot of `mover`'s claimed edges as a graph on the same vertices.
    /// Later claims do not mutate the snapshot.
    pub fn player_graph(&self, mover: Player) -> crate::graph::Graph {
        let want: Ownership = mover.into();
        let mut g = crate::graph::Graph::new(self.n);
        for (i, &o) in self.own.iter().enumerate() {
            if o == want {
                let e = edge_at(self.n, i);
                g.add_edge(e.u(), e.v()).expect("board edges are valid");
            }
        }
        g
    }

    fn check_edge(&self, e: Edge) -> Result<(), BoardError> {
        if e.v() >= self.n {
            return Err(BoardError::NoSuchEdge { u: e.u(), v: e.v(), n: self.n });
        }
        Ok(())
    }
}

/// Write a transcript as JSONL: one record per line, fields
/// `{round, mover, edges:[[u,v],…], annotation}`.
pub fn write_transcript_jsonl<W: io::Write>(w: &mut W, records: &[MoveRecord]) -> io::Result<()> {
    for rec in records {
        let line = serde_json::to_string(rec).expect("move records always serialize");
        writeln!(w, "{line}")?;
    }
    Ok(())
}

#[derive(Debug, Error)]
pub enum TranscriptError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("transcript is empty")]
    Empty,
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Parse a JSONL transcript. Empty files are rejected; blank lines are not.
pub fn read_transcript_jsonl<R: io::BufRead>(r: R) -> Result<Vec<MoveRecord>, TranscriptError> {
    let mut records = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            return Err(TranscriptError::Parse { line: i + 1, message: "blank line".into() });
        }
        let rec: MoveRecord = serde_json::from_str(&line)
            .map_err(|e| TranscriptError::Parse { line: i + 1, message: e.to_string() })?;
        records.push(rec);
    }
    if records.is_empty() {
        return Err(TranscriptError::Empty);
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_board_sizes() {
        assert_eq!(Board::new(4).unwrap().counts().unclaimed, 6);
        assert_eq!(Board::new(1).unwrap().edge_count(), 0);
        assert_eq!(Board::new(3).unwrap().counts().unclaimed, 3);
        assert_eq!(Board::new(0).unwrap_err(), BoardError::ZeroVertices);
    }

    #[test]
    fn edge_canonical_form() {
        assert_eq!(Edge::new(3, 1), Edge::new(1, 3));
        assert_eq!(Edge::new(1, 3).endpoints(), (1, 3));
        assert_eq!(Edge::try_new(2, 2), None);
        assert_eq!(Edge::new(1, 3).other(3), Some(1));
        assert_eq!(Edge::new(1, 3).other(0), None);
    }

    #[test]
    fn edge_indexing_round_trips() {
        for n in 1..12 {
            for idx in 0..n * (n - 1) / 2 {
                let e = edge_at(n, idx);
                assert!(e.u() < e.v() && e.v() < n);
                assert_eq!(edge_index(n, e), idx);
            }
        }
    }

    #[test]
    fn claim_updates_counts() {
        let mut b = Board::new(4).unwrap();
        b.claim(Edge::new(0, 1), Player::Maker).unwrap();
        assert_eq!(b.counts(), Counts { unclaimed: 5, maker: 1, breaker: 0 });
        assert_eq!(b.ownership_of(Edge::new(0, 1)).unwrap(), Ownership::Maker);
        assert_eq!(b.degree(Player::Maker, 0), 1);
        assert_eq!(b.unclaimed_degree(0), 2);
    }

    #[test]
    fn double_claim_rejected() {
        let mut b = Board::new(4).unwrap();
        b.claim(Edge::new(0, 1), Player::Maker).unwrap();
        let err = b.claim(Edge::new(0, 1), Player::Breaker).unwrap_err();
        assert_eq!(
            err,
            BoardError::AlreadyClaimed { edge: Edge::new(0, 1), owner: Ownership::Maker }
        );
    }

    #[test]
    fn loops_are_no_such_edge() {
        let mut b = Board::new(4).unwrap();
        assert_eq!(
            b.claim_pair(5, 5, Player::Maker).unwrap_err(),
            BoardError::NoSuchEdge { u: 5, v: 5, n: 4 }
        );
        assert_eq!(
            b.claim(Edge::new(2, 7), Player::Maker).unwrap_err(),
            BoardError::NoSuchEdge { u: 2, v: 7, n: 4 }
        );
    }

    #[test]
    fn duplicate_within_group_rejected_atomically() {
        let mut b = Board::new(4).unwrap();
        let err = b
            .claim_many(Player::Breaker, &[Edge::new(0, 1), Edge::new(0, 2), Edge::new(0, 1)], None)
            .unwrap_err();
        assert!(matches!(err, BoardError::AlreadyClaimed { .. }));
        // Nothing was applied.
        assert_eq!(b.counts().unclaimed, 6);
        assert!(b.transcript().is_empty());
    }

    #[test]
    fn empty_move_rejected() {
        let mut b = Board::new(4).unwrap();
        assert_eq!(b.claim_many(Player::Maker, &[], None).unwrap_err(), BoardError::EmptyMove);
    }

    #[test]
    fn unclaimed_incident_ascending() {
        let mut b = Board::new(4).unwrap();
        assert_eq!(
            b.unclaimed_incident(0).unwrap(),
            vec![Edge::new(0, 1), Edge::new(0, 2), Edge::new(0, 3)]
        );
        b.claim(Edge::new(0, 1), Player::Breaker).unwrap();
        assert_eq!(b.unclaimed_incident(0).unwrap(), vec![Edge::new(0, 2), Edge::new(0, 3)]);
        b.claim(Edge::new(0, 2), Player::Maker).unwrap();
        b.claim(Edge::new(0, 3), Player::Breaker).unwrap();
        assert_eq!(b.unclaimed_incident(0).unwrap(), vec![]);
        assert_eq!(
            b.unclaimed_incident(9).unwrap_err(),
            BoardError::VertexOutOfRange { v: 9, n: 4 }
        );
    }

    #[test]
    fn round_numbers_count_per_mover() {
        let mut b = Board::new(4).unwrap();
        b.claim_many(Player::Breaker, &[Edge::new(0, 1), Edge::new(0, 2)], None).unwrap();
        b.claim_many(Player::Maker, &[Edge::new(1, 2)], Some("stage1")).unwrap();
        b.claim_many(Player::Breaker, &[Edge::new(0, 3)], None).unwrap();
        let rounds: Vec<_> = b.transcript().iter().map(|r| (r.mover, r.round)).collect();
        assert_eq!(
            rounds,
            vec![(Player::Breaker, 1), (Player::Maker, 1), (Player::Breaker, 2)]
        );
        assert_eq!(b.transcript()[1].annotation.as_deref(), Some("stage1"));
    }

    #[test]
    fn player_graph_snapshots() {
        let mut b = Board::new(4).unwrap();
        assert_eq!(b.player_graph(Player::Maker).edge_count(), 0);
        b.claim(Edge::new(0, 1), Player::Maker).unwrap();
        b.claim(Edge::new(1, 2), Player::Maker).unwrap();
        let g = b.player_graph(Player::Maker);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
        assert_eq!(g.degree(3), 0);
        // Snapshot does not see later claims.
        b.claim(Edge::new(2, 3), Player::Maker).unwrap();
        assert!(!g.has_edge(2, 3));

        let mut all = Board::new(4).unwrap();
        let edges: Vec<Edge> = all.iter_unclaimed().collect();
        all.claim_many(Player::Breaker, &edges, None).unwrap();
        let kb = all.player_graph(Player::Breaker);
        assert_eq!(kb.edge_count(), 6);
        assert_eq!(kb.min_degree(), 3);
    }

    #[test]
    fn transcript_jsonl_round_trip() {
        let mut b = Board::new(5).unwrap();
        b.claim_many(Player::Breaker, &[Edge::new(0, 1), Edge::new(2, 3)], None).unwrap();
        b.claim_many(Player::Maker, &[Edge::new(0, 2)], Some("stage1")).unwrap();
        let mut buf = Vec::new();
        write_transcript_jsonl(&mut buf, b.transcript()).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        // Edges serialize as [u, v] arrays.
        assert!(text.lines().next().unwrap().contains("[[0,1],[2,3]]"), "{text}");
        let back = read_transcript_jsonl(&buf[..]).unwrap();
        assert_eq!(back, b.transcript());
    }

    #[test]
    fn transcript_parse_errors_carry_line_numbers() {
        let bad = b"{\"round\":1,\"mover\":\"Breaker\",\"edges\":[[0,1]]}\nnot json\n";
        match read_transcript_jsonl(&bad[..]) {
            Err(TranscriptError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(read_transcript_jsonl(&b""[..]), Err(TranscriptError::Empty)));
        // A loop edge is rejected at deserialization time.
        let looped = b"{\"round\":1,\"mover\":\"Maker\",\"edges\":[[2,2]]}\n";
        assert!(matches!(
            read_transcript_jsonl(&looped[..]),
            Err(TranscriptError::Parse { line: 1, .. })
        ));
    }
}
