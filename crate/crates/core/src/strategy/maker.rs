//! Maker strategies: the min-degree builders S and S′ and the staged
//! Hamiltonicity Maker.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::annotations as tag;
use super::{MakerStrategy, Stage, StrategyError, StrategyProfile};
use crate::board::{Board, Edge, Ownership, Player};
use crate::graph::{find_spanning_path, posa_endpoints, spanning_closure_pairs, Graph};

/// True once every vertex has Maker-degree ≥ d_target — the min-degree
/// game's goal, consulted before each stage-1 move.
pub fn min_degree_goal_met(board: &Board, d_target: usize) -> bool {
    board.min_degree(Player::Maker) >= d_target
}

enum Pick {
    /// The minimum-Maker-degree vertex that is under target and still has
    /// an unclaimed incident edge (lowest index on ties).
    AtTarget(usize),
    /// Nothing eligible: either the goal is met, or every under-target
    /// vertex has been sealed off by Breaker.
    Fallback,
}

fn pick_vertex(board: &Board, d_target: usize) -> Pick {
    let mut best: Option<(usize, usize)> = None;
    for v in 0..board.n() {
        let deg = board.degree(Player::Maker, v);
        if deg < d_target && board.unclaimed_degree(v) > 0 && best.map_or(true, |(d, _)| deg < d)
        {
            best = Some((deg, v));
        }
    }
    match best {
        Some((_, v)) => Pick::AtTarget(v),
        None => Pick::Fallback,
    }
}

fn unclaimed_at(board: &Board, v: usize) -> Vec<Edge> {
    board.unclaimed_incident(v).expect("vertex index came from the board")
}

fn require_unclaimed(board: &Board) -> Result<(), StrategyError> {
    if board.counts().unclaimed == 0 {
        return Err(StrategyError::BoardFull);
    }
    Ok(())
}

fn is_unclaimed(board: &Board, e: Edge) -> bool {
    board.ownership_of(e) == Ok(Ownership::Unclaimed)
}

/// Strategy S: raise the minimum Maker-degree to d_target, resolving the
/// "arbitrary unclaimed edge at v" to the lowest-indexed one.
pub struct MakerS {
    d_target: usize,
}

impl MakerS {
    pub fn new(d_target: usize) -> Self {
        Self { d_target }
    }
}

impl MakerStrategy for MakerS {
    fn id(&self) -> &'static str {
        "maker.s"
    }

    fn choose(
        &mut self,
        board: &Board,
        _rng: &mut ChaCha8Rng,
    ) -> Result<(Edge, Option<&'static str>), StrategyError> {
        require_unclaimed(board)?;
        match pick_vertex(board, self.d_target) {
            Pick::AtTarget(v) => Ok((unclaimed_at(board, v)[0], None)),
            Pick::Fallback => {
                Ok((board.first_unclaimed().expect("board not full"), Some(tag::FALLBACK)))
            }
        }
    }
}

/// Shared S′ move: same vertex selection as S, uniformly random unclaimed
/// edge at it. The bool is true when the fallback branch fired.
fn sprime_move(
    board: &Board,
    d_target: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(Edge, bool), StrategyError> {
    require_unclaimed(board)?;
    match pick_vertex(board, d_target) {
        Pick::AtTarget(v) => {
            let edges = unclaimed_at(board, v);
            Ok((edges[rng.gen_range(0..edges.len())], false))
        }
        Pick::Fallback => Ok((board.first_unclaimed().expect("board not full"), true)),
    }
}

/// Strategy S′: as S but the edge at the chosen vertex is uniform over the
/// unclaimed candidates, drawn from the strategy's stream.
pub struct MakerSPrime {
    d_target: usize,
}

impl MakerSPrime {
    pub fn new(d_target: usize) -> Self {
        Self { d_target }
    }
}

impl MakerStrategy for MakerSPrime {
    fn id(&self) -> &'static str {
        "maker.sprime"
    }

    fn choose(
        &mut self,
        board: &Board,
        rng: &mut ChaCha8Rng,
    ) -> Result<(Edge, Option<&'static str>), StrategyError> {
        let (edge, fallback) = sprime_move(board, self.d_target, rng)?;
        Ok((edge, fallback.then_some(tag::FALLBACK)))
    }
}

/// Spanning-path search restarts the staged Maker is willing to pay for in
/// one booster move before falling back.
const ROTATION_EFFORT: usize = 8;

/// The staged Hamiltonicity Maker: build min-degree d_target with S′,
/// connect the components, then add boosters until the engine detects a
/// Hamilton cycle.
pub struct MakerHam {
    profile: StrategyProfile,
    stage: Stage,
    /// A spanning path of Maker's graph, once one has been found. Maker's
    /// graph only gains edges, so the path stays valid and later moves can
    /// re-run closures on it instead of searching from scratch.
    cached_path: Option<Vec<usize>>,
}

impl MakerHam {
    pub fn new(profile: StrategyProfile) -> Self {
        Self { profile, stage: Stage::MinDegree, cached_path: None }
    }

    fn connect_move(
        &self,
        board: &Board,
        g: &Graph,
    ) -> Result<(Edge, Option<&'static str>), StrategyError> {
        let mut comp_of = vec![0usize; board.n()];
        for (i, comp) in g.components().iter().enumerate() {
            for &v in comp {
                comp_of[v] = i;
            }
        }
        for e in board.iter_unclaimed() {
            if comp_of[e.u()] != comp_of[e.v()] {
                return Ok((e, Some(tag::STAGE2)));
            }
        }
        // Every cross edge is Breaker's: a loss-relevant event. Keep playing.
        Ok((board.first_unclaimed().expect("board not full"), Some(tag::STAGE2_FALLBACK)))
    }

    /// Escalating booster computation: single rotation closures on the
    /// cached spanning path, then the full double closure, then fresh path
    /// searches. Every emitted edge completes a Hamilton cycle through a
    /// rotation variant of a spanning path, so claims are sound boosters by
    /// construction regardless of which rung produced them.
    fn booster_move(
        &mut self,
        board: &Board,
        rng: &mut ChaCha8Rng,
    ) -> Result<(Edge, Option<&'static str>), StrategyError> {
        let g = board.player_graph(Player::Maker);
        if self.cached_path_is_stale(&g) {
            self.cached_path = None;
        }
        if self.cached_path.is_none() {
            self.cached_path = find_spanning_path(&g, rng, ROTATION_EFFORT);
        }
        if let Some(path) = self.cached_path.clone() {
            if let Some(edge) = lowest_unclaimed_single_closure(&g, board, &path) {
                return Ok((edge, Some(tag::STAGE3)));
            }
            let (pairs, hamiltonian) = spanning_closure_pairs(&g, &path);
            if hamiltonian {
                if let Some(edge) = lowest_unclaimed_non_edge(&g, board) {
                    return Ok((edge, Some(tag::STAGE3)));
                }
            }
            if let Some(edge) = pairs.into_iter().find(|&e| is_unclaimed(board, e)) {
                return Ok((edge, Some(tag::STAGE3)));
            }
            // This path is blocked everywhere; a different spanning path
            // may expose fresh boosters.
            for _ in 0..ROTATION_EFFORT {
                let Some(fresh) = find_spanning_path(&g, rng, 1) else { continue };
                let (pairs, hamiltonian) = spanning_closure_pairs(&g, &fresh);
                self.cached_path = Some(fresh);
                if hamiltonian {
                    if let Some(edge) = lowest_unclaimed_non_edge(&g, board) {
                        return Ok((edge, Some(tag::STAGE3)));
                    }
                }
                if let Some(edge) = pairs.into_iter().find(|&e| is_unclaimed(board, e)) {
                    return Ok((edge, Some(tag::STAGE3)));
                }
            }
        }
        // No booster reachable this turn: thicken the path ends, or failing
        // that take anything.
        if let Some(path) = &self.cached_path {
            let mut candidates: Vec<Edge> = Vec::new();
            for &end in [path.first(), path.last()].into_iter().flatten() {
                candidates.extend(unclaimed_at(board, end).first().copied());
            }
            if let Some(&edge) = candidates.iter().min() {
                return Ok((edge, Some(tag::STAGE3_FALLBACK)));
            }
        }
        Ok((board.first_unclaimed().expect("board not full"), Some(tag::STAGE3_FALLBACK)))
    }

    fn cached_path_is_stale(&self, g: &Graph) -> bool {
        match &self.cached_path {
            None => false,
            Some(path) => {
                path.len() != g.n()
                    || path.windows(2).any(|w| !g.has_edge(w[0], w[1]))
            }
        }
    }
}

/// Lowest unclaimed booster derivable from one closure per path
/// orientation — the cheap first rung of the ladder.
fn lowest_unclaimed_single_closure(g: &Graph, board: &Board, path: &[usize]) -> Option<Edge> {
    let mut pairs = BTreeSet::new();
    for oriented in [path.to_vec(), path.iter().rev().copied().collect()] {
        let Ok(cert) = posa_endpoints(g, &oriented) else { continue };
        for &f in &cert.reachable {
            if f != cert.fixed_endpoint && !g.has_edge(cert.fixed_endpoint, f) {
                pairs.insert(Edge::new(cert.fixed_endpoint, f));
            }
        }
    }
    pairs.into_iter().find(|&e| is_unclaimed(board, e))
}

/// Lowest unclaimed non-edge of `g` — the booster set of a graph that is
/// already Hamiltonian.
fn lowest_unclaimed_non_edge(g: &Graph, board: &Board) -> Option<Edge> {
    g.non_edges().into_iter().find(|&e| is_unclaimed(board, e))
}

impl MakerStrategy for MakerHam {
    fn id(&self) -> &'static str {
        "maker.ham"
    }

    fn stage(&self) -> Option<Stage> {
        Some(self.stage)
    }

    fn mark_done(&mut self) {
        self.stage = Stage::Done;
    }

    fn choose(
        &mut self,
        board: &Board,
        rng: &mut ChaCha8Rng,
    ) -> Result<(Edge, Option<&'static str>), StrategyError> {
        require_unclaimed(board)?;
        if self.stage == Stage::MinDegree && min_degree_goal_met(board, self.profile.d_target) {
            self.stage = Stage::Connect;
        }
        if self.stage == Stage::Connect {
            let g = board.player_graph(Player::Maker);
            if g.is_connected() {
                self.stage = Stage::Booster;
            } else {
                return self.connect_move(board, &g);
            }
        }
        match self.stage {
            Stage::MinDegree => {
                let (edge, fallback) = sprime_move(board, self.profile.d_target, rng)?;
                Ok((edge, Some(if fallback { tag::STAGE1_FALLBACK } else { tag::STAGE1 })))
            }
            Stage::Booster | Stage::Done => self.booster_move(board, rng),
            Stage::Connect => unreachable!("connect stage handled above"),
        }
    }
}
