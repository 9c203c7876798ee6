//! Breaker strategies: the random baseline, two degree attackers, and the
//! booster blocker.

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use std::cmp::Reverse;

use super::{BreakerStrategy, StrategyError};
use crate::board::{Board, Edge, Ownership, Player};
use crate::graph::rotation_boosters;

fn is_unclaimed(board: &Board, e: Edge) -> bool {
    board.ownership_of(e) == Ok(Ownership::Unclaimed)
}

/// Run the batch attack pattern shared by the degree attackers: pick a
/// target vertex, claim its unclaimed edges in ascending order until it is
/// exhausted or the quota is met, then re-target against the updated
/// position. Claims are simulated on a scratch board so each re-targeting
/// sees the turn's earlier claims.
fn claim_batches(
    board: &Board,
    quota: usize,
    mut target: impl FnMut(&Board) -> Option<usize>,
) -> Vec<Edge> {
    let mut scratch = board.clone();
    let mut picked = Vec::new();
    'turn: while picked.len() < quota {
        let Some(v) = target(&scratch) else { break };
        for e in scratch.unclaimed_incident(v).expect("target vertex is on the board") {
            scratch.claim(e, Player::Breaker).expect("edge was unclaimed");
            picked.push(e);
            if picked.len() == quota {
                break 'turn;
            }
        }
    }
    picked
}

/// Uniform baseline: a uniformly random subset of the unclaimed edges,
/// reported in ascending order.
pub struct BreakerRandom;

impl BreakerStrategy for BreakerRandom {
    fn id(&self) -> &'static str {
        "breaker.random"
    }

    fn choose(
        &mut self,
        board: &Board,
        quota: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<Vec<Edge>, StrategyError> {
        let pool: Vec<Edge> = board.iter_unclaimed().collect();
        if quota >= pool.len() {
            return Ok(pool);
        }
        let mut picked: Vec<Edge> = pool.choose_multiple(rng, quota).copied().collect();
        picked.sort_unstable();
        Ok(picked)
    }
}

/// The vertex the isolator attacks next: an untouched vertex (Maker-degree
/// zero) closest to isolation — highest Breaker-degree, ties to the lowest
/// index — or, once Maker has touched everything, the vertex of minimum
/// Maker-degree.
fn isolation_target(board: &Board) -> Option<usize> {
    let mut untouched: Option<(Reverse<usize>, usize)> = None;
    let mut touched: Option<(usize, usize)> = None;
    for v in 0..board.n() {
        if board.unclaimed_degree(v) == 0 {
            continue;
        }
        if board.degree(Player::Maker, v) == 0 {
            let key = (Reverse(board.degree(Player::Breaker, v)), v);
            if untouched.map_or(true, |best| key < best) {
                untouched = Some(key);
            }
        } else {
            let key = (board.degree(Player::Maker, v), v);
            if touched.map_or(true, |best| key < best) {
                touched = Some(key);
            }
        }
    }
    untouched.map(|(_, v)| v).or(touched.map(|(_, v)| v))
}

/// Vertex isolator: pour the whole quota into cutting one vertex off,
/// re-targeting whenever the current victim runs out of unclaimed edges.
pub struct BreakerIsolator;

impl BreakerStrategy for BreakerIsolator {
    fn id(&self) -> &'static str {
        "breaker.isolator"
    }

    fn choose(
        &mut self,
        board: &Board,
        quota: usize,
        _rng: &mut ChaCha8Rng,
    ) -> Result<Vec<Edge>, StrategyError> {
        Ok(claim_batches(board, quota, isolation_target))
    }
}

/// The min-degree attacker's target: minimum Maker-degree, ties broken
/// toward more remaining unclaimed edges (the vertex that is still most
/// attackable), then the lowest index.
fn mindeg_target(board: &Board) -> Option<usize> {
    let mut best: Option<(usize, Reverse<usize>, usize)> = None;
    for v in 0..board.n() {
        let unclaimed = board.unclaimed_degree(v);
        if unclaimed == 0 {
            continue;
        }
        let key = (board.degree(Player::Maker, v), Reverse(unclaimed), v);
        if best.map_or(true, |b| key < b) {
            best = Some(key);
        }
    }
    best.map(|(_, _, v)| v)
}

/// Min-degree attacker: starve whichever vertex Maker has helped least.
pub struct BreakerMinDeg;

impl BreakerStrategy for BreakerMinDeg {
    fn id(&self) -> &'static str {
        "breaker.mindeg"
    }

    fn choose(
        &mut self,
        board: &Board,
        quota: usize,
        _rng: &mut ChaCha8Rng,
    ) -> Result<Vec<Edge>, StrategyError> {
        Ok(claim_batches(board, quota, mindeg_target))
    }
}

/// Path restarts the blocker spends estimating Maker's booster set.
const BLOCKER_EFFORT: usize = 4;

/// Booster blocker: once Maker's graph could plausibly carry a spanning
/// path (connected with at least n−1 edges), estimate Maker's rotation
/// boosters and claim them first; fill any leftover quota with min-degree
/// attacks. Before that point it plays exactly like the min-degree
/// attacker, since Maker has no boosters to deny.
pub struct BreakerBlocker;

impl BreakerStrategy for BreakerBlocker {
    fn id(&self) -> &'static str {
        "breaker.blocker"
    }

    fn choose(
        &mut self,
        board: &Board,
        quota: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<Vec<Edge>, StrategyError> {
        let g = board.player_graph(Player::Maker);
        let mut picked: Vec<Edge> = Vec::new();
        if g.n() >= 3 && g.edge_count() + 1 >= g.n() && g.is_connected() {
            for e in rotation_boosters(&g, rng, BLOCKER_EFFORT).pairs {
                if picked.len() == quota {
                    break;
                }
                if is_unclaimed(board, e) {
                    picked.push(e);
                }
            }
        }
        if picked.len() < quota {
            let mut scratch = board.clone();
            for &e in &picked {
                scratch.claim(e, Player::Breaker).expect("booster pick was unclaimed");
            }
            picked.extend(claim_batches(&scratch, quota - picked.len(), mindeg_target));
            picked.sort_unstable();
        }
        Ok(picked)
    }
}
