#![allow(dead_code)]
//! Fixtures shared between the integration suites.

use rand_chacha::ChaCha8Rng;

use hamgame_core::board::{edge_at, Board, Edge, Ownership, Player};
use hamgame_core::solver::{best_turn, hamilton_winning_sets, solve, WinningSetSystem};
use hamgame_core::{
    play_game_with, BreakerStrategy, GameConfig, MakerStrategy, StrategyError, StrategyProfile,
};

/// Failure-bound grid (δ = 0.5, k₀ = ⌊n/128⌋): `(n, δ, k₀, ln bound)`.
///
/// The logs are pinned from the exact big-integer oracle in
/// `theory_oracle.rs` (`print_grid_oracle_values`); the live suite
/// recomputes them from scratch on every run.
pub const FAILURE_BOUND_GRID: [(u64, f64, u64, f64); 4] = [
    (1_000, 0.5, 7, -28.553_615_497_650_81),
    (10_000, 0.5, 78, -67.148_052_206_180_18),
    (100_000, 0.5, 781, -104.046_938_872_357_3),
    (1_000_000, 0.5, 7_812, -140.893_963_000_591_4),
];

/// The board's ownership vector in the solver's canonical edge order.
fn position(board: &Board) -> Vec<Ownership> {
    let n = board.n();
    (0..n * (n - 1) / 2)
        .map(|idx| board.ownership_of(edge_at(n, idx)).expect("index in range"))
        .collect()
}

struct SolverMaker {
    system: WinningSetSystem,
    bias: usize,
}

impl MakerStrategy for SolverMaker {
    fn id(&self) -> &'static str {
        "maker.solver"
    }

    fn choose(
        &mut self,
        board: &Board,
        _rng: &mut ChaCha8Rng,
    ) -> Result<(Edge, Option<&'static str>), StrategyError> {
        let turn = best_turn(&self.system, self.bias, &position(board), Player::Maker)
            .expect("solver move for Maker");
        // The solver's line ends once the position is decided (every winning
        // set spoiled); the engine still plays the board out, so any legal
        // edge does from there.
        let edge = match turn.first() {
            Some(&idx) => edge_at(board.n(), idx),
            None => board.first_unclaimed().expect("engine only asks on a live board"),
        };
        Ok((edge, None))
    }
}

struct SolverBreaker {
    system: WinningSetSystem,
    bias: usize,
}

impl BreakerStrategy for SolverBreaker {
    fn id(&self) -> &'static str {
        "breaker.solver"
    }

    fn choose(
        &mut self,
        board: &Board,
        quota: usize,
        _rng: &mut ChaCha8Rng,
    ) -> Result<Vec<Edge>, StrategyError> {
        let turn = best_turn(&self.system, self.bias, &position(board), Player::Breaker)
            .expect("solver move for Breaker");
        assert!(turn.len() <= quota, "solver honors the remainder rule");
        let mut edges: Vec<Edge> = turn.iter().map(|&idx| edge_at(board.n(), idx)).collect();
        // Decided positions cut the solver's line short; pad with arbitrary
        // unclaimed edges to honor the quota.
        for e in board.iter_unclaimed() {
            if edges.len() == quota {
                break;
            }
            if !edges.contains(&e) {
                edges.push(e);
            }
        }
        Ok(edges)
    }
}

pub struct SelfPlay {
    pub predicted: Player,
    pub played: Player,
    pub within_cap: bool,
}

/// Solve K_n Hamiltonicity at bias `bias`, then play the game through the
/// real engine with both sides taking the solver's principal-variation
/// moves; returns the predicted and the played winner.
pub fn solver_self_play(n: usize, bias: usize) -> SelfPlay {
    let system = hamilton_winning_sets(n).expect("tiny n");
    let fresh = vec![Ownership::Unclaimed; system.board_size()];
    let predicted = solve(&system, bias, &fresh, Player::Breaker).expect("solvable").winner;

    let profile = StrategyProfile::desk(16).unwrap();
    let config = GameConfig::new(n, bias, "maker.solver", "breaker.solver", profile, 0);
    let mut maker = SolverMaker { system: system.clone(), bias };
    let mut breaker = SolverBreaker { system, bias };
    let (result, _records) = play_game_with(&config, &mut maker, &mut breaker).expect("legal game");
    SelfPlay { predicted, played: result.winner, within_cap: result.within_cap }
}
