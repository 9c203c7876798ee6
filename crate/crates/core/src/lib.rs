//! Simulation and verification engine for the biased (1:b) Maker-Breaker
//! Hamiltonicity game on the complete graph K_n.
//!
//! Maker claims one edge per turn, Breaker claims `b`; Breaker moves first,
//! and whoever faces an underfull board on their last turn takes everything
//! that is left. Maker wins if their edges ever contain a Hamilton cycle,
//! Breaker wins otherwise. This crate provides:
//!
//! * [`board`] — the K_n edge board, ownership bookkeeping, and the
//!   replayable move transcript (JSONL).
//! * [`graph`] — analysis of a single player's claimed edges: components,
//!   exact k-expander certification, exact longest-path / Hamiltonicity
//!   oracles, Pósa rotation-extension, and booster detection.
//! * [`strategy`] — pluggable Maker and Breaker strategies, including the
//!   min-degree strategies S and S′ and the three-stage Hamiltonicity Maker
//!   (min-degree, connect, booster), plus adversarial Breakers.
//! * [`engine`] — the referee: game loop, win detection, degree monitor,
//!   and transcript replay verification.
//! * [`theory`] — closed-form constants and the stage-1 failure-probability
//!   bound, evaluated in log domain with overflow-safe arithmetic.
//! * [`solver`] — exact memoized minimax for tiny boards over explicit
//!   winning-set hypergraphs; ground truth for rules and bias monotonicity.
//! * [`harness`] — seeded, parallel batch experiments with CSV summaries.
//! * [`suites`] — property suites (lemma1, lemma2, booster-soundness,
//!   replay, monotonicity) with verbatim counterexample reporting.

pub mod board;
pub mod engine;
pub mod graph;
pub mod harness;
pub mod solver;
pub mod strategy;
pub mod suites;
pub mod theory;

pub use board::{edge_at, edge_index, Board, BoardError, Counts, Edge, MoveRecord, Ownership, Player};
pub use engine::{
    derive_seed, gs_monitor, play_game, play_game_with, replay_verify, EngineError, GameConfig,
    GameResult, MonitorEvent, StageBoundaries,
};
pub use graph::{Graph, GraphError};
pub use harness::{
    resolve_bias, run_batch, run_experiment, ExperimentConfig, HarnessError, SummaryRow,
};
pub use solver::{
    bias_monotonicity_check, hamilton_winning_sets, solve, SolveResult, SolverError,
    WinningSetSystem,
};
pub use strategy::{
    breaker_strategy, maker_strategy, BreakerStrategy, MakerStrategy, Preset, ScriptedBreaker,
    ScriptedMaker, Stage, StrategyError, StrategyProfile, BREAKER_IDS, MAKER_IDS,
};
pub use suites::{run_property_suite, SuiteId, SuiteReport, UnknownSuite};
pub use theory::{constants, failure_bound, g_term, Constants, TheoryError};
