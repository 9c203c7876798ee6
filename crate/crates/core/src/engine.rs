//! The referee: game loop, win detection, the degree monitor, and
//! transcript replay verification.
//!
//! Rules implemented here: Breaker moves first and claims `b` edges per
//! round, Maker claims one; a player facing a board with fewer unclaimed
//! edges than their quota takes everything that is left (the remainder
//! rule). Maker wins the moment their graph contains a Hamilton cycle;
//! Breaker wins on board exhaustion. Games that reach the move cap without
//! a Maker win are recorded as cap-exceeded and score for Breaker.
//!
//! Win detection is exact for n ≤ 18. Beyond that the engine searches for
//! a constructive witness by rotation, so a win may be detected a few
//! rounds later than it mathematically occurred — never earlier, and never
//! without a verified Hamilton cycle in hand. Cap accounting uses detection
//! time.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{Board, MoveRecord, Player};
use crate::graph::{find_hamilton_cycle_rotation, hamilton_cycle_exact, is_hamilton_cycle};
use crate::strategy::{
    breaker_strategy, maker_strategy, BreakerStrategy, MakerStrategy, StrategyProfile,
};

/// Largest n for which every Maker move is followed by an exact
/// Hamiltonicity test (bitmask DP). Above this the detector is
/// rotation-based and constructive.
pub const EXACT_DETECTION_MAX_N: usize = 18;

/// Spanning-path restarts per rotation-based detection attempt.
const DETECTOR_RESTARTS: usize = 2;

const MAKER_STREAM: u64 = 1;
const BREAKER_STREAM: u64 = 2;
const DETECTOR_STREAM: u64 = 3;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("invalid config: {reason}")]
    Config { reason: String },
    #[error("{mover:?} strategy {id:?} faulted at round {round}: {message}")]
    StrategyFault { mover: Player, id: String, round: usize, message: String },
    #[error("illegal transcript at record {index}: {reason}")]
    IllegalTranscript { index: usize, reason: String },
}

/// Everything that determines a game: (config, seed) fixes every byte of
/// the result and transcript.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GameConfig {
    pub n: usize,
    /// Breaker's bias b ≥ 1.
    pub bias: usize,
    /// Maker strategy id, e.g. "maker.ham".
    pub maker: String,
    /// Breaker strategy id, e.g. "breaker.random".
    pub breaker: String,
    pub profile: StrategyProfile,
    pub seed: u64,
    /// Maker-move budget; defaults to 14n when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub move_cap: Option<usize>,
    /// Run the degree monitor over the finished transcript.
    #[serde(default)]
    pub monitor: bool,
}

impl GameConfig {
    pub fn new(
        n: usize,
        bias: usize,
        maker: &str,
        breaker: &str,
        profile: StrategyProfile,
        seed: u64,
    ) -> Self {
        Self {
            n,
            bias,
            maker: maker.to_owned(),
            breaker: breaker.to_owned(),
            profile,
            seed,
            move_cap: None,
            monitor: false,
        }
    }

    pub fn move_cap(&self) -> usize {
        self.move_cap.unwrap_or(14 * self.n)
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        let fail = |reason: &str| Err(EngineError::Config { reason: reason.to_owned() });
        if self.n < 2 {
            return fail("n must be at least 2");
        }
        if self.bias == 0 {
            return fail("bias must be at least 1");
        }
        if self.move_cap() == 0 {
            return fail("move cap must be at least 1");
        }
        self.profile
            .validate()
            .map_err(|e| EngineError::Config { reason: e.to_string() })
    }
}

/// Maker-move indices at which the staged Maker left stages 1 and 2
/// (derived from transcript annotations; absent for unstaged Makers).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StageBoundaries {
    pub stage1_end: Option<usize>,
    pub stage2_end: Option<usize>,
}

/// One firing of the degree monitor: the first moment Breaker's degree at
/// `vertex` reached the threshold ⌈(1−δ)n⌉.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MonitorEvent {
    pub vertex: usize,
    pub breaker_degree_at_trigger: usize,
    pub maker_degree_at_trigger: usize,
    /// Breaker round of the trigger; 0 means "before any move" (threshold
    /// zero, a vacuous parameterization that is still reported honestly).
    pub round: usize,
    /// Maker's degree was still below d_target when the trigger fired.
    pub violated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GameResult {
    pub winner: Player,
    pub maker_moves: usize,
    /// Completed Breaker-led rounds.
    pub total_rounds: usize,
    pub stage_boundaries: StageBoundaries,
    pub monitor_verdicts: Vec<MonitorEvent>,
    /// False iff the game was stopped by the move cap.
    pub within_cap: bool,
    pub seed: u64,
    /// The verified Hamilton cycle, as a vertex sequence, for Maker wins.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hamilton_witness: Option<Vec<usize>>,
    /// Count of Maker moves per fallback annotation (empty when none).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub fallbacks: BTreeMap<String, usize>,
}

/// splitmix64 — the standard 64-bit mixer, used to derive independent
/// seeds: per-stream within a game and per-game within an experiment.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for a derived stream: game seed = derive_seed(master, game index);
/// within a game the maker, breaker, and detector streams use indices 1–3.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}

/// Win detector with its own random stream so that maker/breaker draws are
/// unaffected by how often detection runs.
struct Detector {
    rng: ChaCha8Rng,
}

impl Detector {
    fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// A verified Hamilton cycle in Maker's graph, if one is found. Cheap
    /// necessary conditions gate the search; beyond the exact cap a miss
    /// is possible (and means detection happens on a later move).
    fn detect(&mut self, board: &Board) -> Option<Vec<usize>> {
        let n = board.n();
        if n < 3 || board.counts().maker < n || board.min_degree(Player::Maker) < 2 {
            return None;
        }
        let g = board.player_graph(Player::Maker);
        if !g.is_connected() {
            return None;
        }
        let cycle = if n <= EXACT_DETECTION_MAX_N {
            hamilton_cycle_exact(&g).expect("n is within the exact cap")
        } else {
            find_hamilton_cycle_rotation(&g, &mut self.rng, DETECTOR_RESTARTS)
        }?;
        // A win is only ever declared on a checked witness.
        is_hamilton_cycle(&g, &cycle).then_some(cycle)
    }
}

fn fault(mover: Player, id: &str, round: usize, message: impl ToString) -> EngineError {
    EngineError::StrategyFault { mover, id: id.to_owned(), round, message: message.to_string() }
}

/// Play one game, resolving the strategies named in the config.
pub fn play_game(config: &GameConfig) -> Result<(GameResult, Vec<MoveRecord>), EngineError> {
    let mut maker = maker_strategy(&config.maker, &config.profile)
        .map_err(|e| EngineError::Config { reason: e.to_string() })?;
    let mut breaker = breaker_strategy(&config.breaker)
        .map_err(|e| EngineError::Config { reason: e.to_string() })?;
    play_game_with(config, maker.as_mut(), breaker.as_mut())
}

/// Play one game with caller-supplied strategy instances (scripted
/// replays, solver-backed oracles); the config's id strings are not
/// consulted for strategy construction.
pub fn play_game_with(
    config: &GameConfig,
    maker: &mut dyn MakerStrategy,
    breaker: &mut dyn BreakerStrategy,
) -> Result<(GameResult, Vec<MoveRecord>), EngineError> {
    config.validate()?;
    let mut board = Board::new(config.n).expect("validated n");
    let mut maker_rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, MAKER_STREAM));
    let mut breaker_rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, BREAKER_STREAM));
    let mut detector = Detector::new(derive_seed(config.seed, DETECTOR_STREAM));

    let cap = config.move_cap();
    let mut maker_moves = 0usize;
    let mut round = 0usize;
    let mut winner = Player::Breaker;
    let mut witness = None;
    let mut within_cap = true;

    loop {
        let unclaimed = board.counts().unclaimed;
        if unclaimed == 0 {
            break;
        }
        round += 1;

        let quota = config.bias.min(unclaimed);
        let edges = breaker
            .choose(&board, quota, &mut breaker_rng)
            .map_err(|e| fault(Player::Breaker, breaker.id(), round, e))?;
        if edges.len() != quota {
            let msg = format!("returned {} edges against a quota of {quota}", edges.len());
            return Err(fault(Player::Breaker, breaker.id(), round, msg));
        }
        board
            .claim_many(Player::Breaker, &edges, None)
            .map_err(|e| fault(Player::Breaker, breaker.id(), round, e))?;
        if board.counts().unclaimed == 0 {
            break;
        }

        let (edge, annotation) = maker
            .choose(&board, &mut maker_rng)
            .map_err(|e| fault(Player::Maker, maker.id(), round, e))?;
        board
            .claim_many(Player::Maker, &[edge], annotation)
            .map_err(|e| fault(Player::Maker, maker.id(), round, e))?;
        maker_moves += 1;

        if let Some(cycle) = detector.detect(&board) {
            winner = Player::Maker;
            witness = Some(cycle);
            maker.mark_done();
            break;
        }
        if maker_moves >= cap {
            within_cap = false;
            break;
        }
        if board.counts().unclaimed == 0 {
            break;
        }
    }

    let result = finish(&board, config, winner, witness, maker_moves, within_cap);
    Ok((result, board.transcript().to_vec()))
}

/// Assemble the result record from the finished board.
fn finish(
    board: &Board,
    config: &GameConfig,
    winner: Player,
    witness: Option<Vec<usize>>,
    maker_moves: usize,
    within_cap: bool,
) -> GameResult {
    let records = board.transcript();
    let total_rounds = records.last().map_or(0, |r| r.round);

    let mut stage1_end = 0usize;
    let mut stage2_end = 0usize;
    let mut staged = false;
    let mut fallbacks: BTreeMap<String, usize> = BTreeMap::new();
    let mut maker_index = 0usize;
    for rec in records.iter().filter(|r| r.mover == Player::Maker) {
        maker_index += 1;
        let Some(a) = rec.annotation.as_deref() else { continue };
        if a.starts_with("stage1") {
            staged = true;
            stage1_end = maker_index;
        } else if a.starts_with("stage2") {
            staged = true;
            stage2_end = maker_index;
        } else if a.starts_with("stage3") {
            staged = true;
        }
        if a.ends_with("fallback") {
            *fallbacks.entry(a.to_owned()).or_insert(0) += 1;
        }
    }
    let stage_boundaries = if staged {
        StageBoundaries {
            stage1_end: Some(stage1_end),
            stage2_end: Some(stage2_end.max(stage1_end)),
        }
    } else {
        StageBoundaries { stage1_end: None, stage2_end: None }
    };

    let monitor_verdicts =
        if config.monitor { gs_monitor(board, &config.profile) } else { Vec::new() };

    GameResult {
        winner,
        maker_moves,
        total_rounds,
        stage_boundaries,
        monitor_verdicts,
        within_cap,
        seed: config.seed,
        hamilton_witness: witness,
        fallbacks,
    }
}

/// Degree monitor, evaluated over a board's transcript: for each vertex,
/// at the first moment Breaker's degree reaches ⌈(1−δ)n⌉ (clamped at 0),
/// record Maker's degree there and flag a violation if it is below
/// d_target. A threshold of 0 — which is what the Paper preset produces at
/// any feasible n, since its δ exceeds 1 — fires for every vertex before
/// the first move.
pub fn gs_monitor(board: &Board, profile: &StrategyProfile) -> Vec<MonitorEvent> {
    let n = board.n();
    let threshold = ((1.0 - profile.delta) * n as f64).ceil().max(0.0) as usize;
    if threshold == 0 {
        return (0..n)
            .map(|vertex| MonitorEvent {
                vertex,
                breaker_degree_at_trigger: 0,
                maker_degree_at_trigger: 0,
                round: 0,
                violated: profile.d_target > 0,
            })
            .collect();
    }
    let mut maker_deg = vec![0usize; n];
    let mut breaker_deg = vec![0usize; n];
    let mut fired = vec![false; n];
    let mut events = Vec::new();
    for rec in board.transcript() {
        match rec.mover {
            Player::Maker => {
                for e in &rec.edges {
                    maker_deg[e.u()] += 1;
                    maker_deg[e.v()] += 1;
                }
            }
            Player::Breaker => {
                for e in &rec.edges {
                    for v in [e.u(), e.v()] {
                        breaker_deg[v] += 1;
                        if !fired[v] && breaker_deg[v] >= threshold {
                            fired[v] = true;
                            events.push(MonitorEvent {
                                vertex: v,
                                breaker_degree_at_trigger: breaker_deg[v],
                                maker_degree_at_trigger: maker_deg[v],
                                round: rec.round,
                                violated: maker_deg[v] < profile.d_target,
                            });
                        }
                    }
                }
            }
        }
    }
    events
}

/// Re-execute a transcript under the config's rules, checking legality
/// record by record, and recompute the result from scratch. The winner is
/// re-derived with the same seeded detector, so a verified transcript of
/// `play_game` output yields an identical `GameResult`.
pub fn replay_verify(
    records: &[MoveRecord],
    config: &GameConfig,
) -> Result<GameResult, EngineError> {
    config.validate()?;
    let illegal = |index: usize, reason: String| EngineError::IllegalTranscript { index, reason };

    let mut board = Board::new(config.n).expect("validated n");
    let mut detector = Detector::new(derive_seed(config.seed, DETECTOR_STREAM));
    let cap = config.move_cap();
    let mut maker_moves = 0usize;
    let mut winner = Player::Breaker;
    let mut witness = None;
    let mut within_cap = true;
    let mut ended = false;

    for (index, rec) in records.iter().enumerate() {
        if ended {
            return Err(illegal(index, "record after the game ended".to_owned()));
        }
        let expected_mover = if index % 2 == 0 { Player::Breaker } else { Player::Maker };
        if rec.mover != expected_mover {
            return Err(illegal(index, format!("expected {expected_mover:?} to move")));
        }
        let expected_round = index / 2 + 1;
        if rec.round != expected_round {
            return Err(illegal(
                index,
                format!("round {} where {expected_round} was expected", rec.round),
            ));
        }
        let unclaimed = board.counts().unclaimed;
        let expected_count = match rec.mover {
            Player::Breaker => config.bias.min(unclaimed),
            Player::Maker => 1,
        };
        if rec.edges.len() != expected_count {
            return Err(illegal(
                index,
                format!("{} edges where {expected_count} were expected", rec.edges.len()),
            ));
        }
        board
            .claim_many(rec.mover, &rec.edges, rec.annotation.as_deref())
            .map_err(|e| illegal(index, e.to_string()))?;
        match rec.mover {
            Player::Breaker => {
                if board.counts().unclaimed == 0 {
                    ended = true;
                }
            }
            Player::Maker => {
                maker_moves += 1;
                if let Some(cycle) = detector.detect(&board) {
                    winner = Player::Maker;
                    witness = Some(cycle);
                    ended = true;
                } else if maker_moves >= cap {
                    within_cap = false;
                    ended = true;
                } else if board.counts().unclaimed == 0 {
                    ended = true;
                }
            }
        }
    }
    if !ended {
        return Err(illegal(records.len(), "transcript ends before the game does".to_owned()));
    }
    Ok(finish(&board, config, winner, witness, maker_moves, within_cap))
}
