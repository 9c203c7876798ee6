//! Seeded batch experiments: run many games in parallel, write per-game
//! results, transcripts, and a one-row CSV summary.
//!
//! Determinism contract: game i plays under seed derive_seed(master, i),
//! so (config, master seed) fixes every output byte except the wall-time
//! field, regardless of the parallelism degree.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{write_transcript_jsonl, MoveRecord, Player};
use crate::engine::{derive_seed, play_game, EngineError, GameConfig, GameResult};
use crate::strategy::{Preset, StrategyProfile};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid experiment: {reason}")]
    Config { reason: String },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn config_error(reason: impl Into<String>) -> HarnessError {
    HarnessError::Config { reason: reason.into() }
}

/// A batch of games. The bias is given either absolutely (`bias`) or as a
/// coefficient c with b = ⌊c·n/ln n⌋ (`bias_coeff`); an absolute bias wins
/// when both are present, so command-line overrides compose predictably.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentConfig {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bias: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bias_coeff: Option<f64>,
    pub maker: String,
    pub breaker: String,
    pub games: usize,
    pub seed: u64,
    pub preset: Preset,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub move_cap: Option<usize>,
    #[serde(default)]
    pub monitor: bool,
    /// Worker threads; absent means the global default. Purely a speed
    /// knob — results do not depend on it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
}

/// Resolve a bias specification: an absolute `bias` wins when present,
/// otherwise b = ⌊coeff·n/ln n⌋; the result must be ≥ 1.
pub fn resolve_bias(
    n: usize,
    bias: Option<usize>,
    bias_coeff: Option<f64>,
) -> Result<usize, HarnessError> {
    let b = match (bias, bias_coeff) {
        (Some(b), _) => b,
        (None, Some(c)) => {
            if !c.is_finite() || c < 0.0 {
                return Err(config_error(format!("bias coefficient {c} must be ≥ 0")));
            }
            (c * n as f64 / (n as f64).ln()).floor() as usize
        }
        (None, None) => return Err(config_error("one of bias or biasCoeff is required")),
    };
    if b == 0 {
        return Err(config_error("resolved bias is 0; the game needs b ≥ 1"));
    }
    Ok(b)
}

impl ExperimentConfig {
    pub fn resolved_bias(&self) -> Result<usize, HarnessError> {
        resolve_bias(self.n, self.bias, self.bias_coeff)
    }

    pub fn profile(&self) -> Result<StrategyProfile, HarnessError> {
        let profile = match self.preset {
            Preset::Paper => StrategyProfile::paper(self.n),
            Preset::Desk => StrategyProfile::desk(self.n),
        };
        profile.map_err(|e| config_error(e.to_string()))
    }

    /// The per-game engine config for game `index`.
    pub fn game_config(&self, index: usize) -> Result<GameConfig, HarnessError> {
        if self.games == 0 {
            return Err(config_error("games must be at least 1"));
        }
        let mut game = GameConfig::new(
            self.n,
            self.resolved_bias()?,
            &self.maker,
            &self.breaker,
            self.profile()?,
            derive_seed(self.seed, index as u64),
        );
        game.move_cap = self.move_cap;
        game.monitor = self.monitor;
        game.validate()?;
        Ok(game)
    }
}

/// Aggregate of one experiment. Stage statistics cover games whose Maker
/// reports stages; the wall time is the only field exempt from the
/// determinism contract.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SummaryRow {
    pub n: usize,
    pub bias: usize,
    pub maker: String,
    pub breaker: String,
    pub games: usize,
    pub seed: u64,
    pub preset: Preset,
    pub maker_wins: usize,
    pub maker_win_rate: f64,
    pub cap_exceeded: usize,
    pub mean_maker_moves: f64,
    pub max_maker_moves: usize,
    pub mean_stage1_end: f64,
    pub max_stage1_end: usize,
    pub mean_stage2_end: f64,
    pub max_stage2_end: usize,
    pub monitor_violations: usize,
    pub fallback_moves: usize,
    pub wall_time_ms: u128,
}

impl SummaryRow {
    const CSV_HEADER: &'static str = "n,bias,maker,breaker,games,seed,preset,makerWins,\
        makerWinRate,capExceeded,meanMakerMoves,maxMakerMoves,meanStage1End,maxStage1End,\
        meanStage2End,maxStage2End,monitorViolations,fallbackMoves,wallTimeMs";

    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:?},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.bias,
            self.maker,
            self.breaker,
            self.games,
            self.seed,
            self.preset,
            self.maker_wins,
            self.maker_win_rate,
            self.cap_exceeded,
            self.mean_maker_moves,
            self.max_maker_moves,
            self.mean_stage1_end,
            self.max_stage1_end,
            self.mean_stage2_end,
            self.max_stage2_end,
            self.monitor_violations,
            self.fallback_moves,
            self.wall_time_ms,
        )
    }

    pub fn to_csv(&self) -> String {
        format!("{}\n{}\n", Self::CSV_HEADER, self.csv_row())
    }
}

fn summarize(
    config: &ExperimentConfig,
    bias: usize,
    games: &[(GameResult, Vec<MoveRecord>)],
    wall_time_ms: u128,
) -> SummaryRow {
    let results = || games.iter().map(|(r, _)| r);
    let maker_wins = results().filter(|r| r.winner == Player::Maker).count();
    let mean = |it: &mut dyn Iterator<Item = usize>| {
        let (sum, count) = it.fold((0usize, 0usize), |(s, c), v| (s + v, c + 1));
        if count == 0 {
            0.0
        } else {
            sum as f64 / count as f64
        }
    };
    let stage1: Vec<usize> = results().filter_map(|r| r.stage_boundaries.stage1_end).collect();
    let stage2: Vec<usize> = results().filter_map(|r| r.stage_boundaries.stage2_end).collect();
    SummaryRow {
        n: config.n,
        bias,
        maker: config.maker.clone(),
        breaker: config.breaker.clone(),
        games: games.len(),
        seed: config.seed,
        preset: config.preset,
        maker_wins,
        maker_win_rate: maker_wins as f64 / games.len().max(1) as f64,
        cap_exceeded: results().filter(|r| !r.within_cap).count(),
        mean_maker_moves: mean(&mut results().map(|r| r.maker_moves)),
        max_maker_moves: results().map(|r| r.maker_moves).max().unwrap_or(0),
        mean_stage1_end: mean(&mut stage1.iter().copied()),
        max_stage1_end: stage1.iter().copied().max().unwrap_or(0),
        mean_stage2_end: mean(&mut stage2.iter().copied()),
        max_stage2_end: stage2.iter().copied().max().unwrap_or(0),
        monitor_violations: results()
            .flat_map(|r| &r.monitor_verdicts)
            .filter(|e| e.violated)
            .count(),
        fallback_moves: results().map(|r| r.fallbacks.values().sum::<usize>()).sum(),
        wall_time_ms,
    }
}

/// Play the whole batch, in parallel, in game-index order.
pub fn run_batch(
    config: &ExperimentConfig,
) -> Result<Vec<(GameResult, Vec<MoveRecord>)>, HarnessError> {
    let game_configs: Result<Vec<GameConfig>, HarnessError> =
        (0..config.games).map(|i| config.game_config(i)).collect();
    let game_configs = game_configs?;
    let play_all = || {
        game_configs
            .par_iter()
            .map(play_game)
            .collect::<Result<Vec<_>, EngineError>>()
            .map_err(HarnessError::from)
    };
    match config.jobs {
        None => play_all(),
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| config_error(e.to_string()))?
            .install(play_all),
    }
}

/// Run the batch and write the experiment directory: `config.json`,
/// `results.jsonl` (one result per line, game order), one transcript per
/// game under `transcripts/`, and a one-row `summary.csv`.
pub fn run_experiment(config: &ExperimentConfig, out_dir: &Path) -> Result<SummaryRow, HarnessError> {
    let started = Instant::now();
    let bias = config.resolved_bias()?;
    let games = run_batch(config)?;

    let transcripts = out_dir.join("transcripts");
    fs::create_dir_all(&transcripts)?;
    fs::write(out_dir.join("config.json"), serde_json::to_string_pretty(config)?)?;

    let mut results = BufWriter::new(File::create(out_dir.join("results.jsonl"))?);
    for (result, _) in &games {
        serde_json::to_writer(&mut results, result)?;
        results.write_all(b"\n")?;
    }
    results.flush()?;

    for (index, (_, records)) in games.iter().enumerate() {
        let path = transcripts.join(format!("game-{index:04}.jsonl"));
        let mut w = BufWriter::new(File::create(path)?);
        write_transcript_jsonl(&mut w, records)?;
        w.flush()?;
    }

    let row = summarize(config, bias, &games, started.elapsed().as_millis());
    fs::write(out_dir.join("summary.csv"), row.to_csv())?;
    Ok(row)
}
