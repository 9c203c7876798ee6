//! `hamgame` — command-line front end for the biased Maker-Breaker
//! Hamiltonicity toolkit.
//!
//! Subcommands:
//! - `play`: one seeded game, result as JSON (optionally archived to a dir)
//! - `experiment`: a seeded batch with per-game transcripts and a CSV summary
//! - `verify`: the property suites (lemma1, lemma2, booster-soundness,
//!   replay, monotonicity)
//! - `solve`: exact minimax on tiny winning-set systems
//! - `bound`: the failure-probability bound and the constants block as CSV
//! - `replay`: re-derive a game from its transcript and check every rule
//!
//! Everything is deterministic in (config, seed) except wall-time fields.

use std::error::Error;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use hamgame_core::board::{read_transcript_jsonl, write_transcript_jsonl, Ownership, Player};
use hamgame_core::solver::{hamilton_winning_sets, solve, WinningSetSystem};
use hamgame_core::suites::{run_property_suite, SuiteId};
use hamgame_core::theory;
use hamgame_core::{
    play_game, replay_verify, resolve_bias, run_experiment, ExperimentConfig, GameConfig, Preset,
    StrategyProfile,
};

#[derive(Parser)]
#[command(name = "hamgame", version, about = "Biased Maker-Breaker Hamiltonicity game runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play one seeded game and print its result as JSON.
    Play(PlayArgs),
    /// Run a seeded batch of games; write transcripts, results, and a summary.
    Experiment(ExperimentArgs),
    /// Run property suites and report violations verbatim.
    Verify(VerifyArgs),
    /// Solve a tiny winning-set game exactly (fresh board, Breaker first).
    Solve(SolveArgs),
    /// Tabulate the failure bound, or the constants block with --constants.
    Bound(BoundArgs),
    /// Re-verify a transcript against its config and print the result.
    Replay(ReplayArgs),
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    match s {
        "paper" => Ok(Preset::Paper),
        "desk" => Ok(Preset::Desk),
        other => Err(format!("unknown profile {other:?}; expected paper or desk")),
    }
}

fn profile_for(preset: Preset, n: usize) -> Result<StrategyProfile, Box<dyn Error>> {
    let profile = match preset {
        Preset::Paper => StrategyProfile::paper(n)?,
        Preset::Desk => StrategyProfile::desk(n)?,
    };
    Ok(profile)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Box<dyn Error>> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Box<dyn Error>> {
    let file = File::open(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(serde_json::from_reader(BufReader::new(file))?)
}

#[derive(Args)]
struct PlayArgs {
    /// Number of vertices of K_n.
    #[arg(long)]
    n: usize,
    /// Breaker's bias b; wins over --bias-coeff when both are given.
    #[arg(long)]
    bias: Option<usize>,
    /// Bias coefficient c, resolved as b = ⌊c·n/ln n⌋.
    #[arg(long)]
    bias_coeff: Option<f64>,
    #[arg(long, default_value = "maker.ham")]
    maker: String,
    #[arg(long, default_value = "breaker.random")]
    breaker: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Strategy parameter preset: paper or desk.
    #[arg(long, default_value = "desk", value_parser = parse_preset)]
    profile: Preset,
    /// Maker-move budget (default 14n).
    #[arg(long)]
    move_cap: Option<usize>,
    /// Run the degree monitor over the finished transcript.
    #[arg(long)]
    monitor: bool,
    /// Also write config.json, result.json, and transcript.jsonl here.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run_play(args: PlayArgs) -> Result<u8, Box<dyn Error>> {
    let bias = resolve_bias(args.n, args.bias, args.bias_coeff)?;
    let profile = profile_for(args.profile, args.n)?;
    let mut config = GameConfig::new(args.n, bias, &args.maker, &args.breaker, profile, args.seed);
    config.move_cap = args.move_cap;
    config.monitor = args.monitor;
    let (result, records) = play_game(&config)?;
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)?;
        write_json(&dir.join("config.json"), &config)?;
        write_json(&dir.join("result.json"), &result)?;
        let mut w = BufWriter::new(File::create(dir.join("transcript.jsonl"))?);
        write_transcript_jsonl(&mut w, &records)?;
        w.flush()?;
    }
    println!("{}", serde_json::to_string_pretty(&result)?);
    Ok(0)
}

#[derive(Args)]
struct ExperimentArgs {
    /// Experiment config as JSON; the flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (config echo, results.jsonl, transcripts/, summary.csv).
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    n: Option<usize>,
    /// Absolute bias override; wins over --bias-coeff.
    #[arg(long)]
    bias: Option<usize>,
    #[arg(long)]
    bias_coeff: Option<f64>,
    #[arg(long)]
    maker: Option<String>,
    #[arg(long)]
    breaker: Option<String>,
    #[arg(long)]
    games: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_parser = parse_preset)]
    profile: Option<Preset>,
    #[arg(long)]
    move_cap: Option<usize>,
    /// Turn the degree monitor on for every game.
    #[arg(long)]
    monitor: bool,
    /// Worker threads (speed knob only; results are independent of it).
    #[arg(long)]
    jobs: Option<usize>,
}

/// File-less default: a small smoke batch at the n/ln n bias shape.
fn default_experiment() -> ExperimentConfig {
    ExperimentConfig {
        n: 100,
        bias: None,
        bias_coeff: Some(0.3),
        maker: "maker.ham".into(),
        breaker: "breaker.random".into(),
        games: 10,
        seed: 0,
        preset: Preset::Desk,
        move_cap: None,
        monitor: false,
        jobs: None,
    }
}

fn run_experiment_cmd(args: ExperimentArgs) -> Result<u8, Box<dyn Error>> {
    let mut config: ExperimentConfig = match &args.config {
        Some(path) => read_json(path)?,
        None => default_experiment(),
    };
    if let Some(n) = args.n {
        config.n = n;
    }
    // A bias flag replaces the file's bias spec wholesale, so a coefficient
    // on the command line is not shadowed by an absolute bias in the file.
    if args.bias.is_some() {
        config.bias = args.bias;
    } else if args.bias_coeff.is_some() {
        config.bias = None;
    }
    if args.bias_coeff.is_some() {
        config.bias_coeff = args.bias_coeff;
    }
    if let Some(maker) = args.maker {
        config.maker = maker;
    }
    if let Some(breaker) = args.breaker {
        config.breaker = breaker;
    }
    if let Some(games) = args.games {
        config.games = games;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(preset) = args.profile {
        config.preset = preset;
    }
    if args.move_cap.is_some() {
        config.move_cap = args.move_cap;
    }
    if args.monitor {
        config.monitor = true;
    }
    if args.jobs.is_some() {
        config.jobs = args.jobs;
    }
    let row = run_experiment(&config, &args.out)?;
    print!("{}", row.to_csv());
    Ok(0)
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite id (lemma1, lemma2, booster-soundness, replay, monotonicity) or "all".
    #[arg(long, default_value = "all")]
    suite: String,
    /// Sample budget; each suite has its own default.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn run_verify(args: VerifyArgs) -> Result<u8, Box<dyn Error>> {
    let suites: Vec<SuiteId> = if args.suite == "all" {
        SuiteId::ALL.to_vec()
    } else {
        vec![args.suite.parse()?]
    };
    let mut failed = false;
    for id in suites {
        let budget = args.budget.unwrap_or_else(|| id.default_budget());
        let report = run_property_suite(id, budget, args.seed);
        let status = if report.passed() { "PASS" } else { "FAIL" };
        println!(
            "suite {}: {status} ({} samples, {} checked, {} violations, {} ms)",
            report.suite,
            report.samples,
            report.checked,
            report.violations.len(),
            report.wall_time_ms
        );
        for violation in &report.violations {
            println!("  violation: {violation}");
        }
        failed = failed || !report.passed();
    }
    Ok(if failed { 1 } else { 0 })
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("system").required(true).args(["hamilton", "fixture"]))]
struct SolveArgs {
    /// Hamiltonicity on K_n (n ≤ 7), winning sets = the (n−1)!/2 cycles.
    #[arg(long)]
    hamilton: Option<usize>,
    /// Winning-set system from a text fixture (one set per line).
    #[arg(long)]
    fixture: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    bias: usize,
}

fn run_solve(args: SolveArgs) -> Result<u8, Box<dyn Error>> {
    let system: WinningSetSystem = match (args.hamilton, &args.fixture) {
        (Some(n), _) => hamilton_winning_sets(n)?,
        (None, Some(path)) => WinningSetSystem::from_text(&fs::read_to_string(path)?)?,
        (None, None) => unreachable!("clap enforces the system group"),
    };
    let position = vec![Ownership::Unclaimed; system.board_size()];
    let result = solve(&system, args.bias, &position, Player::Breaker)?;
    println!("{}", serde_json::to_string_pretty(&result)?);
    Ok(0)
}

#[derive(Args)]
struct BoundArgs {
    /// Evaluation points (repeatable).
    #[arg(long, required_unless_present = "ln_n")]
    n: Vec<u64>,
    #[arg(long, default_value_t = 0.5)]
    delta: f64,
    /// Absolute k0; wins over --k0-div.
    #[arg(long)]
    k0: Option<u64>,
    /// Derived k0 = ⌊n / k0-div⌋.
    #[arg(long, default_value_t = 128)]
    k0_div: u64,
    /// Print the constants block (lnN,delta0,delta,epsilon,k0,bias) instead.
    #[arg(long)]
    constants: bool,
    /// Constants mode only: evaluate at these ln n directly (repeatable);
    /// the regime ε < 1 needs ln n > 810000, beyond any real n.
    #[arg(long)]
    ln_n: Vec<f64>,
}

fn run_bound(args: BoundArgs) -> Result<u8, Box<dyn Error>> {
    if args.constants {
        println!("lnN,delta0,delta,epsilon,k0,bias");
        let fmt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        for &n in &args.n {
            let c = theory::constants(Some(n as f64), None)?;
            println!(
                "{},{},{},{},{},{}",
                c.ln_n,
                c.delta0,
                c.delta,
                c.epsilon,
                fmt(c.k0),
                fmt(c.bias)
            );
        }
        for &ln_n in &args.ln_n {
            let c = theory::constants(None, Some(ln_n))?;
            println!(
                "{},{},{},{},{},{}",
                c.ln_n,
                c.delta0,
                c.delta,
                c.epsilon,
                fmt(c.k0),
                fmt(c.bias)
            );
        }
        return Ok(0);
    }
    if args.k0_div == 0 {
        return Err("--k0-div must be positive".into());
    }
    println!("n,delta,k0,logBound");
    for &n in &args.n {
        let k0 = args.k0.unwrap_or(n / args.k0_div);
        let log_bound = theory::failure_bound(n, args.delta, k0)?;
        println!("{n},{},{k0},{log_bound}", args.delta);
    }
    Ok(0)
}

#[derive(Args)]
struct ReplayArgs {
    /// Transcript JSONL (defaults to the experiment's game transcript).
    #[arg(long, required_unless_present = "experiment")]
    transcript: Option<PathBuf>,
    /// Game config JSON, as written by `play --out`.
    #[arg(long, conflicts_with = "experiment")]
    config: Option<PathBuf>,
    /// Experiment directory, as written by `experiment --out`.
    #[arg(long)]
    experiment: Option<PathBuf>,
    /// Game index within the experiment directory.
    #[arg(long, default_value_t = 0)]
    game: usize,
}

fn run_replay(args: ReplayArgs) -> Result<u8, Box<dyn Error>> {
    let (config, transcript_path) = match (&args.experiment, &args.config) {
        (Some(dir), _) => {
            let experiment: ExperimentConfig = read_json(&dir.join("config.json"))?;
            let config = experiment.game_config(args.game)?;
            let path = args
                .transcript
                .clone()
                .unwrap_or_else(|| dir.join("transcripts").join(format!("game-{:04}.jsonl", args.game)));
            (config, path)
        }
        (None, Some(config_path)) => {
            let config: GameConfig = read_json(config_path)?;
            let path = args.transcript.clone().expect("clap enforces --transcript without --experiment");
            (config, path)
        }
        (None, None) => return Err("replay needs --config or --experiment".into()),
    };
    let file = File::open(&transcript_path).map_err(|e| format!("{}: {e}", transcript_path.display()))?;
    let records = read_transcript_jsonl(BufReader::new(file))?;
    let result = replay_verify(&records, &config)?;
    println!("{}", serde_json::to_string_pretty(&result)?);
    Ok(0)
}

fn run(command: Command) -> Result<u8, Box<dyn Error>> {
    match command {
        Command::Play(args) => run_play(args),
        Command::Experiment(args) => run_experiment_cmd(args),
        Command::Verify(args) => run_verify(args),
        Command::Solve(args) => run_solve(args),
        Command::Bound(args) => run_bound(args),
        Command::Replay(args) => run_replay(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
