//! Property suites: randomized checks of the structural facts the rest of
//! the crate leans on, each reporting counterexamples verbatim (edge lists
//! and parameters) so a failure is reproducible without re-running.
//!
//! `lemma1` checks the booster count of connected non-Hamiltonian
//! k-expanders, `lemma2` the component-size bound of certified expanders,
//! `booster-soundness` that rotation boosters are a subset of the exact
//! booster set, `replay` that game transcripts survive replay
//! verification, and `monotonicity` that the Maker-win predicate is
//! downward closed in the bias.

use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::engine::{derive_seed, play_game, replay_verify, GameConfig};
use crate::graph::{
    boosters_exact, complete_bipartite, complete_graph, is_hamiltonian_exact, is_k_expander,
    rotation_boosters, Graph,
};
use crate::solver::{bias_monotonicity_check, hamilton_winning_sets, WinningSetSystem};
use crate::strategy::{StrategyProfile, BREAKER_IDS, MAKER_IDS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteId {
    Lemma1,
    Lemma2,
    BoosterSoundness,
    Replay,
    Monotonicity,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown suite {0:?}; expected one of lemma1, lemma2, booster-soundness, replay, monotonicity")]
pub struct UnknownSuite(pub String);

impl FromStr for SuiteId {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lemma1" => Ok(SuiteId::Lemma1),
            "lemma2" => Ok(SuiteId::Lemma2),
            "booster-soundness" => Ok(SuiteId::BoosterSoundness),
            "replay" => Ok(SuiteId::Replay),
            "monotonicity" => Ok(SuiteId::Monotonicity),
            other => Err(UnknownSuite(other.to_owned())),
        }
    }
}

impl SuiteId {
    pub const ALL: [SuiteId; 5] = [
        SuiteId::Lemma1,
        SuiteId::Lemma2,
        SuiteId::BoosterSoundness,
        SuiteId::Replay,
        SuiteId::Monotonicity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Lemma1 => "lemma1",
            SuiteId::Lemma2 => "lemma2",
            SuiteId::BoosterSoundness => "booster-soundness",
            SuiteId::Replay => "replay",
            SuiteId::Monotonicity => "monotonicity",
        }
    }

    /// Sample budget used when the caller does not supply one; sized to the
    /// acceptance thresholds.
    pub fn default_budget(self) -> usize {
        match self {
            SuiteId::Lemma1 => 200,
            SuiteId::Lemma2 => 1000,
            SuiteId::BoosterSoundness => 500,
            SuiteId::Replay => 100,
            SuiteId::Monotonicity => 8,
        }
    }
}

/// Outcome of one suite run. `samples` counts instances examined,
/// `checked` the ones where the property's precondition held (and the
/// property was therefore actually asserted); a run that never checks
/// anything does not pass.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteReport {
    pub suite: &'static str,
    pub samples: usize,
    pub checked: usize,
    pub violations: Vec<String>,
    pub wall_time_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checked > 0 && self.violations.is_empty()
    }
}

/// Stream indices for [`derive_seed`], so suites draw independently of the
/// games they spawn.
const SUITE_STREAM: u64 = 0x51;
const REPLAY_STREAM: u64 = 0x52;

/// Run one suite with `budget` samples (checked instances for lemma1,
/// examined instances otherwise), deterministically in `seed`.
pub fn run_property_suite(id: SuiteId, budget: usize, seed: u64) -> SuiteReport {
    let started = Instant::now();
    let budget = budget.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, SUITE_STREAM));
    let (samples, checked, violations) = match id {
        SuiteId::Lemma1 => lemma1(budget, &mut rng),
        SuiteId::Lemma2 => lemma2(budget, &mut rng),
        SuiteId::BoosterSoundness => booster_soundness(budget, &mut rng),
        SuiteId::Replay => replay_suite(budget, seed),
        SuiteId::Monotonicity => monotonicity(budget, &mut rng),
    };
    SuiteReport {
        suite: id.name(),
        samples,
        checked,
        violations,
        wall_time_ms: started.elapsed().as_millis(),
    }
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}

/// Booster count of connected, non-Hamiltonian, exactly certified
/// k-expanders: at least (k+1)²/2. Samples are complete bipartite graphs
/// K_{2k,m} (k-expanders by construction, never Hamiltonian since m > 2k)
/// randomly perturbed by edge deletions and insertions, with every
/// precondition re-certified from scratch — perturbed graphs that lose
/// connectivity, lose expansion, or become Hamiltonian are discarded, so
/// `checked` counts only genuine lemma instances.
fn lemma1(budget: usize, rng: &mut ChaCha8Rng) -> (usize, usize, Vec<String>) {
    let mut samples = 0;
    let mut checked = 0;
    let mut violations = Vec::new();
    while checked < budget && samples < 60 * budget {
        samples += 1;
        let k = rng.gen_range(1..=3usize);
        let a = 2 * k;
        let m = rng.gen_range(a + 1..=14 - a);
        let mut g = complete_bipartite(a, m);
        if rng.gen_bool(0.5) {
            for _ in 0..rng.gen_range(1..=k) {
                let edges = g.edges();
                let e = edges[rng.gen_range(0..edges.len())];
                g.remove_edge(e.u(), e.v()).expect("edge of g");
            }
        }
        if rng.gen_bool(0.4) {
            for _ in 0..rng.gen_range(1..=2usize) {
                let non = g.non_edges();
                if non.is_empty() {
                    break;
                }
                let e = non[rng.gen_range(0..non.len())];
                g.add_edge(e.u(), e.v()).expect("non-edge of g");
            }
        }
        if !g.is_connected()
            || !is_k_expander(&g, k).expect("within budget").holds()
            || is_hamiltonian_exact(&g).expect("n ≤ 14")
        {
            continue;
        }
        checked += 1;
        let boosters = boosters_exact(&g).expect("n ≤ 14");
        if 2 * boosters.len() < (k + 1) * (k + 1) {
            violations.push(format!(
                "lemma1: k={k}, |boosters|={} < (k+1)^2/2; graph:\n{}",
                boosters.len(),
                g.to_edge_list()
            ));
        }
    }
    (samples, checked, violations)
}

/// Component sizes of certified k-expanders: every component has ≥ 3k
/// vertices. Random graphs are mixed with complete and complete-bipartite
/// ones so a healthy fraction actually certifies.
fn lemma2(budget: usize, rng: &mut ChaCha8Rng) -> (usize, usize, Vec<String>) {
    let mut checked = 0;
    let mut violations = Vec::new();
    for _ in 0..budget {
        let k = rng.gen_range(1..=4usize);
        let g = match rng.gen_range(0..5u8) {
            0 => complete_graph(rng.gen_range(3..=20)),
            1 => {
                let a = rng.gen_range(2..=8usize);
                let b = rng.gen_range(a..=(20 - a));
                complete_bipartite(a, b)
            }
            _ => {
                let n = rng.gen_range(3..=20);
                gnp(n, rng.gen_range(0.1..0.9), rng)
            }
        };
        if !is_k_expander(&g, k).expect("within budget").holds() {
            continue;
        }
        checked += 1;
        for comp in g.components() {
            if comp.len() < 3 * k {
                violations.push(format!(
                    "lemma2: k={k}, component {comp:?} has {} < {} vertices; graph:\n{}",
                    comp.len(),
                    3 * k,
                    g.to_edge_list()
                ));
            }
        }
    }
    (budget, checked, violations)
}

/// Rotation-derived boosters are a subset of the exact booster set, on
/// random graphs small enough for the exact oracle.
fn booster_soundness(budget: usize, rng: &mut ChaCha8Rng) -> (usize, usize, Vec<String>) {
    let mut violations = Vec::new();
    for _ in 0..budget {
        let n = rng.gen_range(4..=14);
        let g = gnp(n, rng.gen_range(0.15..0.85), rng);
        let rotation = rotation_boosters(&g, rng, 4);
        let exact = boosters_exact(&g).expect("n ≤ 14");
        for &pair in &rotation.pairs {
            if !exact.contains(pair) {
                violations.push(format!(
                    "booster-soundness: rotation pair {pair} is not an exact booster; graph:\n{}",
                    g.to_edge_list()
                ));
            }
        }
    }
    (budget, budget, violations)
}

/// Full games under random configurations replay to the identical result.
fn replay_suite(budget: usize, seed: u64) -> (usize, usize, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, REPLAY_STREAM));
    let mut violations = Vec::new();
    for game in 0..budget {
        let n = rng.gen_range(6..=24);
        let mut config = GameConfig::new(
            n,
            rng.gen_range(1..=4),
            MAKER_IDS[rng.gen_range(0..MAKER_IDS.len())],
            BREAKER_IDS[rng.gen_range(0..BREAKER_IDS.len())],
            StrategyProfile::desk(n.max(16)).expect("desk profile"),
            derive_seed(seed, game as u64),
        );
        config.monitor = rng.gen_bool(0.5);
        let describe = |c: &GameConfig| {
            format!("n={}, b={}, {} vs {}, seed={}", c.n, c.bias, c.maker, c.breaker, c.seed)
        };
        match play_game(&config) {
            Ok((result, records)) => match replay_verify(&records, &config) {
                Ok(replayed) if replayed == result => {}
                Ok(replayed) => violations.push(format!(
                    "replay: result mismatch for {}: {result:?} vs {replayed:?}",
                    describe(&config)
                )),
                Err(e) => violations
                    .push(format!("replay: verification failed for {}: {e}", describe(&config))),
            },
            Err(e) => {
                violations.push(format!("replay: game failed for {}: {e}", describe(&config)))
            }
        }
    }
    (budget, budget, violations)
}

/// Maker-win downward closure in the bias: exact on the K_4 and K_5
/// Hamiltonicity systems, plus random small winning-set systems (the
/// closure argument applies to any monotone game).
fn monotonicity(budget: usize, rng: &mut ChaCha8Rng) -> (usize, usize, Vec<String>) {
    let mut violations = Vec::new();
    let mut samples = 0;
    let mut checked = 0;
    let mut check = |label: String, system: &WinningSetSystem, b_max: usize| match bias_monotonicity_check(system, b_max) {
        Ok(true) => true,
        Ok(false) => {
            violations.push(format!("monotonicity: not downward closed for {label}"));
            true
        }
        Err(e) => {
            violations.push(format!("monotonicity: solver error for {label}: {e}"));
            false
        }
    };

    for (n, b_max) in [(4, 6), (5, 4)] {
        samples += 1;
        let system = hamilton_winning_sets(n).expect("tiny n");
        if check(format!("K_{n} Hamiltonicity, bMax={b_max}"), &system, b_max) {
            checked += 1;
        }
    }
    while samples < budget {
        samples += 1;
        let board = rng.gen_range(6..=9usize);
        let sets: Vec<Vec<usize>> = (0..rng.gen_range(2..=4usize))
            .map(|_| {
                let size = rng.gen_range(2..=3usize);
                let mut set = Vec::new();
                while set.len() < size {
                    let e = rng.gen_range(0..board);
                    if !set.contains(&e) {
                        set.push(e);
                    }
                }
                set
            })
            .collect();
        let system = WinningSetSystem::new(board, &sets).expect("sets are in range");
        if check(format!("random system {sets:?} on {board} elements, bMax=4"), &system, 4) {
            checked += 1;
        }
    }
    (samples, checked, violations)
}
