//! Exact minimax solver for tiny Maker-Breaker boards.
//!
//! The board here is an abstract ground set of elements with an explicit
//! hypergraph of winning sets, so the solver doubles as a ground-truth
//! oracle for the graph engine: encode K_n's edges as elements, the
//! Hamilton cycles as winning sets, and compare outcomes.
//!
//! Rules match the engine exactly — Breaker moves first and claims
//! min(b, unclaimed) elements per turn (the remainder rule lives in the
//! move generator), Maker claims one, and Maker wins iff some winning set
//! ends up fully Maker-owned. There are no draws: once every winning set
//! contains a Breaker element the game is decided. Search is plain
//! memoized exhaustion over ownership states — no pruning heuristics, the
//! point is trustworthiness on ≤ 16 elements, not speed.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::board::{edge_index, Edge, Ownership, Player};

/// Hard cap on `solve` board size; the memo key packs two 16-bit masks.
pub const SOLVE_MAX_ELEMENTS: usize = 16;
/// Hard cap for [`hamilton_winning_sets`]; (n−1)!/2 grows too fast beyond.
pub const HAMILTON_SETS_MAX_N: usize = 7;
/// Systems hold at most 64 elements (sets are u64 bitmasks).
pub const SYSTEM_MAX_ELEMENTS: usize = 64;

#[derive(Debug, Error, PartialEq)]
pub enum SolverError {
    #[error("{what} is {got}, limit {limit}")]
    TooLarge { what: &'static str, got: usize, limit: usize },
    #[error("winning set {index} is empty")]
    EmptySet { index: usize },
    #[error("winning set {set} contains element {element}, but the board has {board_size}")]
    ElementOutOfRange { set: usize, element: usize, board_size: usize },
    #[error("bias must be at least 1")]
    ZeroBias,
    #[error("position has {got} elements, system has {expected}")]
    PositionMismatch { got: usize, expected: usize },
    #[error("fixture parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// An explicit Maker-Breaker hypergraph: `board_size` elements and a family
/// of winning sets over them. Only minimal sets need storing — the win
/// condition is monotone, so supersets are implied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WinningSetSystem {
    board_size: usize,
    sets: Vec<u64>,
}

impl WinningSetSystem {
    pub fn new(board_size: usize, sets: &[Vec<usize>]) -> Result<Self, SolverError> {
        if board_size > SYSTEM_MAX_ELEMENTS {
            return Err(SolverError::TooLarge {
                what: "board",
                got: board_size,
                limit: SYSTEM_MAX_ELEMENTS,
            });
        }
        let mut masks = Vec::with_capacity(sets.len());
        for (index, set) in sets.iter().enumerate() {
            if set.is_empty() {
                return Err(SolverError::EmptySet { index });
            }
            let mut mask = 0u64;
            for &element in set {
                if element >= board_size {
                    return Err(SolverError::ElementOutOfRange { set: index, element, board_size });
                }
                mask |= 1 << element;
            }
            masks.push(mask);
        }
        Ok(Self { board_size, sets: masks })
    }

    pub fn board_size(&self) -> usize {
        self.board_size
    }

    pub fn set_count(&self) -> usize {
        self.sets.len()
    }

    /// The winning sets, decoded to ascending element lists.
    pub fn sets(&self) -> Vec<Vec<usize>> {
        self.sets
            .iter()
            .map(|&mask| (0..self.board_size).filter(|&e| mask >> e & 1 == 1).collect())
            .collect()
    }

    /// Text fixture format: optional `# elements = k` header (otherwise the
    /// board size is inferred as max element + 1), then one winning set per
    /// line as space-separated element indices.
    pub fn from_text(text: &str) -> Result<Self, SolverError> {
        let mut board_size: Option<usize> = None;
        let mut sets: Vec<Vec<usize>> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                let comment = comment.trim();
                if let Some(rest) = comment.strip_prefix("elements") {
                    let value = rest.trim_start_matches([' ', '=', ':']).trim();
                    board_size =
                        Some(value.parse().map_err(|e| SolverError::Parse {
                            line: lineno + 1,
                            message: format!("bad element count {value:?}: {e}"),
                        })?);
                }
                continue;
            }
            let mut set = Vec::new();
            for token in line.split_whitespace() {
                set.push(token.parse().map_err(|e| SolverError::Parse {
                    line: lineno + 1,
                    message: format!("bad element {token:?}: {e}"),
                })?);
            }
            sets.push(set);
        }
        let board_size = board_size.unwrap_or_else(|| {
            sets.iter().flat_map(|s| s.iter().copied()).max().map_or(0, |m| m + 1)
        });
        Self::new(board_size, &sets)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# elements = {}\n", self.board_size);
        for set in self.sets() {
            let line: Vec<String> = set.iter().map(usize::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// All distinct Hamilton cycles of K_n as edge sets over the canonical
/// triangular edge indexing — the minimal winning-set encoding of the
/// Hamiltonicity game ((n−1)!/2 sets of n edges each).
pub fn hamilton_winning_sets(n: usize) -> Result<WinningSetSystem, SolverError> {
    if n > HAMILTON_SETS_MAX_N {
        return Err(SolverError::TooLarge { what: "n", got: n, limit: HAMILTON_SETS_MAX_N });
    }
    let mut sets = Vec::new();
    if n >= 3 {
        // Cycles as vertex sequences anchored at 0; requiring the second
        // vertex to be smaller than the last kills the reflection.
        let mut rest: Vec<usize> = (1..n).collect();
        permute(&mut rest, 0, &mut |perm| {
            if perm[0] < perm[n - 2] {
                let mut set = Vec::with_capacity(n);
                let mut prev = 0;
                for &v in perm {
                    set.push(edge_index(n, Edge::new(prev, v)));
                    prev = v;
                }
                set.push(edge_index(n, Edge::new(prev, 0)));
                sets.push(set);
            }
        });
    }
    WinningSetSystem::new(n * (n - 1) / 2, &sets)
}

fn permute(items: &mut Vec<usize>, start: usize, visit: &mut impl FnMut(&[usize])) {
    if start == items.len() {
        visit(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permute(items, start + 1, visit);
        items.swap(start, i);
    }
}

/// One turn of a principal variation: every element `mover` claims before
/// the turn passes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PvTurn {
    pub mover: Player,
    pub elements: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SolveResult {
    pub winner: Player,
    pub states_visited: u64,
    /// One optimal line from the given position, grouped per turn.
    pub principal_variation: Vec<PvTurn>,
}

/// Exact winner from `position` with `to_move` about to start a fresh turn.
///
/// Deterministic: among equally optimal claims the lowest element index is
/// preferred, so the principal variation is reproducible.
pub fn solve(
    system: &WinningSetSystem,
    b: usize,
    position: &[Ownership],
    to_move: Player,
) -> Result<SolveResult, SolverError> {
    solve_with_rules(system, b, position, to_move, &Rules::standard(b)?)
}

/// Optimal claims for `to_move`'s next full turn — the head of the
/// principal variation. Empty when the board is already exhausted.
pub fn best_turn(
    system: &WinningSetSystem,
    b: usize,
    position: &[Ownership],
    to_move: Player,
) -> Result<Vec<usize>, SolverError> {
    let result = solve(system, b, position, to_move)?;
    match result.principal_variation.into_iter().next() {
        Some(turn) => {
            debug_assert_eq!(turn.mover, to_move);
            Ok(turn.elements)
        }
        None => Ok(Vec::new()),
    }
}

/// True iff the Maker-win predicate over b ∈ {1..b_max} is downward
/// closed — the bias-monotonicity theorem, checked exactly.
pub fn bias_monotonicity_check(
    system: &WinningSetSystem,
    b_max: usize,
) -> Result<bool, SolverError> {
    let fresh = vec![Ownership::Unclaimed; system.board_size()];
    downward_closed(b_max, |b| {
        Ok(solve(system, b, &fresh, Player::Breaker)?.winner == Player::Maker)
    })
}

fn downward_closed(
    b_max: usize,
    mut maker_wins: impl FnMut(usize) -> Result<bool, SolverError>,
) -> Result<bool, SolverError> {
    let mut lost_already = false;
    for b in 1..=b_max {
        let win = maker_wins(b)?;
        if win && lost_already {
            return Ok(false);
        }
        lost_already |= !win;
    }
    Ok(true)
}

/// Per-mover claim quotas. The standard game is (1, b); tests inject broken
/// variants to exercise the monotonicity checker.
struct Rules {
    maker_quota: usize,
    breaker_quota: usize,
}

impl Rules {
    fn standard(b: usize) -> Result<Self, SolverError> {
        if b == 0 {
            return Err(SolverError::ZeroBias);
        }
        Ok(Self { maker_quota: 1, breaker_quota: b })
    }

    fn quota(&self, mover: Player) -> usize {
        match mover {
            Player::Maker => self.maker_quota,
            Player::Breaker => self.breaker_quota,
        }
    }
}

fn solve_with_rules(
    system: &WinningSetSystem,
    b: usize,
    position: &[Ownership],
    to_move: Player,
    rules: &Rules,
) -> Result<SolveResult, SolverError> {
    if b == 0 {
        return Err(SolverError::ZeroBias);
    }
    if system.board_size() > SOLVE_MAX_ELEMENTS {
        return Err(SolverError::TooLarge {
            what: "board",
            got: system.board_size(),
            limit: SOLVE_MAX_ELEMENTS,
        });
    }
    if position.len() != system.board_size() {
        return Err(SolverError::PositionMismatch {
            got: position.len(),
            expected: system.board_size(),
        });
    }
    let mut maker = 0u64;
    let mut breaker = 0u64;
    for (e, own) in position.iter().enumerate() {
        match own {
            Ownership::Maker => maker |= 1 << e,
            Ownership::Breaker => breaker |= 1 << e,
            Ownership::Unclaimed => {}
        }
    }
    let mut search = Search {
        system,
        rules,
        memo: HashMap::new(),
        ascending: true,
    };
    let state = State::turn_start(system, maker, breaker, to_move, rules);
    let winner = search.value(state);
    let principal_variation = search.principal_variation(state);
    Ok(SolveResult { winner, states_visited: search.memo.len() as u64, principal_variation })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct State {
    maker: u64,
    breaker: u64,
    mover: Player,
    /// Claims left in the mover's current turn; fixed by the remainder rule
    /// at turn start and never larger than the unclaimed count.
    claims_left: usize,
}

impl State {
    fn turn_start(
        system: &WinningSetSystem,
        maker: u64,
        breaker: u64,
        mover: Player,
        rules: &Rules,
    ) -> Self {
        let unclaimed = system.board_size() - (maker | breaker).count_ones() as usize;
        Self { maker, breaker, mover, claims_left: rules.quota(mover).min(unclaimed) }
    }

    fn key(&self) -> u64 {
        self.maker
            | self.breaker << 16
            | (self.mover as u64) << 32
            | (self.claims_left as u64) << 33
    }
}

struct Search<'a> {
    system: &'a WinningSetSystem,
    rules: &'a Rules,
    memo: HashMap<u64, Player>,
    ascending: bool,
}

impl Search<'_> {
    fn terminal(&self, state: &State) -> Option<Player> {
        if self.system.sets.iter().any(|&s| s & state.maker == s) {
            return Some(Player::Maker);
        }
        if self.system.sets.iter().all(|&s| s & state.breaker != 0) {
            return Some(Player::Breaker);
        }
        // A fully claimed board with no Maker-complete set leaves every set
        // hit, so exhaustion is already covered; claims_left = 0 on a live
        // board can only mean the quota was min'd against an empty pool.
        debug_assert!(state.claims_left > 0);
        None
    }

    fn successors(&self, state: &State) -> impl Iterator<Item = (usize, State)> + '_ {
        let state = *state;
        let unclaimed = !(state.maker | state.breaker) & ((1u64 << self.system.board_size()) - 1);
        let order: Vec<usize> = if self.ascending {
            (0..self.system.board_size()).collect()
        } else {
            (0..self.system.board_size()).rev().collect()
        };
        order.into_iter().filter(move |&e| unclaimed >> e & 1 == 1).map(move |e| {
            let (maker, breaker) = match state.mover {
                Player::Maker => (state.maker | 1 << e, state.breaker),
                Player::Breaker => (state.maker, state.breaker | 1 << e),
            };
            let next = if state.claims_left > 1 {
                State { maker, breaker, mover: state.mover, claims_left: state.claims_left - 1 }
            } else {
                State::turn_start(self.system, maker, breaker, state.mover.opponent(), self.rules)
            };
            (e, next)
        })
    }

    fn value(&mut self, state: State) -> Player {
        if let Some(winner) = self.terminal(&state) {
            return winner;
        }
        let key = state.key();
        if let Some(&winner) = self.memo.get(&key) {
            return winner;
        }
        let mut winner = state.mover.opponent();
        for (_, next) in self.successors(&state).collect::<Vec<_>>() {
            if self.value(next) == state.mover {
                winner = state.mover;
                break;
            }
        }
        self.memo.insert(key, winner);
        winner
    }

    /// Walk one optimal line, preferring the lowest element index among
    /// value-preserving claims, and group the micro-moves into turns.
    fn principal_variation(&mut self, start: State) -> Vec<PvTurn> {
        let mut turns: Vec<PvTurn> = Vec::new();
        let mut state = start;
        loop {
            if self.terminal(&state).is_some() {
                break;
            }
            let value = self.value(state);
            let mut advanced = false;
            for (e, next) in self.successors(&state).collect::<Vec<_>>() {
                if self.value(next) == value {
                    // Turns strictly alternate, so consecutive micro-moves
                    // by the same mover always belong to one turn.
                    match turns.last_mut() {
                        Some(turn) if turn.mover == state.mover => turn.elements.push(e),
                        _ => turns.push(PvTurn { mover: state.mover, elements: vec![e] }),
                    }
                    state = next;
                    advanced = true;
                    break;
                }
            }
            debug_assert!(advanced, "non-terminal state must have a value-preserving move");
            if !advanced {
                break;
            }
        }
        turns
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fresh(system: &WinningSetSystem) -> Vec<Ownership> {
        vec![Ownership::Unclaimed; system.board_size()]
    }

    /// Plain minimax with no memo table — the independent cross-check for
    /// pinned fixtures.
    fn solve_unmemoized(system: &WinningSetSystem, b: usize, to_move: Player) -> Player {
        fn go(system: &WinningSetSystem, rules: &Rules, state: State) -> Player {
            let search =
                Search { system, rules, memo: HashMap::new(), ascending: true };
            if let Some(winner) = search.terminal(&state) {
                return winner;
            }
            let mut winner = state.mover.opponent();
            for (_, next) in search.successors(&state).collect::<Vec<_>>() {
                if go(system, rules, next) == state.mover {
                    winner = state.mover;
                    break;
                }
            }
            winner
        }
        let rules = Rules::standard(b).unwrap();
        go(system, &rules, State::turn_start(system, 0, 0, to_move, &rules))
    }

    #[test]
    fn hamilton_set_counts() {
        assert_eq!(hamilton_winning_sets(3).unwrap().set_count(), 1);
        assert_eq!(hamilton_winning_sets(4).unwrap().set_count(), 3);
        assert_eq!(hamilton_winning_sets(5).unwrap().set_count(), 12);
        assert_eq!(hamilton_winning_sets(6).unwrap().set_count(), 60);
        assert_eq!(hamilton_winning_sets(7).unwrap().set_count(), 360);
        assert_eq!(
            hamilton_winning_sets(8),
            Err(SolverError::TooLarge { what: "n", got: 8, limit: 7 })
        );
    }

    #[test]
    fn hamilton_sets_are_distinct_n_cycles() {
        for n in 3..=6 {
            let system = hamilton_winning_sets(n).unwrap();
            let sets = system.sets();
            for set in &sets {
                assert_eq!(set.len(), n, "a Hamilton cycle of K_{n} has {n} edges");
            }
            let mut dedup = sets.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), sets.len(), "duplicate cycle at n = {n}");
        }
        // In K_4 every edge lies on exactly two of the three cycles.
        let system = hamilton_winning_sets(4).unwrap();
        for e in 0..6 {
            let count = system.sets().iter().filter(|s| s.contains(&e)).count();
            assert_eq!(count, 2);
        }
    }

    #[test]
    fn single_element_set_goes_to_whoever_moves() {
        let system = WinningSetSystem::new(1, &[vec![0]]).unwrap();
        let result = solve(&system, 1, &fresh(&system), Player::Breaker).unwrap();
        assert_eq!(result.winner, Player::Breaker);
        assert_eq!(
            result.principal_variation,
            vec![PvTurn { mover: Player::Breaker, elements: vec![0] }]
        );
        let result = solve(&system, 1, &fresh(&system), Player::Maker).unwrap();
        assert_eq!(result.winner, Player::Maker);
    }

    // Hamiltonicity on K_4 at b = 1, Breaker first: fixture pinned from the
    // solver's first verified run and re-derived by the unmemoized recursion
    // below on every run. (Maker ends with only 3 of 6 edges — one short of
    // any cycle — so the pin is also confirmable by hand.)
    const K4_B1_WINNER: Player = Player::Breaker;

    #[test]
    fn k4_hamiltonicity_fixture() {
        let system = hamilton_winning_sets(4).unwrap();
        let result = solve(&system, 1, &fresh(&system), Player::Breaker).unwrap();
        assert_eq!(result.winner, K4_B1_WINNER);
        assert_eq!(solve_unmemoized(&system, 1, Player::Breaker), K4_B1_WINNER);
        assert!(result.states_visited > 0);
    }

    #[test]
    fn winner_is_memoization_order_invariant() {
        let k4 = hamilton_winning_sets(4).unwrap();
        let k5 = hamilton_winning_sets(5).unwrap();
        for (system, b) in [(&k4, 1), (&k4, 2), (&k5, 1), (&k5, 2)] {
            let rules = Rules::standard(b).unwrap();
            let forward = solve_with_rules(system, b, &fresh(system), Player::Breaker, &rules)
                .unwrap()
                .winner;
            let mut search =
                Search { system, rules: &rules, memo: HashMap::new(), ascending: false };
            let state = State::turn_start(system, 0, 0, Player::Breaker, &rules);
            assert_eq!(search.value(state), forward, "order changed the winner at b = {b}");
        }
    }

    #[test]
    fn principal_variation_replays_to_the_predicted_winner() {
        for (n, b) in [(4, 1), (4, 2), (5, 2), (5, 3)] {
            let system = hamilton_winning_sets(n).unwrap();
            let result = solve(&system, b, &fresh(&system), Player::Breaker).unwrap();
            let mut position = fresh(&system);
            let mut mover = Player::Breaker;
            for (index, turn) in result.principal_variation.iter().enumerate() {
                assert_eq!(turn.mover, mover, "turn order broken at n = {n}, b = {b}");
                let unclaimed =
                    position.iter().filter(|o| **o == Ownership::Unclaimed).count();
                let quota = match mover {
                    Player::Breaker => b.min(unclaimed),
                    Player::Maker => 1,
                };
                if index + 1 < result.principal_variation.len() {
                    // Only the final turn may stop early, at the claim that
                    // decides the game.
                    assert_eq!(turn.elements.len(), quota, "quota broken at n = {n}, b = {b}");
                } else {
                    assert!(turn.elements.len() <= quota, "quota broken at n = {n}, b = {b}");
                }
                for &e in &turn.elements {
                    assert_eq!(position[e], Ownership::Unclaimed);
                    position[e] = mover.into();
                }
                mover = mover.opponent();
            }
            // The line must end in a decided position for the predicted side.
            let maker_mask: u64 = position
                .iter()
                .enumerate()
                .filter(|(_, o)| **o == Ownership::Maker)
                .map(|(e, _)| 1u64 << e)
                .sum();
            let maker_won = system.sets.iter().any(|&s| s & maker_mask == s);
            assert_eq!(maker_won, result.winner == Player::Maker, "n = {n}, b = {b}");
        }
    }

    #[test]
    fn solve_respects_preconditions() {
        let system = WinningSetSystem::new(1, &[vec![0]]).unwrap();
        assert_eq!(solve(&system, 0, &fresh(&system), Player::Maker), Err(SolverError::ZeroBias));
        assert_eq!(
            solve(&system, 1, &[], Player::Maker),
            Err(SolverError::PositionMismatch { got: 0, expected: 1 })
        );
        let wide = WinningSetSystem::new(17, &[vec![16]]).unwrap();
        assert_eq!(
            solve(&wide, 1, &vec![Ownership::Unclaimed; 17], Player::Maker),
            Err(SolverError::TooLarge { what: "board", got: 17, limit: 16 })
        );
    }

    #[test]
    fn system_validation() {
        assert_eq!(
            WinningSetSystem::new(3, &[vec![]]),
            Err(SolverError::EmptySet { index: 0 })
        );
        assert_eq!(
            WinningSetSystem::new(3, &[vec![0], vec![1, 3]]),
            Err(SolverError::ElementOutOfRange { set: 1, element: 3, board_size: 3 })
        );
        assert!(WinningSetSystem::new(65, &[vec![0]]).is_err());
    }

    #[test]
    fn bias_monotonicity_on_hamiltonicity_systems() {
        let k4 = hamilton_winning_sets(4).unwrap();
        assert!(bias_monotonicity_check(&k4, 6).unwrap());
        let k5 = hamilton_winning_sets(5).unwrap();
        assert!(bias_monotonicity_check(&k5, 4).unwrap());
    }

    #[test]
    fn monotonicity_checker_rejects_non_monotone_predicates() {
        let outcomes = [true, false, true];
        let verdict = downward_closed(3, |b| Ok(outcomes[b - 1])).unwrap();
        assert!(!verdict);
        assert!(downward_closed(3, |b| Ok(b <= 2)).unwrap());
        assert!(downward_closed(3, |_| Ok(false)).unwrap());
    }

    #[test]
    fn broken_rules_produce_a_detectable_monotonicity_violation() {
        // Three disjoint pairs; Maker needs a full pair. A buggy solver that
        // reads the bias as Maker's quota on even b makes Maker lose at
        // b = 1 (one claim per turn is never enough) yet win at b = 2
        // (grab a whole untouched pair), which the checker must flag.
        // A uniform quota change provably cannot violate monotonicity —
        // extra Breaker elements never help Maker regardless of quotas —
        // so the mutation has to be rule-inconsistent across b.
        let system =
            WinningSetSystem::new(6, &[vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        let fresh = fresh(&system);
        let verdict = downward_closed(3, |b| {
            let rules =
                Rules { maker_quota: if b % 2 == 0 { 2 } else { 1 }, breaker_quota: b };
            Ok(solve_with_rules(&system, b, &fresh, Player::Breaker, &rules)?.winner
                == Player::Maker)
        })
        .unwrap();
        assert!(!verdict, "the checker must catch the planted rule bug");
    }

    #[test]
    fn best_turn_claims_the_obvious_element() {
        let system = WinningSetSystem::new(2, &[vec![0], vec![1]]).unwrap();
        // Breaker can hit only one set; either way Maker completes the other.
        assert_eq!(best_turn(&system, 1, &fresh(&system), Player::Breaker).unwrap(), vec![0]);
        let mut position = fresh(&system);
        position[0] = Ownership::Breaker;
        assert_eq!(best_turn(&system, 1, &position, Player::Maker).unwrap(), vec![1]);
        position[1] = Ownership::Maker;
        assert_eq!(best_turn(&system, 1, &position, Player::Breaker).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn remainder_rule_caps_turn_quotas() {
        // 3 unclaimed elements, b = 5: the remainder rule fixes the turn's
        // quota at 3, and at 0 once the board is gone.
        let system = WinningSetSystem::new(3, &[vec![0, 1, 2]]).unwrap();
        let rules = Rules::standard(5).unwrap();
        let start = State::turn_start(&system, 0, 0, Player::Breaker, &rules);
        assert_eq!(start.claims_left, 3);
        let exhausted = State::turn_start(&system, 0b001, 0b110, Player::Breaker, &rules);
        assert_eq!(exhausted.claims_left, 0);
        // In play: Maker opens on a 2-element board; Breaker's "turn of 5"
        // is exactly the one remaining element.
        let pair = WinningSetSystem::new(2, &[vec![0, 1]]).unwrap();
        let result = solve(&pair, 5, &fresh(&pair), Player::Maker).unwrap();
        assert_eq!(result.winner, Player::Breaker);
        assert_eq!(
            result.principal_variation,
            vec![
                PvTurn { mover: Player::Maker, elements: vec![0] },
                PvTurn { mover: Player::Breaker, elements: vec![1] },
            ]
        );
    }

    #[test]
    fn fixture_text_round_trip_and_errors() {
        let system = hamilton_winning_sets(4).unwrap();
        let text = system.to_text();
        assert!(text.starts_with("# elements = 6\n"));
        assert_eq!(WinningSetSystem::from_text(&text).unwrap(), system);

        let inferred = WinningSetSystem::from_text("0 1\n1 2\n").unwrap();
        assert_eq!(inferred.board_size(), 3);

        let err = WinningSetSystem::from_text("0 1\n2 x\n").unwrap_err();
        assert!(matches!(err, SolverError::Parse { line: 2, .. }), "got {err:?}");
        let err = WinningSetSystem::from_text("# elements = 2\n0 5\n").unwrap_err();
        assert_eq!(err, SolverError::ElementOutOfRange { set: 0, element: 5, board_size: 2 });
    }
}
