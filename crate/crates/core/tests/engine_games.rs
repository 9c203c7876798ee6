//! Solver-vs-engine agreement on tiny boards: both players take their moves
//! from the exact solver's principal variation, the game is played through
//! the real engine, and the outcome must match the solver's predicted
//! winner — on K_4 and K_5 Hamiltonicity for every bias in {1, 2, 3}.

mod support;

#[test]
fn k4_hamiltonicity_self_play_all_biases() {
    for bias in 1..=3 {
        let game = support::solver_self_play(4, bias);
        assert_eq!(game.played, game.predicted, "K_4 at b = {bias}");
        assert!(game.within_cap);
    }
}

#[test]
fn k5_hamiltonicity_self_play_all_biases() {
    for bias in 1..=3 {
        let game = support::solver_self_play(5, bias);
        assert_eq!(game.played, game.predicted, "K_5 at b = {bias}");
        assert!(game.within_cap);
    }
}
