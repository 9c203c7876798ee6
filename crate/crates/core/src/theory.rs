//! Closed-form constants and the stage-1 failure-probability bound.
//!
//! The headline bias b(n) = (1 − 30/ln^{1/4}n) · n/ln n is positive only
//! when ε(n) = 30/ln^{1/4}n < 1, i.e. ln n > 30⁴ = 810 000 — around
//! n ≈ 10^{351 778}, far beyond anything a machine can enumerate edges of.
//! Direct reproduction of the headline theorem at its stated bias is
//! therefore impossible at desk scale; [`constants`] accepts ln n directly
//! so tests can probe the asymptotic regime honestly, and the rest of the
//! artifact validates the structural lemmas and the strategy behind the
//! theorem at configurable bias instead.
//!
//! Combinatorial quantities are evaluated via log-gamma and returned as
//! natural logs: the interesting bounds underflow an `f64` long before they
//! stop being informative (log-bounds of −10⁵ are routine).

use thiserror::Error;

/// ln n above which ε(n) < 1 and the headline bias turns positive
/// (30⁴ = 810 000).
pub const EPSILON_UNIT_LN_N: f64 = 810_000.0;

#[derive(Debug, Error, PartialEq)]
pub enum TheoryError {
    #[error("parameter domain violated: {reason}")]
    Domain { reason: String },
}

fn domain(reason: impl Into<String>) -> TheoryError {
    TheoryError::Domain { reason: reason.into() }
}

/// The constants block: δ₀ = 6/ln^{1/2}n, δ = 15/ln^{1/4}n,
/// ε = 30/ln^{1/4}n, k₀ = δ₀·n, and the headline bias (1−ε)·n/ln n.
///
/// `k0` and `bias` are present only when `n` was supplied; the pure-ln
/// constants don't need it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Constants {
    pub ln_n: f64,
    pub delta0: f64,
    pub delta: f64,
    pub epsilon: f64,
    pub k0: Option<f64>,
    pub bias: Option<f64>,
}

/// Evaluate the constants block in double precision.
///
/// `ln_n` overrides the logarithm when supplied (no machine-representable n
/// reaches ε < 1, so asymptotic exploration needs the override); otherwise
/// it is taken from `n`, which must then exceed 1.
pub fn constants(n: Option<f64>, ln_n: Option<f64>) -> Result<Constants, TheoryError> {
    let ln_n = match ln_n {
        Some(l) if l > 0.0 && l.is_finite() => l,
        Some(l) => return Err(domain(format!("ln n must be positive and finite, got {l}"))),
        None => match n {
            Some(n) if n > 1.0 && n.is_finite() => n.ln(),
            Some(n) => return Err(domain(format!("n must exceed 1 to take its log, got {n}"))),
            None => return Err(domain("need n or an ln n override")),
        },
    };
    let root2 = ln_n.sqrt();
    let root4 = root2.sqrt();
    let delta0 = 6.0 / root2;
    let delta = 15.0 / root4;
    let epsilon = 30.0 / root4;
    Ok(Constants {
        ln_n,
        delta0,
        delta,
        epsilon,
        k0: n.map(|n| delta0 * n),
        bias: n.map(|n| (1.0 - epsilon) * n / ln_n),
    })
}

/// ln Γ(x) for x > 0 via the Stirling series, argument-shifted to x ≥ 20.
///
/// With the series truncated after the x⁻⁹ term the truncation error at
/// x = 20 is below 10⁻¹⁷ absolute, so results are correct to f64 rounding.
/// That headroom matters: the failure bound subtracts ln-gammas of order
/// 10⁷ and still has to meet a 10⁻⁹ relative tolerance.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0 && x.is_finite(), "ln_gamma needs x > 0, got {x}");
    let mut shift = 0.0;
    let mut x = x;
    while x < 20.0 {
        shift -= x.ln();
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    // Bernoulli-number coefficients B_{2k} / (2k(2k−1)).
    let series = inv
        * (1.0 / 12.0
            + inv2
                * (-1.0 / 360.0
                    + inv2 * (1.0 / 1260.0 + inv2 * (-1.0 / 1680.0 + inv2 * (1.0 / 1188.0)))));
    const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_7;
    shift + (x - 0.5) * x.ln() - x + HALF_LN_TWO_PI + series
}

/// ln C(n, k) via log-gamma. Requires 0 ≤ k ≤ n.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    assert!(k <= n, "ln_binomial needs k ≤ n, got C({n}, {k})");
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

/// ln of the simplified i-th summand g(i) = [4⁵e³(i/n)³/δ⁶]^i.
pub fn g_term(i: u64, n: u64, delta: f64) -> Result<f64, TheoryError> {
    if i < 1 {
        return Err(domain("g_term needs i ≥ 1"));
    }
    if n <= i {
        return Err(domain(format!("g_term needs n > i, got i = {i}, n = {n}")));
    }
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(domain(format!("g_term needs δ > 0, got {delta}")));
    }
    let ln_base =
        5.0 * 4f64.ln() + 3.0 + 3.0 * ((i as f64).ln() - (n as f64).ln()) - 6.0 * delta.ln();
    Ok(i as f64 * ln_base)
}

/// ln of the stage-1 failure bound
/// Σ_{5≤i≤k0} C(n,i) · C(n−i, 2i−1) · ((3i−2)/(δn−12))^{6i},
/// evaluated by log-sum-exp. Returns −∞ for k0 < 5 (empty sum, bound 0).
///
/// Preconditions mirror the estimate's own: δn − 12 > 3k0 − 2 keeps every
/// probability factor below 1, and k0 ≤ n/3 keeps the binomials in range.
pub fn failure_bound(n: u64, delta: f64, k0: u64) -> Result<f64, TheoryError> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(domain(format!("failure_bound needs δ > 0, got {delta}")));
    }
    if 3 * k0 > n {
        return Err(domain(format!("failure_bound needs k0 ≤ n/3, got k0 = {k0}, n = {n}")));
    }
    let denom = delta * n as f64 - 12.0;
    if denom <= (3 * k0) as f64 - 2.0 {
        return Err(domain(format!(
            "failure_bound needs δn − 12 > 3k0 − 2, got δn − 12 = {denom}, k0 = {k0}"
        )));
    }
    if k0 < 5 {
        return Ok(f64::NEG_INFINITY);
    }
    let ln_denom = denom.ln();
    let mut terms = Vec::with_capacity((k0 - 4) as usize);
    for i in 5..=k0 {
        let t = ln_binomial(n, i)
            + ln_binomial(n - i, 2 * i - 1)
            + 6.0 * i as f64 * (((3 * i - 2) as f64).ln() - ln_denom);
        terms.push(t);
    }
    Ok(log_sum_exp(&terms))
}

fn log_sum_exp(terms: &[f64]) -> f64 {
    let m = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + terms.iter().map(|&t| (t - m).exp()).sum::<f64>().ln()
}
