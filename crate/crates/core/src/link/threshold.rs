use crate::error::{Error, Result};
use crate::numerics::gaussian_tail_q;

use super::stats::HypothesisStats;

/// Relative variance gap below which the equal-variance test is used.
pub const EQUAL_VARIANCE_RTOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdRule {
    /// `(R + α)² ≷ γ`, keeping the upper root.
    Quadratic { alpha: f64, gamma: f64 },
    /// Mean-shift test for (numerically) equal variances.
    EqualVariance,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Threshold {
    pub j: usize,
    pub gamma_prime: f64,
    pub rule: ThresholdRule,
}

impl Threshold {
    /// A fixed threshold not derived from the likelihood ratio.
    pub fn fixed(j: usize, gamma_prime: f64) -> Self {
        Self { j, gamma_prime, rule: ThresholdRule::EqualVariance }
    }

    pub fn alpha(&self) -> Option<f64> {
        match self.rule {
            ThresholdRule::Quadratic { alpha, .. } => Some(alpha),
            ThresholdRule::EqualVariance => None,
        }
    }

    pub fn gamma(&self) -> Option<f64> {
        match self.rule {
            ThresholdRule::Quadratic { gamma, .. } => Some(gamma),
            ThresholdRule::EqualVariance => None,
        }
    }
}

/// Likelihood-ratio threshold for prior `beta` on `H1`.
///
/// With `Δ = σ1² − σ0²`,
/// `α = (μ1σ0² − μ0σ1²)/Δ` and
/// `γ = 2σ1²σ0²/Δ · ln[(1−β)/β · σ1/σ0] + α² + (μ1²σ0² − μ0²σ1²)/Δ`,
/// and the rule decides `H1` iff `R ≥ √γ − α`.
///
/// Returns [`Error::NegativeGamma`] when `γ < 0`: then the likelihood ratio
/// favours `H1` for every `R`.
pub fn optimal_threshold(stats: &HypothesisStats, beta: f64) -> Result<Threshold> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::InvalidParameter(format!("beta must lie in (0, 1), got {beta}")));
    }
    let HypothesisStats { j, mu0, sigma2_0: s0, mu1, sigma2_1: s1 } = *stats;
    if !(s0 > 0.0 && s1 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "slot {j}: hypothesis variances must be positive, got {s0} and {s1}"
        )));
    }
    let log_prior = ((1.0 - beta) / beta).ln();
    let delta = s1 - s0;
    if delta < EQUAL_VARIANCE_RTOL * s0 {
        let s = 0.5 * (s0 + s1);
        let shift = mu1 - mu0;
        let gamma_prime = if shift > 0.0 {
            0.5 * (mu0 + mu1) + s * log_prior / shift
        } else if log_prior > 0.0 {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        };
        return Ok(Threshold { j, gamma_prime, rule: ThresholdRule::EqualVariance });
    }
    let alpha = (mu1 * s0 - mu0 * s1) / delta;
    let gamma = 2.0 * s1 * s0 / delta * (log_prior + 0.5 * (s1 / s0).ln())
        + alpha * alpha
        + (mu1 * mu1 * s0 - mu0 * mu0 * s1) / delta;
    if gamma < 0.0 {
        return Err(Error::NegativeGamma { slot: j, gamma });
    }
    Ok(Threshold {
        j,
        gamma_prime: gamma.sqrt() - alpha,
        rule: ThresholdRule::Quadratic { alpha, gamma },
    })
}

/// Decides a one iff `r ≥ γ′`.
pub fn detect(r: f64, threshold: &Threshold) -> u8 {
    u8::from(r >= threshold.gamma_prime)
}

/// `ln p(R | H1) − ln p(R | H0)` under the Gaussian model.
pub fn log_likelihood_ratio(stats: &HypothesisStats, r: f64) -> f64 {
    let (s0, s1) = (stats.sigma2_0, stats.sigma2_1);
    0.5 * (s0 / s1).ln() - (r - stats.mu1).powi(2) / (2.0 * s1) + (r - stats.mu0).powi(2) / (2.0 * s0)
}

/// Probability under `H0` and `H1` of `R < −√γ − α`, where the exact
/// likelihood-ratio test decides a one but the single-threshold rule does
/// not. Zero for the equal-variance rule.
pub fn lower_branch_mass(stats: &HypothesisStats, threshold: &Threshold) -> (f64, f64) {
    match threshold.rule {
        ThresholdRule::Quadratic { alpha, gamma } => {
            let lower = -gamma.sqrt() - alpha;
            (
                gaussian_tail_q((stats.mu0 - lower) / stats.sigma0()),
                gaussian_tail_q((stats.mu1 - lower) / stats.sigma1()),
            )
        }
        ThresholdRule::EqualVariance => (0.0, 0.0),
    }
}
