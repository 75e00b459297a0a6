use crate::error::{Error, Result};
use crate::numerics::gaussian_tail_q;

use super::params::LinkParams;
use super::stats::{all_stats, HypothesisStats};
use super::threshold::{optimal_threshold, Threshold};

/// `(P_D, P_FA)` in one slot for threshold `gamma_prime`.
pub fn detection_probs(stats: &HypothesisStats, gamma_prime: f64) -> (f64, f64) {
    (
        tail(gamma_prime, stats.mu1, stats.sigma1()),
        tail(gamma_prime, stats.mu0, stats.sigma0()),
    )
}

/// `P(R ≥ x)` for `R ~ N(mu, sigma²)`, with the step-function limit at
/// zero variance.
fn tail(x: f64, mu: f64, sigma: f64) -> f64 {
    if sigma > 0.0 {
        gaussian_tail_q((x - mu) / sigma)
    } else if x <= mu {
        1.0
    } else {
        0.0
    }
}

/// Slot error probability `β(1 − P_D) + (1 − β)P_FA`.
pub fn slot_error(p_d: f64, p_fa: f64, beta: f64) -> f64 {
    beta * (1.0 - p_d) + (1.0 - beta) * p_fa
}

fn check_len(params: &LinkParams, thresholds: &[f64]) -> Result<()> {
    if thresholds.len() != params.slots() {
        return Err(Error::InvalidParameter(format!(
            "{} thresholds for {} slots",
            thresholds.len(),
            params.slots()
        )));
    }
    Ok(())
}

/// Per-slot `(P_D, P_FA)`.
pub fn slot_detection(params: &LinkParams, thresholds: &[f64]) -> Result<Vec<(f64, f64)>> {
    check_len(params, thresholds)?;
    Ok(all_stats(params)?
        .iter()
        .zip(thresholds)
        .map(|(s, &g)| detection_probs(s, g))
        .collect())
}

/// Slot-averaged `(P_D, P_FA)`.
pub fn average_detection(params: &LinkParams, thresholds: &[f64]) -> Result<(f64, f64)> {
    let per_slot = slot_detection(params, thresholds)?;
    let n = per_slot.len() as f64;
    let (pd, pfa) = per_slot.iter().fold((0.0, 0.0), |(a, b), (d, f)| (a + d, b + f));
    Ok((pd / n, pfa / n))
}

/// Slot-averaged error probability.
pub fn error_probability(params: &LinkParams, thresholds: &[f64]) -> Result<f64> {
    let per_slot = slot_detection(params, thresholds)?;
    let total: f64 = per_slot.iter().map(|&(d, f)| slot_error(d, f, params.beta)).sum();
    Ok(total / per_slot.len() as f64)
}

/// Likelihood-ratio thresholds for every slot.
pub fn optimal_thresholds(params: &LinkParams) -> Result<Vec<Threshold>> {
    all_stats(params)?
        .iter()
        .map(|s| optimal_threshold(s, params.beta))
        .collect()
}

/// Threshold values for every slot, mapping a negative `γ` to "always
/// decide one" (`γ′ = −∞`), which is what the likelihood ratio prescribes.
pub fn decision_thresholds(params: &LinkParams) -> Result<Vec<f64>> {
    all_stats(params)?
        .iter()
        .map(|s| match optimal_threshold(s, params.beta) {
            Ok(t) => Ok(t.gamma_prime),
            Err(Error::NegativeGamma { .. }) => Ok(f64::NEG_INFINITY),
            Err(e) => Err(e),
        })
        .collect()
}

/// Mutual information in bits between the sent bit and the decision of a
/// binary channel with `P(1|1) = p_d`, `P(1|0) = p_fa` and prior `beta`.
pub fn mutual_information(p_d: f64, p_fa: f64, beta: f64) -> f64 {
    let p_one = beta * p_d + (1.0 - beta) * p_fa;
    let term = |joint: f64, cond: f64, marginal: f64| {
        if joint > 0.0 && marginal > 0.0 {
            joint * (cond / marginal).log2()
        } else {
            0.0
        }
    };
    let info = term(beta * p_d, p_d, p_one)
        + term(beta * (1.0 - p_d), 1.0 - p_d, 1.0 - p_one)
        + term((1.0 - beta) * p_fa, p_fa, p_one)
        + term((1.0 - beta) * (1.0 - p_fa), 1.0 - p_fa, 1.0 - p_one);
    info.max(0.0)
}

/// One point of a common-threshold ROC sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RocPoint {
    pub gamma_prime: f64,
    pub p_d: f64,
    pub p_fa: f64,
}

/// Average `(P_D, P_FA)` with the same `γ′` in every slot, for each value
/// of `gammas`.
pub fn roc_sweep(params: &LinkParams, gammas: &[f64]) -> Result<Vec<RocPoint>> {
    let stats = all_stats(params)?;
    let n = stats.len() as f64;
    Ok(gammas
        .iter()
        .map(|&g| {
            let (pd, pfa) = stats
                .iter()
                .map(|s| detection_probs(s, g))
                .fold((0.0, 0.0), |(a, b), (d, f)| (a + d, b + f));
            RocPoint { gamma_prime: g, p_d: pd / n, p_fa: pfa / n }
        })
        .collect())
}

/// `P_D` at false-alarm level `target` by interpolation along the curve,
/// linear in `log P_FA`. `None` if the sweep does not bracket `target`.
pub fn pd_at_pfa(points: &[RocPoint], target: f64) -> Option<f64> {
    let mut pts: Vec<RocPoint> = points.iter().copied().filter(|p| p.p_fa > 0.0).collect();
    pts.sort_by(|a, b| a.p_fa.total_cmp(&b.p_fa));
    let upper = pts.iter().position(|p| p.p_fa >= target)?;
    if pts[upper].p_fa == target {
        return Some(pts[upper].p_d);
    }
    let lower = pts[..upper].last()?;
    let hi = pts[upper];
    let w = (target.ln() - lower.p_fa.ln()) / (hi.p_fa.ln() - lower.p_fa.ln());
    Some(lower.p_d + w * (hi.p_d - lower.p_d))
}

/// Per-slot error probability of slot `j` over a threshold sweep.
pub fn slot_error_sweep(params: &LinkParams, j: usize, gammas: &[f64]) -> Result<Vec<f64>> {
    let stats = super::stats::hypothesis_stats(params, j)?;
    Ok(gammas
        .iter()
        .map(|&g| {
            let (d, f) = detection_probs(&stats, g);
            slot_error(d, f, params.beta)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary_entropy(p: f64) -> f64 {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }

    #[test]
    fn noiseless_channel_carries_one_bit() {
        assert!((mutual_information(1.0, 0.0, 0.5) - 1.0).abs() < 1e-15);
        assert_eq!(mutual_information(0.3, 0.3, 0.4), 0.0);
    }

    #[test]
    fn symmetric_channel_matches_bsc_capacity() {
        let expected = 1.0 - binary_entropy(0.1);
        assert!((mutual_information(0.9, 0.1, 0.5) - expected).abs() < 1e-14);
    }

    #[test]
    fn relabelling_outputs_preserves_information() {
        for &(pd, pfa, beta) in &[(0.8, 0.05, 0.3), (0.55, 0.4, 0.7)] {
            let a = mutual_information(pd, pfa, beta);
            let b = mutual_information(pfa, pd, 1.0 - beta);
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn detection_limits() {
        let st = HypothesisStats { j: 1, mu0: 10.0, sigma2_0: 20.0, mu1: 30.0, sigma2_1: 45.0 };
        assert_eq!(detection_probs(&st, 10.0).1, 0.5);
        let (d, f) = detection_probs(&st, 1e6);
        assert!(d == 0.0 && f == 0.0);
        let (d, f) = detection_probs(&st, -1e6);
        assert!(d == 1.0 && f == 1.0);
        assert_eq!(slot_error(1.0, 0.0, 0.5), 0.0);
        assert_eq!(slot_error(0.7, 0.7, 0.5), 0.5 * (1.0 - 0.7 + 0.7));
    }

    #[test]
    fn interpolation_on_roc() {
        let pts = [
            RocPoint { gamma_prime: 2.0, p_d: 0.2, p_fa: 1e-5 },
            RocPoint { gamma_prime: 1.0, p_d: 0.4, p_fa: 1e-3 },
        ];
        assert!((pd_at_pfa(&pts, 1e-4).unwrap() - 0.3).abs() < 1e-12);
        assert!(pd_at_pfa(&pts, 1e-2).is_none());
    }
}
