use crate::error::{Error, Result};

use super::params::LinkParams;

/// Gaussian moments of the received count in slot `j` under each hypothesis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypothesisStats {
    pub j: usize,
    pub mu0: f64,
    pub sigma2_0: f64,
    pub mu1: f64,
    pub sigma2_1: f64,
}

impl HypothesisStats {
    pub fn sigma0(&self) -> f64 {
        self.sigma2_0.sqrt()
    }

    pub fn sigma1(&self) -> f64 {
        self.sigma2_1.sqrt()
    }
}

/// Moments of the interference from one earlier transmit slot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsiTerm {
    pub transmit_slot: usize,
    pub delay: usize,
    pub mean: f64,
    pub variance: f64,
}

/// ISI contributions to slot `j`, ordered by delay `1..j`.
///
/// A molecule batch sent in slot `j - k` carries `Q x q_k` molecules on
/// average with `x ~ Bernoulli(β)`, giving mean `β Q q_k` and variance
/// `β Q q_k (1 - q_k) + β (1 - β) (Q q_k)²`.
pub fn isi_terms(params: &LinkParams, j: usize) -> Result<Vec<IsiTerm>> {
    check_slot(params, j)?;
    let beta = params.beta;
    Ok((1..j)
        .map(|k| {
            let s = j - k;
            let q = params.arrivals.q(s, k);
            let n = params.budget[s - 1] as f64;
            IsiTerm {
                transmit_slot: s,
                delay: k,
                mean: beta * n * q,
                variance: beta * n * q * (1.0 - q) + beta * (1.0 - beta) * (n * q).powi(2),
            }
        })
        .collect())
}

/// Means and variances under `H0` (`x[j] = 0`) and `H1` (`x[j] = 1`).
///
/// Counting noise, when enabled, has variance equal to the conditional mean
/// of the count.
pub fn hypothesis_stats(params: &LinkParams, j: usize) -> Result<HypothesisStats> {
    let terms = isi_terms(params, j)?;
    let isi_mean: f64 = terms.iter().map(|t| t.mean).sum();
    let isi_var: f64 = terms.iter().map(|t| t.variance).sum();
    let q0 = params.arrivals.q(j, 0);
    let signal = params.budget[j - 1] as f64 * q0;

    let mu0 = isi_mean + params.mu_o;
    let mu1 = signal + isi_mean + params.mu_o;
    let counting = |mu: f64| if params.counting_noise { mu } else { 0.0 };
    Ok(HypothesisStats {
        j,
        mu0,
        sigma2_0: isi_var + params.sigma2_o + counting(mu0),
        mu1,
        sigma2_1: signal * (1.0 - q0) + isi_var + params.sigma2_o + counting(mu1),
    })
}

/// Stats for every slot `1..=i`.
pub fn all_stats(params: &LinkParams) -> Result<Vec<HypothesisStats>> {
    (1..=params.slots()).map(|j| hypothesis_stats(params, j)).collect()
}

fn check_slot(params: &LinkParams, j: usize) -> Result<()> {
    if j == 0 || j > params.slots() {
        return Err(Error::InvalidParameter(format!(
            "slot {j} outside 1..={}",
            params.slots()
        )));
    }
    Ok(())
}
