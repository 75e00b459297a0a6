use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::RandomStream;

use super::params::LinkParams;
use super::stats::{all_stats, isi_terms};

/// How the molecule counts of a trial are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SamplingMode {
    /// Signal and each interference term from the Gaussian laws used by the
    /// analysis, so the analytic probabilities are exact for this mode.
    #[default]
    GaussianMatched,
    /// Realized bits and binomial molecule counts.
    BinomialExact,
}

impl SamplingMode {
    pub fn name(self) -> &'static str {
        match self {
            SamplingMode::GaussianMatched => "gaussian-matched",
            SamplingMode::BinomialExact => "binomial-exact",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name.replace('_', "-").as_str() {
            "gaussian-matched" | "gaussian" => Some(SamplingMode::GaussianMatched),
            "binomial-exact" | "binomial" => Some(SamplingMode::BinomialExact),
            _ => None,
        }
    }
}

/// Empirical rates with standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkEstimate {
    pub n_trials: usize,
    /// Slot average of the per-slot detection rates.
    pub p_d: f64,
    pub p_fa: f64,
    /// Fraction of wrong decisions over all slots and trials.
    pub p_e: f64,
    pub se_p_d: f64,
    pub se_p_fa: f64,
    pub se_p_e: f64,
}

#[derive(Debug, Clone, Default)]
struct Tally {
    ones: Vec<u64>,
    detected: Vec<u64>,
    zeros: Vec<u64>,
    false_alarms: Vec<u64>,
}

impl Tally {
    fn new(slots: usize) -> Self {
        Self {
            ones: vec![0; slots],
            detected: vec![0; slots],
            zeros: vec![0; slots],
            false_alarms: vec![0; slots],
        }
    }

    fn merge(mut self, other: Self) -> Self {
        for j in 0..self.ones.len() {
            self.ones[j] += other.ones[j];
            self.detected[j] += other.detected[j];
            self.zeros[j] += other.zeros[j];
            self.false_alarms[j] += other.false_alarms[j];
        }
        self
    }
}

/// Monte Carlo estimate of the link rates for the given per-slot thresholds.
///
/// Each trial draws `x[1..=i]` i.i.d. Bernoulli(β) and the received count
/// `R[j] = S[j] + Σ I[k] + N[j] + C[j]` per slot, with `N ~ N(μ_o, σ_o²)` and
/// counting noise `C ~ N(0, μ_x)` where `μ_x` is the mean under the sent
/// bit. Trial `t` uses substream `t` of `stream`.
pub fn simulate_link(
    params: &LinkParams,
    thresholds: &[f64],
    n_trials: usize,
    stream: &RandomStream,
    mode: SamplingMode,
) -> Result<LinkEstimate> {
    params.validate()?;
    let slots = params.slots();
    if thresholds.len() != slots {
        return Err(Error::InvalidParameter(format!(
            "{} thresholds for {slots} slots",
            thresholds.len()
        )));
    }
    if n_trials == 0 {
        return Err(Error::InvalidParameter("n_trials must be at least 1".into()));
    }
    let model = TrialModel::new(params)?;
    let tally = (0..n_trials as u64)
        .into_par_iter()
        .fold(
            || Tally::new(slots),
            |mut tally, t| {
                model.run(&mut stream.substream(t), thresholds, mode, &mut tally);
                tally
            },
        )
        .reduce(|| Tally::new(slots), Tally::merge);
    Ok(summarize(&tally, n_trials))
}

struct TrialModel {
    beta: f64,
    mu_o: f64,
    sigma_o: f64,
    /// Per slot: signal mean and variance of the Gaussian signal.
    signal: Vec<(f64, f64)>,
    /// Per slot: ISI terms as (transmit slot, mean, sd) in the matched mode.
    isi: Vec<Vec<(usize, f64, f64)>>,
    /// Per slot: counting-noise sd under H0 and H1.
    counting: Vec<(f64, f64)>,
    /// Binomial laws per transmit slot and delay.
    binomial: Vec<Vec<Binomial>>,
}

impl TrialModel {
    fn new(params: &LinkParams) -> Result<Self> {
        let slots = params.slots();
        let stats = all_stats(params)?;
        let mut signal = Vec::with_capacity(slots);
        let mut isi = Vec::with_capacity(slots);
        for j in 1..=slots {
            let q0 = params.arrivals.q(j, 0);
            let n = params.budget[j - 1] as f64;
            signal.push((n * q0, n * q0 * (1.0 - q0)));
            isi.push(
                isi_terms(params, j)?
                    .iter()
                    .map(|t| (t.transmit_slot, t.mean, t.variance.sqrt()))
                    .collect(),
            );
        }
        let binomial = (1..=slots)
            .map(|s| {
                (0..=slots - s)
                    .map(|m| {
                        Binomial::new(params.budget[s - 1], params.arrivals.q(s, m))
                            .map_err(|e| Error::InvalidParameter(e.to_string()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            beta: params.beta,
            mu_o: params.mu_o,
            sigma_o: params.sigma2_o.sqrt(),
            signal,
            isi,
            counting: stats
                .iter()
                .map(|s| match params.counting_noise {
                    true => (s.mu0.max(0.0).sqrt(), s.mu1.max(0.0).sqrt()),
                    false => (0.0, 0.0),
                })
                .collect(),
            binomial,
        })
    }

    fn run(&self, rng: &mut RandomStream, thresholds: &[f64], mode: SamplingMode, tally: &mut Tally) {
        let slots = self.signal.len();
        let bits: Vec<bool> = (0..slots).map(|_| rng.uniform() < self.beta).collect();
        for j in 1..=slots {
            let one = bits[j - 1];
            let mut r = match mode {
                SamplingMode::GaussianMatched => {
                    let mut r = 0.0;
                    if one {
                        let (mean, var) = self.signal[j - 1];
                        r += mean + var.sqrt() * rng.standard_normal();
                    }
                    for &(_, mean, sd) in &self.isi[j - 1] {
                        r += mean + sd * rng.standard_normal();
                    }
                    r
                }
                SamplingMode::BinomialExact => {
                    let mut count = 0u64;
                    for s in 1..=j {
                        if bits[s - 1] {
                            count += self.binomial[s - 1][j - s].sample(rng);
                        }
                    }
                    count as f64
                }
            };
            r += self.mu_o + self.sigma_o * rng.standard_normal();
            let (c0, c1) = self.counting[j - 1];
            r += if one { c1 } else { c0 } * rng.standard_normal();

            let decided = r >= thresholds[j - 1];
            if one {
                tally.ones[j - 1] += 1;
                tally.detected[j - 1] += u64::from(decided);
            } else {
                tally.zeros[j - 1] += 1;
                tally.false_alarms[j - 1] += u64::from(decided);
            }
        }
    }
}

fn summarize(tally: &Tally, n_trials: usize) -> LinkEstimate {
    let slots = tally.ones.len() as f64;
    let rate_stats = |hits: &[u64], totals: &[u64]| {
        let mut mean = 0.0;
        let mut var = 0.0;
        for (&h, &n) in hits.iter().zip(totals) {
            if n > 0 {
                let p = h as f64 / n as f64;
                mean += p;
                var += p * (1.0 - p) / n as f64;
            }
        }
        (mean / slots, var.sqrt() / slots)
    };
    let (p_d, se_p_d) = rate_stats(&tally.detected, &tally.ones);
    let (p_fa, se_p_fa) = rate_stats(&tally.false_alarms, &tally.zeros);
    let decisions = n_trials as f64 * slots;
    let misses: u64 = tally.ones.iter().zip(&tally.detected).map(|(n, d)| n - d).sum();
    let errors = misses + tally.false_alarms.iter().sum::<u64>();
    let p_e = errors as f64 / decisions;
    LinkEstimate {
        n_trials,
        p_d,
        p_fa,
        p_e,
        se_p_d,
        se_p_fa,
        se_p_e: (p_e * (1.0 - p_e) / decisions).sqrt(),
    }
}
