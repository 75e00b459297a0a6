use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hitting_time::{arrival_table, SlotConvention};
use crate::scenario::ChannelConfig;

/// Arrival probabilities `q_m` for each transmit slot `s = 1..=i`, indexed by
/// delay `m = 0..=i-s`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrivalMatrix {
    rows: Vec<Vec<f64>>,
}

impl ArrivalMatrix {
    /// Tables for `slots` transmit slots of a (possibly time-varying) channel.
    pub fn from_config(config: &ChannelConfig, slots: usize, convention: SlotConvention) -> Result<Self> {
        if slots == 0 {
            return Err(Error::InvalidParameter("at least one slot is required".into()));
        }
        let rows = (1..=slots)
            .map(|s| arrival_table(config, convention.elapsed(s), slots - s + 1).map(|t| t.q))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rows })
    }

    /// The same delay profile `q[m]` for every transmit slot.
    pub fn time_invariant(q: &[f64], slots: usize) -> Result<Self> {
        if q.len() < slots {
            return Err(Error::InvalidParameter(format!(
                "need {slots} delays, got {}",
                q.len()
            )));
        }
        Self::from_rows((1..=slots).map(|s| q[..=slots - s].to_vec()).collect())
    }

    /// Explicit rows; row `s-1` must hold at least `i-s+1` delays.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let slots = rows.len();
        for (idx, row) in rows.iter().enumerate() {
            if row.len() < slots - idx {
                return Err(Error::InvalidParameter(format!(
                    "transmit slot {} needs {} delays, got {}",
                    idx + 1,
                    slots - idx,
                    row.len()
                )));
            }
            if row.iter().any(|q| !(0.0..=1.0).contains(q)) || row.iter().sum::<f64>() > 1.0 + 1e-9 {
                return Err(Error::InvalidParameter(format!(
                    "arrival probabilities of transmit slot {} are not a sub-distribution",
                    idx + 1
                )));
            }
        }
        Ok(Self { rows })
    }

    pub fn slots(&self) -> usize {
        self.rows.len()
    }

    /// The first `slots` transmit slots, each cut to the delays they need.
    pub fn leading(&self, slots: usize) -> Result<Self> {
        if slots == 0 || slots > self.slots() {
            return Err(Error::InvalidParameter(format!(
                "cannot take {slots} of {} slots",
                self.slots()
            )));
        }
        Ok(Self {
            rows: (1..=slots).map(|s| self.rows[s - 1][..=slots - s].to_vec()).collect(),
        })
    }

    /// `q_delay` for a molecule sent in `transmit_slot` (1-based).
    pub fn q(&self, transmit_slot: usize, delay: usize) -> f64 {
        self.rows[transmit_slot - 1][delay]
    }

    pub fn row(&self, transmit_slot: usize) -> &[f64] {
        &self.rows[transmit_slot - 1]
    }
}

/// On-off keyed link over `i` slots.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkParams {
    /// Molecules released for a one, per slot.
    pub budget: Vec<u64>,
    /// Prior probability of a one.
    pub beta: f64,
    pub mu_o: f64,
    pub sigma2_o: f64,
    /// Add counting noise with variance equal to the conditional mean.
    pub counting_noise: bool,
    pub arrivals: Arc<ArrivalMatrix>,
}

impl LinkParams {
    /// Constant budget `q_budget` in every slot.
    pub fn new(arrivals: ArrivalMatrix, q_budget: u64, beta: f64, mu_o: f64, sigma2_o: f64) -> Result<Self> {
        let params = Self {
            budget: vec![q_budget; arrivals.slots()],
            beta,
            mu_o,
            sigma2_o,
            counting_noise: true,
            arrivals: Arc::new(arrivals),
        };
        params.validate()?;
        Ok(params)
    }

    pub fn slots(&self) -> usize {
        self.budget.len()
    }

    /// The link restricted to its first `slots` slots.
    pub fn leading(&self, slots: usize) -> Result<Self> {
        Ok(Self {
            budget: self.budget[..slots.min(self.slots())].to_vec(),
            arrivals: Arc::new(self.arrivals.leading(slots)?),
            ..self.clone()
        })
    }

    pub fn with_beta(&self, beta: f64) -> Self {
        Self { beta, ..self.clone() }
    }

    pub fn without_counting_noise(&self) -> Self {
        Self { counting_noise: false, ..self.clone() }
    }

    pub fn with_noise(&self, mu_o: f64, sigma2_o: f64) -> Self {
        Self { mu_o, sigma2_o, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.budget.is_empty() {
            return bad("at least one slot is required".into());
        }
        if self.budget.len() != self.arrivals.slots() {
            return bad(format!(
                "{} budgets for {} arrival rows",
                self.budget.len(),
                self.arrivals.slots()
            ));
        }
        if let Some(j) = self.budget.iter().position(|&q| q == 0) {
            return bad(format!("slot {} releases no molecules", j + 1));
        }
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return bad(format!("beta must lie in (0, 1), got {}", self.beta));
        }
        if !self.mu_o.is_finite() || !(self.sigma2_o >= 0.0 && self.sigma2_o.is_finite()) {
            return bad(format!(
                "noise needs finite mean and nonnegative variance, got {} and {}",
                self.mu_o, self.sigma2_o
            ));
        }
        Ok(())
    }

    /// Slots where `Q q_0 ≤ 5` or `Q (1 - q_0) ≤ 5`, i.e. where the Gaussian
    /// approximation of the binomial counts is doubtful.
    pub fn gaussian_advisories(&self) -> Vec<usize> {
        (1..=self.slots())
            .filter(|&j| {
                let mean = self.budget[j - 1] as f64 * self.arrivals.q(j, 0);
                mean <= 5.0 || self.budget[j - 1] as f64 - mean <= 5.0
            })
            .collect()
    }
}
