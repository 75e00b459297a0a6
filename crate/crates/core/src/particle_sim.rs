//! Particle-based Monte Carlo of the first hitting time.
//!
//! Each particle pre-walks TX and RX to the release time `kT` with one exact
//! Gaussian jump, then steps the gap `x_rx − x_mol` until it changes sign.
//! Only the gap matters for absorption, so the molecule and RX increments
//! are merged into a single Gaussian step with drift `v_rx − v` and
//! diffusion `D_m + D_rx`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::RandomStream;
use crate::scenario::ChannelConfig;

/// Exponent beyond which the bridge crossing probability is treated as zero.
const BRIDGE_CUTOFF: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimSpec {
    pub n_particles: usize,
    /// Step size in seconds.
    pub dt: f64,
    /// Horizon after release in seconds.
    pub t_max: f64,
    pub seed: u64,
    /// Also count crossings that happen between two same-sign samples, with
    /// the Brownian-bridge probability.
    pub bridge_correction: bool,
}

impl SimSpec {
    /// Defaults for slot length `slot`: `dt = min(T, 1 ms)/1000` and
    /// `t_max = 20 T`.
    pub fn for_slot(slot: f64, n_particles: usize, seed: u64) -> Self {
        Self {
            n_particles,
            dt: slot.min(1e-3) / 1e3,
            t_max: 20.0 * slot,
            seed,
            bridge_correction: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_particles == 0 {
            return Err(Error::InvalidParameter("n_particles must be at least 1".into()));
        }
        if !self.t_max.is_finite() || !(self.dt > 0.0 && self.dt <= self.t_max) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < dt <= t_max < inf, got dt = {}, t_max = {}",
                self.dt, self.t_max
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HitSample {
    /// Hitting times relative to release, in particle order.
    pub hit_times: Vec<f64>,
    pub n_missed: usize,
}

impl HitSample {
    pub fn n_particles(&self) -> usize {
        self.hit_times.len() + self.n_missed
    }

    pub fn absorbed_fraction(&self) -> f64 {
        self.hit_times.len() as f64 / self.n_particles() as f64
    }
}

/// Simulates `spec.n_particles` molecules released at `kT`.
///
/// Particle `i` draws from stream `(seed, i)`, so the sample is identical
/// for any thread count.
pub fn simulate_hits(config: &ChannelConfig, k: u32, spec: &SimSpec) -> Result<HitSample> {
    config.validate()?;
    spec.validate()?;
    let model = GapModel::new(config, k, spec);
    let outcomes: Vec<Option<f64>> = (0..spec.n_particles as u64)
        .into_par_iter()
        .map(|i| model.run(&mut RandomStream::new(spec.seed, i)))
        .collect();
    let hit_times: Vec<f64> = outcomes.iter().flatten().copied().collect();
    let n_missed = spec.n_particles - hit_times.len();
    Ok(HitSample { hit_times, n_missed })
}

struct GapModel {
    release: f64,
    x0_tx: f64,
    x0_rx: f64,
    v_tx: f64,
    v_rx: f64,
    d_tx: f64,
    d_rx: f64,
    /// Mean gap increment per step.
    step_drift: f64,
    /// Standard deviation of the gap increment per step.
    step_sd: f64,
    /// Diffusion coefficient of the gap.
    d_gap: f64,
    dt: f64,
    t_max: f64,
    bridge: bool,
}

impl GapModel {
    fn new(config: &ChannelConfig, k: u32, spec: &SimSpec) -> Self {
        let d_gap = config.d_m + config.d_rx;
        Self {
            release: k as f64 * config.slot,
            x0_tx: config.x0_tx,
            x0_rx: config.x0_rx,
            v_tx: config.v_tx,
            v_rx: config.v_rx,
            d_tx: config.d_tx,
            d_rx: config.d_rx,
            step_drift: (config.v_rx - config.v) * spec.dt,
            step_sd: (2.0 * d_gap * spec.dt).sqrt(),
            d_gap,
            dt: spec.dt,
            t_max: spec.t_max,
            bridge: spec.bridge_correction && d_gap > 0.0,
        }
    }

    fn run(&self, rng: &mut RandomStream) -> Option<f64> {
        let kt = self.release;
        let tx = self.x0_tx + self.v_tx * kt + (2.0 * self.d_tx * kt).sqrt() * rng.standard_normal();
        let rx = self.x0_rx + self.v_rx * kt + (2.0 * self.d_rx * kt).sqrt() * rng.standard_normal();
        let mut gap = rx - tx;
        if gap == 0.0 {
            return Some(0.5 * self.dt.min(self.t_max));
        }
        // Orient so the molecule starts on the positive side.
        let side = gap.signum();
        gap = gap.abs();
        let drift = side * self.step_drift;

        let mut t = 0.0;
        while t < self.t_max {
            let h = self.dt.min(self.t_max - t);
            let (mean, sd) = if h == self.dt {
                (drift, self.step_sd)
            } else {
                (drift * h / self.dt, (2.0 * self.d_gap * h).sqrt())
            };
            let next = gap + mean + sd * rng.standard_normal();
            if next <= 0.0 {
                return Some((t + h * gap / (gap - next)).clamp(f64::MIN_POSITIVE, self.t_max));
            }
            if self.bridge {
                let exponent = gap * next / (self.d_gap * h);
                if exponent < BRIDGE_CUTOFF && rng.uniform() < (-exponent).exp() {
                    return Some(t + 0.5 * h);
                }
            }
            gap = next;
            t += h;
        }
        None
    }
}

/// Histogram density over `edges`, normalized so that the total mass equals
/// the absorbed fraction. Hits outside the edges are dropped.
pub fn empirical_pdf(sample: &HitSample, edges: &[f64]) -> Result<Vec<f64>> {
    if sample.n_particles() == 0 {
        return Err(Error::EmptySample);
    }
    if edges.len() < 2 || edges.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter(
            "bin edges must be strictly increasing with at least two entries".into(),
        ));
    }
    let mut counts = vec![0usize; edges.len() - 1];
    let last = *edges.last().unwrap();
    for &t in &sample.hit_times {
        if t < edges[0] || t > last {
            continue;
        }
        // Right-closed final bin.
        let bin = edges.partition_point(|&e| e <= t).saturating_sub(1).min(counts.len() - 1);
        counts[bin] += 1;
    }
    let n = sample.n_particles() as f64;
    Ok(counts
        .iter()
        .zip(edges.windows(2))
        .map(|(&c, w)| c as f64 / (n * (w[1] - w[0])))
        .collect())
}
