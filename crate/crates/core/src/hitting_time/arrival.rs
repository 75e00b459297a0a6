use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::numerics::{integrate, integrate_from_singular, QuadratureSpec};
use crate::scenario::ChannelConfig;

use super::density::HittingTimePdf;

/// How a transmission slot index maps to the elapsed mobility time of its
/// release.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SlotConvention {
    /// Slot `j` releases after `j` slots of node motion (`k = j`).
    #[default]
    ReleaseIndex,
    /// Slot `j` spans `[(j-1)T, jT]` and releases at its start (`k = j - 1`).
    SlotStart,
}

impl SlotConvention {
    /// Elapsed-slot index `k` of a release in slot `j ≥ 1`.
    pub fn elapsed(self, slot: usize) -> u32 {
        let j = slot as u32;
        match self {
            SlotConvention::ReleaseIndex => j,
            SlotConvention::SlotStart => j.saturating_sub(1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SlotConvention::ReleaseIndex => "release_index",
            SlotConvention::SlotStart => "slot_start",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "release_index" => Some(SlotConvention::ReleaseIndex),
            "slot_start" => Some(SlotConvention::SlotStart),
            _ => None,
        }
    }
}

/// Probabilities `q_m` that a molecule released at elapsed time `kT` is
/// absorbed during `[mT, (m+1)T)` after release.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrivalTable {
    pub k: u32,
    pub slot: f64,
    pub q: Vec<f64>,
}

impl ArrivalTable {
    pub fn q(&self, delay: usize) -> f64 {
        self.q.get(delay).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.q.iter().sum()
    }
}

fn slot_spec() -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: 1e-15,
        rel_tol: 1e-10,
        max_subdivisions: 2000,
    }
}

/// Arrival probabilities over `horizon` slots for a release at elapsed slot
/// index `k`. Values are clamped to `[0, 1]`.
pub fn arrival_table(config: &ChannelConfig, k: u32, horizon: usize) -> Result<ArrivalTable> {
    if horizon == 0 {
        return Err(Error::InvalidParameter("arrival horizon must be at least one slot".into()));
    }
    let pdf = HittingTimePdf::new(config, k)?;
    let slot = config.slot;
    // Integrate in units of T so values and tolerances are O(1).
    let scaled = |u: f64| pdf.density(u * slot) * slot;
    let spec = slot_spec();
    let mut q = Vec::with_capacity(horizon);
    for m in 0..horizon {
        let value = if m == 0 {
            integrate_from_singular(scaled, 0.0, 1.0, &spec)?.value
        } else {
            integrate(scaled, m as f64, (m + 1) as f64, &spec)?.value
        };
        q.push(value.clamp(0.0, 1.0));
    }
    Ok(ArrivalTable { k, slot, q })
}

/// Probability of absorption within `t` of release.
pub fn fht_cdf(config: &ChannelConfig, k: u32, t: f64) -> Result<f64> {
    if t <= 0.0 {
        return Ok(0.0);
    }
    let pdf = HittingTimePdf::new(config, k)?;
    let scale = pdf.time_scale();
    let scaled = |u: f64| pdf.density(u * scale) * scale;
    Ok(integrate_from_singular(scaled, 0.0, t / scale, &slot_spec())?.value)
}

/// Total probability of ever being absorbed.
pub fn hitting_probability(config: &ChannelConfig, k: u32) -> Result<f64> {
    let pdf = HittingTimePdf::new(config, k)?;
    let scale = pdf.time_scale();
    let scaled = |u: f64| pdf.density(u * scale) * scale;
    Ok(integrate_from_singular(scaled, 0.0, f64::INFINITY, &slot_spec())?.value)
}

/// Memoised arrival tables for one scenario and horizon.
///
/// Safe to share across threads; concurrent first requests for the same
/// slot may both compute the (deterministic) table, and one is kept.
#[derive(Debug)]
pub struct ArrivalCache {
    config: ChannelConfig,
    horizon: usize,
    tables: Mutex<HashMap<u32, Arc<ArrivalTable>>>,
}

impl ArrivalCache {
    pub fn new(config: ChannelConfig, horizon: usize) -> Result<Self> {
        config.validate()?;
        Ok(Self {
            config,
            horizon,
            tables: Mutex::new(HashMap::new()),
        })
    }

    pub fn config(&self) -> &ChannelConfig {
        &self.config
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn get(&self, k: u32) -> Result<Arc<ArrivalTable>> {
        if let Some(table) = self.tables.lock().expect("cache lock").get(&k) {
            return Ok(Arc::clone(table));
        }
        let table = Arc::new(arrival_table(&self.config, k, self.horizon)?);
        let mut tables = self.tables.lock().expect("cache lock");
        Ok(Arc::clone(tables.entry(k).or_insert(table)))
    }

    pub fn len(&self) -> usize {
        self.tables.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
