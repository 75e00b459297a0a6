//! Parameter sets of the published figures.
//!
//! Geometry and diffusion are shared: TX at 0, RX at 1 µm, `D_m = 0.5e-9`
//! m²/s. Link figures use ten slots, equiprobable bits and `μ_o = σ_o² = 10`
//! unless a figure overrides them.

use crate::scenario::ChannelConfig;

pub const R0: f64 = 1e-6;
pub const D_M: f64 = 0.5e-9;
/// `(D_tx, D_rx)` of the higher-mobility setting.
pub const HIGH_MOBILITY: (f64, f64) = (1e-10, 0.5e-12);
/// `(D_tx, D_rx)` of the lower-mobility setting.
pub const LOW_MOBILITY: (f64, f64) = (1e-11, 0.5e-13);
pub const FLOW: f64 = 1e-3;
/// Slot length of the hitting-time figures.
pub const PDF_SLOT: f64 = 0.3e-3;
pub const LINK_SLOTS: usize = 10;
pub const BETA: f64 = 0.5;
pub const NOISE: f64 = 10.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub label: String,
    pub config: ChannelConfig,
}

impl Scenario {
    fn new(label: impl Into<String>, config: ChannelConfig) -> Self {
        Self { label: label.into(), config }
    }
}

pub fn fixed_both(v: f64, slot: f64) -> ChannelConfig {
    ChannelConfig::fixed_both(R0, D_M, v, slot)
}

pub fn fixed_tx_mobile_rx(v: f64, slot: f64) -> ChannelConfig {
    ChannelConfig::fixed_tx_mobile_rx(R0, D_M, HIGH_MOBILITY.1, v, slot)
}

pub fn mobile_tx_fixed_rx(v: f64, slot: f64) -> ChannelConfig {
    ChannelConfig::mobile_tx_fixed_rx(R0, D_M, HIGH_MOBILITY.0, v, slot)
}

pub fn mobile_both(v: f64, slot: f64, (d_tx, d_rx): (f64, f64)) -> ChannelConfig {
    ChannelConfig::mobile_both(R0, D_M, d_tx, d_rx, v, slot)
}

fn v_label(v: f64) -> String {
    if v == 0.0 {
        "v0".into()
    } else {
        format!("v{v:e}")
    }
}

/// Hitting-time density figures: fixed TX with mobile RX, mobile TX with
/// fixed RX, and both mobile, each at the default flow.
pub fn hitting_time_figures() -> Vec<(&'static str, ChannelConfig)> {
    vec![
        ("fig3", fixed_tx_mobile_rx(FLOW, PDF_SLOT)),
        ("fig4", mobile_tx_fixed_rx(FLOW, PDF_SLOT)),
        ("fig5", mobile_both(FLOW, PDF_SLOT, HIGH_MOBILITY)),
    ]
}

/// Release slots plotted in the hitting-time figures.
pub const PDF_RELEASES: [u32; 4] = [0, 2, 5, 10];

/// Arrival probability figure: both single-mobile cases at two flows.
pub fn arrival_figure() -> Vec<Scenario> {
    let mut out = Vec::new();
    for v in [1e-3, 0.5e-3] {
        out.push(Scenario::new(format!("q0_fixedTx_mobileRx_{}", v_label(v)), fixed_tx_mobile_rx(v, PDF_SLOT)));
        out.push(Scenario::new(format!("q0_mobileTx_fixedRx_{}", v_label(v)), mobile_tx_fixed_rx(v, PDF_SLOT)));
    }
    out
}

/// ROC figure: both nodes mobile at two mobility levels, `T = 2 ms`.
pub fn roc_mobility() -> Vec<Scenario> {
    vec![
        Scenario::new("high_mobility", mobile_both(FLOW, 2e-3, HIGH_MOBILITY)),
        Scenario::new("low_mobility", mobile_both(FLOW, 2e-3, LOW_MOBILITY)),
    ]
}

pub const ROC_BUDGETS: [u64; 2] = [30, 90];

/// Common thresholds of the ROC sweeps, `1..=80` molecules.
pub fn roc_thresholds(step: f64) -> Vec<f64> {
    let n = (79.0 / step).round() as usize;
    (0..=n).map(|i| 1.0 + 79.0 * i as f64 / n as f64).collect()
}

/// ROC per slot length: both mobile with and without flow against fixed
/// nodes with and without flow.
pub fn roc_slot_length(slot: f64) -> Vec<Scenario> {
    vec![
        Scenario::new("mobile_both_v1e-3", mobile_both(FLOW, slot, HIGH_MOBILITY)),
        Scenario::new("mobile_both_v0", mobile_both(0.0, slot, HIGH_MOBILITY)),
        Scenario::new("fixed_both_v1e-3", fixed_both(FLOW, slot)),
        Scenario::new("fixed_both_v0", fixed_both(0.0, slot)),
    ]
}

pub const ROC_SLOT_LENGTHS: [f64; 3] = [1e-3, 2e-3, 10e-3];

/// ROC for a mobile RX at several flows, `T = 2 ms`.
pub fn roc_mobile_rx() -> Vec<Scenario> {
    [0.0, 5e-5, 2e-4]
        .iter()
        .map(|&v| Scenario::new(format!("fixedTx_mobileRx_{}", v_label(v)), fixed_tx_mobile_rx(v, 2e-3)))
        .collect()
}

/// ROC for a mobile TX at several flows, `T = 2 ms`.
pub fn roc_mobile_tx() -> Vec<Scenario> {
    [0.0, 1e-4, 3e-4, 1e-3]
        .iter()
        .map(|&v| Scenario::new(format!("mobileTx_fixedRx_{}", v_label(v)), mobile_tx_fixed_rx(v, 2e-3)))
        .collect()
}

/// Error rate against MSI variance, first panel: fixed and mobile nodes at
/// `T = 10 ms`, and a mobile TX with and without flow at `T = 2 ms`.
pub fn error_panel_a() -> Vec<Scenario> {
    vec![
        Scenario::new("fixed_both_v1e-3_T10ms", fixed_both(FLOW, 10e-3)),
        Scenario::new("fixed_both_v0_T10ms", fixed_both(0.0, 10e-3)),
        Scenario::new("mobile_both_high_T10ms", mobile_both(FLOW, 10e-3, HIGH_MOBILITY)),
        Scenario::new("mobile_both_low_T10ms", mobile_both(FLOW, 10e-3, LOW_MOBILITY)),
        Scenario::new("mobileTx_fixedRx_v0_T2ms", mobile_tx_fixed_rx(0.0, 2e-3)),
        Scenario::new("mobileTx_fixedRx_v1e-4_T2ms", mobile_tx_fixed_rx(1e-4, 2e-3)),
    ]
}

/// Error rate against MSI variance, second panel: mobile RX at several
/// flows, `T = 2 ms`.
pub fn error_panel_b() -> Vec<Scenario> {
    roc_mobile_rx()
}

pub const ERROR_BUDGET: u64 = 30;
pub const ERROR_MU_O: f64 = 0.0;

/// MSI variances of the error-rate sweeps.
pub fn error_noise_grid() -> Vec<f64> {
    vec![1.0, 3.0, 10.0, 30.0, 100.0, 300.0]
}

/// Threshold figure: both mobile, `T = 10 ms`, evaluated in slot 10.
pub fn threshold_config() -> ChannelConfig {
    mobile_both(FLOW, 10e-3, HIGH_MOBILITY)
}

pub const THRESHOLD_BUDGET: u64 = 120;
pub const THRESHOLD_SLOT: usize = 10;
/// `μ_o = σ_o²` levels of the threshold figure.
pub const THRESHOLD_NOISE: [f64; 2] = [1.0, 40.0];

/// Capacity against MSI variance, first panel, `T = 2 ms`.
pub fn capacity_panel_a() -> Vec<Scenario> {
    vec![
        Scenario::new("fixed_both_v1e-3", fixed_both(FLOW, 2e-3)),
        Scenario::new("fixed_both_v0", fixed_both(0.0, 2e-3)),
        Scenario::new("mobile_both_high", mobile_both(FLOW, 2e-3, HIGH_MOBILITY)),
        Scenario::new("mobile_both_low", mobile_both(FLOW, 2e-3, LOW_MOBILITY)),
    ]
}

/// Capacity against MSI variance, second panel: mobile TX with and without
/// flow, `T = 2 ms`.
pub fn capacity_panel_b() -> Vec<Scenario> {
    [0.0, 1e-4]
        .iter()
        .map(|&v| Scenario::new(format!("mobileTx_fixedRx_{}", v_label(v)), mobile_tx_fixed_rx(v, 2e-3)))
        .collect()
}

pub const CAPACITY_BUDGET: u64 = 60;

/// MSI variances of the capacity sweeps.
pub fn capacity_noise_grid() -> Vec<f64> {
    vec![1.0, 10.0, 50.0, 100.0]
}
