//! On-off keyed link over the mobile channel: hypothesis statistics with
//! interference and noise, likelihood-ratio thresholds, detection and error
//! probabilities, mutual information, capacity, and Monte Carlo checks.

mod capacity;
mod metrics;
mod params;
mod sim;
mod stats;
mod threshold;

pub use capacity::{average_information, beta_grid, capacity, capacity_on_grid, capacity_refined, Capacity};
pub use metrics::{
    average_detection, decision_thresholds, detection_probs, error_probability, mutual_information,
    optimal_thresholds, pd_at_pfa, roc_sweep, slot_detection, slot_error, slot_error_sweep, RocPoint,
};
pub use params::{ArrivalMatrix, LinkParams};
pub use sim::{simulate_link, LinkEstimate, SamplingMode};
pub use stats::{all_stats, hypothesis_stats, isi_terms, HypothesisStats, IsiTerm};
pub use threshold::{
    detect, log_likelihood_ratio, lower_branch_mass, optimal_threshold, Threshold, ThresholdRule,
    EQUAL_VARIANCE_RTOL,
};
