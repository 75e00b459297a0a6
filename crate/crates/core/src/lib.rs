//! First-hitting-time distributions and on-off-keying link analysis for
//! diffusive molecular communication in a flowing 1D medium with mobile
//! transmitter and receiver.
//!
//! The crate is organised bottom-up:
//!
//! - [`numerics`]: error functions, overflow-safe `exp(a)·erfc(x)`, adaptive
//!   Gauss–Kronrod quadrature and reproducible random streams.
//! - [`scenario`]: channel geometry, mobility case and the Gaussian law of the
//!   TX–RX distance at the start of a slot.
//! - [`hitting_time`]: closed-form and quadrature hitting-time densities and
//!   per-slot arrival probabilities.
//! - [`particle_sim`]: random-walk Monte Carlo of molecule absorption.
//! - [`link`]: hypothesis statistics with ISI, interference and counting
//!   noise; optimal threshold; detection, error and capacity metrics; Monte
//!   Carlo link simulation.
//! - [`presets`]: parameter sets of the published figures.
//! - [`validation`]: comparison of particle simulations against the analytic
//!   densities (KS statistic, L1 distance, absorbed fraction).

pub mod error;
pub mod hitting_time;
pub mod link;
pub mod numerics;
pub mod particle_sim;
pub mod presets;
pub mod scenario;
pub mod validation;

pub use error::{Error, Result};
pub use scenario::{ChannelConfig, DistanceLaw, MobilityCase};
