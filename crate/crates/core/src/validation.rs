//! Comparison of particle samples with the analytic hitting-time law.
//!
//! Both sides are compared as sub-distributions on `(0, t_max]`: the
//! empirical CDF counts hits over all particles, and the analytic CDF is the
//! integral of the density, so missed mass is part of the comparison.

use crate::error::{Error, Result};
use crate::hitting_time::HittingTimePdf;
use crate::numerics::{integrate, integrate_from_singular, QuadratureSpec};
use crate::particle_sim::{simulate_hits, HitSample, SimSpec};
use crate::scenario::{ChannelConfig, MobilityCase};

/// KS bound used for the pass/fail flag.
pub const KS_TOLERANCE: f64 = 0.01;

fn piece_spec() -> QuadratureSpec {
    QuadratureSpec { abs_tol: 1e-13, rel_tol: 1e-10, max_subdivisions: 200 }
}

/// Analytic CDF evaluated at each of `times`, which must be sorted.
pub fn analytic_cdf_at(pdf: &HittingTimePdf, times: &[f64]) -> Result<Vec<f64>> {
    let spec = piece_spec();
    let mut out = Vec::with_capacity(times.len());
    let mut acc = 0.0;
    let mut prev = 0.0;
    for &t in times {
        if t < prev {
            return Err(Error::InvalidParameter("times must be sorted".into()));
        }
        if t > prev {
            let piece = if prev == 0.0 {
                integrate_from_singular(|s| pdf.density(s), 0.0, t, &spec)?
            } else {
                integrate(|s| pdf.density(s), prev, t, &spec)?
            };
            acc += piece.value;
            prev = t;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Kolmogorov–Smirnov distance between the empirical and analytic
/// sub-CDFs on `(0, t_max]`.
pub fn ks_statistic(sample: &HitSample, pdf: &HittingTimePdf, t_max: f64) -> Result<f64> {
    let n = sample.n_particles();
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let mut times = sample.hit_times.clone();
    times.sort_by(f64::total_cmp);
    times.push(t_max);
    let cdf = analytic_cdf_at(pdf, &times)?;
    let n = n as f64;
    let mut ks: f64 = 0.0;
    for (i, f) in cdf[..cdf.len() - 1].iter().enumerate() {
        ks = ks.max((f - i as f64 / n).abs()).max((f - (i + 1) as f64 / n).abs());
    }
    let absorbed = sample.hit_times.len() as f64 / n;
    Ok(ks.max((cdf[cdf.len() - 1] - absorbed).abs()))
}

/// `Σ |p̂_b − p_b|` over bins, where `p_b` is the analytic mass of bin `b`.
pub fn l1_distance(empirical: &[f64], pdf: &HittingTimePdf, edges: &[f64]) -> Result<f64> {
    if empirical.len() + 1 != edges.len() {
        return Err(Error::InvalidParameter("one density per bin expected".into()));
    }
    let cdf = analytic_cdf_at(pdf, edges)?;
    Ok(empirical
        .iter()
        .zip(edges.windows(2))
        .zip(cdf.windows(2))
        .map(|((d, w), c)| (d * (w[1] - w[0]) - (c[1] - c[0])).abs())
        .sum())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub case: MobilityCase,
    pub k: u32,
    pub n_particles: usize,
    pub absorbed_sim: f64,
    pub absorbed_analytic: f64,
    pub ks: f64,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.ks < KS_TOLERANCE
    }
}

/// Simulates one `(config, k)` pair and compares it with the analytic law.
pub fn validate_particles(config: &ChannelConfig, k: u32, spec: &SimSpec) -> Result<ValidationReport> {
    let case = config.validate()?;
    let sample = simulate_hits(config, k, spec)?;
    let pdf = HittingTimePdf::new(config, k)?;
    let ks = ks_statistic(&sample, &pdf, spec.t_max)?;
    let absorbed_analytic = *analytic_cdf_at(&pdf, &[spec.t_max])?.last().unwrap();
    Ok(ValidationReport {
        case,
        k,
        n_particles: spec.n_particles,
        absorbed_sim: sample.absorbed_fraction(),
        absorbed_analytic,
        ks,
    })
}
