use crate::error::{Error, Result};

use super::metrics::{decision_thresholds, mutual_information, slot_detection};
use super::params::LinkParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Capacity {
    /// Bits per slot.
    pub bits: f64,
    pub beta_star: f64,
}

/// `n` evenly spaced priors on `[0.01, 0.99]`.
pub fn beta_grid(n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![0.5],
        _ => (0..n).map(|i| 0.01 + 0.98 * i as f64 / (n - 1) as f64).collect(),
    }
}

/// Slot-averaged mutual information at prior `beta`, with the thresholds and
/// the interference statistics both recomputed for that prior.
pub fn average_information(params: &LinkParams, beta: f64) -> Result<f64> {
    let p = params.with_beta(beta);
    p.validate()?;
    let thresholds = decision_thresholds(&p)?;
    let per_slot = slot_detection(&p, &thresholds)?;
    Ok(per_slot.iter().map(|&(d, f)| mutual_information(d, f, beta)).sum::<f64>() / per_slot.len() as f64)
}

/// Best prior among `grid`.
pub fn capacity_on_grid(params: &LinkParams, grid: &[f64]) -> Result<Capacity> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty prior grid".into()));
    }
    let mut best = Capacity { bits: f64::NEG_INFINITY, beta_star: f64::NAN };
    for &beta in grid {
        let bits = average_information(params, beta)?;
        if bits > best.bits {
            best = Capacity { bits, beta_star: beta };
        }
    }
    Ok(best)
}

/// Capacity over `β`: best of a 101-point grid, then golden-section
/// refinement between the neighbours of the best grid point.
pub fn capacity(params: &LinkParams) -> Result<Capacity> {
    capacity_refined(params, 101)
}

/// As [`capacity`] with a coarse grid of `n_grid` points.
pub fn capacity_refined(params: &LinkParams, n_grid: usize) -> Result<Capacity> {
    let grid = beta_grid(n_grid);
    let coarse = capacity_on_grid(params, &grid)?;
    let idx = grid.iter().position(|&b| b == coarse.beta_star).unwrap_or(0);
    let lo = grid[idx.saturating_sub(1)];
    let hi = grid[(idx + 1).min(grid.len() - 1)];
    if hi <= lo {
        return Ok(coarse);
    }
    let refined = golden_max(|b| average_information(params, b), lo, hi, 1e-8)?;
    Ok(if refined.bits > coarse.bits { refined } else { coarse })
}

fn golden_max(f: impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64, tol: f64) -> Result<Capacity> {
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc >= fd {
        Capacity { bits: fc, beta_star: c }
    } else {
        Capacity { bits: fd, beta_star: d }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::ArrivalMatrix;

    #[test]
    fn perfect_channel_gives_one_bit_at_even_prior() {
        // Every molecule arrives in its own slot and the counts separate
        // the hypotheses by many standard deviations.
        let arrivals = ArrivalMatrix::time_invariant(&[1.0, 0.0, 0.0], 3).unwrap();
        let params = LinkParams::new(arrivals, 1_000_000, 0.5, 0.0, 0.0).unwrap();
        let params = LinkParams { mu_o: 1.0, sigma2_o: 1.0, ..params };
        let c = capacity(&params).unwrap();
        assert!((c.bits - 1.0).abs() < 1e-12, "{c:?}");
        assert!((c.beta_star - 0.5).abs() < 1e-6, "{c:?}");
    }

    #[test]
    fn golden_section_finds_parabola_peak() {
        let c = golden_max(|x| Ok(1.0 - (x - 0.3).powi(2)), 0.0, 1.0, 1e-10).unwrap();
        assert!((c.beta_star - 0.3).abs() < 1e-8);
    }

    #[test]
    fn grid_shape() {
        let g = beta_grid(101);
        assert_eq!(g.len(), 101);
        assert!((g[0] - 0.01).abs() < 1e-15 && (g[100] - 0.99).abs() < 1e-15);
        assert!((g[50] - 0.5).abs() < 1e-15);
    }
}
