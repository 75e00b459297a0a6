use crate::error::{Error, Result};
use crate::numerics::{integrate, QuadratureSpec};
use crate::scenario::{distance_pdf, ChannelConfig};

use super::density::ig_pdf;

/// Hitting-time density by direct quadrature of the distance mixture
///
/// `f(t; k) = ∫₀^∞ f(t | r) f_{r_k}(r) dr`,
///
/// with an inverse Gaussian kernel in `r` (diffusion `D_m + D_rx`, drift
/// `sgn(d̄_k)·v` or zero) and the noncentral-chi distance density. Shares no
/// algebra with the closed forms and serves as their oracle.
///
/// For a mobile RX on a fixed TX this also accounts for the RX position
/// spread accumulated before release, which the Lévy closed form neglects.
pub fn fht_pdf_numeric(config: &ChannelConfig, k: u32, t: f64) -> Result<f64> {
    let law = config.distance_law(k)?;
    if law.sigma2 <= 0.0 {
        return Err(Error::DegenerateVariance { k });
    }
    if t <= 0.0 {
        return Ok(0.0);
    }
    let sigma = law.sigma();
    let integrand = |x: f64| {
        let r = x * sigma;
        let density = distance_pdf(&law, r).expect("variance is positive");
        ig_pdf(r, law.d_eff, law.v_star, t) * density * sigma
    };

    // Panel edges around the distance mode and around the kernel's peak in
    // r, each bracketed by 40 of its own widths so narrow peaks are resolved.
    let kernel_width = (2.0 * law.d_eff * t).sqrt() / sigma;
    let drift_point = (law.v_star * t / sigma).max(0.0);
    let mut edges = vec![0.0];
    for (centre, width) in [(law.lambda, 1.0), (drift_point, kernel_width)] {
        edges.extend([centre - 40.0 * width, centre, centre + 40.0 * width]);
    }
    let reach = law.lambda.max(drift_point) + 40.0;
    edges.retain(|e| *e >= 0.0 && *e <= reach && e.is_finite());
    edges.push(reach);
    edges.sort_by(f64::total_cmp);
    edges.dedup();

    let spec = QuadratureSpec::relative(1e-12);
    let mut total = 0.0;
    for pair in edges.windows(2) {
        if pair[1] > pair[0] {
            total += integrate(integrand, pair[0], pair[1], &spec)?.value;
        }
    }
    Ok(total)
}
