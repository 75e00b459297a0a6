use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{erf, exp_times_erfc_scaled};
use crate::scenario::{ChannelConfig, DistanceLaw, MobilityCase};

/// Inverse Gaussian first-passage density of drifted Brownian motion started
/// at distance `r0` from an absorbing point, drift `v_star` towards it.
///
/// A negative `v_star` gives the defective density of a molecule carried
/// away from the receiver; its total mass is `exp(-r0·|v_star|/D)`.
pub fn ig_pdf(r0: f64, d: f64, v_star: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let gap = r0 - v_star * t;
    let log = r0.ln() - 0.5 * (4.0 * PI * d * t * t * t).ln() - gap * gap / (4.0 * d * t);
    log.exp()
}

/// Zero-drift limit of [`ig_pdf`]. CDF: `erfc(r0/sqrt(4Dt))`.
pub fn levy_pdf(r0: f64, d: f64, t: f64) -> f64 {
    ig_pdf(r0, d, 0.0, t)
}

/// `ig_pdf` extended to a signed starting distance, as it appears inside
/// the closed-form mixture density: `m/sqrt(4πDt³)·exp(-(m - wt)²/(4Dt))`.
fn signed_ig_prefactor(d: f64, t: f64) -> f64 {
    1.0 / (4.0 * PI * d * t * t * t).sqrt()
}

/// Hitting-time density when the release distance is Gaussian,
/// `d ~ N(d_bar, 2s)`, the kernel is an inverse Gaussian in `|d|` with
/// diffusion `d_diff` and drift `v_star`, and `s = kT·D_var > 0`.
///
/// Both terms are evaluated in the log domain: every `exp(A)·(1 + erf(B))`
/// product goes through [`exp_times_erfc_scaled`]`(A, -B)`. The embedded
/// inverse Gaussian takes the *signed* mean distance; its sign cancels
/// against the `v_star·s/(D·d_bar) ± 1` coefficients, which are multiplied
/// out so `d_bar = 0` needs no special case.
pub fn mixture_pdf(d_bar: f64, s: f64, d_diff: f64, v_star: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let (m, w, d) = (d_bar, v_star, d_diff);
    let spread = d * t + s;

    let log_first = 0.5 * (s * d).ln() - PI.ln() - spread.ln() - 0.5 * t.ln()
        - m * m / (4.0 * s)
        - w * w * t / (4.0 * d);
    let first = log_first.exp();

    let tau = t + s / d;
    let gap = m - w * tau;
    let embedded_exponent = -gap * gap / (4.0 * d * tau);
    let shift = w * (w * s * s + 2.0 * w * s * d * t - 2.0 * m * d * d * t - 2.0 * m * s * d)
        / (4.0 * d * d * spread);
    let root = (t / spread).sqrt() / (4.0 * s * d).sqrt();
    let mut second = 0.0;
    for sign in [-1.0, 1.0] {
        let coefficient = w * s / d + sign * m;
        if coefficient == 0.0 {
            continue;
        }
        let exponent = embedded_exponent + shift + sign * w * m * t / (2.0 * spread);
        let b = (w * s + sign * m * d) * root;
        second += coefficient * exp_times_erfc_scaled(exponent, -b);
    }
    second *= 0.5 * signed_ig_prefactor(d, tau);
    (first + second).max(0.0)
}

/// Mobile TX, fixed RX, release at slot `k ≥ 1`.
pub fn fht_pdf_mobile_tx_fixed_rx(law: &DistanceLaw, d_m: f64, t: f64) -> Result<f64> {
    if law.sigma2 <= 0.0 {
        return Err(Error::DegenerateVariance { k: law.k });
    }
    Ok(mixture_pdf(law.d_bar, 0.5 * law.sigma2, d_m, law.v_star, t))
}

/// Mobile TX and RX co-moving with the flow, release at slot `k ≥ 1`.
///
/// Zero relative drift reduces the mixture to a Lévy-type closed form that
/// does not depend on the flow speed.
pub fn fht_pdf_mobile_both(law: &DistanceLaw, d_eff: f64, t: f64) -> Result<f64> {
    if law.sigma2 <= 0.0 {
        return Err(Error::DegenerateVariance { k: law.k });
    }
    if t <= 0.0 {
        return Ok(0.0);
    }
    let s = 0.5 * law.sigma2;
    let d0 = law.d_bar;
    let spread = d_eff * t + s;
    let first = ((s * d_eff).sqrt() / (PI * spread * t.sqrt())) * (-d0 * d0 / (4.0 * s)).exp();
    let tau = t + s / d_eff;
    let embedded = d0 * signed_ig_prefactor(d_eff, tau) * (-d0 * d0 / (4.0 * d_eff * tau)).exp();
    let second = embedded * erf(0.5 * d0 * (d_eff * t / (s * spread)).sqrt());
    Ok((first + second).max(0.0))
}

/// Fixed TX, RX carried away by the flow: Lévy law at the mean distance.
pub fn fht_pdf_fixed_tx_mobile_rx(law: &DistanceLaw, d_eff: f64, t: f64) -> Result<f64> {
    if law.d_bar <= 0.0 {
        return Err(Error::NonPositiveDistance {
            k: law.k,
            distance: law.d_bar,
        });
    }
    Ok(levy_pdf(law.d_bar, d_eff, t))
}

/// Hitting-time density for a molecule released at elapsed time `kT`.
pub fn fht_pdf(config: &ChannelConfig, k: u32, t: f64) -> Result<f64> {
    Ok(HittingTimePdf::new(config, k)?.density(t))
}

/// A validated hitting-time density for one (scenario, release slot) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HittingTimePdf {
    pub config: ChannelConfig,
    pub k: u32,
    pub case: MobilityCase,
    pub law: DistanceLaw,
}

impl HittingTimePdf {
    pub fn new(config: &ChannelConfig, k: u32) -> Result<Self> {
        let law = config.distance_law(k)?;
        if law.case == MobilityCase::FixedTxMobileRx && law.d_bar <= 0.0 {
            return Err(Error::NonPositiveDistance {
                k,
                distance: law.d_bar,
            });
        }
        Ok(Self {
            config: *config,
            k,
            case: law.case,
            law,
        })
    }

    pub fn density(&self, t: f64) -> f64 {
        let law = &self.law;
        match self.case {
            MobilityCase::FixedBoth => ig_pdf(self.config.r0(), self.config.d_m, law.v_star, t),
            _ if law.sigma2 <= 0.0 => ig_pdf(law.d_bar.abs(), law.d_eff, law.v_star, t),
            MobilityCase::FixedTxMobileRx => levy_pdf(law.d_bar, law.d_eff, t),
            MobilityCase::MobileTxFixedRx => {
                mixture_pdf(law.d_bar, 0.5 * law.sigma2, self.config.d_m, law.v_star, t)
            }
            MobilityCase::MobileBoth => fht_pdf_mobile_both(law, law.d_eff, t)
                .expect("variance checked above"),
        }
    }

    /// Time scale of the density: the diffusive time over the larger of the
    /// mean distance and the distance spread.
    pub fn time_scale(&self) -> f64 {
        let reach = self.law.d_bar.abs().max(self.law.sigma());
        reach * reach / self.law.d_eff
    }
}
