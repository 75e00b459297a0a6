//! Channel geometry, mobility regimes and the TX–RX distance law.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

/// Physical scenario of one TX/RX pair in a 1D flowing medium. SI units.
///
/// The mobility regime is never stored: [`ChannelConfig::mobility_case`]
/// derives it from the diffusion coefficients and advection speeds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig {
    pub x0_tx: f64,
    pub x0_rx: f64,
    /// Molecule diffusion coefficient.
    pub d_m: f64,
    pub d_tx: f64,
    pub d_rx: f64,
    /// Flow speed, from TX towards positive x.
    pub v: f64,
    pub v_tx: f64,
    pub v_rx: f64,
    /// Slot duration `T`.
    pub slot: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MobilityCase {
    FixedBoth,
    FixedTxMobileRx,
    MobileTxFixedRx,
    MobileBoth,
}

impl MobilityCase {
    pub const ALL: [MobilityCase; 4] = [
        MobilityCase::FixedBoth,
        MobilityCase::FixedTxMobileRx,
        MobilityCase::MobileTxFixedRx,
        MobilityCase::MobileBoth,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MobilityCase::FixedBoth => "fixed_both",
            MobilityCase::FixedTxMobileRx => "fixed_tx_mobile_rx",
            MobilityCase::MobileTxFixedRx => "mobile_tx_fixed_rx",
            MobilityCase::MobileBoth => "mobile_both",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        let key: String = name
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|c| c.name().replace('_', "") == key)
    }
}

impl fmt::Display for MobilityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sign function with `sgn(0) = 0`.
pub(crate) fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

impl ChannelConfig {
    /// TX at the origin, RX at `d0`, neither moving.
    pub fn fixed_both(d0: f64, d_m: f64, v: f64, slot: f64) -> Self {
        Self {
            x0_tx: 0.0,
            x0_rx: d0,
            d_m,
            d_tx: 0.0,
            d_rx: 0.0,
            v,
            v_tx: 0.0,
            v_rx: 0.0,
            slot,
        }
    }

    /// Fixed TX; RX diffuses with `d_rx` and is carried by the flow.
    pub fn fixed_tx_mobile_rx(d0: f64, d_m: f64, d_rx: f64, v: f64, slot: f64) -> Self {
        Self {
            d_rx,
            v_rx: v,
            ..Self::fixed_both(d0, d_m, v, slot)
        }
    }

    /// TX diffuses with `d_tx` and is carried by the flow; fixed RX.
    pub fn mobile_tx_fixed_rx(d0: f64, d_m: f64, d_tx: f64, v: f64, slot: f64) -> Self {
        Self {
            d_tx,
            v_tx: v,
            ..Self::fixed_both(d0, d_m, v, slot)
        }
    }

    /// Both nodes diffuse and are carried by the flow.
    pub fn mobile_both(d0: f64, d_m: f64, d_tx: f64, d_rx: f64, v: f64, slot: f64) -> Self {
        Self {
            d_tx,
            d_rx,
            v_tx: v,
            v_rx: v,
            ..Self::fixed_both(d0, d_m, v, slot)
        }
    }

    /// Signed initial distance `x0_rx - x0_tx`.
    pub fn d0(&self) -> f64 {
        self.x0_rx - self.x0_tx
    }

    pub fn r0(&self) -> f64 {
        self.d0().abs()
    }

    /// `D_m + D_rx`: diffusion of the molecule relative to the receiver.
    pub fn d_eff(&self) -> f64 {
        self.d_m + self.d_rx
    }

    pub fn d_tot(&self) -> f64 {
        self.d_tx + self.d_rx
    }

    /// Checks every invariant and returns the derived mobility case.
    pub fn validate(&self) -> Result<MobilityCase> {
        let fields = [
            ("x0_tx", self.x0_tx),
            ("x0_rx", self.x0_rx),
            ("D_m", self.d_m),
            ("D_tx", self.d_tx),
            ("D_rx", self.d_rx),
            ("v", self.v),
            ("v_tx", self.v_tx),
            ("v_rx", self.v_rx),
            ("T", self.slot),
        ];
        if let Some((name, value)) = fields.iter().find(|(_, x)| !x.is_finite()) {
            return Err(invalid(format!("{name} = {value} is not finite")));
        }
        if self.d_m <= 0.0 {
            return Err(invalid(format!("D_m must be positive, got {}", self.d_m)));
        }
        if self.d_tx < 0.0 || self.d_rx < 0.0 {
            return Err(invalid("D_tx and D_rx must be nonnegative".into()));
        }
        if self.slot <= 0.0 {
            return Err(invalid(format!("T must be positive, got {}", self.slot)));
        }
        if self.v < 0.0 {
            return Err(invalid(format!("v must be nonnegative, got {}", self.v)));
        }
        let is_flow_speed = |s: f64| s == 0.0 || s == self.v;
        if !is_flow_speed(self.v_tx) || !is_flow_speed(self.v_rx) {
            return Err(invalid(format!(
                "v_tx and v_rx must each be 0 or v = {}; got v_tx = {}, v_rx = {}",
                self.v, self.v_tx, self.v_rx
            )));
        }
        if self.d0() == 0.0 {
            return Err(invalid("TX and RX start at the same position (d0 = 0)".into()));
        }

        let tx_fixed = self.d_tx == 0.0 && self.v_tx == 0.0;
        let rx_fixed = self.d_rx == 0.0 && self.v_rx == 0.0;
        let tx_mobile = self.d_tx > 0.0 && self.v_tx == self.v;
        let rx_mobile = self.d_rx > 0.0 && self.v_rx == self.v;
        match (tx_fixed, rx_fixed, tx_mobile, rx_mobile) {
            (true, true, _, _) => Ok(MobilityCase::FixedBoth),
            (true, false, _, true) => Ok(MobilityCase::FixedTxMobileRx),
            (false, true, true, _) => Ok(MobilityCase::MobileTxFixedRx),
            (false, false, true, true) => Ok(MobilityCase::MobileBoth),
            _ => Err(invalid(format!(
                "no mobility case matches D_tx = {}, v_tx = {}, D_rx = {}, v_rx = {} (v = {})",
                self.d_tx, self.v_tx, self.d_rx, self.v_rx, self.v
            ))),
        }
    }

    pub fn mobility_case(&self) -> Result<MobilityCase> {
        self.validate()
    }

    /// Distance statistics at the start of slot `k` (elapsed time `kT`).
    pub fn distance_law(&self, k: u32) -> Result<DistanceLaw> {
        distance_law(self, k)
    }
}

fn invalid(msg: String) -> Error {
    Error::InvalidConfig(msg)
}

/// Gaussian law of the signed TX–RX distance at elapsed time `kT`, with the
/// effective diffusion and drift seen by a molecule released at that time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceLaw {
    pub k: u32,
    pub case: MobilityCase,
    /// Mean signed distance `d0 + kT(v_rx - v_tx)`.
    pub d_bar: f64,
    /// Distance variance `2kT(D_tx + D_rx)`.
    pub sigma2: f64,
    /// Noncentrality `|d_bar|/sigma`; infinite when `sigma2 = 0`.
    pub lambda: f64,
    pub d_eff: f64,
    pub d_tot: f64,
    /// Signed drift of the molecule towards the receiver.
    pub v_star: f64,
}

impl DistanceLaw {
    pub fn sigma(&self) -> f64 {
        self.sigma2.sqrt()
    }
}

pub fn distance_law(config: &ChannelConfig, k: u32) -> Result<DistanceLaw> {
    let case = config.validate()?;
    let elapsed = k as f64 * config.slot;
    let d_bar = config.d0() + elapsed * (config.v_rx - config.v_tx);
    let sigma2 = 2.0 * elapsed * config.d_tot();
    let lambda = if sigma2 > 0.0 {
        (d_bar * d_bar / sigma2).sqrt()
    } else {
        f64::INFINITY
    };
    let v_star = match case {
        MobilityCase::FixedBoth | MobilityCase::MobileTxFixedRx => sgn(d_bar) * config.v,
        MobilityCase::FixedTxMobileRx | MobilityCase::MobileBoth => 0.0,
    };
    Ok(DistanceLaw {
        k,
        case,
        d_bar,
        sigma2,
        lambda,
        d_eff: config.d_eff(),
        d_tot: config.d_tot(),
        v_star,
    })
}

/// Density of the Euclidean distance `|d_k|` (scaled noncentral chi law with
/// one degree of freedom).
///
/// With `I_{-1/2}(y) = (e^y + e^{-y})/sqrt(2πy)` the Bessel factor cancels and
/// the density is a folded normal, evaluated here without overflow.
pub fn distance_pdf(law: &DistanceLaw, r: f64) -> Result<f64> {
    if law.sigma2 <= 0.0 {
        return Err(Error::DegenerateVariance { k: law.k });
    }
    if r < 0.0 {
        return Ok(0.0);
    }
    let sigma = law.sigma();
    let x = r / sigma;
    let lambda = law.lambda;
    let near = (-0.5 * (x - lambda).powi(2)).exp();
    let far = (-0.5 * (x + lambda).powi(2)).exp();
    Ok((near + far) / (sigma * (2.0 * PI).sqrt()))
}
