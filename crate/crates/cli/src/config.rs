//! Flat `key = value` run configuration.
//!
//! Keys use SI units and mirror the model symbols (`D_m`, `T`, `Q`, ...).
//! Lines starting with `#` are comments. Keys containing a dot and the
//! bookkeeping keys written into metadata files are accepted and ignored,
//! so a metadata sidecar can be fed back in as a config.

use std::fmt::Write as _;
use std::path::Path;

use mobimc::hitting_time::SlotConvention;
use mobimc::link::SamplingMode;
use mobimc::{ChannelConfig, MobilityCase};

use crate::error::CliError;

/// Keys written by the runner that carry no input.
const BOOKKEEPING: [&str; 5] = ["version", "runtime_s", "runtime_budget_s", "files", "preset"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Analytic,
    Sim,
    Both,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Analytic => "analytic",
            Mode::Sim => "sim",
            Mode::Both => "both",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "analytic" => Some(Mode::Analytic),
            "sim" => Some(Mode::Sim),
            "both" => Some(Mode::Both),
            _ => None,
        }
    }

    pub fn analytic(self) -> bool {
        self != Mode::Sim
    }

    pub fn sim(self) -> bool {
        self != Mode::Analytic
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub kind: Option<String>,
    pub case: Option<MobilityCase>,
    pub x0_tx: f64,
    pub x0_rx: f64,
    pub d_m: f64,
    pub d_tx: f64,
    pub d_rx: f64,
    pub v: f64,
    /// `None` follows the flow when the node diffuses.
    pub v_tx: Option<f64>,
    pub v_rx: Option<f64>,
    pub slot: f64,
    pub budget: u64,
    pub beta: f64,
    pub mu_o: f64,
    pub sigma2_o: f64,
    pub slots: usize,
    /// Slot evaluated by the threshold sweep; defaults to the last slot.
    pub j: Option<usize>,
    pub releases: Vec<u32>,
    pub k_max: u32,
    pub delays: usize,
    pub convention: SlotConvention,
    pub counting_noise: bool,
    pub sampling: SamplingMode,
    pub trials: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub sigma2_o_grid: Vec<f64>,
    pub seed: u64,
    pub particles: usize,
    /// Particle step; `None` uses `min(T, 1 ms)/1000`.
    pub dt: Option<f64>,
    pub grid: usize,
    pub mode: Mode,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            kind: None,
            case: None,
            x0_tx: 0.0,
            x0_rx: 1e-6,
            d_m: 0.5e-9,
            d_tx: 0.0,
            d_rx: 0.0,
            v: 1e-3,
            v_tx: None,
            v_rx: None,
            slot: 0.3e-3,
            budget: 30,
            beta: 0.5,
            mu_o: 10.0,
            sigma2_o: 10.0,
            slots: 10,
            j: None,
            releases: vec![0, 2, 5, 10],
            k_max: 10,
            delays: 1,
            convention: SlotConvention::ReleaseIndex,
            counting_noise: true,
            sampling: SamplingMode::GaussianMatched,
            trials: 100_000,
            t_min: 1e-7,
            t_max: 1e-2,
            gamma_min: 1.0,
            gamma_max: 80.0,
            sigma2_o_grid: vec![1.0, 3.0, 10.0, 30.0, 100.0],
            seed: 1,
            particles: 100_000,
            dt: None,
            grid: 200,
            mode: Mode::Analytic,
        }
    }
}

fn bad(key: &str, value: &str, what: &str) -> CliError {
    CliError::Validation(format!("{key} = {value}: {what}"))
}

fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value.parse().map_err(|_| bad(key, value, "not a valid number"))
}

fn list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>, CliError> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| num(key, s))
        .collect()
}

fn join<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Validation(format!("line {}: expected key = value, got {line:?}", lineno + 1))
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "kind" => self.kind = Some(value.to_string()),
            "case" => {
                self.case = Some(MobilityCase::from_name(value).ok_or_else(|| bad(key, value, "unknown mobility case"))?)
            }
            "x0_tx" => self.x0_tx = num(key, value)?,
            "x0_rx" => self.x0_rx = num(key, value)?,
            "d0" | "r0" => {
                self.x0_tx = 0.0;
                self.x0_rx = num(key, value)?;
            }
            "D_m" => self.d_m = num(key, value)?,
            "D_tx" => self.d_tx = num(key, value)?,
            "D_rx" => self.d_rx = num(key, value)?,
            "v" => self.v = num(key, value)?,
            "v_tx" => self.v_tx = Some(num(key, value)?),
            "v_rx" => self.v_rx = Some(num(key, value)?),
            "T" => self.slot = num(key, value)?,
            "Q" => self.budget = num(key, value)?,
            "beta" => self.beta = num(key, value)?,
            "mu_o" => self.mu_o = num(key, value)?,
            "sigma2_o" => self.sigma2_o = num(key, value)?,
            "i" => self.slots = num(key, value)?,
            "j" => self.j = Some(num(key, value)?),
            "k" => self.releases = list(key, value)?,
            "k_max" => self.k_max = num(key, value)?,
            "delays" => self.delays = num(key, value)?,
            "convention" => {
                self.convention =
                    SlotConvention::from_name(value).ok_or_else(|| bad(key, value, "expected release_index or slot_start"))?
            }
            "counting_noise" => {
                self.counting_noise = value.parse().map_err(|_| bad(key, value, "expected true or false"))?
            }
            "sampling" => {
                self.sampling = SamplingMode::from_name(value)
                    .ok_or_else(|| bad(key, value, "expected gaussian-matched or binomial-exact"))?
            }
            "trials" => self.trials = num(key, value)?,
            "t_min" => self.t_min = num(key, value)?,
            "t_max" => self.t_max = num(key, value)?,
            "gamma_min" => self.gamma_min = num(key, value)?,
            "gamma_max" => self.gamma_max = num(key, value)?,
            "sigma2_o_grid" => self.sigma2_o_grid = list(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "particles" => self.particles = num(key, value)?,
            "dt" => self.dt = if value == "default" { None } else { Some(num(key, value)?) },
            "grid" => self.grid = num(key, value)?,
            "mode" => self.mode = Mode::from_name(value).ok_or_else(|| bad(key, value, "expected analytic, sim or both"))?,
            _ if key.contains('.') || BOOKKEEPING.contains(&key) => {}
            _ => return Err(CliError::Validation(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Channel described by the config, checked against `case` if given.
    pub fn channel(&self) -> Result<ChannelConfig, CliError> {
        let follows = |d: f64| if d > 0.0 { self.v } else { 0.0 };
        let (d_tx, d_rx, v_tx, v_rx) = match self.case {
            Some(MobilityCase::FixedBoth) => (0.0, 0.0, 0.0, 0.0),
            Some(MobilityCase::FixedTxMobileRx) => (0.0, self.d_rx, 0.0, self.v_rx.unwrap_or(self.v)),
            Some(MobilityCase::MobileTxFixedRx) => (self.d_tx, 0.0, self.v_tx.unwrap_or(self.v), 0.0),
            Some(MobilityCase::MobileBoth) => {
                (self.d_tx, self.d_rx, self.v_tx.unwrap_or(self.v), self.v_rx.unwrap_or(self.v))
            }
            None => (
                self.d_tx,
                self.d_rx,
                self.v_tx.unwrap_or(follows(self.d_tx)),
                self.v_rx.unwrap_or(follows(self.d_rx)),
            ),
        };
        let channel = ChannelConfig {
            x0_tx: self.x0_tx,
            x0_rx: self.x0_rx,
            d_m: self.d_m,
            d_tx,
            d_rx,
            v: self.v,
            v_tx,
            v_rx,
            slot: self.slot,
        };
        let case = channel.validate()?;
        if let Some(want) = self.case {
            if want != case {
                return Err(CliError::Validation(format!(
                    "case = {want} but the parameters describe {case}"
                )));
            }
        }
        Ok(channel)
    }

    pub fn slot_index(&self) -> usize {
        self.j.unwrap_or(self.slots)
    }

    /// Every input key in a fixed order; parses back to an equal config.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut put = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        if let Some(kind) = &self.kind {
            put("kind", kind.clone());
        }
        if let Some(case) = self.case {
            put("case", case.name().into());
        }
        put("x0_tx", self.x0_tx.to_string());
        put("x0_rx", self.x0_rx.to_string());
        put("D_m", self.d_m.to_string());
        put("D_tx", self.d_tx.to_string());
        put("D_rx", self.d_rx.to_string());
        put("v", self.v.to_string());
        if let Some(v) = self.v_tx {
            put("v_tx", v.to_string());
        }
        if let Some(v) = self.v_rx {
            put("v_rx", v.to_string());
        }
        put("T", self.slot.to_string());
        put("Q", self.budget.to_string());
        put("beta", self.beta.to_string());
        put("mu_o", self.mu_o.to_string());
        put("sigma2_o", self.sigma2_o.to_string());
        put("i", self.slots.to_string());
        if let Some(j) = self.j {
            put("j", j.to_string());
        }
        put("k", join(&self.releases));
        put("k_max", self.k_max.to_string());
        put("delays", self.delays.to_string());
        put("convention", self.convention.name().into());
        put("counting_noise", self.counting_noise.to_string());
        put("sampling", self.sampling.name().into());
        put("trials", self.trials.to_string());
        put("t_min", self.t_min.to_string());
        put("t_max", self.t_max.to_string());
        put("gamma_min", self.gamma_min.to_string());
        put("gamma_max", self.gamma_max.to_string());
        put("sigma2_o_grid", join(&self.sigma2_o_grid));
        put("seed", self.seed.to_string());
        put("particles", self.particles.to_string());
        put("dt", self.dt.map_or("default".into(), |d| d.to_string()));
        put("grid", self.grid.to_string());
        put("mode", self.mode.name().into());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_round_trips() {
        let mut cfg = RunConfig::default();
        cfg.set("case", "mobile_both").unwrap();
        cfg.set("D_tx", "1e-10").unwrap();
        cfg.set("D_rx", "0.5e-12").unwrap();
        cfg.set("T", "0.002").unwrap();
        cfg.set("sigma2_o_grid", "1, 2.5, 1e3").unwrap();
        cfg.set("dt", "3e-7").unwrap();
        cfg.kind = Some("roc".into());
        assert_eq!(RunConfig::parse(&cfg.render()).unwrap(), cfg);
    }

    #[test]
    fn case_fills_node_velocities() {
        let cfg = RunConfig::parse("case = mobileTxFixedRx\nD_tx = 1e-10\nv = 1e-4\n").unwrap();
        let ch = cfg.channel().unwrap();
        assert_eq!((ch.v_tx, ch.v_rx, ch.d_rx), (1e-4, 0.0, 0.0));
    }

    #[test]
    fn case_must_match_parameters() {
        let cfg = RunConfig::parse("case = mobile_both\nD_tx = 1e-10\n").unwrap();
        assert!(matches!(cfg.channel(), Err(CliError::Validation(_))));
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(RunConfig::parse("D_q = 1").is_err());
        assert!(RunConfig::parse("T = fast").is_err());
        assert!(RunConfig::parse("no equals sign").is_err());
        assert!(RunConfig::parse("version = 0.1.0\nscenario.a.T = 1\n# note\n").is_ok());
    }

    #[test]
    fn coincident_nodes_are_invalid() {
        let cfg = RunConfig::parse("x0_rx = 0").unwrap();
        assert!(matches!(cfg.channel(), Err(CliError::Validation(_))));
    }
}
