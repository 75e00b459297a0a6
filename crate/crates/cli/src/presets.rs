//! Figure presets: each writes the dataset of one published figure.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use mobimc::presets::{self as p, Scenario};
use mobimc::ChannelConfig;

use crate::commands::{self, SimOptions};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{linspace, Run};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8a,
    Fig8b,
    Fig8c,
    Fig9a,
    Fig9b,
    Fig10a,
    Fig10b,
    Fig11,
    Fig12a,
    Fig12b,
    /// Runs the analysis named by the config's `kind` key.
    Custom,
}

impl Preset {
    pub fn name(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }
}

fn describe(run: &mut Run, label: &str, ch: &ChannelConfig) {
    let prefix = format!("scenario.{label}");
    if let Ok(case) = ch.validate() {
        run.note(format!("{prefix}.case"), case);
    }
    for (key, value) in [
        ("x0_tx", ch.x0_tx),
        ("x0_rx", ch.x0_rx),
        ("D_m", ch.d_m),
        ("D_tx", ch.d_tx),
        ("D_rx", ch.d_rx),
        ("v", ch.v),
        ("v_tx", ch.v_tx),
        ("v_rx", ch.v_rx),
        ("T", ch.slot),
    ] {
        run.note(format!("{prefix}.{key}"), value);
    }
}

fn link_curves(
    run: &mut Run,
    cfg: &RunConfig,
    scenarios: &[Scenario],
    budget: u64,
    mu_o: f64,
    sigma2_o: f64,
    tag_budget: bool,
) -> Result<Vec<(String, mobimc::link::LinkParams)>, CliError> {
    let link_cfg = RunConfig { budget, mu_o, sigma2_o, slots: p::LINK_SLOTS, beta: p::BETA, ..cfg.clone() };
    scenarios
        .iter()
        .map(|s| {
            let label = if tag_budget { format!("{}_Q{budget}", s.label) } else { s.label.clone() };
            describe(run, &label, &s.config);
            run.note(format!("scenario.{label}.Q"), budget);
            run.note(format!("scenario.{label}.mu_o"), mu_o);
            run.note(format!("scenario.{label}.sigma2_o"), sigma2_o);
            Ok((label, commands::link_params(&link_cfg, &s.config)?))
        })
        .collect()
}

fn roc_figure(run: &mut Run, cfg: &RunConfig, file: &str, scenarios: &[Scenario], budgets: &[u64]) -> Result<(), CliError> {
    let mut curves = Vec::new();
    for &q in budgets {
        curves.extend(link_curves(run, cfg, scenarios, q, p::NOISE, p::NOISE, budgets.len() > 1)?);
    }
    let gammas = linspace(1.0, 80.0, cfg.grid.max(2));
    let sim = cfg.mode.sim().then(|| SimOptions::from_config(cfg));
    run.save(file, &commands::roc_table(&curves, &gammas, sim)?)
}

fn pdf_figure(run: &mut Run, cfg: &RunConfig, fig: &str, channel: &ChannelConfig) -> Result<(), CliError> {
    describe(run, fig, channel);
    let releases = p::PDF_RELEASES.to_vec();
    if cfg.mode.analytic() {
        run.save(&format!("{fig}_pdf.csv"), &commands::pdf_table(channel, &releases, &commands::pdf_grid(cfg)?)?)?;
    }
    if cfg.mode.sim() {
        let spec = commands::particle_spec(cfg, channel)?;
        let (hist, summary) = commands::particle_tables(channel, &releases, &spec, cfg.grid)?;
        run.save(&format!("{fig}_pdf_sim.csv"), &hist)?;
        run.save(&format!("{fig}_validation.csv"), &summary)?;
    }
    Ok(())
}

pub fn run_preset(preset: Preset, cfg: &RunConfig, out: &Path) -> Result<PathBuf, CliError> {
    if preset == Preset::Custom {
        let kind = cfg
            .kind
            .clone()
            .ok_or_else(|| CliError::Validation("custom preset needs a `kind` key in the config".into()))?;
        return crate::run_kind(&kind, cfg, out);
    }
    let name = preset.name();
    let budget_s = match preset {
        Preset::Fig3 | Preset::Fig4 | Preset::Fig5 if cfg.mode.sim() => 120.0 * p::PDF_RELEASES.len() as f64,
        Preset::Fig10a | Preset::Fig10b if cfg.mode.sim() => 300.0,
        _ => 60.0,
    };
    let mut run = Run::new(out, &name, budget_s)?;
    run.note("preset", &name);
    let sim = cfg.mode.sim().then(|| SimOptions::from_config(cfg));
    match preset {
        Preset::Fig3 | Preset::Fig4 | Preset::Fig5 => {
            let (_, channel) = p::hitting_time_figures()
                .into_iter()
                .find(|(f, _)| *f == name)
                .expect("every density figure has a scenario");
            pdf_figure(&mut run, cfg, &name, &channel)?;
        }
        Preset::Fig6 => {
            let curves: Vec<(String, ChannelConfig)> = p::arrival_figure()
                .into_iter()
                .map(|s| {
                    describe(&mut run, &s.label, &s.config);
                    (s.label, s.config)
                })
                .collect();
            run.save("fig6_q0.csv", &commands::q0_columns(&curves, 10)?)?;
        }
        Preset::Fig7 => roc_figure(&mut run, cfg, "fig7_roc.csv", &p::roc_mobility(), &p::ROC_BUDGETS)?,
        Preset::Fig8a | Preset::Fig8b | Preset::Fig8c => {
            let slot = match preset {
                Preset::Fig8a => p::ROC_SLOT_LENGTHS[0],
                Preset::Fig8b => p::ROC_SLOT_LENGTHS[1],
                _ => p::ROC_SLOT_LENGTHS[2],
            };
            roc_figure(&mut run, cfg, &format!("{name}_roc.csv"), &p::roc_slot_length(slot), &[30])?;
        }
        Preset::Fig9a => roc_figure(&mut run, cfg, "fig9a_roc.csv", &p::roc_mobile_rx(), &[30])?,
        Preset::Fig9b => roc_figure(&mut run, cfg, "fig9b_roc.csv", &p::roc_mobile_tx(), &[30])?,
        Preset::Fig10a | Preset::Fig10b => {
            let scenarios = if preset == Preset::Fig10a { p::error_panel_a() } else { p::error_panel_b() };
            let curves = link_curves(&mut run, cfg, &scenarios, p::ERROR_BUDGET, p::ERROR_MU_O, 1.0, false)?;
            run.save(&format!("{name}_pe.csv"), &commands::error_table(&curves, &p::error_noise_grid(), sim)?)?;
        }
        Preset::Fig11 => {
            let gammas = linspace(1.0, 120.0, cfg.grid.max(2));
            for noise in p::THRESHOLD_NOISE {
                let scenario = [Scenario { label: format!("mobile_both_mu{noise}"), config: p::threshold_config() }];
                let curves = link_curves(&mut run, cfg, &scenario, p::THRESHOLD_BUDGET, noise, noise, false)?;
                let file = format!("fig11_mu{noise}.csv");
                run.save(&file, &commands::threshold_table(&curves[0].1, p::THRESHOLD_SLOT, &gammas)?)?;
            }
        }
        Preset::Fig12a | Preset::Fig12b => {
            let scenarios = if preset == Preset::Fig12a { p::capacity_panel_a() } else { p::capacity_panel_b() };
            let curves = link_curves(&mut run, cfg, &scenarios, p::CAPACITY_BUDGET, p::NOISE, p::NOISE, false)?;
            run.save(&format!("{name}_capacity.csv"), &commands::capacity_table(&curves, &p::capacity_noise_grid())?)?;
        }
        Preset::Custom => unreachable!(),
    }
    run.finish(cfg)
}
