//! Table builders shared by the subcommands and the figure presets.

use mobimc::hitting_time::{arrival_table, HittingTimePdf};
use mobimc::link::{
    average_detection, capacity, decision_thresholds, error_probability, hypothesis_stats, optimal_threshold,
    slot_error_sweep, simulate_link, ArrivalMatrix, LinkParams, SamplingMode,
};
use mobimc::numerics::RandomStream;
use mobimc::particle_sim::{empirical_pdf, simulate_hits, SimSpec};
use mobimc::validation::{analytic_cdf_at, ks_statistic, l1_distance, KS_TOLERANCE};
use mobimc::ChannelConfig;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{linspace, logspace, Cell, Table};

/// `base` or `base_label`.
pub fn col(base: &str, label: &str) -> String {
    if label.is_empty() {
        base.to_string()
    } else {
        format!("{base}_{label}")
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SimOptions {
    pub trials: usize,
    pub seed: u64,
    pub sampling: SamplingMode,
}

impl SimOptions {
    pub fn from_config(cfg: &RunConfig) -> Self {
        Self { trials: cfg.trials, seed: cfg.seed, sampling: cfg.sampling }
    }
}

pub fn link_params(cfg: &RunConfig, channel: &ChannelConfig) -> Result<LinkParams, CliError> {
    let arrivals = ArrivalMatrix::from_config(channel, cfg.slots, cfg.convention)?;
    let mut params = LinkParams::new(arrivals, cfg.budget, cfg.beta, cfg.mu_o, cfg.sigma2_o)?;
    params.counting_noise = cfg.counting_noise;
    Ok(params)
}

pub fn particle_spec(cfg: &RunConfig, channel: &ChannelConfig) -> Result<SimSpec, CliError> {
    let mut spec = SimSpec::for_slot(channel.slot, cfg.particles, cfg.seed);
    if let Some(dt) = cfg.dt {
        spec.dt = dt;
    }
    spec.validate()?;
    Ok(spec)
}

/// Analytic densities on a log-spaced time grid, one column per release.
pub fn pdf_table(channel: &ChannelConfig, releases: &[u32], times: &[f64]) -> Result<Table, CliError> {
    let pdfs = releases
        .iter()
        .map(|&k| HittingTimePdf::new(channel, k))
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(std::iter::once("t_s".to_string()).chain(releases.iter().map(|k| format!("pdf_k{k}"))));
    for &t in times {
        let mut row = vec![Cell::from(t)];
        row.extend(pdfs.iter().map(|p| Cell::from(p.density(t))));
        table.push(row);
    }
    Ok(table)
}

pub fn pdf_grid(cfg: &RunConfig) -> Result<Vec<f64>, CliError> {
    if !(cfg.t_min > 0.0 && cfg.t_max > cfg.t_min) || cfg.grid < 2 {
        return Err(CliError::Validation("need 0 < t_min < t_max and grid >= 2".into()));
    }
    Ok(logspace(cfg.t_min, cfg.t_max, cfg.grid))
}

/// Particle histograms next to the analytic bin averages, plus a
/// per-release validation summary.
pub fn particle_tables(
    channel: &ChannelConfig,
    releases: &[u32],
    spec: &SimSpec,
    bins: usize,
) -> Result<(Table, Table), CliError> {
    let edges = linspace(0.0, spec.t_max, bins.max(1) + 1);
    let mut hist_header = vec!["t_lo_s".to_string(), "t_hi_s".to_string()];
    let mut columns: Vec<Vec<f64>> = Vec::new();
    let mut summary = Table::new([
        "k",
        "n_particles",
        "ks",
        "l1",
        "absorbed_sim",
        "absorbed_analytic",
        "pass",
    ]);
    for &k in releases {
        let sample = simulate_hits(channel, k, spec)?;
        let pdf = HittingTimePdf::new(channel, k)?;
        let empirical = empirical_pdf(&sample, &edges)?;
        let cdf = analytic_cdf_at(&pdf, &edges)?;
        let analytic: Vec<f64> = cdf
            .windows(2)
            .zip(edges.windows(2))
            .map(|(c, e)| (c[1] - c[0]) / (e[1] - e[0]))
            .collect();
        let ks = ks_statistic(&sample, &pdf, spec.t_max)?;
        let l1 = l1_distance(&empirical, &pdf, &edges)?;
        summary.push(vec![
            Cell::from(k),
            Cell::from(spec.n_particles),
            Cell::from(ks),
            Cell::from(l1),
            Cell::from(sample.absorbed_fraction()),
            Cell::from(cdf[cdf.len() - 1]),
            Cell::Int(i64::from(ks < KS_TOLERANCE)),
        ]);
        hist_header.push(format!("pdf_sim_k{k}"));
        hist_header.push(format!("pdf_k{k}"));
        columns.push(empirical);
        columns.push(analytic);
    }
    let mut hist = Table::new(hist_header);
    for b in 0..edges.len() - 1 {
        let mut row = vec![Cell::from(edges[b]), Cell::from(edges[b + 1])];
        row.extend(columns.iter().map(|c| Cell::from(c[b])));
        hist.push(row);
    }
    Ok((hist, summary))
}

/// `q_0 .. q_{delays-1}` per release slot `k = 0..=k_max`.
pub fn arrival_rows(channel: &ChannelConfig, k_max: u32, delays: usize) -> Result<Table, CliError> {
    let mut table = Table::new(std::iter::once("k".to_string()).chain((0..delays).map(|m| format!("q{m}"))));
    for k in 0..=k_max {
        let q = arrival_table(channel, k, delays)?;
        let mut row = vec![Cell::from(k)];
        row.extend(q.q.iter().map(|&x| Cell::from(x)));
        table.push(row);
    }
    Ok(table)
}

/// `q_0` per release slot for several channels, one column each.
pub fn q0_columns(curves: &[(String, ChannelConfig)], k_max: u32) -> Result<Table, CliError> {
    let mut table = Table::new(std::iter::once("k".to_string()).chain(curves.iter().map(|(l, _)| l.clone())));
    let values = curves
        .iter()
        .map(|(_, ch)| (0..=k_max).map(|k| arrival_table(ch, k, 1).map(|t| t.q[0])).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    for k in 0..=k_max {
        let mut row = vec![Cell::from(k)];
        row.extend(values.iter().map(|v| Cell::from(v[k as usize])));
        table.push(row);
    }
    Ok(table)
}

/// Common-threshold ROC, averaged over slots.
pub fn roc_table(curves: &[(String, LinkParams)], gammas: &[f64], sim: Option<SimOptions>) -> Result<Table, CliError> {
    let mut header = vec!["gamma_prime".to_string()];
    for (label, _) in curves {
        header.push(col("pfa", label));
        header.push(col("pd", label));
        if sim.is_some() {
            header.push(col("pfa_sim", label));
            header.push(col("pd_sim", label));
        }
    }
    let mut table = Table::new(header);
    for &g in gammas {
        let mut row = vec![Cell::from(g)];
        for (_, params) in curves {
            let thresholds = vec![g; params.slots()];
            let (pd, pfa) = average_detection(params, &thresholds)?;
            row.push(pfa.into());
            row.push(pd.into());
            if let Some(opts) = sim {
                let est = simulate_link(params, &thresholds, opts.trials, &RandomStream::new(opts.seed, 0), opts.sampling)?;
                row.push(est.p_fa.into());
                row.push(est.p_d.into());
            }
        }
        table.push(row);
    }
    Ok(table)
}

/// Error probability with likelihood-ratio thresholds against MSI variance.
pub fn error_table(curves: &[(String, LinkParams)], sigmas: &[f64], sim: Option<SimOptions>) -> Result<Table, CliError> {
    let mut header = vec!["sigma2_o".to_string()];
    for (label, _) in curves {
        header.push(col("pe", label));
        if sim.is_some() {
            header.push(col("pe_sim", label));
            header.push(col("pe_sim_se", label));
        }
    }
    let mut table = Table::new(header);
    for &s in sigmas {
        let mut row = vec![Cell::from(s)];
        for (_, base) in curves {
            let params = base.with_noise(base.mu_o, s);
            let thresholds = decision_thresholds(&params)?;
            row.push(error_probability(&params, &thresholds)?.into());
            if let Some(opts) = sim {
                let est = simulate_link(&params, &thresholds, opts.trials, &RandomStream::new(opts.seed, 0), opts.sampling)?;
                row.push(est.p_e.into());
                row.push(est.se_p_e.into());
            }
        }
        table.push(row);
    }
    Ok(table)
}

/// Slot error probability against the threshold, with the likelihood-ratio
/// optimum inserted in order and flagged by `is_optimum = 1`.
pub fn threshold_table(params: &LinkParams, j: usize, gammas: &[f64]) -> Result<Table, CliError> {
    let stats = hypothesis_stats(params, j)?;
    let optimum = optimal_threshold(&stats, params.beta)?.gamma_prime;
    let mut points: Vec<(f64, i64)> = gammas.iter().map(|&g| (g, 0)).collect();
    points.push((optimum, 1));
    points.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let pe = slot_error_sweep(params, j, &xs)?;
    let mut table = Table::new(["gamma_prime", "pe", "is_optimum"]);
    for ((g, flag), e) in points.iter().zip(pe) {
        table.push(vec![Cell::from(*g), Cell::from(e), Cell::Int(*flag)]);
    }
    Ok(table)
}

/// Capacity per number of slots and MSI variance.
pub fn capacity_table(curves: &[(String, LinkParams)], sigmas: &[f64]) -> Result<Table, CliError> {
    let mut header = vec!["i".to_string(), "sigma2_o".to_string()];
    for (label, _) in curves {
        header.push(col("capacity_bits", label));
        header.push(col("beta", label));
    }
    let slots = curves.iter().map(|(_, p)| p.slots()).min().unwrap_or(0);
    let mut table = Table::new(header);
    for i in 1..=slots {
        for &s in sigmas {
            let mut row = vec![Cell::from(i), Cell::from(s)];
            for (_, params) in curves {
                let c = capacity(&params.leading(i)?.with_noise(params.mu_o, s))?;
                row.push(c.bits.into());
                row.push(c.beta_star.into());
            }
            table.push(row);
        }
    }
    Ok(table)
}
