use mobimc::hitting_time::{fht_cdf, HittingTimePdf};
use mobimc::particle_sim::{empirical_pdf, simulate_hits, SimSpec};
use mobimc::validation::l1_distance;
use mobimc::ChannelConfig;

const D0: f64 = 1e-6;
const D_M: f64 = 0.5e-9;
const V: f64 = 1e-3;
const T: f64 = 0.3e-3;

#[test]
fn fixed_nodes_histogram_matches_inverse_gaussian() {
    let cfg = ChannelConfig::fixed_both(D0, D_M, V, T);
    let spec = SimSpec { n_particles: 100_000, dt: 1e-7, t_max: 6e-3, seed: 21, bridge_correction: true };
    let sample = simulate_hits(&cfg, 0, &spec).unwrap();
    let edges: Vec<f64> = (0..=60).map(|i| i as f64 * 1e-4).collect();
    let pdf = empirical_pdf(&sample, &edges).unwrap();
    let l1 = l1_distance(&pdf, &HittingTimePdf::new(&cfg, 0).unwrap(), &edges).unwrap();
    assert!(l1 < 0.02, "{l1}");
}

#[test]
fn fixed_nodes_absorb_almost_everything() {
    let cfg = ChannelConfig::fixed_both(D0, D_M, V, T);
    let spec = SimSpec { t_max: 50.0 * D0 / V, ..SimSpec::for_slot(T, 20_000, 5) };
    let sample = simulate_hits(&cfg, 0, &spec).unwrap();
    let expected = fht_cdf(&cfg, 0, spec.t_max).unwrap();
    assert!((expected - 1.0).abs() < 1e-6);
    assert!((sample.absorbed_fraction() - expected).abs() < 0.01);
}

#[test]
fn halving_the_step_barely_moves_the_median() {
    let cfg = ChannelConfig::mobile_both(D0, D_M, 1e-10, 0.5e-12, V, T);
    let coarse = SimSpec::for_slot(T, 100_000, 8);
    let fine = SimSpec { dt: coarse.dt / 2.0, ..coarse };
    // Analytic median of the absorbed mass.
    let total = fht_cdf(&cfg, 2, coarse.t_max).unwrap();
    let (mut lo, mut hi) = (0.0, coarse.t_max);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if fht_cdf(&cfg, 2, mid).unwrap() < 0.5 * total {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let at_median = |spec: &SimSpec| {
        let s = simulate_hits(&cfg, 2, spec).unwrap();
        s.hit_times.iter().filter(|&&t| t <= lo).count() as f64 / s.n_particles() as f64
    };
    let (a, b) = (at_median(&coarse), at_median(&fine));
    assert!((a - b).abs() < 0.01 * a, "{a} vs {b}");
}

#[test]
fn bridge_correction_recovers_early_hits() {
    let cfg = ChannelConfig::fixed_both(D0, D_M, V, T);
    let spec = SimSpec { n_particles: 20_000, dt: 1e-5, t_max: 6e-3, seed: 4, bridge_correction: true };
    let exact = fht_cdf(&cfg, 0, 2e-4).unwrap();
    let early = |spec: &SimSpec| {
        let s = simulate_hits(&cfg, 0, spec).unwrap();
        s.hit_times.iter().filter(|&&t| t <= 2e-4).count() as f64 / s.n_particles() as f64
    };
    let with = early(&spec);
    let without = early(&SimSpec { bridge_correction: false, ..spec });
    assert!(without < with);
    assert!((with - exact).abs() < (without - exact).abs());
}

#[test]
fn co_moving_nodes_hit_early_after_many_slots() {
    let cfg = ChannelConfig::mobile_both(D0, D_M, 1e-10, 0.5e-12, V, T);
    let spec = SimSpec::for_slot(T, 20_000, 13);
    let early = |k| {
        let s = simulate_hits(&cfg, k, &spec).unwrap();
        s.hit_times.iter().filter(|&&t| t <= 1e-5).count() as f64 / s.n_particles() as f64
    };
    let (first, late) = (early(0), early(10));
    let predicted = fht_cdf(&cfg, 10, 1e-5).unwrap();
    assert!(late > 0.02 && late > 5.0 * first, "{first} vs {late}");
    assert!((late - predicted).abs() < 0.01, "{late} vs {predicted}");
}
