use mobimc::hitting_time::SlotConvention;
use mobimc::link::*;
use mobimc::numerics::RandomStream;
use mobimc::presets;
use mobimc::Error;
use proptest::prelude::*;

fn matrix(config: &mobimc::ChannelConfig) -> ArrivalMatrix {
    ArrivalMatrix::from_config(config, presets::LINK_SLOTS, SlotConvention::ReleaseIndex).unwrap()
}

fn fig7(q: u64) -> LinkParams {
    let cfg = presets::mobile_both(presets::FLOW, 2e-3, presets::HIGH_MOBILITY);
    LinkParams::new(matrix(&cfg), q, 0.5, presets::NOISE, presets::NOISE).unwrap()
}

fn fig11(noise: f64) -> LinkParams {
    LinkParams::new(matrix(&presets::threshold_config()), 120, 0.5, noise, noise).unwrap()
}

#[test]
fn first_slot_has_no_interference() {
    let p = fig7(30);
    let s = hypothesis_stats(&p, 1).unwrap();
    let q0 = p.arrivals.q(1, 0);
    assert_eq!(s.mu0, p.mu_o);
    assert_eq!(s.sigma2_0, p.sigma2_o + p.mu_o);
    assert!((s.mu1 - (30.0 * q0 + p.mu_o)).abs() < 1e-12);
    assert!((s.sigma2_1 - (30.0 * q0 * (1.0 - q0) + p.sigma2_o + s.mu1)).abs() < 1e-12);
}

#[test]
fn third_slot_matches_brute_force_summation() {
    let rows = vec![vec![0.3, 0.2, 0.1], vec![0.35, 0.15], vec![0.4]];
    let arrivals = ArrivalMatrix::from_rows(rows.clone()).unwrap();
    let (q, beta, mu_o, s2o) = (40.0, 0.5, 3.0, 2.0);
    let p = LinkParams::new(arrivals, 40, beta, mu_o, s2o).unwrap();
    let s = hypothesis_stats(&p, 3).unwrap();

    // Exact moments of the ISI sum by enumerating the two earlier bits; each
    // batch given its bit is binomial.
    let mut mean = 0.0;
    let mut second = 0.0;
    for x1 in [0.0, 1.0] {
        for x2 in [0.0, 1.0] {
            let w = (if x1 == 1.0 { beta } else { 1.0 - beta }) * (if x2 == 1.0 { beta } else { 1.0 - beta });
            let (a, b) = (rows[0][2], rows[1][1]);
            let m = x1 * q * a + x2 * q * b;
            let v = x1 * q * a * (1.0 - a) + x2 * q * b * (1.0 - b);
            mean += w * m;
            second += w * (v + m * m);
        }
    }
    let var = second - mean * mean;
    let q0 = rows[2][0];
    assert!((s.mu0 - (mean + mu_o)).abs() < 1e-12);
    assert!((s.sigma2_0 - (var + s2o + mean + mu_o)).abs() < 1e-12);
    assert!((s.mu1 - (q * q0 + mean + mu_o)).abs() < 1e-12);
    assert!((s.sigma2_1 - (q * q0 * (1.0 - q0) + var + s2o + q * q0 + mean + mu_o)).abs() < 1e-12);
}

#[test]
fn threshold_figure_values() {
    let low = optimal_threshold(&hypothesis_stats(&fig11(1.0), 10).unwrap(), 0.5).unwrap();
    let high = optimal_threshold(&hypothesis_stats(&fig11(40.0), 10).unwrap(), 0.5).unwrap();
    assert!((low.gamma_prime - 40.30).abs() < 1.0, "{}", low.gamma_prime);
    assert!((high.gamma_prime - 80.4).abs() < 1.0, "{}", high.gamma_prime);

    let stats = hypothesis_stats(&fig11(1.0), 10).unwrap();
    assert_eq!(detect(low.gamma_prime, &low), 1);
    assert_eq!(detect(stats.mu1, &low), 1);
    assert_eq!(detect(stats.mu0, &low), 0);
}

#[test]
fn optimal_threshold_minimises_slot_error() {
    let cases = [(fig11(1.0), 10), (fig11(40.0), 10), (fig7(30), 4), (fig7(90), 10)];
    for (p, j) in cases {
        let s = hypothesis_stats(&p, j).unwrap();
        let t = optimal_threshold(&s, p.beta).unwrap();
        let lo = s.mu0 - 4.0 * s.sigma0();
        let hi = s.mu1 + 4.0 * s.sigma1();
        let step = (hi - lo) / 999.0;
        let grid: Vec<f64> = (0..1000).map(|i| lo + step * i as f64).collect();
        let errors = slot_error_sweep(&p, j, &grid).unwrap();
        let best = (0..grid.len()).min_by(|&a, &b| errors[a].total_cmp(&errors[b])).unwrap();
        assert!((grid[best] - t.gamma_prime).abs() <= step, "{} vs {}", grid[best], t.gamma_prime);
    }
}

#[test]
fn roc_numbers_of_mobile_nodes() {
    let gammas = presets::roc_thresholds(0.1);
    let pd = |q| pd_at_pfa(&roc_sweep(&fig7(q), &gammas).unwrap(), 1e-4).unwrap();
    let (low, high) = (pd(30), pd(90));
    assert!((low - 0.10).abs() < 0.05, "{low}");
    assert!((high - 0.52).abs() < 0.05, "{high}");
}

#[test]
fn detection_rates_fall_with_threshold() {
    for q in presets::ROC_BUDGETS {
        let p = fig7(q);
        let roc = roc_sweep(&p, &presets::roc_thresholds(0.5)).unwrap();
        for w in roc.windows(2) {
            assert!(w[1].p_d <= w[0].p_d && w[1].p_fa <= w[0].p_fa);
        }
        for s in all_stats(&p).unwrap() {
            let mut prev = (2.0, 2.0);
            for g in presets::roc_thresholds(0.5) {
                let (d, f) = detection_probs(&s, g);
                assert!(d >= f && d < prev.0 && f < prev.1, "slot {}, γ′ = {g}", s.j);
                prev = (d, f);
            }
        }
    }
}

#[test]
fn averages_over_slots() {
    let p = fig7(30);
    let single = p.leading(1).unwrap();
    let s = hypothesis_stats(&single, 1).unwrap();
    assert_eq!(average_detection(&single, &[12.0]).unwrap(), detection_probs(&s, 12.0));

    let flat = ArrivalMatrix::time_invariant(&[0.5, 0.0, 0.0, 0.0], 4).unwrap();
    let p = LinkParams::new(flat, 30, 0.5, 10.0, 10.0).unwrap();
    let s = hypothesis_stats(&p, 3).unwrap();
    let (pd, pfa) = average_detection(&p, &[20.0; 4]).unwrap();
    let (d, f) = detection_probs(&s, 20.0);
    assert!((pd - d).abs() < 1e-15 && (pfa - f).abs() < 1e-15);
    let pe = error_probability(&p, &[20.0; 4]).unwrap();
    assert!((pe - slot_error(d, f, 0.5)).abs() < 1e-15);

    let gammas = presets::roc_thresholds(1.0);
    let sweep = roc_sweep(&fig7(90), &gammas).unwrap();
    for pt in sweep.iter().step_by(7) {
        let (d, f) = average_detection(&fig7(90), &[pt.gamma_prime; 10]).unwrap();
        assert!((d - pt.p_d).abs() < 1e-15 && (f - pt.p_fa).abs() < 1e-15);
    }
}

#[test]
fn drift_free_equivalence_of_mobile_nodes() {
    let with = presets::mobile_both(presets::FLOW, 2e-3, presets::HIGH_MOBILITY);
    let without = presets::mobile_both(0.0, 2e-3, presets::HIGH_MOBILITY);
    let a = LinkParams::new(matrix(&with), 30, 0.5, 10.0, 10.0).unwrap();
    let b = LinkParams::new(matrix(&without), 30, 0.5, 10.0, 10.0).unwrap();
    assert_eq!(a.arrivals, b.arrivals);
    let gammas = presets::roc_thresholds(1.0);
    assert_eq!(roc_sweep(&a, &gammas).unwrap(), roc_sweep(&b, &gammas).unwrap());
}

#[test]
fn gaussian_simulation_reproduces_error_rate() {
    let cfg = presets::mobile_tx_fixed_rx(1e-4, 2e-3);
    let p = LinkParams::new(matrix(&cfg), 30, 0.5, 0.0, 10.0).unwrap();
    let thresholds = decision_thresholds(&p).unwrap();
    let analytic = error_probability(&p, &thresholds).unwrap();
    let (pd, pfa) = average_detection(&p, &thresholds).unwrap();
    let est = simulate_link(&p, &thresholds, 100_000, &RandomStream::new(1, 0), SamplingMode::GaussianMatched)
        .unwrap();
    let decisions = (est.n_trials * p.slots()) as f64;
    let se = (analytic * (1.0 - analytic) / decisions).sqrt();
    assert!((est.p_e - analytic).abs() < 3.0 * se, "{} vs {analytic}", est.p_e);
    assert!((est.p_d - pd).abs() < 4.0 * est.se_p_d);
    assert!((est.p_fa - pfa).abs() < 4.0 * est.se_p_fa.max(1e-6));
}

#[test]
fn binomial_and_gaussian_sampling_agree_in_large_count_regime() {
    let cfg = presets::mobile_both(presets::FLOW, 2e-3, presets::HIGH_MOBILITY);
    let p = LinkParams::new(matrix(&cfg), 60, 0.5, 10.0, 10.0).unwrap();
    assert!(p.gaussian_advisories().is_empty());
    let thresholds = decision_thresholds(&p).unwrap();
    let stream = RandomStream::new(5, 0);
    let g = simulate_link(&p, &thresholds, 50_000, &stream, SamplingMode::GaussianMatched).unwrap();
    let b = simulate_link(&p, &thresholds, 50_000, &stream, SamplingMode::BinomialExact).unwrap();
    assert!((g.p_e - b.p_e).abs() < 0.01, "{} vs {}", g.p_e, b.p_e);
}

#[test]
fn deterministic_channel_is_error_free() {
    let arrivals = ArrivalMatrix::time_invariant(&[1.0, 0.0, 0.0], 3).unwrap();
    let p = LinkParams::new(arrivals, 25, 0.5, 0.0, 0.0).unwrap().without_counting_noise();
    for g in [0.1, 12.5, 24.9] {
        let est = simulate_link(&p, &[g; 3], 3000, &RandomStream::new(1, 0), SamplingMode::BinomialExact).unwrap();
        assert_eq!(est.p_e, 0.0);
    }
}

#[test]
fn capacity_is_stable_under_grid_refinement() {
    let p = LinkParams::new(matrix(&presets::mobile_tx_fixed_rx(1e-4, 2e-3)), 60, 0.5, 10.0, 10.0).unwrap();
    let coarse = capacity_on_grid(&p, &beta_grid(101)).unwrap();
    let fine = capacity_on_grid(&p, &beta_grid(1001)).unwrap();
    assert!((coarse.bits - fine.bits).abs() < 1e-4, "{coarse:?} {fine:?}");
    let refined = capacity(&p).unwrap();
    assert!(refined.bits >= fine.bits - 1e-9);
    assert!((refined.bits - fine.bits).abs() < 1e-4);
}

#[test]
fn capacity_shrinks_with_more_slots() {
    for scenario in presets::capacity_panel_b() {
        let p = LinkParams::new(matrix(&scenario.config), 60, 0.5, 10.0, 10.0).unwrap();
        let caps: Vec<f64> = (1..=10).map(|i| capacity(&p.leading(i).unwrap()).unwrap().bits).collect();
        assert!(caps.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{}: {caps:?}", scenario.label);
    }
}

#[test]
fn negative_gamma_means_no_information() {
    // A barely informative slot with a lopsided prior.
    let arrivals = ArrivalMatrix::time_invariant(&[0.001, 0.0], 2).unwrap();
    let p = LinkParams::new(arrivals, 1, 0.99, 5.0, 1.0).unwrap();
    let s = hypothesis_stats(&p, 1).unwrap();
    let direct = optimal_threshold(&s, 0.99);
    if let Err(Error::NegativeGamma { .. }) = direct {
        let t = decision_thresholds(&p).unwrap();
        assert_eq!(t[0], f64::NEG_INFINITY);
        assert_eq!(average_information(&p, 0.99).unwrap(), 0.0);
    }
}

fn stats_strategy() -> impl Strategy<Value = (f64, f64, f64, f64, f64)> {
    (0.0f64..50.0, 0.5f64..50.0, 0.0f64..100.0, 0.0f64..80.0, 0.02f64..0.98)
        .prop_map(|(mu0, s0, shift, extra, beta)| (mu0, s0, mu0 + shift, s0 + extra + 1e-3, beta))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn llrt_agrees_with_threshold_on_upper_branch(
        (mu0, s0, mu1, s1, beta) in stats_strategy(),
        u in 0.0f64..1.0,
    ) {
        let stats = HypothesisStats { j: 1, mu0, sigma2_0: s0, mu1, sigma2_1: s1 };
        if let Ok(t) = optimal_threshold(&stats, beta) {
            if let ThresholdRule::Quadratic { alpha, .. } = t.rule {
                let span = 4.0 * t.gamma_prime.abs().max(s1.sqrt()) + 10.0;
                let r = -alpha + u * (t.gamma_prime + alpha + span);
                let margin = log_likelihood_ratio(&stats, r) - ((1.0 - beta) / beta).ln();
                let scale = 1e-9 * (1.0 + ((1.0 - beta) / beta).ln().abs());
                if margin.abs() > scale {
                    prop_assert_eq!(margin > 0.0, detect(r, &t) == 1, "r = {}, γ′ = {}", r, t.gamma_prime);
                }
            }
        }
    }

    #[test]
    fn stats_telescope_on_time_invariant_channels(
        q in proptest::collection::vec(0.0f64..0.099, 10),
        budget in 1u64..500,
        beta in 0.01f64..0.99,
        mu_o in 0.0f64..50.0,
        s2o in 0.0f64..50.0,
    ) {
        let arrivals = ArrivalMatrix::time_invariant(&q, 10).unwrap();
        let p = LinkParams::new(arrivals, budget, beta, mu_o, s2o).unwrap();
        for j in 2..=10 {
            let now = hypothesis_stats(&p, j).unwrap();
            let before = hypothesis_stats(&p, j - 1).unwrap();
            let inc = isi_terms(&p, j).unwrap()[j - 2];
            prop_assert_eq!(inc.delay, j - 1);
            let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1e-300);
            prop_assert!(close(now.mu0, before.mu0 + inc.mean));
            prop_assert!(close(now.mu1, before.mu1 + inc.mean));
            prop_assert!(close(now.sigma2_0, before.sigma2_0 + inc.variance + inc.mean));
            prop_assert!(close(now.sigma2_1, before.sigma2_1 + inc.variance + inc.mean));
        }
    }

    #[test]
    fn stats_invariants_hold(
        q0 in 0.0f64..1.0,
        tail in proptest::collection::vec(0.0f64..0.05, 4),
        budget in 1u64..300,
        beta in 0.01f64..0.99,
        mu_o in 0.01f64..50.0,
        s2o in 0.0f64..50.0,
    ) {
        let mut q = vec![q0 * 0.8];
        q.extend(tail);
        let arrivals = ArrivalMatrix::time_invariant(&q, 5).unwrap();
        let p = LinkParams::new(arrivals, budget, beta, mu_o, s2o).unwrap();
        for s in all_stats(&p).unwrap() {
            prop_assert!(s.sigma2_0 > 0.0);
            prop_assert!(s.mu1 >= s.mu0);
            prop_assert!(s.sigma2_1 >= s.sigma2_0);
        }
    }

    #[test]
    fn information_is_nonnegative_and_bounded(
        pd in 0.0f64..=1.0,
        pfa in 0.0f64..=1.0,
        beta in 0.001f64..0.999,
    ) {
        let i = mutual_information(pd, pfa, beta);
        prop_assert!(i >= 0.0 && i <= 1.0 + 1e-12);
        let swapped = mutual_information(pfa, pd, 1.0 - beta);
        prop_assert!((i - swapped).abs() < 1e-12);
    }
}
