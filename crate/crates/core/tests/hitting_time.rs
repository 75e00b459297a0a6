use mobimc::hitting_time::{
    arrival_table, fht_pdf, fht_pdf_mobile_both, fht_pdf_mobile_tx_fixed_rx, fht_pdf_numeric,
    hitting_probability, ig_pdf, levy_pdf, mixture_pdf,
};
use mobimc::numerics::{gaussian_tail_q, integrate_from_singular, QuadratureSpec};
use mobimc::ChannelConfig;

const D0: f64 = 1e-6;
const D_M: f64 = 0.5e-9;
const D_TX: f64 = 1e-10;
const D_RX: f64 = 0.5e-12;
const V: f64 = 1e-3;
const T: f64 = 0.3e-3;

fn log_grid(n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n)
        .map(|i| 10f64.powf(lo + (hi - lo) * i as f64 / (n - 1) as f64))
        .collect()
}

/// Max relative error over grid points whose density exceeds 1e-6 of the
/// peak.
fn max_rel_error(closed: &[f64], oracle: &[f64]) -> f64 {
    let peak = oracle.iter().cloned().fold(0.0, f64::max);
    closed
        .iter()
        .zip(oracle)
        .filter(|(_, o)| **o > 1e-6 * peak)
        .map(|(c, o)| ((c - o) / o).abs())
        .fold(0.0, f64::max)
}

#[test]
fn mobile_tx_closed_form_matches_quadrature() {
    let cfg = ChannelConfig::mobile_tx_fixed_rx(D0, D_M, D_TX, V, T);
    let grid = log_grid(200, -7.0, -1.0);
    for k in [1, 5, 10] {
        let law = cfg.distance_law(k).unwrap();
        let closed: Vec<f64> = grid
            .iter()
            .map(|&t| fht_pdf_mobile_tx_fixed_rx(&law, D_M, t).unwrap())
            .collect();
        let oracle: Vec<f64> = grid.iter().map(|&t| fht_pdf_numeric(&cfg, k, t).unwrap()).collect();
        let err = max_rel_error(&closed, &oracle);
        assert!(err < 1e-6, "k = {k}: {err}");
    }
}

#[test]
fn mobile_both_closed_form_matches_quadrature() {
    let cfg = ChannelConfig::mobile_both(D0, D_M, D_TX, D_RX, V, T);
    let grid = log_grid(200, -7.0, -1.0);
    for k in [1, 5, 10] {
        let law = cfg.distance_law(k).unwrap();
        let closed: Vec<f64> = grid
            .iter()
            .map(|&t| fht_pdf_mobile_both(&law, law.d_eff, t).unwrap())
            .collect();
        let oracle: Vec<f64> = grid.iter().map(|&t| fht_pdf_numeric(&cfg, k, t).unwrap()).collect();
        let err = max_rel_error(&closed, &oracle);
        assert!(err < 1e-6, "k = {k}: {err}");
    }
}

#[test]
fn vanishing_tx_diffusion_collapses_to_inverse_gaussian() {
    let cfg = ChannelConfig::mobile_tx_fixed_rx(D0, D_M, 1e-18, V, T);
    for k in [1, 2, 5] {
        let law = cfg.distance_law(k).unwrap();
        for t in log_grid(60, -5.0, -2.0) {
            let limit = ig_pdf(law.d_bar.abs(), D_M, law.v_star, t);
            let closed = fht_pdf_mobile_tx_fixed_rx(&law, D_M, t).unwrap();
            if limit > 1e-3 {
                assert!(((closed - limit) / limit).abs() < 1e-4, "k = {k}, t = {t}");
            }
            if k == 1 {
                let numeric = fht_pdf_numeric(&cfg, k, t).unwrap();
                if limit > 1e-3 {
                    assert!(((numeric - limit) / limit).abs() < 1e-4, "t = {t}");
                }
            }
        }
    }
}

#[test]
fn mobile_both_does_not_depend_on_flow() {
    let with = ChannelConfig::mobile_both(D0, D_M, D_TX, D_RX, V, T);
    let without = ChannelConfig::mobile_both(D0, D_M, D_TX, D_RX, 0.0, T);
    for k in 0..=10 {
        for t in log_grid(50, -6.0, -1.0) {
            assert_eq!(fht_pdf(&with, k, t).unwrap(), fht_pdf(&without, k, t).unwrap());
        }
    }
}

#[test]
fn co_moving_nodes_allow_very_short_hits_late() {
    let cfg = ChannelConfig::mobile_both(D0, D_M, D_TX, D_RX, V, T);
    for t in [1e-7, 1e-6, 5e-6] {
        let late = fht_pdf(&cfg, 10, t).unwrap();
        let early = fht_pdf(&cfg, 2, t).unwrap();
        assert!(late > early && late > 0.0, "t = {t}: {late} vs {early}");
    }
}

#[test]
fn inverse_gaussian_total_mass() {
    let spec = QuadratureSpec::relative(1e-11);
    let scale = D0 * D0 / D_M;
    let mass = |v: f64| {
        integrate_from_singular(|u| ig_pdf(D0, D_M, v, u * scale) * scale, 0.0, f64::INFINITY, &spec)
            .unwrap()
            .value
    };
    assert!((mass(V) - 1.0).abs() < 1e-8);
    assert!((mass(-V) - (-D0 * V / D_M).exp()).abs() < 1e-6);
    let levy = integrate_from_singular(|u| levy_pdf(D0, D_M, u * scale) * scale, 0.0, f64::INFINITY, &spec)
        .unwrap()
        .value;
    assert!((levy - 1.0).abs() < 1e-6, "{levy}");
}

/// Inverse Gaussian CDF from the normal tail function.
fn ig_cdf(r0: f64, d: f64, v: f64, t: f64) -> f64 {
    let s = (2.0 * d * t).sqrt();
    gaussian_tail_q((r0 - v * t) / s) + (r0 * v / d).exp() * gaussian_tail_q((v * t + r0) / s)
}

#[test]
fn slot_probabilities_match_inverse_gaussian_cdf() {
    let cfg = ChannelConfig::fixed_both(D0, D_M, V, T);
    let table = arrival_table(&cfg, 0, 8).unwrap();
    for (m, q) in table.q.iter().enumerate() {
        let expected = ig_cdf(D0, D_M, V, (m + 1) as f64 * T) - ig_cdf(D0, D_M, V, m as f64 * T);
        assert!((q - expected).abs() < 1e-9, "m = {m}: {q} vs {expected}");
    }
}

#[test]
fn total_mass_per_case() {
    let mobile_tx = ChannelConfig::mobile_tx_fixed_rx(D0, D_M, D_TX, V, T);
    for k in 0..=10 {
        let p = hitting_probability(&mobile_tx, k).unwrap();
        assert!(p <= 1.0 + 1e-6, "k = {k}: {p}");
        if mobile_tx.distance_law(k).unwrap().d_bar > 0.0 {
            assert!((p - 1.0).abs() < 1e-4, "k = {k}: {p}");
        }
    }
    let both = ChannelConfig::mobile_both(D0, D_M, D_TX, D_RX, V, T);
    for k in 0..=10 {
        let p = hitting_probability(&both, k).unwrap();
        assert!((p - 1.0).abs() < 1e-4, "k = {k}: {p}");
    }
    let fixed = ChannelConfig::fixed_both(D0, D_M, V, T);
    assert!((hitting_probability(&fixed, 0).unwrap() - 1.0).abs() < 1e-4);
}

#[test]
fn arrival_probability_peaks_when_tx_reaches_rx() {
    let cfg = ChannelConfig::mobile_tx_fixed_rx(D0, D_M, D_TX, V, T);
    let q0: Vec<f64> = (0..=10).map(|k| arrival_table(&cfg, k, 1).unwrap().q[0]).collect();
    for k in 0..3 {
        assert!(q0[k + 1] > q0[k], "{q0:?}");
    }
    for k in 3..10 {
        assert!(q0[k + 1] < q0[k], "{q0:?}");
    }
}

#[test]
fn receiver_drifting_away_loses_current_slot_arrivals() {
    // Closed form: q0 = erfc(d̄_k / √(4 D_eff T)).
    for v in [1e-3, 0.5e-3] {
        let cfg = ChannelConfig::fixed_tx_mobile_rx(D0, D_M, D_RX, v, T);
        let q0: Vec<f64> = (0..=10).map(|k| arrival_table(&cfg, k, 1).unwrap().q[0]).collect();
        for k in 0..=10 {
            let d_bar = D0 + k as f64 * T * v;
            let expected = libm::erfc(d_bar / (4.0 * (D_M + D_RX) * T).sqrt());
            assert!((q0[k] - expected).abs() < 1e-10, "v = {v}, k = {k}");
        }
        assert!(q0.windows(2).all(|w| w[1] < w[0]));
        let late = if v == 1e-3 { 2 } else { 4 };
        assert!(q0[late] < 0.06 * q0[0], "v = {v}: {q0:?}");
    }
}

#[test]
fn mixture_is_nonnegative_on_random_inputs() {
    use proptest::prelude::*;
    let mut runner = proptest::test_runner::TestRunner::new(ProptestConfig::with_cases(10_000));
    runner
        .run(
            &(
                -5e-6f64..5e-6,
                -16.0f64..-11.0,
                -10.5f64..-8.5,
                -2e-3f64..2e-3,
                -8.0f64..0.0,
            ),
            |(d_bar, log_s, log_d, v_star, log_t)| {
                let f = mixture_pdf(d_bar, 10f64.powf(log_s), 10f64.powf(log_d), v_star, 10f64.powf(log_t));
                prop_assert!(f.is_finite() && f >= 0.0);
                Ok(())
            },
        )
        .unwrap();
}
