mod common;

use common::{chi2_critical, mean_stderr};
use proptest::prelude::*;
use std::f64::consts::TAU;
use tlsrelax::field::{stream_rng, trajectory, OuStepper};
use tlsrelax::{FieldParams, FieldState};

const DRAWS: usize = 1_000_000;

fn draws(p: &FieldParams, seed: u64) -> Vec<FieldState> {
    let mut rng = stream_rng(seed, 0);
    (0..DRAWS).map(|_| p.sample_stationary(&mut rng)).collect()
}

#[test]
fn stationary_mean_and_variance() {
    let p = FieldParams::resonant(0.2).unwrap();
    let xs = draws(&p, 11);
    let u: Vec<f64> = xs.iter().map(|s| s.u).collect();
    let v: Vec<f64> = xs.iter().map(|s| s.v).collect();
    for comp in [&u, &v] {
        let (m, e) = mean_stderr(comp);
        assert!(m.abs() < 4.0 * e, "mean {m} +- {e}");
    }
    let w2: Vec<f64> = xs.iter().map(|s| s.u * s.u + s.v * s.v).collect();
    let (m, _) = mean_stderr(&w2);
    assert!((m - 1.0).abs() < 0.01, "<|Omega|^2> = {m}");
}

#[test]
fn radial_histogram_passes_chi_square() {
    // equal-probability bins of the Rayleigh law 1 - exp(-Omega^2)
    let p = FieldParams::resonant(0.2).unwrap();
    let xs = draws(&p, 12);
    let bins = 50;
    let mut counts = vec![0u64; bins];
    for s in &xs {
        let cdf = 1.0 - (-s.omega() * s.omega()).exp();
        counts[((cdf * bins as f64) as usize).min(bins - 1)] += 1;
    }
    let expected = DRAWS as f64 / bins as f64;
    let chi2: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    let critical = chi2_critical(bins - 1, 2.326);
    assert!(chi2 < critical, "chi2 {chi2} >= {critical}");
}

#[test]
fn phase_is_uniform() {
    let p = FieldParams::resonant(0.2).unwrap();
    let xs = draws(&p, 13);
    let bins = 36;
    let mut counts = vec![0u64; bins];
    for s in &xs {
        let phi = s.phi();
        assert!((0.0..TAU).contains(&phi));
        counts[((phi / TAU * bins as f64) as usize).min(bins - 1)] += 1;
    }
    let expected = DRAWS as f64 / bins as f64;
    let chi2: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    assert!(chi2 < chi2_critical(bins - 1, 2.326), "chi2 {chi2}");
}

#[test]
fn fourth_moment_factorises() {
    let p = FieldParams::resonant(0.2).unwrap();
    let xs = draws(&p, 14);
    let w4: Vec<f64> = xs.iter().map(|s| (s.u * s.u + s.v * s.v).powi(2)).collect();
    let (m, e) = mean_stderr(&w4);
    assert!((m - 2.0).abs() < 4.0 * e, "<|Omega|^4> = {m} +- {e}");
}

/// `Re <Omega_c(t) Omega_c*(0)>` at the requested lags from independent
/// stationary trajectories.
fn lag_correlations(
    p: &FieldParams,
    dt: f64,
    lags: &[usize],
    n_traj: usize,
    seed: u64,
) -> Vec<(f64, f64)> {
    let n_steps = *lags.iter().max().unwrap();
    let mut samples = vec![Vec::with_capacity(n_traj); lags.len()];
    for i in 0..n_traj {
        let path = trajectory(p, dt, n_steps, &mut stream_rng(seed, i as u64), None).unwrap();
        for (k, &lag) in lags.iter().enumerate() {
            let (a, b) = (path[lag], path[0]);
            samples[k].push(a.u * b.u + a.v * b.v);
        }
    }
    samples.iter().map(|s| mean_stderr(s)).collect()
}

#[test]
fn lag_correlation_decays_exponentially() {
    let p = FieldParams::resonant(1.0).unwrap();
    let dt = 0.05;
    let lags = [2, 10, 20, 40];
    for (&lag, (m, e)) in lags.iter().zip(lag_correlations(&p, dt, &lags, 40_000, 21)) {
        let expected = (-(lag as f64) * dt).exp();
        assert!(
            (m - expected).abs() < 3.0 * e,
            "nu t={}: {m} +- {e} vs {expected}",
            lag as f64 * dt
        );
    }
}

#[test]
fn conditional_mean_and_variance() {
    let p = FieldParams::resonant(0.5).unwrap();
    let start = FieldState::new(1.5, -0.4);
    let (dt, n_steps, n_traj) = (0.1, 20, 40_000);
    let mut u_end = Vec::with_capacity(n_traj);
    let mut v_end = Vec::with_capacity(n_traj);
    let mut u_mid = Vec::with_capacity(n_traj);
    for i in 0..n_traj {
        let path = trajectory(&p, dt, n_steps, &mut stream_rng(31, i as u64), Some(start)).unwrap();
        u_end.push(path[n_steps].u);
        v_end.push(path[n_steps].v);
        u_mid.push(path[n_steps / 2].u);
    }
    let t = dt * n_steps as f64;
    let decay = (-p.nu() * t).exp();
    let var = 0.5 * (1.0 - (-2.0 * p.nu() * t).exp());
    let (mu, eu) = mean_stderr(&u_end);
    let (mv, ev) = mean_stderr(&v_end);
    assert!((mu - 1.5 * decay).abs() < 3.0 * eu);
    assert!((mv + 0.4 * decay).abs() < 3.0 * ev);
    let (mm, em) = mean_stderr(&u_mid);
    assert!((mm - 1.5 * (-p.nu() * 0.5 * t).exp()).abs() < 3.0 * em);
    let su: Vec<f64> = u_end.iter().map(|x| (x - 1.5 * decay).powi(2)).collect();
    let (s2, es2) = mean_stderr(&su);
    assert!((s2 - var).abs() < 3.0 * es2, "var {s2} +- {es2} vs {var}");
}

#[test]
fn large_decorrelation_forgets_the_start() {
    let p = FieldParams::resonant(1.0).unwrap();
    let start = FieldState::new(5.0, 5.0);
    let mut rng = stream_rng(41, 0);
    let us: Vec<f64> = (0..100_000)
        .map(|_| p.step(start, 60.0, &mut rng).u)
        .collect();
    let (m, e) = mean_stderr(&us);
    assert!(m.abs() < 4.0 * e);
    let sq: Vec<f64> = us.iter().map(|u| u * u).collect();
    let (v, ev) = mean_stderr(&sq);
    assert!((v - 0.5).abs() < 4.0 * ev);
}

#[test]
fn step_integral_has_the_exact_joint_law() {
    // Given x, the step integral I has mean x(1-e^{-x})/nu and the pair
    // (x', I) has covariance s2 (1-e^{-nu dt})^2 / nu.
    let p = FieldParams::resonant(0.8).unwrap();
    let dt = 0.7;
    let stepper = OuStepper::new(&p, dt);
    let start = FieldState::new(0.9, 0.0);
    let mut rng = stream_rng(51, 0);
    let n = 400_000;
    let mut ints = Vec::with_capacity(n);
    let mut ends = Vec::with_capacity(n);
    for _ in 0..n {
        let (next, int) = stepper.advance_with_integral(start, &mut rng);
        ints.push(int[0]);
        ends.push(next.u);
    }
    let nu = p.nu();
    let x = nu * dt;
    let mean_int = 0.9 * (1.0 - (-x).exp()) / nu;
    let (mi, ei) = mean_stderr(&ints);
    assert!((mi - mean_int).abs() < 4.0 * ei, "{mi} vs {mean_int}");
    let var_int = 0.5 / (nu * nu) * (2.0 * x - 3.0 + 4.0 * (-x).exp() - (-2.0 * x).exp());
    let dev: Vec<f64> = ints.iter().map(|i| (i - mean_int).powi(2)).collect();
    let (vi, evi) = mean_stderr(&dev);
    assert!((vi - var_int).abs() < 4.0 * evi, "{vi} vs {var_int}");
    let mean_end = 0.9 * (-x).exp();
    let cov = 0.5 / nu * (1.0 - (-x).exp()).powi(2);
    let prod: Vec<f64> = ints
        .iter()
        .zip(&ends)
        .map(|(i, e)| (i - mean_int) * (e - mean_end))
        .collect();
    let (c, ec) = mean_stderr(&prod);
    assert!((c - cov).abs() < 4.0 * ec, "{c} vs {cov}");
}

#[test]
fn trajectory_rejects_bad_requests() {
    let p = FieldParams::resonant(0.1).unwrap();
    let mut rng = stream_rng(0, 0);
    assert!(trajectory(&p, 0.0, 10, &mut rng, None).is_err());
    assert!(trajectory(&p, 0.1, usize::MAX, &mut rng, None).is_err());
}

proptest! {
    #[test]
    fn polar_round_trip(u in -10.0f64..10.0, v in -10.0f64..10.0) {
        let s = FieldState::new(u, v);
        let phi = s.phi();
        prop_assert!((0.0..TAU).contains(&phi));
        let back = FieldState::from_polar(s.omega(), phi);
        prop_assert!((back.u - u).abs() < 1e-12 && (back.v - v).abs() < 1e-12);
    }

    #[test]
    fn derived_scales_follow_parameters(w in 0.1f64..5.0, nu in 0.0f64..20.0) {
        let p = FieldParams::new(w, nu, 0.0).unwrap();
        prop_assert!((p.diffusion() - w * w * nu / 2.0).abs() <= 1e-12 * (1.0 + p.diffusion()));
        prop_assert!((p.alpha().powi(3) - 2.0 * p.diffusion()).abs() <= 1e-10 * (1.0 + p.diffusion()));
    }

    #[test]
    fn same_stream_same_path(seed in any::<u64>(), idx in 0u64..1000) {
        let p = FieldParams::resonant(0.3).unwrap();
        let a = trajectory(&p, 0.05, 20, &mut stream_rng(seed, idx), None).unwrap();
        let b = trajectory(&p, 0.05, 20, &mut stream_rng(seed, idx), None).unwrap();
        prop_assert_eq!(a, b);
    }
}
