use std::f64::consts::PI;

use num_complex::Complex64;

use super::*;
use crate::algebra::Var;
use crate::equation::{parse_equation, OSTROVSKY};

fn sine(n: usize, length: f64, a: f64, mode: usize) -> GridState {
    let values = (0..n).map(|j| a * (2.0 * PI * mode as f64 * j as f64 / n as f64).sin()).collect();
    GridState::new(values, length, 0.0).unwrap()
}

fn soliton_run(n: usize, k: f64, dt: f64) -> (Trajectory, Vec<f64>) {
    let length = 50.0;
    let profile = Profile::KdvSoliton { beta: 1.0, k, center: 25.0 };
    let init = make_state(&profile, n, length).unwrap();
    let cfg = SimConfig { n, length, dt, t_final: 1.0, beta: 1.0, gamma: 0.0, ..SimConfig::default() };
    let traj = integrate(&init.state, &cfg, 0).unwrap();
    let exact = soliton_exact(1.0, k, 25.0, init.removed_mean, n, length, 1.0).unwrap();
    (traj, exact)
}

fn random_state(seed: u64, n: usize, length: f64) -> GridState {
    make_state(&Profile::RandomSmooth { seed, cutoff: 12, amplitude: 1.0 }, n, length).unwrap().state
}

#[test]
fn grid_validation() {
    assert_eq!(GridState::zeros(15, 1.0), Err(SimError::BadGridSize(15)));
    assert_eq!(GridState::zeros(8, 1.0), Err(SimError::BadGridSize(8)));
    assert!(GridState::zeros(16, 0.0).is_err());
    let bad = SimConfig { dt: 2.0, t_final: 1.0, ..SimConfig::default() };
    assert!(bad.validate().is_err());
}

#[test]
fn profiles() {
    let z = make_state(&Profile::Zero, 32, 10.0).unwrap();
    assert!(z.state.values.iter().all(|&v| v == 0.0));

    let s = make_state(&Profile::KdvSoliton { beta: 1.0, k: 1.0, center: 25.0 }, 256, 50.0).unwrap();
    assert!((s.removed_mean - (-12.0 / 50.0)).abs() < 1e-12);
    assert!((s.state.values[128] - (-6.0 - s.removed_mean)).abs() < 1e-12);
    assert!(s.state.mean().abs() < 1e-15);
    assert!(s.warnings.is_empty());

    let d = make_state(&Profile::GaussianDipole { amplitude: 1.0, width: 2.0 }, 256, 50.0).unwrap();
    assert!(d.removed_mean.abs() < 1e-16);
    for j in 1..128 {
        assert!((d.state.values[128 + j] + d.state.values[128 - j]).abs() < 1e-15);
    }
    let wide = make_state(&Profile::GaussianDipole { amplitude: 1.0, width: 10.0 }, 64, 50.0).unwrap();
    assert_eq!(wide.warnings.len(), 1);

    let r1 = random_state(3, 128, 20.0);
    assert_eq!(r1, random_state(3, 128, 20.0));
    assert_ne!(r1, random_state(4, 128, 20.0));
    assert!((r1.max_abs() - 1.0).abs() < 1e-12);
    assert!(make_state(&Profile::RandomSmooth { seed: 0, cutoff: 60, amplitude: 1.0 }, 128, 1.0).is_err());
}

#[test]
fn rhs_zero_and_single_mode() {
    let z = GridState::zeros(32, 10.0).unwrap();
    assert!(rhs(&z, 1.0, 0.5, true).unwrap().iter().all(|&v| v == 0.0));

    let (n, length, a) = (64, 10.0, 1e-3);
    let u = sine(n, length, a, 1);
    let k = 2.0 * PI / length;
    for gamma in [0.0, 0.7] {
        let got = rhs(&u, 1.3, gamma, true).unwrap();
        let omega = dispersion(1.3, gamma, k);
        for j in 0..n {
            let x = j as f64 * length / n as f64;
            let linear = -a * omega * (k * x).cos();
            let nonlinear = -a * a * k * (2.0 * k * x).sin();
            assert!((got[j] - linear - nonlinear).abs() < 1e-13, "{j}: {}", got[j] - linear - nonlinear);
        }
    }
    let mut off = u.clone();
    off.values.iter_mut().for_each(|v| *v += 0.1);
    assert!(matches!(rhs(&off, 1.0, 0.0, true), Err(SimError::NonZeroMean(_))));
}

/// The linear symbol is the dispersion symbol of the parsed equation at xi = i k.
#[test]
fn linear_symbol_matches_equation_omega() {
    let eq = parse_equation(OSTROVSKY, 3).unwrap();
    let (beta, gamma) = (1.25, 0.5);
    for k in [0.3, 1.0, 2.7] {
        let got = eq
            .omega
            .eval_complex(&|v| match v {
                Var::Xi(1) => Complex64::new(0.0, k),
                Var::Beta => Complex64::new(beta, 0.0),
                Var::Gamma => Complex64::new(gamma, 0.0),
                _ => Complex64::new(f64::NAN, 0.0),
            });
        let want = linear_symbol(beta, gamma, k);
        assert!((got - want).norm() < 1e-12 * want.norm(), "{got} vs {want}");
        assert!((want.im + dispersion(beta, gamma, k)).abs() < 1e-14 && want.re == 0.0);
    }
}

#[test]
fn invariants_of_sine() {
    let (n, length, a, beta, gamma) = (64, 10.0, 0.7, 1.5, 0.5);
    let u = sine(n, length, a, 1);
    let inv = invariants(&u, beta, gamma).unwrap();
    let k = 2.0 * PI / length;
    let h = 0.5 * beta * k * k * a * a * length / 2.0 + 0.5 * gamma * a * a * length / 2.0 / (k * k);
    assert!(inv.i.abs() < 1e-14);
    assert!((inv.p - a * a * length / 4.0).abs() < 1e-13);
    assert!((inv.h - h).abs() < 1e-12 * h);

    let doubled = GridState::new(u.values.iter().map(|v| 2.0 * v).collect(), length, 0.0).unwrap();
    assert_eq!(invariants(&doubled, beta, gamma).unwrap().p, 4.0 * inv.p);
    assert_eq!(invariants(&GridState::zeros(32, 3.0).unwrap(), 1.0, 1.0).unwrap(), Invariants { i: 0.0, p: 0.0, h: 0.0 });
}

#[test]
fn zero_data_stays_zero() {
    let cfg = SimConfig { n: 32, length: 10.0, dt: 0.01, t_final: 0.5, gamma: 0.5, record_every: 10, ..SimConfig::default() };
    let traj = integrate(&GridState::zeros(32, 10.0).unwrap(), &cfg, 1).unwrap();
    assert!(traj.final_state.values.iter().all(|&v| v == 0.0));
    assert!(traj.series.samples.iter().all(|s| s.i == 0.0 && s.p == 0.0 && s.h == 0.0));
    assert_eq!(traj.series.samples.len(), 6);
    assert_eq!(traj.snapshots.len(), 6);
    assert_eq!(traj.outcome, Outcome::Completed);
}

#[test]
fn soliton_translates() {
    let (traj, exact) = soliton_run(256, 1.0, 1e-3);
    let err = traj.final_state.max_diff(&exact);
    assert!(err <= 1e-4, "shape error {err:e}");
    assert!(traj.series.p_drift() <= 1e-8);
    assert!(traj.series.h_drift() <= 1e-8);
    assert!((traj.final_state.t - 1.0).abs() < 1e-12);
}

#[test]
fn resolution_plateau() {
    let (fine, _) = soliton_run(256, 0.4, 1e-2);
    let (coarse, _) = soliton_run(128, 0.4, 1e-2);
    let sub: Vec<f64> = fine.final_state.values.iter().step_by(2).copied().collect();
    let diff = coarse.final_state.max_diff(&sub);
    assert!(diff < 1e-6, "{diff:e}");
}

#[test]
fn mean_mode_stays_zero() {
    let u = random_state(11, 64, 20.0);
    let cfg = SimConfig { n: 64, length: 20.0, dt: 0.01, t_final: 2.0, gamma: 0.5, ..SimConfig::default() };
    let traj = integrate(&u, &cfg, 0).unwrap();
    let sp = Spectral::new(64, 20.0, true);
    assert_eq!(sp.to_spectral(&traj.final_state.values)[0].re.abs() < 1e-13, true);
    assert!(traj.series.max_abs_i() < 1e-12);
}

#[test]
fn dispersion_from_phase() {
    let (n, length, a) = (64, 20.0, 1e-7);
    let (beta, gamma) = (1.0, 0.5);
    let sp = Spectral::new(n, length, true);
    for mode in [1usize, 3, 7] {
        let u = sine(n, length, a, mode);
        let k = 2.0 * PI * mode as f64 / length;
        let omega = dispersion(beta, gamma, k);
        let t_final = 0.02;
        let cfg = SimConfig { n, length, dt: 0.01, t_final, beta, gamma, ..SimConfig::default() };
        let traj = integrate(&u, &cfg, 0).unwrap();
        let c0 = sp.to_spectral(&u.values)[mode];
        let c1 = sp.to_spectral(&traj.final_state.values)[mode];
        let measured = -(c1 / c0).arg() / t_final;
        assert!((measured - omega).abs() <= 1e-8 * omega.abs(), "mode {mode}: {measured} vs {omega}");
    }
}

fn ostrovsky_drift(dt: f64, t_final: f64) -> f64 {
    let u = random_state(7, 256, 50.0);
    let cfg = SimConfig { n: 256, length: 50.0, dt, t_final, gamma: 0.5, record_every: 1, ..SimConfig::default() };
    integrate(&u, &cfg, 0).unwrap().series.max_drift()
}

#[test]
fn drift_converges_at_fourth_order() {
    let coarse = ostrovsky_drift(0.04, 2.0);
    let fine = ostrovsky_drift(0.004, 2.0);
    let rate = (coarse / fine).log10();
    assert!(rate >= 3.5, "rate {rate}: {coarse:e} -> {fine:e}");
}

#[test]
fn variational_sign_is_global() {
    for seed in 0..10 {
        let u = random_state(seed, 128, 30.0);
        let r = variational_residual(&u, 1.0, 0.5, true).unwrap();
        assert_eq!(r.sign, -1);
        assert!(r.residual <= 1e-10, "{}", r.residual);
        assert!(r.residual_other > 0.5);
    }
    let r = variational_residual(&sine(64, 10.0, 0.3, 2), 1.0, 0.0, true).unwrap();
    assert!(r.residual < 1e-12, "{}", r.residual);
    let z = variational_residual(&GridState::zeros(32, 1.0).unwrap(), 1.0, 1.0, true).unwrap();
    assert_eq!(z.residual, 0.0);
}

#[test]
fn blow_up_is_reported() {
    let u = make_state(&Profile::GaussianDipole { amplitude: 1e80, width: 2.0 }, 64, 50.0).unwrap().state;
    let cfg = SimConfig { n: 64, length: 50.0, dt: 0.1, t_final: 10.0, ..SimConfig::default() };
    let traj = integrate(&u, &cfg, 0).unwrap();
    assert!(matches!(traj.outcome, Outcome::BlowUp { .. }), "{:?}", traj.outcome);
    assert!(traj.final_state.values.iter().all(|v| v.is_finite()));
}

#[test]
fn config_parsing() {
    let text = "# soliton\nn = 128\nL = 40 # period\ndt=0.01\nT = 0.5\nprofile = kdv-soliton\nk = 0.5\n";
    let rc = parse_config(text).unwrap();
    assert_eq!(rc.sim.n, 128);
    assert_eq!(rc.sim.length, 40.0);
    assert_eq!(rc.profile, Profile::KdvSoliton { beta: 1.0, k: 0.5, center: 20.0 });
    assert_eq!(rc.max_drift, 1e-6);
    assert!(matches!(parse_config("n 12"), Err(ConfigError::Syntax { line: 1, .. })));
    assert!(matches!(parse_config("bogus = 1"), Err(ConfigError::UnknownKey(_))));
    assert!(matches!(parse_config("n = x"), Err(ConfigError::BadValue { .. })));
    assert!(matches!(parse_config("n = 10"), Err(ConfigError::Invalid(SimError::BadGridSize(10)))));
    assert!(matches!(parse_config("profile = square"), Err(ConfigError::BadValue { .. })));
}



#[test]
fn snapshot_round_trip() {
    let u = random_state(5, 64, 7.5);
    let mut bytes = u.to_bytes();
    assert_eq!(bytes.len(), 24 + 64 * 8);
    assert_eq!(&bytes[..8], &64u64.to_le_bytes());
    let back = GridState::from_bytes(&bytes).unwrap();
    assert_eq!(back, u);
    bytes.pop();
    assert!(GridState::from_bytes(&bytes).is_none());
}

#[test]
fn series_csv() {
    let series = InvariantSeries {
        samples: vec![InvariantSample { t: 0.0, i: 0.0, p: 0.5, h: -1.25, maxu: 1.0 }],
    };
    assert_eq!(series.to_csv(), "t,I,P,H,maxu\n0,0,0.5,-1.25,1\n");
}
