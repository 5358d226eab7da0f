//! Periodic pseudospectral integrator for
//! `u_t = D^-1(beta D^4 + gamma) u - 2 u u_x` with ETDRK4 time stepping.

mod config;
mod etdrk4;
mod invariants;
mod profiles;
mod spectral;

#[cfg(test)]
mod tests;

pub use config::{parse_config, parse_pairs as config_pairs, ConfigError, RunConfig, DEFAULT_MAX_DRIFT};
pub use invariants::{invariants, variational_residual, Invariants, VariationalReport};
pub use profiles::{make_state, soliton_exact, Profile, ProfileState};
pub use spectral::{dispersion, linear_symbol, Spectral};

use num_complex::Complex64;
use serde::Serialize;

use etdrk4::Etdrk4;

pub const MIN_POINTS: usize = 16;
/// `dt * max_k |Omega(k)|` above this draws a warning.
pub const ADVISORY_CFL: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimError {
    #[error("grid size must be even and at least {MIN_POINTS}, got {0}")]
    BadGridSize(usize),
    #[error("period length must be positive, got {0}")]
    BadLength(f64),
    #[error("dt must be positive and no larger than T (dt = {dt}, T = {t_final})")]
    BadTimeStep { dt: f64, t_final: f64 },
    #[error("state has {got} samples, grid has {expected}")]
    SizeMismatch { got: usize, expected: usize },
    #[error("state mean {0:e} is not zero; D^-1 is undefined")]
    NonZeroMean(f64),
    #[error("profile parameter {0}")]
    BadProfile(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridState {
    pub values: Vec<f64>,
    pub length: f64,
    pub t: f64,
}

impl GridState {
    pub fn new(values: Vec<f64>, length: f64, t: f64) -> Result<Self, SimError> {
        check_grid(values.len(), length)?;
        Ok(GridState { values, length, t })
    }

    pub fn zeros(n: usize, length: f64) -> Result<Self, SimError> {
        Self::new(vec![0.0; n], length, 0.0)
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n() as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        self.dx() * j as f64
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.n() as f64
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_diff(&self, other: &[f64]) -> f64 {
        self.values.iter().zip(other).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// `N` (u64), `L`, `t` (f64), then `N` f64 samples, all little-endian.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(24 + 8 * self.n());
        out.extend_from_slice(&(self.n() as u64).to_le_bytes());
        out.extend_from_slice(&self.length.to_le_bytes());
        out.extend_from_slice(&self.t.to_le_bytes());
        for v in &self.values {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Option<Self> {
        let word = |i: usize| -> Option<[u8; 8]> { bytes.get(8 * i..8 * i + 8)?.try_into().ok() };
        let n = u64::from_le_bytes(word(0)?) as usize;
        if bytes.len() != 24 + 8 * n {
            return None;
        }
        let length = f64::from_le_bytes(word(1)?);
        let t = f64::from_le_bytes(word(2)?);
        let values = (0..n).map(|j| word(3 + j).map(f64::from_le_bytes)).collect::<Option<Vec<_>>>()?;
        GridState::new(values, length, t).ok()
    }

    pub(crate) fn check_zero_mean(&self) -> Result<(), SimError> {
        let mean = self.mean();
        if mean.abs() > 1e-12 * self.max_abs().max(1.0) {
            return Err(SimError::NonZeroMean(mean));
        }
        Ok(())
    }
}

fn check_grid(n: usize, length: f64) -> Result<(), SimError> {
    if n < MIN_POINTS || n % 2 != 0 {
        return Err(SimError::BadGridSize(n));
    }
    if !(length > 0.0 && length.is_finite()) {
        return Err(SimError::BadLength(length));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Etdrk4,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimConfig {
    pub n: usize,
    pub length: f64,
    pub dt: f64,
    pub t_final: f64,
    pub beta: f64,
    pub gamma: f64,
    pub dealias: bool,
    pub scheme: Scheme,
    /// Invariants are sampled every this many steps (and at the end).
    pub record_every: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            n: 256,
            length: 50.0,
            dt: 1e-3,
            t_final: 1.0,
            beta: 1.0,
            gamma: 0.0,
            dealias: true,
            scheme: Scheme::Etdrk4,
            record_every: 100,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        check_grid(self.n, self.length)?;
        if !(self.dt > 0.0 && self.t_final >= self.dt && self.t_final.is_finite()) {
            return Err(SimError::BadTimeStep { dt: self.dt, t_final: self.t_final });
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        (self.t_final / self.dt).round() as usize
    }

    /// `dt * max |Omega(k)|` over retained modes.
    pub fn stiffness(&self) -> f64 {
        let sp = Spectral::new(self.n, self.length, self.dealias);
        let max = sp
            .k
            .iter()
            .zip(&sp.mask)
            .filter(|(_, &m)| m > 0.0)
            .map(|(&k, _)| dispersion(self.beta, self.gamma, k).abs())
            .fold(0.0, f64::max);
        self.dt * max
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut w = vec![];
        let s = self.stiffness();
        if s > ADVISORY_CFL {
            w.push(format!("dt*max|Omega| = {s:.3e} exceeds the advisory bound {ADVISORY_CFL}"));
        }
        let drift = (self.t_final / self.dt - self.steps() as f64).abs();
        if drift > 1e-9 {
            w.push(format!("T/dt is not an integer; integrating {} steps", self.steps()));
        }
        w
    }
}

/// Right-hand side in physical space.
pub fn rhs(state: &GridState, beta: f64, gamma: f64, dealias: bool) -> Result<Vec<f64>, SimError> {
    state.check_zero_mean()?;
    let sp = Spectral::new(state.n(), state.length, dealias);
    let c = sp.to_spectral(&state.values);
    let l = sp.linear_symbol(beta, gamma);
    let nl = sp.nonlinear(&c);
    let out: Vec<Complex64> = c.iter().zip(&l).zip(&nl).map(|((u, l), n)| u * l + n).collect();
    Ok(sp.to_physical(&out))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvariantSample {
    pub t: f64,
    #[serde(rename = "I")]
    pub i: f64,
    #[serde(rename = "P")]
    pub p: f64,
    #[serde(rename = "H")]
    pub h: f64,
    pub maxu: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct InvariantSeries {
    pub samples: Vec<InvariantSample>,
}

fn relative_drift(values: impl Iterator<Item = f64>, reference: f64) -> f64 {
    let worst = values.fold(0.0, |m: f64, v| m.max((v - reference).abs()));
    if reference == 0.0 {
        worst
    } else {
        worst / reference.abs()
    }
}

impl InvariantSeries {
    fn first(&self) -> Option<&InvariantSample> {
        self.samples.first()
    }

    /// Largest `|P(t) - P(0)| / P(0)` (absolute when `P(0) = 0`).
    pub fn p_drift(&self) -> f64 {
        self.first().map_or(0.0, |s0| relative_drift(self.samples.iter().map(|s| s.p), s0.p))
    }

    pub fn h_drift(&self) -> f64 {
        self.first().map_or(0.0, |s0| relative_drift(self.samples.iter().map(|s| s.h), s0.h))
    }

    pub fn max_abs_i(&self) -> f64 {
        self.samples.iter().fold(0.0, |m: f64, s| m.max(s.i.abs()))
    }

    pub fn max_drift(&self) -> f64 {
        self.p_drift().max(self.h_drift())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,I,P,H,maxu\n");
        for s in &self.samples {
            let row = [s.t, s.i, s.p, s.h, s.maxu].map(csv_number).join(",");
            out.push_str(&row);
            out.push('\n');
        }
        out
    }
}

/// Shortest round-trip form, in exponent notation for very small or large
/// magnitudes.
pub fn csv_number(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && !(1e-4..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Outcome {
    Completed,
    BlowUp { last_valid_time: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub final_state: GridState,
    pub series: InvariantSeries,
    pub snapshots: Vec<GridState>,
    pub outcome: Outcome,
    pub steps_taken: usize,
}

/// Snapshots are kept every `snapshot_every` recorded samples (none if 0).
pub fn integrate(state: &GridState, config: &SimConfig, snapshot_every: usize) -> Result<Trajectory, SimError> {
    config.validate()?;
    if state.n() != config.n {
        return Err(SimError::SizeMismatch { got: state.n(), expected: config.n });
    }
    if state.length != config.length {
        return Err(SimError::BadLength(state.length));
    }
    state.check_zero_mean()?;
    let sp = Spectral::new(config.n, config.length, config.dealias);
    let mut v = sp.to_spectral(&state.values);
    for (z, &m) in v.iter_mut().zip(&sp.mask) {
        *z *= m;
    }
    let stepper = Etdrk4::new(&sp.linear_symbol(config.beta, config.gamma), config.dt);
    let nonlinear = |c: &[Complex64]| sp.nonlinear(c);
    let steps = config.steps();
    let record_every = config.record_every.max(1);

    let mut current = GridState { values: sp.to_physical(&v), length: config.length, t: state.t };
    let mut series = InvariantSeries::default();
    let mut snapshots = vec![];
    let record = |s: &GridState, series: &mut InvariantSeries, snapshots: &mut Vec<GridState>| {
        let inv = invariants::invariants_unchecked(&sp, s, config.beta, config.gamma);
        if snapshot_every > 0 && series.samples.len() % snapshot_every == 0 {
            snapshots.push(s.clone());
        }
        series.samples.push(InvariantSample { t: s.t, i: inv.i, p: inv.p, h: inv.h, maxu: s.max_abs() });
    };
    record(&current, &mut series, &mut snapshots);

    let mut outcome = Outcome::Completed;
    let mut taken = 0;
    for step in 1..=steps {
        let mut next = v.clone();
        stepper.step(&mut next, nonlinear);
        let finite = next.iter().all(|z| z.re.is_finite() && z.im.is_finite());
        let values = sp.to_physical(&next);
        if !finite || values.iter().any(|x| !x.is_finite() || x.abs() > 1e150) {
            outcome = Outcome::BlowUp { last_valid_time: current.t };
            break;
        }
        v = next;
        taken = step;
        current = GridState { values, length: config.length, t: state.t + step as f64 * config.dt };
        if step % record_every == 0 || step == steps {
            record(&current, &mut series, &mut snapshots);
        }
    }
    Ok(Trajectory { final_state: current, series, snapshots, outcome, steps_taken: taken })
}
