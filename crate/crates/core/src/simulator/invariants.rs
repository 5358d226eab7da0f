use serde::Serialize;

use super::{rhs, GridState, SimError, Spectral};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Invariants {
    #[serde(rename = "I")]
    pub i: f64,
    #[serde(rename = "P")]
    pub p: f64,
    #[serde(rename = "H")]
    pub h: f64,
}

/// `I = int u`, `P = 1/2 int u^2`,
/// `H = int (beta/2 u_x^2 + gamma/2 (D^-1 u)^2 + u^3/3)`.
pub fn invariants(state: &GridState, beta: f64, gamma: f64) -> Result<Invariants, SimError> {
    state.check_zero_mean()?;
    let sp = Spectral::new(state.n(), state.length, false);
    Ok(invariants_unchecked(&sp, state, beta, gamma))
}

pub(crate) fn invariants_unchecked(sp: &Spectral, state: &GridState, beta: f64, gamma: f64) -> Invariants {
    let u = &state.values;
    let dx = state.dx();
    let ux = sp.derivative(u, 1);
    let w = sp.antiderivative(u, 1);
    let i = dx * u.iter().sum::<f64>();
    let p = 0.5 * dx * u.iter().map(|v| v * v).sum::<f64>();
    let h = dx
        * (0..u.len())
            .map(|j| 0.5 * beta * ux[j] * ux[j] + 0.5 * gamma * w[j] * w[j] + u[j].powi(3) / 3.0)
            .sum::<f64>();
    Invariants { i, p, h }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VariationalReport {
    /// Sign `s` with `u_t = s D(dH/du)` best matched.
    pub sign: i8,
    /// `max|u_t - s D(dH/du)| / max|u_t|` (absolute if `u_t = 0`).
    pub residual: f64,
    /// Residual for the other sign.
    pub residual_other: f64,
}

/// Compares the right-hand side with `D` of
/// `dH/du = -beta u_xx - gamma D^-2 u + u^2`. With dealiasing both the state
/// and the gradient are projected onto the retained modes, which is the
/// Hamiltonian structure the truncated dynamics actually has.
pub fn variational_residual(
    state: &GridState,
    beta: f64,
    gamma: f64,
    dealias: bool,
) -> Result<VariationalReport, SimError> {
    state.check_zero_mean()?;
    let sp = Spectral::new(state.n(), state.length, dealias);
    let projected = GridState { values: sp.project(&state.values), ..state.clone() };
    let ut = rhs(&projected, beta, gamma, dealias)?;
    let u = &projected.values;
    let uxx = sp.derivative(u, 2);
    let w2 = sp.antiderivative(u, 2);
    let grad: Vec<f64> = (0..u.len()).map(|j| -beta * uxx[j] - gamma * w2[j] + u[j] * u[j]).collect();
    let dgrad = sp.derivative(&sp.project(&grad), 1);
    let scale = ut.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
    let scale = if scale > 0.0 { scale } else { 1.0 };
    let res = |s: f64| ut.iter().zip(&dgrad).fold(0.0, |m: f64, (a, b)| m.max((a - s * b).abs())) / scale;
    let (plus, minus) = (res(1.0), res(-1.0));
    Ok(if minus <= plus {
        VariationalReport { sign: -1, residual: minus, residual_other: plus }
    } else {
        VariationalReport { sign: 1, residual: plus, residual_other: minus }
    })
}
