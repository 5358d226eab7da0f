//! Traveling-wave linearization: the (p, q) plane, the characteristic
//! quartic `lambda^4 - q lambda^2 + p = 0` and its eigenvalue regions.

mod classify;
mod roots;
mod scan;
mod soliton;

#[cfg(test)]
mod tests;

pub use classify::{classify, classify_exact, EigenPattern, Label, RegionClass};
pub use roots::{characteristic_roots, Spectrum};
pub use scan::{scan, ScanRow, ScanSpec};
pub use soliton::KdvSoliton;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WavesError {
    #[error("beta = 0: the (p, q) mapping is undefined")]
    UndefinedMapping,
    #[error("grid must have at least 2 points per axis, got {0}x{1}")]
    GridTooSmall(usize, usize),
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("k must be nonzero")]
    ZeroWavenumber,
}

/// Physical parameters of a wave of speed `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WaveParams {
    pub beta: f64,
    pub gamma: f64,
    pub c: f64,
}

impl WaveParams {
    pub fn new(beta: f64, gamma: f64, c: f64) -> Self {
        WaveParams { beta, gamma, c }
    }
}

pub fn to_pq(params: &WaveParams) -> Result<(f64, f64), WavesError> {
    if params.beta == 0.0 {
        return Err(WavesError::UndefinedMapping);
    }
    Ok((params.gamma / params.beta, -params.c / params.beta))
}

pub fn to_pq_exact(
    beta: &BigRational,
    gamma: &BigRational,
    c: &BigRational,
) -> Result<(BigRational, BigRational), WavesError> {
    if beta.is_zero() {
        return Err(WavesError::UndefinedMapping);
    }
    Ok((gamma / beta, -(c / beta)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExistenceFlags {
    pub existence_known: bool,
    pub nonexistence_known: bool,
    pub reason: String,
}

impl ExistenceFlags {
    pub fn summary(&self) -> &'static str {
        match (self.existence_known, self.nonexistence_known) {
            (true, _) => "exists",
            (_, true) => "none",
            _ => "unknown",
        }
    }
}

const EXISTENCE_REASON: &str =
    "zero-mass solitary waves exist for beta > 0 and c < 2*sqrt(gamma*beta)";
const NONEXISTENCE_REASON: &str =
    "for beta < 0 stationary localized pulses cannot exist at all";

pub fn existence_flags(params: &WaveParams) -> ExistenceFlags {
    let WaveParams { beta, gamma, c } = *params;
    if beta > 0.0 && gamma >= 0.0 && c < 2.0 * (gamma * beta).sqrt() {
        ExistenceFlags { existence_known: true, nonexistence_known: false, reason: EXISTENCE_REASON.into() }
    } else if beta < 0.0 {
        ExistenceFlags { existence_known: false, nonexistence_known: true, reason: NONEXISTENCE_REASON.into() }
    } else {
        ExistenceFlags {
            existence_known: false,
            nonexistence_known: false,
            reason: "no existence or nonexistence result applies".into(),
        }
    }
}

/// Existence flags from a plane point alone. With gamma >= 0, p < 0 forces
/// beta < 0; for p >= 0 beta > 0 is assumed, and then c < 2 sqrt(gamma beta)
/// reads q > -2 sqrt(p).
pub fn existence_flags_pq(p: f64, q: f64) -> ExistenceFlags {
    if p < 0.0 {
        existence_flags(&WaveParams::new(-1.0, -p, q))
    } else {
        existence_flags(&WaveParams::new(1.0, p, -q))
    }
}

pub(crate) fn sign_of(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
