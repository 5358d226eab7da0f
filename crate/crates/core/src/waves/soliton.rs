use serde::Serialize;

use super::WavesError;

/// `phi(z) = -6 beta k^2 sech^2(k z)` travelling at `c = -4 beta k^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KdvSoliton {
    pub beta: f64,
    pub k: f64,
    pub amplitude: f64,
    pub speed: f64,
}

impl KdvSoliton {
    pub fn new(beta: f64, k: f64) -> Result<Self, WavesError> {
        if beta == 0.0 {
            return Err(WavesError::UndefinedMapping);
        }
        if k == 0.0 {
            return Err(WavesError::ZeroWavenumber);
        }
        Ok(KdvSoliton { beta, k, amplitude: -6.0 * beta * k * k, speed: -4.0 * beta * k * k })
    }

    pub fn profile(&self, z: f64) -> f64 {
        let s = 1.0 / (self.k * z).cosh();
        self.amplitude * s * s
    }

    pub fn second_derivative(&self, z: f64) -> f64 {
        let s2 = (1.0 / (self.k * z).cosh()).powi(2);
        let k2 = self.k * self.k;
        self.amplitude * (4.0 * k2 * s2 - 6.0 * k2 * s2 * s2)
    }

    /// `-c phi - beta phi'' + phi^2` at `z`.
    pub fn residual(&self, z: f64) -> f64 {
        let phi = self.profile(z);
        -self.speed * phi - self.beta * self.second_derivative(z) + phi * phi
    }

    pub fn max_residual(&self, zs: impl IntoIterator<Item = f64>) -> f64 {
        zs.into_iter().map(|z| self.residual(z).abs()).fold(0.0, f64::max)
    }

    /// Sample grid covering the core of the pulse.
    pub fn sample_grid(&self, n: usize) -> impl Iterator<Item = f64> {
        let half = 10.0 / self.k.abs();
        let n = n.max(2);
        (0..n).map(move |i| -half + 2.0 * half * i as f64 / (n - 1) as f64)
    }

    pub fn residual_bound(&self) -> f64 {
        1e-10 * self.amplitude * self.amplitude
    }
}
