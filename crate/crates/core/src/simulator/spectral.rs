use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// FFT plans and wavenumber tables for one periodic grid.
pub struct Spectral {
    pub n: usize,
    pub length: f64,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    /// Angular wavenumber of each FFT bin; 0 at the Nyquist bin.
    pub k: Vec<f64>,
    /// 1 for retained bins, 0 for the mean, the Nyquist bin and (when
    /// dealiasing) `|j| >= n/3`.
    pub mask: Vec<f64>,
}

impl Spectral {
    pub fn new(n: usize, length: f64, dealias: bool) -> Self {
        let mut planner = FftPlanner::new();
        let k = (0..n)
            .map(|j| {
                let m = signed_index(j, n);
                if 2 * m.unsigned_abs() as usize == n {
                    0.0
                } else {
                    2.0 * PI * m as f64 / length
                }
            })
            .collect();
        let mask = (0..n)
            .map(|j| {
                let m = signed_index(j, n).unsigned_abs() as usize;
                let keep = m != 0 && 2 * m != n && (!dealias || 3 * m < n);
                if keep {
                    1.0
                } else {
                    0.0
                }
            })
            .collect();
        Spectral {
            n,
            length,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
            k,
            mask,
        }
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn to_spectral(&self, values: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.forward.process(&mut buf);
        buf
    }

    pub fn to_physical(&self, coeffs: &[Complex64]) -> Vec<f64> {
        let mut buf = coeffs.to_vec();
        self.inverse.process(&mut buf);
        let scale = 1.0 / self.n as f64;
        buf.iter().map(|z| z.re * scale).collect()
    }

    /// Applies `symbol(k)` to every bin except the mean and Nyquist bins,
    /// which are zeroed.
    pub fn apply(&self, values: &[f64], symbol: impl Fn(f64) -> Complex64) -> Vec<f64> {
        let mut c = self.to_spectral(values);
        for (z, &k) in c.iter_mut().zip(&self.k) {
            *z = if k == 0.0 { Complex64::default() } else { *z * symbol(k) };
        }
        self.to_physical(&c)
    }

    /// Zeroes every bin outside the mask.
    pub fn project(&self, values: &[f64]) -> Vec<f64> {
        let mut c = self.to_spectral(values);
        for (z, &m) in c.iter_mut().zip(&self.mask) {
            *z *= m;
        }
        self.to_physical(&c)
    }

    pub fn derivative(&self, values: &[f64], order: u32) -> Vec<f64> {
        self.apply(values, |k| Complex64::new(0.0, k).powi(order as i32))
    }

    /// `D^-1` on the zero-mean part.
    pub fn antiderivative(&self, values: &[f64], order: u32) -> Vec<f64> {
        self.apply(values, |k| Complex64::new(0.0, k).powi(-(order as i32)))
    }

    /// `L(k) = -i (beta k^4 + gamma) / k`, zero on the mean and Nyquist bins.
    pub fn linear_symbol(&self, beta: f64, gamma: f64) -> Vec<Complex64> {
        self.k
            .iter()
            .map(|&k| if k == 0.0 { Complex64::default() } else { linear_symbol(beta, gamma, k) })
            .collect()
    }

    /// `-D(u^2)` in transform space, masked.
    pub fn nonlinear(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let u = self.to_physical(coeffs);
        let sq: Vec<f64> = u.iter().map(|v| v * v).collect();
        let mut c = self.to_spectral(&sq);
        for ((z, &k), &m) in c.iter_mut().zip(&self.k).zip(&self.mask) {
            *z *= Complex64::new(0.0, -k * m);
        }
        c
    }
}

pub fn linear_symbol(beta: f64, gamma: f64, k: f64) -> Complex64 {
    Complex64::new(0.0, -(beta * k.powi(4) + gamma) / k)
}

/// Linear phase speed `Omega(k) = beta k^3 + gamma / k`.
pub fn dispersion(beta: f64, gamma: f64, k: f64) -> f64 {
    beta * k.powi(3) + gamma / k
}

pub(crate) fn signed_index(j: usize, n: usize) -> i64 {
    if j <= n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}
