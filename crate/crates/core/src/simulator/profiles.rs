use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{GridState, SimError, Spectral};
use crate::waves::KdvSoliton;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Profile {
    Zero,
    KdvSoliton { beta: f64, k: f64, center: f64 },
    GaussianDipole { amplitude: f64, width: f64 },
    /// Random Fourier modes `1 <= |j| <= cutoff`, scaled to `max|u| = amplitude`.
    RandomSmooth { seed: u64, cutoff: usize, amplitude: f64 },
}

impl Profile {
    pub fn name(&self) -> &'static str {
        match self {
            Profile::Zero => "zero",
            Profile::KdvSoliton { .. } => "kdv-soliton",
            Profile::GaussianDipole { .. } => "gaussian-dipole",
            Profile::RandomSmooth { .. } => "random-smooth",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileState {
    pub state: GridState,
    /// Mean removed from the raw samples.
    pub removed_mean: f64,
    pub warnings: Vec<String>,
}

pub fn make_state(profile: &Profile, n: usize, length: f64) -> Result<ProfileState, SimError> {
    let zeros = GridState::zeros(n, length)?;
    let dx = zeros.dx();
    let mut warnings = vec![];
    let mut wide = |width: f64| {
        if width > length / 4.0 {
            warnings.push(format!("profile width {width} exceeds L/4 = {}; expect wrap-around", length / 4.0));
        }
    };
    let raw: Vec<f64> = match *profile {
        Profile::Zero => zeros.values.clone(),
        Profile::KdvSoliton { beta, k, center } => {
            let s = KdvSoliton::new(beta, k).map_err(|e| SimError::BadProfile(e.to_string()))?;
            wide(2.0 / k.abs());
            (0..n).map(|j| s.profile(periodic_offset(j as f64 * dx - center, length))).collect()
        }
        Profile::GaussianDipole { amplitude, width } => {
            if !(width > 0.0) {
                return Err(SimError::BadProfile(format!("width must be positive, got {width}")));
            }
            wide(2.0 * width);
            let half = n as i64 / 2;
            (0..n as i64)
                .map(|j| {
                    let z = (j - half) as f64 * dx / width;
                    amplitude * z * (-z * z).exp()
                })
                .collect()
        }
        Profile::RandomSmooth { seed, cutoff, amplitude } => {
            if cutoff == 0 || 3 * cutoff >= n {
                return Err(SimError::BadProfile(format!("cutoff must be in 1..{}, got {cutoff}", n.div_ceil(3))));
            }
            random_smooth(n, length, seed, cutoff, amplitude)
        }
    };
    let mean = raw.iter().sum::<f64>() / n as f64;
    let values = raw.iter().map(|v| v - mean).collect();
    Ok(ProfileState { state: GridState { values, length, t: 0.0 }, removed_mean: mean, warnings })
}

fn periodic_offset(z: f64, length: f64) -> f64 {
    z - length * (z / length).round()
}

fn random_smooth(n: usize, length: f64, seed: u64, cutoff: usize, amplitude: f64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = vec![Complex64::default(); n];
    for j in 1..=cutoff {
        let decay = (-(j as f64 / cutoff as f64).powi(2)).exp();
        let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * decay;
        c[j] = z;
        c[n - j] = z.conj();
    }
    let sp = Spectral::new(n, length, false);
    let u = sp.to_physical(&c);
    let max = u.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
    if max == 0.0 {
        return u;
    }
    u.iter().map(|v| v * amplitude / max).collect()
}

/// Exact solution at time `t` for the zero-mean projected soliton with
/// `gamma = 0`: removing the mean `m` shifts the speed to `c - 2m`.
pub fn soliton_exact(
    beta: f64,
    k: f64,
    center: f64,
    removed_mean: f64,
    n: usize,
    length: f64,
    t: f64,
) -> Result<Vec<f64>, SimError> {
    let s = KdvSoliton::new(beta, k).map_err(|e| SimError::BadProfile(e.to_string()))?;
    let dx = length / n as f64;
    let shift = center + (s.speed - 2.0 * removed_mean) * t;
    Ok((0..n).map(|j| s.profile(periodic_offset(j as f64 * dx - shift, length)) - removed_mean).collect())
}
