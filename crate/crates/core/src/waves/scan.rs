use rayon::prelude::*;
use serde::Serialize;

use super::{classify, existence_flags_pq, Label, WavesError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanSpec {
    pub p_range: (f64, f64),
    pub q_range: (f64, f64),
    pub grid: (usize, usize),
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub p: f64,
    pub q: f64,
    pub label: Label,
    pub eigen_structure: &'static str,
    pub existence_flag: &'static str,
}

fn axis(range: (f64, f64), n: usize, i: usize) -> f64 {
    range.0 + (range.1 - range.0) * i as f64 / (n - 1) as f64
}

/// Row-major over p, then q.
pub fn scan(spec: &ScanSpec) -> Result<Vec<ScanRow>, WavesError> {
    let (np, nq) = spec.grid;
    if np < 2 || nq < 2 {
        return Err(WavesError::GridTooSmall(np, nq));
    }
    if !(spec.tol > 0.0) {
        return Err(WavesError::BadTolerance(spec.tol));
    }
    Ok((0..np * nq)
        .into_par_iter()
        .map(|idx| {
            let p = axis(spec.p_range, np, idx / nq);
            let q = axis(spec.q_range, nq, idx % nq);
            let class = classify(p, q, spec.tol).expect("tolerance checked");
            ScanRow {
                p,
                q,
                label: class.label,
                eigen_structure: class.eigen_structure,
                existence_flag: existence_flags_pq(p, q).summary(),
            }
        })
        .collect())
}
