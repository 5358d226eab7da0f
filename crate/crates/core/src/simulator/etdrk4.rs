use std::f64::consts::PI;

use num_complex::Complex64;

const CONTOUR_POINTS: usize = 64;

/// Per-mode ETDRK4 coefficients, evaluated by contour means so that small
/// `h L` does not cancel.
pub struct Etdrk4 {
    pub e: Vec<Complex64>,
    pub e2: Vec<Complex64>,
    pub q: Vec<Complex64>,
    pub f1: Vec<Complex64>,
    pub f2: Vec<Complex64>,
    pub f3: Vec<Complex64>,
}

impl Etdrk4 {
    pub fn new(symbol: &[Complex64], h: f64) -> Self {
        let roots: Vec<Complex64> = (0..CONTOUR_POINTS)
            .map(|j| Complex64::from_polar(1.0, 2.0 * PI * (j as f64 + 0.5) / CONTOUR_POINTS as f64))
            .collect();
        let n = symbol.len();
        let mut c = Etdrk4 {
            e: Vec::with_capacity(n),
            e2: Vec::with_capacity(n),
            q: Vec::with_capacity(n),
            f1: Vec::with_capacity(n),
            f2: Vec::with_capacity(n),
            f3: Vec::with_capacity(n),
        };
        for &l in symbol {
            let z = l * h;
            c.e.push(z.exp());
            c.e2.push((z * 0.5).exp());
            let mut acc = [Complex64::default(); 4];
            for r in &roots {
                let w = z + r;
                let ew = w.exp();
                let w3 = w * w * w;
                acc[0] += ((w * 0.5).exp() - 1.0) / w;
                acc[1] += (-4.0 - w + ew * (4.0 - 3.0 * w + w * w)) / w3;
                acc[2] += (2.0 + w + ew * (w - 2.0)) / w3;
                acc[3] += (-4.0 - 3.0 * w - w * w + ew * (4.0 - w)) / w3;
            }
            let s = h / CONTOUR_POINTS as f64;
            c.q.push(acc[0] * s);
            c.f1.push(acc[1] * s);
            c.f2.push(acc[2] * s);
            c.f3.push(acc[3] * s);
        }
        c
    }

    pub fn step(&self, v: &mut [Complex64], nonlinear: impl Fn(&[Complex64]) -> Vec<Complex64>) {
        let nv = nonlinear(v);
        let a: Vec<Complex64> = (0..v.len()).map(|i| self.e2[i] * v[i] + self.q[i] * nv[i]).collect();
        let na = nonlinear(&a);
        let b: Vec<Complex64> = (0..v.len()).map(|i| self.e2[i] * v[i] + self.q[i] * na[i]).collect();
        let nb = nonlinear(&b);
        let c: Vec<Complex64> =
            (0..v.len()).map(|i| self.e2[i] * a[i] + self.q[i] * (2.0 * nb[i] - nv[i])).collect();
        let nc = nonlinear(&c);
        for i in 0..v.len() {
            v[i] = self.e[i] * v[i] + nv[i] * self.f1[i] + 2.0 * (na[i] + nb[i]) * self.f2[i] + nc[i] * self.f3[i];
        }
    }
}
