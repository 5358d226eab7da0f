use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub p: f64,
    pub q: f64,
    /// `[sqrt(mu1), -sqrt(mu1), sqrt(mu2), -sqrt(mu2)]`
    #[serde(serialize_with = "ser_complex")]
    pub lambdas: [Complex64; 4],
    #[serde(serialize_with = "ser_complex")]
    pub mu: [Complex64; 2],
}

fn ser_complex<S: serde::Serializer, const N: usize>(v: &[Complex64; N], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(N))?;
    for z in v {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

impl Spectrum {
    pub fn residual(&self, lambda: Complex64) -> f64 {
        let l2 = lambda * lambda;
        (l2 * l2 - self.q * l2 + self.p).norm()
    }

    pub fn max_residual(&self) -> f64 {
        self.lambdas.iter().map(|&l| self.residual(l)).fold(0.0, f64::max)
    }

    pub fn residual_bound(&self) -> f64 {
        1e-10 * 1f64.max(self.p.abs()).max(self.q * self.q)
    }
}

pub fn characteristic_roots(p: f64, q: f64) -> Spectrum {
    let disc = q * q - 4.0 * p;
    let mu = if disc >= 0.0 {
        let s = disc.sqrt();
        let big = 0.5 * (q + s.copysign(q));
        let small = if big == 0.0 { 0.0 } else { p / big };
        [Complex64::new(big, 0.0), Complex64::new(small, 0.0)]
    } else {
        let im = 0.5 * (-disc).sqrt();
        [Complex64::new(0.5 * q, im), Complex64::new(0.5 * q, -im)]
    };
    let r = [mu[0].sqrt(), mu[1].sqrt()];
    Spectrum { p, q, lambdas: [r[0], -r[0], r[1], -r[1]], mu }
}
