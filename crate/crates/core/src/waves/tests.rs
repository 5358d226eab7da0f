use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::algebra::ratio;

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-12
}

fn contains_all(got: &[Complex64; 4], want: &[Complex64]) -> bool {
    let mut used = [false; 4];
    want.iter().all(|w| {
        if let Some(i) = (0..4).find(|&i| !used[i] && close(got[i], *w)) {
            used[i] = true;
            true
        } else {
            false
        }
    })
}

/// Root pattern counted independently of the classifier.
fn pattern_of(s: &Spectrum, tol: f64) -> EigenPattern {
    let scale = s.lambdas.iter().map(|l| l.norm()).fold(1.0, f64::max);
    let t = tol.sqrt() * scale;
    let mut pat = EigenPattern::default();
    let (mut real, mut imag, mut cplx) = (0, 0, 0);
    for l in &s.lambdas {
        if l.norm() <= t {
            pat.zero += 1;
        } else if l.im.abs() <= t {
            real += 1;
        } else if l.re.abs() <= t {
            imag += 1;
        } else {
            cplx += 1;
        }
    }
    pat.real_pairs = real / 2;
    pat.imaginary_pairs = imag / 2;
    pat.complex_quadruples = cplx / 4;
    pat
}

#[test]
fn to_pq_examples() {
    assert_eq!(to_pq(&WaveParams::new(1.0, 1.0, -2.0)).unwrap(), (1.0, 2.0));
    assert_eq!(to_pq(&WaveParams::new(2.0, 0.0, 1.0)).unwrap(), (0.0, -0.5));
    assert_eq!(to_pq(&WaveParams::new(-1.0, 1.0, 1.0)).unwrap(), (-1.0, 1.0));
    assert_eq!(to_pq(&WaveParams::new(0.0, 1.0, 1.0)), Err(WavesError::UndefinedMapping));
    let (p, q) = to_pq_exact(&ratio(3, 1), &ratio(1, 1), &ratio(1, 2)).unwrap();
    assert_eq!((p, q), (ratio(1, 3), ratio(-1, 6)));
}

#[test]
fn root_examples() {
    let s = characteristic_roots(0.0, 1.0);
    let c = |re, im| Complex64::new(re, im);
    assert!(contains_all(&s.lambdas, &[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]));
    let h = 0.5f64.sqrt();
    let s = characteristic_roots(1.0, 0.0);
    assert!(contains_all(&s.lambdas, &[c(h, h), c(h, -h), c(-h, h), c(-h, -h)]));
    let s = characteristic_roots(1.0, 2.0);
    assert!(contains_all(&s.lambdas, &[c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0)]));
}

#[test]
fn vieta() {
    for (p, q) in [(1.0, 3.0), (-2.0, 0.5), (4.0, -1.0), (0.25, 1.0)] {
        let s = characteristic_roots(p, q);
        let prod = s.lambdas.iter().product::<Complex64>();
        assert!((prod - p).norm() < 1e-12);
        assert!((s.lambdas[0].powi(2) + s.lambdas[2].powi(2) - q).norm() < 1e-12);
        assert!((s.mu[0] * s.mu[1] - p).norm() < 1e-12);
    }
}

#[test]
fn classify_examples() {
    let l = |p, q| classify(p, q, DEFAULT_TOL).unwrap();
    assert_eq!(l(-1.0, 0.0).label, Label::Region3);
    assert_eq!(l(-1.0, 0.0).eigen_structure, "±λ, ±iω");
    assert_eq!(l(1.0, 0.0).label, Label::Region1);
    assert_eq!(l(1.0, 0.0).fixed_point, "saddle focus");
    assert_eq!(l(0.0, 1.0).label, Label::C0);
    assert_eq!(l(0.0, 1.0).eigen_structure, "0, 0, ±λ");
    assert_eq!(l(1.0, 3.0).label, Label::Region2);
    assert_eq!(l(1.0, -3.0).label, Label::Region4);
    assert_eq!(l(0.0, -1.0).label, Label::C1);
    assert_eq!(l(1.0, 2.0).label, Label::C3);
    assert_eq!(l(1.0, -2.0).label, Label::C2);
    assert_eq!(l(0.0, 0.0).label, Label::Origin);
    assert!(classify(1.0, 1.0, 0.0).is_err());
}

#[test]
fn exact_mode_matches_float_on_rationals() {
    for a in -6..=6 {
        for b in -6..=6 {
            let (p, q) = (ratio(a, 4), ratio(b, 2));
            let exact = classify_exact(&p, &q).label;
            let float = classify(a as f64 / 4.0, b as f64 / 2.0, DEFAULT_TOL).unwrap().label;
            assert_eq!(exact, float, "p={p} q={q}");
        }
    }
    let tiny = BigRational::new(1.into(), num_bigint::BigInt::from(10).pow(30));
    assert_eq!(classify_exact(&tiny, &ratio(1, 1)).label, Label::Region2);
}

#[test]
fn existence_examples() {
    let f = |b, g, c| existence_flags(&WaveParams::new(b, g, c));
    assert!(f(1.0, 1.0, 0.0).existence_known);
    assert!(f(-1.0, 1.0, 0.0).nonexistence_known);
    let both = f(1.0, 1.0, 3.0);
    assert!(!both.existence_known && !both.nonexistence_known);
    assert_eq!(existence_flags_pq(-1.0, 0.0).summary(), "none");
    assert_eq!(existence_flags_pq(1.0, 0.0).summary(), "exists");
    assert_eq!(existence_flags_pq(1.0, -3.0).summary(), "unknown");
}

#[test]
fn soliton_examples() {
    let s = KdvSoliton::new(-1.0, 0.5).unwrap();
    assert_eq!((s.amplitude, s.speed), (1.5, 1.0));
    assert!((s.profile(1.0) - 1.5 / (0.5f64).cosh().powi(2)).abs() < 1e-15);
    let s = KdvSoliton::new(1.0, 1.0).unwrap();
    assert_eq!((s.amplitude, s.speed), (-6.0, -4.0));
    assert!(s.max_residual(s.sample_grid(401)) <= s.residual_bound());
    let t = KdvSoliton::new(1.0, 3.0).unwrap();
    assert_eq!((t.amplitude / s.amplitude, t.speed / s.speed), (9.0, 9.0));
    assert!(KdvSoliton::new(1.0, 0.0).is_err());
}

#[test]
fn wrong_speed_leaves_residual() {
    let mut s = KdvSoliton::new(1.0, 1.0).unwrap();
    s.speed *= 1.01;
    assert!(s.max_residual(s.sample_grid(401)) > 1e-3);
}

#[test]
fn scan_examples() {
    let spec = ScanSpec { p_range: (-1.0, 1.0), q_range: (-1.0, 1.0), grid: (3, 3), tol: DEFAULT_TOL };
    let rows = scan(&spec).unwrap();
    assert_eq!(rows.len(), 9);
    let at = |p: f64, q: f64| rows.iter().find(|r| r.p == p && r.q == q).unwrap().label;
    assert_eq!(at(-1.0, -1.0), Label::Region3);
    assert_eq!(at(1.0, 1.0), Label::Region1);
    assert_eq!(at(-1.0, 1.0), Label::Region3);
    assert_eq!(at(1.0, -1.0), Label::Region1);
    assert_eq!((rows[1].p, rows[1].q), (-1.0, 0.0));

    let neg = ScanSpec { p_range: (-3.0, -0.5), q_range: (-2.0, 2.0), grid: (7, 9), tol: DEFAULT_TOL };
    assert!(scan(&neg).unwrap().iter().all(|r| r.label == Label::Region3));
    assert!(scan(&ScanSpec { grid: (1, 5), ..spec }).is_err());
    assert_eq!(scan(&spec).unwrap(), rows);
}

/// Durand-Kerner iteration on the monic quartic, independent of the
/// closed-form mu route.
pub(crate) fn brute_force_roots(p: f64, q: f64) -> [Complex64; 4] {
    let coeffs = [1.0, 0.0, -q, 0.0, p];
    let poly = |z: Complex64| coeffs.iter().fold(Complex64::default(), |acc, &c| acc * z + c);
    let radius = 1.0 + q.abs().max(p.abs());
    let seed = Complex64::new(0.4, 0.9);
    let mut z: [Complex64; 4] = std::array::from_fn(|k| seed.powi(k as i32) * radius);
    for _ in 0..2000 {
        let prev = z;
        for i in 0..4 {
            let denom = (0..4).filter(|&j| j != i).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            if denom.norm() > 0.0 {
                z[i] -= poly(z[i]) / denom;
            }
        }
        if z.iter().zip(&prev).all(|(a, b)| (a - b).norm() <= 1e-15 * radius) {
            break;
        }
    }
    z
}

#[test]
fn patterns_agree_with_brute_force_roots() {
    for i in 0..=40 {
        for j in 0..=40 {
            let (p, q) = (-2.0 + 0.1 * i as f64, -2.0 + 0.1 * j as f64);
            let spec = Spectrum { p, q, lambdas: brute_force_roots(p, q), mu: [Complex64::default(); 2] };
            let label = classify(p, q, DEFAULT_TOL).unwrap().label;
            assert_eq!(pattern_of(&spec, DEFAULT_TOL), label.pattern(), "p={p} q={q} {label}");
            assert_eq!(pattern_of(&characteristic_roots(p, q), DEFAULT_TOL), label.pattern());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn residual_bound(p in -1e3f64..1e3, q in -1e3f64..1e3) {
        let s = characteristic_roots(p, q);
        prop_assert!(s.max_residual() <= s.residual_bound(), "{}", s.max_residual());
    }

    #[test]
    fn label_matches_spectrum(p in -10f64..10.0, q in -10f64..10.0) {
        let label = classify(p, q, DEFAULT_TOL).unwrap().label;
        prop_assert_eq!(pattern_of(&characteristic_roots(p, q), DEFAULT_TOL), label.pattern());
    }

    #[test]
    fn parabola_is_c3(q in 1e-3f64..1e3) {
        prop_assert_eq!(classify(q * q / 4.0, q, DEFAULT_TOL).unwrap().label, Label::C3);
        prop_assert_eq!(classify(q * q / 4.0, -q, DEFAULT_TOL).unwrap().label, Label::C2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn soliton_residual(beta in prop_oneof![-5f64..-0.1, 0.1f64..5.0], k in 0.1f64..3.0) {
        let s = KdvSoliton::new(beta, k).unwrap();
        prop_assert!(s.max_residual(s.sample_grid(201)) <= s.residual_bound());
    }
}
