use num_rational::BigRational;
use serde::Serialize;

use super::{sign_of, WavesError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Label {
    Region1,
    Region2,
    Region3,
    Region4,
    C0,
    C1,
    C2,
    C3,
    Origin,
}

/// Multiplicity counts of the four roots: zeros, nonzero real `+-` pairs,
/// nonzero imaginary `+-` pairs and complex quadruples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct EigenPattern {
    pub zero: u8,
    pub real_pairs: u8,
    pub imaginary_pairs: u8,
    pub complex_quadruples: u8,
}

impl EigenPattern {
    const fn new(zero: u8, real_pairs: u8, imaginary_pairs: u8, complex_quadruples: u8) -> Self {
        EigenPattern { zero, real_pairs, imaginary_pairs, complex_quadruples }
    }
}

impl Label {
    pub const ALL: [Label; 9] = [
        Label::Region1,
        Label::Region2,
        Label::Region3,
        Label::Region4,
        Label::C0,
        Label::C1,
        Label::C2,
        Label::C3,
        Label::Origin,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Region1 => "Region1",
            Label::Region2 => "Region2",
            Label::Region3 => "Region3",
            Label::Region4 => "Region4",
            Label::C0 => "C0",
            Label::C1 => "C1",
            Label::C2 => "C2",
            Label::C3 => "C3",
            Label::Origin => "Origin",
        }
    }

    pub fn eigen_structure(self) -> &'static str {
        match self {
            Label::Region1 => "±λ ± iω",
            Label::Region2 => "±λ₁, ±λ₂",
            Label::Region3 => "±λ, ±iω",
            Label::Region4 => "±iω₁, ±iω₂",
            Label::C0 => "0, 0, ±λ",
            Label::C1 => "0, 0, ±iω",
            Label::C2 => "±iω, ±iω",
            Label::C3 => "±λ, ±λ",
            Label::Origin => "0, 0, 0, 0",
        }
    }

    pub fn pattern(self) -> EigenPattern {
        match self {
            Label::Region1 => EigenPattern::new(0, 0, 0, 1),
            Label::Region2 | Label::C3 => EigenPattern::new(0, 2, 0, 0),
            Label::Region3 => EigenPattern::new(0, 1, 1, 0),
            Label::Region4 | Label::C2 => EigenPattern::new(0, 0, 2, 0),
            Label::C0 => EigenPattern::new(2, 1, 0, 0),
            Label::C1 => EigenPattern::new(2, 0, 1, 0),
            Label::Origin => EigenPattern::new(4, 0, 0, 0),
        }
    }

    pub fn fixed_point(self) -> &'static str {
        match self {
            Label::Region1 => "saddle focus",
            Label::Region2 => "hyperbolic saddle",
            Label::Region3 => "saddle-center",
            Label::Region4 => "focus",
            Label::C0 | Label::C1 | Label::Origin => "non-hyperbolic",
            Label::C2 => "double imaginary pair",
            Label::C3 => "hyperbolic, double real pair",
        }
    }

    pub fn annotation(self) -> &'static str {
        match self {
            Label::Region1 => {
                "one symmetric homoclinic orbit implies infinitely many; an infinite family of \
                 symmetric N-pulses (N-peaked solitary waves) is expected for every N > 1"
            }
            Label::Region2 => {
                "no a priori multiplicity; a symmetric homoclinic orbit may exist depending on the \
                 nonlinearity (inconclusive, not computed)"
            }
            Label::Region3 => {
                "there are no soliton solutions decaying to zero together with their derivatives"
            }
            Label::Region4 => "no homoclinic orbits are known in general; complex dynamics may occur",
            Label::C0 => {
                "on the mu > 0 side of C0 the center-manifold normal form has a unique symmetric \
                 homoclinic solution X1 = sech^2(t/2), which persists (mu is qualitative only)"
            }
            Label::C1 => "on the Region3 side of C1 the normal form has a sech^2 homoclinic orbit",
            Label::C2 => {
                "envelope homoclinic solutions sech(kt)exp(i*alpha*theta) are possible in the \
                 normal form; persistence must be checked case by case"
            }
            Label::C3 => {
                "no small-amplitude bifurcation; crossing C3 creates infinitely many homoclinic orbits"
            }
            Label::Origin => "all four eigenvalues vanish",
        }
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionClass {
    pub label: Label,
    pub eigen_structure: &'static str,
    pub fixed_point: &'static str,
    pub annotation: &'static str,
}

impl From<Label> for RegionClass {
    fn from(label: Label) -> Self {
        RegionClass {
            label,
            eigen_structure: label.eigen_structure(),
            fixed_point: label.fixed_point(),
            annotation: label.annotation(),
        }
    }
}

pub fn classify(p: f64, q: f64, tol: f64) -> Result<RegionClass, WavesError> {
    if !(tol > 0.0) {
        return Err(WavesError::BadTolerance(tol));
    }
    let label = if p.abs() <= tol {
        if q > tol {
            Label::C0
        } else if q < -tol {
            Label::C1
        } else {
            Label::Origin
        }
    } else if q.abs() > tol && (q * q - 4.0 * p).abs() <= tol * q * q {
        if q > 0.0 {
            Label::C3
        } else {
            Label::C2
        }
    } else if p < 0.0 {
        Label::Region3
    } else if q * q < 4.0 * p {
        Label::Region1
    } else if q > 0.0 {
        Label::Region2
    } else {
        Label::Region4
    };
    Ok(label.into())
}

/// Tolerance-free classification of a rational point.
pub fn classify_exact(p: &BigRational, q: &BigRational) -> RegionClass {
    let disc = q * q - p * BigRational::from_integer(4.into());
    let label = match (sign_of(p), sign_of(q), sign_of(&disc)) {
        (0, 1, _) => Label::C0,
        (0, -1, _) => Label::C1,
        (0, _, _) => Label::Origin,
        (_, 1, 0) => Label::C3,
        (_, _, 0) => Label::C2,
        (-1, _, _) => Label::Region3,
        (_, _, -1) => Label::Region1,
        (_, 1, _) => Label::Region2,
        _ => Label::Region4,
    };
    label.into()
}
