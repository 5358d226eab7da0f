use std::collections::BTreeMap;

use num_rational::BigRational;

use super::{DiffMonomial, EquationError};
use crate::algebra::{Polynomial, RationalFunction, Var};

/// Monomials partitioned by degree in `u`: `F_1 + F_2 + ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedEquation {
    parts: BTreeMap<usize, Vec<DiffMonomial>>,
}

impl GradedEquation {
    pub fn part(&self, degree: usize) -> &[DiffMonomial] {
        self.parts.get(&degree).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.parts.keys().copied()
    }

    pub fn max_degree(&self) -> usize {
        self.parts.keys().max().copied().unwrap_or(0)
    }

    /// All monomials again, in degree order.
    pub fn flatten(&self) -> Vec<DiffMonomial> {
        self.parts.values().flatten().cloned().collect()
    }
}

pub fn grade(monomials: &[DiffMonomial]) -> Result<GradedEquation, EquationError> {
    let mut parts: BTreeMap<usize, Vec<DiffMonomial>> = BTreeMap::new();
    for m in monomials {
        parts.entry(m.degree()).or_default().push(m.clone());
    }
    if !parts.contains_key(&1) {
        return Err(EquationError::MissingLinearPart);
    }
    Ok(GradedEquation { parts })
}

/// Symbolic form `u_t = u*omega(xi1) + (u^2/2)*a_1(xi1, xi2) + (u^3/3)*a_2 + ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvolutionEquation {
    /// Linear symbol in `xi1`.
    pub omega: RationalFunction,
    /// `a[k - 1]` is `a_k`, symmetric in `xi1 .. xi_{k+1}`.
    pub a: Vec<RationalFunction>,
    /// Highest degree present in the source equation.
    pub max_degree: usize,
}

impl EvolutionEquation {
    /// `a_k`, identically zero beyond the equation's degree.
    pub fn a_k(&self, k: usize) -> RationalFunction {
        assert!(k >= 1, "a_k is defined for k >= 1");
        self.a.get(k - 1).cloned().unwrap_or_else(RationalFunction::zero)
    }

    /// Substitutes a value for a parameter in every symbol.
    pub fn specialize(&self, param: &Var, value: &BigRational) -> Result<Self, EquationError> {
        let sub = |f: &RationalFunction| {
            f.substitute(&|v| (v == param).then(|| Polynomial::constant(value.clone())))
                .map_err(|_| EquationError::DegenerateSpecialization(param.to_string()))
        };
        let omega = sub(&self.omega)?;
        let a = self.a.iter().map(sub).collect::<Result<Vec<_>, _>>()?;
        let max_degree = a
            .iter()
            .rposition(|ak| !ak.is_zero())
            .map(|i| i + 2)
            .unwrap_or(1);
        Ok(EvolutionEquation {
            omega,
            a: a[..max_degree - 1].to_vec(),
            max_degree,
        })
    }
}

/// `c * <xi_1^{q_1} ... xi_m^{q_m}> / (xi_1 + ... + xi_m)^inv` before
/// symmetrization.
fn monomial_symbol(m: &DiffMonomial) -> RationalFunction {
    let xis = Var::xis(m.degree() as u32);
    let mut num = Polynomial::one();
    for (q, x) in m.factors.iter().zip(&xis) {
        num = &num * &Polynomial::var(x.clone()).pow(*q);
    }
    let den = Polynomial::sum_of(&xis).pow(m.inverse_d_count);
    &m.coefficient * &RationalFunction::new(num, den).expect("sum of xi is nonzero")
}

pub fn to_symbols(graded: &GradedEquation, max_degree: usize) -> Result<EvolutionEquation, EquationError> {
    let top = graded.max_degree();
    if top > max_degree {
        return Err(EquationError::DegreeTooHigh {
            degree: top,
            max: max_degree,
        });
    }
    let linear = graded.part(1);
    if linear.is_empty() {
        return Err(EquationError::MissingLinearPart);
    }
    let omega = linear
        .iter()
        .map(monomial_symbol)
        .fold(RationalFunction::zero(), |acc, s| &acc + &s);
    if omega.is_zero() {
        return Err(EquationError::MissingLinearPart);
    }
    let mut a = Vec::new();
    for m in 2..=top {
        let xis = Var::xis(m as u32);
        let raw = graded
            .part(m)
            .iter()
            .map(monomial_symbol)
            .fold(RationalFunction::zero(), |acc, s| &acc + &s);
        let sym = raw.symmetrize(&xis).expect("xi variables only");
        a.push(sym.scale(&BigRational::from_integer((m as i64).into())));
    }
    Ok(EvolutionEquation {
        omega,
        a,
        max_degree: top,
    })
}
