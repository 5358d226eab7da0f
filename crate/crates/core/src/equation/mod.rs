//! Equation DSL, degree grading and the symbolic representation
//! `omega(xi1)`, `a_k(xi1, ..., xi_{k+1})`.
//!
//! A differential monomial `u^{n_0} u_x^{n_1} ... ` of degree `m` maps to the
//! symmetrized power product of `xi1 .. xi_m`; each `D` multiplies by the sum
//! of the active `xi`s and each `Dinv` divides by it.

mod monomial;
pub mod parser;
mod symbols;

pub use monomial::{parse, render, DiffMonomial};
pub use symbols::{grade, to_symbols, EvolutionEquation, GradedEquation};

pub const DEFAULT_MAX_DEGREE: usize = 3;

/// Ostrovsky equation with symbolic `beta`, `gamma`.
pub const OSTROVSKY: &str = "u_t = Dinv(beta*D4(u) + gamma*u) - 2*u*D1(u)";
/// KdV, the `gamma = 0` member of the same family.
pub const KDV: &str = "u_t = beta*D3(u) - 2*u*D1(u)";

/// Equation text for a built-in alias.
pub fn builtin(name: &str) -> Option<&'static str> {
    match name {
        "ostrovsky" => Some(OSTROVSKY),
        "kdv" => Some(KDV),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquationError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("u_t may only appear on the left-hand side (found at {line}:{column})")]
    TimeDerivativeOnRhs { line: usize, column: usize },
    #[error("non-polynomial construct at {line}:{column}: {message}")]
    NonPolynomial {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported construct at {line}:{column}: {message}")]
    Unsupported {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("equation has no linear part; the dispersion symbol omega is required")]
    MissingLinearPart,
    #[error("equation has degree {degree}, above the configured maximum {max}")]
    DegreeTooHigh { degree: usize, max: usize },
    #[error("substituting for `{0}` makes a symbol singular")]
    DegenerateSpecialization(String),
}

/// Parse, grade and convert to symbols in one step.
pub fn parse_equation(text: &str, max_degree: usize) -> Result<EvolutionEquation, EquationError> {
    let monomials = parse(text)?;
    to_symbols(&grade(&monomials)?, max_degree)
}
