//! Exact arithmetic kernel: multivariate polynomials over the rationals,
//! canonical rational functions, symmetrization over `xi` variables and
//! Laurent expansion at `eta -> oo`.
//!
//! No floating point is used anywhere in this module except for the
//! convenience evaluators (`eval_complex`).

mod gcd;
mod laurent;
mod monomial;
pub(crate) mod poly;
mod ratfunc;
mod var;

pub use gcd::gcd;
pub use laurent::{laurent_expand, LaurentSeries};
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use ratfunc::{is_polynomial_in_xi, normalize, RationalFunction};
pub use var::Var;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("malformed rational function: zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("symmetrization is only defined over xi variables, got `{0}`")]
    NonXiSymmetrization(String),
    #[error("empty series: requested depth {depth} is below the leading order {start}")]
    EmptySeries { start: i64, depth: i64 },
}

/// `p/q` as an exact rational.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

impl serde::Serialize for RationalFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
