//! Coefficients of the formal recursion operator
//! `Lambda = eta + u*phi_1(xi1, eta) + u^2*phi_2(xi1, xi2, eta) + ...`
//! and the locality test on their large-`eta` expansions.
//!
//! A non-local coefficient (a Laurent coefficient that is not a symmetric
//! polynomial in the `xi`s) proves the equation is not integrable. Passing
//! every computed order is only a necessary condition.

mod report;

pub use report::{
    locality_test, verdict, CoefficientCheck, LocalityReport, Obstruction, OrderReport, Verdict,
    VerdictOptions, NECESSARY_CONDITION_DISCLAIMER,
};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{laurent_expand, AlgebraError, LaurentSeries, Polynomial, RationalFunction, Var};
use crate::equation::EvolutionEquation;

pub const DEFAULT_MAX_ORDER: usize = 2;
pub const DEFAULT_DEPTH: i64 = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecursionError {
    #[error("degenerate dispersion: omega(sum) - sum(omega) vanishes identically for {args} arguments")]
    DegenerateDispersion { args: usize },
    #[error("phi_{m} requires phi_1 .. phi_{}; missing phi_{missing}", m - 1)]
    MissingPrior { m: usize, missing: usize },
    #[error("invalid order {0}; orders start at 1")]
    InvalidOrder(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A coefficient `phi_m(xi1, ..., xi_m, eta)` with its expansion at
/// `eta -> oo`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiCoefficient {
    pub order: usize,
    pub value: RationalFunction,
    pub expansion: LaurentSeries,
}

impl PhiCoefficient {
    pub fn new(order: usize, value: RationalFunction, depth: i64) -> Result<Self, RecursionError> {
        let expansion = match laurent_expand(&value, depth) {
            Ok(s) => s,
            // Leading order deeper than requested: nothing to report yet.
            Err(AlgebraError::EmptySeries { .. }) => laurent_expand(&RationalFunction::zero(), depth.max(0))?,
            Err(e) => return Err(e.into()),
        };
        Ok(PhiCoefficient {
            order,
            value,
            expansion,
        })
    }
}

/// Substitutes `xi_j -> xi_args[j-1]` and `eta -> eta_arg` simultaneously.
fn apply(f: &RationalFunction, xi_args: &[Polynomial], eta_arg: Option<&Polynomial>) -> Result<RationalFunction, AlgebraError> {
    f.substitute(&|v| match v {
        Var::Xi(j) => xi_args.get(*j as usize - 1).cloned(),
        Var::Eta => eta_arg.cloned(),
        _ => None,
    })
}

fn xi(j: usize) -> Polynomial {
    Polynomial::var(Var::xi(j as u32))
}

fn eta() -> Polynomial {
    Polynomial::var(Var::Eta)
}

/// `xi_from + ... + xi_to` (1-based, inclusive; empty sum is zero).
fn xi_sum(from: usize, to: usize) -> Polynomial {
    (from..=to).fold(Polynomial::zero(), |acc, j| &acc + &xi(j))
}

/// `N^omega(args) = 1 / (omega(sum args) - sum omega(arg))`.
pub fn n_omega(omega: &RationalFunction, args: &[Polynomial]) -> Result<RationalFunction, RecursionError> {
    assert!(!args.is_empty(), "N^omega needs at least one argument");
    let at = |p: &Polynomial| apply(omega, std::slice::from_ref(p), None);
    let total = args.iter().fold(Polynomial::zero(), |acc, p| &acc + p);
    let mut diff = at(&total)?;
    for p in args {
        diff = &diff - &at(p)?;
    }
    if diff.is_zero() {
        return Err(RecursionError::DegenerateDispersion { args: args.len() });
    }
    Ok(diff.recip()?)
}

/// `phi_1(xi1, eta) = N^omega(xi1, eta) * xi1 * a_1(xi1, eta)`.
pub fn phi_1(eq: &EvolutionEquation, depth: i64) -> Result<PhiCoefficient, RecursionError> {
    let n = n_omega(&eq.omega, &[xi(1), eta()])?;
    let a1 = apply(&eq.a_k(1), &[xi(1), eta()], None)?;
    let value = &(&n * &RationalFunction::from(xi(1))) * &a1;
    PhiCoefficient::new(1, value, depth)
}

/// `phi_m` for `m >= 2` from `phi_1 .. phi_{m-1}`:
///
/// ```text
/// phi_m = N^omega(xi_1..xi_m, eta) * { (xi_1+..+xi_m) a_m(xi_1..xi_m, eta)
///   + sum_{n=1}^{m-1} < n/(m-n+1) phi_n(xi_1..xi_{n-1}, xi_n+..+xi_m, eta) a_{m-n}(xi_n..xi_m)
///                      + phi_n(xi_1..xi_n, eta+xi_{n+1}+..+xi_m) a_{m-n}(xi_{n+1}..xi_m, eta)
///                      - phi_n(xi_1..xi_n, eta) a_{m-n}(xi_{n+1}..xi_m, eta+xi_1+..+xi_n) > }
/// ```
///
/// with `< >` the average over permutations of `xi_1..xi_m` and `a_k = 0`
/// beyond the equation's degree.
pub fn phi_m(eq: &EvolutionEquation, m: usize, prior: &[PhiCoefficient], depth: i64) -> Result<PhiCoefficient, RecursionError> {
    if m == 0 {
        return Err(RecursionError::InvalidOrder(0));
    }
    if m == 1 {
        return phi_1(eq, depth);
    }
    let phi = |n: usize| -> Result<&RationalFunction, RecursionError> {
        prior
            .iter()
            .find(|p| p.order == n)
            .map(|p| &p.value)
            .ok_or(RecursionError::MissingPrior { m, missing: n })
    };
    for n in 1..m {
        phi(n)?;
    }
    let xis: Vec<Polynomial> = (1..=m).map(xi).collect();
    let n_om = n_omega(&eq.omega, &[xis.clone(), vec![eta()]].concat())?;

    let mut head = RationalFunction::zero();
    let am = eq.a_k(m);
    if !am.is_zero() {
        let args = [xis.clone(), vec![eta()]].concat();
        head = &RationalFunction::from(xi_sum(1, m)) * &apply(&am, &args, None)?;
    }

    let mut inner = RationalFunction::zero();
    for n in 1..m {
        let a = eq.a_k(m - n);
        if a.is_zero() {
            continue;
        }
        let phi_n = phi(n)?;
        let weight = RationalFunction::constant(BigRational::new(
            BigInt::from(n as i64),
            BigInt::from((m - n + 1) as i64),
        ));

        // n/(m-n+1) phi_n(xi_1..xi_{n-1}, xi_n+..+xi_m, eta) a_{m-n}(xi_n..xi_m)
        let mut phi_args: Vec<Polynomial> = (1..n).map(xi).collect();
        phi_args.push(xi_sum(n, m));
        let t1 = &weight
            * &(&apply(phi_n, &phi_args, None)? * &apply(&a, &(n..=m).map(xi).collect::<Vec<_>>(), None)?);

        // phi_n(xi_1..xi_n, eta + xi_{n+1}+..+xi_m) a_{m-n}(xi_{n+1}..xi_m, eta)
        let first: Vec<Polynomial> = (1..=n).map(xi).collect();
        let shifted_eta = &eta() + &xi_sum(n + 1, m);
        let mut a_args: Vec<Polynomial> = (n + 1..=m).map(xi).collect();
        a_args.push(eta());
        let t2 = &apply(phi_n, &first, Some(&shifted_eta))? * &apply(&a, &a_args, None)?;

        // phi_n(xi_1..xi_n, eta) a_{m-n}(xi_{n+1}..xi_m, eta + xi_1+..+xi_n)
        let mut a_args: Vec<Polynomial> = (n + 1..=m).map(xi).collect();
        a_args.push(&eta() + &xi_sum(1, n));
        let t3 = &apply(phi_n, &first, None)? * &apply(&a, &a_args, None)?;

        inner = &inner + &(&(&t1 + &t2) - &t3);
    }
    let inner = inner.symmetrize(&Var::xis(m as u32))?;
    let value = &n_om * &(&head + &inner);
    PhiCoefficient::new(m, value, depth)
}

/// `phi_1 .. phi_max_order`.
pub fn phi_sequence(eq: &EvolutionEquation, max_order: usize, depth: i64) -> Result<Vec<PhiCoefficient>, RecursionError> {
    let mut out: Vec<PhiCoefficient> = Vec::with_capacity(max_order);
    for m in 1..=max_order {
        let next = phi_m(eq, m, &out, depth)?;
        out.push(next);
    }
    Ok(out)
}
