use serde::Serialize;

use super::{phi_m, PhiCoefficient, RecursionError, DEFAULT_DEPTH, DEFAULT_MAX_ORDER};
use crate::algebra::{RationalFunction, Var};
use crate::equation::EvolutionEquation;

pub const NECESSARY_CONDITION_DISCLAIMER: &str = "Locality of every formal recursion operator coefficient is a necessary \
condition for integrability. An obstruction proves the equation is not integrable; passing all computed orders \
does not prove integrability.";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientCheck {
    pub n: i64,
    pub coefficient: RationalFunction,
    pub is_polynomial: bool,
    pub is_symmetric: bool,
    pub is_local: bool,
}

/// Locality verdicts for the expansion of one `phi_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderReport {
    pub m: usize,
    pub value: RationalFunction,
    pub expansion: Vec<CoefficientCheck>,
}

impl OrderReport {
    pub fn first_failure(&self) -> Option<&CoefficientCheck> {
        self.expansion.iter().find(|c| !c.is_local)
    }

    pub fn coefficient(&self, n: i64) -> Option<&RationalFunction> {
        self.expansion.iter().find(|c| c.n == n).map(|c| &c.coefficient)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub m: usize,
    pub n: i64,
    pub coefficient: RationalFunction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    NoObstructionUpToDepth,
    ObstructionFound,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NoObstructionUpToDepth => "no-obstruction-up-to-depth",
            Verdict::ObstructionFound => "obstruction-found",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalityReport {
    pub orders: Vec<OrderReport>,
    pub first_obstruction: Option<Obstruction>,
    pub verdict: Verdict,
    pub max_order: usize,
    pub depth: i64,
}

impl LocalityReport {
    pub fn order(&self, m: usize) -> Option<&OrderReport> {
        self.orders.iter().find(|o| o.m == m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerdictOptions {
    pub max_order: usize,
    pub depth: i64,
    /// Compute every requested order even after an obstruction.
    pub exhaustive: bool,
}

impl Default for VerdictOptions {
    fn default() -> Self {
        VerdictOptions {
            max_order: DEFAULT_MAX_ORDER,
            depth: DEFAULT_DEPTH,
            exhaustive: false,
        }
    }
}

/// Checks each Laurent coefficient of `phi` up to `depth` for being a
/// symmetric polynomial in `xi_1 .. xi_m`.
pub fn locality_test(phi: &PhiCoefficient, depth: i64) -> OrderReport {
    let xis = Var::xis(phi.order as u32);
    let expansion = phi
        .expansion
        .iter()
        .filter(|(n, _)| *n <= depth)
        .map(|(n, c)| {
            let is_polynomial = c.is_polynomial_in_xi();
            let is_symmetric = c.is_symmetric(&xis);
            CoefficientCheck {
                n,
                coefficient: c.clone(),
                is_polynomial,
                is_symmetric,
                is_local: is_polynomial && is_symmetric,
            }
        })
        .collect();
    OrderReport {
        m: phi.order,
        value: phi.value.clone(),
        expansion,
    }
}

/// Runs `phi_1 .. phi_max_order` with locality tests, stopping after the
/// first order that carries an obstruction unless `exhaustive` is set.
pub fn verdict(eq: &EvolutionEquation, opts: VerdictOptions) -> Result<LocalityReport, RecursionError> {
    if opts.max_order == 0 {
        return Err(RecursionError::InvalidOrder(0));
    }
    let mut phis: Vec<PhiCoefficient> = Vec::new();
    let mut orders = Vec::new();
    let mut first_obstruction = None;
    for m in 1..=opts.max_order {
        let phi = phi_m(eq, m, &phis, opts.depth)?;
        let report = locality_test(&phi, opts.depth);
        if first_obstruction.is_none() {
            first_obstruction = report.first_failure().map(|c| Obstruction {
                m,
                n: c.n,
                coefficient: c.coefficient.clone(),
            });
        }
        orders.push(report);
        phis.push(phi);
        if first_obstruction.is_some() && !opts.exhaustive {
            break;
        }
    }
    let verdict = if first_obstruction.is_some() {
        Verdict::ObstructionFound
    } else {
        Verdict::NoObstructionUpToDepth
    };
    Ok(LocalityReport {
        orders,
        first_obstruction,
        verdict,
        max_order: opts.max_order,
        depth: opts.depth,
    })
}
