use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Signed};

use super::parser::{parse_rhs, Expr, ExprKind, Pos};
use super::EquationError;
use crate::algebra::poly::fmt_rational;
use crate::algebra::{Polynomial, RationalFunction, Var};

/// `c * D^{q_1}u * ... * D^{q_m}u`, optionally wrapped in `inverse_d_count`
/// applications of the inverse derivative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffMonomial {
    /// Rational function in the parameters only.
    pub coefficient: RationalFunction,
    /// Derivative orders of the `u` factors, ascending.
    pub factors: Vec<u32>,
    pub inverse_d_count: u32,
}

impl DiffMonomial {
    pub fn degree(&self) -> usize {
        self.factors.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Key {
    degree: usize,
    factors: Vec<u32>,
    inverse_d: u32,
}

/// Sum of differential monomials with like terms combined.
#[derive(Clone, Debug, Default, PartialEq)]
struct DiffSum(BTreeMap<Key, RationalFunction>);

impl DiffSum {
    fn constant(c: RationalFunction) -> Self {
        let mut s = DiffSum::default();
        s.insert(
            Key {
                degree: 0,
                factors: vec![],
                inverse_d: 0,
            },
            c,
        );
        s
    }

    fn u() -> Self {
        let mut s = DiffSum::default();
        s.insert(
            Key {
                degree: 1,
                factors: vec![0],
                inverse_d: 0,
            },
            RationalFunction::one(),
        );
        s
    }

    fn insert(&mut self, k: Key, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(k).or_insert_with(RationalFunction::zero);
        *entry = &*entry + &c;
        self.0.retain(|_, v| !v.is_zero());
    }

    fn add(mut self, other: DiffSum) -> Self {
        for (k, c) in other.0 {
            self.insert(k, c);
        }
        self
    }

    fn neg(self) -> Self {
        DiffSum(self.0.into_iter().map(|(k, c)| (k, -c)).collect())
    }

    fn has_u(&self) -> bool {
        self.0.keys().any(|k| k.degree > 0)
    }

    fn mul(&self, other: &DiffSum, pos: Pos) -> Result<Self, EquationError> {
        let mut out = DiffSum::default();
        for (ka, ca) in &self.0 {
            for (kb, cb) in &other.0 {
                if (ka.inverse_d > 0 && kb.degree > 0) || (kb.inverse_d > 0 && ka.degree > 0) {
                    return Err(EquationError::Unsupported {
                        line: pos.line,
                        column: pos.column,
                        message: "Dinv(...) multiplied by a u-dependent factor is nonlocal".into(),
                    });
                }
                let mut factors = ka.factors.clone();
                factors.extend(&kb.factors);
                factors.sort_unstable();
                out.insert(
                    Key {
                        degree: factors.len(),
                        factors,
                        inverse_d: ka.inverse_d + kb.inverse_d,
                    },
                    ca * cb,
                );
            }
        }
        Ok(out)
    }

    fn derivative(&self) -> Self {
        let mut out = DiffSum::default();
        for (k, c) in &self.0 {
            if k.inverse_d > 0 {
                out.insert(
                    Key {
                        inverse_d: k.inverse_d - 1,
                        ..k.clone()
                    },
                    c.clone(),
                );
                continue;
            }
            // Leibniz rule over the u factors.
            for i in 0..k.factors.len() {
                let mut factors = k.factors.clone();
                factors[i] += 1;
                factors.sort_unstable();
                out.insert(
                    Key {
                        degree: k.degree,
                        factors,
                        inverse_d: 0,
                    },
                    c.clone(),
                );
            }
        }
        out
    }

    fn inverse_derivative(&self, pos: Pos) -> Result<Self, EquationError> {
        let mut out = DiffSum::default();
        for (k, c) in &self.0 {
            if k.degree == 0 {
                return Err(EquationError::Unsupported {
                    line: pos.line,
                    column: pos.column,
                    message: "Dinv of a u-independent term is not translation invariant".into(),
                });
            }
            out.insert(
                Key {
                    inverse_d: k.inverse_d + 1,
                    ..k.clone()
                },
                c.clone(),
            );
        }
        Ok(out)
    }
}

fn eval(e: &Expr) -> Result<DiffSum, EquationError> {
    Ok(match &e.kind {
        ExprKind::Number(n) => DiffSum::constant(RationalFunction::constant(n.clone())),
        ExprKind::Param(name) => DiffSum::constant(RationalFunction::var(Var::param(name))),
        ExprKind::U => DiffSum::u(),
        ExprKind::Deriv(k, inner) => {
            let mut s = eval(inner)?;
            for _ in 0..*k {
                s = s.derivative();
            }
            s
        }
        ExprKind::Dinv(inner) => eval(inner)?.inverse_derivative(e.pos)?,
        ExprKind::Neg(inner) => eval(inner)?.neg(),
        ExprKind::Add(a, b) => eval(a)?.add(eval(b)?),
        ExprKind::Sub(a, b) => eval(a)?.add(eval(b)?.neg()),
        ExprKind::Mul(a, b) => eval(a)?.mul(&eval(b)?, e.pos)?,
        ExprKind::Div(a, b) => {
            let divisor = eval(b)?;
            if divisor.has_u() {
                return Err(EquationError::NonPolynomial {
                    line: e.pos.line,
                    column: e.pos.column,
                    message: "division by an expression containing u".into(),
                });
            }
            let c = divisor
                .0
                .values()
                .next()
                .cloned()
                .unwrap_or_else(RationalFunction::zero);
            let inv = c.recip().map_err(|_| EquationError::NonPolynomial {
                line: e.pos.line,
                column: e.pos.column,
                message: "division by zero".into(),
            })?;
            eval(a)?.mul(&DiffSum::constant(inv), e.pos)?
        }
    })
}

/// Parses an equation `u_t = ...` into a canonical list of differential
/// monomials (like terms combined, sorted by degree, factors, inverse count).
pub fn parse(text: &str) -> Result<Vec<DiffMonomial>, EquationError> {
    let rhs = parse_rhs(text)?;
    let sum = eval(&rhs)?;
    if sum.0.keys().any(|k| k.degree == 0) {
        return Err(EquationError::Unsupported {
            line: rhs.pos.line,
            column: rhs.pos.column,
            message: "the right-hand side contains a u-independent term".into(),
        });
    }
    Ok(sum
        .0
        .into_iter()
        .map(|(k, coefficient)| DiffMonomial {
            coefficient,
            factors: k.factors,
            inverse_d_count: k.inverse_d,
        })
        .collect())
}

fn dsl_monomial_product(m: &crate::algebra::Monomial) -> String {
    let mut parts = Vec::new();
    for (v, e) in m.iter() {
        for _ in 0..*e {
            parts.push(v.to_string());
        }
    }
    parts.join("*")
}

fn dsl_polynomial(p: &Polynomial) -> String {
    let mut s = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        match (k, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        if m.is_one() {
            s.push_str(&fmt_rational(&abs));
        } else if abs.is_one() {
            s.push_str(&dsl_monomial_product(m));
        } else {
            let _ = write!(s, "{}*{}", fmt_rational(&abs), dsl_monomial_product(m));
        }
    }
    s
}

/// Coefficient rendered in DSL syntax, or `None` for the unit coefficient.
fn dsl_coefficient(c: &RationalFunction) -> Option<String> {
    if c.num().is_one() && c.den().is_one() {
        return None;
    }
    let num = dsl_polynomial(c.num());
    let num = if c.num().num_terms() > 1 { format!("({num})") } else { num };
    if c.den().is_one() {
        return Some(num);
    }
    Some(format!("{num}/({})", dsl_polynomial(c.den())))
}

fn dsl_factor(q: u32) -> String {
    if q == 0 {
        "u".into()
    } else {
        format!("D{q}(u)")
    }
}

/// Renders the monomial list back into DSL text that [`parse`] accepts.
pub fn render(monomials: &[DiffMonomial]) -> String {
    let mut out = String::from("u_t = ");
    if monomials.is_empty() {
        out.push_str("0*u");
        return out;
    }
    for (i, m) in monomials.iter().enumerate() {
        let body = m.factors.iter().map(|q| dsl_factor(*q)).collect::<Vec<_>>().join("*");
        let term = match dsl_coefficient(&m.coefficient) {
            None => body,
            Some(c) if c == "-1" => format!("-{body}"),
            Some(c) => format!("{c}*{body}"),
        };
        let mut term = term;
        for _ in 0..m.inverse_d_count {
            term = format!("Dinv({term})");
        }
        if i == 0 {
            out.push_str(&term);
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    out
}
