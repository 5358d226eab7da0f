use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use itertools::Itertools;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd;
use super::poly::rat;
use super::{AlgebraError, Polynomial, Var};

/// Exact quotient of two polynomials in canonical form.
///
/// Canonical means: numerator and denominator are coprime, both carry
/// integer coefficients whose overall gcd is 1, and the denominator's leading
/// coefficient (graded lex, `eta > xi1 > ... > beta > gamma`) is positive.
/// Two values are equal iff their canonical forms are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Reduces `num / den` to canonical form.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RationalFunction::zero());
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Ok(Self::fix_scalars(num, den))
    }

    /// Scalar normalization only; assumes `num` and `den` are coprime.
    fn fix_scalars(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let mut l = BigInt::one();
        let mut g = BigInt::zero();
        for (_, c) in num.terms().chain(den.terms()) {
            l = l.lcm(c.denom());
        }
        let l = BigRational::from_integer(l);
        for (_, c) in num.terms().chain(den.terms()) {
            g = g.gcd(&(c * &l).to_integer());
        }
        let mut factor = l / BigRational::from_integer(g);
        if den.leading_coefficient().is_negative() {
            factor = -factor;
        }
        if factor.is_one() {
            return RationalFunction { num, den };
        }
        RationalFunction {
            num: num.scale(&factor),
            den: den.scale(&factor),
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Polynomial::var(v))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self::fix_scalars(p, Polynomial::one())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The value as a polynomial, if the denominator is constant.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        let c = self.den.constant_value()?;
        Some(self.num.scale(&c.recip()))
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        Some(self.num.constant_value()? / self.den.constant_value()?)
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn contains_var(&self, pred: impl Fn(&Var) -> bool + Copy) -> bool {
        self.num.contains_var(pred) || self.den.contains_var(pred)
    }

    /// True iff no `xi` variable occurs in the denominator. Parameter-only
    /// denominators such as `3*beta` do not break polynomiality in `xi`.
    pub fn is_polynomial_in_xi(&self) -> bool {
        !self.den.contains_var(Var::is_xi)
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::fix_scalars(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::fix_scalars(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::fix_scalars(self.num.pow(e), self.den.pow(e))
    }

    /// Simultaneous substitution of polynomials for variables.
    pub fn substitute(&self, f: &dyn Fn(&Var) -> Option<Polynomial>) -> Result<Self, AlgebraError> {
        Self::new(self.num.substitute(f), self.den.substitute(f))
    }

    /// Simultaneous substitution of rational functions for variables.
    pub fn compose(&self, f: &dyn Fn(&Var) -> Option<RationalFunction>) -> Result<Self, AlgebraError> {
        let num = Self::compose_poly(&self.num, f);
        let den = Self::compose_poly(&self.den, f);
        num.checked_div(&den)
    }

    fn compose_poly(p: &Polynomial, f: &dyn Fn(&Var) -> Option<RationalFunction>) -> Self {
        let mut total = RationalFunction::zero();
        for (m, c) in p.terms() {
            let mut t = RationalFunction::constant(c.clone());
            let mut kept = super::Monomial::one();
            for (v, e) in m.iter() {
                match f(v) {
                    Some(r) => t = &t * &r.pow(*e),
                    None => kept = kept.mul(&super::Monomial::var(v.clone(), *e)),
                }
            }
            if !kept.is_one() {
                t = &t * &Self::from_poly(Polynomial::term(BigRational::one(), kept));
            }
            total = &total + &t;
        }
        total
    }

    /// Renaming of variables by a bijection (e.g. a permutation of `xi`s).
    pub fn rename(&self, f: &dyn Fn(&Var) -> Var) -> Self {
        Self::fix_scalars(self.num.rename(f), self.den.rename(f))
    }

    pub fn eval_rational(&self, f: &dyn Fn(&Var) -> Option<BigRational>) -> Option<BigRational> {
        let d = self.den.eval_rational(f)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rational(f)? / d)
    }

    pub fn eval_complex(&self, f: &dyn Fn(&Var) -> Complex64) -> Complex64 {
        self.num.eval_complex(f) / self.den.eval_complex(f)
    }

    /// `(1/m!) * sum over permutations of `over` of f(permuted)`.
    pub fn symmetrize(&self, over: &[Var]) -> Result<Self, AlgebraError> {
        check_symmetrization_vars(over)?;
        if over.len() <= 1 {
            return Ok(self.clone());
        }
        let present = self.vars();
        let active: Vec<Var> = over.to_vec();
        if !active.iter().any(|v| present.contains(v)) {
            return Ok(self.clone());
        }
        let mut total = RationalFunction::zero();
        let mut count: i64 = 0;
        for perm in active.iter().permutations(active.len()) {
            let image = self.rename(&|v| match active.iter().position(|w| w == v) {
                Some(i) => perm[i].clone(),
                None => v.clone(),
            });
            total = &total + &image;
            count += 1;
        }
        Ok(total.scale(&BigRational::new(BigInt::one(), BigInt::from(count))))
    }

    /// Invariance under every transposition of `over`.
    pub fn is_symmetric(&self, over: &[Var]) -> bool {
        if over.iter().any(|v| *v == Var::Eta) {
            return false;
        }
        for i in 0..over.len() {
            for j in (i + 1)..over.len() {
                let (a, b) = (&over[i], &over[j]);
                let swapped = self.rename(&|v| {
                    if v == a {
                        b.clone()
                    } else if v == b {
                        a.clone()
                    } else {
                        v.clone()
                    }
                });
                if swapped != *self {
                    return false;
                }
            }
        }
        true
    }
}

pub(crate) fn check_symmetrization_vars(over: &[Var]) -> Result<(), AlgebraError> {
    if let Some(bad) = over.iter().find(|v| !v.is_xi()) {
        return Err(AlgebraError::NonXiSymmetrization(bad.to_string()));
    }
    Ok(())
}

/// Free-function form of [`RationalFunction::new`].
pub fn normalize(num: Polynomial, den: Polynomial) -> Result<RationalFunction, AlgebraError> {
    RationalFunction::new(num, den)
}

/// Free-function form of [`RationalFunction::is_polynomial_in_xi`].
pub fn is_polynomial_in_xi(f: &RationalFunction) -> bool {
    f.is_polynomial_in_xi()
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl From<Var> for RationalFunction {
    fn from(v: Var) -> Self {
        Self::var(v)
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        // With reduced inputs and g = gcd(b, d), the sum a/b + c/d can only
        // share factors with g.
        let g = gcd(&self.den, &rhs.den);
        if g.is_constant() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RationalFunction::fix_scalars(num, &self.den * &rhs.den);
        }
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let h = gcd(&num, &g);
        let (num, g) = if h.is_constant() {
            (num, g)
        } else {
            (num.div_exact(&h).unwrap(), g.div_exact(&h).unwrap())
        };
        RationalFunction::fix_scalars(num, &(&b1 * &d1) * &g)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let cancel = |p: &Polynomial, g: &Polynomial| {
            if g.is_constant() {
                p.clone()
            } else {
                p.div_exact(g).unwrap()
            }
        };
        let num = &cancel(&self.num, &g1) * &cancel(&rhs.num, &g2);
        let den = &cancel(&self.den, &g2) * &cancel(&rhs.den, &g1);
        RationalFunction::fix_scalars(num, den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; see [`RationalFunction::checked_div`].
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

fn needs_parens_num(p: &Polynomial) -> bool {
    p.num_terms() > 1
}

fn needs_parens_den(p: &Polynomial) -> bool {
    if p.num_terms() > 1 {
        return true;
    }
    match p.leading_term() {
        Some((m, c)) => !(m.is_one() || (c.is_one() && m.iter().count() == 1)),
        None => false,
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if needs_parens_num(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if needs_parens_den(&self.den) {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}
