use std::collections::BTreeMap;


use super::{AlgebraError, Polynomial, RationalFunction, Var};

/// Expansion `sum_{n = start_order}^{depth} c_n * eta^(-n)` about `eta = oo`.
///
/// Every order in `start_order..=depth` is stored, including zeros, and no
/// coefficient contains `eta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    start_order: i64,
    depth: i64,
    coeffs: BTreeMap<i64, RationalFunction>,
}

impl LaurentSeries {
    pub fn start_order(&self) -> i64 {
        self.start_order
    }

    pub fn depth(&self) -> i64 {
        self.depth
    }

    /// Coefficient of `eta^(-n)`. Orders below the start are zero; orders
    /// beyond the depth are unknown.
    pub fn coefficient(&self, n: i64) -> Option<RationalFunction> {
        if n > self.depth {
            return None;
        }
        Some(self.coeffs.get(&n).cloned().unwrap_or_else(RationalFunction::zero))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &RationalFunction)> {
        self.coeffs.iter().map(|(n, c)| (*n, c))
    }

    /// Nonzero entries only.
    pub fn nonzero(&self) -> impl Iterator<Item = (i64, &RationalFunction)> {
        self.iter().filter(|(_, c)| !c.is_zero())
    }

    pub fn truncate(&self, depth: i64) -> LaurentSeries {
        let depth = depth.min(self.depth);
        LaurentSeries {
            start_order: self.start_order,
            depth,
            coeffs: self
                .coeffs
                .range(..=depth)
                .map(|(n, c)| (*n, c.clone()))
                .collect(),
        }
    }

    /// Checks that `den(eta) * series` reproduces `num(eta)` at every power
    /// of `eta` the truncation determines exactly.
    pub fn check_resummation(&self, f: &RationalFunction) -> bool {
        let den = f.den().coefficients_in(&Var::Eta);
        let num = f.num().coefficients_in(&Var::Eta);
        let k = den.keys().max().copied().unwrap_or(0) as i64;
        let top = num.keys().max().copied().unwrap_or(0) as i64;
        let lowest = k - self.depth;
        for e in (lowest..=top.max(k - self.start_order)).rev() {
            let mut acc = RationalFunction::zero();
            for (l, d) in &den {
                // d_l eta^l * c_n eta^-n contributes to eta^e when n = l - e.
                let n = *l as i64 - e;
                if let Some(c) = self.coeffs.get(&n) {
                    acc = &acc + &(&RationalFunction::from(d.clone()) * c);
                }
            }
            let expected = if e >= 0 {
                num.get(&(e as u32)).cloned().unwrap_or_default()
            } else {
                Polynomial::zero()
            };
            if acc != RationalFunction::from(expected) {
                return false;
            }
        }
        true
    }
}

/// Expansion of `f` in powers of `1/eta` up to and including `eta^(-depth)`.
///
/// Exact long division of the numerator by the denominator, both viewed as
/// polynomials in `eta` with coefficients in the remaining variables.
pub fn laurent_expand(f: &RationalFunction, depth: i64) -> Result<LaurentSeries, AlgebraError> {
    if f.den().is_zero() {
        return Err(AlgebraError::ZeroDenominator);
    }
    if f.is_zero() {
        if depth < 0 {
            return Err(AlgebraError::EmptySeries { start: 0, depth });
        }
        return Ok(LaurentSeries {
            start_order: 0,
            depth,
            coeffs: (0..=depth).map(|n| (n, RationalFunction::zero())).collect(),
        });
    }
    let num = f.num().coefficients_in(&Var::Eta);
    let den = f.den().coefficients_in(&Var::Eta);
    let j = *num.keys().max().unwrap() as i64;
    let k = *den.keys().max().unwrap() as i64;
    let start = k - j;
    if depth < start {
        return Err(AlgebraError::EmptySeries { start, depth });
    }
    let lead = &den[&(k as u32)];
    let num_at = |i: i64| -> Polynomial {
        let e = j - i;
        if e < 0 {
            Polynomial::zero()
        } else {
            num.get(&(e as u32)).cloned().unwrap_or_default()
        }
    };
    let den_at = |l: i64| -> Polynomial {
        let e = k - l;
        if e < 0 {
            Polynomial::zero()
        } else {
            den.get(&(e as u32)).cloned().unwrap_or_default()
        }
    };

    // c_i = p_i / lead^(i+1) with
    // p_i = n_i * lead^i - sum_{l=1..i} d_l * p_{i-l} * lead^(l-1).
    let count = (depth - start + 1) as usize;
    let mut lead_pows = vec![Polynomial::one()];
    for i in 1..=count {
        let next = &lead_pows[i - 1] * lead;
        lead_pows.push(next);
    }
    let mut p: Vec<Polynomial> = Vec::with_capacity(count);
    let mut coeffs = BTreeMap::new();
    for i in 0..count {
        let mut pi = &num_at(i as i64) * &lead_pows[i];
        for l in 1..=i {
            let d = den_at(l as i64);
            if d.is_zero() || p[i - l].is_zero() {
                continue;
            }
            pi = &pi - &(&(&d * &p[i - l]) * &lead_pows[l - 1]);
        }
        let c = if pi.is_zero() {
            RationalFunction::zero()
        } else {
            RationalFunction::new(pi.clone(), lead_pows[i + 1].clone())?
        };
        debug_assert!(!c.contains_var(|v| *v == Var::Eta));
        coeffs.insert(start + i as i64, c);
        p.push(pi);
    }
    Ok(LaurentSeries {
        start_order: start,
        depth,
        coeffs,
    })
}

impl LaurentSeries {
    /// Sum of the nonzero entries, as a rational function in `eta`.
    pub fn resum(&self) -> RationalFunction {
        let eta = RationalFunction::var(Var::Eta);
        let mut total = RationalFunction::zero();
        for (n, c) in self.nonzero() {
            let term = if n >= 0 {
                c / &eta.pow(n as u32)
            } else {
                c * &eta.pow((-n) as u32)
            };
            total = &total + &term;
        }
        if total.is_zero() {
            debug_assert!(self.coeffs.values().all(|c| c.num().is_zero()));
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> RationalFunction {
        RationalFunction::var(x)
    }

    #[test]
    fn geometric_series() {
        let f = RationalFunction::one() / (v(Var::Eta) - v(Var::xi(1)));
        let s = laurent_expand(&f, 3).unwrap();
        assert_eq!(s.start_order(), 1);
        let got: Vec<String> = s.iter().map(|(n, c)| format!("{n}:{c}")).collect();
        assert_eq!(got, ["1:1", "2:xi1", "3:xi1^2"]);
        assert!(s.check_resummation(&f));
    }

    #[test]
    fn constant_has_single_entry() {
        let c = RationalFunction::int(7);
        let s = laurent_expand(&c, 0).unwrap();
        assert_eq!(s.start_order(), 0);
        assert_eq!(s.coefficient(0), Some(c));
        assert_eq!(s.nonzero().count(), 1);
    }

    #[test]
    fn positive_powers_are_allowed() {
        let f = v(Var::Eta).pow(2) / (v(Var::Eta) + v(Var::Beta));
        let s = laurent_expand(&f, 1).unwrap();
        assert_eq!(s.start_order(), -1);
        assert_eq!(s.coefficient(-1), Some(RationalFunction::one()));
        assert_eq!(s.coefficient(0), Some(-v(Var::Beta)));
        assert_eq!(s.coefficient(1), Some(v(Var::Beta).pow(2)));
        assert!(s.check_resummation(&f));
    }

    #[test]
    fn depth_below_start_is_an_error() {
        let f = RationalFunction::one() / v(Var::Eta).pow(3);
        assert_eq!(
            laurent_expand(&f, 2),
            Err(AlgebraError::EmptySeries { start: 3, depth: 2 })
        );
    }

    #[test]
    fn truncation_preserves_prefix() {
        let f = v(Var::xi(1)) / (v(Var::Eta).pow(2) - v(Var::xi(2)));
        let s = laurent_expand(&f, 8).unwrap();
        let t = laurent_expand(&f, 5).unwrap();
        assert_eq!(s.truncate(5), t);
    }

    #[test]
    fn resum_of_finite_series_is_exact() {
        let f = RationalFunction::int(3) / v(Var::Eta) + v(Var::xi(1)) / v(Var::Eta).pow(2);
        let s = laurent_expand(&f, 4).unwrap();
        assert_eq!(s.resum(), f);
        assert!(s.coefficient(3).unwrap().is_zero());
        assert!(!s.coefficient(1).unwrap().num().is_zero());
        assert!(s.coefficient(5).is_none());
    }
}
