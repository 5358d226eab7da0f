//! Multivariate polynomial GCD over the rationals.
//!
//! The core is a recursive primitive pseudo-remainder sequence. Before
//! running it, each common variable is probed with a modular image (random
//! evaluation of the other variables, univariate Euclid mod a 61-bit prime).
//! An image gcd of degree zero proves the true gcd is free of that variable,
//! which lets most calls in practice (coprime inputs) finish without any
//! pseudo-division.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Monomial, Polynomial, Var};

const PRIME: u64 = (1 << 61) - 1;

/// Greatest common divisor, normalized to integer coefficients with content 1
/// and positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    let a = a.primitive();
    let b = b.primitive();
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    let a = a.div_monomial(&ma).expect("monomial content divides");
    let b = b.div_monomial(&mb).expect("monomial content divides");
    let g = gcd_core(&a, &b);
    if mg.is_one() {
        g
    } else {
        g.mul_monomial(&mg).primitive()
    }
}

/// Both inputs nonzero, primitive and free of monomial factors.
fn gcd_core(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    if a == b {
        return a.clone();
    }
    let va = a.vars();
    let vb = b.vars();
    if let Some(x) = va.symmetric_difference(&vb).next() {
        // The gcd cannot involve `x`, so it divides every coefficient in `x`.
        let (with_x, other) = if va.contains(x) { (a, b) } else { (b, a) };
        return gcd_with_coefficients(other.clone(), with_x, x);
    }
    if a.div_exact(b).is_some() {
        return b.clone();
    }
    if b.div_exact(a).is_some() {
        return a.clone();
    }

    let common: Vec<Var> = va.into_iter().collect();
    let mut best: Option<(u32, Var)> = None;
    let mut all_free = true;
    for x in &common {
        match image_gcd_degree(a, b, x, &common) {
            Some(0) => {
                // gcd is free of x: reduce to the contents in x.
                return gcd(&content_in(a, x), &content_in(b, x));
            }
            Some(d) => {
                all_free = false;
                if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                    best = Some((d, x.clone()));
                }
            }
            None => all_free = false,
        }
    }
    if all_free {
        return Polynomial::one();
    }
    let x = match best {
        Some((_, x)) => x,
        None => common
            .iter()
            .min_by_key(|v| a.degree_in(v).max(b.degree_in(v)))
            .cloned()
            .unwrap(),
    };
    prs_gcd(a, b, &x)
}

fn gcd_with_coefficients(mut g: Polynomial, p: &Polynomial, x: &Var) -> Polynomial {
    let coeffs = p.coefficients_in(x);
    // Smallest coefficients first tends to collapse `g` fastest.
    let mut cs: Vec<Polynomial> = coeffs.into_values().collect();
    cs.sort_by_key(|c| c.num_terms());
    for c in cs {
        g = gcd(&g, &c);
        if g.is_constant() {
            return Polynomial::one();
        }
    }
    g
}

/// gcd of the coefficients of `p` viewed as a polynomial in `x`.
pub(crate) fn content_in(p: &Polynomial, x: &Var) -> Polynomial {
    let mut cs: Vec<Polynomial> = p.coefficients_in(x).into_values().collect();
    cs.sort_by_key(|c| c.num_terms());
    let mut g = Polynomial::zero();
    for c in cs {
        g = gcd(&g, &c);
        if g.is_constant() {
            return Polynomial::one();
        }
    }
    g
}

fn primitive_in(p: &Polynomial, x: &Var) -> Polynomial {
    let c = content_in(p, x);
    if c.is_constant() {
        p.primitive()
    } else {
        p.div_exact(&c).expect("content divides").primitive()
    }
}

/// Sparse pseudo-remainder of `a` by `b` with respect to `x`.
fn pseudo_remainder(a: &Polynomial, b: &Polynomial, x: &Var) -> Polynomial {
    let db = b.degree_in(x);
    let lb = b.leading_coefficient_in(x);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(x) >= db {
        let dr = r.degree_in(x);
        let lr = r.leading_coefficient_in(x);
        let shift = Monomial::var(x.clone(), dr - db);
        r = &(&r * &lb) - &(&(&lr * b).mul_monomial(&shift));
        r = r.primitive();
    }
    r
}

fn prs_gcd(a: &Polynomial, b: &Polynomial, x: &Var) -> Polynomial {
    let ca = content_in(a, x);
    let cb = content_in(b, x);
    let cg = gcd(&ca, &cb);
    let pa = if ca.is_constant() { a.clone() } else { a.div_exact(&ca).unwrap() };
    let pb = if cb.is_constant() { b.clone() } else { b.div_exact(&cb).unwrap() };
    let (mut r0, mut r1) = if pa.degree_in(x) >= pb.degree_in(x) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    let g = loop {
        let r = pseudo_remainder(&r0, &r1, x);
        if r.is_zero() {
            break primitive_in(&r1, x);
        }
        if r.degree_in(x) == 0 {
            break Polynomial::one();
        }
        r0 = r1;
        r1 = primitive_in(&r, x);
    };
    (&g * &cg).primitive()
}

// ---------------------------------------------------------------------------
// modular images

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn invmod(a: u64) -> u64 {
    powmod(a, PRIME - 2)
}

fn bigint_mod(n: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    n.mod_floor(&p).to_u64().unwrap()
}

/// Univariate image in `x` of `p` with the other variables evaluated at
/// `point`. Returns `None` if a coefficient denominator vanishes mod p.
fn univariate_image(p: &Polynomial, x: &Var, point: &dyn Fn(&Var) -> u64) -> Option<Vec<u64>> {
    let mut out = vec![0u64; p.degree_in(x) as usize + 1];
    for (m, c) in p.terms() {
        let den = bigint_mod(c.denom());
        if den == 0 {
            return None;
        }
        let mut t = mulmod(bigint_mod(c.numer()), invmod(den));
        let mut deg = 0;
        for (v, e) in m.iter() {
            if v == x {
                deg = *e as usize;
            } else {
                t = mulmod(t, powmod(point(v), *e as u64));
            }
        }
        out[deg] = (out[deg] + t) % PRIME;
    }
    Some(out)
}

fn trim(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn univariate_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a <- a mod b
        let inv = invmod(*b.last().unwrap());
        while a.len() >= b.len() {
            let q = mulmod(*a.last().unwrap(), inv);
            let shift = a.len() - b.len();
            for (i, bc) in b.iter().enumerate() {
                let idx = i + shift;
                a[idx] = (a[idx] + PRIME - mulmod(q, *bc)) % PRIME;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Degree in `x` of the gcd of a good modular image, which bounds the degree
/// of the true gcd in `x` from above. `None` if no good image was found.
fn image_gcd_degree(a: &Polynomial, b: &Polynomial, x: &Var, vars: &[Var]) -> Option<u32> {
    let others: BTreeSet<&Var> = vars.iter().filter(|v| *v != x).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f_9cd);
    let da = a.degree_in(x) as usize;
    let db = b.degree_in(x) as usize;
    for _ in 0..3 {
        let values: Vec<(Var, u64)> = others
            .iter()
            .map(|v| ((*v).clone(), rng.gen_range(2..PRIME - 1)))
            .collect();
        let point = |v: &Var| {
            values
                .iter()
                .find(|(w, _)| w == v)
                .map(|(_, val)| *val)
                .unwrap_or(0)
        };
        let (Some(ia), Some(ib)) = (univariate_image(a, x, &point), univariate_image(b, x, &point))
        else {
            continue;
        };
        // Unlucky if a leading coefficient vanished.
        if ia.len() != da + 1 || ib.len() != db + 1 || ia[da].is_zero() || ib[db].is_zero() {
            continue;
        }
        return Some(univariate_gcd_degree(ia, ib) as u32);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::rat;

    fn v(x: Var) -> Polynomial {
        Polynomial::var(x)
    }

    #[test]
    fn common_linear_factor() {
        let x1 = v(Var::xi(1));
        let e = v(Var::Eta);
        let a = &(&x1 + &e) * &(&x1 - &e);
        let b = &(&x1 + &e) * &(&x1 + &v(Var::Beta));
        assert_eq!(gcd(&a, &b), &x1 + &e);
    }

    #[test]
    fn coprime_inputs() {
        let x1 = v(Var::xi(1));
        let e = v(Var::Eta);
        let a = &x1.pow(2) + &e;
        let b = &x1 + &e.pow(3);
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn monomial_and_integer_content() {
        let x1 = v(Var::xi(1));
        let e = v(Var::Eta);
        let a = (&x1 * &e).scale(&rat(2));
        let b = e.scale(&rat(4));
        assert_eq!(gcd(&a, &b), e);
        assert_eq!(gcd(&Polynomial::zero(), &b), e);
    }

    #[test]
    fn nontrivial_multivariate_factor() {
        let x1 = v(Var::xi(1));
        let x2 = v(Var::xi(2));
        let e = v(Var::Eta);
        let beta = v(Var::Beta);
        let f = &(&(&x1 * &x2) + &(&beta * &e.pow(2))) - &Polynomial::int(3);
        let a = &f * &(&x1.pow(2) + &x2);
        let b = &f.pow(2) * &(&e + &beta);
        let g = gcd(&a, &b);
        assert_eq!(g, f.primitive());
    }
}
