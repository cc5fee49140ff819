//! Dense univariate polynomials over the rationals, lowest degree first.

use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type Poly = Vec<Rational>;

pub(crate) fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn low_order(p: &[Rational]) -> usize {
    p.iter().position(|c| !c.is_zero()).unwrap_or(p.len())
}

pub(crate) fn is_one(p: &[Rational]) -> bool {
    p.len() == 1 && p[0].is_one()
}

pub(crate) fn add_shifted(acc: &mut Poly, p: &[Rational], shift: usize, sign: bool) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, Rational::zero());
    }
    for (i, c) in p.iter().enumerate() {
        if sign {
            acc[i + shift] += c;
        } else {
            acc[i + shift] -= c;
        }
    }
}

pub(crate) fn mul(a: &[Rational], b: &[Rational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len() == 1 && a[0].is_one() {
        return b.to_vec();
    }
    if b.len() == 1 && b[0].is_one() {
        return a.to_vec();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(a: &[Rational], b: &[Rational]) -> (Poly, Poly) {
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] / &lead;
        for (j, y) in b.iter().enumerate() {
            r[k + j] -= &c * y;
        }
        q[k] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Integer primitive part with positive leading coefficient.
fn primitive(p: &mut Poly) {
    let mut den = BigInt::one();
    for c in p.iter() {
        den = den.lcm(c.denom());
    }
    let mut g = BigInt::zero();
    for c in p.iter() {
        g = g.gcd(&(c.numer() * (&den / c.denom())));
    }
    if p.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    if g.is_zero() {
        return;
    }
    let scale = Rational::new(den, g);
    for c in p.iter_mut() {
        *c = &*c * &scale;
    }
}

/// Monic greatest common divisor.
pub(crate) fn gcd(a: &[Rational], b: &[Rational]) -> Poly {
    let mut x: Poly = a.to_vec();
    let mut y: Poly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    primitive(&mut x);
    primitive(&mut y);
    while !y.is_empty() {
        if y.len() == 1 {
            return one();
        }
        let (_, mut r) = divrem(&x, &y);
        primitive(&mut r);
        x = y;
        y = r;
    }
    if let Some(l) = x.last().cloned() {
        for c in x.iter_mut() {
            *c = &*c / &l;
        }
    }
    x
}

pub(crate) fn div_exact(a: &[Rational], b: &[Rational]) -> Poly {
    let (q, r) = divrem(a, b);
    debug_assert!(r.is_empty());
    q
}

pub(crate) fn one() -> Poly {
    vec![Rational::one()]
}
