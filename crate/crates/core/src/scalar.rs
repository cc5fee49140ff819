//! Rational functions in a formal parameter `q`, allowing fractional powers.
//!
//! A value is stored as `t^shift * num(t) / den(t)` with `t = q^(1/root)`,
//! where `num` and `den` have nonzero constant terms, `den` is monic, the two
//! are coprime and `root` is as small as possible. That makes the
//! representation canonical, so derived equality and hashing are sound.

use crate::poly::{self, Poly};
use crate::rational::{binomial, format_rational, int, Rational};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentScalar {
    root: u32,
    shift: i64,
    num: Poly,
    den: Poly,
}

impl LaurentScalar {
    pub fn zero() -> Self {
        LaurentScalar {
            root: 1,
            shift: 0,
            num: Vec::new(),
            den: poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn from_rational(c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentScalar {
            root: 1,
            shift: 0,
            num: vec![c],
            den: poly::one(),
        }
    }

    /// `q^e` for a rational exponent `e`.
    pub fn q_pow(e: &Rational) -> Self {
        let root = e.denom().to_u32().expect("exponent denominator too large");
        let shift = e.numer().to_i64().expect("exponent numerator too large");
        LaurentScalar {
            root,
            shift,
            num: poly::one(),
            den: poly::one(),
        }
    }

    pub fn q_int_pow(e: i64) -> Self {
        LaurentScalar {
            root: 1,
            shift: e,
            num: poly::one(),
            den: poly::one(),
        }
    }

    /// The generator `q`.
    pub fn q() -> Self {
        Self::q_int_pow(1)
    }

    /// Sum of `coeff * q^exp` over the given terms.
    pub fn from_terms(terms: &[(Rational, Rational)]) -> Self {
        terms
            .iter()
            .fold(Self::zero(), |acc, (e, c)| acc + Self::q_pow(e) * Self::from_rational(c.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && poly::is_one(&self.num) && poly::is_one(&self.den)
    }

    /// Denominator of the exponents in canonical form.
    pub fn root_denominator(&self) -> u32 {
        self.root
    }

    /// True if the value is a Laurent polynomial in fractional powers of q.
    pub fn is_laurent_polynomial(&self) -> bool {
        poly::is_one(&self.den)
    }

    /// Constant rational value, if the scalar does not depend on q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.shift == 0 && self.num.len() == 1 && poly::is_one(&self.den) {
            Some(self.num[0].clone())
        } else {
            None
        }
    }

    /// `(exponent, coefficient)` pairs in ascending exponent order, for Laurent polynomials.
    pub fn terms(&self) -> Option<Vec<(Rational, Rational)>> {
        if !self.is_laurent_polynomial() {
            return None;
        }
        let r = int(self.root as i64);
        Some(
            self.num
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (int(self.shift + i as i64) / &r, c.clone()))
                .collect(),
        )
    }

    fn build(root: u32, mut shift: i64, mut num: Poly, mut den: Poly) -> Self {
        poly::trim(&mut num);
        if num.is_empty() {
            return Self::zero();
        }
        poly::trim(&mut den);
        let k = poly::low_order(&num);
        if k > 0 {
            num.drain(..k);
            shift += k as i64;
        }
        let k = poly::low_order(&den);
        if k > 0 {
            den.drain(..k);
            shift -= k as i64;
        }
        if den.len() > 1 {
            let g = poly::gcd(&num, &den);
            if g.len() > 1 {
                num = poly::div_exact(&num, &g);
                den = poly::div_exact(&den, &g);
            }
        }
        let lead = den.last().cloned().expect("nonzero denominator");
        if !lead.is_one() {
            for c in num.iter_mut().chain(den.iter_mut()) {
                *c = &*c / &lead;
            }
        }
        let mut s = LaurentScalar { root, shift, num, den };
        s.compress();
        s
    }

    fn compress(&mut self) {
        if self.root == 1 {
            return;
        }
        let mut g = self.root as i64;
        g = g.gcd(&self.shift);
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                g = g.gcd(&(i as i64));
            }
        }
        for (i, c) in self.den.iter().enumerate() {
            if !c.is_zero() {
                g = g.gcd(&(i as i64));
            }
        }
        if g <= 1 {
            return;
        }
        let gu = g as usize;
        self.root /= g as u32;
        self.shift /= g;
        self.num = self.num.iter().step_by(gu).cloned().collect();
        self.den = self.den.iter().step_by(gu).cloned().collect();
    }

    fn lifted(&self, root: u32) -> (i64, Poly, Poly) {
        let m = (root / self.root) as usize;
        if m == 1 {
            return (self.shift, self.num.clone(), self.den.clone());
        }
        let spread = |p: &Poly| {
            let mut out = vec![Rational::zero(); (p.len().max(1) - 1) * m + 1];
            for (i, c) in p.iter().enumerate() {
                out[i * m] = c.clone();
            }
            out
        };
        (self.shift * m as i64, spread(&self.num), spread(&self.den))
    }

    fn add_impl(&self, other: &Self, sign: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if sign { other.clone() } else { -other };
        }
        let root = (self.root as u64).lcm(&(other.root as u64)) as u32;
        let (sa, na, ma) = self.lifted(root);
        let (sb, nb, mb) = other.lifted(root);
        let m = sa.min(sb);
        let mut num = Vec::new();
        let den = if ma == mb {
            poly::add_shifted(&mut num, &na, (sa - m) as usize, true);
            poly::add_shifted(&mut num, &nb, (sb - m) as usize, sign);
            ma
        } else {
            poly::add_shifted(&mut num, &poly::mul(&na, &mb), (sa - m) as usize, true);
            poly::add_shifted(&mut num, &poly::mul(&nb, &ma), (sb - m) as usize, sign);
            poly::mul(&ma, &mb)
        };
        Self::build(root, m, num, den)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let root = (self.root as u64).lcm(&(other.root as u64)) as u32;
        let (sa, na, ma) = self.lifted(root);
        let (sb, nb, mb) = other.lifted(root);
        Self::build(root, sa + sb, poly::mul(&na, &nb), poly::mul(&ma, &mb))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::build(self.root, -self.shift, self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 {
            self.inv().expect("zero to a negative power")
        } else {
            self.clone()
        };
        let mut acc = Self::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        acc
    }

    /// The image under `q -> q^{-1}`.
    pub fn substitute_inverse(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let dn = self.num.len() as i64 - 1;
        let dd = self.den.len() as i64 - 1;
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        num.reverse();
        den.reverse();
        Self::build(self.root, -self.shift - dn + dd, num, den)
    }

    /// Taylor coefficients of the value at `q = 1 + eps`, up to `eps^order`.
    /// Returns `None` when the value has a pole at `q = 1`.
    pub fn series_at_one(&self, order: usize) -> Option<Vec<Rational>> {
        let r = int(self.root as i64);
        let expand = |p: &Poly, shift: i64| -> Vec<Rational> {
            let mut out = vec![Rational::zero(); order + 1];
            for (i, c) in p.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let e = int(shift + i as i64) / &r;
                for (j, slot) in out.iter_mut().enumerate() {
                    *slot += c * binomial(&e, j);
                }
            }
            out
        };
        let n = expand(&self.num, self.shift);
        let d = expand(&self.den, 0);
        if d[0].is_zero() {
            return None;
        }
        let mut out = vec![Rational::zero(); order + 1];
        for k in 0..=order {
            let mut acc = n[k].clone();
            for j in 1..=k {
                acc -= &d[j] * &out[k - j];
            }
            out[k] = acc / &d[0];
        }
        Some(out)
    }

    fn fmt_poly(p: &Poly, shift: i64, root: u32) -> String {
        let r = int(root as i64);
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in p.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = int(shift + i as i64) / &r;
            let mono = if e.is_zero() {
                String::new()
            } else if e.is_one() {
                "q".to_string()
            } else {
                format!("q^{}", format_exp(&e))
            };
            let neg = c.is_negative();
            let mag = c.abs();
            let body = if mono.is_empty() {
                format_rational(&mag)
            } else if mag.is_one() {
                mono
            } else {
                format!("{}*{}", format_rational(&mag), mono)
            };
            if parts.is_empty() {
                parts.push(if neg { format!("-{}", body) } else { body });
            } else {
                parts.push(format!("{} {}", if neg { "-" } else { "+" }, body));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ")
        }
    }
}

fn format_exp(e: &Rational) -> String {
    if e.is_integer() && !e.is_negative() {
        format_rational(e)
    } else {
        format!("({})", format_rational(e))
    }
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = Self::fmt_poly(&self.num, self.shift, self.root);
        if poly::is_one(&self.den) {
            write!(f, "{}", num)
        } else {
            let den = Self::fmt_poly(&self.den, 0, self.root);
            write!(f, "({})/({})", num, den)
        }
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Default for LaurentScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rational> for LaurentScalar {
    fn from(c: Rational) -> Self {
        Self::from_rational(c)
    }
}

impl From<i64> for LaurentScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        let mut out = self.clone();
        for c in out.num.iter_mut() {
            *c = -&*c;
        }
        out
    }
}

impl Neg for LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&LaurentScalar> for &LaurentScalar {
            type Output = LaurentScalar;
            fn $m(self, rhs: &LaurentScalar) -> LaurentScalar {
                $body(self, rhs)
            }
        }
        impl $tr<LaurentScalar> for LaurentScalar {
            type Output = LaurentScalar;
            fn $m(self, rhs: LaurentScalar) -> LaurentScalar {
                $body(&self, &rhs)
            }
        }
        impl $tr<&LaurentScalar> for LaurentScalar {
            type Output = LaurentScalar;
            fn $m(self, rhs: &LaurentScalar) -> LaurentScalar {
                $body(&self, rhs)
            }
        }
        impl $tr<LaurentScalar> for &LaurentScalar {
            type Output = LaurentScalar;
            fn $m(self, rhs: LaurentScalar) -> LaurentScalar {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a: &LaurentScalar, b: &LaurentScalar| a.add_impl(b, true));
binop!(Sub, sub, |a: &LaurentScalar, b: &LaurentScalar| a.add_impl(b, false));
binop!(Mul, mul, |a: &LaurentScalar, b: &LaurentScalar| a.mul_impl(b));
binop!(Div, div, |a: &LaurentScalar, b: &LaurentScalar| a
    .mul_impl(&b.inv().expect("division by zero scalar")));

impl AddAssign<&LaurentScalar> for LaurentScalar {
    fn add_assign(&mut self, rhs: &LaurentScalar) {
        *self = self.add_impl(rhs, true);
    }
}

impl SubAssign<&LaurentScalar> for LaurentScalar {
    fn sub_assign(&mut self, rhs: &LaurentScalar) {
        *self = self.add_impl(rhs, false);
    }
}

impl MulAssign<&LaurentScalar> for LaurentScalar {
    fn mul_assign(&mut self, rhs: &LaurentScalar) {
        *self = self.mul_impl(rhs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn q() -> LaurentScalar {
        LaurentScalar::q()
    }

    #[test]
    fn canonical_forms_agree() {
        let a = (q() * q() - LaurentScalar::one()) / (q() - LaurentScalar::one());
        assert_eq!(a, q() + LaurentScalar::one());
        let half = LaurentScalar::q_pow(&rat(1, 2));
        assert_eq!(&half * &half, q());
        assert_eq!(half.root_denominator(), 2);
        assert_eq!((&half * &half).root_denominator(), 1);
    }

    #[test]
    fn inverse_and_substitution() {
        let x = q() - q().inv().unwrap();
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert_eq!(x.substitute_inverse(), -&x);
        let z = (q() + LaurentScalar::from_int(3)) / (q().pow(2) - LaurentScalar::from_int(2));
        assert_eq!(z.substitute_inverse().substitute_inverse(), z);
    }

    #[test]
    fn display() {
        let x = q().pow(2) + LaurentScalar::one() + q().pow(-2);
        assert_eq!(x.to_string(), "q^2 + 1 + q^(-2)");
        assert_eq!(LaurentScalar::zero().to_string(), "0");
        assert_eq!(LaurentScalar::q_pow(&rat(-1, 3)).to_string(), "q^(-1/3)");
    }

    #[test]
    fn series_of_q_minus_inverse_squared() {
        let x = (q() - q().inv().unwrap()).pow(2);
        let s = x.series_at_one(3).unwrap();
        assert_eq!(s[0], int(0));
        assert_eq!(s[1], int(0));
        assert_eq!(s[2], int(4));
        assert!((q() - LaurentScalar::one()).inv().unwrap().series_at_one(2).is_none());
    }
}
