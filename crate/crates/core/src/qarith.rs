//! q-integers, q-binomials and q-exponentials of nilpotent matrices.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{int, Rational};
use crate::scalar::LaurentScalar;

type S = LaurentScalar;

fn qp(e: &Rational) -> S {
    S::q_pow(e)
}

/// Symmetric q-integer `[n]` in base `q^b`: `(q^{bn} - q^{-bn}) / (q^b - q^{-b})`.
pub fn q_int(n: i64, b: &Rational) -> S {
    let sign = if n < 0 { -1 } else { 1 };
    let n = n.abs();
    let terms: Vec<_> = (0..n).map(|k| (b * int(n - 1 - 2 * k), int(1))).collect();
    S::from_terms(&terms) * S::from_int(sign)
}

/// Non-symmetric q-integer `(n)` in base `q^b`: `(q^{bn} - 1) / (q^b - 1)`.
pub fn paren_int(n: u32, b: &Rational) -> S {
    let terms: Vec<_> = (0..n as i64).map(|k| (b * int(k), int(1))).collect();
    S::from_terms(&terms)
}

pub fn q_factorial(n: u32, b: &Rational) -> S {
    (1..=n as i64).fold(S::one(), |acc, k| acc * q_int(k, b))
}

pub fn paren_factorial(n: u32, b: &Rational) -> S {
    (1..=n).fold(S::one(), |acc, k| acc * paren_int(k, b))
}

/// Gaussian binomial `[m choose k]` in base `q^b`.
pub fn q_binom(m: u32, k: u32, b: &Rational) -> Result<S> {
    if k > m {
        return Err(Error::InvalidInput(format!("q_binom: k = {} exceeds m = {}", k, m)));
    }
    // Pascal recursion keeps everything a Laurent polynomial.
    let mut row = vec![S::one()];
    for n in 1..=m as i64 {
        let mut next = vec![S::one(); n as usize + 1];
        for j in 1..n as usize {
            // [n j] = q^{b j}[n-1 j] + q^{-b(n-j)}[n-1 j-1]
            next[j] = qp(&(b * int(j as i64))) * &row[j] + qp(&(-b * int(n - j as i64))) * &row[j - 1];
        }
        row = next;
    }
    Ok(row[k as usize].clone())
}

/// `Σ_k (-1)^k [m choose k]_t t^{kc}` with `t = q`.
pub fn gauss_sum(m: u32, c: i64) -> S {
    let one = int(1);
    (0..=m).fold(S::zero(), |acc, k| {
        let term = q_binom(m, k, &one).expect("k <= m") * S::q_int_pow(c * k as i64);
        if k % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

/// Evaluates the alternating Gauss sum and checks it against the product
/// `Π_{p=0}^{m-1} (1 - t^{m-1-2p+c})`.
pub fn gauss_product_check(m: u32, c: i64) -> Result<S> {
    if m == 0 {
        return Err(Error::InvalidInput("gauss_product_check needs m >= 1".into()));
    }
    let sum = gauss_sum(m, c);
    let prod = (0..m as i64).fold(S::one(), |acc, p| acc * (S::one() - S::q_int_pow(m as i64 - 1 - 2 * p + c)));
    if sum != prod {
        return Err(Error::Invariant(format!(
            "Gauss sum {} differs from product {} at m = {}, c = {}",
            sum, prod, m, c
        )));
    }
    Ok(sum)
}

/// All `c` in `range` for which the alternating Gauss sum vanishes.
pub fn qbinom_root_scan(m: u32, range: std::ops::RangeInclusive<i64>) -> Vec<i64> {
    range.filter(|&c| gauss_sum(m, c).is_zero()).collect()
}

/// The roots predicted by the product form: `{m-1-2p : p = 0..m-1}`, ascending.
pub fn product_roots(m: u32) -> Vec<i64> {
    let mut v: Vec<i64> = (0..m as i64).map(|p| m as i64 - 1 - 2 * p).collect();
    v.sort_unstable();
    v
}

/// `Σ_k x^k / (k)_{q^b}!` for nilpotent `x`.
pub fn q_exp_nilpotent(x: &Matrix<S>, b: &Rational) -> Result<Matrix<S>> {
    if !x.is_square() {
        return Err(Error::InvalidInput("q_exp_nilpotent needs a square matrix".into()));
    }
    let n = x.rows();
    let mut acc = Matrix::identity(n);
    let mut power = Matrix::identity(n);
    for k in 1..=n as u32 {
        power = &power * x;
        if power.is_zero() {
            return Ok(acc);
        }
        if k as usize == n {
            break;
        }
        let w = paren_factorial(k, b).inv().expect("nonzero factorial");
        acc = &acc + &power.scale(&w);
    }
    if n == 0 || power.is_zero() {
        Ok(acc)
    } else {
        Err(Error::InvalidInput("q_exp_nilpotent: argument is not nilpotent".into()))
    }
}

/// Inverse of `exp_{q^b}(x)`, namely `exp_{q^{-b}}(-x)`.
pub fn q_exp_inverse(x: &Matrix<S>, b: &Rational) -> Result<Matrix<S>> {
    q_exp_nilpotent(&-x, &-b)
}
