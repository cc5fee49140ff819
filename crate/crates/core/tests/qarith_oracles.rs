use proptest::prelude::*;
use qwhit_core::qarith::{gauss_product_check, gauss_sum, product_roots, q_binom, q_exp_inverse, q_exp_nilpotent, q_int, qbinom_root_scan};
use qwhit_core::rational::{int, rat, Rational};
use qwhit_core::{LaurentScalar as S, Matrix};

fn q(e: i64) -> S {
    S::q_int_pow(e)
}

fn one() -> Rational {
    int(1)
}

#[test]
fn q_integers() {
    assert!(q_int(0, &one()).is_zero());
    assert!(q_int(1, &one()).is_one());
    assert_eq!(q_int(2, &one()), q(1) + q(-1));
    assert_eq!(q_int(3, &one()), q(2) + S::one() + q(-2));
    // Defining ratio.
    for n in 1..7 {
        let ratio = (q(n) - q(-n)) / (q(1) - q(-1));
        assert_eq!(q_int(n, &one()), ratio);
        let b = int(3);
        assert_eq!(q_int(n, &b), (q(3 * n) - q(-3 * n)) / (q(3) - q(-3)));
    }
}

#[test]
fn q_binomials() {
    for m in 0..5 {
        assert!(q_binom(m, 0, &one()).unwrap().is_one());
    }
    assert_eq!(q_binom(2, 1, &one()).unwrap(), q(1) + q(-1));
    assert_eq!(q_binom(4, 2, &one()).unwrap(), q(4) + q(2) + S::from_int(2) + q(-2) + q(-4));
    assert!(q_binom(2, 3, &one()).is_err());
    // Factorial ratio.
    let fact = |n: i64, b: &Rational| (1..=n).fold(S::one(), |acc, k| acc * q_int(k, b));
    for b in [int(1), int(2), rat(1, 2)] {
        for m in 0..7u32 {
            for k in 0..=m {
                let ratio = fact(m as i64, &b) / (fact(k as i64, &b) * fact((m - k) as i64, &b));
                assert_eq!(q_binom(m, k, &b).unwrap(), ratio);
            }
        }
    }
}

#[test]
fn gauss_sums() {
    assert!(gauss_product_check(2, 1).unwrap().is_zero());
    assert!(!gauss_product_check(2, 3).unwrap().is_zero());
    for c in -4..=4 {
        assert_eq!(gauss_product_check(1, c).unwrap(), S::one() - q(c));
    }
    // Direct expansion at m = 2, c = 1.
    let direct = S::one() - (q(1) + q(-1)) * q(1) + q(2);
    assert!(direct.is_zero());
    assert!(gauss_product_check(0, 0).is_err());
}

#[test]
fn root_scans() {
    assert_eq!(qbinom_root_scan(1, -4..=4), vec![0]);
    assert_eq!(qbinom_root_scan(2, -4..=4), vec![-1, 1]);
    assert_eq!(qbinom_root_scan(3, -4..=4), vec![-2, 0, 2]);
    for m in 1..=6u32 {
        let scan = qbinom_root_scan(m, -12..=12);
        assert_eq!(scan, product_roots(m));
        let top = m as i64 - 1;
        assert!(scan.contains(&top) && scan.contains(&-top));
        for c in -12..=12 {
            assert_eq!(gauss_product_check(m, c).unwrap(), gauss_sum(m, c));
        }
    }
}

#[test]
fn nilpotent_exponentials() {
    let z = Matrix::<S>::zeros(3, 3);
    assert!(q_exp_nilpotent(&z, &one()).unwrap().is_identity());
    let mut x = Matrix::<S>::zeros(2, 2);
    x[(0, 1)] = S::from_int(5);
    assert_eq!(q_exp_nilpotent(&x, &one()).unwrap(), &Matrix::identity(2) + &x);
    let mut j = Matrix::<S>::zeros(3, 3);
    j[(0, 1)] = S::one();
    j[(1, 2)] = S::one();
    let b = int(-2);
    let expected = &(&Matrix::identity(3) + &j) + &(&j * &j).scale(&(S::one() + q(-2)).inv().unwrap());
    assert_eq!(q_exp_nilpotent(&j, &b).unwrap(), expected);
    let prod = &q_exp_nilpotent(&j, &b).unwrap() * &q_exp_inverse(&j, &b).unwrap();
    assert!(prod.is_identity());
    let mut bad = Matrix::<S>::zeros(2, 2);
    bad[(0, 1)] = S::one();
    bad[(1, 0)] = S::one();
    assert!(q_exp_nilpotent(&bad, &one()).is_err());
}

fn laurent() -> impl Strategy<Value = S> {
    prop::collection::vec(((-6i64..=6, prop::sample::select(vec![1i64, 2, 3])), -5i64..=5), 0..4).prop_map(|terms| {
        let t: Vec<(Rational, Rational)> = terms.into_iter().map(|((n, d), c)| (rat(n, d), int(c))).collect();
        S::from_terms(&t)
    })
}

/// Laurent polynomials and ratios of them.
fn scalar() -> impl Strategy<Value = S> {
    (laurent(), laurent(), any::<bool>()).prop_map(|(a, b, ratio)| if ratio && !b.is_zero() { a / b } else { a })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a + S::zero(), a.clone());
        prop_assert_eq!(&a * S::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a + (-&a)).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * a.inv().unwrap()).is_one());
        } else {
            prop_assert!(a.inv().is_none());
        }
    }

    #[test]
    fn binomial_symmetry_and_pascal(m in 1u32..8, k in 0u32..8, b in prop::sample::select(vec![1i64, 2, 3])) {
        let k = k % (m + 1);
        let b = int(b);
        prop_assert_eq!(q_binom(m, k, &b).unwrap(), q_binom(m, m - k, &b).unwrap());
        prop_assert_eq!(q_binom(m, k, &b).unwrap(), q_binom(m, k, &b).unwrap().substitute_inverse());
        if k >= 1 && k < m {
            let bi = qwhit_core::rational::to_i64(&b).unwrap();
            let lhs = q_binom(m, k, &b).unwrap();
            let rhs = q(-bi * k as i64) * q_binom(m - 1, k, &b).unwrap()
                + q(bi * (m - k) as i64) * q_binom(m - 1, k - 1, &b).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
