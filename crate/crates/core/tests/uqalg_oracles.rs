use proptest::prelude::*;
use qwhit_core::qarith::q_binom;
use qwhit_core::rational::{int, Rational};
use qwhit_core::rootsys::permutations;
use qwhit_core::uqalg::reps::{catalogue, coxeter_realization, rep_matrices};
use qwhit_core::uqalg::rmatrix::casimir;
use qwhit_core::uqalg::serre::words_of_degree;
use qwhit_core::uqalg::{rho_chi, serre_character_value, whittaker_action, Algebra, Character, Letter, Monomial, PBWElement, Side};
use qwhit_core::{build_root_system, CoxeterContext, LaurentScalar as S, Series};

fn algebra(series: Series, rank: usize, pi: Vec<usize>) -> Algebra {
    Algebra::new(CoxeterContext::new(build_root_system(series, rank).unwrap(), pi).unwrap()).unwrap()
}

fn unit(rank: usize, i: usize, sign: i64) -> Vec<Rational> {
    let mut v = vec![int(0); rank];
    v[i] = int(sign);
    v
}

fn generic_chi(rank: usize, side: Side) -> Character {
    let vals = [2, 3, 5, 7];
    Character::new((0..rank).map(|i| S::from_int(vals[i])).collect(), side).unwrap()
}

fn qd() -> S {
    S::q() - S::q().inv().unwrap()
}

#[test]
fn e_f_normal_form() {
    for (series, rank) in [(Series::A, 1), (Series::B, 2), (Series::G, 2)] {
        let alg = algebra(series, rank, (0..rank).collect());
        for i in 0..rank {
            let lhs = alg.normal_form(&[Letter::E(i), Letter::F(i)]).unwrap();
            let qi = S::q_int_pow(alg.ctx.rs.d[i]);
            let h = &(&alg.k(&unit(rank, i, 1)) - &alg.k(&unit(rank, i, -1))).scale(&(&qi - qi.inv().unwrap()).inv().unwrap());
            let expected = &alg.mul(&alg.f(i), &alg.e(i)).unwrap() + h;
            assert_eq!(lhs, expected);
        }
    }
}

#[test]
fn cross_relation_uses_cayley_exponent() {
    for pi in permutations(2) {
        let alg = algebra(Series::A, 2, pi);
        let c12 = alg.ctx.cayley[(0, 1)].clone();
        let lhs = alg.normal_form(&[Letter::E(0), Letter::F(1)]).unwrap();
        let rhs = alg.mul(&alg.f(1), &alg.e(0)).unwrap().scale(&S::q_pow(&-c12));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn cartan_relations() {
    let alg = algebra(Series::B, 2, vec![1, 0]);
    let lambda = vec![int(1) / int(2), int(-3)];
    for j in 0..2 {
        let pair = alg.weight_pairing_simple(&lambda, j);
        let lhs = alg.mul(&alg.k(&lambda), &alg.e(j)).unwrap();
        let rhs = alg.mul(&alg.e(j), &alg.k(&lambda)).unwrap().scale(&S::q_pow(&pair));
        assert_eq!(lhs, rhs);
        let lhs = alg.mul(&alg.k(&lambda), &alg.f(j)).unwrap();
        let rhs = alg.mul(&alg.f(j), &alg.k(&lambda)).unwrap().scale(&S::q_pow(&-pair));
        assert_eq!(lhs, rhs);
    }
}

fn letter(rank: usize) -> impl Strategy<Value = Letter> {
    prop_oneof![
        (0..rank).prop_map(Letter::E),
        (0..rank).prop_map(Letter::F),
        prop::collection::vec(-1i64..=1, rank).prop_map(|w| Letter::K(w.into_iter().map(int).collect())),
    ]
}

fn word(rank: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(letter(rank), 0..4)
}

fn associativity(alg: &Algebra, x: &[Letter], y: &[Letter], z: &[Letter]) -> Result<(), TestCaseError> {
    let (x, y, z) = (
        alg.normal_form(x).unwrap(),
        alg.normal_form(y).unwrap(),
        alg.normal_form(z).unwrap(),
    );
    let left = alg.mul(&alg.mul(&x, &y).unwrap(), &z).unwrap();
    let right = alg.mul(&x, &alg.mul(&y, &z).unwrap()).unwrap();
    prop_assert_eq!(&left, &right);
    prop_assert!(alg.is_normal(&left).unwrap());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]
    #[test]
    fn associative_a1(x in word(1), y in word(1), z in word(1)) {
        associativity(&algebra(Series::A, 1, vec![0]), &x, &y, &z)?;
    }

    #[test]
    fn associative_a2(x in word(2), y in word(2), z in word(2), flip in any::<bool>()) {
        let pi = if flip { vec![1, 0] } else { vec![0, 1] };
        associativity(&algebra(Series::A, 2, pi), &x, &y, &z)?;
    }

    #[test]
    fn associative_b2(x in word(2), y in word(2), z in word(2), flip in any::<bool>()) {
        let pi = if flip { vec![1, 0] } else { vec![0, 1] };
        associativity(&algebra(Series::B, 2, pi), &x, &y, &z)?;
    }

    #[test]
    fn representations_are_homomorphisms(x in word(2), y in word(2), flip in any::<bool>(), second in any::<bool>()) {
        let pi = if flip { vec![1, 0] } else { vec![0, 1] };
        let alg = algebra(Series::A, 2, pi);
        let rep = rep_matrices(&alg.ctx, if second { "V2" } else { "V1" }).unwrap();
        let (x, y) = (alg.normal_form(&x).unwrap(), alg.normal_form(&y).unwrap());
        let xy = alg.mul(&x, &y).unwrap();
        prop_assert_eq!(rep.eval(&xy), &rep.eval(&x) * &rep.eval(&y));
    }
}

#[test]
fn a2_root_vector_is_commutator() {
    let alg = algebra(Series::A, 2, vec![0, 1]);
    let rv = alg.root_vectors().unwrap();
    let k = rv.position(&[1, 1]).unwrap();
    let comm = &alg.mul(&alg.e(0), &alg.e(1)).unwrap() - &alg.mul(&alg.e(1), &alg.e(0)).unwrap();
    assert_eq!(rv.e[k], comm);
    assert_eq!(rv.e[rv.position(&[1, 0]).unwrap()], alg.e(0));
}

#[test]
fn characters_vanish_on_nonsimple_root_vectors() {
    for rank in [2, 3] {
        for pi in permutations(rank) {
            let alg = algebra(Series::A, rank, pi.clone());
            let rv = alg.root_vectors().unwrap();
            let chi_e = generic_chi(rank, Side::E);
            let chi_f = generic_chi(rank, Side::F);
            for (k, beta) in rv.order.iter().enumerate() {
                let ve = chi_e.apply(&rv.e[k]).unwrap();
                let vf = chi_f.apply(&rv.f[k]).unwrap();
                match alg.ctx.rs.is_simple(beta) {
                    Some(i) => {
                        assert_eq!(ve, chi_e.values[i]);
                        assert_eq!(vf, chi_f.values[i]);
                    }
                    None => {
                        assert!(ve.is_zero(), "A{} {:?} {:?}", rank, pi, beta);
                        assert!(vf.is_zero(), "A{} {:?} {:?}", rank, pi, beta);
                    }
                }
            }
        }
    }
}

#[test]
fn serre_character_identities() {
    for (series, rank) in [(Series::A, 2), (Series::A, 3), (Series::B, 2), (Series::G, 2)] {
        for pi in permutations(rank) {
            let ctx = CoxeterContext::new(build_root_system(series, rank).unwrap(), pi).unwrap();
            let chi = generic_chi(rank, Side::E);
            for i in 0..rank {
                for j in 0..rank {
                    if i != j {
                        assert!(serre_character_value(&ctx, &chi, i, j).unwrap().is_zero());
                    }
                }
            }
        }
    }
    // Hand expansion for A_2.
    let ctx = CoxeterContext::new(build_root_system(Series::A, 2).unwrap(), vec![0, 1]).unwrap();
    let c12 = ctx.cayley[(0, 1)].clone();
    let mut acc = S::zero();
    for r in 0..=2u32 {
        let t = q_binom(2, r, &int(1)).unwrap() * S::q_pow(&(&c12 * int(r as i64)));
        acc = if r % 2 == 0 { acc + t } else { acc - t };
    }
    assert!(acc.is_zero());
}

#[test]
fn characters_respect_deformed_serre_relations() {
    for (series, rank, degree) in [
        (Series::A, 2, vec![2u32, 1]),
        (Series::B, 2, vec![1, 3]),
        (Series::B, 2, vec![3, 1]),
        (Series::G, 2, vec![4, 1]),
        (Series::G, 2, vec![1, 2]),
    ] {
        for pi in permutations(rank) {
            let alg = algebra(series, rank, pi);
            for side in [Side::E, Side::F] {
                let chi = generic_chi(rank, side);
                let red = alg.reducer(side);
                for w in words_of_degree(&degree) {
                    let nf = red.normal_form(&w).unwrap();
                    let via_nf = nf.iter().fold(S::zero(), |acc, (u, c)| acc + c * chi.on_word(u));
                    assert_eq!(via_nf, chi.on_word(&w));
                }
            }
        }
    }
}

#[test]
fn apply_character_examples() {
    let alg = algebra(Series::A, 2, vec![0, 1]);
    let chi = generic_chi(2, Side::E);
    assert!(chi.apply(&alg.one()).unwrap().is_one());
    let e12 = alg.mul(&alg.e(0), &alg.e(1)).unwrap();
    assert_eq!(chi.apply(&e12).unwrap(), S::from_int(6));
    assert!(chi.apply(&alg.f(0)).is_err());
    assert!(Character::new(vec![S::one(), S::zero()], Side::E).is_err());
}

#[test]
fn projection_examples() {
    let alg = algebra(Series::A, 2, vec![0, 1]);
    let chi = generic_chi(2, Side::E);
    let lambda = vec![int(1), int(-2)];
    let b_minus = alg.mul(&alg.f(1), &alg.k(&lambda)).unwrap();
    assert_eq!(rho_chi(&b_minus, &chi).unwrap(), b_minus);
    let x = alg.product(&[&alg.f(0), &alg.k(&lambda), &alg.e(0)]).unwrap();
    let expected = alg.mul(&alg.f(0), &alg.k(&lambda)).unwrap().scale(&chi.values[0]);
    assert_eq!(rho_chi(&x, &chi).unwrap(), expected);

    assert!(whittaker_action(&alg, &alg.e(0), &alg.one(), &chi).unwrap().is_zero());
    let acted = whittaker_action(&alg, &alg.e(0), &alg.f(0), &chi).unwrap();
    let h = (&alg.k(&unit(2, 0, 1)) - &alg.k(&unit(2, 0, -1))).scale(&qd().inv().unwrap());
    assert_eq!(acted, h);
}

#[test]
fn projection_is_multiplicative_on_casimirs() {
    for rank in [1, 2] {
        let alg = algebra(Series::A, rank, (0..rank).collect());
        let chi = generic_chi(rank, Side::E);
        let cs: Vec<PBWElement> = catalogue(&alg.ctx)
            .iter()
            .map(|n| casimir(&alg, &rep_matrices(&alg.ctx, n).unwrap()).unwrap())
            .collect();
        for a in &cs {
            for b in &cs {
                let lhs = rho_chi(&alg.mul(a, b).unwrap(), &chi).unwrap();
                let rhs = alg.mul(&rho_chi(a, &chi).unwrap(), &rho_chi(b, &chi).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
            let rho = rho_chi(a, &chi).unwrap();
            assert!(rho.has_no_e());
            for i in 0..rank {
                assert!(whittaker_action(&alg, &alg.e(i), &rho, &chi).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn casimir_degenerates_to_cartan_trace() {
    let alg = algebra(Series::A, 1, vec![0]);
    let rep = rep_matrices(&alg.ctx, "V1").unwrap();
    let c = casimir(&alg, &rep).unwrap();
    let cartan: Vec<(&Monomial, &S)> = c.terms().filter(|(m, _)| m.e.is_empty() && m.f.is_empty()).collect();
    assert!(!cartan.is_empty());
    // Setting every K to 1 leaves the q^{2ρ}-weighted dimension.
    let degenerate: S = cartan.iter().fold(S::zero(), |acc, (_, c)| acc + *c);
    assert_eq!(degenerate, S::q() + S::q().inv().unwrap());
}

#[test]
fn representation_relations_fix_cross_sign() {
    for rank in 1..=3 {
        for pi in permutations(rank) {
            let ctx = CoxeterContext::new(build_root_system(Series::A, rank).unwrap(), pi).unwrap();
            for name in catalogue(&ctx) {
                rep_matrices(&ctx, &name).unwrap().check_relations(&ctx).unwrap();
            }
            let v = rep_matrices(&ctx, "V1").unwrap();
            let t = coxeter_realization(&ctx, "V1xV1", v.standard().tensor(v.standard(), &ctx.rs));
            assert!(t.failing_relations(&ctx, -1).is_empty());
            if rank >= 2 {
                assert!(!t.failing_relations(&ctx, 1).is_empty());
            }
        }
    }
    let ctx = CoxeterContext::new(build_root_system(Series::B, 2).unwrap(), vec![0, 1]).unwrap();
    assert!(rep_matrices(&ctx, "V1").is_err());
}
