use proptest::prelude::*;
use qwhit_core::rational::{int, rat, Rational};
use qwhit_core::toda::{DifferenceOperator, TodaSystem};
use qwhit_core::uqalg::{Character, Side};
use qwhit_core::{build_root_system, CoxeterContext, LaurentScalar as S, Series};

fn shift(a: i64, b: i64, d: i64) -> Vec<Rational> {
    vec![rat(a, d), rat(b, d)]
}

#[test]
fn shift_and_coordinate_commutators() {
    let rs = build_root_system(Series::A, 2).unwrap();
    let lam = shift(2, 1, 3);
    let mu = shift(-1, 4, 1);
    let (tl, tm) = (DifferenceOperator::shift(&lam), DifferenceOperator::shift(&mu));
    assert!(tl.commutator(&tm, &rs).is_zero());
    let z1 = DifferenceOperator::z(vec![1, 0]);
    let c = z1.commutator(&tl, &rs);
    // T_λ z_1 = q^{−(λ, α_1)} z_1 T_λ.
    let pair = rs.pairing(&lam, &[int(1), int(0)]);
    let expected = DifferenceOperator::term(vec![1, 0], lam.clone(), S::one() - S::q_pow(&-pair));
    assert_eq!(c, expected);
}

#[test]
fn a3_hamiltonians_commute() {
    let ctx = CoxeterContext::new(build_root_system(Series::A, 3).unwrap(), vec![2, 0, 1]).unwrap();
    let chi = Character::from_rationals(&[int(1), rat(-1, 2), int(2)], Side::E).unwrap();
    let chibar = Character::from_rationals(&[int(3), int(1), rat(1, 3)], Side::F).unwrap();
    let sys = TodaSystem::new(ctx, chi, chibar).unwrap();
    let hs = sys.hamiltonians().unwrap();
    assert_eq!(hs.len(), 3);
    assert!(sys.noncommuting_pairs(&hs).is_empty());
}

fn operator() -> impl Strategy<Value = DifferenceOperator> {
    prop::collection::vec(((0i64..3, 0i64..3), (-3i64..=3, -3i64..=3, 1i64..=2), -4i64..=4), 1..4).prop_map(|terms| {
        let mut d = DifferenceOperator::zero(2);
        for ((z1, z2), (a, b, den), c) in terms {
            d.add_term(shift(a, b, den), vec![z1, z2], S::from_int(c));
        }
        d
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]
    #[test]
    fn composition_is_associative(x in operator(), y in operator(), z in operator()) {
        let rs = build_root_system(Series::A, 2).unwrap();
        prop_assert_eq!(x.compose(&y, &rs).compose(&z, &rs), x.compose(&y.compose(&z, &rs), &rs));
        prop_assert!((&x.commutator(&y, &rs) + &y.commutator(&x, &rs)).is_zero());
    }
}
