use criterion::{criterion_group, criterion_main, Criterion};
use qwhit_core::crosssec::SlGroup;
use qwhit_core::rational::int;
use qwhit_core::toda::TodaSystem;
use qwhit_core::uqalg::reps::rep_matrices;
use qwhit_core::uqalg::rmatrix::{casimir, r_matrix};
use qwhit_core::uqalg::{Algebra, Character, Letter, Side};
use qwhit_core::{build_root_system, CoxeterContext, LaurentScalar, QMatrix, Series};
use std::hint::black_box;

fn ctx(series: Series, rank: usize) -> CoxeterContext {
    let rs = build_root_system(series, rank).unwrap();
    CoxeterContext::new(rs, (0..rank).collect()).unwrap()
}

fn scalars(c: &mut Criterion) {
    let a = LaurentScalar::from_terms(&[(int(1), int(3)), (int(-2), int(1)), (int(5), int(-2))]);
    let b = &LaurentScalar::q() - &LaurentScalar::q_int_pow(-1);
    c.bench_function("laurent_ratio_arith", |bn| {
        bn.iter(|| {
            let r = &(&a * &b.inv().unwrap()) + &b;
            black_box(&r * &r)
        })
    });
}

fn normal_form(c: &mut Criterion) {
    let alg = Algebra::new(ctx(Series::B, 2)).unwrap();
    let word = [
        Letter::E(0),
        Letter::F(1),
        Letter::E(1),
        Letter::E(0),
        Letter::F(0),
        Letter::E(1),
        Letter::F(1),
    ];
    c.bench_function("normal_form_b2_word7", |bn| bn.iter(|| black_box(alg.normal_form(&word).unwrap())));
}

fn casimir_a2(c: &mut Criterion) {
    let alg = Algebra::new(ctx(Series::A, 2)).unwrap();
    let v = rep_matrices(&alg.ctx, "V1").unwrap();
    c.bench_function("r_matrix_a2_v1", |bn| bn.iter(|| black_box(r_matrix(&alg, &v, &v).unwrap())));
    c.bench_function("casimir_a2_v1", |bn| bn.iter(|| black_box(casimir(&alg, &v).unwrap())));
}

fn toda_a2(c: &mut Criterion) {
    let chi = Character::from_rationals(&[int(1), int(1)], Side::E).unwrap();
    let chibar = Character::from_rationals(&[int(1), int(1)], Side::F).unwrap();
    c.bench_function("toda_hamiltonians_a2", |bn| {
        bn.iter(|| {
            let sys = TodaSystem::new(ctx(Series::A, 2), chi.clone(), chibar.clone()).unwrap();
            black_box(sys.hamiltonians().unwrap())
        })
    });
}

fn cross_section(c: &mut Criterion) {
    let g = SlGroup::new(4).unwrap();
    let n = 4;
    let l = QMatrix::from_fn(n, n, |i, j| {
        if i == j {
            int(1)
        } else if i < j {
            int((i + 2 * j) as i64 + 1)
        } else {
            int(0)
        }
    });
    let l = &g.slice_point(&[int(1), int(-2), int(3)]) * &l;
    c.bench_function("cross_section_sl4", |bn| bn.iter(|| black_box(g.cross_section(&l).unwrap())));
}

criterion_group!(benches, scalars, normal_form, casimir_a2, toda_a2, cross_section);
criterion_main!(benches);
