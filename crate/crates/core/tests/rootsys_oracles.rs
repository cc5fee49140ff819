use proptest::prelude::*;
use qwhit_core::rational::{int, Rational};
use qwhit_core::rootsys::{coxeter_matrix, epsilon_matrix, permutations, Root};
use qwhit_core::{build_root_system, CoxeterContext, QMatrix, RootSystemData, Series};

fn ctx(series: Series, rank: usize, pi: Vec<usize>) -> CoxeterContext {
    CoxeterContext::new(build_root_system(series, rank).unwrap(), pi).unwrap()
}

/// Reflection `s_i` in simple-root coordinates built from the Cartan matrix alone.
fn reflection(rs: &RootSystemData, i: usize) -> QMatrix {
    let l = rs.rank;
    QMatrix::from_fn(l, l, |r, c| {
        // s_i α_c = α_c − a_ic α_i
        let mut v = if r == c { int(1) } else { int(0) };
        if r == i {
            v -= int(rs.cartan[i][c]);
        }
        v
    })
}

fn closure_count(rs: &RootSystemData) -> usize {
    let l = rs.rank;
    let mut seen: Vec<Root> = (0..l).map(|i| rs.simple_root(i)).collect();
    let mut k = 0;
    while k < seen.len() {
        for i in 0..l {
            let r = seen[k].clone();
            // s_i β = β − <β, α_i^∨> α_i
            let pair: i64 = (0..l).map(|j| r[j] * rs.cartan[i][j]).sum();
            let mut img = r.clone();
            img[i] -= pair;
            if !seen.contains(&img) {
                seen.push(img);
            }
        }
        k += 1;
    }
    seen.len()
}

#[test]
fn a1_a2_data() {
    let a1 = build_root_system(Series::A, 1).unwrap();
    assert_eq!(a1.cartan, vec![vec![2]]);
    assert_eq!(a1.positive_roots, vec![vec![1]]);
    let a2 = build_root_system(Series::A, 2).unwrap();
    assert_eq!(a2.cartan, vec![vec![2, -1], vec![-1, 2]]);
    assert_eq!(a2.d, vec![1, 1]);
    assert_eq!(a2.num_positive(), 3);
    let mut roots = a2.positive_roots.clone();
    roots.sort();
    assert_eq!(roots, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
}

#[test]
fn reflection_closure_counts() {
    for (series, rank, n) in [
        (Series::G, 2, 6),
        (Series::B, 2, 4),
        (Series::A, 3, 6),
        (Series::B, 3, 9),
        (Series::C, 3, 9),
        (Series::D, 4, 12),
    ] {
        let rs = build_root_system(series, rank).unwrap();
        assert_eq!(rs.num_positive(), n, "{}{}", series, rank);
        assert_eq!(closure_count(&rs), 2 * n, "{}{}", series, rank);
    }
    let g2 = build_root_system(Series::G, 2).unwrap();
    let mut d = g2.d.clone();
    d.sort();
    assert_eq!(d, vec![1, 3]);
}

#[test]
fn unsupported_rank_is_an_error() {
    assert!(build_root_system(Series::G, 3).is_err());
    assert!(build_root_system(Series::A, 0).is_err());
}

#[test]
fn coxeter_matrix_is_reflection_product() {
    let a1 = build_root_system(Series::A, 1).unwrap();
    assert_eq!(coxeter_matrix(&a1, &[0]).unwrap(), QMatrix::from_rows(vec![vec![int(-1)]]));
    for (series, rank) in [(Series::A, 2), (Series::A, 3), (Series::B, 2), (Series::G, 2)] {
        let rs = build_root_system(series, rank).unwrap();
        for pi in permutations(rank) {
            let expected = pi.iter().fold(QMatrix::identity(rank), |acc, &i| &acc * &reflection(&rs, i));
            assert_eq!(coxeter_matrix(&rs, &pi).unwrap(), expected, "{}{} {:?}", series, rank, pi);
        }
    }
}

#[test]
fn cayley_examples() {
    let a1 = ctx(Series::A, 1, vec![0]);
    assert_eq!(a1.cayley, QMatrix::from_rows(vec![vec![int(0)]]));
    let a2 = ctx(Series::A, 2, vec![0, 1]);
    assert_eq!(a2.cayley, QMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(-1), int(0)]]));
    let b2 = ctx(Series::B, 2, vec![0, 1]);
    let b12 = int(b2.rs.form[0][1]);
    assert_eq!(b2.cayley[(0, 1)], -&b12);
    assert_eq!(b2.cayley[(1, 0)], b12);
    assert_eq!(b2.cayley[(0, 0)], int(0));
}

#[test]
fn cayley_identity_all_permutations() {
    for (series, rank) in [(Series::A, 1), (Series::A, 2), (Series::A, 3), (Series::B, 2), (Series::G, 2)] {
        let rs = build_root_system(series, rank).unwrap();
        for pi in permutations(rank) {
            let c = ctx(series, rank, pi.clone());
            // Direct (1+s)(1−s)^{-1}, then pair with the form.
            let id = QMatrix::identity(rank);
            let op = &(&id + &c.s_matrix) * &(&id - &c.s_matrix).inverse().unwrap();
            let eps = epsilon_matrix(&pi);
            for i in 0..rank {
                for j in 0..rank {
                    let direct: Rational = (0..rank).map(|k| &op[(k, i)] * int(rs.form[k][j])).sum();
                    assert_eq!(direct, c.cayley[(i, j)]);
                    assert_eq!(c.cayley[(i, j)], int(eps[i][j] * rs.form[i][j]));
                }
            }
        }
    }
}

#[test]
fn twist_examples() {
    let a1 = ctx(Series::A, 1, vec![0]);
    let s = QMatrix::from_rows(vec![vec![int(3)]]);
    assert_eq!(a1.solve_twist(&s).unwrap()[(0, 0)], int(3) / int(2));
    let a2 = ctx(Series::A, 2, vec![0, 1]);
    let n = a2.solve_twist(&QMatrix::zeros(2, 2)).unwrap();
    assert!(a2.twist_residual(&n).is_zero());
    assert!(a2
        .solve_twist(&QMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(0), int(0)]]))
        .is_err());
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]
    #[test]
    fn twist_solves_defining_equation(
        series in prop::sample::select(vec![(Series::A, 3), (Series::B, 2), (Series::G, 2)]),
        entries in prop::collection::vec(small_rational(), 6),
        perm in 0usize..6,
    ) {
        let (series, rank) = series;
        let pis = permutations(rank);
        let pi = pis[perm % pis.len()].clone();
        let c = ctx(series, rank, pi);
        let mut s = QMatrix::zeros(rank, rank);
        let mut k = 0;
        for i in 0..rank {
            for j in i..rank {
                s[(i, j)] = entries[k % entries.len()].clone();
                s[(j, i)] = entries[k % entries.len()].clone();
                k += 1;
            }
        }
        let n = c.solve_twist(&s).unwrap();
        for i in 0..rank {
            for j in 0..rank {
                let lhs = &n[(i, j)] * int(c.rs.d[j]) - &n[(j, i)] * int(c.rs.d[i]);
                prop_assert_eq!(lhs, c.cayley[(i, j)].clone());
            }
        }
    }
}

fn convex(order: &[Root]) -> bool {
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            let sum: Root = order[a].iter().zip(&order[b]).map(|(x, y)| x + y).collect();
            if let Some(p) = order.iter().position(|r| *r == sum) {
                if !(a < p && p < b) {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn a2_normal_ordering_by_brute_force() {
    let c = ctx(Series::A, 2, vec![0, 1]);
    let roots = c.rs.positive_roots.clone();
    let mut candidates = Vec::new();
    for p in permutations(3) {
        let order: Vec<Root> = p.iter().map(|&i| roots[i].clone()).collect();
        let first1 = order.iter().position(|r| *r == vec![1, 0]).unwrap();
        let first2 = order.iter().position(|r| *r == vec![0, 1]).unwrap();
        if convex(&order) && first1 < first2 {
            candidates.push(order);
        }
    }
    assert_eq!(candidates, vec![vec![vec![1, 0], vec![1, 1], vec![0, 1]]]);
    assert_eq!(c.normal_ordering().unwrap(), candidates[0]);
    assert_eq!(ctx(Series::A, 1, vec![0]).normal_ordering().unwrap(), vec![vec![1]]);
}

#[test]
fn normal_orderings_are_convex() {
    for (series, rank) in [(Series::A, 3), (Series::B, 2), (Series::G, 2), (Series::C, 3), (Series::D, 4)] {
        let rs = build_root_system(series, rank).unwrap();
        for pi in permutations(rank) {
            let c = ctx(series, rank, pi);
            let order = c.normal_ordering().unwrap();
            assert_eq!(order.len(), rs.num_positive());
            assert!(convex(&order), "{}{} {:?}", series, rank, c.pi);
        }
    }
}

#[test]
fn coxeter_orbits_have_coxeter_number_size() {
    for (series, rank, h) in [(Series::A, 1, 2), (Series::A, 2, 3), (Series::D, 4, 6), (Series::G, 2, 6)] {
        let c = ctx(series, rank, (0..rank).collect());
        let orbits = c.coxeter_orbits();
        assert_eq!(orbits.len(), rank);
        for o in &orbits {
            assert_eq!(o.len(), h);
            for w in o.windows(2) {
                let img: Root = (0..rank)
                    .map(|i| (0..rank).map(|k| &c.s_matrix[(i, k)] * int(w[0][k])).sum::<Rational>())
                    .map(|x| qwhit_core::rational::to_i64(&x).unwrap())
                    .collect();
                assert_eq!(img, w[1]);
            }
        }
    }
}
