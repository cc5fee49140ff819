//! Cartan data, Weyl group action, Coxeter elements and their Cayley transforms.
//!
//! Conventions: `a_ij = 2(α_i, α_j)/(α_i, α_i)`, `b_ij = d_i a_ij = (α_i, α_j)`,
//! and `s_i(α_j) = α_j − a_ij α_i`. The smallest `d_i` is 1. For `G2` the short
//! root is `α_1`, so `d = (1, 3)`, `a_12 = −3`, `a_21 = −1`.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, QMatrix};
use crate::rational::{int, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    F,
    G,
}

impl FromStr for Series {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            "F" => Ok(Series::F),
            "G" => Ok(Series::G),
            other => Err(Error::Unsupported {
                series: other.to_string(),
                rank: 0,
            }),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

pub type Root = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemData {
    pub series: Series,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub d: Vec<i64>,
    pub form: Vec<Vec<i64>>,
    /// Sorted by height, then lexicographically.
    pub positive_roots: Vec<Root>,
    pub heights: Vec<i64>,
}

pub fn build_root_system(series: Series, rank: usize) -> Result<RootSystemData> {
    let unsupported = || Error::Unsupported {
        series: series.to_string(),
        rank,
    };
    let l = rank;
    let ok = match series {
        Series::A => (1..=6).contains(&l),
        Series::B | Series::C => (2..=6).contains(&l),
        Series::D => (4..=6).contains(&l),
        Series::F => l == 4,
        Series::G => l == 2,
    };
    if !ok {
        return Err(unsupported());
    }
    let mut a = vec![vec![0i64; l]; l];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    let mut d = vec![1i64; l];
    match series {
        Series::A => (0..l.saturating_sub(1)).for_each(|i| link(i, i + 1, -1, -1)),
        Series::B => {
            (0..l - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(l - 2, l - 1, -1, -2);
            d = vec![2; l];
            d[l - 1] = 1;
        }
        Series::C => {
            (0..l - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(l - 2, l - 1, -2, -1);
            d[l - 1] = 2;
        }
        Series::D => {
            (0..l - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(l - 3, l - 1, -1, -1);
        }
        Series::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
            d = vec![2, 2, 1, 1];
        }
        Series::G => {
            link(0, 1, -3, -1);
            d = vec![1, 3];
        }
    }
    let form: Vec<Vec<i64>> = (0..l).map(|i| (0..l).map(|j| d[i] * a[i][j]).collect()).collect();
    let positive_roots = close_under_reflections(&a);
    let heights = positive_roots.iter().map(|r| r.iter().sum()).collect();
    let rs = RootSystemData {
        series,
        rank,
        cartan: a,
        d,
        form,
        positive_roots,
        heights,
    };
    if rs.positive_roots.len() != classical_count(series, rank) {
        return Err(Error::Invariant(format!(
            "generated {} positive roots for {}{}",
            rs.positive_roots.len(),
            series,
            rank
        )));
    }
    Ok(rs)
}

fn classical_count(series: Series, l: usize) -> usize {
    match series {
        Series::A => l * (l + 1) / 2,
        Series::B | Series::C => l * l,
        Series::D => l * (l - 1),
        Series::F => 24,
        Series::G => 6,
    }
}

fn reflect(a: &[Vec<i64>], i: usize, beta: &[i64]) -> Root {
    let pairing: i64 = beta.iter().enumerate().map(|(j, b)| b * a[i][j]).sum();
    let mut out = beta.to_vec();
    out[i] -= pairing;
    out
}

fn close_under_reflections(a: &[Vec<i64>]) -> Vec<Root> {
    let l = a.len();
    let mut seen: BTreeSet<Root> = BTreeSet::new();
    let mut queue: VecDeque<Root> = VecDeque::new();
    for i in 0..l {
        let mut e = vec![0; l];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..l {
            let r = reflect(a, i, &beta);
            if r.iter().all(|&x| x >= 0) && r.iter().any(|&x| x > 0) && seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    let mut roots: Vec<Root> = seen.into_iter().collect();
    roots.sort_by(|x, y| {
        let hx: i64 = x.iter().sum();
        let hy: i64 = y.iter().sum();
        hx.cmp(&hy).then_with(|| y.cmp(x))
    });
    roots
}

impl RootSystemData {
    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn coxeter_number(&self) -> usize {
        2 * self.num_positive() / self.rank
    }

    pub fn cartan_matrix(&self) -> QMatrix {
        Matrix::from_fn(self.rank, self.rank, |i, j| int(self.cartan[i][j]))
    }

    pub fn form_matrix(&self) -> QMatrix {
        Matrix::from_fn(self.rank, self.rank, |i, j| int(self.form[i][j]))
    }

    /// `(x, y)` for vectors in simple-root coordinates.
    pub fn pairing(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rank {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                if self.form[i][j] != 0 && !y[j].is_zero() {
                    acc += &x[i] * &y[j] * int(self.form[i][j]);
                }
            }
        }
        acc
    }

    pub fn pairing_int(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut acc = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += x[i] * y[j] * self.form[i][j];
            }
        }
        acc
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut e = vec![0; self.rank];
        e[i] = 1;
        e
    }

    pub fn is_simple(&self, beta: &[i64]) -> Option<usize> {
        if beta.iter().sum::<i64>() == 1 {
            beta.iter().position(|&x| x == 1)
        } else {
            None
        }
    }

    pub fn is_root(&self, beta: &[i64]) -> bool {
        let neg: Root = beta.iter().map(|x| -x).collect();
        self.positive_roots.iter().any(|r| r.as_slice() == beta || *r == neg)
    }

    /// Matrix of `s_i`: column `j` holds the coordinates of `s_i(α_j)`.
    pub fn reflection_matrix(&self, i: usize) -> QMatrix {
        let mut m = QMatrix::identity(self.rank);
        for j in 0..self.rank {
            m[(i, j)] = &m[(i, j)] - int(self.cartan[i][j]);
        }
        m
    }

    pub fn reflect(&self, i: usize, beta: &[i64]) -> Root {
        reflect(&self.cartan, i, beta)
    }

    /// Fundamental weight `ω_i` in simple-root coordinates: `(ω_i, α_j) = d_j δ_ij`.
    pub fn fundamental_weight(&self, i: usize) -> Vec<Rational> {
        let binv = self.form_matrix().inverse().expect("form is nondegenerate");
        (0..self.rank).map(|k| &binv[(k, i)] * int(self.d[i])).collect()
    }

    /// Half the sum of positive roots.
    pub fn rho(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.rank];
        for r in &self.positive_roots {
            for (x, c) in v.iter_mut().zip(r) {
                *x += int(*c);
            }
        }
        v.into_iter().map(|x| x / int(2)).collect()
    }

    pub fn root_index(&self, beta: &[i64]) -> Option<usize> {
        self.positive_roots.iter().position(|r| r.as_slice() == beta)
    }
}

/// A Coxeter element `s_π = s_{π(1)} ⋯ s_{π(l)}` together with its derived data.
#[derive(Clone, Debug)]
pub struct CoxeterContext {
    pub rs: RootSystemData,
    /// Zero-based permutation.
    pub pi: Vec<usize>,
    pub s_matrix: QMatrix,
    /// Matrix of `(1 + s)/(1 − s)` in simple-root coordinates.
    pub cayley_operator: QMatrix,
    /// `c_ij = ((1 + s)/(1 − s) α_i, α_j)`.
    pub cayley: QMatrix,
    pub epsilon: Vec<Vec<i64>>,
    pub twist: QMatrix,
    pub coxeter_number: usize,
}

fn validate_permutation(pi: &[usize], l: usize) -> Result<()> {
    let set: BTreeSet<usize> = pi.iter().copied().collect();
    if pi.len() != l || set.len() != l || pi.iter().any(|&x| x >= l) {
        return Err(Error::InvalidInput(format!("{:?} is not a permutation of 0..{}", pi, l)));
    }
    Ok(())
}

/// Product of reflections `s_{π(1)} ⋯ s_{π(l)}`.
pub fn coxeter_matrix_product(rs: &RootSystemData, pi: &[usize]) -> Result<QMatrix> {
    validate_permutation(pi, rs.rank)?;
    Ok(pi
        .iter()
        .fold(QMatrix::identity(rs.rank), |acc, &i| &acc * &rs.reflection_matrix(i)))
}

/// Triangular form `P (I + U)^{-1} (−I − L) P^T`, where `U` and `L` are the strictly
/// upper and lower parts of the Cartan matrix with rows and columns listed in π-order
/// and `P` maps π-positions back to indices.
pub fn coxeter_matrix(rs: &RootSystemData, pi: &[usize]) -> Result<QMatrix> {
    validate_permutation(pi, rs.rank)?;
    let l = rs.rank;
    let ap = Matrix::from_fn(l, l, |i, j| int(rs.cartan[pi[i]][pi[j]]));
    let u = Matrix::from_fn(l, l, |i, j| if i < j { ap[(i, j)].clone() } else { Rational::zero() });
    let lo = Matrix::from_fn(l, l, |i, j| if i > j { ap[(i, j)].clone() } else { Rational::zero() });
    let id = QMatrix::identity(l);
    let inner = &(&id + &u).inverse().expect("unitriangular") * &(&(-&id) - &lo);
    let p = Matrix::from_fn(l, l, |i, k| if pi[k] == i { Rational::one() } else { Rational::zero() });
    let s = &(&p * &inner) * &p.transpose();
    let product = coxeter_matrix_product(rs, pi)?;
    if s != product {
        return Err(Error::Invariant(
            "triangular Coxeter formula disagrees with reflection product".into(),
        ));
    }
    Ok(s)
}

/// `ε_ij = −1` if `i` precedes `j` in π, `+1` if it follows, and 0 on the diagonal.
pub fn epsilon_matrix(pi: &[usize]) -> Vec<Vec<i64>> {
    let l = pi.len();
    let mut pos = vec![0; l];
    for (k, &i) in pi.iter().enumerate() {
        pos[i] = k;
    }
    (0..l)
        .map(|i| (0..l).map(|j| (pos[i] as i64 - pos[j] as i64).signum()).collect())
        .collect()
}

impl CoxeterContext {
    pub fn new(rs: RootSystemData, pi: Vec<usize>) -> Result<Self> {
        let l = rs.rank;
        let s = coxeter_matrix(&rs, &pi)?;
        let id = QMatrix::identity(l);
        let one_minus = &id - &s;
        let inv = one_minus.inverse().ok_or_else(|| Error::Invariant("1 − s is singular".into()))?;
        let cayley_operator = &(&id + &s) * &inv;
        let cayley = &cayley_operator.transpose() * &rs.form_matrix();
        let epsilon = epsilon_matrix(&pi);
        let h = rs.coxeter_number();
        let mut ctx = CoxeterContext {
            rs,
            pi,
            s_matrix: s,
            cayley_operator,
            cayley,
            epsilon,
            twist: QMatrix::zeros(l, l),
            coxeter_number: h,
        };
        ctx.twist = ctx.solve_twist(&QMatrix::zeros(l, l))?;
        Ok(ctx)
    }

    pub fn standard(series: Series, rank: usize) -> Result<Self> {
        Self::new(build_root_system(series, rank)?, (0..rank).collect())
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    /// `(Cx, y)` where `C = (1 + s)/(1 − s)`: `Σ x_i y_j c_ij`.
    pub fn cayley_pairing(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                if !self.cayley[(i, j)].is_zero() {
                    acc += &x[i] * &y[j] * &self.cayley[(i, j)];
                }
            }
        }
        acc
    }

    pub fn cayley_pairing_int(&self, x: &[i64], y: &[i64]) -> Rational {
        let xr: Vec<Rational> = x.iter().map(|&v| int(v)).collect();
        let yr: Vec<Rational> = y.iter().map(|&v| int(v)).collect();
        self.cayley_pairing(&xr, &yr)
    }

    /// `C` applied to a vector in simple-root coordinates.
    pub fn apply_cayley(&self, x: &[Rational]) -> Vec<Rational> {
        (0..self.rank())
            .map(|i| (0..self.rank()).fold(Rational::zero(), |acc, k| acc + &self.cayley_operator[(i, k)] * &x[k]))
            .collect()
    }

    /// Entrywise `ε_ij b_ij`.
    pub fn epsilon_form(&self) -> QMatrix {
        let l = self.rank();
        Matrix::from_fn(l, l, |i, j| int(self.epsilon[i][j] * self.rs.form[i][j]))
    }

    /// General solution `n_ji = ½(−ε_ij a_ij + s_ij / d_i)` of `d_j n_ij − d_i n_ji = c_ij`.
    pub fn solve_twist(&self, s_sym: &QMatrix) -> Result<QMatrix> {
        let l = self.rank();
        if s_sym.rows() != l || *s_sym != s_sym.transpose() {
            return Err(Error::InvalidInput("twist parameter must be a symmetric l×l matrix".into()));
        }
        let mut n = QMatrix::zeros(l, l);
        for i in 0..l {
            for j in 0..l {
                let v = (int(-self.epsilon[i][j] * self.rs.cartan[i][j]) + &s_sym[(i, j)] / int(self.rs.d[i])) / int(2);
                n[(j, i)] = v;
            }
        }
        Ok(n)
    }

    /// Residual `d_j n_ij − d_i n_ji − c_ij`.
    pub fn twist_residual(&self, n: &QMatrix) -> QMatrix {
        let l = self.rank();
        Matrix::from_fn(l, l, |i, j| {
            &n[(i, j)] * int(self.rs.d[j]) - &n[(j, i)] * int(self.rs.d[i]) - &self.cayley[(i, j)]
        })
    }

    /// A convex ordering of the positive roots from a reduced word of the longest
    /// element beginning with a word for `s_π`, with simple roots in the order of
    /// that word. The word is π itself when possible, otherwise another ordering
    /// of the simple reflections with the same product (commuting reflections swapped).
    pub fn normal_ordering(&self) -> Result<Vec<Root>> {
        if let Some(order) = self.ordering_for_word(&self.pi) {
            return Ok(order);
        }
        for word in permutations(self.rank()) {
            if word != self.pi && self.same_coxeter_element(&word) {
                if let Some(order) = self.ordering_for_word(&word) {
                    return Ok(order);
                }
            }
        }
        Err(Error::Invariant("no reduced word of w0 compatible with s_π".into()))
    }

    fn same_coxeter_element(&self, word: &[usize]) -> bool {
        coxeter_matrix_product(&self.rs, word).is_ok_and(|m| m == self.s_matrix)
    }

    fn ordering_for_word(&self, word: &[usize]) -> Option<Vec<Root>> {
        let rs = &self.rs;
        let l = rs.rank;
        let mut search = OrderSearch {
            rs,
            pi: word,
            dead: HashSet::new(),
        };
        // Columns of w: w[i] = w(α_i).
        let mut w: Vec<Root> = (0..l).map(|i| rs.simple_root(i)).collect();
        let mut roots = Vec::new();
        let mut next = 0;
        for &i in word {
            let beta = w[i].clone();
            next = search.advance(next, &beta)?;
            roots.push(beta);
            w = right_reflect(rs, &w, i);
        }
        if !search.extend(&mut roots, w, next) {
            return None;
        }
        debug_assert!(is_convex(rs, &roots));
        Some(roots)
    }

    /// Orbits of the cyclic group generated by `s` on the full root system.
    pub fn coxeter_orbits(&self) -> Vec<Vec<Root>> {
        let mut all: Vec<Root> = self.rs.positive_roots.clone();
        all.extend(self.rs.positive_roots.iter().map(|r| r.iter().map(|x| -x).collect::<Root>()));
        let mut seen: BTreeSet<Root> = BTreeSet::new();
        let mut orbits = Vec::new();
        for r in all {
            if seen.contains(&r) {
                continue;
            }
            let mut orbit = vec![r.clone()];
            seen.insert(r.clone());
            let mut cur = apply_int(&self.s_matrix, &r);
            while cur != r {
                seen.insert(cur.clone());
                orbit.push(cur.clone());
                cur = apply_int(&self.s_matrix, &cur);
            }
            orbits.push(orbit);
        }
        orbits
    }
}

struct OrderSearch<'a> {
    rs: &'a RootSystemData,
    pi: &'a [usize],
    dead: HashSet<(u64, usize)>,
}

impl OrderSearch<'_> {
    /// Position in π after accepting `beta`, or `None` if a simple root arrives out of order.
    fn advance(&self, next: usize, beta: &[i64]) -> Option<usize> {
        match self.rs.is_simple(beta) {
            None => Some(next),
            Some(i) => self.pi[next..].iter().position(|&j| j == i).map(|k| next + k + 1),
        }
    }

    fn key(&self, roots: &[Root]) -> u64 {
        roots
            .iter()
            .map(|r| 1u64 << self.rs.root_index(r).expect("positive root"))
            .fold(0, |a, b| a | b)
    }

    fn extend(&mut self, roots: &mut Vec<Root>, w: Vec<Root>, next: usize) -> bool {
        if roots.len() == self.rs.num_positive() {
            return true;
        }
        let key = (self.key(roots), next);
        if self.dead.contains(&key) {
            return false;
        }
        for i in 0..self.rs.rank {
            let beta = w[i].clone();
            if beta.iter().any(|&x| x < 0) {
                continue;
            }
            let Some(nx) = self.advance(next, &beta) else { continue };
            roots.push(beta);
            if self.extend(roots, right_reflect(self.rs, &w, i), nx) {
                return true;
            }
            roots.pop();
        }
        self.dead.insert(key);
        false
    }
}

/// Columns of `w·s_i` given the columns of `w`.
fn right_reflect(rs: &RootSystemData, w: &[Root], i: usize) -> Vec<Root> {
    (0..rs.rank)
        .map(|j| {
            let a = rs.cartan[i][j];
            w[j].iter().zip(&w[i]).map(|(x, y)| x - a * y).collect()
        })
        .collect()
}

pub(crate) fn apply_int(m: &QMatrix, v: &[i64]) -> Root {
    (0..m.rows())
        .map(|i| {
            let s = (0..m.cols()).fold(Rational::zero(), |acc, j| acc + &m[(i, j)] * int(v[j]));
            crate::rational::to_i64(&s).expect("integral image of a root")
        })
        .collect()
}

/// Checks that every sum of two positive roots lies strictly between them.
pub fn is_convex(rs: &RootSystemData, order: &[Root]) -> bool {
    let pos: HashMap<&Root, usize> = order.iter().enumerate().map(|(k, r)| (r, k)).collect();
    if pos.len() != rs.num_positive() {
        return false;
    }
    for a in order {
        for b in order {
            let g: Root = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if let Some(&pg) = pos.get(&g) {
                let (pa, pb) = (pos[a], pos[b]);
                if !((pa < pg && pg < pb) || (pb < pg && pg < pa)) {
                    return false;
                }
            }
        }
    }
    true
}

/// All permutations of `0..l`, lexicographic.
pub fn permutations(l: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; l], &mut out);
    out
}
