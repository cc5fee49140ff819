//! Steinberg cross-section, Bruhat cell membership, the q-map on `G*`, the Kostant
//! section and the Cayley r-matrix, all for `SL(n)` / `sl(n)` over the rationals.
//!
//! The Coxeter representative is `ṡ_1 ⋯ ṡ_{n−1}` with `ṡ_i` the rotation
//! `e_i ↦ e_{i+1}, e_{i+1} ↦ −e_i`. It sends `e_j` to `±e_{j+1}` (indices mod `n`), so
//! `N_+' = {v ∈ N_+ : s^{-1} v s ∈ N_−}` is the set of unipotents supported on the
//! first row, and `N_+' s` is a companion-matrix family.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, QMatrix};
use crate::rational::{int, Rational};
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

pub fn coxeter_rep(n: usize) -> QMatrix {
    let mut s = QMatrix::identity(n);
    for i in 0..n.saturating_sub(1) {
        let mut r = QMatrix::identity(n);
        r[(i, i)] = int(0);
        r[(i + 1, i + 1)] = int(0);
        r[(i + 1, i)] = int(1);
        r[(i, i + 1)] = int(-1);
        s = &s * &r;
    }
    s
}

pub fn is_upper(m: &QMatrix) -> bool {
    (0..m.rows()).all(|i| (0..i).all(|j| m[(i, j)].is_zero()))
}

pub fn is_lower(m: &QMatrix) -> bool {
    is_upper(&m.transpose())
}

pub fn is_unipotent_upper(m: &QMatrix) -> bool {
    is_upper(m) && (0..m.rows()).all(|i| m[(i, i)].is_one())
}

pub fn is_unipotent_lower(m: &QMatrix) -> bool {
    is_unipotent_upper(&m.transpose())
}

/// `E_ij`.
pub fn unit(n: usize, i: usize, j: usize) -> QMatrix {
    let mut m = QMatrix::zeros(n, n);
    m[(i, j)] = int(1);
    m
}

/// Characteristic-polynomial invariants `χ_k` = sum of principal `k`-minors, `k = 1..n−1`.
pub fn fundamental_characters(m: &QMatrix) -> Vec<Rational> {
    let mut all = all_characters(m);
    all.pop();
    all
}

/// Discriminant of the characteristic polynomial, via the Sylvester resultant with its derivative.
pub fn discriminant(m: &QMatrix) -> Rational {
    let p = m.char_poly();
    let n = p.len() - 1;
    if n <= 1 {
        return int(1);
    }
    let dp: Vec<Rational> = (1..=n).map(|k| &p[k] * int(k as i64)).collect();
    let size = 2 * n - 1;
    let mut syl = QMatrix::zeros(size, size);
    // Rows hold coefficients from the highest degree down.
    for r in 0..n - 1 {
        for k in 0..=n {
            syl[(r, r + k)] = p[n - k].clone();
        }
    }
    for r in 0..n {
        for k in 0..n {
            syl[(n - 1 + r, r + k)] = dp[n - 1 - k].clone();
        }
    }
    let res = syl.determinant();
    let sign = if (n * (n - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    res * int(sign)
}

/// Regular semisimple: the characteristic polynomial has distinct roots.
pub fn is_regular(m: &QMatrix) -> bool {
    !discriminant(m).is_zero()
}

/// Finds the unit upper-triangular `u` with rows `1..n` of `u·a` equal to rows `1..n` of
/// `b·u`. Returns the solution and whether it is unique.
fn solve_row_conjugation(a: &QMatrix, b: &QMatrix) -> Option<(QMatrix, bool)> {
    let n = a.rows();
    let unknowns: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let index = |i: usize, j: usize| unknowns.iter().position(|&p| p == (i, j));
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 1..n {
        for c in 0..n {
            let mut row = vec![Rational::zero(); unknowns.len()];
            // (u a)_{ic} − (b u)_{ic} with u_ii = 1 moved to the right-hand side.
            for k in i + 1..n {
                row[index(i, k).expect("upper")] += &a[(k, c)];
            }
            for k in 0..c {
                row[index(k, c).expect("upper")] -= &b[(i, k)];
            }
            rows.push(row);
            rhs.push(&b[(i, c)] - &a[(i, c)]);
        }
    }
    if unknowns.is_empty() {
        let ok = rhs.iter().all(|x| x.is_zero());
        return ok.then(|| (QMatrix::identity(n), true));
    }
    let m = Matrix::from_rows(rows);
    let x = m.solve(&rhs)?;
    let unique = m.rank() == unknowns.len();
    let mut u = QMatrix::identity(n);
    for (k, &(i, j)) in unknowns.iter().enumerate() {
        u[(i, j)] = x[k].clone();
    }
    Some((u, unique))
}

/// Witness `M = a·s·b` with `a, b ∈ N_+`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellWitness {
    pub a: QMatrix,
    pub b: QMatrix,
}

#[derive(Clone, Debug)]
pub struct CrossSectionResult {
    /// Conjugator `u ∈ N_+`.
    pub u: QMatrix,
    /// `v ∈ N_+'` with `u L u^{-1} = v s`.
    pub v: QMatrix,
    pub slice: QMatrix,
    /// The linear system for `u` has a single solution.
    pub unique: bool,
}

/// `h_+ n_+`, `h_− n_−` factorization of an element of `G*`.
#[derive(Clone, Debug)]
pub struct GStarElement {
    pub l_plus: QMatrix,
    pub l_minus: QMatrix,
    pub h_plus: QMatrix,
    pub h_minus: QMatrix,
    pub n_plus: QMatrix,
    pub n_minus: QMatrix,
}

impl GStarElement {
    /// `q(L_+, L_−) = L_− L_+^{-1}`.
    pub fn q_map(&self) -> QMatrix {
        &self.l_minus * &self.l_plus.inverse().expect("invertible")
    }

    /// `μ_{N_+}(L_+, L_−) = n_−`.
    pub fn mu_n(&self) -> &QMatrix {
        &self.n_minus
    }
}

#[derive(Clone, Debug)]
pub struct BuildU {
    pub u: QMatrix,
    pub witness: Option<CellWitness>,
}

/// `SL(n)` with a fixed Coxeter representative.
#[derive(Clone, Debug)]
pub struct SlGroup {
    pub n: usize,
    pub s: QMatrix,
    s_inv: QMatrix,
}

impl SlGroup {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput("SL(n) needs n ≥ 2".into()));
        }
        Self::with_representative(coxeter_rep(n))
    }

    /// Any representative `ṡ·h` of the same Coxeter element with `det = 1`.
    pub fn with_representative(s: QMatrix) -> Result<Self> {
        let n = s.rows();
        if n < 2 || !s.is_square() {
            return Err(Error::InvalidInput("representative must be square of size ≥ 2".into()));
        }
        let std = coxeter_rep(n);
        for i in 0..n {
            for j in 0..n {
                if s[(i, j)].is_zero() != std[(i, j)].is_zero() {
                    return Err(Error::InvalidInput("matrix does not represent s_1⋯s_{n−1}".into()));
                }
            }
        }
        if !s.determinant().is_one() {
            return Err(Error::InvalidInput("representative must have determinant 1".into()));
        }
        let s_inv = s.inverse().expect("det 1");
        Ok(SlGroup { n, s, s_inv })
    }

    /// Nilpotent generators `X` of the one-parameter subgroups `1 + tX` spanning `N_+'`.
    pub fn nplus_prime_basis(&self) -> Vec<QMatrix> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let x = unit(n, i, j);
                let conj = &(&self.s_inv * &x) * &self.s;
                if is_lower(&conj) {
                    out.push(x);
                }
            }
        }
        out
    }

    pub fn is_in_nplus_prime(&self, v: &QMatrix) -> bool {
        is_unipotent_upper(v) && is_unipotent_lower(&(&(&self.s_inv * v) * &self.s))
    }

    /// `v s` for `v = 1 + Σ t_k X_k` over [`Self::nplus_prime_basis`].
    pub fn slice_point(&self, params: &[Rational]) -> QMatrix {
        let mut v = QMatrix::identity(self.n);
        for (t, x) in params.iter().zip(self.nplus_prime_basis()) {
            v = &v + &x.scale(t);
        }
        &v * &self.s
    }

    /// Decides `M ∈ N_+ s N_+`: `s^{-1} x M ∈ N_+` is linear in `x = a^{-1}`.
    pub fn bruhat_cell_test(&self, m: &QMatrix) -> Option<CellWitness> {
        let n = self.n;
        let unknowns: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let p = &self.s_inv;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for i in 0..n {
            for j in 0..=i {
                let target = if i == j { int(1) } else { int(0) };
                // (P x M)_{ij} = Σ_a P_{ia} M_{aj} + Σ_{a<b} P_{ia} x_{ab} M_{bj}.
                let mut constant = Rational::zero();
                for a in 0..n {
                    constant += &p[(i, a)] * &m[(a, j)];
                }
                let row: Vec<Rational> = unknowns.iter().map(|&(a, b)| &p[(i, a)] * &m[(b, j)]).collect();
                rows.push(row);
                rhs.push(target - constant);
            }
        }
        let x = if unknowns.is_empty() {
            if rhs.iter().any(|v| !v.is_zero()) {
                return None;
            }
            QMatrix::identity(n)
        } else {
            let sol = Matrix::from_rows(rows).solve(&rhs)?;
            let mut x = QMatrix::identity(n);
            for (k, &(a, b)) in unknowns.iter().enumerate() {
                x[(a, b)] = sol[k].clone();
            }
            x
        };
        let b = &(p * &x) * m;
        debug_assert!(is_unipotent_upper(&b));
        Some(CellWitness {
            a: x.inverse().expect("unipotent"),
            b,
        })
    }

    /// Conjugates `L ∈ N_+ s N_+` into the slice `N_+' s`.
    pub fn cross_section(&self, l: &QMatrix) -> Result<CrossSectionResult> {
        if self.bruhat_cell_test(l).is_none() {
            return Err(Error::NotInCell);
        }
        let (u, unique) = solve_row_conjugation(l, &self.s).ok_or(Error::NotInCell)?;
        let slice = &(&u * l) * &u.inverse().expect("unipotent");
        let v = &slice * &self.s_inv;
        if !self.is_in_nplus_prime(&v) {
            return Err(Error::Invariant("conjugate of L is not in N_+' s".into()));
        }
        Ok(CrossSectionResult { u, v, slice, unique })
    }

    /// Solves again for `w L w^{-1}` and checks the conjugator is `u w^{-1}`.
    pub fn double_solve_agrees(&self, l: &QMatrix, w: &QMatrix) -> Result<bool> {
        let first = self.cross_section(l)?;
        let winv = w.inverse().ok_or_else(|| Error::InvalidInput("w must be invertible".into()))?;
        let second = self.cross_section(&(&(w * l) * &winv))?;
        Ok(first.unique && second.unique && &second.u * w == first.u && second.slice == first.slice)
    }

    /// `u = Π_i (1 + 2 c_i E_{i+1,i})`, `d_i = 1` in type A, with its cell witness if any.
    pub fn build_u(&self, c: &[Rational]) -> Result<BuildU> {
        if c.len() != self.n - 1 || c.iter().any(|x| x.is_zero()) {
            return Err(Error::InvalidInput(format!("need {} nonzero parameters", self.n - 1)));
        }
        let mut u = QMatrix::identity(self.n);
        for (i, ci) in c.iter().enumerate() {
            let mut g = QMatrix::identity(self.n);
            g[(i + 1, i)] = ci * int(2);
            u = &u * &g;
        }
        let witness = self.bruhat_cell_test(&u);
        Ok(BuildU { u, witness })
    }

    /// Action of the Coxeter element on the torus: `h ↦ ṡ h ṡ^{-1}`.
    pub fn s_torus(&self, h: &QMatrix) -> QMatrix {
        &(&self.s * h) * &self.s_inv
    }

    pub fn gstar_factorize(&self, l_plus: &QMatrix, l_minus: &QMatrix) -> Result<GStarElement> {
        if !is_upper(l_plus) || !is_lower(l_minus) {
            return Err(Error::InvalidInput("L_+ must be upper and L_− lower triangular".into()));
        }
        let n = self.n;
        let h_plus = QMatrix::from_fn(n, n, |i, j| if i == j { l_plus[(i, i)].clone() } else { int(0) });
        let h_minus = QMatrix::from_fn(n, n, |i, j| if i == j { l_minus[(i, i)].clone() } else { int(0) });
        let hp_inv = h_plus.inverse().ok_or_else(|| Error::InvalidInput("L_+ is singular".into()))?;
        let hm_inv = h_minus.inverse().ok_or_else(|| Error::InvalidInput("L_− is singular".into()))?;
        if self.s_torus(&h_plus) != h_minus {
            return Err(Error::InvalidInput("torus parts are incompatible: h_− ≠ s(h_+)".into()));
        }
        Ok(GStarElement {
            n_plus: &hp_inv * l_plus,
            n_minus: &hm_inv * l_minus,
            l_plus: l_plus.clone(),
            l_minus: l_minus.clone(),
            h_plus,
            h_minus,
        })
    }
}

/// `f = Σ_i E_{i+1,i}`.
pub fn principal_nilpotent(n: usize) -> QMatrix {
    QMatrix::from_fn(n, n, |i, j| if i == j + 1 { int(1) } else { int(0) })
}

#[derive(Clone, Debug)]
pub struct KostantSection {
    /// `a ∈ N_+` with `Ad(a)(b + f) = f + x`.
    pub a: QMatrix,
    /// `x` in the first-row span.
    pub x: QMatrix,
}

/// Solves `Ad(a)(b + f) = f + x` with `x` supported on the first row.
pub fn kostant_section(b: &QMatrix) -> Result<KostantSection> {
    let n = b.rows();
    if !b.is_square() || !is_upper(b) || !b.trace().is_zero() {
        return Err(Error::InvalidInput("b must be upper triangular and traceless".into()));
    }
    let f = principal_nilpotent(n);
    let bf = b + &f;
    let (a, unique) = solve_row_conjugation(&bf, &f).ok_or_else(|| Error::Invariant("no Kostant section conjugator".into()))?;
    if !unique {
        return Err(Error::Invariant("Kostant section conjugator is not unique".into()));
    }
    let x = &(&(&a * &bf) * &a.inverse().expect("unipotent")) - &f;
    if (1..n).any(|i| (0..n).any(|j| !x[(i, j)].is_zero())) {
        return Err(Error::Invariant("Ad(a)(b + f) − f leaves the first row".into()));
    }
    Ok(KostantSection { a, x })
}

/// The companion point `f + x` whose characteristic polynomial is `Σ_k (−1)^k χ_k λ^{n−k}`,
/// given `χ_1, …, χ_n`.
pub fn section_from_characters(chars: &[Rational]) -> QMatrix {
    let n = chars.len();
    let mut m = principal_nilpotent(n);
    // det(λ − (f + x)) = λ^n − x_0 λ^{n−1} − x_1 λ^{n−2} − … for x on the first row.
    for k in 1..=n {
        m[(0, k - 1)] = if k % 2 == 0 { -chars[k - 1].clone() } else { chars[k - 1].clone() };
    }
    m
}

/// All `n` invariants `χ_1, …, χ_n` (the last is the determinant).
pub fn all_characters(m: &QMatrix) -> Vec<Rational> {
    let n = m.rows();
    let c = m.char_poly();
    (1..=n)
        .map(|k| if k % 2 == 0 { c[n - k].clone() } else { -c[n - k].clone() })
        .collect()
}

/// The endomorphism `r = P_+ − P_− + ((1 + s)/(1 − s)) P_0` of `sl(n)`.
#[derive(Clone, Debug)]
pub struct CayleyRMatrix {
    pub n: usize,
    /// Cayley operator on the Cartan in the basis `H_i = E_ii − E_{i+1,i+1}`.
    pub cayley: QMatrix,
}

impl CayleyRMatrix {
    pub fn new(n: usize) -> Result<Self> {
        let g = SlGroup::new(n)?;
        let l = n - 1;
        let basis: Vec<QMatrix> = (0..l).map(|i| &unit(n, i, i) - &unit(n, i + 1, i + 1)).collect();
        let mut s = QMatrix::zeros(l, l);
        for (j, h) in basis.iter().enumerate() {
            let coords = cartan_coords(&g.s_torus(h));
            for i in 0..l {
                s[(i, j)] = coords[i].clone();
            }
        }
        let id = QMatrix::identity(l);
        let inv = (&id - &s)
            .inverse()
            .ok_or_else(|| Error::Invariant("1 − s is singular on the Cartan".into()))?;
        Ok(CayleyRMatrix {
            n,
            cayley: &(&id + &s) * &inv,
        })
    }

    pub fn apply(&self, x: &QMatrix) -> QMatrix {
        let n = self.n;
        let mut out = QMatrix::from_fn(n, n, |i, j| {
            if i < j {
                x[(i, j)].clone()
            } else if i > j {
                -x[(i, j)].clone()
            } else {
                int(0)
            }
        });
        let diag = QMatrix::from_fn(n, n, |i, j| if i == j { x[(i, i)].clone() } else { int(0) });
        let t = cartan_coords(&diag);
        let ct: Vec<Rational> = (0..n - 1)
            .map(|i| (0..n - 1).fold(Rational::zero(), |acc, k| acc + &self.cayley[(i, k)] * &t[k]))
            .collect();
        for k in 0..n {
            let prev = if k > 0 { ct[k - 1].clone() } else { Rational::zero() };
            let cur = if k < n - 1 { ct[k].clone() } else { Rational::zero() };
            out[(k, k)] = cur - prev;
        }
        out
    }

    /// `[rX, rY] − r([rX, Y] + [X, rY]) + [X, Y]`.
    pub fn mcybe_residual(&self, x: &QMatrix, y: &QMatrix) -> QMatrix {
        let rx = self.apply(x);
        let ry = self.apply(y);
        let inner = &rx.commutator(y) + &x.commutator(&ry);
        &(&rx.commutator(&ry) - &self.apply(&inner)) + &x.commutator(y)
    }

    /// `r_± = (r ± 1)/2` as a matrix on the basis of `sl(n)` from [`sl_basis`].
    pub fn r_pm_matrix(&self, sign: i64) -> QMatrix {
        let basis = sl_basis(self.n);
        let half = crate::rational::rat(1, 2);
        let cols: Vec<Vec<Rational>> = basis
            .iter()
            .map(|b| {
                let img = (&self.apply(b) + &b.scale(&int(sign))).scale(&half);
                sl_coords(&img)
            })
            .collect();
        QMatrix::from_fn(basis.len(), basis.len(), |i, j| cols[j][i].clone())
    }

    /// `Im r_± = b_±` and `Ker r_± = n_∓` as exact subspace equalities.
    pub fn image_kernel_identities(&self) -> bool {
        let n = self.n;
        let basis = sl_basis(n);
        let dim_b = n * (n + 1) / 2 - 1;
        let dim_n = n * (n - 1) / 2;
        let in_upper = |v: &[Rational]| {
            let m = from_sl_coords(n, v);
            is_upper(&m)
        };
        let in_lower = |v: &[Rational]| is_lower(&from_sl_coords(n, v));
        let strictly = |v: &[Rational], upper: bool| {
            let m = from_sl_coords(n, v);
            (0..n).all(|i| m[(i, i)].is_zero()) && if upper { is_upper(&m) } else { is_lower(&m) }
        };
        let mut ok = true;
        for (sign, upper) in [(1i64, true), (-1, false)] {
            let r = self.r_pm_matrix(sign);
            ok &= r.rank() == dim_b;
            for j in 0..basis.len() {
                let col: Vec<Rational> = (0..basis.len()).map(|i| r[(i, j)].clone()).collect();
                ok &= if upper { in_upper(&col) } else { in_lower(&col) };
            }
            let ker = r.kernel();
            ok &= ker.len() == dim_n;
            for v in &ker {
                ok &= strictly(v, !upper);
            }
        }
        ok
    }
}

/// Coordinates of a traceless diagonal matrix in the basis `E_ii − E_{i+1,i+1}`.
fn cartan_coords(d: &QMatrix) -> Vec<Rational> {
    let n = d.rows();
    let mut acc = Rational::zero();
    (0..n - 1)
        .map(|i| {
            acc += &d[(i, i)];
            acc.clone()
        })
        .collect()
}

/// Basis of `sl(n)`: off-diagonal units then `E_ii − E_{i+1,i+1}`.
pub fn sl_basis(n: usize) -> Vec<QMatrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(unit(n, i, j));
            }
        }
    }
    for i in 0..n - 1 {
        out.push(&unit(n, i, i) - &unit(n, i + 1, i + 1));
    }
    out
}

fn sl_coords(m: &QMatrix) -> Vec<Rational> {
    let n = m.rows();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(m[(i, j)].clone());
            }
        }
    }
    out.extend(cartan_coords(m));
    out
}

fn from_sl_coords(n: usize, v: &[Rational]) -> QMatrix {
    sl_basis(n)
        .iter()
        .zip(v)
        .fold(QMatrix::zeros(n, n), |acc, (b, c)| &acc + &b.scale(c))
}

/// Seeded samplers for the randomized checks.
pub mod sample {
    use super::*;

    /// A small rational `p/q` with `|p| ≤ 5`, `1 ≤ q ≤ 4`.
    pub fn rational<R: Rng>(rng: &mut R) -> Rational {
        Rational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into())
    }

    pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
        loop {
            let r = rational(rng);
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn unipotent_upper<R: Rng>(n: usize, rng: &mut R) -> QMatrix {
        let mut m = QMatrix::identity(n);
        for i in 0..n {
            for j in i + 1..n {
                m[(i, j)] = rational(rng);
            }
        }
        m
    }

    /// Diagonal with nonzero entries and determinant 1.
    pub fn torus<R: Rng>(n: usize, rng: &mut R) -> QMatrix {
        let mut d: Vec<Rational> = (0..n - 1).map(|_| nonzero_rational(rng)).collect();
        let prod = d.iter().fold(int(1), |acc, x| acc * x);
        d.push(prod.recip());
        QMatrix::diagonal(&d)
    }

    pub fn traceless<R: Rng>(n: usize, rng: &mut R) -> QMatrix {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = rational(rng);
            }
        }
        let t = m.trace();
        m[(n - 1, n - 1)] -= t;
        m
    }

    pub fn traceless_upper<R: Rng>(n: usize, rng: &mut R) -> QMatrix {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                m[(i, j)] = rational(rng);
            }
        }
        let t = m.trace();
        m[(n - 1, n - 1)] -= t;
        m
    }
}

/// Report on the characteristic polynomial identity for one sample of `μ^{-1}(u)`.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterIdentity {
    pub in_cell: bool,
    pub regular: bool,
    pub matches_twisted_torus: bool,
}

/// For `(h_+, s(h_+) u)`: cell membership of the q-map image and equality of its
/// characteristic polynomial with that of `h_+^{-1} s(h_+)`.
pub fn character_identity(g: &SlGroup, h_plus: &QMatrix, n_plus: &QMatrix, u: &QMatrix) -> Result<CharacterIdentity> {
    let lp = h_plus * n_plus;
    let lm = &g.s_torus(h_plus) * u;
    let el = g.gstar_factorize(&lp, &lm)?;
    let q = el.q_map();
    let torus = &h_plus.inverse().expect("torus") * &g.s_torus(h_plus);
    Ok(CharacterIdentity {
        in_cell: g.bruhat_cell_test(&q).is_some(),
        regular: is_regular(&torus),
        matches_twisted_torus: q.char_poly() == torus.char_poly(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn coxeter_representatives() {
        assert_eq!(coxeter_rep(2), m(&[&[0, -1], &[1, 0]]));
        for n in 2..=6 {
            let s = coxeter_rep(n);
            assert!(s.determinant().is_one());
            let p = s.pow(n as u32);
            assert!(p == QMatrix::identity(n) || p == QMatrix::identity(n).scale(&int(-1)));
        }
    }

    #[test]
    fn nplus_prime_is_first_row() {
        for n in 2..=6 {
            let g = SlGroup::new(n).unwrap();
            let b = g.nplus_prime_basis();
            assert_eq!(b.len(), n - 1);
            for x in &b {
                for y in &b {
                    assert!(x.commutator(y).is_zero());
                }
            }
        }
    }

    #[test]
    fn cell_examples() {
        let g = SlGroup::new(2).unwrap();
        assert!(g.bruhat_cell_test(&g.s).is_some());
        assert!(g.bruhat_cell_test(&QMatrix::identity(2)).is_none());
        let w = g.bruhat_cell_test(&m(&[&[1, 0], &[1, 1]])).unwrap();
        assert_eq!(w.a, m(&[&[1, 1], &[0, 1]]));
        assert_eq!(w.b, m(&[&[1, 1], &[0, 1]]));
        assert!(g.build_u(&[rat(1, 2)]).unwrap().witness.is_some());
        assert!(g.build_u(&[rat(5, 2)]).unwrap().witness.is_none());
    }

    #[test]
    fn sl2_cross_section_example() {
        let g = SlGroup::new(2).unwrap();
        let r = g.cross_section(&m(&[&[1, 0], &[1, 1]])).unwrap();
        assert_eq!(r.slice, m(&[&[2, -1], &[1, 0]]));
        assert_eq!(r.u, m(&[&[1, 1], &[0, 1]]));
        assert!(r.unique);
        assert!(matches!(g.cross_section(&QMatrix::identity(2)), Err(Error::NotInCell)));
    }

    #[test]
    fn slice_points_are_fixed() {
        let g = SlGroup::new(4).unwrap();
        let p = g.slice_point(&[rat(1, 2), int(-3), int(2)]);
        let r = g.cross_section(&p).unwrap();
        assert!(r.u.is_identity());
        assert_eq!(r.slice, p);
    }

    #[test]
    fn random_cross_sections() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=5 {
            let g = SlGroup::new(n).unwrap();
            for _ in 0..10 {
                let l = &(&sample::unipotent_upper(n, &mut rng) * &g.s) * &sample::unipotent_upper(n, &mut rng);
                let r = g.cross_section(&l).unwrap();
                assert_eq!(r.slice.char_poly(), l.char_poly());
                assert_eq!(fundamental_characters(&r.slice), fundamental_characters(&l));
                let w = sample::unipotent_upper(n, &mut rng);
                assert!(g.double_solve_agrees(&l, &w).unwrap());
            }
        }
    }

    #[test]
    fn slice_coordinates_are_bijective() {
        for n in 2..=3 {
            let g = SlGroup::new(n).unwrap();
            let params: Vec<Rational> = (0..n - 1).map(|k| rat(k as i64 + 2, 3)).collect();
            let chars = fundamental_characters(&g.slice_point(&params));
            // Triangular and affine in the parameters, so solving recovers them.
            let basis = g.nplus_prime_basis();
            let mut rows = Vec::new();
            let base = fundamental_characters(&g.slice_point(&vec![int(0); n - 1]));
            for k in 0..n - 1 {
                let mut e = vec![int(0); n - 1];
                e[k] = int(1);
                let c = fundamental_characters(&g.slice_point(&e));
                rows.push(c.iter().zip(&base).map(|(a, b)| a - b).collect::<Vec<_>>());
            }
            let jac = QMatrix::from_fn(n - 1, n - 1, |i, j| rows[j][i].clone());
            assert_eq!(jac.rank(), n - 1);
            let rhs: Vec<Rational> = chars.iter().zip(&base).map(|(a, b)| a - b).collect();
            assert_eq!(jac.solve(&rhs).unwrap(), params);
            assert_eq!(basis.len(), n - 1);
        }
    }

    #[test]
    fn gstar_and_character_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=3 {
            let g = SlGroup::new(n).unwrap();
            let triv = g.gstar_factorize(&QMatrix::identity(n), &QMatrix::identity(n)).unwrap();
            assert!(triv.q_map().is_identity());
            let c: Vec<Rational> = (0..n - 1).map(|_| rat(1, 2)).collect();
            let bu = g.build_u(&c).unwrap();
            assert!(bu.witness.is_some());
            for _ in 0..10 {
                let h = sample::torus(n, &mut rng);
                let np = sample::unipotent_upper(n, &mut rng);
                let lp = &h * &np;
                let lm = &g.s_torus(&h) * &bu.u;
                let el = g.gstar_factorize(&lp, &lm).unwrap();
                assert_eq!(el.mu_n(), &bu.u);
                assert!(g.bruhat_cell_test(&el.q_map()).is_some());
                let id = character_identity(&g, &h, &QMatrix::identity(n), &bu.u).unwrap();
                assert!(id.in_cell && id.matches_twisted_torus);
            }
        }
        let g = SlGroup::new(2).unwrap();
        assert!(g
            .gstar_factorize(&QMatrix::diagonal(&[int(2), rat(1, 2)]), &QMatrix::identity(2))
            .is_err());
    }

    /// With `n_+ ≠ 1` the trace of the q-map image moves: for SL(2), `h = diag(λ, 1/λ)`,
    /// `n_+ = [[1, t], [0, 1]]`, `u = [[1, 0], [1, 1]]` it is `λ^{-2} + λ^2(1 − t)`.
    #[test]
    fn q_map_character_depends_on_n_plus() {
        let g = SlGroup::new(2).unwrap();
        let lam = int(2);
        let h = QMatrix::diagonal(&[lam.clone(), lam.recip()]);
        let u = m(&[&[1, 0], &[1, 1]]);
        for t in [int(0), int(1), rat(-1, 3)] {
            let np = QMatrix::from_rows(vec![vec![int(1), t.clone()], vec![int(0), int(1)]]);
            let q = g.gstar_factorize(&(&h * &np), &(&g.s_torus(&h) * &u)).unwrap().q_map();
            let l2 = &lam * &lam;
            assert_eq!(q.trace(), l2.recip() + &l2 * (int(1) - &t));
        }
    }

    #[test]
    fn kostant_examples() {
        let z = kostant_section(&QMatrix::zeros(3, 3)).unwrap();
        assert!(z.a.is_identity() && z.x.is_zero());
        let lam = rat(3, 2);
        let b = QMatrix::diagonal(&[lam.clone(), -lam.clone()]);
        let k = kostant_section(&b).unwrap();
        assert_eq!(k.a, QMatrix::from_rows(vec![vec![int(1), -lam.clone()], vec![int(0), int(1)]]));
        assert_eq!(k.x, QMatrix::from_rows(vec![vec![int(0), &lam * &lam], vec![int(0), int(0)]]));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..=4 {
            for _ in 0..5 {
                let b = sample::traceless_upper(n, &mut rng);
                let k = kostant_section(&b).unwrap();
                let fx = &principal_nilpotent(n) + &k.x;
                assert_eq!(fx.char_poly(), (&b + &principal_nilpotent(n)).char_poly());
                let back = section_from_characters(&all_characters(&fx));
                assert_eq!(back, fx);
            }
        }
    }

    #[test]
    fn cayley_r_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 2..=4 {
            let r = CayleyRMatrix::new(n).unwrap();
            assert!(r.image_kernel_identities());
            for _ in 0..5 {
                let x = sample::traceless(n, &mut rng);
                let y = sample::traceless(n, &mut rng);
                assert!(r.mcybe_residual(&x, &y).is_zero());
                assert!(r.mcybe_residual(&x, &x).is_zero());
            }
        }
    }

    #[test]
    fn discriminant_detects_repeated_roots() {
        assert!(!is_regular(&QMatrix::identity(3)));
        assert!(is_regular(&QMatrix::diagonal(&[int(1), int(2), int(3)])));
        // x^2 − 5x + 6: discriminant 1.
        assert_eq!(discriminant(&QMatrix::diagonal(&[int(2), int(3)])), int(1));
    }
}
