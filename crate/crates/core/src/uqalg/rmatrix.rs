//! The universal R-matrix of the Coxeter realization evaluated in a representation.
//!
//! With `ν` the weight of a basis vector of `V`, `C` the Cayley operator and `β` running
//! over the normal ordering,
//!
//! `(id ⊗ π_V) R = Σ_ν K_{(1+C)ν} ⊗ P_ν · Π_β exp_{q_β^{-2}}((q − q^{-1}) a(β)^{-1} e_β ⊗ π_V(K_{Cβ} f_β))`.
//!
//! `R_21` swaps the legs. The first leg is kept symbolic (entries are [`PBWElement`]s)
//! or evaluated in a second representation.

use super::reps::{RepMatrices, SMatrix};
use super::{Algebra, Character, PBWElement};
use crate::error::{Error, Result};
use crate::qarith::{paren_factorial, q_exp_nilpotent};
use crate::rational::{int, Rational};
use crate::scalar::LaurentScalar;

type S = LaurentScalar;

/// A square matrix whose entries lie in the algebra: an element of `U ⊗ End V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgMatrix {
    pub entries: Vec<Vec<PBWElement>>,
}

impl AlgMatrix {
    pub fn zeros(dim: usize) -> Self {
        AlgMatrix {
            entries: vec![vec![PBWElement::zero(); dim]; dim],
        }
    }

    pub fn identity(alg: &Algebra, dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i][i] = alg.one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn mul(&self, alg: &Algebra, other: &AlgMatrix) -> Result<AlgMatrix> {
        let n = self.dim();
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if other.entries[k][j].is_zero() {
                        continue;
                    }
                    let p = alg.mul(&self.entries[i][k], &other.entries[k][j])?;
                    out.entries[i][j] = &out.entries[i][j] + &p;
                }
            }
        }
        Ok(out)
    }

    /// `Σ_k x_k ⊗ M_k` for pairs `(x_k, M_k)`.
    pub fn from_pairs(dim: usize, pairs: &[(PBWElement, SMatrix)]) -> Self {
        let mut out = Self::zeros(dim);
        for (x, m) in pairs {
            for i in 0..dim {
                for j in 0..dim {
                    if !m[(i, j)].is_zero() {
                        out.entries[i][j] = &out.entries[i][j] + &x.scale(&m[(i, j)]);
                    }
                }
            }
        }
        out
    }

    /// Applies the counit to the first leg.
    pub fn counit(&self) -> SMatrix {
        let n = self.dim();
        SMatrix::from_fn(n, n, |i, j| self.entries[i][j].counit())
    }

    /// `Σ_r w_r M_rr`.
    pub fn weighted_trace(&self, w: &[S]) -> PBWElement {
        let mut acc = PBWElement::zero();
        for (r, c) in w.iter().enumerate() {
            acc = &acc + &self.entries[r][r].scale(c);
        }
        acc
    }

    pub fn map(&self, f: impl Fn(&PBWElement) -> Result<PBWElement>) -> Result<AlgMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(&f).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgMatrix { entries })
    }
}

fn plus_cayley(alg: &Algebra, nu: &[Rational], sign: i64) -> Vec<Rational> {
    let c = alg.ctx.apply_cayley(nu);
    nu.iter().zip(c).map(|(a, b)| a + b * int(sign)).collect()
}

/// Data of one root factor: first-leg elements, second-leg matrices and the coefficient.
struct RootFactor {
    e: PBWElement,
    kf: PBWElement,
    coeff: S,
    base: Rational,
}

fn root_factors(alg: &Algebra) -> Result<Vec<RootFactor>> {
    let rv = alg.root_vectors()?;
    let qd = S::q() - S::q().inv().expect("nonzero");
    let mut out = Vec::with_capacity(rv.order.len());
    for (k, beta) in rv.order.iter().enumerate() {
        let b: Vec<Rational> = beta.iter().map(|&x| int(x)).collect();
        let kc = alg.k(&alg.ctx.apply_cayley(&b));
        let inv = rv.a[k]
            .inv()
            .ok_or_else(|| Error::Invariant(format!("a(β) vanishes for {:?}", beta)))?;
        out.push(RootFactor {
            e: rv.e[k].clone(),
            kf: alg.mul(&kc, &rv.f[k])?,
            coeff: &qd * &inv,
            base: -int(alg.ctx.rs.pairing_int(beta, beta)),
        });
    }
    Ok(out)
}

/// `Σ_k c^k/(k)_{q^b}! x^k ⊗ M^k` with `M` nilpotent.
fn exp_factor(alg: &Algebra, x: &PBWElement, m: &SMatrix, c: &S, base: &Rational) -> Result<AlgMatrix> {
    let dim = m.rows();
    let mut pairs = vec![(alg.one(), SMatrix::identity(dim))];
    let mut xp = alg.one();
    let mut mp = SMatrix::identity(dim);
    for k in 1..=dim as u32 {
        mp = &mp * m;
        if mp.is_zero() {
            break;
        }
        xp = alg.mul(&xp, x)?;
        let w = c.pow(k as i64) * paren_factorial(k, base).inv().expect("nonzero");
        pairs.push((xp.clone(), mp.scale(&w)));
    }
    if !mp.is_zero() {
        return Err(Error::Invariant("second leg of an R-matrix factor is not nilpotent".into()));
    }
    Ok(AlgMatrix::from_pairs(dim, &pairs))
}

fn cartan_diag(alg: &Algebra, rep: &RepMatrices, sign: i64) -> AlgMatrix {
    let mut m = AlgMatrix::zeros(rep.dim());
    for (r, nu) in rep.weights.iter().enumerate() {
        m.entries[r][r] = alg.k(&plus_cayley(alg, nu, sign));
    }
    m
}

/// `L^- = (id ⊗ π_V) R`.
pub fn l_minus(alg: &Algebra, rep: &RepMatrices) -> Result<AlgMatrix> {
    let mut acc = cartan_diag(alg, rep, 1);
    for rf in root_factors(alg)? {
        let m = rep.eval(&rf.kf);
        acc = acc.mul(alg, &exp_factor(alg, &rf.e, &m, &rf.coeff, &rf.base)?)?;
    }
    Ok(acc)
}

/// `(id ⊗ π_V) R_21`.
pub fn l21(alg: &Algebra, rep: &RepMatrices) -> Result<AlgMatrix> {
    let mut acc = cartan_diag(alg, rep, -1);
    for rf in root_factors(alg)? {
        let m = rep.eval(&rf.e);
        acc = acc.mul(alg, &exp_factor(alg, &rf.kf, &m, &rf.coeff, &rf.base)?)?;
    }
    Ok(acc)
}

/// `L^+ = (id ⊗ π_V) R_21^{-1}`: inverse factors in reverse order.
pub fn l_plus(alg: &Algebra, rep: &RepMatrices) -> Result<AlgMatrix> {
    let factors = root_factors(alg)?;
    let mut acc = AlgMatrix::identity(alg, rep.dim());
    for rf in factors.iter().rev() {
        let m = rep.eval(&rf.e);
        acc = acc.mul(alg, &exp_factor(alg, &rf.kf, &m, &(-&rf.coeff), &-&rf.base)?)?;
    }
    acc.mul(alg, &cartan_diag_inverse(alg, rep))
}

fn cartan_diag_inverse(alg: &Algebra, rep: &RepMatrices) -> AlgMatrix {
    let mut m = AlgMatrix::zeros(rep.dim());
    for (r, nu) in rep.weights.iter().enumerate() {
        let w: Vec<Rational> = plus_cayley(alg, nu, -1).iter().map(|x| -x).collect();
        m.entries[r][r] = alg.k(&w);
    }
    m
}

/// `(π_V ⊗ π_W) R` as a matrix on `V ⊗ W`.
pub fn r_matrix(alg: &Algebra, v: &RepMatrices, w: &RepMatrices) -> Result<SMatrix> {
    let (dv, dw) = (v.dim(), w.dim());
    let mut diag = Vec::with_capacity(dv * dw);
    for mu in &v.weights {
        for nu in &w.weights {
            let lam = plus_cayley(alg, nu, 1);
            diag.push(S::q_pow(&alg.ctx.rs.pairing(&lam, mu)));
        }
    }
    let mut acc = SMatrix::diagonal(&diag);
    for rf in root_factors(alg)? {
        let x = v.eval(&rf.e).kron(&w.eval(&rf.kf)).scale(&rf.coeff);
        acc = &acc * &q_exp_nilpotent(&x, &rf.base)?;
    }
    Ok(acc)
}

/// The same element written as `q^{(μ,ν)} · Π_β exp(… e_β K_{−Cβ} ⊗ f_β …) · q^{(μ,Cν)}`.
pub fn r_matrix_alternative(alg: &Algebra, v: &RepMatrices, w: &RepMatrices) -> Result<SMatrix> {
    let rs = &alg.ctx.rs;
    let (dv, dw) = (v.dim(), w.dim());
    let mut sym = Vec::with_capacity(dv * dw);
    let mut skew = Vec::with_capacity(dv * dw);
    for mu in &v.weights {
        for nu in &w.weights {
            sym.push(S::q_pow(&rs.pairing(mu, nu)));
            skew.push(S::q_pow(&rs.pairing(mu, &alg.ctx.apply_cayley(nu))));
        }
    }
    let rv = alg.root_vectors()?;
    let qd = S::q() - S::q().inv().expect("nonzero");
    let mut acc = SMatrix::diagonal(&sym);
    for (k, beta) in rv.order.iter().enumerate() {
        let b: Vec<Rational> = beta.iter().map(|&x| int(x)).collect();
        let neg: Vec<Rational> = alg.ctx.apply_cayley(&b).iter().map(|x| -x).collect();
        let first = &v.eval(&rv.e[k]) * &v.k(&neg);
        let coeff = &qd * &rv.a[k].inv().expect("nonzero");
        let x = first.kron(&w.eval(&rv.f[k])).scale(&coeff);
        acc = &acc * &q_exp_nilpotent(&x, &-int(rs.pairing_int(beta, beta)))?;
    }
    Ok(&acc * &SMatrix::diagonal(&skew))
}

fn swap_23(d: usize) -> SMatrix {
    let n = d * d * d;
    SMatrix::from_fn(n, n, |r, c| {
        let (a, b, cc) = (c / (d * d), (c / d) % d, c % d);
        if r == a * d * d + cc * d + b {
            S::one()
        } else {
            S::zero()
        }
    })
}

/// `R_12 R_13 R_23 − R_23 R_13 R_12` on `V ⊗ V ⊗ V`.
pub fn yang_baxter_defect(r: &SMatrix, d: usize) -> SMatrix {
    let id = SMatrix::identity(d);
    let r12 = r.kron(&id);
    let r23 = id.kron(r);
    let p = swap_23(d);
    let r13 = &(&p * &r12) * &p;
    let lhs = &(&r12 * &r13) * &r23;
    let rhs = &(&r23 * &r13) * &r12;
    &lhs - &rhs
}

pub fn yang_baxter_holds(alg: &Algebra, rep: &RepMatrices) -> Result<bool> {
    Ok(yang_baxter_defect(&r_matrix(alg, rep, rep)?, rep.dim()).is_zero())
}

/// Trace weights `q^{2(ρ, ν)}` of `1 ⊗ K_{2ρ}` on the basis of `V`.
fn rho_weights(alg: &Algebra, rep: &RepMatrices) -> Vec<S> {
    let rho = alg.ctx.rs.rho();
    rep.weights
        .iter()
        .map(|nu| S::q_pow(&(alg.ctx.rs.pairing(&rho, nu) * int(2))))
        .collect()
}

/// `C_V = (id ⊗ tr_V)(R_21 R (1 ⊗ K_{2ρ}))`.
pub fn casimir(alg: &Algebra, rep: &RepMatrices) -> Result<PBWElement> {
    let prod = l21(alg, rep)?.mul(alg, &l_minus(alg, rep)?)?;
    Ok(prod.weighted_trace(&rho_weights(alg, rep)))
}

/// `L^-` with every `e`-word replaced by its character value.
fn l_minus_chi(alg: &Algebra, rep: &RepMatrices, chi: &Character) -> Result<AlgMatrix> {
    let rv = alg.root_vectors()?;
    let mut acc = cartan_diag(alg, rep, 1);
    for (rf, e) in root_factors(alg)?.iter().zip(&rv.e) {
        let value = chi.apply(e)?;
        if value.is_zero() {
            continue;
        }
        let m = rep.eval(&rf.kf);
        let scalar = alg.scalar(value);
        acc = acc.mul(alg, &exp_factor(alg, &scalar, &m, &rf.coeff, &rf.base)?)?;
    }
    Ok(acc)
}

/// `ρ_χ(C_V)`, computed by substituting `χ` into the `e`-leg of `R` before multiplying.
pub fn whittaker_generator(alg: &Algebra, rep: &RepMatrices, chi: &Character) -> Result<PBWElement> {
    let prod = l21(alg, rep)?.mul(alg, &l_minus_chi(alg, rep, chi)?)?;
    Ok(prod.weighted_trace(&rho_weights(alg, rep)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, permutations, CoxeterContext, Series};
    use crate::uqalg::reps::rep_matrices;

    fn setup(l: usize, pi: Vec<usize>) -> (CoxeterContext, Algebra) {
        let ctx = CoxeterContext::new(build_root_system(Series::A, l).unwrap(), pi).unwrap();
        let alg = Algebra::new(ctx.clone()).unwrap();
        (ctx, alg)
    }

    #[test]
    fn yang_baxter_and_alternative_form() {
        for l in 1..=2 {
            for pi in permutations(l) {
                let (ctx, alg) = setup(l, pi);
                let v = rep_matrices(&ctx, "V1").unwrap();
                let r = r_matrix(&alg, &v, &v).unwrap();
                assert!(yang_baxter_defect(&r, v.dim()).is_zero());
                assert_eq!(r, r_matrix_alternative(&alg, &v, &v).unwrap());
            }
        }
    }

    #[test]
    fn l_operators_degenerate_and_invert() {
        let (ctx, alg) = setup(2, vec![1, 0]);
        let v = rep_matrices(&ctx, "V1").unwrap();
        let lm = l_minus(&alg, &v).unwrap();
        let lp = l_plus(&alg, &v).unwrap();
        assert!(lm.counit().is_identity());
        assert!(lp.counit().is_identity());
        let prod = lp.mul(&alg, &l21(&alg, &v).unwrap()).unwrap();
        assert_eq!(prod, AlgMatrix::identity(&alg, 3));
    }

    #[test]
    fn sl2_l_minus_has_one_root_factor() {
        let (ctx, alg) = setup(1, vec![0]);
        let v = rep_matrices(&ctx, "V1").unwrap();
        let lm = l_minus(&alg, &v).unwrap();
        assert!(lm.entries[0][1].is_zero());
        assert_eq!(lm.entries[0][0].len(), 1);
        assert_eq!(lm.entries[1][0].len(), 1);
        assert!(lm.entries[1][0].terms().all(|(m, _)| m.e == vec![0]));
    }

    #[test]
    fn casimirs_are_central_and_commute() {
        for l in 1..=2 {
            let (ctx, alg) = setup(l, (0..l).collect());
            let cs: Vec<PBWElement> = (1..=l)
                .map(|k| casimir(&alg, &rep_matrices(&ctx, &format!("V{}", k)).unwrap()).unwrap())
                .collect();
            for c in &cs {
                for i in 0..l {
                    assert!(alg.commutator(c, &alg.e(i)).unwrap().is_zero());
                    assert!(alg.commutator(c, &alg.f(i)).unwrap().is_zero());
                    assert!(alg.commutator(c, &alg.k_simple(i, 1)).unwrap().is_zero());
                }
            }
            if l == 2 {
                assert!(alg.commutator(&cs[0], &cs[1]).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn fast_whittaker_generator_matches_projection() {
        use crate::uqalg::{rho_chi, Side};
        for pi in permutations(2) {
            let (ctx, alg) = setup(2, pi);
            let chi = Character::from_rationals(&[int(2), crate::rational::rat(-1, 3)], Side::E).unwrap();
            for name in ["V1", "V2"] {
                let v = rep_matrices(&ctx, name).unwrap();
                let slow = rho_chi(&casimir(&alg, &v).unwrap(), &chi).unwrap();
                assert_eq!(slow, whittaker_generator(&alg, &v, &chi).unwrap());
                assert!(slow.has_no_e());
            }
        }
    }
}
