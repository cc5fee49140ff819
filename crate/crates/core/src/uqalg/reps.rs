//! Minuscule fundamental representations in the Coxeter realization.
//!
//! The untwisted matrices send `v_μ` to `v_{μ±α_i}` with coefficient 1. The Coxeter
//! realization composes them with `e_i ↦ X_i^+ Π_p L_p^{n_ip}`, `f_i ↦ Π_p L_p^{−n_ip} X_i^-`,
//! where `L_p = K_{ω_p}`.

use super::{Algebra, PBWElement};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::qarith::q_binom;
use crate::rational::{int, Rational};
use crate::rootsys::{CoxeterContext, Series};
use crate::scalar::LaurentScalar;
use num_traits::Zero;
use std::collections::BTreeSet;

type S = LaurentScalar;
pub type SMatrix = Matrix<S>;

#[derive(Clone, Debug)]
pub struct RepMatrices {
    pub name: String,
    /// Weights of the basis vectors in simple-root coordinates, highest first.
    pub weights: Vec<Vec<Rational>>,
    pub e: Vec<SMatrix>,
    pub f: Vec<SMatrix>,
    pairing: Vec<Vec<Rational>>,
    standard: StandardRep,
}

/// Names accepted by [`rep_matrices`] for a context.
pub fn catalogue(ctx: &CoxeterContext) -> Vec<String> {
    match ctx.rs.series {
        Series::A => (1..=ctx.rank()).map(|k| format!("V{}", k)).collect(),
        _ => Vec::new(),
    }
}

/// The fundamental module `V{k}` (1-based `k`) for type A.
pub fn rep_matrices(ctx: &CoxeterContext, name: &str) -> Result<RepMatrices> {
    if !catalogue(ctx).iter().any(|n| n == name) {
        return Err(Error::UnknownRep(format!("{} for {}{}", name, ctx.rs.series, ctx.rank())));
    }
    let k: usize = name[1..].parse().map_err(|_| Error::UnknownRep(name.to_string()))?;
    minuscule(ctx, k - 1, name)
}

fn minuscule(ctx: &CoxeterContext, k: usize, name: &str) -> Result<RepMatrices> {
    let rs = &ctx.rs;
    let l = rs.rank;
    let top = rs.fundamental_weight(k);
    let mut seen: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let mut stack = vec![top.clone()];
    seen.insert(top);
    let coroot = |mu: &[Rational], i: usize| -> Rational {
        (0..l).fold(Rational::zero(), |acc, j| acc + &mu[j] * int(rs.form[j][i])) / int(rs.d[i])
    };
    while let Some(mu) = stack.pop() {
        for i in 0..l {
            let c = coroot(&mu, i);
            if c.is_zero() {
                continue;
            }
            let mut nu = mu.clone();
            nu[i] = &nu[i] - c;
            if seen.insert(nu.clone()) {
                stack.push(nu);
            }
        }
    }
    let rho = rs.rho();
    let mut weights: Vec<Vec<Rational>> = seen.into_iter().collect();
    for mu in &weights {
        for i in 0..l {
            let c = coroot(mu, i);
            if c > int(1) || c < int(-1) {
                return Err(Error::Invariant(format!("ω_{} is not minuscule", k + 1)));
            }
        }
    }
    weights.sort_by(|a, b| rs.pairing(b, &rho).cmp(&rs.pairing(a, &rho)).then_with(|| b.cmp(a)));
    let dim = weights.len();
    let find = |w: &[Rational]| weights.iter().position(|x| x.as_slice() == w);
    let mut e = vec![SMatrix::zeros(dim, dim); l];
    let mut f = vec![SMatrix::zeros(dim, dim); l];
    for i in 0..l {
        for (col, mu) in weights.iter().enumerate() {
            let mut up = mu.clone();
            up[i] = &up[i] + int(1);
            if let Some(row) = find(&up) {
                e[i][(row, col)] = S::one();
            }
            let mut down = mu.clone();
            down[i] = &down[i] - int(1);
            if let Some(row) = find(&down) {
                f[i][(row, col)] = S::one();
            }
        }
    }
    Ok(coxeter_realization(ctx, name, StandardRep { weights, e, f }))
}

/// Matrices of the standard Drinfeld–Jimbo generators `X_i^±` on a weight basis.
#[derive(Clone, Debug)]
pub struct StandardRep {
    pub weights: Vec<Vec<Rational>>,
    pub e: Vec<SMatrix>,
    pub f: Vec<SMatrix>,
}

impl StandardRep {
    fn k(&self, rs: &crate::rootsys::RootSystemData, lambda: &[Rational]) -> SMatrix {
        SMatrix::diagonal(&self.weights.iter().map(|mu| S::q_pow(&rs.pairing(lambda, mu))).collect::<Vec<_>>())
    }

    /// Tensor product through `Δ(X^+_i) = X^+_i ⊗ K_i + 1 ⊗ X^+_i`, `Δ(X^-_i) = X^-_i ⊗ 1 + K_i^{-1} ⊗ X^-_i`.
    pub fn tensor(&self, other: &StandardRep, rs: &crate::rootsys::RootSystemData) -> StandardRep {
        let l = rs.rank;
        let (da, db) = (self.weights.len(), other.weights.len());
        let mut weights = Vec::with_capacity(da * db);
        for a in &self.weights {
            for b in &other.weights {
                weights.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        let ia = SMatrix::identity(da);
        let ib = SMatrix::identity(db);
        let mut e = Vec::with_capacity(l);
        let mut f = Vec::with_capacity(l);
        for i in 0..l {
            let mut ai = vec![Rational::zero(); l];
            ai[i] = int(1);
            let neg: Vec<Rational> = ai.iter().map(|x| -x).collect();
            e.push(&self.e[i].kron(&other.k(rs, &ai)) + &ia.kron(&other.e[i]));
            f.push(&self.f[i].kron(&ib) + &self.k(rs, &neg).kron(&other.f[i]));
        }
        StandardRep { weights, e, f }
    }
}

/// The standard module underlying catalogue entry `name`.
pub fn standard_rep(ctx: &CoxeterContext, name: &str) -> Result<StandardRep> {
    let r = rep_matrices(ctx, name)?;
    Ok(r.standard)
}

/// Composes standard matrices with the twist `ψ_n`.
pub fn coxeter_realization(ctx: &CoxeterContext, name: &str, std: StandardRep) -> RepMatrices {
    let rs = &ctx.rs;
    let l = rs.rank;
    let twist_weight = |i: usize| -> Vec<Rational> {
        let mut acc = vec![Rational::zero(); l];
        for p in 0..l {
            let n = &ctx.twist[(i, p)];
            if n.is_zero() {
                continue;
            }
            for (a, w) in acc.iter_mut().zip(rs.fundamental_weight(p)) {
                *a += n * w;
            }
        }
        acc
    };
    let mut e = Vec::with_capacity(l);
    let mut f = Vec::with_capacity(l);
    for i in 0..l {
        let kappa = twist_weight(i);
        let d: Vec<S> = std.weights.iter().map(|mu| S::q_pow(&rs.pairing(&kappa, mu))).collect();
        let dinv: Vec<S> = d.iter().map(|x| x.inv().expect("nonzero")).collect();
        e.push(&std.e[i] * &SMatrix::diagonal(&d));
        f.push(&SMatrix::diagonal(&dinv) * &std.f[i]);
    }
    let pairing = std
        .weights
        .iter()
        .map(|mu| {
            (0..l)
                .map(|j| (0..l).fold(Rational::zero(), |acc, i| acc + &mu[i] * int(rs.form[i][j])))
                .collect()
        })
        .collect();
    RepMatrices {
        name: name.to_string(),
        weights: std.weights.clone(),
        e,
        f,
        pairing,
        standard: std,
    }
}

impl RepMatrices {
    pub fn standard(&self) -> &StandardRep {
        &self.standard
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// `π(K_λ) = diag(q^{(λ, μ)})`.
    pub fn k(&self, lambda: &[Rational]) -> SMatrix {
        let d: Vec<S> = self
            .pairing
            .iter()
            .map(|p| S::q_pow(&p.iter().zip(lambda).fold(Rational::zero(), |acc, (a, b)| acc + a * b)))
            .collect();
        SMatrix::diagonal(&d)
    }

    pub fn word(&self, side: super::Side, w: &[u8]) -> SMatrix {
        let gens = match side {
            super::Side::E => &self.e,
            super::Side::F => &self.f,
        };
        w.iter().fold(SMatrix::identity(self.dim()), |acc, &i| &acc * &gens[i as usize])
    }

    /// Image of an algebra element.
    pub fn eval(&self, x: &PBWElement) -> SMatrix {
        let mut acc = SMatrix::zeros(self.dim(), self.dim());
        for (m, c) in x.terms() {
            let t = &(&self.word(super::Side::F, &m.f) * &self.k(&m.k)) * &self.word(super::Side::E, &m.e);
            acc = &acc + &t.scale(c);
        }
        acc
    }

    /// Defining relations that fail in this representation, by description.
    /// `cross_sign` selects the exponent `q^{cross_sign · c_ij}` of the `e_i f_j` relation.
    pub fn failing_relations(&self, ctx: &CoxeterContext, cross_sign: i64) -> Vec<String> {
        let rs = &ctx.rs;
        let l = rs.rank;
        let dim = self.dim();
        let mut bad = Vec::new();
        for i in 0..l {
            let mut ai = vec![Rational::zero(); l];
            ai[i] = int(1);
            let ki = self.k(&ai);
            let kinv = self.k(&ai.iter().map(|x| -x).collect::<Vec<_>>());
            let qi = S::q_int_pow(rs.d[i]);
            let diff = (&qi - &qi.inv().expect("nonzero")).inv().expect("nonzero");
            for j in 0..l {
                let lhs = &self.e[i] * &self.f[j];
                let c = S::q_pow(&(&ctx.cayley[(i, j)] * int(cross_sign)));
                let mut rhs = (&self.f[j] * &self.e[i]).scale(&c);
                if i == j {
                    rhs = &rhs + &(&ki - &kinv).scale(&diff);
                }
                if lhs != rhs {
                    bad.push(format!("e{} f{} cross relation", i + 1, j + 1));
                }
                let mut aj = vec![Rational::zero(); l];
                aj[j] = int(1);
                let kl = self.k(&aj);
                let klinv = self.k(&aj.iter().map(|x| -x).collect::<Vec<_>>());
                let qe = S::q_int_pow(rs.form[j][i]);
                if &(&kl * &self.e[i]) * &klinv != self.e[i].scale(&qe) {
                    bad.push(format!("K{} e{} relation", j + 1, i + 1));
                }
                if &(&kl * &self.f[i]) * &klinv != self.f[i].scale(&qe.inv().expect("nonzero")) {
                    bad.push(format!("K{} f{} relation", j + 1, i + 1));
                }
                if i == j {
                    continue;
                }
                let m = (1 - rs.cartan[i][j]) as u32;
                for (side, gens) in [("e", &self.e), ("f", &self.f)] {
                    let mut acc = SMatrix::zeros(dim, dim);
                    for r in 0..=m {
                        let sign = if r % 2 == 0 { 1 } else { -1 };
                        let coeff = q_binom(m, r, &int(rs.d[i])).expect("r <= m")
                            * S::q_pow(&(&ctx.cayley[(i, j)] * int(r as i64)))
                            * S::from_int(sign);
                        let t = &(&gens[i].pow(m - r) * &gens[j]) * &gens[i].pow(r);
                        acc = &acc + &t.scale(&coeff);
                    }
                    if !acc.is_zero() {
                        bad.push(format!("{}-Serre relation ({}, {})", side, i + 1, j + 1));
                    }
                }
            }
            if !self.e[i].pow(dim as u32).is_zero() || !self.f[i].pow(dim as u32).is_zero() {
                bad.push(format!("nilpotency of generator {}", i + 1));
            }
        }
        bad
    }

    pub fn check_relations(&self, ctx: &CoxeterContext) -> Result<()> {
        let bad = self.failing_relations(ctx, -1);
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::Invariant(format!("{}: {}", self.name, bad.join(", "))))
        }
    }

    /// Images of the root vectors of `alg`.
    pub fn root_images(&self, alg: &Algebra) -> Result<(Vec<SMatrix>, Vec<SMatrix>)> {
        let rv = alg.root_vectors()?;
        Ok((
            rv.e.iter().map(|x| self.eval(x)).collect(),
            rv.f.iter().map(|x| self.eval(x)).collect(),
        ))
    }
}
