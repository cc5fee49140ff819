//! Root vectors by q-commutators along a convex ordering, and the constants `a(β)`.

use super::{Algebra, Monomial, PBWElement};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::rootsys::Root;
use crate::scalar::LaurentScalar;

type S = LaurentScalar;

#[derive(Clone, Debug)]
pub struct RootVectors {
    pub order: Vec<Root>,
    pub e: Vec<PBWElement>,
    pub f: Vec<PBWElement>,
    /// `[e_β, f_β] = a(β) (K_β − K_β^{-1})/(q − q^{-1})`.
    pub a: Vec<S>,
    /// Positions `(α, β)` in the ordering with `γ = α + β`, for non-simple roots.
    pub split: Vec<Option<(usize, usize)>>,
}

fn to_rat(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

/// Exponent `(α, β) + (Cα, β)` of the q-commutator for `α` preceding `β`.
pub fn commutator_exponent(alg: &Algebra, alpha: &[i64], beta: &[i64]) -> Rational {
    int(alg.ctx.rs.pairing_int(alpha, beta)) + alg.ctx.cayley_pairing_int(alpha, beta)
}

impl RootVectors {
    pub fn build(alg: &Algebra) -> Result<Self> {
        let order = alg.ctx.normal_ordering()?;
        let n = order.len();
        let mut e: Vec<PBWElement> = Vec::with_capacity(n);
        let mut f: Vec<PBWElement> = Vec::with_capacity(n);
        let mut split = Vec::with_capacity(n);
        // Process by height so both parts of a split are ready.
        let mut by_height: Vec<usize> = (0..n).collect();
        by_height.sort_by_key(|&k| order[k].iter().sum::<i64>());
        let mut e_slots: Vec<Option<PBWElement>> = vec![None; n];
        let mut f_slots: Vec<Option<PBWElement>> = vec![None; n];
        let mut splits: Vec<Option<(usize, usize)>> = vec![None; n];
        for &pos in &by_height {
            let gamma = &order[pos];
            if let Some(i) = alg.ctx.rs.is_simple(gamma) {
                e_slots[pos] = Some(alg.e(i));
                f_slots[pos] = Some(alg.f(i));
                continue;
            }
            let mut best: Option<(usize, usize)> = None;
            for pa in 0..pos {
                for pb in pos + 1..n {
                    let sum: Root = order[pa].iter().zip(&order[pb]).map(|(x, y)| x + y).collect();
                    if &sum == gamma && best.is_none_or(|(a, b)| pb - pa < b - a) {
                        best = Some((pa, pb));
                    }
                }
            }
            let (pa, pb) = best.ok_or_else(|| Error::Invariant(format!("no split for root {:?}", gamma)))?;
            let x = commutator_exponent(alg, &order[pa], &order[pb]);
            let (ea, eb) = (e_slots[pa].clone().expect("lower"), e_slots[pb].clone().expect("lower"));
            let (fa, fb) = (f_slots[pa].clone().expect("lower"), f_slots[pb].clone().expect("lower"));
            let ev = &alg.mul(&ea, &eb)? - &alg.mul(&eb, &ea)?.scale(&S::q_pow(&x));
            let fv = &alg.mul(&fb, &fa)? - &alg.mul(&fa, &fb)?.scale(&S::q_pow(&-x));
            if ev.is_zero() || fv.is_zero() {
                return Err(Error::Invariant(format!("root vector for {:?} vanishes", gamma)));
            }
            e_slots[pos] = Some(ev);
            f_slots[pos] = Some(fv);
            splits[pos] = Some((pa, pb));
        }
        for k in 0..n {
            e.push(e_slots[k].take().expect("built"));
            f.push(f_slots[k].take().expect("built"));
            split.push(splits[k]);
        }
        let mut a = Vec::with_capacity(n);
        let qd = S::q() - S::q().inv().expect("nonzero");
        for k in 0..n {
            let comm = alg.commutator(&e[k], &f[k])?;
            let gamma = to_rat(&order[k]);
            let neg: Vec<Rational> = gamma.iter().map(|x| -x).collect();
            let plus = Monomial {
                f: vec![],
                k: gamma.clone(),
                e: vec![],
            };
            let minus = Monomial {
                f: vec![],
                k: neg,
                e: vec![],
            };
            let ak = comm.coefficient(&plus) * &qd;
            let expect = PBWElement::from_monomial(plus, &ak / &qd).add_owned(PBWElement::from_monomial(minus, -(&ak / &qd)));
            if comm != expect || ak.is_zero() {
                return Err(Error::Invariant(format!(
                    "[e_β, f_β] is not a multiple of K_β − K_β^(-1) for β = {:?}: {}",
                    order[k], comm
                )));
            }
            a.push(ak);
        }
        Ok(RootVectors { order, e, f, a, split })
    }

    pub fn position(&self, beta: &[i64]) -> Option<usize> {
        self.order.iter().position(|r| r.as_slice() == beta)
    }
}

impl PBWElement {
    fn add_owned(self, o: PBWElement) -> PBWElement {
        &self + &o
    }
}
