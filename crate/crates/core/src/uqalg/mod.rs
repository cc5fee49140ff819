//! The Coxeter realization as a concrete algebra with PBW normal form.
//!
//! Generators are `e_i`, `f_i` and group-likes `K_λ` with `λ` a rational vector in
//! simple-root coordinates. Relations:
//!
//! * `K_λ e_j = q^{(λ,α_j)} e_j K_λ`, `K_λ f_j = q^{−(λ,α_j)} f_j K_λ`;
//! * `e_i f_j = q^{−c_ij} f_j e_i + δ_ij (K_{α_i} − K_{−α_i})/(q_i − q_i^{-1})`;
//! * deformed Serre relations with coefficients `(−1)^r q^{r c_ij} [1−a_ij choose r]_{q_i}`
//!   for both the `e`'s and the `f`'s.
//!
//! A monomial is stored as `f-word · K_λ · e-word` with both words standard.

pub mod reps;
pub mod rmatrix;
pub mod roots;
pub mod serre;

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::rootsys::CoxeterContext;
use crate::scalar::LaurentScalar;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

pub use roots::RootVectors;
pub use serre::{SerreReducer, Word};

type S = LaurentScalar;
pub type Weight = Vec<Rational>;
type PieceCache<K> = Mutex<HashMap<K, Arc<Vec<Piece>>>>;

pub const DEFAULT_STEP_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub f: Word,
    pub k: Weight,
    pub e: Word,
}

impl Monomial {
    pub fn unit(rank: usize) -> Self {
        Monomial {
            f: Vec::new(),
            k: vec![Rational::zero(); rank],
            e: Vec::new(),
        }
    }

    pub fn is_cartan(&self) -> bool {
        self.f.is_empty() && self.e.is_empty()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for &i in &self.f {
            parts.push(format!("f{}", i + 1));
        }
        if self.k.iter().any(|x| !x.is_zero()) {
            let k: Vec<String> = self.k.iter().map(crate::rational::format_rational).collect();
            parts.push(format!("K[{}]", k.join(",")));
        }
        for &i in &self.e {
            parts.push(format!("e{}", i + 1));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// A finite linear combination of normal-form monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PBWElement {
    terms: BTreeMap<Monomial, S>,
}

impl PBWElement {
    pub fn zero() -> Self {
        PBWElement { terms: BTreeMap::new() }
    }

    pub fn from_monomial(m: Monomial, c: S) -> Self {
        let mut x = Self::zero();
        x.add_term(m, c);
        x
    }

    pub fn scalar(rank: usize, c: S) -> Self {
        Self::from_monomial(Monomial::unit(rank), c)
    }

    pub fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PBWElement {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// True if every monomial has an empty e-word.
    pub fn has_no_e(&self) -> bool {
        self.terms.keys().all(|m| m.e.is_empty())
    }

    pub fn has_no_f(&self) -> bool {
        self.terms.keys().all(|m| m.f.is_empty())
    }

    /// Image under `e_i, f_i ↦ 0`, `K_λ ↦ 1`.
    pub fn counit(&self) -> S {
        self.terms
            .iter()
            .filter(|(m, _)| m.is_cartan())
            .fold(S::zero(), |acc, (_, c)| acc + c)
    }

    pub fn monomial_list(&self) -> Vec<MonomialRecord> {
        self.terms
            .iter()
            .map(|(m, c)| MonomialRecord {
                f: m.f.iter().map(|&x| x as usize + 1).collect(),
                lambda: m.k.iter().map(crate::rational::format_rational).collect(),
                e: m.e.iter().map(|&x| x as usize + 1).collect(),
                coeff: c.to_string(),
            })
            .collect()
    }
}

/// Serializable view of one monomial; generator indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialRecord {
    pub f: Vec<usize>,
    pub lambda: Vec<String>,
    pub e: Vec<usize>,
    pub coeff: String,
}

impl fmt::Display for PBWElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({})·{}", c, m)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl std::ops::Add for &PBWElement {
    type Output = PBWElement;
    fn add(self, o: &PBWElement) -> PBWElement {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &PBWElement {
    type Output = PBWElement;
    fn sub(self, o: &PBWElement) -> PBWElement {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl std::ops::Neg for &PBWElement {
    type Output = PBWElement;
    fn neg(self) -> PBWElement {
        self.scale(&S::from_int(-1))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    E,
    F,
}

/// One generator, for building words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    E(usize),
    F(usize),
    K(Weight),
}

#[derive(Clone, Debug)]
struct Piece {
    f: Word,
    k: Weight,
    e: Word,
    c: S,
}

struct Steps {
    used: u64,
    budget: u64,
}

impl Steps {
    fn tick(&mut self, n: u64) -> Result<()> {
        self.used += n;
        if self.used > self.budget {
            Err(Error::StepBudget(self.budget))
        } else {
            Ok(())
        }
    }
}

/// The algebra for one Coxeter context, with memoized rewriting data.
pub struct Algebra {
    pub ctx: CoxeterContext,
    rank: usize,
    /// `(α_i, α_j)` as rationals.
    form: Vec<Vec<Rational>>,
    /// `c_ij`.
    cayley: Vec<Vec<Rational>>,
    /// `1/(q_i − q_i^{-1})`.
    qdiff_inv: Vec<S>,
    budget: u64,
    e_reducer: SerreReducer,
    f_reducer: SerreReducer,
    pass_cache: PieceCache<(u8, Word)>,
    straight_cache: PieceCache<(Word, Word)>,
    roots: OnceLock<std::result::Result<RootVectors, Error>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}{}, pi = {:?})", self.ctx.rs.series, self.rank, self.ctx.pi)
    }
}

fn budget_from_env() -> u64 {
    std::env::var("QWHIT_STEP_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_STEP_BUDGET)
}

impl Algebra {
    pub fn new(ctx: CoxeterContext) -> Result<Self> {
        Self::with_budget(ctx, budget_from_env())
    }

    pub fn with_budget(ctx: CoxeterContext, budget: u64) -> Result<Self> {
        let l = ctx.rank();
        let form = (0..l).map(|i| (0..l).map(|j| int(ctx.rs.form[i][j])).collect()).collect();
        let cayley = (0..l).map(|i| (0..l).map(|j| ctx.cayley[(i, j)].clone()).collect()).collect();
        let qdiff_inv = (0..l)
            .map(|i| {
                let qi = S::q_int_pow(ctx.rs.d[i]);
                (&qi - &qi.inv().expect("nonzero")).inv().expect("nonzero")
            })
            .collect();
        let e_reducer = SerreReducer::new(&ctx.rs, &ctx.cayley)?;
        let f_reducer = SerreReducer::new(&ctx.rs, &ctx.cayley)?;
        Ok(Algebra {
            rank: l,
            form,
            cayley,
            qdiff_inv,
            budget,
            e_reducer,
            f_reducer,
            pass_cache: Mutex::new(HashMap::new()),
            straight_cache: Mutex::new(HashMap::new()),
            roots: OnceLock::new(),
            ctx,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn step_budget(&self) -> u64 {
        self.budget
    }

    pub fn reducer(&self, side: Side) -> &SerreReducer {
        match side {
            Side::E => &self.e_reducer,
            Side::F => &self.f_reducer,
        }
    }

    pub fn zero_weight(&self) -> Weight {
        vec![Rational::zero(); self.rank]
    }

    pub fn one(&self) -> PBWElement {
        PBWElement::scalar(self.rank, S::one())
    }

    pub fn scalar(&self, c: S) -> PBWElement {
        PBWElement::scalar(self.rank, c)
    }

    pub fn e(&self, i: usize) -> PBWElement {
        PBWElement::from_monomial(
            Monomial {
                f: vec![],
                k: self.zero_weight(),
                e: vec![i as u8],
            },
            S::one(),
        )
    }

    pub fn f(&self, i: usize) -> PBWElement {
        PBWElement::from_monomial(
            Monomial {
                f: vec![i as u8],
                k: self.zero_weight(),
                e: vec![],
            },
            S::one(),
        )
    }

    pub fn k(&self, lambda: &[Rational]) -> PBWElement {
        PBWElement::from_monomial(
            Monomial {
                f: vec![],
                k: lambda.to_vec(),
                e: vec![],
            },
            S::one(),
        )
    }

    /// `K_{α_i}`.
    pub fn k_simple(&self, i: usize, power: i64) -> PBWElement {
        let mut w = self.zero_weight();
        w[i] = int(power);
        self.k(&w)
    }

    pub fn letter(&self, l: &Letter) -> PBWElement {
        match l {
            Letter::E(i) => self.e(*i),
            Letter::F(i) => self.f(*i),
            Letter::K(w) => self.k(w),
        }
    }

    /// `(λ, α_j)`.
    pub fn weight_pairing_simple(&self, lambda: &[Rational], j: usize) -> Rational {
        (0..self.rank).fold(Rational::zero(), |acc, i| {
            if lambda[i].is_zero() || self.form[i][j].is_zero() {
                acc
            } else {
                acc + &lambda[i] * &self.form[i][j]
            }
        })
    }

    fn pairing_with_word(&self, lambda: &[Rational], w: &[u8]) -> Rational {
        if lambda.iter().all(|x| x.is_zero()) {
            return Rational::zero();
        }
        w.iter()
            .fold(Rational::zero(), |acc, &j| acc + self.weight_pairing_simple(lambda, j as usize))
    }

    /// `e_i · F` for an f-word `F`, as pieces `f' K_μ e'` with `e'` empty or `[i]`.
    fn pass_one(&self, i: u8, f: &[u8]) -> Arc<Vec<Piece>> {
        let key = (i, f.to_vec());
        if let Some(p) = self.pass_cache.lock().expect("poisoned").get(&key) {
            return p.clone();
        }
        let iu = i as usize;
        let zero = self.zero_weight();
        let total: Rational = f.iter().fold(Rational::zero(), |acc, &j| acc + &self.cayley[iu][j as usize]);
        let mut out = vec![Piece {
            f: f.to_vec(),
            k: zero.clone(),
            e: vec![i],
            c: S::q_pow(&-total),
        }];
        let mut prefix = Rational::zero();
        for (pos, &j) in f.iter().enumerate() {
            if j == i {
                let rest = &f[pos + 1..];
                let mut w = f[..pos].to_vec();
                w.extend_from_slice(rest);
                let base = S::q_pow(&-prefix.clone()) * &self.qdiff_inv[iu];
                let pr: Rational = rest.iter().fold(Rational::zero(), |acc, &x| acc + &self.form[iu][x as usize]);
                let mut kp = zero.clone();
                kp[iu] = int(1);
                let mut km = zero.clone();
                km[iu] = int(-1);
                out.push(Piece {
                    f: w.clone(),
                    k: kp,
                    e: vec![],
                    c: &base * S::q_pow(&-pr.clone()),
                });
                out.push(Piece {
                    f: w,
                    k: km,
                    e: vec![],
                    c: -(&base * S::q_pow(&pr)),
                });
            }
            prefix += &self.cayley[iu][j as usize];
        }
        let out = Arc::new(out);
        self.pass_cache.lock().expect("poisoned").insert(key, out.clone());
        out
    }

    /// `E · F` rewritten as pieces `f' K_μ e'`, with words not yet reduced.
    fn straighten(&self, e: &[u8], f: &[u8], steps: &mut Steps) -> Result<Arc<Vec<Piece>>> {
        if e.is_empty() || f.is_empty() {
            return Ok(Arc::new(vec![Piece {
                f: f.to_vec(),
                k: self.zero_weight(),
                e: e.to_vec(),
                c: S::one(),
            }]));
        }
        let key = (e.to_vec(), f.to_vec());
        if let Some(p) = self.straight_cache.lock().expect("poisoned").get(&key) {
            return Ok(p.clone());
        }
        let mut terms: HashMap<(Word, Weight, Word), S> = HashMap::new();
        terms.insert((f.to_vec(), self.zero_weight(), Vec::new()), S::one());
        for &i in e.iter().rev() {
            let mut next: HashMap<(Word, Weight, Word), S> = HashMap::new();
            for ((fw, mu, ew), s) in terms {
                let pieces = self.pass_one(i, &fw);
                steps.tick(pieces.len() as u64)?;
                for p in pieces.iter() {
                    let mut c = &s * &p.c;
                    let mut new_e = p.e.clone();
                    if !p.e.is_empty() {
                        let x = self.weight_pairing_simple(&mu, i as usize);
                        if !x.is_zero() {
                            c = c * S::q_pow(&-x);
                        }
                    }
                    new_e.extend_from_slice(&ew);
                    let k: Weight = p.k.iter().zip(&mu).map(|(a, b)| a + b).collect();
                    let entry = next.entry((p.f.clone(), k, new_e)).or_insert_with(S::zero);
                    *entry = &*entry + &c;
                }
            }
            terms = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        let out: Vec<Piece> = terms.into_iter().map(|((f, k, e), c)| Piece { f, k, e, c }).collect();
        let out = Arc::new(out);
        self.straight_cache.lock().expect("poisoned").insert(key, out.clone());
        Ok(out)
    }

    pub fn mul(&self, x: &PBWElement, y: &PBWElement) -> Result<PBWElement> {
        let mut steps = Steps {
            used: 0,
            budget: self.budget,
        };
        let mut raw: HashMap<(Word, Weight, Word), S> = HashMap::new();
        for (m1, c1) in &x.terms {
            for (m2, c2) in &y.terms {
                let c12 = c1 * c2;
                let pieces = self.straighten(&m1.e, &m2.f, &mut steps)?;
                for p in pieces.iter() {
                    steps.tick(1)?;
                    let s1 = self.pairing_with_word(&m1.k, &p.f);
                    let s2 = self.pairing_with_word(&m2.k, &p.e);
                    let mut c = &c12 * &p.c;
                    let ex = -(s1 + s2);
                    if !ex.is_zero() {
                        c = c * S::q_pow(&ex);
                    }
                    let mut f = m1.f.clone();
                    f.extend_from_slice(&p.f);
                    let mut e = p.e.clone();
                    e.extend_from_slice(&m2.e);
                    let k: Weight = (0..self.rank).map(|i| &m1.k[i] + &p.k[i] + &m2.k[i]).collect();
                    let entry = raw.entry((f, k, e)).or_insert_with(S::zero);
                    *entry = &*entry + &c;
                }
            }
        }
        self.reduce_raw(raw, &mut steps)
    }

    fn reduce_raw(&self, raw: HashMap<(Word, Weight, Word), S>, steps: &mut Steps) -> Result<PBWElement> {
        let mut out = PBWElement::zero();
        for ((f, k, e), c) in raw {
            if c.is_zero() {
                continue;
            }
            let nf = self.f_reducer.normal_form(&f)?;
            let ne = self.e_reducer.normal_form(&e)?;
            steps.tick((nf.len() * ne.len()) as u64)?;
            for (fw, a) in &nf {
                for (ew, b) in &ne {
                    out.add_term(
                        Monomial {
                            f: fw.clone(),
                            k: k.clone(),
                            e: ew.clone(),
                        },
                        &(&c * a) * b,
                    );
                }
            }
        }
        Ok(out)
    }

    /// Re-reduces the words of an element assembled outside the engine.
    pub fn normalize(&self, x: &PBWElement) -> Result<PBWElement> {
        let mut steps = Steps {
            used: 0,
            budget: self.budget,
        };
        let raw = x
            .terms
            .iter()
            .map(|(m, c)| ((m.f.clone(), m.k.clone(), m.e.clone()), c.clone()))
            .collect();
        self.reduce_raw(raw, &mut steps)
    }

    /// Normal form of a product of generators.
    pub fn normal_form(&self, word: &[Letter]) -> Result<PBWElement> {
        word.iter().try_fold(self.one(), |acc, l| self.mul(&acc, &self.letter(l)))
    }

    pub fn product(&self, xs: &[&PBWElement]) -> Result<PBWElement> {
        xs.iter().try_fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    pub fn pow(&self, x: &PBWElement, k: u32) -> Result<PBWElement> {
        (0..k).try_fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    pub fn commutator(&self, x: &PBWElement, y: &PBWElement) -> Result<PBWElement> {
        Ok(&self.mul(x, y)? - &self.mul(y, x)?)
    }

    /// True if every stored word is standard.
    pub fn is_normal(&self, x: &PBWElement) -> Result<bool> {
        for m in x.terms.keys() {
            if !self.f_reducer.is_standard(&m.f)? || !self.e_reducer.is_standard(&m.e)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Root vectors and the constants `a(β)` for the π-compatible normal ordering.
    pub fn root_vectors(&self) -> Result<&RootVectors> {
        self.roots.get_or_init(|| RootVectors::build(self)).as_ref().map_err(|e| e.clone())
    }
}

/// Values of a character on the simple generators of one side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub values: Vec<S>,
    pub side: Side,
}

impl Character {
    /// A non-singular character; every value must be nonzero.
    pub fn new(values: Vec<S>, side: Side) -> Result<Self> {
        if values.iter().any(|v| v.is_zero()) {
            return Err(Error::InvalidInput("character values must be nonzero".into()));
        }
        Ok(Character { values, side })
    }

    /// A possibly degenerate character.
    pub fn degenerate(values: Vec<S>, side: Side) -> Self {
        Character { values, side }
    }

    pub fn from_rationals(values: &[Rational], side: Side) -> Result<Self> {
        Self::new(values.iter().cloned().map(S::from_rational).collect(), side)
    }

    pub fn is_nonsingular(&self) -> bool {
        self.values.iter().all(|v| !v.is_zero())
    }

    pub fn on_word(&self, w: &[u8]) -> S {
        w.iter().fold(S::one(), |acc, &i| acc * &self.values[i as usize])
    }

    /// Multiplicative extension to the one-sided subalgebra.
    pub fn apply(&self, x: &PBWElement) -> Result<S> {
        let mut acc = S::zero();
        for (m, c) in x.terms() {
            let (own, other) = match self.side {
                Side::E => (&m.e, &m.f),
                Side::F => (&m.f, &m.e),
            };
            if !other.is_empty() || m.k.iter().any(|x| !x.is_zero()) {
                return Err(Error::MixedSide(m.to_string()));
            }
            acc = acc + c * self.on_word(own);
        }
        Ok(acc)
    }
}

/// Projection along the left ideal generated by `e − χ(e)`: `f K e ↦ χ(e) f K`.
pub fn rho_chi(x: &PBWElement, chi: &Character) -> Result<PBWElement> {
    if chi.side != Side::E {
        return Err(Error::InvalidInput("rho_chi needs an e-side character".into()));
    }
    let mut out = PBWElement::zero();
    for (m, c) in x.terms() {
        let v = chi.on_word(&m.e);
        out.add_term(
            Monomial {
                f: m.f.clone(),
                k: m.k.clone(),
                e: Vec::new(),
            },
            c * &v,
        );
    }
    Ok(out)
}

/// `x · v = ρ_χ([x, v])`.
pub fn whittaker_action(alg: &Algebra, x: &PBWElement, v: &PBWElement, chi: &Character) -> Result<PBWElement> {
    rho_chi(&alg.commutator(x, v)?, chi)
}

/// `Σ_r (−1)^r q^{r c_ij} [1−a_ij choose r]_{q_i} χ(e_i)^{1−a_ij} χ(e_j)` for a pair `i ≠ j`.
pub fn serre_character_value(ctx: &CoxeterContext, chi: &Character, i: usize, j: usize) -> Result<S> {
    let m = (1 - ctx.rs.cartan[i][j]) as u32;
    let mut acc = S::zero();
    for r in 0..=m {
        let sign = if r % 2 == 0 { 1 } else { -1 };
        acc = acc + crate::qarith::q_binom(m, r, &int(ctx.rs.d[i]))? * S::q_pow(&(&ctx.cayley[(i, j)] * int(r as i64))) * S::from_int(sign);
    }
    Ok(acc * chi.values[i].pow(m as i64) * &chi.values[j])
}
