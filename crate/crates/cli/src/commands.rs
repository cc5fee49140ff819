use anyhow::{Context, Result};
use qwhit_core::crosssec::{
    self, all_characters, character_identity, is_unipotent_upper, kostant_section, principal_nilpotent, sample, section_from_characters,
    CayleyRMatrix, SlGroup,
};
use qwhit_core::qarith::{gauss_product_check, product_roots, qbinom_root_scan};
use qwhit_core::rational::{int, rat};
use qwhit_core::rootsys::{coxeter_matrix, permutations};
use qwhit_core::toda::{closed_form_m1, TodaSystem};
use qwhit_core::uqalg::reps::{catalogue, rep_matrices};
use qwhit_core::uqalg::rmatrix::{casimir, whittaker_generator};
use qwhit_core::uqalg::serre::words_of_degree;
use qwhit_core::uqalg::{rho_chi, serre_character_value, whittaker_action, Algebra, Character, Side, DEFAULT_STEP_BUDGET};
use qwhit_core::{build_root_system, CoxeterContext, Error, LaurentScalar, QMatrix, Rational, Series};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::{AlgebraArgs, Cli, Command};
use crate::json::{self as js, parse_list, parse_matrix, parse_pi, parse_vector};
use crate::report::{Check, RunReport, UsageError};

pub const STEP_BUDGET_VAR: &str = "QWHIT_STEP_BUDGET";

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Core errors caused by bad input are usage errors.
pub fn usage_or(e: Error) -> anyhow::Error {
    match e {
        Error::InvalidInput(_) | Error::Unsupported { .. } | Error::UnknownRep(_) => UsageError(e.to_string()).into(),
        other => other.into(),
    }
}

pub fn context(a: &AlgebraArgs) -> Result<CoxeterContext> {
    let series: Series = a.series.parse().map_err(usage_or)?;
    let rs = build_root_system(series, a.rank).map_err(usage_or)?;
    let pi = match &a.pi {
        Some(s) => parse_pi(s, a.rank)?,
        None => (0..a.rank).collect(),
    };
    CoxeterContext::new(rs, pi).map_err(usage_or)
}

pub fn algebra(ctx: CoxeterContext) -> Result<Algebra> {
    let budget = match std::env::var(STEP_BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map_err(|_| UsageError(format!("{} must be a positive integer", STEP_BUDGET_VAR)))?,
        Err(_) => DEFAULT_STEP_BUDGET,
    };
    Algebra::with_budget(ctx, budget).map_err(Into::into)
}

fn character(flag: &str, value: &Option<String>, rank: usize, side: Side, nonsingular: bool) -> Result<Character> {
    let vals = match value {
        Some(s) => parse_list(flag, s)?,
        None => vec![int(1); rank],
    };
    if vals.len() != rank {
        return Err(UsageError(format!("--{} needs {} values", flag, rank)).into());
    }
    let vals: Vec<LaurentScalar> = vals.into_iter().map(LaurentScalar::from_rational).collect();
    if nonsingular {
        Character::new(vals, side).map_err(usage_or)
    } else {
        Ok(Character::degenerate(vals, side))
    }
}

fn chi_json(c: &Character) -> Value {
    Value::Array(c.values.iter().map(js::scalar).collect())
}

fn pi_json(ctx: &CoxeterContext) -> Value {
    json!(ctx.pi.iter().map(|i| i + 1).collect::<Vec<_>>())
}

fn context_payload(ctx: &CoxeterContext) -> Result<Value> {
    let rs = &ctx.rs;
    Ok(json!({
        "series": rs.series.to_string(),
        "rank": rs.rank,
        "pi": pi_json(ctx),
        "cartan": js::int_matrix(&rs.cartan),
        "d": rs.d,
        "positive_roots": rs.positive_roots,
        "coxeter_number": ctx.coxeter_number,
        "coxeter_matrix": js::matrix(&ctx.s_matrix),
        "cayley": js::matrix(&ctx.cayley),
        "epsilon": js::int_matrix(&ctx.epsilon),
        "orbits": ctx.coxeter_orbits(),
        "normal_ordering": ctx.normal_ordering()?,
    }))
}

fn algebra_inputs(a: &AlgebraArgs) -> Value {
    json!({ "type": a.series, "rank": a.rank, "pi": a.pi })
}

fn sl_group(n: usize, s_rep: &Option<String>) -> Result<SlGroup> {
    match s_rep {
        Some(s) => {
            let m = parse_matrix("s-rep", s)?;
            if m.rows() != n {
                return Err(UsageError(format!("--s-rep must be {}×{}", n, n)).into());
            }
            SlGroup::with_representative(m).map_err(usage_or)
        }
        None => SlGroup::new(n).map_err(usage_or),
    }
}

/// A seeded element `a·s·b` of the big cell.
pub fn random_cell_element(g: &SlGroup, rng: &mut ChaCha8Rng) -> QMatrix {
    &(&sample::unipotent_upper(g.n, rng) * &g.s) * &sample::unipotent_upper(g.n, rng)
}

/// Smallest grid point `c_i ∈ {±1/2, ±1, ±3/2, …}` whose `u` lies in the cell.
pub fn valid_u_params(g: &SlGroup) -> Result<Vec<Rational>> {
    let grid: Vec<Rational> = (1..=6).flat_map(|k| [rat(k, 2), rat(-k, 2)]).collect();
    let l = g.n - 1;
    let total = grid.len().pow(l as u32);
    for idx in 0..total {
        let mut k = idx;
        let c: Vec<Rational> = (0..l)
            .map(|_| {
                let v = grid[k % grid.len()].clone();
                k /= grid.len();
                v
            })
            .collect();
        if g.build_u(&c)?.witness.is_some() {
            return Ok(c);
        }
    }
    anyhow::bail!("no grid point gives u in N_+ s N_+")
}

pub fn run(cli: &Cli) -> Result<RunReport> {
    let name = cli.command.name();
    let start = std::time::Instant::now();
    let mut report = match &cli.command {
        Command::RootSystem(a) => root_system(name, a)?,
        Command::Cayley { alg, s_sym } => cayley(name, alg, s_sym)?,
        Command::Orbits(a) => orbits(name, a)?,
        Command::QbinomScan { m, range } => qbinom_scan(name, *m, *range)?,
        Command::SerreCheck { alg, chi } => serre_check(name, alg, chi)?,
        Command::Casimir { alg, rep } => casimir_cmd(name, alg, rep)?,
        Command::Whittaker { alg, chi, rep } => whittaker(name, alg, chi, rep)?,
        Command::Toda {
            alg,
            chi,
            chibar,
            check_commute,
        } => toda(name, alg, chi, chibar, *check_commute)?,
        Command::CrossSection { n, matrix, s_rep } => cross_section(name, *n, matrix, s_rep, cli.seed)?,
        Command::KostantSection { n, b } => kostant(name, *n, b, cli.seed)?,
        Command::RmatrixCheck { n, trials } => rmatrix_check(name, *n, *trials, cli.seed)?,
        Command::Gstar {
            n,
            x,
            u_params,
            n_plus,
            trials,
            s_rep,
        } => gstar(name, *n, x, u_params, n_plus, *trials, s_rep, cli.seed)?,
        Command::Acceptance { suite } => crate::acceptance::report(name, suite, cli.seed)?,
    };
    if cli.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis());
    }
    Ok(report)
}

fn cayley_identity(ctx: &CoxeterContext) -> Check {
    Check::new("cayley_equals_epsilon_form", ctx.cayley == ctx.epsilon_form())
}

fn root_system(name: &str, a: &AlgebraArgs) -> Result<RunReport> {
    let ctx = context(a)?;
    let out = context_payload(&ctx)?;
    let checks = vec![
        Check::new(
            "coxeter_formula_matches_reflection_product",
            coxeter_matrix(&ctx.rs, &ctx.pi).is_ok(),
        ),
        Check::new(
            "positive_root_count",
            ctx.rs.positive_roots.len() * 2 == ctx.rs.rank * ctx.coxeter_number,
        ),
        cayley_identity(&ctx),
    ];
    Ok(RunReport::new(name, algebra_inputs(a), out, checks))
}

fn cayley(name: &str, a: &AlgebraArgs, s_sym: &Option<String>) -> Result<RunReport> {
    let ctx = context(a)?;
    let l = ctx.rank();
    let s = match s_sym {
        Some(s) => parse_matrix("s-sym", s)?,
        None => QMatrix::zeros(l, l),
    };
    if s.rows() != l {
        return Err(UsageError(format!("--s-sym must be {}×{}", l, l)).into());
    }
    let n = ctx.solve_twist(&s).map_err(usage_or)?;
    let mut out = context_payload(&ctx)?;
    out["twist"] = js::matrix(&n);
    out["epsilon_form"] = js::matrix(&ctx.epsilon_form());
    let checks = vec![
        cayley_identity(&ctx),
        Check::new("twist_residual_zero", ctx.twist_residual(&n).is_zero()),
    ];
    let mut inputs = algebra_inputs(a);
    inputs["s_sym"] = json!(s_sym);
    Ok(RunReport::new(name, inputs, out, checks))
}

fn orbits(name: &str, a: &AlgebraArgs) -> Result<RunReport> {
    let ctx = context(a)?;
    let orbits = ctx.coxeter_orbits();
    let out = context_payload(&ctx)?;
    let checks = vec![
        Check::new("orbit_count_is_rank", orbits.len() == ctx.rank()),
        Check::new("orbit_size_is_coxeter_number", orbits.iter().all(|o| o.len() == ctx.coxeter_number)),
    ];
    Ok(RunReport::new(name, algebra_inputs(a), out, checks))
}

fn qbinom_scan(name: &str, m: u32, range: Option<i64>) -> Result<RunReport> {
    if m == 0 {
        return Err(UsageError("--m must be at least 1".into()).into());
    }
    let r = range.unwrap_or(m as i64 + 3).abs();
    let found = qbinom_root_scan(m, -r..=r);
    let predicted: Vec<i64> = product_roots(m).into_iter().filter(|c| c.abs() <= r).collect();
    let top = m as i64 - 1;
    let product_ok = (-r..=r).all(|c| gauss_product_check(m, c).is_ok());
    let checks = vec![
        Check::new("matches_product_roots", found == predicted),
        Check::new("sum_equals_product", product_ok),
        Check::new(
            "contains_plus_minus_m_minus_1",
            top > r || (found.contains(&top) && found.contains(&-top)),
        ),
    ];
    Ok(RunReport::new(
        name,
        json!({ "m": m, "range": r }),
        json!({ "m": m, "vanishing_c": found, "predicted": predicted }),
        checks,
    ))
}

/// Serre identities for one context: closed form per pair, then the character of every
/// word of the Serre degree against its normal form. Returns (checked, failures).
pub fn serre_identities(alg: &Algebra, values: &[LaurentScalar]) -> Result<(usize, Vec<String>)> {
    let ctx = &alg.ctx;
    let l = ctx.rank();
    let mut checked = 0;
    let mut failures = Vec::new();
    for i in 0..l {
        for j in 0..l {
            if i == j || ctx.rs.cartan[i][j] == 0 {
                continue;
            }
            let chi = Character::new(values.to_vec(), Side::E)?;
            checked += 1;
            if !serre_character_value(ctx, &chi, i, j)?.is_zero() {
                failures.push(format!("closed form ({}, {})", i + 1, j + 1));
            }
            let mut degree = vec![0u32; l];
            degree[i] = (1 - ctx.rs.cartan[i][j]) as u32;
            degree[j] = 1;
            for side in [Side::E, Side::F] {
                let chi = Character::new(values.to_vec(), side)?;
                for w in words_of_degree(&degree) {
                    let nf = alg.reducer(side).normal_form(&w)?;
                    let via = nf.iter().fold(LaurentScalar::zero(), |acc, (u, c)| acc + c * chi.on_word(u));
                    checked += 1;
                    if via != chi.on_word(&w) {
                        failures.push(format!("{:?}-side word {:?}", side, w));
                    }
                }
            }
        }
    }
    Ok((checked, failures))
}

fn serre_check(name: &str, a: &AlgebraArgs, chi: &Option<String>) -> Result<RunReport> {
    let base = context(a)?;
    let chi = character("chi", chi, base.rank(), Side::E, true)?;
    let pis = match &a.pi {
        Some(_) => vec![base.pi.clone()],
        None => permutations(base.rank()),
    };
    let mut checked = 0;
    let mut failures = Vec::new();
    for pi in &pis {
        let alg = algebra(CoxeterContext::new(base.rs.clone(), pi.clone())?)?;
        let (c, f) = serre_identities(&alg, &chi.values)?;
        checked += c;
        failures.extend(
            f.into_iter()
                .map(|s| format!("pi {:?}: {}", pi.iter().map(|i| i + 1).collect::<Vec<_>>(), s)),
        );
    }
    let all_zero = failures.is_empty();
    let mut inputs = algebra_inputs(a);
    inputs["chi"] = chi_json(&chi);
    Ok(RunReport::new(
        name,
        inputs,
        json!({ "permutations": pis.len(), "identities_checked": checked, "all_zero": all_zero, "failures": failures }),
        vec![Check::new("all_zero", all_zero)],
    ))
}

/// Commutators of `x` with every `e_i`, `f_i`, `K_{α_i}` that fail to vanish.
pub fn central_failures(alg: &Algebra, x: &qwhit_core::uqalg::PBWElement) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for i in 0..alg.rank() {
        for (label, g) in [("e", alg.e(i)), ("f", alg.f(i)), ("K", alg.k_simple(i, 1))] {
            if !alg.commutator(x, &g)?.is_zero() {
                bad.push(format!("{}{}", label, i + 1));
            }
        }
    }
    Ok(bad)
}

fn casimir_cmd(name: &str, a: &AlgebraArgs, rep: &str) -> Result<RunReport> {
    let alg = algebra(context(a)?)?;
    let v = rep_matrices(&alg.ctx, rep).map_err(usage_or)?;
    let c = casimir(&alg, &v)?;
    let bad = central_failures(&alg, &c)?;
    let mut inputs = algebra_inputs(a);
    inputs["rep"] = json!(rep);
    Ok(RunReport::new(
        name,
        inputs,
        json!({ "rep": rep, "dim": v.dim(), "terms": c.len(), "casimir": c.monomial_list() }),
        vec![Check::with_detail(
            "central",
            bad.is_empty(),
            format!("non-commuting generators: {:?}", bad),
        )],
    ))
}

fn whittaker(name: &str, a: &AlgebraArgs, chi: &Option<String>, rep: &Option<String>) -> Result<RunReport> {
    let alg = algebra(context(a)?)?;
    let l = alg.rank();
    let chi = character("chi", chi, l, Side::E, true)?;
    let names = match rep {
        Some(r) => vec![r.clone()],
        None => catalogue(&alg.ctx),
    };
    if names.is_empty() {
        return Err(UsageError(format!("no catalogued modules for type {}", a.series)).into());
    }
    let mut gens = Vec::new();
    let mut rhos = Vec::new();
    let mut checks = Vec::new();
    for n in &names {
        let v = rep_matrices(&alg.ctx, n).map_err(usage_or)?;
        let fast = whittaker_generator(&alg, &v, &chi)?;
        let c = casimir(&alg, &v)?;
        let rho = rho_chi(&c, &chi)?;
        checks.push(Check::new(format!("{}: generator equals projection of C_V", n), fast == rho));
        let mut inv = true;
        for i in 0..l {
            inv &= whittaker_action(&alg, &alg.e(i), &rho, &chi)?.is_zero();
        }
        checks.push(Check::new(format!("{}: e-invariant", n), inv));
        gens.push(json!({ "rep": n, "monomials": fast.monomial_list() }));
        rhos.push((n.clone(), c, rho));
    }
    for (na, ca, ra) in &rhos {
        for (nb, cb, rb) in &rhos {
            let lhs = rho_chi(&alg.mul(ca, cb)?, &chi)?;
            let rhs = alg.mul(ra, rb)?;
            checks.push(Check::new(
                format!("rho(C_{} C_{}) = rho(C_{}) rho(C_{})", na, nb, na, nb),
                lhs == rhs,
            ));
        }
    }
    let mut inputs = algebra_inputs(a);
    inputs["chi"] = chi_json(&chi);
    inputs["rep"] = json!(rep);
    Ok(RunReport::new(name, inputs, json!({ "generators": gens }), checks))
}

fn toda(name: &str, a: &AlgebraArgs, chi: &Option<String>, chibar: &Option<String>, check_commute: bool) -> Result<RunReport> {
    let ctx = context(a)?;
    let l = ctx.rank();
    let chi = character("chi", chi, l, Side::E, false)?;
    let chibar = character("chibar", chibar, l, Side::F, false)?;
    let sys = TodaSystem::new(ctx, chi.clone(), chibar.clone()).map_err(usage_or)?;
    let names = catalogue(sys.ctx());
    if names.is_empty() {
        return Err(UsageError(format!("no catalogued modules for type {}", a.series)).into());
    }
    let hs = sys.hamiltonians()?;
    let mut out = json!({
        "hamiltonians": names.iter().zip(&hs).map(|(n, h)| json!({ "rep": n, "terms": h.records() })).collect::<Vec<_>>(),
    });
    if let Ok(closed) = closed_form_m1(&sys.ctx().rs, &chi, &chibar) {
        let flipped = Character::degenerate(chibar.values.iter().map(|v| -v).collect(), Side::F);
        let opposite = closed_form_m1(&sys.ctx().rs, &chi, &flipped)?;
        out["closed_form"] = json!({
            "terms": closed.records(),
            "matches_m1": closed == hs[0],
            "matches_m1_with_opposite_potential_sign": opposite == hs[0],
        });
    }
    let mut checks = Vec::new();
    if check_commute {
        let bad = sys.noncommuting_pairs(&hs);
        out["commutators_zero"] = json!(bad.is_empty());
        checks.push(Check::with_detail(
            "commutators_zero",
            bad.is_empty(),
            format!("non-commuting pairs: {:?}", bad),
        ));
    }
    let mut inputs = algebra_inputs(a);
    inputs["chi"] = chi_json(&chi);
    inputs["chibar"] = chi_json(&chibar);
    inputs["check_commute"] = json!(check_commute);
    Ok(RunReport::new(name, inputs, out, checks))
}

fn cross_section(name: &str, n: usize, matrix: &Option<String>, s_rep: &Option<String>, seed: u64) -> Result<RunReport> {
    let g = sl_group(n, s_rep)?;
    let mut r = rng(seed);
    let l = match matrix {
        Some(s) => parse_matrix("matrix", s)?,
        None => random_cell_element(&g, &mut r),
    };
    if l.rows() != n {
        return Err(UsageError(format!("--matrix must be {}×{}", n, n)).into());
    }
    let inputs = json!({ "n": n, "matrix": js::matrix(&l), "s_rep": s_rep, "seed": seed });
    let res = match g.cross_section(&l) {
        Ok(res) => res,
        Err(Error::NotInCell) => {
            return Ok(RunReport::new(
                name,
                inputs,
                json!({ "s": js::matrix(&g.s) }),
                vec![Check::with_detail("in_cell", false, "not in N_+ s N_+")],
            ))
        }
        Err(e) => return Err(usage_or(e)),
    };
    let conj = &(&res.u * &l) * &res.u.inverse().context("conjugator is invertible")?;
    let w = sample::unipotent_upper(n, &mut r);
    let double = g.double_solve_agrees(&l, &w)?;
    let checks = vec![
        Check::new("in_cell", true),
        Check::new("conjugator_unipotent", is_unipotent_upper(&res.u)),
        Check::new("conjugates_into_slice", conj == res.slice && g.is_in_nplus_prime(&res.v)),
        Check::new("char_poly_preserved", res.slice.char_poly() == l.char_poly()),
        Check::new("unique", res.unique),
        Check::new("double_solve_agrees", double),
    ];
    Ok(RunReport::new(
        name,
        inputs,
        json!({
            "s": js::matrix(&g.s),
            "u": js::matrix(&res.u),
            "v": js::matrix(&res.v),
            "slice": js::matrix(&res.slice),
            "characters": js::rationals(&crosssec::fundamental_characters(&l)),
        }),
        checks,
    ))
}

fn kostant(name: &str, n: usize, b: &Option<String>, seed: u64) -> Result<RunReport> {
    if n < 2 {
        return Err(UsageError("--n must be at least 2".into()).into());
    }
    let b = match b {
        Some(s) => parse_matrix("b", s)?,
        None => sample::traceless_upper(n, &mut rng(seed)),
    };
    if b.rows() != n {
        return Err(UsageError(format!("--b must be {}×{}", n, n)).into());
    }
    let k = kostant_section(&b).map_err(usage_or)?;
    let f = principal_nilpotent(n);
    let bf = &b + &f;
    let point = &f + &k.x;
    let chars = all_characters(&bf);
    let checks = vec![
        Check::new("conjugator_unipotent", is_unipotent_upper(&k.a)),
        Check::new("round_trip", &(&k.a * &bf) * &k.a.inverse().context("unipotent")? == point),
        Check::new("char_poly_preserved", point.char_poly() == bf.char_poly()),
        Check::new("characters_determine_point", section_from_characters(&chars) == point),
    ];
    Ok(RunReport::new(
        name,
        json!({ "n": n, "b": js::matrix(&b), "seed": seed }),
        json!({ "a": js::matrix(&k.a), "x": js::matrix(&k.x), "f_plus_x": js::matrix(&point), "characters": js::rationals(&chars) }),
        checks,
    ))
}

fn rmatrix_check(name: &str, n: usize, trials: usize, seed: u64) -> Result<RunReport> {
    let r = CayleyRMatrix::new(n).map_err(usage_or)?;
    let mut g = rng(seed);
    let mut zero = 0;
    for _ in 0..trials {
        let x = sample::traceless(n, &mut g);
        let y = sample::traceless(n, &mut g);
        if r.mcybe_residual(&x, &y).is_zero() {
            zero += 1;
        }
    }
    let checks = vec![
        Check::with_detail("mcybe_residual_zero", zero == trials, format!("{}/{}", zero, trials)),
        Check::new("image_kernel_identities", r.image_kernel_identities()),
    ];
    Ok(RunReport::new(
        name,
        json!({ "n": n, "trials": trials, "seed": seed }),
        json!({ "cayley_on_cartan": js::matrix(&r.cayley), "residual_zero": zero }),
        checks,
    ))
}

#[allow(clippy::too_many_arguments)]
fn gstar(
    name: &str,
    n: usize,
    x: &Option<String>,
    u_params: &Option<String>,
    n_plus: &Option<String>,
    trials: usize,
    s_rep: &Option<String>,
    seed: u64,
) -> Result<RunReport> {
    let g = sl_group(n, s_rep)?;
    let c = match u_params {
        Some(s) => parse_vector("u-params", s)?,
        None => valid_u_params(&g)?,
    };
    let bu = g.build_u(&c).map_err(usage_or)?;
    let mut inputs = json!({ "n": n, "u_params": js::rationals(&c), "s_rep": s_rep, "seed": seed });
    let mut out = json!({
        "s": js::matrix(&g.s),
        "u": js::matrix(&bu.u),
        "u_in_cell": bu.witness.is_some(),
    });
    let mut checks = Vec::new();
    if let Some(xs) = x {
        let d = parse_vector("x", xs)?;
        if d.len() != n || d.iter().any(|v| *v == int(0)) {
            return Err(UsageError(format!("--x needs {} nonzero entries", n)).into());
        }
        let h = QMatrix::diagonal(&d);
        let np = match n_plus {
            Some(s) => parse_matrix("n-plus", s)?,
            None => QMatrix::identity(n),
        };
        if np.rows() != n || !is_unipotent_upper(&np) {
            return Err(UsageError("--n-plus must be unipotent upper triangular".into()).into());
        }
        let el = g.gstar_factorize(&(&h * &np), &(&g.s_torus(&h) * &bu.u)).map_err(usage_or)?;
        let q = el.q_map();
        let witness = g.bruhat_cell_test(&q);
        out["h_plus"] = js::matrix(&h);
        out["n_plus"] = js::matrix(&np);
        out["q_map"] = js::matrix(&q);
        out["mu_n"] = js::matrix(el.mu_n());
        out["witness"] = match &witness {
            Some(w) => json!({ "a": js::matrix(&w.a), "b": js::matrix(&w.b) }),
            None => Value::Null,
        };
        checks.push(Check::new("q_map_in_cell", witness.is_some()));
        checks.push(Check::new("mu_n_is_u", el.mu_n() == &bu.u));
        if np.is_identity() {
            let id = character_identity(&g, &h, &np, &bu.u)?;
            out["regular"] = json!(id.regular);
            out["character_identity"] = json!(id.matches_twisted_torus);
            if id.regular {
                checks.push(Check::new("character_identity", id.matches_twisted_torus));
            }
        }
        inputs["x"] = json!(xs);
        inputs["n_plus"] = json!(n_plus);
    } else {
        let s = gstar_samples(&g, &bu.u, trials, &mut rng(seed))?;
        out["samples"] = json!(s);
        checks.push(Check::with_detail(
            "q_map_in_cell",
            s.in_cell == trials,
            format!("{}/{}", s.in_cell, trials),
        ));
        checks.push(Check::with_detail(
            "character_identity_regular",
            s.regular > 0 && s.identity_regular == s.regular,
            format!("{}/{} regular samples", s.identity_regular, s.regular),
        ));
        inputs["trials"] = json!(trials);
    }
    checks.insert(0, Check::new("u_in_cell", bu.witness.is_some()));
    Ok(RunReport::new(name, inputs, out, checks))
}

#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct GstarSamples {
    pub trials: usize,
    pub in_cell: usize,
    pub mu_n_is_u: usize,
    pub regular: usize,
    pub identity_regular: usize,
    /// Samples failing the regularity guard, where the identity is reported but not required.
    pub identity_unguarded: usize,
    pub unguarded: usize,
}

/// Random `(h_+ n_+, s(h_+) u)`: cell membership with random `n_+`, the character identity with `n_+ = 1`.
pub fn gstar_samples(g: &SlGroup, u: &QMatrix, trials: usize, r: &mut ChaCha8Rng) -> Result<GstarSamples> {
    let mut s = GstarSamples {
        trials,
        ..Default::default()
    };
    for _ in 0..trials {
        let h = sample::torus(g.n, r);
        let np = sample::unipotent_upper(g.n, r);
        let el = g.gstar_factorize(&(&h * &np), &(&g.s_torus(&h) * u))?;
        s.in_cell += g.bruhat_cell_test(&el.q_map()).is_some() as usize;
        s.mu_n_is_u += (el.mu_n() == u) as usize;
        let id = character_identity(g, &h, &QMatrix::identity(g.n), u)?;
        if id.regular {
            s.regular += 1;
            s.identity_regular += id.matches_twisted_torus as usize;
        } else {
            s.unguarded += 1;
            s.identity_unguarded += id.matches_twisted_torus as usize;
        }
    }
    Ok(s)
}
