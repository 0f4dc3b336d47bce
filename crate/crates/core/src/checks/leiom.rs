//! The Lê-Iomdine formulas with inequalities: `g = f + a z₀^m` in the
//! rotated frame `(z₁, …, z_n, z₀)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{base_context, defined_le, le_context, q, CheckConfig, Comparison, IneqReport, Status};
use crate::arith::{evaluate, Computation};
use crate::cycles::{lambda_numbers_in_coordinates, lambda_numbers_with, polar_curve_mult, polar_number, sigma_ideal, LeRecord};
use crate::error::Result;
use crate::field::{rational_string, Field, Rational};
use crate::poly::frame::{apply_frame, iomdine, restrict_to_first_hyperplane};
use crate::poly::{Monomial, Polynomial};
use crate::sectional::milnor_with;

/// Number of coefficients `a` tried before giving up.
pub const LEIOM_RETRIES: u32 = 8;

/// Set-germ and dimension claims about `Σ(f + a z₀^m)`, for `f` already in
/// its frame: whether `Σg = Σf ∩ V(z₀)` as germs, and `dim₀ Σg`.
struct GermClaims<'a> {
    m: u32,
    a: &'a Rational,
}

impl Computation for GermClaims<'_> {
    type Output = Option<(bool, i64)>;

    fn run<K: Field>(&self, f: &Polynomial<K>) -> Result<Option<(bool, i64)>> {
        let Some(a) = K::from_rational(self.a) else {
            return Ok(None);
        };
        let n = f.nvars();
        let g = f.add(&Polynomial::monomial(f.vars().clone(), Monomial::var(n, 0, self.m as u16), a));
        let sg = sigma_ideal(&g)?;
        let sf0 = sigma_ideal(f)?.with(&[Polynomial::var(f.vars().clone(), 0)]);
        let one_way = sf0.gens().iter().all(|p| sg.radical_member_at_origin(p));
        let other_way = sg.gens().iter().all(|p| sf0.radical_member_at_origin(p));
        Ok(Some((one_way && other_way, sg.local_dim())))
    }
}

struct SliceLambda0;

impl Computation for SliceLambda0 {
    type Output = Option<u64>;

    fn run<K: Field>(&self, f: &Polynomial<K>) -> Result<Option<u64>> {
        Ok(lambda_numbers_in_coordinates(f)?.1[0])
    }
}

/// Candidate coefficients: the given one, or fresh nonzero integers in
/// `[−B, B]` drawn from the seed.
fn coefficients(a: Option<Rational>, seed: u64, bound: i64) -> Vec<Rational> {
    if let Some(a) = a {
        return vec![a];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1e10_3d1e);
    let bound = bound.max(1);
    (0..LEIOM_RETRIES)
        .map(|_| loop {
            let v: i64 = rng.gen_range(-bound..=bound);
            if v != 0 {
                break Rational::from_integer(v.into());
            }
        })
        .collect()
}

/// Checks items 1 to 6 of the Lê-Iomdine formulas for `g = f + a z₀^m`.
///
/// With `a = None` nonzero integers are sampled until items 1 to 3 (the
/// genericity claims) hold, at most [`LEIOM_RETRIES`] times. A supplied `a`
/// that fails them gives a skipped report.
pub fn check_leiom(f: &Polynomial, cfg: &CheckConfig, m: u32, a: Option<Rational>) -> IneqReport {
    const NAME: &str = "leiom";
    let mut ctx = base_context(f, cfg);
    ctx.insert("m".into(), json!(m));
    if m < 2 {
        return IneqReport::skipped(NAME, "m must be at least 2", ctx);
    }
    if a.as_ref().is_some_and(|a| a.is_zero()) {
        return IneqReport::skipped(NAME, "a must be nonzero", ctx);
    }
    let rec = match defined_le(f, cfg) {
        Ok(r) => r,
        Err(e) => return IneqReport::skipped(NAME, e, ctx),
    };
    le_context(&mut ctx, &rec);
    match leiom_in_frame(f, &rec, cfg, m, a, &mut ctx) {
        Ok(r) => r,
        Err(e) => IneqReport::skipped(NAME, e.to_string(), ctx),
    }
}

fn leiom_in_frame(
    f: &Polynomial,
    rec: &LeRecord,
    cfg: &CheckConfig,
    m: u32,
    a: Option<Rational>,
    ctx: &mut serde_json::Map<String, serde_json::Value>,
) -> Result<IneqReport> {
    const NAME: &str = "leiom";
    let arith = cfg.genericity.arithmetic;
    let fz = apply_frame(f, &rec.frame)?;
    let s = rec.s;
    let given = a.is_some();
    let mut tried = Vec::new();
    for a in coefficients(a, cfg.seed(), cfg.genericity.bound) {
        tried.push(rational_string(&a));
        let Some((germ_equal, dim_g)) = evaluate(&GermClaims { m, a: &a }, &fz, arith)? else {
            continue;
        };
        let item2 = s == 0 || dim_g == s as i64 - 1;
        let (g, rot) = iomdine(&fz, m, &a)?;
        let rec_g = lambda_numbers_with(&g, &rot, arith)?;
        let item3 = rec_g.all_defined();
        if !(germ_equal && item2 && item3) {
            continue;
        }
        ctx.insert("a".into(), json!(rational_string(&a)));
        ctx.insert("a_tried".into(), json!(tried));
        ctx.insert("g".into(), json!(g.to_string()));
        ctx.insert("lambda_g".into(), json!(rec_g.lambda));
        ctx.insert("s_g".into(), json!(rec_g.s));
        return Ok(compare(f, rec, &fz, &g, &rec_g, m, cfg, ctx));
    }
    ctx.insert("a_tried".into(), json!(tried));
    let why = if given {
        "the supplied a does not satisfy the genericity claims (items 1-3)"
    } else {
        "no sampled a satisfied the genericity claims (items 1-3)"
    };
    Ok(IneqReport { name: NAME.into(), status: Status::Skipped, checks: Vec::new(), context: ctx.clone(), note: Some(why.into()) })
}

#[allow(clippy::too_many_arguments)]
fn compare(
    f: &Polynomial,
    rec: &LeRecord,
    fz: &Polynomial,
    g: &Polynomial,
    rec_g: &LeRecord,
    m: u32,
    cfg: &CheckConfig,
    ctx: &mut serde_json::Map<String, serde_json::Value>,
) -> IneqReport {
    let arith = cfg.genericity.arithmetic;
    let s = rec.s;
    let m1 = q(m as u64 - 1);
    let l = |j: usize| q(rec.lambda(j).unwrap());
    let lg = |j: usize| q(rec_g.lambda(j).unwrap());
    let bound = l(0) + &m1 * l(1);

    // item 4, headline first
    let mut checks = vec![Comparison::ge("λ^0(f) + (m−1)λ^1(f) ≥ λ^0(g)", bound.clone(), lg(0))];
    for j in 1..s {
        checks.push(Comparison::eq(format!("λ^{j}(g) = (m−1)λ^{}(f)", j + 1), lg(j), &m1 * l(j + 1)));
    }

    // item 5: equality once m reaches one of the bounds on mpr
    let l0 = rec.lambda(0).unwrap();
    let gamma1 = match rec.gamma(1) {
        Some(v) => Some(v),
        None if f.nvars() >= 2 => polar_number(f, &rec.frame, 1, arith).ok().flatten(),
        None => None,
    };
    let polar = if f.nvars() >= 2 { polar_curve_mult(f, &rec.frame, arith).ok() } else { None };
    let m = m as u64;
    let mut reasons = Vec::new();
    if l0 == 0 {
        reasons.push("λ^0 = 0");
    }
    if m > l0 {
        reasons.push("m ≥ 1 + λ^0");
    }
    if let (Some(g1), Some(p)) = (gamma1, polar) {
        if g1 == p && m + g1 >= l0 + 2 {
            reasons.push("γ^1 = mult Γ^1 and m ≥ λ^0 − γ^1 + 2");
        }
    }
    if !reasons.is_empty() {
        checks.push(Comparison::eq("λ^0(g) = λ^0(f) + (m−1)λ^1(f)", lg(0), bound.clone()));
    }
    ctx.insert("equality_bounds".into(), json!(reasons));
    ctx.insert("gamma1".into(), json!(gamma1));
    ctx.insert("polar_mult".into(), json!(polar));

    // item 6
    if gamma1.is_some() && fz.nvars() >= 2 {
        let slice = restrict_to_first_hyperplane(fz);
        if let Ok(Some(v)) = evaluate(&SliceLambda0, &slice, arith) {
            ctx.insert("lambda0_slice".into(), json!(v));
            checks.push(Comparison::ge("(m−1)λ^0(f|V(z0)) ≥ λ^0(g)", &m1 * q(v), lg(0)));
        }
    }

    // independent route: an isolated g has λ^0 = μ
    if rec_g.s == 0 {
        if let Ok(Some(mu)) = milnor_with(g, arith) {
            ctx.insert("mu_g".into(), json!(mu));
            checks.push(Comparison::eq("λ^0(g) = μ(g)", lg(0), q(mu)));
        }
    }
    IneqReport::from_checks("leiom", checks, ctx.clone())
}
