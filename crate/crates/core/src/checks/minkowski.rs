//! Minkowski-type inequalities: Teissier's chain for isolated
//! singularities and its extensions to `s = 1` and to arbitrary `s`.

use serde_json::{json, Map, Value};

use super::{base_context, defined_le, generic_slice_le, le_context, q, CheckConfig, Comparison, IneqReport};
use crate::cycles::{polar_number, LeRecord};
use crate::error::{Error, Result};
use crate::field::Rational;
use crate::poly::frame::{restrict, Section};
use crate::poly::Polynomial;
use crate::sectional::{sectional, sectional_profile, slice_seed, teissier_from_profile};

/// `μ(f^[k])`, or the reason it is unavailable.
fn mu_section(f: &Polynomial, k: usize, cfg: &CheckConfig) -> std::result::Result<u64, String> {
    match sectional(f, k, &cfg.slices()) {
        Ok(v) => match v.mu {
            Some(0) => Err(format!("f^[{k}] is smooth at the origin")),
            Some(mu) => Ok(mu),
            None => Err(format!("μ(f^[{k}]) is undefined: the slice has a non-isolated critical point")),
        },
        Err(e) => Err(e.to_string()),
    }
}

/// `(λ^0 + (μ(f^[n]) − μ(f^[n−1]) + 1) λ^1) / μ(f^[n]) ≥ μ(f^[n]) / μ(f^[n−1])`
/// for `s ≤ 1`. For `s = 0` this is the top step of Teissier's chain.
pub fn check_mainone(f: &Polynomial, cfg: &CheckConfig) -> IneqReport {
    const NAME: &str = "mainone";
    let mut ctx = base_context(f, cfg);
    if f.nvars() < 2 {
        return IneqReport::skipped(NAME, "needs n ≥ 1 (at least two variables)", ctx);
    }
    let n = f.nvars() - 1;
    let rec = match defined_le(f, cfg) {
        Ok(r) => r,
        Err(e) => return IneqReport::skipped(NAME, e, ctx),
    };
    le_context(&mut ctx, &rec);
    if rec.s > 1 {
        return IneqReport::skipped(NAME, format!("needs s ≤ 1, found s = {}", rec.s), ctx);
    }
    let (mu_n, mu_n1) = match (mu_section(f, n, cfg), mu_section(f, n - 1, cfg)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return IneqReport::skipped(NAME, e, ctx),
    };
    ctx.insert("mu_n".into(), json!(mu_n));
    ctx.insert("mu_n_minus_1".into(), json!(mu_n1));
    if n == 1 {
        // plane curves: μ(f^[0]) = 1 and γ^1 of f^[1] is 1 by convention
        ctx.insert("plane_curve".into(), json!(true));
    }
    let l0 = q(rec.lambda(0).unwrap());
    let l1 = q(rec.lambda(1).unwrap());
    let (mn, mn1) = (q(mu_n), q(mu_n1));
    let coef = &mn - &mn1 + q(1);
    let lhs = (l0 + coef * l1) / &mn;
    let rhs = &mn / &mn1;
    IneqReport::from_checks(NAME, vec![Comparison::ge("mainone", lhs, rhs)], ctx)
}

/// Data for one application of the many-dimensional inequality.
struct Profiles {
    f: LeRecord,
    top: LeRecord,
    /// Lê numbers of `f^[n−1]`; `None` when `n = 1` (then `λ^0 = 1`).
    below: Option<LeRecord>,
}

fn le_of_slice(f: &Polynomial, k: usize, cfg: &CheckConfig, ctx: &mut Map<String, Value>) -> Result<LeRecord> {
    let (rec, seed) = generic_slice_le(f, k, cfg)?;
    if !rec.all_defined() {
        return Err(Error::Undefined(format!("Lê numbers of f^[{k}] undefined")));
    }
    ctx.insert(format!("lambda_f[{k}]"), json!(rec.lambda));
    ctx.insert(format!("slice_seed_f[{k}]"), json!(seed));
    Ok(rec)
}

/// The ratio inequality with coefficients `k_p`:
///
/// `(λ^0_f + Σ_{i=1}^s λ^i_f Π_{ℓ≤i} k_ℓ) / D ≥ D / (λ^0_{f^[n−1]} + Σ_{i=1}^{s−2} λ^i_{f^[n−1]} Π_{ℓ≤i} k_ℓ)`
///
/// where `D = λ^0_{f^[n]} + Σ_{i=1}^{s−1} λ^i_{f^[n]} Π_{ℓ≤i} k_ℓ`,
/// `k_1 = λ^0_{f^[n]}` and `k_p = λ^0_{f^[n]} + Σ_{i=1}^{p−1} λ^i_{f^[n]} Π_{ℓ≤i} k_ℓ`.
///
/// When `λ^0_{f^[n]} = 0`, `f` is replaced by `f^[1+ω]` and `n` by `ω`,
/// where `ω` is the largest dimension with `λ^0_{f^[ω]} ≠ 0`.
pub fn check_mainmany(f: &Polynomial, cfg: &CheckConfig) -> IneqReport {
    const NAME: &str = "mainmany";
    let mut ctx = base_context(f, cfg);
    if f.nvars() < 2 {
        return IneqReport::skipped(NAME, "needs n ≥ 1 (at least two variables)", ctx);
    }
    let rec = match defined_le(f, cfg) {
        Ok(r) => r,
        Err(e) => return IneqReport::skipped(NAME, e, ctx),
    };
    le_context(&mut ctx, &rec);
    ctx.insert("shifted".into(), json!(false));
    match mainmany_steps(f, rec, cfg, &mut ctx) {
        Ok(checks) => IneqReport::from_checks(NAME, checks, ctx),
        Err(e) => IneqReport::skipped(NAME, e.to_string(), ctx),
    }
}

fn mainmany_steps(f: &Polynomial, rec: LeRecord, cfg: &CheckConfig, ctx: &mut Map<String, Value>) -> Result<Vec<Comparison>> {
    let n = f.nvars() - 1;
    let top = le_of_slice(f, n, cfg, ctx)?;
    if top.lambda(0) != Some(0) {
        let below = if n >= 2 { Some(le_of_slice(f, n - 1, cfg, ctx)?) } else { None };
        let gamma1 = match rec.gamma(1) {
            Some(g) => Some(g),
            None => polar_number(f, &rec.frame, 1, rec.arithmetic)?,
        };
        return Ok(inequality(&Profiles { f: rec, top, below }, gamma1, ctx));
    }
    // ω-shift
    let mut omega = None;
    for w in (1..n).rev() {
        let r = le_of_slice(f, w, cfg, ctx)?;
        if r.lambda(0) != Some(0) {
            omega = Some(w);
            break;
        }
    }
    let omega = omega.ok_or_else(|| Error::Undefined("λ^0 vanishes on every generic slice".into()))?;
    let seed = slice_seed(cfg.seed(), omega + 1, 0, 0);
    let h = restrict(f, omega + 1, &Section::Seed { seed, bound: cfg.genericity.bound })?;
    ctx.insert("shifted".into(), json!(true));
    ctx.insert("omega".into(), json!(omega));
    ctx.insert("f_shifted".into(), json!(h.to_string()));
    let rec_h = cfg.le(&h).ok().filter(|r| r.all_defined()).ok_or_else(|| Error::Undefined("Lê numbers of f^[1+ω] undefined".into()))?;
    ctx.insert("lambda_shifted".into(), json!(rec_h.lambda));
    let mut sub = Map::new();
    let top = le_of_slice(&h, omega, cfg, &mut sub)?;
    if top.lambda(0) == Some(0) {
        return Err(Error::Undefined("λ^0 of the shifted slice vanished again".into()));
    }
    let below = if omega >= 2 { Some(le_of_slice(&h, omega - 1, cfg, &mut sub)?) } else { None };
    let gamma1 = match rec_h.gamma(1) {
        Some(g) => Some(g),
        None => polar_number(&h, &rec_h.frame, 1, rec_h.arithmetic)?,
    };
    ctx.insert("shifted_slices".into(), Value::Object(sub));
    Ok(inequality(&Profiles { f: rec_h, top, below }, gamma1, ctx))
}

fn inequality(p: &Profiles, gamma1: Option<u64>, ctx: &mut Map<String, Value>) -> Vec<Comparison> {
    let s = p.f.s;
    let lf = |i: usize| q(p.f.lambda(i).unwrap_or(0));
    let lt = |i: usize| q(p.top.lambda(i).unwrap_or(0));
    let lb = |i: usize| match &p.below {
        Some(r) => q(r.lambda(i).unwrap_or(0)),
        None => q(u64::from(i == 0)),
    };
    // k_1..k_s and the running products K_i = k_1⋯k_i (K_0 = 1)
    let mut k: Vec<Rational> = Vec::new();
    let mut prod = vec![q(1)];
    for pidx in 1..=s {
        let mut kp = lt(0);
        for i in 1..pidx {
            kp += lt(i) * &prod[i];
        }
        let next = &prod[pidx - 1] * &kp;
        k.push(kp);
        prod.push(next);
    }
    let weighted = |l: &dyn Fn(usize) -> Rational, upto: usize| {
        let mut acc = l(0);
        for i in 1..=upto {
            acc += l(i) * &prod[i];
        }
        acc
    };
    let num = weighted(&lf, s);
    let den = weighted(&lt, s.saturating_sub(1));
    let den_r = weighted(&lb, s.saturating_sub(2));
    ctx.insert("k".into(), json!(k.iter().map(|v| v.to_string()).collect::<Vec<_>>()));
    ctx.insert("numerator".into(), json!(num.to_string()));
    ctx.insert("denominator".into(), json!(den.to_string()));
    ctx.insert("denominator_right".into(), json!(den_r.to_string()));

    let mut checks = vec![Comparison::ge("mainmany", &num / &den, &den / &den_r)];
    if s >= 1 {
        checks.push(Comparison::eq("denominator = k_s", den.clone(), k[s - 1].clone()));
    }
    if let Some(g1) = gamma1 {
        checks.push(Comparison::eq("λ^0_{f^[n]} = γ^1_f + λ^1_f", lt(0), q(g1) + lf(1)));
    }
    for i in 1..s {
        checks.push(Comparison::eq(format!("λ^{i}_{{f^[n]}} = λ^{}_f", i + 1), lt(i), lf(i + 1)));
    }
    checks
}

/// Teissier's chain `μ(f^[k+1])/μ(f^[k])` non-decreasing in `k`, and its
/// corollary `μ(f^[k+1]) ≥ (mult₀f − 1) μ(f^[k])`, for isolated `f`.
pub fn check_teissier(f: &Polynomial, cfg: &CheckConfig) -> IneqReport {
    const NAME: &str = "teissier";
    let mut ctx = base_context(f, cfg);
    let profile = match sectional_profile(f, &cfg.slices()) {
        Ok(p) => p,
        Err(e) => return IneqReport::skipped(NAME, e.to_string(), ctx),
    };
    ctx.insert("sectional".into(), json!(profile.mu));
    if profile.mu.iter().any(Option::is_none) {
        return IneqReport::skipped(NAME, "needs an isolated critical point (s = 0)", ctx);
    }
    let mu: Vec<u64> = profile.mu.iter().map(|v| v.unwrap()).collect();
    let chain = match teissier_from_profile(f, mu.clone()) {
        Ok(c) => c,
        Err(e) => return IneqReport::skipped(NAME, e.to_string(), ctx),
    };
    let mut checks = Vec::new();
    for j in (1..chain.ratios.len()).rev() {
        checks.push(Comparison::ge(
            format!("μ^[{}]/μ^[{j}] ≥ μ^[{j}]/μ^[{}]", j + 1, j - 1),
            chain.ratios[j].clone(),
            chain.ratios[j - 1].clone(),
        ));
    }
    let m1 = q(f.mult_origin().unwrap_or(1) as u64 - 1);
    for w in 0..mu.len() - 1 {
        checks.push(Comparison::ge(format!("μ^[{}] ≥ (mult−1)μ^[{w}]", w + 1), q(mu[w + 1]), &m1 * q(mu[w])));
    }
    IneqReport::from_checks(NAME, checks, ctx)
}
