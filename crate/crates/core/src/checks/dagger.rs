//! The open inequality (†) for `s = 1`, a search over polynomial families,
//! and the suspension bound.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::Deserialize;
use serde_json::json;

use super::{base_context, defined_le, le_context, q, CheckConfig, Comparison, IneqReport, Status};
use crate::cycles::sigma_ideal;
use crate::error::{Error, Result};
use crate::field::rational_string;
use crate::field::Field;
use crate::poly::parse::parse_with_params;
use crate::poly::{vars, Monomial, Polynomial, Vars};
use crate::sectional::sectional;

fn mu_or_skip(f: &Polynomial, k: usize, cfg: &CheckConfig) -> std::result::Result<u64, String> {
    match sectional(f, k, &cfg.slices()) {
        Ok(v) => match v.mu {
            Some(mu) if mu > 0 => Ok(mu),
            Some(_) => Err(format!("f^[{k}] is smooth at the origin")),
            None => Err(format!("μ(f^[{k}]) is undefined")),
        },
        Err(e) => Err(e.to_string()),
    }
}

/// `(λ^0/μ(f^[n]))(1 + λ^1) ≥ μ(f^[n])/μ(f^[n−1])` for `s = 1`.
///
/// The report is a counterexample when the inequality fails although
/// `μ(f^[n]) > λ^0 > 0`. With `λ^0 = 0` the inequality fails for trivial
/// reasons and the input is skipped; with `λ^0 ≥ μ(f^[n])` it follows from
/// the `s = 1` Minkowski inequality. The context records the margin
/// `lhs − rhs`.
pub fn check_dagger(f: &Polynomial, cfg: &CheckConfig) -> IneqReport {
    const NAME: &str = "dagger";
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
    if rec.s != 1 {
        return IneqReport::skipped(NAME, format!("needs s = 1, found s = {}", rec.s), ctx);
    }
    let (mu_n, mu_n1) = match (mu_or_skip(f, n, cfg), mu_or_skip(f, n - 1, cfg)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return IneqReport::skipped(NAME, e, ctx),
    };
    let l0 = rec.lambda(0).unwrap();
    let l1 = rec.lambda(1).unwrap();
    ctx.insert("mu_n".into(), json!(mu_n));
    ctx.insert("mu_n_minus_1".into(), json!(mu_n1));
    let lhs = q(l0) / q(mu_n) * (q(1) + q(l1));
    let rhs = q(mu_n) / q(mu_n1);
    let margin = &lhs - &rhs;
    let candidate = mu_n > l0 && l0 > 0;
    ctx.insert("margin".into(), json!(rational_string(&margin)));
    ctx.insert("candidate".into(), json!(candidate));
    let cmp = Comparison::ge("dagger", lhs, rhs);
    let holds = cmp.holds;
    let mut report = IneqReport::from_checks(NAME, vec![cmp], ctx);
    if l0 == 0 {
        report.status = Status::Skipped;
        report.note = Some("λ^0 = 0: not a candidate".into());
    } else if !holds && candidate {
        report.status = Status::Counterexample;
    } else if !candidate {
        report.note = Some("λ^0 ≥ μ(f^[n]): not a candidate".into());
    }
    report
}

/// One line of a family file: a template with integer parameters ranging
/// over lists, and optionally its own variables.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub template: String,
    #[serde(default)]
    pub params: BTreeMap<String, Vec<i64>>,
    #[serde(default)]
    pub vars: Option<Vec<String>>,
}

impl FamilySpec {
    /// All parameter assignments, in lexicographic order of the parameter
    /// names and list order of the values.
    pub fn assignments(&self) -> Vec<BTreeMap<String, i64>> {
        let mut out = vec![BTreeMap::new()];
        for (name, values) in &self.params {
            let mut next = Vec::with_capacity(out.len() * values.len());
            for a in &out {
                for v in values {
                    let mut b = a.clone();
                    b.insert(name.clone(), *v);
                    next.push(b);
                }
            }
            out = next;
        }
        out
    }
}

/// Parses a family file: one JSON object per non-empty line.
pub fn parse_family(text: &str) -> Result<Vec<FamilySpec>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::InvalidArgument(format!("family line {}: {e}", i + 1)))
        })
        .collect()
}

/// Runs [`check_dagger`] over the members of the families, at most `trials`
/// of them when given, in parallel. Every member yields a report (parse
/// failures and wrong `s` are skips); the result lists the evaluated reports
/// by increasing margin, then the skipped ones in family order.
pub fn search_dagger(family: &[FamilySpec], default_vars: &Vars, trials: Option<usize>, cfg: &CheckConfig) -> Vec<IneqReport> {
    let mut members: Vec<(Vars, &FamilySpec, BTreeMap<String, i64>)> = Vec::new();
    for spec in family {
        let v = spec.vars.as_ref().map(|v| vars(v)).unwrap_or_else(|| default_vars.clone());
        for a in spec.assignments() {
            members.push((v.clone(), spec, a));
        }
    }
    if let Some(t) = trials {
        members.truncate(t);
    }
    let results: Mutex<Vec<Option<IneqReport>>> = Mutex::new(vec![None; members.len()]);
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(members.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= members.len() {
                    break;
                }
                let (v, spec, params) = &members[i];
                let mut report = match parse_with_params(&spec.template, v, params) {
                    Ok(f) => check_dagger(&f, cfg),
                    Err(e) => IneqReport::skipped("dagger", e.to_string(), Default::default()),
                };
                report.context.insert("template".into(), json!(spec.template));
                report.context.insert("params".into(), json!(params));
                report.context.insert("member".into(), json!(i));
                results.lock().unwrap()[i] = Some(report);
            });
        }
    });
    let reports: Vec<IneqReport> = results.into_inner().unwrap().into_iter().map(Option::unwrap).collect();
    let (mut evaluated, skipped): (Vec<_>, Vec<_>) = reports.into_iter().partition(|r| r.status != Status::Skipped);
    evaluated.sort_by(|a, b| {
        let ma = a.lhs().unwrap() - a.rhs().unwrap();
        let mb = b.lhs().unwrap() - b.rhs().unwrap();
        ma.cmp(&mb)
    });
    evaluated.extend(skipped);
    evaluated
}

/// Whether the germ at the origin of the plane curve `g = 0` is not
/// reduced, i.e. its critical locus is a curve.
fn non_reduced_plane_curve(g: &Polynomial) -> bool {
    g.nvars() == 2
        && g.constant_term().is_zero()
        && !g.is_zero()
        && sigma_ideal(g).map(|s| s.local_dim() >= 1).unwrap_or(false)
}

/// For `f = z^p + g` in three variables: the index of `z`, `p`, and `g` as
/// a polynomial in the other two variables.
fn suspension_split(f: &Polynomial) -> Option<(usize, u16, Polynomial)> {
    let n = f.nvars();
    for v in 0..n {
        let touching: Vec<&(Monomial, _)> = f.terms().iter().filter(|(m, _)| m.exponents()[v] > 0).collect();
        let [(m, _)] = touching.as_slice() else {
            continue;
        };
        let p = m.exponents()[v];
        if p < 2 || m.degree() != p as u32 {
            continue;
        }
        let keep: Vec<bool> = (0..n).map(|i| i != v).collect();
        let others: Vec<&String> = f.vars().iter().enumerate().filter(|(i, _)| *i != v).map(|(_, s)| s).collect();
        let g = f.set_zero(v).drop_vars(&keep, vars(&others));
        return Some((v, p, g));
    }
    None
}

/// `λ^0(f) ≥ μ(f|H)` for a generic hyperplane `H`, when `f(x, y)` is a
/// non-reduced plane curve or `f = z^p + g(x, y)` with `p ≥ 2` and `g`
/// non-reduced.
pub fn check_suspension(f: &Polynomial, cfg: &CheckConfig) -> IneqReport {
    const NAME: &str = "suspension";
    let mut ctx = base_context(f, cfg);
    let shape = match f.nvars() {
        2 if non_reduced_plane_curve(f) => Some("non-reduced plane curve".to_string()),
        3 => suspension_split(f).filter(|(_, _, g)| non_reduced_plane_curve(g)).map(|(v, p, g)| {
            ctx.insert("suspension_variable".into(), json!(f.vars()[v]));
            ctx.insert("p".into(), json!(p));
            ctx.insert("g".into(), json!(g.to_string()));
            format!("{}-fold suspension of a non-reduced plane curve", p - 1)
        }),
        _ => None,
    };
    let Some(shape) = shape else {
        return IneqReport::skipped(
            NAME,
            "input is neither a non-reduced plane curve nor z^p + g(x,y) with g non-reduced",
            ctx,
        );
    };
    ctx.insert("shape".into(), json!(shape));
    let rec = match defined_le(f, cfg) {
        Ok(r) => r,
        Err(e) => return IneqReport::skipped(NAME, e, ctx),
    };
    le_context(&mut ctx, &rec);
    let mu_h = match mu_or_skip(f, f.nvars() - 1, cfg) {
        Ok(v) => v,
        Err(e) => return IneqReport::skipped(NAME, e, ctx),
    };
    ctx.insert("mu_hyperplane".into(), json!(mu_h));
    let cmp = Comparison::ge("λ^0 ≥ μ(f|H)", q(rec.lambda(0).unwrap()), q(mu_h));
    IneqReport::from_checks(NAME, vec![cmp], ctx)
}
