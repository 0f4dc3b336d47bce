//! Bounds involving the relative polar curve: the maximum polar ratio
//! against `λ^0`, `γ^1` and `mult₀f`, and the multiplicity lower bounds on
//! `λ^j + γ^j`.

use serde_json::json;

use super::{base_context, defined_le, le_context, q, CheckConfig, Comparison, IneqReport};
use crate::cycles::{mpr_bounds_from, mpr_exact, polar_mult};
use crate::field::rational_string;
use crate::groebner::Ideal;
use crate::poly::frame::apply_frame;
use crate::poly::Polynomial;

/// A reduced component of the polar curve, given in the original
/// coordinates, with its coefficient in the cycle.
pub type Component = (Ideal, u64);

/// Bundle of polar-curve inequalities:
///
/// - `λ^0 + 1 ≥ mpr`;
/// - `λ^0 − γ^1 + 2 ≥ mpr` when `γ^1 = mult₀ Γ^1`;
/// - `mpr ≥ mult₀f` when moreover `γ^1 ≠ 0`;
/// - `λ^0 ≥ mult₀Γ^1 · mult₀(∂f/∂z₀) ≥ mult₀Γ^1 (mult₀f − 1)` when `λ^0 ≠ 0`;
/// - `λ^j + γ^j ≥ (mult₀f − 1) mult₀Γ^{j+1}` for every `j ≤ s`.
///
/// The exact mpr is known when `components` decompose `Γ^1`, or when
/// `Γ^1` is empty (then it is 1). Otherwise the mpr comparisons use the
/// lower bound on mpr instead. Sub-claims whose hypotheses fail are left
/// out.
pub fn check_newmpr_and_easybound(f: &Polynomial, cfg: &CheckConfig, components: &[Component]) -> IneqReport {
    const NAME: &str = "newmpr";
    let mut ctx = base_context(f, cfg);
    if f.nvars() < 2 {
        return IneqReport::skipped(NAME, "needs n ≥ 1 (at least two variables)", ctx);
    }
    let rec = match defined_le(f, cfg) {
        Ok(r) => r,
        Err(e) => return IneqReport::skipped(NAME, e, ctx),
    };
    le_context(&mut ctx, &rec);
    let bounds = match mpr_bounds_from(f, &rec) {
        Ok(b) => b,
        Err(e) => return IneqReport::skipped(NAME, e.to_string(), ctx),
    };
    let exact = if !components.is_empty() {
        match mpr_exact(f, &rec.frame, components) {
            Ok(v) => Some(v),
            Err(e) => return IneqReport::skipped(NAME, e.to_string(), ctx),
        }
    } else if bounds.polar_mult == Some(0) {
        Some(q(1))
    } else {
        None
    };
    let mult = f.mult_origin().unwrap_or(0) as u64;
    let l0 = rec.lambda(0).unwrap();
    ctx.insert("mult".into(), json!(mult));
    ctx.insert("polar_mult".into(), json!(bounds.polar_mult));
    ctx.insert("mpr".into(), json!(exact.as_ref().map(rational_string)));
    ctx.insert("mpr_lower".into(), json!(bounds.lower));

    let mpr = exact.clone().unwrap_or_else(|| q(bounds.lower));
    let mpr_name = if exact.is_some() { "mpr" } else { "mpr lower bound" };
    let mut checks = vec![Comparison::ge(format!("λ^0 + 1 ≥ {mpr_name}"), q(bounds.upper1), mpr.clone())];
    if let Some(u2) = bounds.upper2 {
        checks.push(Comparison::ge(format!("λ^0 − γ^1 + 2 ≥ {mpr_name}"), q(u2), mpr.clone()));
        if let Some(e) = &exact {
            if rec.gamma(1).or(bounds.polar_mult) != Some(0) {
                checks.push(Comparison::ge("mpr ≥ mult₀f", e.clone(), q(mult)));
            }
        }
    }

    if l0 != 0 {
        if let Some(pm) = bounds.polar_mult {
            let d0 = apply_frame(f, &rec.frame).ok().and_then(|g| g.partial(0).mult_origin().ok());
            if let Some(d0) = d0 {
                ctx.insert("mult_d0f".into(), json!(d0));
                checks.push(Comparison::ge("λ^0 ≥ mult₀Γ^1 · mult₀(∂f/∂z0)", q(l0), q(pm * d0 as u64)));
                checks.push(Comparison::ge(
                    "mult₀Γ^1 · mult₀(∂f/∂z0) ≥ mult₀Γ^1 (mult₀f − 1)",
                    q(pm * d0 as u64),
                    q(pm * (mult - 1)),
                ));
            }
        }
    }

    let n1 = f.nvars();
    for j in 0..=rec.s {
        let (Some(l), Some(g)) = (rec.lambda(j), rec.gamma(j)) else {
            continue;
        };
        let above = if j + 1 >= n1 { Some(1) } else { polar_mult(f, &rec.frame, j + 1, rec.arithmetic).ok() };
        if let Some(pm) = above {
            checks.push(Comparison::ge(
                format!("λ^{j} + γ^{j} ≥ (mult₀f − 1) mult₀Γ^{}", j + 1),
                q(l + g),
                q((mult - 1) * pm),
            ));
        }
    }
    IneqReport::from_checks(NAME, checks, ctx)
}
