//! Acceptance run: one PASS/FAIL line per criterion, exact comparisons only.
//!
//! Runs without the libtest harness so the lines are always printed:
//! `cargo test -p lenum --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lenum::checks::{
    check_dagger, check_funbound, check_leiom, check_mainmany, check_mainone, check_newmpr_and_easybound,
    check_teissier, parse_family, search_dagger, CheckConfig, IneqReport, Status,
};
use lenum::cycles::{hyperplane_cross_check, lambda_numbers, polar_mult, sigma_ideal, Verdict};
use lenum::poly::frame::apply_frame;
use lenum::poly::{iomdine, vars, Vars};
use lenum::report::Report;
use lenum::sectional::{milnor, sectional, SliceOptions};
use lenum::{parse, Frame, Ideal, LocalLength, Polynomial, Rational};

type Outcome = Result<String, String>;

fn p(text: &str, v: &Vars) -> Polynomial {
    parse(text, v).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn headline(r: &IneqReport) -> Result<(Rational, Rational), String> {
    match (r.lhs(), r.rhs()) {
        (Some(a), Some(b)) => Ok((a.clone(), b.clone())),
        _ => Err(format!("{} has no comparison: {:?}", r.name, r.note)),
    }
}

fn xyz() -> Vars {
    vars(&["x", "y", "z"])
}

fn bn0() -> Polynomial {
    p("(x^2-z^2+y^2)*(x-z)", &xyz())
}

fn cusp_family() -> Polynomial {
    p("y^3 - x^4 - t^2*x^2", &vars(&["t", "x", "y"]))
}

fn s2_example() -> Polynomial {
    p("z^2 + (w^4+x^3+y^2)^2", &vars(&["w", "x", "y", "z"]))
}

fn identity(n: usize, seed: u64) -> CheckConfig {
    CheckConfig::in_frame(Frame::identity(n), seed)
}

fn criterion1() -> Outcome {
    let rec = lambda_numbers(&bn0(), &Frame::identity(3)).map_err(|e| e.to_string())?;
    ensure(rec.lambda == vec![Some(2), Some(3)], format!("λ = {:?}", rec.lambda))?;
    let r = check_funbound(&bn0(), &identity(3, 0));
    let (l, r2) = headline(&r)?;
    ensure(l == q(8, 1) && r2 == q(8, 1) && r.equality(), format!("funbound {l} vs {r2}"))?;
    Ok("λ^1=3 λ^0=2, funbound 2+2·3 = 8 = 2^3".into())
}

fn criterion2() -> Outcome {
    let rec = lambda_numbers(&cusp_family(), &Frame::identity(3)).map_err(|e| e.to_string())?;
    ensure(rec.lambda == vec![Some(12), Some(2)], format!("λ = {:?}", rec.lambda))?;
    let r = check_funbound(&cusp_family(), &identity(3, 0));
    let (l, r2) = headline(&r)?;
    ensure(l == q(16, 1) && r2 == q(8, 1) && r.holds() && !r.equality(), format!("funbound {l} vs {r2}"))?;
    Ok("λ^1=2 λ^0=12, funbound 16 > 8".into())
}

fn criterion3() -> Outcome {
    let opts = SliceOptions::new(3);
    let mu = |f: &Polynomial, k| sectional(f, k, &opts).map(|v| v.mu).map_err(|e| e.to_string());
    let f = cusp_family();
    ensure(mu(&f, 2)? == Some(6) && mu(&f, 1)? == Some(2), "μ(f^[2]), μ(f^[1]) of the cusp family")?;
    let r = check_mainone(&f, &identity(3, 3));
    ensure(headline(&r)? == (q(11, 3), q(3, 1)) && r.holds(), format!("cusp family: {r}"))?;
    let g = bn0();
    ensure(mu(&g, 2)? == Some(4) && mu(&g, 1)? == Some(2), "μ(f^[2]), μ(f^[1]) of bn0")?;
    let r = check_mainone(&g, &identity(3, 3));
    ensure(headline(&r)? == (q(11, 4), q(2, 1)) && r.holds(), format!("bn0: {r}"))?;
    Ok("11/3 ≥ 3 (μ = 6, 2) and 11/4 ≥ 2 (μ = 4, 2)".into())
}

fn criterion4() -> Outcome {
    let f = s2_example();
    let cfg = CheckConfig::generic(1);
    let rec = cfg.le(&f).map_err(|e| e.to_string())?;
    ensure(rec.lambda == vec![Some(14), Some(3), Some(2)], format!("generic λ = {:?}", rec.lambda))?;
    let mu2 = sectional(&f, 2, &cfg.slices()).map_err(|e| e.to_string())?.mu;
    ensure(mu2 == Some(3), format!("μ(f^[2]) = {mu2:?}"))?;
    let r = check_mainmany(&f, &cfg);
    ensure(r.context["lambda_f[3]"] == serde_json::json!([5, 2]), format!("λ of f^[3]: {}", r.context["lambda_f[3]"]))?;
    ensure(r.context["lambda_f[2]"] == serde_json::json!([3]), format!("λ of f^[2]: {}", r.context["lambda_f[2]"]))?;
    ensure(r.context["k"] == serde_json::json!(["5", "15"]), format!("k = {}", r.context["k"]))?;
    ensure(headline(&r)? == (q(179, 15), q(5, 1)) && r.holds(), format!("{r}"))?;
    Ok("λ=(14,3,2), λ_{f^[3]}=(5,2), μ(f^[2])=3, k=(5,15), 179/15 ≥ 5".into())
}

fn criterion5() -> Outcome {
    let f = bn0();
    let r = check_leiom(&f, &identity(3, 0), 9, Some(q(1, 1)));
    let eq = r.part("λ^0(g) = λ^0(f) + (m−1)λ^1(f)").ok_or("equality branch missing for m = 9")?;
    ensure(eq.lhs == q(26, 1) && eq.rhs == q(26, 1) && r.holds(), format!("{r}"))?;
    let (g, frame) = iomdine(&f, 9, &q(1, 1)).map_err(|e| e.to_string())?;
    let fresh = lambda_numbers(&g, &frame).map_err(|e| e.to_string())?;
    ensure(fresh.lambda == vec![Some(26)], format!("recomputed λ(g) = {:?}", fresh.lambda))?;
    ensure(milnor(&g).map_err(|e| e.to_string())? == Some(26), "μ(g) ≠ 26")?;

    let r = check_leiom(&f, &identity(3, 0), 2, Some(q(1, 1)));
    let (bound, lg) = headline(&r)?;
    ensure(bound == q(5, 1) && lg <= bound && r.holds(), format!("m = 2: {r}"))?;

    let xy = vars(&["x", "y"]);
    let cusp = p("x^2 + y^3", &xy);
    let mu = milnor(&cusp).map_err(|e| e.to_string())?;
    ensure(mu == Some(2), "μ(x^2 + y^3) ≠ 2")?;
    for m in [3, 4] {
        let r = check_leiom(&cusp, &identity(2, 0), m, Some(q(1, 1)));
        ensure(r.status == Status::Holds && r.context_u64("mu_g") == Some(2), format!("isolated, m = {m}: {r}"))?;
        let (g, _) = iomdine(&cusp, m, &q(1, 1)).map_err(|e| e.to_string())?;
        ensure(milnor(&g).map_err(|e| e.to_string())? == Some(2), format!("μ(g) for m = {m}"))?;
    }
    Ok(format!("m=9: 26 = 2+8·3 (recomputed), m=2: {lg} ≤ 5, μ(x²+y³+x^m) = 2 for m = 3, 4"))
}

/// One corpus member: the polynomial, its expected `s`, whether it is
/// homogeneous, and the Milnor number when known in closed form.
struct Member {
    f: Polynomial,
    s: usize,
    mu: Option<u64>,
}

fn nonzero(rng: &mut ChaCha8Rng, b: i64) -> i64 {
    loop {
        let v = rng.gen_range(-b..=b);
        if v != 0 {
            return v;
        }
    }
}

/// A reproducible corpus of 24 polynomials with `s ∈ {0, 1, 2}`.
fn corpus() -> Vec<Member> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let v3 = xyz();
    let mut out = Vec::new();
    // s = 0: Brieskorn-Pham plus a term above the Newton boundary, so μ is
    // (a-1)(b-1)(c-1)
    while out.len() < 7 {
        let (a, b, c) = (rng.gen_range(2..=5u32), rng.gen_range(2..=5u32), rng.gen_range(2..=5u32));
        let (i, j, k) = (rng.gen_range(0..=3u32), rng.gen_range(0..=3u32), rng.gen_range(0..=3u32));
        if i * b * c + j * a * c + k * a * b < a * b * c {
            continue;
        }
        let r = nonzero(&mut rng, 3);
        let f = p(&format!("x^{a} + y^{b} + z^{c} + {r}*x^{i}*y^{j}*z^{k}"), &v3);
        out.push(Member { f, s: 0, mu: Some(u64::from((a - 1) * (b - 1) * (c - 1))) });
    }
    // s = 0, homogeneous: Fermat in random coordinates
    for d in 2..=4u32 {
        let fermat = p(&format!("x^{d} + y^{d} + z^{d}"), &v3);
        let f = apply_frame(&fermat, &Frame::random(3, rng.gen(), 2)).unwrap();
        out.push(Member { f, s: 0, mu: Some(u64::from((d - 1).pow(3))) });
    }
    // s = 1: y^a - x^b - z^c x^d, singular along the z-axis
    while out.len() < 16 {
        let (a, b, c, d) =
            (rng.gen_range(2..=3u32), rng.gen_range(3..=5u32), rng.gen_range(1..=3u32), rng.gen_range(2..=3u32));
        let f = p(&format!("y^{a} - x^{b} - z^{c}*x^{d}"), &v3);
        if out.iter().any(|m: &Member| m.f == f) {
            continue;
        }
        out.push(Member { f, s: 1, mu: None });
    }
    // s = 1, homogeneous: x^a y^2 + z^(a+2) and bn0, in random coordinates
    for a in 1..=3u32 {
        let g = p(&format!("x^{a}*y^2 + z^{}", a + 2), &v3);
        let f = apply_frame(&g, &Frame::random(3, rng.gen(), 2)).unwrap();
        out.push(Member { f, s: 1, mu: None });
    }
    out.push(Member { f: apply_frame(&bn0(), &Frame::random(3, rng.gen(), 2)).unwrap(), s: 1, mu: None });
    // s = 2 in four variables
    let v4 = vars(&["w", "x", "y", "z"]);
    for (a, b) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
        out.push(Member { f: p(&format!("z^2 + (w^{a} + x^{b} + y^2)^2"), &v4), s: 2, mu: None });
    }
    out
}

#[derive(Default)]
struct Tally {
    teissier: usize,
    funbound: usize,
    homogeneous_equalities: usize,
    strict_inhomogeneous: usize,
    cross_checks: usize,
    polar_mults: usize,
    bound_reports: usize,
    homogeneous_daggers: usize,
}

fn check_member(m: &Member, seed: u64, t: &mut Tally) -> Result<(), String> {
    let f = &m.f;
    let cfg = CheckConfig::generic(seed);
    let s = sigma_ideal(f).map_err(|e| e.to_string())?.local_dim();
    ensure(s == m.s as i64, format!("{f}: s = {s}, expected {}", m.s))?;
    let homogeneous = f.homogeneous_degree().map_err(|e| e.to_string())?.is_some();
    let rec = cfg.le(f).map_err(|e| e.to_string())?;
    ensure(rec.all_defined(), format!("{f}: undefined Lê numbers"))?;
    if let Some(mu) = m.mu {
        ensure(rec.lambda == vec![Some(mu)], format!("{f}: λ^0 = {:?}, μ = {mu}", rec.lambda))?;
    }

    if m.s == 0 {
        let r = check_teissier(f, &cfg);
        ensure(r.status == Status::Holds, format!("{f}: Teissier chain\n{r}"))?;
        t.teissier += 1;
    }

    let r = check_funbound(f, &cfg);
    ensure(r.holds(), format!("{f}: funbound\n{r}"))?;
    let has_equality_part = r.part("equality for homogeneous f").is_some();
    ensure(has_equality_part == homogeneous, format!("{f}: equality claim present iff homogeneous"))?;
    if homogeneous {
        ensure(r.equality(), format!("{f}: homogeneous without equality\n{r}"))?;
        t.homogeneous_equalities += 1;
    } else if !r.equality() {
        t.strict_inhomogeneous += 1;
    }
    t.funbound += 1;

    if m.s >= 1 {
        let v = hyperplane_cross_check(f, &rec);
        ensure(v == Verdict::Agrees, format!("{f}: γ^1 + λ^1 vs λ^0 of the slice: {v:?}"))?;
        t.cross_checks += 1;
    }
    for j in 1..=rec.s.min(f.nvars() - 1) {
        let gamma = rec.gamma(j).ok_or(format!("{f}: γ^{j} undefined"))?;
        let mult = polar_mult(f, &rec.frame, j, rec.arithmetic).map_err(|e| e.to_string())?;
        ensure(gamma == mult, format!("{f}: γ^{j} = {gamma}, mult Γ^{j} = {mult}"))?;
        t.polar_mults += 1;
    }

    let r = check_newmpr_and_easybound(f, &cfg, &[]);
    ensure(r.status == Status::Holds, format!("{f}: polar bounds\n{r}"))?;
    t.bound_reports += 1;

    if homogeneous && m.s == 1 {
        let r = check_dagger(f, &cfg);
        ensure(r.status != Status::Counterexample, format!("{f}: homogeneous counterexample\n{r}"))?;
        t.homogeneous_daggers += 1;
    }
    Ok(())
}

fn criterion6() -> Outcome {
    let members = corpus();
    ensure(members.len() >= 20, "corpus too small")?;
    let mut t = Tally::default();
    for m in &members {
        for seed in [1, 2, 3] {
            check_member(m, seed, &mut t)?;
        }
    }
    Ok(format!(
        "{} members × 3 seeds: Teissier {}, funbound {} ({} homogeneous equalities, {} strict inhomogeneous), \
         hyperplane cross-checks {}, γ^j = mult Γ^j {}, polar bound reports {}, homogeneous (†) {}",
        members.len(),
        t.teissier,
        t.funbound,
        t.homogeneous_equalities,
        t.strict_inhomogeneous,
        t.cross_checks,
        t.polar_mults,
        t.bound_reports,
        t.homogeneous_daggers
    ))
}

fn criterion7() -> Outcome {
    let mut ideals: Vec<Ideal> = Vec::new();
    for m in corpus().iter().filter(|m| m.s == 0) {
        ideals.push(Ideal::new(m.f.vars().clone(), m.f.gradient()));
    }
    let xy = vars(&["x", "y"]);
    for g in ["x^3 - y^2 + x*y^2", "x^2*y + y^4", "x^5 + y^5 + x^2*y^2", "(x^2 - y^3)*(x - y^2)"] {
        let g = p(g, &xy);
        ideals.push(Ideal::new(xy.clone(), g.gradient()));
    }
    let mut zero_dim = 0;
    for i in &ideals {
        let by_components = i.local_quotient_dim_by_components();
        if by_components == LocalLength::Infinite {
            continue;
        }
        let mora = i.local_quotient_dim_mora();
        ensure(mora == by_components, format!("{:?}: Mora {mora} vs I:(I:m^∞) {by_components}", i.gens()))?;
        ensure(i.local_quotient_dim() == mora, format!("{:?}: Lazard disagrees", i.gens()))?;
        zero_dim += 1;
    }
    ensure(zero_dim >= 10, format!("only {zero_dim} zero-dimensional ideals"))?;
    for a in 2..=6i64 {
        for b in 2..=6i64 {
            let f = p(&format!("x^{a} + y^{b}"), &xy);
            let mu = milnor(&f).map_err(|e| e.to_string())?;
            ensure(mu == Some(((a - 1) * (b - 1)) as u64), format!("μ(x^{a} + y^{b}) = {mu:?}"))?;
        }
    }
    Ok(format!("{zero_dim} zero-dimensional ideals agree on three routes; μ(x^a+y^b) for 2 ≤ a,b ≤ 6"))
}

fn reports_once() -> Vec<String> {
    let mut out = Vec::new();
    let cfg = CheckConfig::generic(42);
    for f in [bn0(), cusp_family()] {
        let rec = cfg.le(&f).unwrap();
        out.push(Report::new("compute le", &f, 42).with_le(&rec, 42).to_json());
        for r in [check_mainone(&f, &cfg), check_leiom(&f, &cfg, 2, None), check_dagger(&f, &cfg)] {
            out.push(Report::from_check(&f, 42, &r).to_json());
        }
    }
    out
}

fn criterion8() -> Outcome {
    let a = reports_once();
    let b = reports_once();
    ensure(a == b, "JSON differs between runs")?;
    let bytes: usize = a.iter().map(String::len).sum();
    Ok(format!("{} reports, {bytes} bytes, byte-identical across runs", a.len()))
}

fn dagger_search() -> Outcome {
    let family = parse_family(
        r#"{"template": "y^a - x^b - t^c*x^d", "params": {"a": [2, 3, 4], "b": [3, 4, 5], "c": [1, 2, 3], "d": [2, 3]}}"#,
    )
    .map_err(|e| e.to_string())?;
    let reports = search_dagger(&family, &vars(&["t", "x", "y"]), None, &CheckConfig::generic(7));
    let mut evaluated = 0;
    println!("      margin      λ^0  μ_n  candidate  member");
    for r in &reports {
        if r.status == Status::Counterexample {
            return Err(format!("counterexample: {r}"));
        }
        if r.status == Status::Skipped {
            continue;
        }
        evaluated += 1;
        println!(
            "      {:<10}  {:<3}  {:<3}  {:<9}  {} {}",
            r.context["margin"].as_str().unwrap_or("?"),
            r.context["lambda"][0],
            r.context["mu_n"],
            r.context["candidate"],
            r.context["template"].as_str().unwrap_or(""),
            r.context["params"]
        );
    }
    Ok(format!("{} members, {evaluated} evaluated, 0 counterexamples", reports.len()))
}

fn main() {
    let criteria: [(&str, &str, u64, fn() -> Outcome); 9] = [
        ("1", "example bn0", 5, criterion1),
        ("2", "example y^3 - x^4 - t^2 x^2", 5, criterion2),
        ("3", "Minkowski inequality for s = 1", 60, criterion3),
        ("4", "Minkowski inequality for s = 2", 300, criterion4),
        ("5", "Lê-Iomdine formulas", 120, criterion5),
        ("6", "property suites", 1800, criterion6),
        ("7", "kernel oracle equivalence", 120, criterion7),
        ("8", "determinism", 60, criterion8),
        ("†", "search for the open inequality", 600, dagger_search),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > Duration::from_secs(limit) => Err(format!("{detail} (over the {limit} s limit)")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {id} ({name}, {:.1} s): {detail}", took.as_secs_f64()),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {id} ({name}, {:.1} s): {detail}", took.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
