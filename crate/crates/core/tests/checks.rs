//! The inequality checkers on worked examples.

use std::collections::BTreeMap;

use lenum::checks::{
    check_dagger, check_funbound, check_leiom, check_mainmany, check_mainone, check_newmpr_and_easybound,
    check_suspension, check_teissier, parse_family, run_check, search_dagger, CheckConfig, FamilySpec, IneqReport,
    Status,
};
use lenum::groebner::Ideal;
use lenum::poly::{vars, Vars};
use lenum::sectional::milnor;
use lenum::{parse, Frame, Polynomial, Rational};

fn p(text: &str, v: &Vars) -> Polynomial {
    parse(text, v).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn xyz() -> Vars {
    vars(&["x", "y", "z"])
}

fn txy() -> Vars {
    vars(&["t", "x", "y"])
}

fn bn0() -> Polynomial {
    p("(x^2-z^2+y^2)*(x-z)", &xyz())
}

fn cusp_family() -> Polynomial {
    p("y^3 - x^4 - t^2*x^2", &txy())
}

fn identity(n: usize) -> CheckConfig {
    CheckConfig::in_frame(Frame::identity(n), 1)
}

fn headline(r: &IneqReport) -> (Rational, Rational) {
    (r.lhs().unwrap().clone(), r.rhs().unwrap().clone())
}

#[test]
fn funbound() {
    let r = check_funbound(&bn0(), &identity(3));
    assert_eq!(headline(&r), (q(8, 1), q(8, 1)));
    assert!(r.equality());

    let r = check_funbound(&cusp_family(), &identity(3));
    assert_eq!(headline(&r), (q(16, 1), q(8, 1)));
    assert!(r.holds() && !r.equality());

    // s = 0: μ(f) ≥ (mult − 1)^(n+1)
    let xy = vars(&["x", "y"]);
    let r = check_funbound(&p("x^3 + y^5", &xy), &CheckConfig::generic(2));
    assert_eq!(headline(&r), (q(8, 1), q(4, 1)));
}

#[test]
fn leiom_equality_branch() {
    let r = check_leiom(&bn0(), &identity(3), 9, Some(q(1, 1)));
    assert_eq!(r.status, Status::Holds, "{r}");
    let eq = r.part("λ^0(g) = λ^0(f) + (m−1)λ^1(f)").expect("equality applies for m = 9");
    assert_eq!((eq.lhs.clone(), eq.rhs.clone()), (q(26, 1), q(26, 1)));
    // oracle: the Lê numbers of g recomputed from scratch in the rotated frame
    let (g, frame) = lenum::poly::iomdine(&bn0(), 9, &q(1, 1)).unwrap();
    let rec = lenum::cycles::lambda_numbers(&g, &frame).unwrap();
    assert_eq!(rec.s, 0);
    assert_eq!(rec.lambda, vec![Some(26)]);
    assert_eq!(milnor(&g).unwrap(), Some(26));
}

#[test]
fn leiom_inequality_branch() {
    let r = check_leiom(&bn0(), &identity(3), 2, Some(q(1, 1)));
    assert!(r.holds(), "{r}");
    let (bound, lg) = headline(&r);
    assert_eq!(bound, q(5, 1));
    assert!(lg <= q(5, 1));
}

#[test]
fn leiom_isolated_remark() {
    // μ(f + a z0^m) = μ(f) once m ≥ 1 + μ(f)
    let xy = vars(&["x", "y"]);
    let f = p("x^2 + y^3", &xy);
    assert_eq!(milnor(&f).unwrap(), Some(2));
    for m in [3, 4] {
        let r = check_leiom(&f, &identity(2), m, Some(q(1, 1)));
        assert_eq!(r.status, Status::Holds, "{r}");
        assert_eq!(r.context_u64("mu_g"), Some(2));
        let (g, _) = lenum::poly::iomdine(&f, m, &q(1, 1)).unwrap();
        assert_eq!(milnor(&g).unwrap(), Some(2));
    }
}

#[test]
fn leiom_samples_a_when_not_given() {
    let a = check_leiom(&bn0(), &identity(3), 3, None);
    let b = check_leiom(&bn0(), &identity(3), 3, None);
    assert_eq!(a, b);
    assert!(a.context.contains_key("a"));
    assert_eq!(check_leiom(&bn0(), &identity(3), 1, None).status, Status::Skipped);
}

#[test]
fn mainone() {
    let cfg = CheckConfig::in_frame(Frame::identity(3), 3);
    let r = check_mainone(&bn0(), &cfg);
    assert_eq!(headline(&r), (q(11, 4), q(2, 1)));
    assert_eq!(r.context_u64("mu_n"), Some(4));
    assert_eq!(r.context_u64("mu_n_minus_1"), Some(2));

    let r = check_mainone(&cusp_family(), &cfg);
    assert_eq!(headline(&r), (q(11, 3), q(3, 1)));
    assert_eq!(r.context_u64("mu_n"), Some(6));

    let xy = vars(&["x", "y"]);
    let r = check_mainone(&p("x^2 + y^3", &xy), &CheckConfig::generic(1));
    assert_eq!(headline(&r), (q(2, 1), q(1, 1)));
}

/// For `s = 1` the recursion gives `k_1 = μ(f^[n])`, so the many-dimensional
/// inequality reads `(λ^0 + μ_n λ^1)/μ_n ≥ μ_n/μ_{n−1}`: the same right side
/// as the one-dimensional one, with the weaker coefficient `μ_n` in place of
/// `μ_n − μ_{n−1} + 1`.
#[test]
fn mainmany_specializes_to_mainone() {
    for f in [bn0(), cusp_family()] {
        let cfg = CheckConfig::generic(4);
        let one = check_mainone(&f, &cfg);
        let many = check_mainmany(&f, &cfg);
        assert!(many.holds(), "{many}");
        let mu_n = one.context_u64("mu_n").unwrap();
        let k: Vec<String> = serde_json::from_value(many.context["k"].clone()).unwrap();
        assert_eq!(k, vec![mu_n.to_string()]);
        let l0 = one.context["lambda"][0].as_u64().unwrap() as i64;
        let l1 = one.context["lambda"][1].as_u64().unwrap() as i64;
        let mu_n = mu_n as i64;
        assert_eq!(many.lhs().unwrap(), &q(l0 + mu_n * l1, mu_n));
        assert_eq!(many.rhs(), one.rhs());
        assert!(many.lhs().unwrap() >= one.lhs().unwrap());
    }
}

#[test]
fn mainmany_omega_shift() {
    let wxyz = vars(&["w", "x", "y", "z"]);
    let r = check_mainmany(&p("y^2 + z^2", &wxyz), &CheckConfig::generic(1));
    assert_eq!(r.context["shifted"], serde_json::json!(true), "{r}");
    assert_eq!(r.context_u64("omega"), Some(2));
    assert!(r.holds());
}

#[test]
fn dagger() {
    let r = check_dagger(&p("y^2 + z^2", &xyz()), &CheckConfig::generic(1));
    assert_eq!(r.status, Status::Skipped);
    assert_eq!(r.status.exit_code(), 2);

    let r = check_dagger(&bn0(), &identity(3));
    assert_eq!(headline(&r), (q(2, 1), q(2, 1)));
    assert_eq!(r.status, Status::Holds);
    assert_eq!(r.context["candidate"], serde_json::json!(true));
    assert_eq!(r.context["margin"], serde_json::json!("0"));
}

#[test]
fn dagger_search() {
    let cfg = CheckConfig::generic(2);
    assert!(search_dagger(&[], &txy(), None, &cfg).is_empty());

    let family = parse_family(
        r#"{"template": "y^a - x^b - t^c*x^d", "params": {"a": [3], "b": [4, 5], "c": [2], "d": [2]}}
{"template": "(x^2-z^2+y^2)*(x-z)", "vars": ["x", "y", "z"]}
{"template": "x^2*y - z^3", "vars": ["x", "y", "z"]}"#,
    )
    .unwrap();
    let reports = search_dagger(&family, &txy(), None, &cfg);
    assert_eq!(reports.len(), 4);
    assert!(reports.iter().all(|r| r.status != Status::Counterexample));
    // evaluated members come first, sorted by margin
    let margins: Vec<Rational> =
        reports.iter().filter(|r| r.status != Status::Skipped).map(|r| r.lhs().unwrap() - r.rhs().unwrap()).collect();
    assert!(margins.windows(2).all(|w| w[0] <= w[1]));

    let capped = search_dagger(&family, &txy(), Some(2), &cfg);
    assert_eq!(capped.len(), 2);
}

#[test]
fn family_spec_parsing() {
    let fam = parse_family("\n{\"template\": \"x^a + y^b\", \"params\": {\"b\": [2, 3], \"a\": [4]}}\n").unwrap();
    let expected: Vec<BTreeMap<String, i64>> = vec![
        [("a".to_string(), 4), ("b".to_string(), 2)].into_iter().collect(),
        [("a".to_string(), 4), ("b".to_string(), 3)].into_iter().collect(),
    ];
    assert_eq!(fam[0].assignments(), expected);
    assert!(parse_family("{\"template\": \"x\", \"extra\": 1}").is_err());
    let spec = FamilySpec { template: "x".into(), params: BTreeMap::new(), vars: None };
    assert_eq!(spec.assignments().len(), 1);
}

#[test]
fn suspension() {
    let r = check_suspension(&p("z^2 + x^2*y", &xyz()), &CheckConfig::generic(3));
    assert!(r.holds(), "{r}");
    assert_eq!(headline(&r), (q(2, 1), q(2, 1)));

    let xy = vars(&["x", "y"]);
    let f = p("x^2*y^2 + x^5", &xy);
    let r = check_suspension(&f, &CheckConfig::generic(3));
    assert!(r.holds(), "{r}");
    // oracle: λ^0 from generic Lê numbers, μ of a generic line from its order
    let rec = CheckConfig::generic(3).le(&f).unwrap();
    assert_eq!(r.lhs().unwrap(), &Rational::from_integer(rec.lambda(0).unwrap().into()));
    assert_eq!(r.rhs().unwrap(), &q(3, 1));

    let r = check_suspension(&p("x^2 + y^3", &xy), &CheckConfig::generic(3));
    assert_eq!(r.status, Status::Skipped);
}

#[test]
fn newmpr_with_components() {
    let comp = Ideal::new(xyz(), vec![p("y", &xyz()), p("3*z + x", &xyz())]);
    let r = check_newmpr_and_easybound(&bn0(), &identity(3), &[(comp, 1)]);
    assert!(r.holds(), "{r}");
    assert_eq!(r.context["mpr"], serde_json::json!("3"));
    let u1 = r.part("λ^0 + 1 ≥ mpr").unwrap();
    assert_eq!((u1.lhs.clone(), u1.rhs.clone()), (q(3, 1), q(3, 1)));
    let u2 = r.part("λ^0 − γ^1 + 2 ≥ mpr").unwrap();
    assert_eq!((u2.lhs.clone(), u2.rhs.clone()), (q(3, 1), q(3, 1)));

    let r = check_newmpr_and_easybound(&cusp_family(), &identity(3), &[]);
    assert!(r.holds(), "{r}");
    let e = r.part("mult₀Γ^1 · mult₀(∂f/∂z0) ≥ mult₀Γ^1 (mult₀f − 1)").unwrap();
    assert_eq!(e.rhs, q(8, 1));
    let e = r.part("λ^0 ≥ mult₀Γ^1 · mult₀(∂f/∂z0)").unwrap();
    assert_eq!(e.lhs, q(12, 1));
}

#[test]
fn newmpr_empty_polar_curve() {
    let xy = vars(&["x", "y"]);
    let cfg = CheckConfig::in_frame(Frame::permutation(&[1, 0]).unwrap(), 1);
    let r = check_newmpr_and_easybound(&p("x^2", &xy), &cfg, &[]);
    assert_eq!(r.context["mpr"], serde_json::json!("1"), "{r}");
    let u1 = r.headline().unwrap();
    assert!(u1.holds);
    assert_eq!(u1.rhs, q(1, 1));
}

#[test]
fn teissier() {
    let r = check_teissier(&p("x^3 + y^4 + z^5 + x*y*z", &xyz()), &CheckConfig::generic(2));
    assert!(r.holds(), "{r}");
    assert_eq!(r.context["sectional"], serde_json::json!([1, 2, 4, 11]));
    assert_eq!(check_teissier(&bn0(), &CheckConfig::generic(2)).status, Status::Skipped);
}

#[test]
fn run_check_by_name() {
    let cfg = identity(3);
    assert_eq!(run_check("funbound", &bn0(), &cfg).unwrap(), check_funbound(&bn0(), &cfg));
    assert!(run_check("nonsense", &bn0(), &cfg).is_err());
}

#[test]
fn reports_serialize_deterministically() {
    let r = check_mainone(&cusp_family(), &CheckConfig::generic(5));
    let a = serde_json::to_string(&r).unwrap();
    let b = serde_json::to_string(&check_mainone(&cusp_family(), &CheckConfig::generic(5))).unwrap();
    assert_eq!(a, b);
    assert!(a.contains("\"lhs\":\"11/3\""));
}
