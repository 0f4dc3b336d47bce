//! Checkers for the inequalities relating Lê numbers, polar numbers and
//! sectional Milnor numbers.
//!
//! Every checker returns an [`IneqReport`] holding exact rational sides.
//! Checkers never fail on undefined or out-of-scope input: they return a
//! report with [`Status::Skipped`] and an explanation, so that batch runs
//! are never interrupted.

mod dagger;
mod leiom;
mod minkowski;
mod polar;

use std::fmt;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::arith::Arithmetic;
use crate::cycles::{generic_le, lambda_numbers_with, Genericity, LeRecord};
use crate::error::{Error, Result};
use crate::field::{rational_string, Rational};
use crate::poly::frame::{restrict, Section};
use crate::poly::{Frame, Polynomial};
use crate::sectional::{slice_seed, SliceOptions};

pub use dagger::{check_dagger, check_suspension, parse_family, search_dagger, FamilySpec};
pub use leiom::{check_leiom, LEIOM_RETRIES};
pub use minkowski::{check_mainmany, check_mainone, check_teissier};
pub use polar::{check_newmpr_and_easybound, Component};

/// How two sides are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Ge => lhs >= rhs,
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Ge => "≥",
            Relation::Le => "≤",
            Relation::Eq => "=",
        })
    }
}

/// One exact comparison `lhs (relation) rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub name: String,
    pub lhs: Rational,
    pub rhs: Rational,
    pub relation: Relation,
    pub holds: bool,
    pub equality: bool,
}

impl Comparison {
    pub fn new(name: impl Into<String>, lhs: Rational, rhs: Rational, relation: Relation) -> Self {
        let holds = relation.holds(&lhs, &rhs);
        let equality = lhs == rhs;
        Comparison { name: name.into(), lhs, rhs, relation, holds, equality }
    }

    pub fn ge(name: impl Into<String>, lhs: impl Into<Rational>, rhs: impl Into<Rational>) -> Self {
        Self::new(name, lhs.into(), rhs.into(), Relation::Ge)
    }

    pub fn eq(name: impl Into<String>, lhs: impl Into<Rational>, rhs: impl Into<Rational>) -> Self {
        Self::new(name, lhs.into(), rhs.into(), Relation::Eq)
    }
}

impl Serialize for Comparison {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Comparison", 6)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("lhs", &rational_string(&self.lhs))?;
        st.serialize_field("rhs", &rational_string(&self.rhs))?;
        st.serialize_field("relation", &self.relation)?;
        st.serialize_field("holds", &self.holds)?;
        st.serialize_field("equality", &self.equality)?;
        st.end()
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.holds { "ok" } else { "FAILS" };
        write!(f, "{}: {} {} {} [{mark}]", self.name, self.lhs, self.relation, self.rhs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Violated,
    Skipped,
    Counterexample,
}

impl Status {
    /// Process exit code: 0 holds, 2 skipped, 3 violated or counterexample.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Holds => 0,
            Status::Skipped => 2,
            Status::Violated | Status::Counterexample => 3,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Violated => "VIOLATED",
            Status::Skipped => "skipped",
            Status::Counterexample => "COUNTEREXAMPLE",
        })
    }
}

/// Result of one checker. The first comparison is the headline inequality;
/// the others are sub-claims and consistency identities.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IneqReport {
    pub name: String,
    pub status: Status,
    pub checks: Vec<Comparison>,
    /// Intermediate invariants: λ's, γ's, μ's, seeds, frame, m, a, k_p.
    pub context: Map<String, Value>,
    pub note: Option<String>,
}

impl IneqReport {
    /// A report whose status follows from its comparisons.
    pub fn from_checks(name: &str, checks: Vec<Comparison>, context: Map<String, Value>) -> Self {
        let status = if checks.iter().all(|c| c.holds) { Status::Holds } else { Status::Violated };
        IneqReport { name: name.to_string(), status, checks, context, note: None }
    }

    pub fn skipped(name: &str, reason: impl Into<String>, context: Map<String, Value>) -> Self {
        IneqReport { name: name.to_string(), status: Status::Skipped, checks: Vec::new(), context, note: Some(reason.into()) }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn headline(&self) -> Option<&Comparison> {
        self.checks.first()
    }

    pub fn lhs(&self) -> Option<&Rational> {
        self.headline().map(|c| &c.lhs)
    }

    pub fn rhs(&self) -> Option<&Rational> {
        self.headline().map(|c| &c.rhs)
    }

    /// Every comparison holds and the checker was not skipped.
    pub fn holds(&self) -> bool {
        self.status != Status::Skipped && self.checks.iter().all(|c| c.holds)
    }

    /// The headline holds with equality.
    pub fn equality(&self) -> bool {
        self.holds() && self.headline().is_some_and(|c| c.equality)
    }

    pub fn part(&self, name: &str) -> Option<&Comparison> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// An integer recorded in the context.
    pub fn context_u64(&self, key: &str) -> Option<u64> {
        self.context.get(key).and_then(Value::as_u64)
    }
}

impl fmt::Display for IneqReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.name, self.status)?;
        if let Some(n) = &self.note {
            writeln!(f, "  note: {n}")?;
        }
        for c in &self.checks {
            writeln!(f, "  {c}")?;
        }
        for (k, v) in &self.context {
            writeln!(f, "  {k} = {v}")?;
        }
        Ok(())
    }
}

/// Where the Lê numbers of the input are taken.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    /// A fixed frame, or `None` for generic values over random frames.
    pub frame: Option<Frame>,
    /// Seeds, trial count, coefficient bound and arithmetic for everything
    /// random: frames, generic slices and Lê-Iomdine coefficients.
    pub genericity: Genericity,
}

impl CheckConfig {
    pub fn generic(seed: u64) -> Self {
        CheckConfig { frame: None, genericity: Genericity::new(seed) }
    }

    pub fn in_frame(frame: Frame, seed: u64) -> Self {
        CheckConfig { frame: Some(frame), genericity: Genericity::new(seed) }
    }

    pub fn arithmetic(mut self, arithmetic: Arithmetic) -> Self {
        self.genericity.arithmetic = arithmetic;
        self
    }

    pub fn trials(mut self, trials: u32) -> Self {
        self.genericity.trials = trials;
        self
    }

    pub fn bound(mut self, bound: i64) -> Self {
        self.genericity.bound = bound;
        self
    }

    pub fn seed(&self) -> u64 {
        self.genericity.seed
    }

    /// Lê numbers of `f` in the fixed frame, or generic ones.
    pub fn le(&self, f: &Polynomial) -> Result<LeRecord> {
        match &self.frame {
            Some(frame) => lambda_numbers_with(f, frame, self.genericity.arithmetic),
            None => generic_le(f, &self.genericity),
        }
    }

    pub fn slices(&self) -> SliceOptions {
        SliceOptions::new(self.genericity.seed)
            .bound(self.genericity.bound)
            .arithmetic(self.genericity.arithmetic)
    }
}

/// Number of random slices tried for generic Lê numbers of `f^[k]`.
const SLICE_TRIALS: u32 = 2;

/// Generic Lê numbers of `f^[k]` for `1 ≤ k < n + 1`: the lexicographic
/// minimum over a few random slices, each with generic frames.
pub(crate) fn generic_slice_le(f: &Polynomial, k: usize, cfg: &CheckConfig) -> Result<(LeRecord, u64)> {
    let g = &cfg.genericity;
    let mut best: Option<((usize, Vec<u64>), LeRecord, u64)> = None;
    let mut last_err = None;
    for trial in 0..SLICE_TRIALS {
        let seed = slice_seed(g.seed, k, 0, trial);
        let h = restrict(f, k, &Section::Seed { seed, bound: g.bound })?;
        match generic_le(&h, g) {
            Ok(rec) => {
                if let Some(key) = rec.lex_key() {
                    if best.as_ref().is_none_or(|(b, _, _)| key < *b) {
                        best = Some((key, rec, seed));
                    }
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    match best {
        Some((_, rec, seed)) => Ok((rec, seed)),
        None => Err(last_err.unwrap_or_else(|| Error::Undefined(format!("Lê numbers of f^[{k}] undefined")))),
    }
}

/// Rational from an unsigned integer.
pub(crate) fn q(v: u64) -> Rational {
    Rational::from_integer(v.into())
}

pub(crate) fn frame_json(frame: &Frame) -> Value {
    let rows: Vec<Vec<String>> = frame.matrix().iter().map(|r| r.iter().map(rational_string).collect()).collect();
    json!({ "matrix": rows, "seed": frame.seed() })
}

/// Context entries common to every checker that used a Lê record.
pub(crate) fn le_context(ctx: &mut Map<String, Value>, rec: &LeRecord) {
    ctx.insert("s".into(), json!(rec.s));
    ctx.insert("lambda".into(), json!(rec.lambda));
    ctx.insert("gamma".into(), json!(rec.gamma));
    ctx.insert("frame".into(), frame_json(&rec.frame));
    ctx.insert("arithmetic".into(), json!(rec.arithmetic));
}

pub(crate) fn base_context(f: &Polynomial, cfg: &CheckConfig) -> Map<String, Value> {
    let mut ctx = Map::new();
    ctx.insert("f".into(), json!(f.to_string()));
    ctx.insert("vars".into(), json!(f.vars().iter().collect::<Vec<_>>()));
    ctx.insert("seed".into(), json!(cfg.seed()));
    ctx
}

/// Lê numbers every entry of which is defined, or the reason they are not.
pub(crate) fn defined_le(f: &Polynomial, cfg: &CheckConfig) -> std::result::Result<LeRecord, String> {
    match cfg.le(f) {
        Ok(rec) if rec.all_defined() => Ok(rec),
        Ok(rec) => Err(format!("Lê numbers undefined in this frame (defined: {:?})", rec.defined())),
        Err(e) => Err(e.to_string()),
    }
}

/// `Σ_{j=0}^s (mult₀f − 1)^j λ^j ≥ (mult₀f − 1)^{n+1}`, with equality
/// required when `f` is homogeneous.
pub fn check_funbound(f: &Polynomial, cfg: &CheckConfig) -> IneqReport {
    const NAME: &str = "funbound";
    let mut ctx = base_context(f, cfg);
    let rec = match defined_le(f, cfg) {
        Ok(r) => r,
        Err(e) => return IneqReport::skipped(NAME, e, ctx),
    };
    le_context(&mut ctx, &rec);
    let (mult, homog) = match (f.mult_origin(), f.homogeneous_degree()) {
        (Ok(m), Ok(h)) => (m as u64, h.is_some()),
        _ => return IneqReport::skipped(NAME, Error::ZeroPolynomial.to_string(), ctx),
    };
    ctx.insert("mult".into(), json!(mult));
    ctx.insert("homogeneous".into(), json!(homog));
    let base = q(mult - 1);
    let mut lhs = q(0);
    let mut pow = q(1);
    for l in &rec.lambda {
        lhs += &pow * q(l.unwrap());
        pow *= &base;
    }
    let mut rhs = q(1);
    for _ in 0..f.nvars() {
        rhs *= &base;
    }
    let mut checks = vec![Comparison::ge("Σ (mult−1)^j λ^j ≥ (mult−1)^(n+1)", lhs.clone(), rhs.clone())];
    if homog {
        checks.push(Comparison::eq("equality for homogeneous f", lhs, rhs));
    }
    IneqReport::from_checks(NAME, checks, ctx)
}

/// Names accepted by [`run_check`].
pub const CHECKERS: [&str; 8] = ["funbound", "leiom", "mainone", "mainmany", "dagger", "suspension", "newmpr", "teissier"];

/// Runs a checker by name with default parameters (`m = 2`, random `a` for
/// the Lê-Iomdine checker; no polar components for `newmpr`).
pub fn run_check(name: &str, f: &Polynomial, cfg: &CheckConfig) -> Result<IneqReport> {
    Ok(match name {
        "funbound" => check_funbound(f, cfg),
        "leiom" => check_leiom(f, cfg, 2, None),
        "mainone" => check_mainone(f, cfg),
        "mainmany" => check_mainmany(f, cfg),
        "dagger" => check_dagger(f, cfg),
        "suspension" => check_suspension(f, cfg),
        "newmpr" => check_newmpr_and_easybound(f, cfg, &[]),
        "teissier" => check_teissier(f, cfg),
        _ => return Err(Error::InvalidArgument(format!("unknown checker `{name}` (expected one of {})", CHECKERS.join(", ")))),
    })
}
