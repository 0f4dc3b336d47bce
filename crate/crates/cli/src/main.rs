//! `lenum`: Lê numbers, sectional Milnor numbers and inequality checks from
//! the command line.
//!
//! Exit codes: 0 success, 1 input error, 2 undefined or skipped,
//! 3 violated inequality or counterexample.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lenum::arith::Arithmetic;
use lenum::checks::{self, CheckConfig, Component, IneqReport, Status};
use lenum::cycles::{generic_le, lambda_numbers_with, mpr_bounds_from, polar_mult, polar_number, Genericity, LeRecord};
use lenum::field::{parse_rational, Field};
use lenum::poly::vars;
use lenum::report::Report;
use lenum::sectional::{milnor_with, sectional, sectional_profile};
use lenum::{parse, Error, Frame, Ideal, Polynomial, Rational};

#[derive(Parser)]
#[command(name = "lenum", version, about = "Lê numbers, polar numbers and sectional Milnor numbers of hypersurface singularities")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute an invariant of f at the origin.
    Compute {
        what: Invariant,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        run: Run,
        /// Dimension of the generic slice for `sectional` (all when omitted).
        #[arg(short = 'k')]
        k: Option<usize>,
    },
    /// Check one of the inequalities.
    Check {
        /// funbound, leiom, mainone, mainmany, dagger, suspension, newmpr or teissier
        name: String,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        run: Run,
        /// Exponent m of the Lê-Iomdine perturbation f + a z0^m.
        #[arg(short = 'm', default_value_t = 2)]
        m: u32,
        /// Coefficient a of the perturbation (sampled when omitted).
        #[arg(short = 'a', allow_hyphen_values = true)]
        a: Option<String>,
        /// A reduced component of the polar curve for `newmpr`, as
        /// comma-separated generators with an optional `@coefficient`.
        #[arg(long)]
        component: Vec<String>,
    },
    /// Search a family of polynomials for a counterexample.
    Search {
        what: SearchTarget,
        /// Family file: one JSON object {"template", "params", "vars"?} per line.
        #[arg(long)]
        family: PathBuf,
        /// Default variables for templates without their own.
        #[arg(long)]
        vars: Option<String>,
        /// Evaluate at most this many family members.
        #[arg(long)]
        trials: Option<usize>,
        /// Random frames per member.
        #[arg(long, default_value_t = 3)]
        frame_trials: u32,
        #[arg(long, env = "LENUM_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = lenum::poly::frame::DEFAULT_BOUND)]
        bound: i64,
        #[arg(long)]
        arith: Option<Arithmetic>,
        /// One JSON report per line instead of the margin table.
        #[arg(long)]
        json: bool,
        /// Also write the JSON reports to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Invariant {
    Le,
    Milnor,
    Sectional,
    Mult,
    Polar,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchTarget {
    Dagger,
}

#[derive(Args)]
struct Input {
    /// The polynomial, e.g. "(x^2-z^2+y^2)*(x-z)".
    #[arg(short = 'f', long = "poly")]
    poly: String,
    /// Comma-separated variables, in coordinate order.
    #[arg(long)]
    vars: String,
}

#[derive(Args)]
struct Run {
    /// `identity`, `random` (generic values over random frames) or a path
    /// to a JSON matrix file.
    #[arg(long, default_value = "random")]
    frame: String,
    /// Seed of every random choice; overrides LENUM_SEED.
    #[arg(long, env = "LENUM_SEED", default_value_t = 0)]
    seed: u64,
    /// Draw the seed from the clock instead (it is reported).
    #[arg(long, conflicts_with = "seed")]
    entropy: bool,
    /// Random frames tried for generic values.
    #[arg(long, default_value_t = 3)]
    trials: u32,
    /// Bound on the integer entries of random frames and slices.
    #[arg(long, default_value_t = lenum::poly::frame::DEFAULT_BOUND)]
    bound: i64,
    /// `exact` or `modular`; defaults to modular for random frames.
    #[arg(long)]
    arith: Option<Arithmetic>,
    /// Print the JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Error with the exit code it maps to.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Undefined(_) | Error::SaturationLimit(_) => 2,
            _ => 1,
        };
        Fail(code, e.to_string())
    }
}

fn input_error(msg: impl Into<String>) -> Fail {
    Fail(1, msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Compute { what, input, run, k } => compute(what, &input, &run, k),
        Cmd::Check { name, input, run, m, a, component } => check(&name, &input, &run, m, a, &component),
        Cmd::Search { what: SearchTarget::Dagger, family, vars, trials, frame_trials, seed, bound, arith, json, out } => {
            search(&family, vars.as_deref(), trials, frame_trials, seed, bound, arith, json, out)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn parse_input(input: &Input) -> Result<Polynomial, Fail> {
    let names: Vec<&str> = input.vars.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if names.is_empty() {
        return Err(input_error("--vars needs at least one variable"));
    }
    let f = parse(&input.poly, &vars(&names)).map_err(|e| input_error(format!("cannot parse polynomial: {e}")))?;
    if !f.constant_term().is_zero() {
        return Err(input_error("f must vanish at the origin"));
    }
    Ok(f)
}

enum FrameMode {
    Identity,
    Random,
    Fixed(Frame),
}

fn frame_mode(spec: &str, n: usize) -> Result<FrameMode, Fail> {
    match spec {
        "identity" => Ok(FrameMode::Identity),
        "random" => Ok(FrameMode::Random),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("cannot read frame file {path}: {e}")))?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| input_error(format!("frame file {path}: {e}")))?;
            let rows = value.get("matrix").unwrap_or(&value);
            let rows = rows.as_array().ok_or_else(|| input_error("frame file must hold a matrix"))?;
            let mut matrix = Vec::new();
            for row in rows {
                let row = row.as_array().ok_or_else(|| input_error("frame rows must be arrays"))?;
                let mut out = Vec::new();
                for c in row {
                    let text = match c {
                        serde_json::Value::String(s) => s.clone(),
                        serde_json::Value::Number(n) => n.to_string(),
                        _ => return Err(input_error("frame entries must be numbers or \"p/q\" strings")),
                    };
                    out.push(parse_rational(&text).ok_or_else(|| input_error(format!("bad frame entry `{text}`")))?);
                }
                matrix.push(out);
            }
            let frame = Frame::from_matrix(matrix)?;
            if frame.dim() != n {
                return Err(input_error(format!("frame has dimension {}, f has {n} variables", frame.dim())));
            }
            Ok(FrameMode::Fixed(frame))
        }
    }
}

fn seed_of(run: &Run) -> u64 {
    if run.entropy {
        std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_nanos() as u64).unwrap_or(0)
    } else {
        run.seed
    }
}

fn config(run: &Run, n: usize) -> Result<CheckConfig, Fail> {
    if run.trials == 0 {
        return Err(input_error("--trials must be positive"));
    }
    if run.bound < 1 {
        return Err(input_error("--bound must be positive"));
    }
    let seed = seed_of(run);
    let (frame, default_arith) = match frame_mode(&run.frame, n)? {
        FrameMode::Identity => (Some(Frame::identity(n)), Arithmetic::Exact),
        FrameMode::Fixed(fr) => (Some(fr), Arithmetic::Exact),
        FrameMode::Random => (None, Arithmetic::Modular),
    };
    let genericity = Genericity::new(seed).trials(run.trials).bound(run.bound).arithmetic(run.arith.unwrap_or(default_arith));
    Ok(CheckConfig { frame, genericity })
}

fn emit(report: &Report, text: &str, run_json: bool, out: Option<&PathBuf>) -> Result<(), Fail> {
    if run_json {
        println!("{}", report.to_json());
    } else {
        print!("{text}");
    }
    if let Some(path) = out {
        std::fs::write(path, report.to_json() + "\n").map_err(|e| input_error(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn fmt_list(v: &[Option<u64>]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.map_or("undefined".to_string(), |v| v.to_string())).collect();
    format!("[{}]", items.join(", "))
}

fn frame_text(rec_frame: &Frame, seed: u64) -> String {
    if rec_frame.is_identity() {
        return "identity".to_string();
    }
    let rows: Vec<String> = rec_frame
        .matrix()
        .iter()
        .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    format!("random (seed {}): [{}]", rec_frame.seed().unwrap_or(seed), rows.join("; "))
}

fn le_record(f: &Polynomial, cfg: &CheckConfig) -> Result<LeRecord, Fail> {
    Ok(match &cfg.frame {
        Some(fr) => lambda_numbers_with(f, fr, cfg.genericity.arithmetic)?,
        None => generic_le(f, &cfg.genericity)?,
    })
}

fn compute(what: Invariant, input: &Input, run: &Run, k: Option<usize>) -> Result<u8, Fail> {
    let f = parse_input(input)?;
    let cfg = config(run, f.nvars())?;
    let seed = cfg.seed();
    let arith = cfg.genericity.arithmetic;
    let mut text = String::new();
    let mut code = 0u8;
    let report = match what {
        Invariant::Le => {
            let rec = le_record(&f, &cfg)?;
            let mult = f.mult_origin()?;
            writeln!(text, "s = {}", rec.s).unwrap();
            for j in (0..=rec.s).rev() {
                writeln!(text, "lambda^{j} = {}", fmt_list(&[rec.lambda[j]]).trim_matches(['[', ']'])).unwrap();
            }
            for j in (1..=rec.s).rev() {
                writeln!(text, "gamma^{j} = {}", fmt_list(&[rec.gamma[j]]).trim_matches(['[', ']'])).unwrap();
            }
            writeln!(text, "defined = {}", rec.all_defined()).unwrap();
            writeln!(text, "mult = {mult}").unwrap();
            writeln!(text, "frame = {}", frame_text(&rec.frame, seed)).unwrap();
            writeln!(text, "seed = {seed}").unwrap();
            if !rec.all_defined() {
                code = 2;
            }
            let mut r = Report::new("compute le", &f, seed).with_le(&rec, seed);
            r.values.insert("mult".into(), json!(mult));
            r
        }
        Invariant::Milnor => {
            let mu = milnor_with(&f, arith)?;
            match mu {
                Some(v) => writeln!(text, "mu = {v}").unwrap(),
                None => {
                    writeln!(text, "mu = undefined (the critical point is not isolated)").unwrap();
                    code = 2;
                }
            }
            let mut r = Report::new("compute milnor", &f, seed);
            r.values.insert("milnor".into(), json!(mu));
            r
        }
        Invariant::Sectional => {
            let opts = cfg.slices();
            let mut r = Report::new("compute sectional", &f, seed);
            match k {
                Some(k) => {
                    let v = sectional(&f, k, &opts)?;
                    match v.mu {
                        Some(mu) => writeln!(text, "mu(f^[{k}]) = {mu}").unwrap(),
                        None => {
                            writeln!(text, "mu(f^[{k}]) = undefined").unwrap();
                            code = 2;
                        }
                    }
                    r.values.insert("k".into(), json!(k));
                    r.values.insert("mu".into(), json!(v.mu));
                    r.values.insert("slice_seeds".into(), json!(v.seeds));
                }
                None => {
                    let p = sectional_profile(&f, &opts)?;
                    for (k, v) in p.mu.iter().enumerate() {
                        writeln!(text, "mu(f^[{k}]) = {}", v.map_or("undefined".into(), |x| x.to_string())).unwrap();
                    }
                    r.sectional = p.mu.clone();
                }
            }
            r
        }
        Invariant::Mult => {
            let m = f.mult_origin()?;
            writeln!(text, "mult = {m}").unwrap();
            let mut r = Report::new("compute mult", &f, seed);
            r.values.insert("mult".into(), json!(m));
            r
        }
        Invariant::Polar => {
            let rec = le_record(&f, &cfg)?;
            let n = f.nvars() - 1;
            let mut gammas = Vec::new();
            let mut mults = Vec::new();
            for j in 1..=n {
                let g = polar_number(&f, &rec.frame, j, arith)?;
                let m = polar_mult(&f, &rec.frame, j, arith).ok();
                writeln!(
                    text,
                    "Gamma^{j}: gamma^{j} = {}, mult = {}",
                    g.map_or("undefined".into(), |v| v.to_string()),
                    m.map_or("undefined".into(), |v| v.to_string())
                )
                .unwrap();
                gammas.push(g);
                mults.push(m);
            }
            let mut r = Report::new("compute polar", &f, seed).with_le(&rec, seed);
            if let Ok(b) = mpr_bounds_from(&f, &rec) {
                writeln!(text, "mpr bounds: {} <= mpr <= {}", b.lower, b.upper2.map_or(b.upper1, |u| u.min(b.upper1))).unwrap();
                r.values.insert("mpr_lower".into(), json!(b.lower));
                r.values.insert("mpr_upper".into(), json!(b.upper2.map_or(b.upper1, |u| u.min(b.upper1))));
            }
            writeln!(text, "frame = {}", frame_text(&rec.frame, seed)).unwrap();
            r.values.insert("polar_numbers".into(), json!(gammas));
            r.values.insert("polar_mults".into(), json!(mults));
            r
        }
    };
    emit(&report, &text, run.json, run.out.as_ref())?;
    Ok(code)
}

fn parse_component(text: &str, f: &Polynomial) -> Result<Component, Fail> {
    let (gens, coef) = match text.rsplit_once('@') {
        Some((g, c)) => (g, c.trim().parse::<u64>().map_err(|_| input_error(format!("bad coefficient in `{text}`")))?),
        None => (text, 1),
    };
    let polys = gens
        .split(',')
        .map(|g| parse(g, f.vars()).map_err(|e| input_error(format!("component `{text}`: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((Ideal::new(f.vars().clone(), polys), coef))
}

fn check(name: &str, input: &Input, run: &Run, m: u32, a: Option<String>, component: &[String]) -> Result<u8, Fail> {
    if !checks::CHECKERS.contains(&name) {
        return Err(input_error(format!("unknown checker `{name}` (expected one of {})", checks::CHECKERS.join(", "))));
    }
    let f = parse_input(input)?;
    let cfg = config(run, f.nvars())?;
    let report: IneqReport = match name {
        "leiom" => {
            let a: Option<Rational> = match a {
                Some(t) => Some(parse_rational(&t).ok_or_else(|| input_error(format!("bad coefficient a = `{t}`")))?),
                None => None,
            };
            checks::check_leiom(&f, &cfg, m, a)
        }
        "newmpr" => {
            let comps = component.iter().map(|c| parse_component(c, &f)).collect::<Result<Vec<_>, _>>()?;
            checks::check_newmpr_and_easybound(&f, &cfg, &comps)
        }
        _ => checks::run_check(name, &f, &cfg)?,
    };
    let doc = Report::from_check(&f, cfg.seed(), &report);
    emit(&doc, &report.to_string(), run.json, run.out.as_ref())?;
    Ok(report.status.exit_code() as u8)
}

#[allow(clippy::too_many_arguments)]
fn search(
    family: &PathBuf,
    default_vars: Option<&str>,
    trials: Option<usize>,
    frame_trials: u32,
    seed: u64,
    bound: i64,
    arith: Option<Arithmetic>,
    json_out: bool,
    out: Option<PathBuf>,
) -> Result<u8, Fail> {
    let text = std::fs::read_to_string(family).map_err(|e| input_error(format!("cannot read {}: {e}", family.display())))?;
    let specs = checks::parse_family(&text).map_err(|e| input_error(e.to_string()))?;
    let names: Vec<&str> = default_vars.unwrap_or("").split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if names.is_empty() && specs.iter().any(|s| s.vars.is_none()) {
        return Err(input_error("--vars is required for templates without their own \"vars\""));
    }
    if frame_trials == 0 || bound < 1 {
        return Err(input_error("--frame-trials and --bound must be positive"));
    }
    let genericity = Genericity::new(seed).trials(frame_trials).bound(bound).arithmetic(arith.unwrap_or(Arithmetic::Modular));
    let cfg = CheckConfig { frame: None, genericity };
    let reports = checks::search_dagger(&specs, &vars(&names), trials, &cfg);

    let mut lines = String::new();
    let mut table = String::new();
    let mut found = 0usize;
    writeln!(table, "{:>6}  {:<14} {:>10} {:>10} {:>10}  f", "member", "status", "lhs", "rhs", "margin").unwrap();
    for r in &reports {
        let f = r.context.get("f").and_then(|v| v.as_str()).unwrap_or("?");
        let input = r
            .context
            .get("vars")
            .and_then(|v| serde_json::from_value::<Vec<String>>(v.clone()).ok())
            .and_then(|v| parse(f, &vars(&v)).ok());
        let doc = match &input {
            Some(p) => Report::from_check(p, seed, r),
            None => {
                let placeholder = Polynomial::zero(vars(&["_"]));
                let mut d = Report::from_check(&placeholder, seed, r);
                d.input.f = r.context.get("template").and_then(|v| v.as_str()).unwrap_or("").to_string();
                d.input.vars = Vec::new();
                d
            }
        };
        lines.push_str(&doc.to_json());
        lines.push('\n');
        if r.status == Status::Counterexample {
            found += 1;
        }
        let member = r.context.get("member").and_then(|v| v.as_u64()).unwrap_or(0);
        let (lhs, rhs, margin) = match r.headline() {
            Some(c) if r.status != Status::Skipped => {
                (c.lhs.to_string(), c.rhs.to_string(), (&c.lhs - &c.rhs).to_string())
            }
            _ => ("-".into(), "-".into(), "-".into()),
        };
        writeln!(table, "{member:>6}  {:<14} {lhs:>10} {rhs:>10} {margin:>10}  {f}", r.status.to_string()).unwrap();
    }
    let evaluated = reports.iter().filter(|r| r.status != Status::Skipped).count();
    writeln!(table, "{} members, {evaluated} evaluated, {found} counterexamples", reports.len()).unwrap();
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    if json_out {
        lock.write_all(lines.as_bytes()).ok();
    } else {
        lock.write_all(table.as_bytes()).ok();
    }
    if let Some(path) = out {
        std::fs::write(&path, &lines).map_err(|e| input_error(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(if found > 0 { 3 } else { 0 })
}
