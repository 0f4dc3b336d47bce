//! JSON documents written by the command-line tool.
//!
//! The stable keys are `input`, `frame`, `le`, `sectional`, `checks` and
//! `version`; `command`, `status`, `values`, `context` and `note` carry
//! the rest. Rationals are `"p/q"` strings (or `"p"` for integers) and
//! maps are ordered, so identical runs give byte-identical output. The
//! schema is published as `schema/report.schema.json` in the repository.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::checks::{Comparison, IneqReport, Status};
use crate::cycles::LeRecord;
use crate::field::rational_string;
use crate::poly::{Frame, Polynomial};

/// Version string stamped into every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// The published JSON schema of [`Report`].
pub const SCHEMA: &str = include_str!("../../../schema/report.schema.json");

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputJson {
    pub f: String,
    pub vars: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrameJson {
    pub matrix: Vec<Vec<String>>,
    pub seed: u64,
}

impl FrameJson {
    /// The frame's matrix, with the frame's own seed or else `seed`.
    pub fn new(frame: &Frame, seed: u64) -> Self {
        let matrix = frame.matrix().iter().map(|r| r.iter().map(rational_string).collect()).collect();
        FrameJson { matrix, seed: frame.seed().unwrap_or(seed) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeJson {
    pub s: usize,
    pub lambda: Vec<Option<u64>>,
    pub gamma: Vec<Option<u64>>,
    pub defined: Vec<bool>,
}

impl From<&LeRecord> for LeJson {
    fn from(r: &LeRecord) -> Self {
        LeJson { s: r.s, lambda: r.lambda.clone(), gamma: r.gamma.clone(), defined: r.defined() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub input: InputJson,
    pub frame: FrameJson,
    pub le: Option<LeJson>,
    pub sectional: Vec<Option<u64>>,
    pub checks: Vec<Comparison>,
    pub status: Option<Status>,
    pub values: BTreeMap<String, Value>,
    pub context: Map<String, Value>,
    pub note: Option<String>,
    pub version: String,
}

impl Report {
    /// An empty report for `f`, in the identity frame.
    pub fn new(command: &str, f: &Polynomial, seed: u64) -> Self {
        Report {
            command: command.to_string(),
            input: InputJson { f: f.to_string(), vars: f.vars().iter().cloned().collect() },
            frame: FrameJson::new(&Frame::identity(f.nvars()), seed),
            le: None,
            sectional: Vec::new(),
            checks: Vec::new(),
            status: None,
            values: BTreeMap::new(),
            context: Map::new(),
            note: None,
            version: VERSION.to_string(),
        }
    }

    pub fn with_le(mut self, rec: &LeRecord, seed: u64) -> Self {
        self.frame = FrameJson::new(&rec.frame, seed);
        self.le = Some(rec.into());
        self
    }

    /// Wraps a checker report; Lê data and the frame are read back from its
    /// context when present.
    pub fn from_check(f: &Polynomial, seed: u64, r: &IneqReport) -> Self {
        let mut out = Report::new(&format!("check {}", r.name), f, seed);
        let ctx = &r.context;
        if let Some(Value::Object(fr)) = ctx.get("frame") {
            if let Some(Value::Array(rows)) = fr.get("matrix") {
                out.frame.matrix = rows
                    .iter()
                    .map(|row| row.as_array().map(|c| c.iter().filter_map(|x| x.as_str().map(String::from)).collect()).unwrap_or_default())
                    .collect();
            }
            if let Some(s) = fr.get("seed").and_then(Value::as_u64) {
                out.frame.seed = s;
            }
        }
        if let (Some(s), Some(l), Some(g)) = (ctx.get("s").and_then(Value::as_u64), ctx.get("lambda"), ctx.get("gamma")) {
            let lambda: Vec<Option<u64>> = serde_json::from_value(l.clone()).unwrap_or_default();
            let gamma: Vec<Option<u64>> = serde_json::from_value(g.clone()).unwrap_or_default();
            let defined = lambda.iter().map(Option::is_some).collect();
            out.le = Some(LeJson { s: s as usize, lambda, gamma, defined });
        }
        if let Some(v) = ctx.get("sectional") {
            out.sectional = serde_json::from_value(v.clone()).unwrap_or_default();
        }
        out.checks = r.checks.clone();
        out.status = Some(r.status);
        out.context = r.context.clone();
        out.note = r.note.clone();
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
