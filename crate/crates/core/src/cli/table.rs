//! Batch tabulation of invariants over newline-delimited diagram codes.
//!
//! CSV columns, in order: `line, input, status, writhe, bracket, f, jones,
//! v3, G, quaternionic, error`, followed by `millis` when timings are on.
//! Unrequested invariants leave their cell empty; `status` is `ok` or
//! `error`, and `error` holds the row diagnostic or `name: message` entries
//! for individual invariants that failed.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::parse_code;
use crate::biquandle::{generalized_alexander, kishino_invariant};
use crate::bracket::{bracket_with_limit, jones_from_f, normalize, MAX_CROSSINGS};
use crate::diagram::Diagram;
use crate::vassiliev::v3;

/// An invariant that can be tabulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Invariant {
    Writhe,
    Bracket,
    F,
    Jones,
    V3,
    Gpoly,
    Quaternionic,
}

impl Invariant {
    pub const ALL: [Invariant; 7] = [
        Invariant::Writhe,
        Invariant::Bracket,
        Invariant::F,
        Invariant::Jones,
        Invariant::V3,
        Invariant::Gpoly,
        Invariant::Quaternionic,
    ];

    /// Invariants tabulated when none are requested.
    pub const DEFAULT: [Invariant; 6] =
        [Invariant::Writhe, Invariant::Bracket, Invariant::F, Invariant::Jones, Invariant::V3, Invariant::Gpoly];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::Writhe => "writhe",
            Invariant::Bracket => "bracket",
            Invariant::F => "f",
            Invariant::Jones => "jones",
            Invariant::V3 => "v3",
            Invariant::Gpoly => "gpoly",
            Invariant::Quaternionic => "quaternionic",
        }
    }

    /// Default crossing-count guard.
    pub fn default_limit(self) -> usize {
        match self {
            Invariant::Writhe => usize::MAX,
            Invariant::Bracket | Invariant::F | Invariant::Jones => MAX_CROSSINGS,
            Invariant::V3 => 200,
            Invariant::Gpoly => 40,
            Invariant::Quaternionic => 16,
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Invariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Invariant::ALL
            .into_iter()
            .find(|i| i.name() == s || (s == "G" && *i == Invariant::Gpoly))
            .ok_or_else(|| format!("unknown invariant `{s}`"))
    }
}

/// Output format of a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Jsonl,
}

/// Settings of a tabulation run.
#[derive(Debug, Clone)]
pub struct TableOptions {
    /// Requested invariants; duplicates are ignored.
    pub invariants: Vec<Invariant>,
    /// Overrides every per-invariant crossing guard.
    pub max_crossings: Option<usize>,
    /// Records wall-clock milliseconds per row (makes output nondeterministic).
    pub timings: bool,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions { invariants: Invariant::DEFAULT.to_vec(), max_crossings: None, timings: false }
    }
}

impl TableOptions {
    fn limit(&self, inv: Invariant) -> usize {
        self.max_crossings.unwrap_or_else(|| inv.default_limit())
    }

    fn wants(&self, inv: Invariant) -> bool {
        self.invariants.contains(&inv)
    }
}

/// One row of a table. Requested fields are present (null on failure);
/// unrequested ones are omitted.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantRecord {
    pub line: usize,
    pub input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub writhe: Option<Option<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket: Option<Option<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<Option<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jones: Option<Option<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v3: Option<Option<String>>,
    #[serde(rename = "G", skip_serializing_if = "Option::is_none")]
    pub g: Option<Option<String>>,
    /// Gcd of the codimension-one quaternionic minors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quaternionic: Option<Option<String>>,
    /// Row-level failure (the code did not parse).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Failures of individual invariants, keyed by invariant name.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub errors: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

impl InvariantRecord {
    fn empty(line: usize, input: &str) -> Self {
        InvariantRecord {
            line,
            input: input.to_string(),
            writhe: None,
            bracket: None,
            f: None,
            jones: None,
            v3: None,
            g: None,
            quaternionic: None,
            error: None,
            errors: BTreeMap::new(),
            millis: None,
        }
    }

    pub fn is_error(&self) -> bool {
        self.error.is_some()
    }
}

fn guarded<T, E: fmt::Display>(
    d: &Diagram,
    inv: Invariant,
    opts: &TableOptions,
    errors: &mut BTreeMap<String, String>,
    f: impl FnOnce() -> Result<T, E>,
) -> Option<Option<T>> {
    if !opts.wants(inv) {
        return None;
    }
    let max = opts.limit(inv);
    if d.num_crossings() > max {
        errors.insert(inv.name().into(), format!("{} crossings exceeds the limit of {max}", d.num_crossings()));
        return Some(None);
    }
    match f() {
        Ok(v) => Some(Some(v)),
        Err(e) => {
            errors.insert(inv.name().into(), e.to_string());
            Some(None)
        }
    }
}

/// Computes the requested invariants of one code.
pub fn compute_record(line: usize, input: &str, opts: &TableOptions) -> InvariantRecord {
    let start = Instant::now();
    let mut rec = InvariantRecord::empty(line, input);
    match parse_code(input) {
        Err(e) => rec.error = Some(e.to_string()),
        Ok(d) => fill(&mut rec, &d, opts),
    }
    if opts.timings {
        rec.millis = Some(start.elapsed().as_millis() as u64);
    }
    rec
}

fn fill(rec: &mut InvariantRecord, d: &Diagram, opts: &TableOptions) {
    let mut errors = BTreeMap::new();
    if opts.wants(Invariant::Writhe) {
        rec.writhe = Some(Some(d.writhe()));
    }
    let need_bracket = [Invariant::Bracket, Invariant::F, Invariant::Jones].into_iter().any(|i| opts.wants(i));
    if need_bracket {
        let limit = [Invariant::Bracket, Invariant::F, Invariant::Jones]
            .into_iter()
            .filter(|&i| opts.wants(i))
            .map(|i| opts.limit(i))
            .max()
            .unwrap_or(MAX_CROSSINGS);
        let b = bracket_with_limit(d, limit);
        let f = b.as_ref().map(|b| normalize(b, d.writhe()));
        let jo = f.as_ref().map(jones_from_f);
        rec.bracket = guarded(d, Invariant::Bracket, opts, &mut errors, || b.as_ref().map(|p| p.render()).map_err(|e| e.to_string()));
        rec.f = guarded(d, Invariant::F, opts, &mut errors, || f.as_ref().map(|p| p.render()).map_err(|e| e.to_string()));
        rec.jones = guarded(d, Invariant::Jones, opts, &mut errors, || jo.as_ref().map(|p| p.render()).map_err(|e| e.to_string()));
    }
    rec.v3 = guarded(d, Invariant::V3, opts, &mut errors, || v3(d).map(|r| r.to_string()));
    rec.g = guarded(d, Invariant::Gpoly, opts, &mut errors, || generalized_alexander(d).map(|p| p.render()));
    rec.quaternionic =
        guarded(d, Invariant::Quaternionic, opts, &mut errors, || kishino_invariant(d).map(|r| r.codim1_gcd.render()));
    rec.errors = errors;
}

/// Tabulates every non-blank line that does not start with `#`. Rows are
/// computed in parallel and returned in input order.
pub fn tabulate(text: &str, opts: &TableOptions) -> Vec<InvariantRecord> {
    let rows: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    rows.par_iter().map(|&(line, code)| compute_record(line, code, opts)).collect()
}

fn opt_cell<T: ToString>(v: &Option<Option<T>>) -> String {
    v.as_ref().and_then(|x| x.as_ref()).map(|x| x.to_string()).unwrap_or_default()
}

/// Writes records in the chosen format. No records produce no output.
pub fn write_records(records: &[InvariantRecord], format: TableFormat, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        TableFormat::Jsonl => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                out.write_all(b"\n")?;
            }
        }
        TableFormat::Csv => {
            if records.is_empty() {
                return Ok(());
            }
            let timings = records.iter().any(|r| r.millis.is_some());
            let mut w = csv::Writer::from_writer(out);
            let mut header = vec![
                "line",
                "input",
                "status",
                "writhe",
                "bracket",
                "f",
                "jones",
                "v3",
                "G",
                "quaternionic",
                "error",
            ];
            if timings {
                header.push("millis");
            }
            w.write_record(&header)?;
            for r in records {
                let error = match &r.error {
                    Some(e) => e.clone(),
                    None => r.errors.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join("; "),
                };
                let mut row = vec![
                    r.line.to_string(),
                    r.input.clone(),
                    if r.is_error() { "error" } else { "ok" }.to_string(),
                    opt_cell(&r.writhe),
                    opt_cell(&r.bracket),
                    opt_cell(&r.f),
                    opt_cell(&r.jones),
                    opt_cell(&r.v3),
                    opt_cell(&r.g),
                    opt_cell(&r.quaternionic),
                    error,
                ];
                if timings {
                    row.push(r.millis.map(|m| m.to_string()).unwrap_or_default());
                }
                w.write_record(&row)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
