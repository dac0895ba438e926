//! Command-line front end. [`run`] parses arguments, calls the library and
//! formats the results; exit codes are 0 on success, 1 on domain errors and
//! 2 on usage errors.

pub mod table;

use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::biquandle::{abq_matrix, generalized_alexander, kishino_invariant, quaternionic_matrix};
use crate::bracket::{bracket_with_limit, construct_virt, jones_from_f, normalize, MAX_CROSSINGS};
use crate::diagram::{parse_gauss, parse_pd, Diagram, DiagramError};
use crate::moves::{random_walk, simplify_report};
use crate::ring::{bareiss_det, study_det};
use crate::tangle::{generate_flipped_family, generate_unit_jones_family};
use crate::temperley_lieb::{canonical_factorization, enumerate, TLElement};
use crate::vassiliev::{evaluate_formula, v3, ChordConfig};

use table::{tabulate, write_records, Invariant, TableFormat, TableOptions};

/// Parses a Gauss code, or a PD code when the text contains `[`.
pub fn parse_code(text: &str) -> Result<Diagram, DiagramError> {
    if text.contains('[') {
        parse_pd(text)
    } else {
        parse_gauss(text)
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

type CliResult = Result<(), CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Jsonl,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "vknot", version, about = "Exact invariants of classical and virtual knots")]
struct Cli {
    /// Output format (text, json, jsonl or csv; support depends on the command).
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Random seed for commands that use one.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Overrides the crossing-count guard of state sums and determinants.
    #[arg(long, global = true)]
    max_crossings: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validates a Gauss or PD code and prints its canonical Gauss code.
    Parse {
        /// Diagram code, or `-` for stdin.
        code: String,
    },
    /// Computes one invariant of a diagram.
    Invariant {
        which: InvariantKind,
        /// Diagram code, or `-` for stdin.
        code: String,
        /// For v3: a file of chord configurations (one per line) to evaluate instead.
        #[arg(long)]
        configs: Option<PathBuf>,
    },
    /// Reidemeister move engine.
    Moves {
        #[command(subcommand)]
        op: MovesOp,
    },
    /// Temperley-Lieb monoid.
    Tl {
        #[command(subcommand)]
        op: TlOp,
    },
    /// Unit-Jones satellite families.
    Thistle {
        #[command(subcommand)]
        op: ThistleOp,
    },
    /// Virtualization.
    Virt {
        #[command(subcommand)]
        op: VirtOp,
    },
    /// Tabulates invariants of newline-delimited codes.
    Table {
        /// Input file, or `-` for stdin.
        input: String,
        /// Comma-separated invariants (writhe, bracket, f, jones, v3, gpoly, quaternionic).
        #[arg(long, value_delimiter = ',')]
        invariants: Option<Vec<String>>,
        /// Adds per-row wall-clock milliseconds.
        #[arg(long)]
        timings: bool,
        /// Writes to a file instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InvariantKind {
    Bracket,
    F,
    Jones,
    V3,
    Gpoly,
    Quaternionic,
}

#[derive(Debug, Subcommand)]
enum MovesOp {
    /// Applies a seeded random walk of moves.
    Shuffle {
        code: String,
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
    /// Greedily removes crossings.
    Simplify {
        code: String,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
    },
}

#[derive(Debug, Subcommand)]
enum TlOp {
    /// Multiplies two elements given as pairings like `1-2,1'-2'`.
    Mult { a: String, b: String },
    /// Canonical word of an element.
    Factor { element: String },
    /// Lists all elements on `n` strands.
    Enum { n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyOut {
    Jsonl,
    Text,
}

#[derive(Debug, Subcommand)]
enum ThistleOp {
    /// Generates the first `k` family members.
    Generate {
        #[arg(short)]
        k: usize,
        #[arg(long, default_value = "jsonl")]
        out: FamilyOut,
        /// Starts from the seed with its crossing switched.
        #[arg(long)]
        flipped: bool,
    },
}

#[derive(Debug, Subcommand)]
enum VirtOp {
    /// Virtualizes a subset of crossings so that the result has the same f.
    Construct { code: String },
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    match dispatch(cli, stdin, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn read_arg(arg: &str, stdin: &mut dyn BufRead) -> Result<String, CliError> {
    if arg == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        Ok(s.trim().to_string())
    } else {
        Ok(arg.to_string())
    }
}

fn diagram_arg(arg: &str, stdin: &mut dyn BufRead) -> Result<(String, Diagram), CliError> {
    let text = read_arg(arg, stdin)?;
    let d = parse_code(&text).map_err(domain)?;
    Ok((text, d))
}

fn pick(format: Option<Format>, allowed: &[Format]) -> Result<Format, CliError> {
    match format {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => Err(CliError::Usage(format!("format {f:?} is not supported by this command").to_lowercase())),
    }
}

fn json_line(out: &mut dyn Write, v: &serde_json::Value) -> CliResult {
    serde_json::to_writer(&mut *out, v).map_err(domain)?;
    writeln!(out)?;
    Ok(())
}

fn guard(d: &Diagram, limit: usize) -> CliResult {
    if d.num_crossings() > limit {
        return Err(CliError::Domain(format!("{} crossings exceeds the limit of {limit}", d.num_crossings())));
    }
    Ok(())
}

fn dispatch(cli: Cli, stdin: &mut dyn BufRead, out: &mut dyn Write) -> CliResult {
    const TJ: &[Format] = &[Format::Text, Format::Json];
    match cli.command {
        Command::Parse { code } => {
            let fmt = pick(cli.format, TJ)?;
            let (input, d) = diagram_arg(&code, stdin)?;
            match fmt {
                Format::Json => json_line(
                    out,
                    &json!({
                        "input": input,
                        "gauss_code": d.to_gauss(),
                        "crossings": d.num_crossings(),
                        "components": d.num_components(),
                        "writhe": d.writhe(),
                        "classical": d.is_planar(),
                    }),
                )?,
                _ => writeln!(out, "{}", d.to_gauss())?,
            }
        }
        Command::Invariant { which, code, configs } => {
            let fmt = pick(cli.format, TJ)?;
            let (input, d) = diagram_arg(&code, stdin)?;
            invariant(which, &input, &d, configs, cli.max_crossings, fmt, out)?;
        }
        Command::Moves { op } => {
            let fmt = pick(cli.format, TJ)?;
            let (input, d, result) = match op {
                MovesOp::Shuffle { code, steps } => {
                    let (input, d) = diagram_arg(&code, stdin)?;
                    let w = random_walk(&d, steps, cli.seed);
                    (input, d, w)
                }
                MovesOp::Simplify { code, budget } => {
                    let (input, d) = diagram_arg(&code, stdin)?;
                    let r = simplify_report(&d, budget);
                    (input, d, r.output)
                }
            };
            match fmt {
                Format::Json => json_line(
                    out,
                    &json!({
                        "input": input,
                        "input_crossings": d.num_crossings(),
                        "gauss_code": result.to_gauss(),
                        "crossings": result.num_crossings(),
                    }),
                )?,
                _ => writeln!(out, "{}", result.to_gauss())?,
            }
        }
        Command::Tl { op } => tl(op, pick(cli.format, TJ)?, out)?,
        Command::Thistle { op: ThistleOp::Generate { k, out: kind, flipped } } => {
            if cli.format.is_some() {
                return Err(CliError::Usage("use --out to choose the family output format".into()));
            }
            let family = if flipped { generate_flipped_family(k) } else { generate_unit_jones_family(k) }
                .map_err(domain)?;
            for m in &family {
                let r = m.record();
                match kind {
                    FamilyOut::Jsonl => json_line(out, &serde_json::to_value(&r).map_err(domain)?)?,
                    FamilyOut::Text => writeln!(out, "{} {} {} {}", r.index, r.crossings, r.f, r.gauss_code)?,
                }
            }
        }
        Command::Virt { op: VirtOp::Construct { code } } => {
            let fmt = pick(cli.format, TJ)?;
            let (input, d) = diagram_arg(&code, stdin)?;
            let v = construct_virt(&d).map_err(domain)?;
            match fmt {
                Format::Json => json_line(
                    out,
                    &json!({"input": input, "subset": v.subset, "gauss_code": v.diagram.to_gauss()}),
                )?,
                _ => writeln!(out, "{}", v.diagram.to_gauss())?,
            }
        }
        Command::Table { input, invariants, timings, output } => {
            let fmt = match pick(cli.format, &[Format::Jsonl, Format::Csv])? {
                Format::Csv => TableFormat::Csv,
                _ => TableFormat::Jsonl,
            };
            let mut opts = TableOptions { max_crossings: cli.max_crossings, timings, ..TableOptions::default() };
            if let Some(list) = invariants {
                let mut invs = Vec::new();
                for name in list.iter().filter(|s| !s.trim().is_empty()) {
                    let inv: Invariant = name.parse().map_err(CliError::Usage)?;
                    if !invs.contains(&inv) {
                        invs.push(inv);
                    }
                }
                opts.invariants = invs;
            }
            let text = if input == "-" {
                let mut s = String::new();
                stdin.read_to_string(&mut s)?;
                s
            } else {
                std::fs::read_to_string(&input).map_err(|e| CliError::Domain(format!("cannot read {input}: {e}")))?
            };
            let records = tabulate(&text, &opts);
            match output {
                Some(path) => {
                    let mut file = std::io::BufWriter::new(std::fs::File::create(&path)?);
                    write_records(&records, fmt, &mut file)?;
                    file.flush()?;
                }
                None => write_records(&records, fmt, out)?,
            }
        }
    }
    Ok(())
}

fn invariant(
    which: InvariantKind,
    input: &str,
    d: &Diagram,
    configs: Option<PathBuf>,
    max: Option<usize>,
    fmt: Format,
    out: &mut dyn Write,
) -> CliResult {
    let json = fmt == Format::Json;
    match which {
        InvariantKind::Bracket | InvariantKind::F | InvariantKind::Jones => {
            let limit = max.unwrap_or(MAX_CROSSINGS);
            let b = bracket_with_limit(d, limit).map_err(domain)?;
            let f = normalize(&b, d.writhe());
            let jo = jones_from_f(&f);
            if json {
                json_line(
                    out,
                    &json!({
                        "input": input,
                        "writhe": d.writhe(),
                        "bracket": b.render(),
                        "f": f.render(),
                        "jones": jo.render(),
                    }),
                )?;
            } else {
                let p = match which {
                    InvariantKind::Bracket => b,
                    InvariantKind::F => f,
                    _ => jo,
                };
                writeln!(out, "{}", p.render())?;
            }
        }
        InvariantKind::V3 => {
            let value = match configs {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| CliError::Domain(format!("cannot read {}: {e}", path.display())))?;
                    let cfgs = text
                        .lines()
                        .map(str::trim)
                        .filter(|l| !l.is_empty() && !l.starts_with('#'))
                        .map(|l| l.parse::<ChordConfig>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(domain)?;
                    evaluate_formula(&cfgs, d)
                }
                None => v3(d),
            }
            .map_err(domain)?;
            if json {
                json_line(out, &json!({"input": input, "v3": value.to_string()}))?;
            } else {
                writeln!(out, "{value}")?;
            }
        }
        InvariantKind::Gpoly => {
            guard(d, max.unwrap_or(Invariant::Gpoly.default_limit()))?;
            let g = generalized_alexander(d).map_err(domain)?;
            if json {
                let raw = bareiss_det(&abq_matrix(d).map_err(domain)?).map_err(domain)?;
                json_line(out, &json!({"input": input, "determinant": raw.render(), "G": g.render()}))?;
            } else {
                writeln!(out, "{}", g.render())?;
            }
        }
        InvariantKind::Quaternionic => {
            guard(d, max.unwrap_or(Invariant::Quaternionic.default_limit()))?;
            let r = kishino_invariant(d).map_err(domain)?;
            if json {
                let raw = study_det(&quaternionic_matrix(d).map_err(domain)?).map_err(domain)?;
                json_line(
                    out,
                    &json!({
                        "input": input,
                        "raw_determinant": raw.render(),
                        "determinant": r.determinant.render(),
                        "codim1_gcd": r.codim1_gcd.render(),
                    }),
                )?;
            } else {
                writeln!(out, "determinant: {}", r.determinant.render())?;
                writeln!(out, "codim1_gcd: {}", r.codim1_gcd.render())?;
            }
        }
    }
    Ok(())
}

fn word_text(word: &[usize]) -> String {
    if word.is_empty() {
        "1".to_string()
    } else {
        word.iter().map(|k| format!("U{k}")).collect::<Vec<_>>().join(" ")
    }
}

fn tl(op: TlOp, fmt: Format, out: &mut dyn Write) -> CliResult {
    let json = fmt == Format::Json;
    match op {
        TlOp::Mult { a, b } => {
            let x: TLElement = a.parse().map_err(domain)?;
            let y: TLElement = b.parse().map_err(domain)?;
            let (p, loops) = x.mul(&y).map_err(domain)?;
            if json {
                json_line(out, &json!({"element": p.to_string(), "loops": loops}))?;
            } else {
                writeln!(out, "{p} loops={loops}")?;
            }
        }
        TlOp::Factor { element } => {
            let x: TLElement = element.parse().map_err(domain)?;
            let word = canonical_factorization(&x);
            if json {
                json_line(out, &json!({"element": x.to_string(), "word": word}))?;
            } else {
                writeln!(out, "{}", word_text(&word))?;
            }
        }
        TlOp::Enum { n } => {
            for x in enumerate(n) {
                let word = canonical_factorization(&x);
                if json {
                    json_line(
                        out,
                        &json!({"element": x.to_string(), "parentheses": x.to_parentheses(), "word": word}),
                    )?;
                } else {
                    writeln!(out, "{}\t{}\t{}", x.to_parentheses(), x, word_text(&word))?;
                }
            }
        }
    }
    Ok(())
}
