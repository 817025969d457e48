//! Command-line front end: each subcommand prints one JSON document (or CSV
//! rows) and maps errors to exit codes 1 (domain) and 2 (usage).

use std::ffi::OsString;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use lfree::bounds::{
    best_bound, fmax_lower_exponent, fmax_upper_rate, hybrid_an, interval_in, lower_rate, mu_formula,
    mu_formula_multivar, residue_tn, MuBound,
};
use lfree::link::gm1_matching;
use lfree::oracle::{brute_counts, brute_mu, verify_suite, CountKind};
use lfree::{is_free, parse_equation, CanonicalTriple, Error, LinearEquation, RateExpr};
use serde_json::{json, Map, Value};

mod scan;

pub use scan::{scan_cells, scan_grid, write_csv, ScanRow, SCAN_COLUMNS};

#[derive(Debug, Parser)]
#[command(name = "lfree", version, about = "Solution-free sets of integers")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Add wall-clock time to the output.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Brute,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Free,
    Maximal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SetName {
    #[value(name = "In")]
    In,
    #[value(name = "Tn")]
    Tn,
    #[value(name = "An")]
    An,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Largest L-free subset of [n]: closed form, exhaustive search, or both.
    Mu {
        #[arg(long)]
        eq: String,
        #[arg(long = "n")]
        n: u32,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Number of L-free or maximal L-free subsets of [n].
    Count {
        #[arg(long)]
        eq: String,
        #[arg(long = "n")]
        n: u32,
        #[arg(long, value_enum)]
        what: What,
    },
    /// One of the candidate extremal sets.
    Extremal {
        #[arg(long)]
        eq: String,
        #[arg(long = "n")]
        n: u32,
        #[arg(long, value_enum)]
        set: SetName,
    },
    /// The explicit matching of the small-element graph for M.
    Matching {
        #[arg(long)]
        eq: String,
        #[arg(long = "M")]
        m: i64,
    },
    /// Exponent-rate bounds on the number of maximal L-free sets.
    Bounds {
        #[arg(long)]
        eq: String,
        #[arg(long = "n")]
        n: Option<u32>,
    },
    /// Runs a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Scans a grid of triples and writes a CSV table.
    Scan {
        #[arg(long, default_value = "p=1..3,q=1..p,r=1..q,n=5,10,15")]
        grid: String,
        /// Output file; standard output if absent.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

/// Exit code, standard output and standard error of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: i32, msg: impl std::fmt::Display) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. }
            | Error::ZeroCoefficient(_)
            | Error::NoVariables
            | Error::TooFewVariables { .. }
            | Error::Grid(_)
            | Error::UnknownSuite(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

/// What a subcommand produced: the JSON document, an optional table that
/// replaces the flattened document in CSV mode, and the exit code.
struct Produced {
    equation: Option<String>,
    inputs: Value,
    outputs: Value,
    table: Option<String>,
    /// Print the table whatever the format.
    raw: bool,
    code: i32,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let start = Instant::now();
    let name = command_name(&cli.command);
    let produced = match dispatch(&cli.command) {
        Ok(p) => p,
        Err(Failure::Usage(m)) => return Outcome::error(2, m),
        Err(Failure::Domain(m)) => return Outcome::error(1, m),
    };
    let mut doc = Map::new();
    doc.insert("command".into(), json!(name));
    doc.insert("equation".into(), produced.equation.map_or(Value::Null, Value::String));
    doc.insert("inputs".into(), produced.inputs);
    doc.insert("outputs".into(), produced.outputs);
    if cli.timing {
        doc.insert("timing_ms".into(), json!(start.elapsed().as_millis() as u64));
    }
    let doc = Value::Object(doc);
    let format = if produced.raw { Format::Csv } else { cli.format };
    let stdout = match (format, produced.table) {
        (Format::Json, _) => format!("{doc}\n"),
        (Format::Csv, Some(table)) => table,
        (Format::Csv, None) => match flat_csv(&doc) {
            Ok(s) => s,
            Err(Failure::Usage(m)) => return Outcome::error(2, m),
            Err(Failure::Domain(m)) => return Outcome::error(1, m),
        },
    };
    Outcome {
        code: produced.code,
        stdout,
        stderr: String::new(),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Mu { .. } => "mu",
        Command::Count { .. } => "count",
        Command::Extremal { .. } => "extremal",
        Command::Matching { .. } => "matching",
        Command::Bounds { .. } => "bounds",
        Command::Verify { .. } => "verify",
        Command::Scan { .. } => "scan",
    }
}

fn value_name<V: ValueEnum>(v: V) -> String {
    v.to_possible_value().expect("no skipped values").get_name().to_string()
}

fn equation(text: &str) -> Result<LinearEquation, Failure> {
    Ok(parse_equation(text)?)
}

fn done(l: Option<&LinearEquation>, inputs: Value, outputs: Value) -> Result<Produced, Failure> {
    Ok(Produced {
        equation: l.map(|l| l.to_string()),
        inputs,
        outputs,
        table: None,
        raw: false,
        code: 0,
    })
}

fn dispatch(c: &Command) -> Result<Produced, Failure> {
    match c {
        Command::Mu { eq, n, method } => {
            let l = equation(eq)?;
            let inputs = json!({"eq": eq, "n": n, "method": value_name(*method)});
            done(Some(&l), inputs, mu_outputs(&l, *n, *method)?)
        }
        Command::Count { eq, n, what } => {
            let l = equation(eq)?;
            let kind = match what {
                What::Free => CountKind::Free,
                What::Maximal => CountKind::Maximal,
            };
            let count = brute_counts(&l, *n, kind)?;
            let inputs = json!({"eq": eq, "n": n, "what": value_name(*what)});
            done(Some(&l), inputs, json!({"count": count.to_string()}))
        }
        Command::Extremal { eq, n, set } => {
            let l = equation(eq)?;
            let t = CanonicalTriple::from_equation(&l)?;
            let s = match set {
                SetName::In => interval_in(&t, *n),
                SetName::Tn => residue_tn(&t, *n),
                SetName::An => {
                    if (t.p(), t.q(), t.r()) != (3, 2, 2) {
                        return Err(Failure::Domain(format!("A_n is defined for (3,2,2) only, not {t}")));
                    }
                    hybrid_an(*n)
                }
            };
            let inputs = json!({"eq": eq, "n": n, "set": value_name(*set)});
            let outputs = json!({"members": s.members(), "size": s.len(), "free": is_free(&l, &s)});
            done(Some(&l), inputs, outputs)
        }
        Command::Matching { eq, m } => {
            let l = equation(eq)?;
            let t = CanonicalTriple::from_equation(&l)?;
            let matching = gm1_matching(&t, *m)?;
            let pairs: Vec<[u32; 2]> = matching.pairs.iter().map(|&(x, y)| [x, y]).collect();
            let outputs = json!({"size": matching.len(), "pairs": pairs, "loops": matching.loop_count});
            done(Some(&l), json!({"eq": eq, "M": m}), outputs)
        }
        Command::Bounds { eq, n } => {
            let l = equation(eq)?;
            let t = CanonicalTriple::from_equation(&l)?;
            let inputs = json!({"eq": eq, "n": n});
            done(Some(&l), inputs, bounds_outputs(&t, *n)?)
        }
        Command::Verify { suite, grid } => {
            let report = verify_suite(suite, grid.as_deref())?;
            let table = verify_csv(&report)?;
            let code = if report.ok() { 0 } else { 1 };
            let outputs = serde_json::to_value(&report).map_err(|e| Failure::Domain(e.to_string()))?;
            Ok(Produced {
                equation: None,
                inputs: json!({"suite": suite, "grid": report.grid}),
                outputs,
                table: Some(table),
                raw: false,
                code,
            })
        }
        Command::Scan { grid, out } => {
            let rows = scan::scan_grid_spec(grid)?;
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf)?;
            let table = String::from_utf8(buf).expect("csv output is UTF-8");
            let skipped = rows.iter().filter(|r| r.skipped()).count();
            let inputs = json!({"grid": grid, "out": out.as_ref().map(|p| p.display().to_string())});
            let outputs = json!({"rows": rows.len(), "skipped": skipped});
            match out {
                Some(path) => {
                    std::fs::write(path, &table)?;
                    done(None, inputs, outputs)
                }
                None => Ok(Produced {
                    equation: None,
                    inputs,
                    outputs,
                    table: Some(table),
                    raw: true,
                    code: 0,
                }),
            }
        }
    }
}

fn mu_outputs(l: &LinearEquation, n: u32, method: Method) -> Result<Value, Failure> {
    let mut out = Map::new();
    let mut range: Option<(i64, i64)> = None;
    if method != Method::Brute {
        if l.arity() == 3 {
            let t = CanonicalTriple::from_equation(l)?;
            let Some(v) = mu_formula(&t, n)? else {
                return Err(Failure::Domain(format!("no formula case applies to {t}")));
            };
            out.insert("formula".into(), json!(v.value));
            out.insert("case".into(), json!(v.case.to_string()));
            range = Some((v.value, v.value));
        } else {
            let m = mu_formula_multivar(l, n)?;
            let (lo, hi) = match m.bound {
                MuBound::Exact { value } => {
                    out.insert("formula".into(), json!(value));
                    (value, value)
                }
                MuBound::Interval { lo, hi } => {
                    out.insert("formula".into(), json!({"lo": lo, "hi": hi}));
                    (lo, hi)
                }
            };
            out.insert("case".into(), json!(m.case.to_string()));
            out.insert("triple".into(), json!(m.triple.to_string()));
            out.insert("groups".into(), json!(m.groups));
            range = Some((lo, hi));
        }
    }
    if method != Method::Formula {
        let b = brute_mu(l, n, 0)?;
        out.insert("brute".into(), json!(b.value));
        if let Some((lo, hi)) = range {
            let v = b.value as i64;
            out.insert("agree".into(), json!(lo <= v && v <= hi));
        }
    }
    Ok(Value::Object(out))
}

fn rate_times(r: &RateExpr, n: u32) -> RateExpr {
    let n = lfree::rate::rational(n as i64, 1);
    RateExpr::new(r.lin() * &n, r.log3() * &n)
}

fn bounds_outputs(t: &CanonicalTriple, n: Option<u32>) -> Result<Value, Failure> {
    let report = best_bound(t)?;
    let upper = fmax_upper_rate(t)?;
    let lower = lower_rate(t);
    let mut bounds = Map::new();
    for e in &report.applicable {
        bounds.insert(e.name.to_string(), json!(e.rate.to_string()));
    }
    let mut out = Map::new();
    out.insert("C".into(), json!(upper.c.to_string()));
    out.insert("rate".into(), json!(report.best.rate.to_string()));
    out.insert("best".into(), json!(report.best.name.to_string()));
    out.insert("case".into(), json!(report.case_label));
    out.insert("lower_rate".into(), lower.as_ref().map_or(Value::Null, |r| json!(r.to_string())));
    out.insert("bounds".into(), Value::Object(bounds));
    if let Some(n) = n {
        out.insert("upper_exponent".into(), json!(rate_times(&report.best.rate, n).to_string()));
        if let Some(v) = mu_formula(t, n)? {
            out.insert("mu".into(), json!(v.value));
        }
        if t.p() == t.q() {
            out.insert("lower_exponent".into(), json!(fmax_lower_exponent(t.q(), t.r(), n as i64)?));
        }
    }
    Ok(Value::Object(out))
}

fn verify_csv(report: &lfree::oracle::VerifyReport) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["cell", "status", "witness", "note"])?;
    for c in &report.cells {
        let cell: Vec<String> = c.cell.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let status = serde_json::to_value(c.status).map_err(|e| Failure::Domain(e.to_string()))?;
        w.write_record([
            cell.join(","),
            status.as_str().unwrap_or_default().to_string(),
            c.witness.clone().unwrap_or_default(),
            c.note.clone().unwrap_or_default(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| Failure::Domain(e.to_string()))?).expect("UTF-8"))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn flat_csv(doc: &Value) -> Result<String, Failure> {
    let mut rows = Vec::new();
    flatten("", doc, &mut rows);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["key", "value"])?;
    for (k, v) in rows {
        w.write_record([k, v])?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| Failure::Domain(e.to_string()))?).expect("UTF-8"))
}
