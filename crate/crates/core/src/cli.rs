//! Command-line front end.
//!
//! Standard output carries data only; progress and diagnostics go to
//! standard error. Exit codes: 0 for YES / success, 1 for NO / a failed
//! verification, 2 for usage and validation errors.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde_json::{json, Value};

use crate::bounds::{
    family_odd_square_minus4, family_t2m1, theorem2_intervals, Case, ExclusionIntervals,
};
use crate::decision::{decide, sweep, Decision, Route, SweepMode};
use crate::error::Error;
use crate::integer::is_squarefree;
use crate::oracle::{describe, totally_positive_upto, SosTable};
use crate::peters;
use crate::quad::QuadraticField;
use crate::surd::{IntervalQ, Upper};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "quadsos", version, about = "Sums of squares in m-multiples of totally positive quadratic integers")]
pub struct Cli {
    /// Worker threads (defaults to available parallelism).
    #[arg(long, global = true, env = "QSOS_THREADS")]
    pub threads: Option<usize>,
    /// Write data here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Pruned,
    Exhaustive,
}

impl From<Mode> for SweepMode {
    fn from(m: Mode) -> SweepMode {
        match m {
            Mode::Pruned => SweepMode::Pruned,
            Mode::Exhaustive => SweepMode::Exhaustive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// D = t² - 1, t even, multiplier 2m.
    T2m1,
    /// D = (2t+1)² - 4.
    OddSqM4,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether every element of m·O⁺ is a sum of squares in Q(√D).
    Decide {
        #[arg(long)]
        m: BigInt,
        #[arg(long)]
        d: BigInt,
    },
    /// List every squarefree D for which m·O⁺ consists of sums of squares.
    Sweep {
        #[arg(long)]
        m: BigInt,
        #[arg(long, value_enum, default_value = "pruned")]
        mode: Mode,
        #[arg(long)]
        d_max: Option<BigInt>,
        /// Also write the exclusion intervals for m to this file (CSV).
        #[arg(long)]
        emit_bounds: Option<PathBuf>,
    },
    /// Sweeps for a range of m, one row per (m, D).
    Table {
        #[arg(long)]
        m_from: BigInt,
        #[arg(long)]
        m_to: BigInt,
        #[arg(long, value_enum, default_value = "pruned")]
        mode: Mode,
    },
    /// Print the exclusion intervals for √D.
    Bounds {
        #[arg(long)]
        m: BigInt,
    },
    /// Compare the closed-form test with the brute-force search.
    VerifyOracle {
        #[arg(long)]
        d: BigInt,
        #[arg(long, default_value = "200")]
        trace_max: BigInt,
    },
    /// Compare the decision procedure with a closed-form family.
    Family {
        #[arg(long = "type", value_enum)]
        kind: Family,
        #[arg(long)]
        t_max: u64,
        #[arg(long)]
        m_max: u64,
    },
}

/// Outcome of a subcommand before it is written out.
struct Report {
    body: String,
    code: i32,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parse `args` and run; data goes to `out` (or `--out`), diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match execute(&cli, err) {
        Ok(report) => {
            let written = match &cli.out {
                Some(path) => File::create(path).and_then(|f| {
                    let mut w = BufWriter::new(f);
                    w.write_all(report.body.as_bytes())?;
                    w.flush()
                }),
                None => out.write_all(report.body.as_bytes()).and_then(|_| out.flush()),
            };
            match written {
                Ok(()) => report.code,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_USAGE
                }
            }
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn threads(cli: &Cli) -> CliResult<usize> {
    match cli.threads {
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => Ok(n),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn positive_m(m: &BigInt) -> CliResult<()> {
    if !m.is_positive() {
        return Err(Error::NonPositiveM(m.clone()).into());
    }
    Ok(())
}

fn execute(cli: &Cli, err: &mut dyn Write) -> CliResult<Report> {
    match &cli.command {
        Command::Decide { m, d } => cmd_decide(m, d, cli.format.unwrap_or(Format::Text)),
        Command::Sweep {
            m,
            mode,
            d_max,
            emit_bounds,
        } => {
            positive_m(m)?;
            if let Some(path) = emit_bounds {
                std::fs::write(path, bounds_csv(m))?;
            }
            let ds = sweep(m, (*mode).into(), d_max.as_ref(), threads(cli)?)?;
            let rows: Vec<(BigInt, BigInt)> = ds.into_iter().map(|d| (m.clone(), d)).collect();
            Ok(Report {
                body: render_rows(&rows, cli.format.unwrap_or(Format::Csv)),
                code: EXIT_YES,
            })
        }
        Command::Table { m_from, m_to, mode } => {
            positive_m(m_from)?;
            if m_from > m_to {
                return Err(CliError::Usage(format!("empty range: --m-from {m_from} > --m-to {m_to}")));
            }
            let workers = threads(cli)?;
            let mut rows = Vec::new();
            let mut m = m_from.clone();
            while &m <= m_to {
                let ds = sweep(&m, (*mode).into(), None, workers)?;
                let _ = writeln!(err, "m = {m}: {} values", ds.len());
                rows.extend(ds.into_iter().map(|d| (m.clone(), d)));
                m += 1;
            }
            Ok(Report {
                body: render_rows(&rows, cli.format.unwrap_or(Format::Csv)),
                code: EXIT_YES,
            })
        }
        Command::Bounds { m } => {
            positive_m(m)?;
            Ok(Report {
                body: render_bounds(m, cli.format.unwrap_or(Format::Text)),
                code: EXIT_YES,
            })
        }
        Command::VerifyOracle { d, trace_max } => cmd_verify_oracle(d, trace_max, err),
        Command::Family { kind, t_max, m_max } => cmd_family(*kind, *t_max, *m_max, err),
    }
}

fn route_label(route: Route) -> &'static str {
    match route {
        Route::OddMultiplier => "odd-multiplier",
        Route::SufficientBound => "sufficient-bound",
        Route::Enumeration => "enumeration",
    }
}

fn witness_json(dec: &Decision) -> Option<Value> {
    dec.witness.as_ref().map(|w| {
        json!({
            "m": big_json(&dec.m),
            "D": big_json(&dec.d),
            "i": w.i,
            "r": big_json(&w.r),
            "alpha": [big_json(w.value.x()), big_json(w.value.y())],
            "basis": w.value.basis().label(),
        })
    })
}

fn big_json(n: &BigInt) -> Value {
    // arbitrary_precision keeps the digits exact
    serde_json::from_str(&n.to_string()).expect("integer literal")
}

fn cmd_decide(m: &BigInt, d: &BigInt, format: Format) -> CliResult<Report> {
    positive_m(m)?;
    if d < &BigInt::from(2) {
        return Err(Error::DTooSmall(d.clone()).into());
    }
    let dec = decide(m, d)?;
    let code = if dec.answer { EXIT_YES } else { EXIT_NO };
    let body = match format {
        Format::Json => {
            let v = json!({
                "m": big_json(&dec.m),
                "D": big_json(&dec.d),
                "answer": dec.answer,
                "route": route_label(dec.route),
                "indecomposable_count": dec.indecomposable_count.as_ref().map(big_json),
                "witness": witness_json(&dec),
            });
            format!("{v}\n")
        }
        Format::Csv => format!("m,D,answer\n{},{},{}\n", dec.m, dec.d, if dec.answer { "YES" } else { "NO" }),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{}", if dec.answer { "YES" } else { "NO" });
            let _ = writeln!(s, "m = {}, D = {} ({})", dec.m, dec.d, crate::quad::Basis::of(d).label());
            let _ = writeln!(s, "route: {}", route_label(dec.route));
            match &dec.indecomposable_count {
                Some(c) => {
                    let _ = writeln!(s, "indecomposables: {c}");
                }
                None => {
                    let _ = writeln!(s, "indecomposables: not computed");
                }
            }
            if let Some(w) = &dec.witness {
                let _ = writeln!(
                    s,
                    "witness: alpha_({}, {}) = {} with {} * alpha not a sum of squares",
                    w.i,
                    w.r,
                    w.value,
                    dec.m
                );
            }
            s
        }
    };
    Ok(Report { body, code })
}

fn render_rows(rows: &[(BigInt, BigInt)], format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Csv => {
            s.push_str("m,D\n");
            for (m, d) in rows {
                let _ = writeln!(s, "{m},{d}");
            }
        }
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|(m, d)| json!({ "m": big_json(m), "D": big_json(d) }))
                .collect();
            let _ = writeln!(s, "{}", Value::Array(v));
        }
        Format::Text => {
            let mut i = 0;
            while i < rows.len() {
                let m = &rows[i].0;
                let ds: Vec<String> = rows[i..]
                    .iter()
                    .take_while(|(mm, _)| mm == m)
                    .map(|(_, d)| d.to_string())
                    .collect();
                i += ds.len();
                let _ = writeln!(s, "{m}: {}", ds.join(", "));
            }
        }
    }
    s
}

fn cases_for(m: &BigInt) -> [Case; 2] {
    if m.is_even() {
        [Case::Sqrt, Case::HalfEvenM]
    } else {
        [Case::Sqrt, Case::HalfOddM]
    }
}

fn case_key(case: Case) -> &'static str {
    match case {
        Case::Sqrt => "sqrt",
        Case::HalfEvenM => "half-even-m",
        Case::HalfOddM => "half-odd-m",
    }
}

fn labelled_intervals(ex: &ExclusionIntervals) -> Vec<(Option<u64>, &IntervalQ)> {
    std::iter::once((None, &ex.head))
        .chain(ex.grouped.iter().map(|(i, iv)| (Some(*i), iv)))
        .collect()
}

fn hi_parts(iv: &IntervalQ) -> (String, Option<f64>) {
    match &iv.hi {
        Upper::Infinity => ("inf".to_string(), None),
        Upper::Finite(h) => (h.to_string(), Some(h.approx())),
    }
}

/// `m,case,i,lo,hi,lo_approx,hi_approx`, endpoints for `√D`.
fn bounds_csv(m: &BigInt) -> String {
    let mut s = String::from("m,case,i,lo,hi,lo_approx,hi_approx\n");
    for case in cases_for(m) {
        let ex = theorem2_intervals(m, case);
        for (i, iv) in labelled_intervals(&ex) {
            let (hi, hi_approx) = hi_parts(iv);
            let _ = writeln!(
                s,
                "{m},{},{},{},{},{:.6},{}",
                case_key(case),
                i.map_or(String::new(), |i| i.to_string()),
                iv.lo,
                hi,
                iv.lo.approx(),
                hi_approx.map_or("inf".to_string(), |h| format!("{h:.6}")),
            );
        }
    }
    s
}

fn render_bounds(m: &BigInt, format: Format) -> String {
    match format {
        Format::Csv => bounds_csv(m),
        Format::Json => {
            let cases: Vec<Value> = cases_for(m)
                .into_iter()
                .map(|case| {
                    let ex = theorem2_intervals(m, case);
                    let intervals: Vec<Value> = labelled_intervals(&ex)
                        .into_iter()
                        .map(|(i, iv)| {
                            let (hi, hi_approx) = hi_parts(iv);
                            json!({
                                "i": i,
                                "lo": iv.lo.to_string(),
                                "hi": hi,
                                "lo_approx": iv.lo.approx(),
                                "hi_approx": hi_approx,
                            })
                        })
                        .collect();
                    json!({ "case": case_key(case), "label": case.label(), "intervals": intervals })
                })
                .collect();
            format!("{}\n", json!({ "m": big_json(m), "variable": "sqrt(D)", "cases": cases }))
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "exclusion intervals for sqrt(D), m = {m}");
            for case in cases_for(m) {
                let ex = theorem2_intervals(m, case);
                let _ = writeln!(s, "{}:", case.label());
                for (i, iv) in labelled_intervals(&ex) {
                    let (_, hi_approx) = hi_parts(iv);
                    let tag = i.map_or("head".to_string(), |i| format!("i = {i}"));
                    let approx = match hi_approx {
                        Some(h) => format!("[{:.4}, {:.4}]", iv.lo.approx(), h),
                        None => format!("[{:.4}, inf)", iv.lo.approx()),
                    };
                    let _ = writeln!(s, "  {tag}: {iv}  (approximately {approx})");
                }
            }
            s
        }
    }
}

fn cmd_verify_oracle(d: &BigInt, trace_max: &BigInt, err: &mut dyn Write) -> CliResult<Report> {
    if !trace_max.is_positive() {
        return Err(CliError::Usage("--trace-max must be positive".into()));
    }
    let field = QuadraticField::new(d)?;
    let _ = writeln!(err, "building table of sums of squares up to trace {trace_max}");
    let table = SosTable::build(&field, trace_max);
    let elements = totally_positive_upto(&field, trace_max);
    let mut representable = 0usize;
    for xi in &elements {
        let by_peters = peters::representable(xi)?;
        let by_search = table.contains(xi);
        if by_peters != by_search {
            let body = format!(
                "FAIL D = {d}: {} closed form says {}, search says {}\n",
                describe(xi),
                by_peters,
                by_search
            );
            return Ok(Report { body, code: EXIT_NO });
        }
        representable += usize::from(by_peters);
    }
    Ok(Report {
        body: format!(
            "PASS D = {d}, trace <= {trace_max}: {} elements, {representable} sums of squares\n",
            elements.len()
        ),
        code: EXIT_YES,
    })
}

fn cmd_family(kind: Family, t_max: u64, m_max: u64, err: &mut dyn Write) -> CliResult<Report> {
    let mut checked = 0u64;
    let ts: Vec<u64> = match kind {
        Family::T2m1 => (2..=t_max).step_by(2).collect(),
        Family::OddSqM4 => (2..=t_max).collect(),
    };
    for t in ts {
        let tb = BigInt::from(t);
        let d = match kind {
            Family::T2m1 => &tb * &tb - 1,
            Family::OddSqM4 => { let s: BigInt = &tb * 2 + 1; &s * &s - 4 }
        };
        if !is_squarefree(&d) {
            let _ = writeln!(err, "t = {t}: D = {d} not squarefree, skipped");
            continue;
        }
        for m in 1..=m_max {
            let mb = BigInt::from(m);
            let (multiplier, predicted) = match kind {
                Family::T2m1 => (&mb * 2, family_t2m1(&tb, &mb)?),
                Family::OddSqM4 => (mb.clone(), family_odd_square_minus4(&tb, &mb)?),
            };
            let actual = decide(&multiplier, &d)?.answer;
            if actual != predicted {
                let body = format!(
                    "FAIL t = {t}, D = {d}, m = {m}: formula says {predicted}, decision says {actual}\n"
                );
                return Ok(Report { body, code: EXIT_NO });
            }
            checked += 1;
        }
    }
    Ok(Report {
        body: format!("PASS {checked} pairs agree\n"),
        code: EXIT_YES,
    })
}
