//! The `wzeta` command line: `eval`, `verify` and `table`.
//!
//! Everything here writes to caller-supplied sinks so it can be driven from
//! tests without spawning a process.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bohr_mollerup::{f_sq_closed, krull_for_problem, DifferenceProblem, DEFAULT_N_CAP};
use crate::closed_form::{
    dirichlet_hurwitz_bernoulli, dirichlet_hurwitz_euler, weighted_series_closed, z_plus_riemann, Sign,
    WeightedSeriesQuery,
};
use crate::error::ZetaError;
use crate::exact_poly::{bernoulli_number, euler_number, format_rational, rational_to_f64};
use crate::oracle::{is_exploratory, z_oracle};
use crate::verify::{run_suite, Grid, Suite, VerifyOptions};
use crate::zeta_core::{
    hurwitz_zeta, lerch_minus_one, riemann_zeta, CancelToken, ComplexValue, EvalParams, SeriesResult,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_CONVERGENCE: i32 = 4;
pub const EXIT_IO: i32 = 5;
pub const EXIT_CANCELLED: i32 = 130;

#[derive(Parser, Debug)]
#[command(name = "wzeta", version, about = "Weighted Hurwitz series, zeta functions and Bernoulli/Euler data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(clap::Args, Debug)]
struct EvalOpts {
    /// Relative accuracy target.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long)]
    max_terms: Option<u64>,
    /// Record wall-clock time in `elapsed_ms` (otherwise 0, keeping output reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one function: `wzeta eval zplus s=4 a=0 x=0`.
    Eval {
        function: String,
        /// `key=value` pairs.
        params: Vec<String>,
        #[command(flatten)]
        opts: EvalOpts,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value = "small")]
        grid: String,
        /// Jitter nonzero grid points reproducibly.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_terms: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Sweep up to two parameters: `wzeta table hurwitz s=2 x=1..3:1`.
    Table {
        function: String,
        /// `key=value`, `key=start:stop:step` or `key=start..stop:step` (inclusive).
        params: Vec<String>,
        #[command(flatten)]
        opts: EvalOpts,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Zeta(ZetaError),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Io(_) => EXIT_IO,
            CliError::Zeta(ZetaError::Domain(_)) => EXIT_DOMAIN,
            CliError::Zeta(ZetaError::NotConverged { .. } | ZetaError::NonFinite) => EXIT_CONVERGENCE,
            CliError::Zeta(ZetaError::Cancelled) => EXIT_CANCELLED,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Zeta(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "I/O error: {e}"),
        }
    }
}

impl From<ZetaError> for CliError {
    fn from(e: ZetaError) -> Self {
        CliError::Zeta(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(io::Error::other(e))
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn parse_err(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValueOut {
    pub re: f64,
    pub im: f64,
}

/// One evaluated point, as printed by `eval` and `table`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub function: String,
    pub params: BTreeMap<String, String>,
    pub value: ValueOut,
    pub error_bound: f64,
    pub terms_used: u64,
    pub elapsed_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
}

pub const CSV_HEADER: [&str; 8] =
    ["function", "params", "value_re", "value_im", "error_bound", "terms_used", "elapsed_ms", "exact"];

impl OutputRecord {
    pub fn params_string(&self) -> String {
        self.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
    }

    fn csv_row(&self) -> [String; 8] {
        [
            self.function.clone(),
            self.params_string(),
            fmt_float(self.value.re),
            fmt_float(self.value.im),
            fmt_float(self.error_bound),
            self.terms_used.to_string(),
            fmt_float(self.elapsed_ms),
            self.exact.clone().unwrap_or_default(),
        ]
    }
}

/// Shortest round-trip text, switching to exponent form away from unit scale.
pub fn fmt_float(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-4..1e16).contains(&a) || !a.is_finite() {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

/// Parses `re`, `re+im i`, `re-im i` or `im i` (`j` also accepted).
pub fn parse_complex(text: &str) -> std::result::Result<ComplexValue, String> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("invalid complex number `{text}`");
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return t.parse::<f64>().ok().filter(|re| re.is_finite()).map(|re| Complex64::new(re, 0.0)).ok_or_else(bad);
    };
    // Split at the last sign that is not the leading sign and not part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let imag = |s: &str| -> std::result::Result<f64, String> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => s.parse::<f64>().map_err(|_| bad()),
        }
    };
    let (re, im) = match split {
        Some(i) => (body[..i].parse::<f64>().map_err(|_| bad())?, imag(&body[i..])?),
        None => (0.0, imag(body)?),
    };
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Function {
    Hurwitz,
    Riemann,
    Lerch,
    ZPlus,
    ZMinus,
    ZPlusRiemann,
    DhBernoulli,
    DhEuler,
    BernoulliNumber,
    EulerNumber,
    OracleZPlus,
    OracleZMinus,
    Krull,
    Fsq,
}

impl Function {
    pub const ALL: [(&'static str, Function); 14] = [
        ("hurwitz", Function::Hurwitz),
        ("riemann", Function::Riemann),
        ("lerch", Function::Lerch),
        ("zplus", Function::ZPlus),
        ("zminus", Function::ZMinus),
        ("zplus_riemann", Function::ZPlusRiemann),
        ("dh_bernoulli", Function::DhBernoulli),
        ("dh_euler", Function::DhEuler),
        ("bernoulli_number", Function::BernoulliNumber),
        ("euler_number", Function::EulerNumber),
        ("oracle_zplus", Function::OracleZPlus),
        ("oracle_zminus", Function::OracleZMinus),
        ("krull", Function::Krull),
        ("fsq", Function::Fsq),
    ];

    pub fn name(self) -> &'static str {
        Self::ALL.iter().find(|(_, f)| *f == self).map(|(n, _)| *n).unwrap_or("?")
    }

    /// Required and optional keys.
    fn keys(self) -> (&'static [&'static str], &'static [&'static str]) {
        use Function::*;
        match self {
            Hurwitz | Lerch => (&["s", "x"], &[]),
            Riemann => (&["s"], &[]),
            ZPlus | ZMinus | DhBernoulli | DhEuler | OracleZPlus | OracleZMinus => (&["s", "a", "x"], &[]),
            ZPlusRiemann => (&["s", "a"], &[]),
            BernoulliNumber | EulerNumber => (&["a"], &[]),
            Krull => (&["omegas", "s", "p", "x"], &["n_cap"]),
            Fsq => (&["omegas", "s", "x"], &["p"]),
        }
    }
}

impl FromStr for Function {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL.iter().find(|(n, _)| *n == s).map(|(_, f)| *f).ok_or_else(|| {
            let names: Vec<_> = Self::ALL.iter().map(|(n, _)| *n).collect();
            format!("unknown function `{s}` (expected one of {})", names.join(", "))
        })
    }
}

struct Args<'a> {
    map: &'a BTreeMap<String, String>,
}

impl Args<'_> {
    fn raw(&self, key: &str) -> CliResult<&str> {
        self.map.get(key).map(String::as_str).ok_or_else(|| parse_err(format!("missing parameter `{key}`")))
    }

    fn complex(&self, key: &str) -> CliResult<ComplexValue> {
        parse_complex(self.raw(key)?).map_err(parse_err)
    }

    fn real(&self, key: &str) -> CliResult<f64> {
        let raw = self.raw(key)?;
        raw.parse::<f64>().map_err(|_| parse_err(format!("`{key}` must be a real number, got `{raw}`")))
    }

    fn uint<T: FromStr>(&self, key: &str) -> CliResult<T> {
        let raw = self.raw(key)?;
        raw.parse::<T>().map_err(|_| parse_err(format!("`{key}` must be a non-negative integer, got `{raw}`")))
    }

    fn list(&self, key: &str) -> CliResult<Vec<f64>> {
        self.raw(key)?
            .split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|_| parse_err(format!("bad entry `{p}` in `{key}`"))))
            .collect()
    }
}

fn parse_pairs(items: &[String]) -> CliResult<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for item in items {
        let (k, v) = item.split_once('=').ok_or_else(|| parse_err(format!("expected key=value, got `{item}`")))?;
        if map.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(parse_err(format!("parameter `{k}` given twice")));
        }
    }
    Ok(map)
}

fn check_keys(func: Function, map: &BTreeMap<String, String>) -> CliResult<()> {
    let (required, optional) = func.keys();
    for key in map.keys() {
        if !required.contains(&key.as_str()) && !optional.contains(&key.as_str()) {
            return Err(parse_err(format!("`{}` does not take parameter `{key}`", func.name())));
        }
    }
    for key in required {
        if !map.contains_key(*key) {
            return Err(parse_err(format!("`{}` needs parameter `{key}`", func.name())));
        }
    }
    Ok(())
}

struct Evaluated {
    result: SeriesResult,
    exact: Option<String>,
}

fn evaluate(
    func: Function,
    map: &BTreeMap<String, String>,
    tol: f64,
    params: &EvalParams,
    err: &mut dyn Write,
) -> CliResult<Evaluated> {
    check_keys(func, map)?;
    let args = Args { map };
    let plain = |result| Evaluated { result, exact: None };
    use Function::*;
    let out = match func {
        Hurwitz => plain(hurwitz_zeta(args.complex("s")?, args.real("x")?, params)?),
        Riemann => plain(riemann_zeta(args.complex("s")?, params)?),
        Lerch => plain(lerch_minus_one(args.complex("s")?, args.real("x")?, params)?),
        ZPlus | ZMinus => {
            let sign = if func == ZPlus { Sign::Plus } else { Sign::Minus };
            let q = WeightedSeriesQuery::new(sign, args.complex("s")?, args.uint("a")?, args.real("x")?)?;
            plain(weighted_series_closed(&q, params)?)
        }
        ZPlusRiemann => plain(z_plus_riemann(args.complex("s")?, args.uint("a")?, params)?),
        DhBernoulli => {
            plain(dirichlet_hurwitz_bernoulli(args.complex("s")?, args.uint("a")?, args.real("x")?, params)?)
        }
        DhEuler => plain(dirichlet_hurwitz_euler(args.complex("s")?, args.uint("a")?, args.real("x")?, params)?),
        BernoulliNumber | EulerNumber => {
            let a: usize = args.uint("a")?;
            let r = if func == BernoulliNumber { bernoulli_number(a) } else { euler_number(a) };
            Evaluated {
                result: SeriesResult::exact(Complex64::new(rational_to_f64(&r), 0.0)),
                exact: Some(format_rational(&r)),
            }
        }
        OracleZPlus | OracleZMinus => {
            let sign = if func == OracleZPlus { Sign::Plus } else { Sign::Minus };
            let (s, a) = (args.complex("s")?, args.uint("a")?);
            if is_exploratory(sign, s, a) {
                writeln!(err, "warning: Re(s) <= a+2 for the alternating series; exploratory, bound heuristic")?;
            }
            plain(z_oracle(sign, s, a, args.real("x")?, params)?)
        }
        Krull => {
            let prob = DifferenceProblem::new(args.list("omegas")?, args.real("s")?, args.uint("p")?)?;
            let n_cap = if map.contains_key("n_cap") { args.uint("n_cap")? } else { DEFAULT_N_CAP };
            let (value, diag) = krull_for_problem(&prob, args.real("x")?, tol, n_cap, params)?;
            let result = SeriesResult {
                value: Complex64::new(value, 0.0),
                error_bound: diag.last_delta,
                terms_used: diag.n_used,
            };
            if !diag.converged {
                return Err(ZetaError::NotConverged { partial: result, target: tol }.into());
            }
            plain(result)
        }
        Fsq => {
            let p = if map.contains_key("p") { args.uint("p")? } else { 0 };
            let prob = DifferenceProblem::new(args.list("omegas")?, args.real("s")?, p)?;
            let value = f_sq_closed(&prob, args.real("x")?, params)?;
            plain(SeriesResult { value: Complex64::new(value, 0.0), error_bound: tol * value.abs(), terms_used: 0 })
        }
    };
    Ok(out)
}

fn eval_params(opts: &EvalOpts, cancel: &CancelToken) -> CliResult<EvalParams> {
    let mut params = EvalParams::default().with_tol(opts.tol).with_cancel(cancel.clone());
    if let Some(m) = opts.max_terms {
        params = params.with_max_terms(m);
    }
    params.validate()?;
    Ok(params)
}

fn record_for(
    func: Function,
    map: &BTreeMap<String, String>,
    opts: &EvalOpts,
    params: &EvalParams,
    err: &mut dyn Write,
) -> CliResult<OutputRecord> {
    let start = Instant::now();
    let ev = evaluate(func, map, opts.tol, params, err)?;
    let elapsed_ms = if opts.timing { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 };
    Ok(OutputRecord {
        function: func.name().to_string(),
        params: map.clone(),
        value: ValueOut { re: ev.result.value.re, im: ev.result.value.im },
        error_bound: ev.result.error_bound,
        terms_used: ev.result.terms_used,
        elapsed_ms,
        exact: ev.exact,
    })
}

fn write_records(records: &[OutputRecord], format: Format, sink: &mut dyn Write) -> CliResult<()> {
    match format {
        Format::Json | Format::Text => {
            if records.len() == 1 {
                serde_json::to_writer_pretty(&mut *sink, &records[0]).map_err(io::Error::other)?;
            } else {
                serde_json::to_writer_pretty(&mut *sink, records).map_err(io::Error::other)?;
            }
            writeln!(sink)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            w.write_record(CSV_HEADER)?;
            for r in records {
                w.write_record(r.csv_row())?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Reads records back from the CSV layout written by `eval --format csv` or `table`.
pub fn read_csv_records<R: io::Read>(reader: R) -> CliResult<Vec<OutputRecord>> {
    let mut rdr = csv::Reader::from_reader(reader);
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let field = |i: usize| row.get(i).unwrap_or("");
        let num = |i: usize| field(i).parse::<f64>().map_err(|_| parse_err(format!("bad number `{}`", field(i))));
        let params = if field(1).is_empty() {
            BTreeMap::new()
        } else {
            field(1)
                .split(';')
                .map(|kv| kv.split_once('=').map(|(k, v)| (k.to_string(), v.to_string())))
                .collect::<Option<_>>()
                .ok_or_else(|| parse_err("bad params column"))?
        };
        out.push(OutputRecord {
            function: field(0).to_string(),
            params,
            value: ValueOut { re: num(2)?, im: num(3)? },
            error_bound: num(4)?,
            terms_used: field(5).parse().map_err(|_| parse_err("bad terms_used"))?,
            elapsed_ms: num(6)?,
            exact: Some(field(7)).filter(|s| !s.is_empty()).map(str::to_string),
        });
    }
    Ok(out)
}

/// Expands `start:stop:step` or `start..stop:step` into inclusive points; a
/// plain value yields itself.
pub fn expand_range(text: &str) -> std::result::Result<Vec<String>, String> {
    let parts: Vec<&str> = if let Some((range, step)) =
        text.split_once("..").and_then(|(a, rest)| rest.split_once(':').map(|(b, step)| ((a, b), step)))
    {
        vec![range.0, range.1, step]
    } else {
        text.split(':').collect()
    };
    match parts.len() {
        1 => Ok(vec![text.to_string()]),
        3 => {
            let num = |s: &str| s.trim().parse::<f64>().map_err(|_| format!("bad range `{text}`"));
            let (start, stop, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
            if !(step.is_finite() && step > 0.0 && start.is_finite() && stop.is_finite()) {
                return Err(format!("range `{text}` needs finite bounds and a positive step"));
            }
            let slack = 1e-9 * step;
            let mut out = Vec::new();
            let mut i = 0u64;
            loop {
                let v = start + i as f64 * step;
                if v > stop + slack {
                    break;
                }
                out.push(v.to_string());
                i += 1;
                if i > 1_000_000 {
                    return Err(format!("range `{text}` has too many points"));
                }
            }
            Ok(out)
        }
        _ => Err(format!("bad range `{text}`")),
    }
}

fn table_points(items: &[String]) -> CliResult<Vec<BTreeMap<String, String>>> {
    let mut fixed = BTreeMap::new();
    let mut swept: Vec<(String, Vec<String>)> = Vec::new();
    for (k, v) in parse_pairs(items)? {
        // omegas is a comma list, never a range.
        if k != "omegas" && v.contains(':') {
            swept.push((k, expand_range(&v).map_err(parse_err)?));
        } else {
            fixed.insert(k, v);
        }
    }
    if swept.len() > 2 {
        return Err(parse_err("at most two parameters can be swept"));
    }
    let mut points = vec![fixed];
    for (key, values) in swept {
        let key = &key;
        points = points
            .iter()
            .flat_map(|base| {
                values.iter().map(move |v| {
                    let mut m = base.clone();
                    m.insert(key.clone(), v.clone());
                    m
                })
            })
            .collect();
    }
    Ok(points)
}

fn run_command(cmd: Command, cancel: &CancelToken, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    match cmd {
        Command::Eval { function, params, opts, format } => {
            let func: Function = function.parse().map_err(parse_err)?;
            let map = parse_pairs(&params)?;
            let eval = eval_params(&opts, cancel)?;
            let record = record_for(func, &map, &opts, &eval, err)?;
            write_records(std::slice::from_ref(&record), format, out)?;
            Ok(EXIT_OK)
        }
        Command::Table { function, params, opts, format, out: path } => {
            let func: Function = function.parse().map_err(parse_err)?;
            let points = table_points(&params)?;
            let eval = eval_params(&opts, cancel)?;
            let records =
                points.iter().map(|m| record_for(func, m, &opts, &eval, err)).collect::<CliResult<Vec<_>>>()?;
            match path {
                Some(p) => {
                    let mut file = io::BufWriter::new(std::fs::File::create(&p)?);
                    write_records(&records, format, &mut file)?;
                    file.flush()?;
                }
                None => write_records(&records, format, out)?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify { suite, tol, grid, seed, max_terms, format } => {
            let suite: Suite = suite.parse().map_err(parse_err)?;
            let grid: Grid = grid.parse().map_err(parse_err)?;
            let mut params = EvalParams::default().with_cancel(cancel.clone());
            if let Some(m) = max_terms {
                params = params.with_max_terms(m);
            }
            if !(tol.is_finite() && tol > 0.0) {
                return Err(parse_err(format!("--tol must be positive, got {tol}")));
            }
            let checks = run_suite(suite, &VerifyOptions { tol, grid, seed, params });
            if cancel.is_cancelled() {
                return Err(ZetaError::Cancelled.into());
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            match format {
                Format::Text => {
                    for c in &checks {
                        write!(
                            out,
                            "{} {:<18} {}  residual={}  bound={:.3e}",
                            if c.passed { "PASS" } else { "FAIL" },
                            c.suite,
                            c.name,
                            c.residual,
                            c.bound
                        )?;
                        match &c.note {
                            Some(n) => writeln!(out, "  ({n})")?,
                            None => writeln!(out)?,
                        }
                    }
                    writeln!(out, "{} checks, {} failed", checks.len(), failed)?;
                }
                Format::Json => {
                    serde_json::to_writer_pretty(&mut *out, &checks).map_err(io::Error::other)?;
                    writeln!(out)?;
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.write_record(["suite", "name", "passed", "residual", "bound", "note"])?;
                    for c in &checks {
                        w.write_record([
                            c.suite.to_string(),
                            c.name.clone(),
                            c.passed.to_string(),
                            c.residual.to_string(),
                            c.bound.to_string(),
                            c.note.clone().unwrap_or_default(),
                        ])?;
                    }
                    w.flush()?;
                }
            }
            Ok(if failed == 0 { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, cancel: &CancelToken, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_PARSE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match run_command(cli.command, cancel, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let CliError::Zeta(ZetaError::NotConverged { partial, .. }) = &e {
                let _ = writeln!(
                    err,
                    "best partial value {} + {}i, error bound {:e}, terms {}",
                    partial.value.re, partial.value.im, partial.error_bound, partial.terms_used
                );
            }
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_syntax() {
        let cases = [
            ("2.5", (2.5, 0.0)),
            ("2.5+2i", (2.5, 2.0)),
            ("3-1.5i", (3.0, -1.5)),
            ("2i", (0.0, 2.0)),
            ("-i", (0.0, -1.0)),
            ("1e1+2e-1i", (10.0, 0.2)),
            ("-1.5e+1-3j", (-15.0, -3.0)),
            (" 4 + 3i ", (4.0, 3.0)),
        ];
        for (text, (re, im)) in cases {
            assert_eq!(parse_complex(text), Ok(Complex64::new(re, im)), "{text}");
        }
        for bad in ["", "i2", "2+", "abc", "1+2", "nan", "2++3i"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn ranges_are_inclusive() {
        assert_eq!(expand_range("1..3:1").unwrap(), ["1", "2", "3"]);
        assert_eq!(expand_range("0:3:1").unwrap(), ["0", "1", "2", "3"]);
        assert_eq!(expand_range("0:1:0.25").unwrap().len(), 5);
        assert!(expand_range("3:1:1").unwrap().is_empty());
        assert!(expand_range("0:1:0").is_err());
        assert_eq!(expand_range("7").unwrap(), ["7"]);
    }

    #[test]
    fn two_swept_parameters_form_a_product() {
        let pts = table_points(&["s=3:4:1".into(), "x=0..1:0.5".into(), "a=0".into()]).unwrap();
        assert_eq!(pts.len(), 6);
        assert!(table_points(&["s=3:4:1".into(), "x=0:1:1".into(), "a=0:1:1".into()]).is_err());
    }

    #[test]
    fn unknown_and_missing_keys_are_parse_errors() {
        let map = parse_pairs(&["s=4".into(), "y=1".into()]).unwrap();
        assert!(matches!(check_keys(Function::Hurwitz, &map), Err(CliError::Parse(_))));
        let map = parse_pairs(&["s=4".into()]).unwrap();
        assert!(matches!(check_keys(Function::ZPlus, &map), Err(CliError::Parse(_))));
    }
}
