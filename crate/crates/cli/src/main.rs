mod literal;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qhumbert::identities::{
    default_exact_grid, default_float_grid, find, registry, verify_all_exact, verify_all_float, FloatPoint,
    IdentitySpec, Status, VerifyReport, DEFAULT_FLOAT_ARGUMENTS,
};
use qhumbert::phi1::{phi1_coefficients, phi1_coeffs_exact, phi1_eval};
use qhumbert::{
    Arguments, Base, BasePower, ErrorClass, EvalResult, Phi1Params, QBases, QError, Rational, SeriesOptions, C64,
};
use serde_json::Value;

use output::{complex, fixed, number, object, Format};

const EXIT_FAIL: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_CONVERGENCE: u8 = 3;
const EXIT_USAGE: u8 = 64;

/// Bibasic Humbert series: evaluation, coefficients and identity checks.
#[derive(Debug, Parser)]
#[command(name = "qhumbert", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sum the series at one point (float mode).
    Eval(Common),
    /// Print the coefficients through total degree `--degree`.
    Coeffs(Common),
    /// Check the named identities at the given point, or on the default grid.
    Verify {
        /// Registry id such as H2.5; may be repeated.
        #[arg(long = "id", required = true)]
        ids: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Check every registered identity.
    VerifyAll(Common),
    /// Evaluate over `--x` and/or `--y` given as start:stop:step.
    Sweep(Common),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Float,
    Exact,
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    /// Value of q^a directly (float mode); replaces --a.
    #[arg(long, allow_hyphen_values = true)]
    qa: Option<String>,
    /// Value of q1^b directly (float mode); replaces --b.
    #[arg(long, allow_hyphen_values = true)]
    q1b: Option<String>,
    /// Value of q^c directly (float mode); replaces --c.
    #[arg(long, allow_hyphen_values = true)]
    qc: Option<String>,
    #[arg(long, value_enum, default_value = "float")]
    mode: Mode,
    /// Residual tolerance for float verification.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Total degree for exact verification and coefficient output.
    #[arg(long, default_value_t = 12)]
    degree: usize,
    #[arg(long, env = "QHUMBERT_LMAX", default_value_t = 256)]
    lmax: usize,
    #[arg(long, env = "QHUMBERT_KMAX", default_value_t = 256)]
    kmax: usize,
    /// Defaults to csv for sweep and text otherwise.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Lib(QError),
    Io(io::Error),
}

impl From<QError> for Failure {
    fn from(e: QError) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<u8, Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn exit_for_class(class: ErrorClass) -> u8 {
    match class {
        ErrorClass::Domain => EXIT_DOMAIN,
        ErrorClass::Convergence => EXIT_CONVERGENCE,
        ErrorClass::Precondition => EXIT_USAGE,
    }
}

/// Convergence trouble outranks domain trouble, which outranks plain fails.
fn exit_for_reports(reports: &[VerifyReport]) -> u8 {
    let has = |c| reports.iter().any(|r| r.error_class == Some(c));
    if has(ErrorClass::Convergence) {
        EXIT_CONVERGENCE
    } else if has(ErrorClass::Domain) {
        EXIT_DOMAIN
    } else if reports.iter().any(|r| r.status == Status::Fail) {
        EXIT_FAIL
    } else {
        0
    }
}

impl Common {
    fn options(&self) -> Result<SeriesOptions, Failure> {
        let opt = SeriesOptions {
            l_max: self.lmax,
            k_max: self.kmax,
            ..SeriesOptions::default()
        };
        opt.validate().map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(opt)
    }

    fn tolerance(&self) -> Result<f64, Failure> {
        if self.tol.is_finite() && self.tol > 0.0 {
            Ok(self.tol)
        } else {
            usage(format!("--tol must be a positive number, got {}", self.tol))
        }
    }

    fn has_point(&self) -> bool {
        [&self.q, &self.q1, &self.a, &self.b, &self.c, &self.qa, &self.q1b, &self.qc]
            .iter()
            .any(|v| v.is_some())
    }

    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn run_echo(&self, command: &str, ids: &[String]) -> Value {
        let mut map = serde_json::Map::new();
        map.insert("command".into(), command.into());
        map.insert("mode".into(), format!("{:?}", self.mode).to_lowercase().into());
        map.insert("tol".into(), number(self.tol));
        map.insert("degree".into(), self.degree.into());
        map.insert("lmax".into(), self.lmax.into());
        map.insert("kmax".into(), self.kmax.into());
        if !ids.is_empty() {
            map.insert("ids".into(), ids.to_vec().into());
        }
        let fields = [
            ("q", &self.q),
            ("q1", &self.q1),
            ("a", &self.a),
            ("b", &self.b),
            ("c", &self.c),
            ("x", &self.x),
            ("y", &self.y),
            ("qa", &self.qa),
            ("q1b", &self.q1b),
            ("qc", &self.qc),
        ];
        for (k, v) in fields {
            if let Some(v) = v {
                map.insert(k.into(), v.clone().into());
            }
        }
        Value::Object(map)
    }

    fn sink(&self) -> Result<Box<dyn Write>, Failure> {
        Ok(match &self.output {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, Failure> {
    v.as_deref().ok_or_else(|| Failure::Usage(format!("--{flag} is required")))
}

fn parse<T>(r: Result<T, String>) -> Result<T, Failure> {
    r.map_err(Failure::Usage)
}

fn float_power(
    bases: &QBases<C64>,
    base: Base,
    exponent: &Option<String>,
    value: &Option<String>,
    flag: &str,
) -> Result<BasePower<C64>, Failure> {
    if let Some(v) = value {
        return Ok(BasePower::from_value(base, parse(literal::complex(v))?));
    }
    let e = required(exponent, flag)?;
    match literal::exponent(e) {
        Some(n) => Ok(BasePower::integer(base, bases, n)?),
        None => {
            let e = parse(literal::complex(e))?;
            Ok(BasePower::from_value(base, bases.get(base).powc(e)))
        }
    }
}

fn float_params(c: &Common) -> Result<Phi1Params<C64>, Failure> {
    let q = parse(literal::complex(required(&c.q, "q")?))?;
    let q1 = parse(literal::complex(required(&c.q1, "q1")?))?;
    let bases = QBases::new(q, q1)?;
    let a = float_power(&bases, Base::Q, &c.a, &c.qa, "a")?;
    let b = float_power(&bases, Base::Q1, &c.b, &c.q1b, "b")?;
    let cc = float_power(&bases, Base::Q, &c.c, &c.qc, "c")?;
    Ok(Phi1Params::new(bases, a, b, cc)?)
}

fn exact_params(c: &Common) -> Result<Phi1Params<Rational>, Failure> {
    if c.qa.is_some() || c.q1b.is_some() || c.qc.is_some() {
        return usage("--qa, --q1b and --qc are float-mode options");
    }
    let q = parse(literal::rational(required(&c.q, "q")?))?;
    let q1 = parse(literal::rational(required(&c.q1, "q1")?))?;
    let int = |v: &Option<String>, flag: &str| -> Result<i64, Failure> {
        let s = required(v, flag)?;
        literal::exponent(s).ok_or_else(|| Failure::Usage(format!("--{flag} must be an integer in exact mode, got '{s}'")))
    };
    let (a, b, cc) = (int(&c.a, "a")?, int(&c.b, "b")?, int(&c.c, "c")?);
    Ok(Phi1Params::from_exponents(QBases::new(q, q1)?, a, b, cc)?)
}

fn float_args(c: &Common) -> Result<Arguments<C64>, Failure> {
    let x = parse(literal::complex(required(&c.x, "x")?))?;
    let y = parse(literal::complex(required(&c.y, "y")?))?;
    Ok(Arguments::new(x, y))
}

fn eval_json(r: &EvalResult<C64>) -> Value {
    object([
        ("value", complex(&r.value)),
        ("terms_used", r.terms_used.into()),
        ("tail_estimate", number(r.tail_estimate)),
        ("converged", r.converged.into()),
    ])
}

fn cmd_eval(c: &Common) -> Outcome {
    if c.mode == Mode::Exact {
        return usage("eval sums the series in float mode; use coeffs for exact coefficients");
    }
    let opt = c.options()?;
    let p = float_params(c)?;
    let arg = float_args(c)?;
    let r = phi1_eval(&p, &arg, &opt)?;
    let mut out = c.sink()?;
    match c.format(Format::Text) {
        Format::Json => {
            output::write_json(&mut out, &object([("run", c.run_echo("eval", &[])), ("result", eval_json(&r))]))?
        }
        Format::Csv => output::write_csv(
            &mut out,
            &["value_re", "value_im", "terms_used", "tail_estimate", "converged"],
            [vec![
                fixed(r.value.re),
                fixed(r.value.im),
                r.terms_used.to_string(),
                fixed(r.tail_estimate),
                r.converged.to_string(),
            ]],
        )?,
        Format::Text => {
            writeln!(out, "value = {} {:+.16e}i", fixed(r.value.re), r.value.im)?;
            writeln!(out, "terms_used = {}", r.terms_used)?;
            writeln!(out, "tail_estimate = {}", fixed(r.tail_estimate))?;
            writeln!(out, "converged = {}", r.converged)?;
        }
    }
    out.flush()?;
    Ok(0)
}

fn cmd_coeffs(c: &Common) -> Outcome {
    let rows: Vec<(usize, usize, Vec<String>, Value)> = match c.mode {
        Mode::Exact => {
            let p = exact_params(c)?;
            phi1_coeffs_exact(&p, c.degree)?
                .entries
                .into_iter()
                .map(|((l, k), v)| (l, k, vec![v.to_string()], Value::String(v.to_string())))
                .collect()
        }
        Mode::Float => {
            let p = float_params(c)?;
            phi1_coefficients(&p, c.degree)?
                .entries
                .into_iter()
                .map(|((l, k), v)| (l, k, vec![fixed(v.re), fixed(v.im)], complex(&v)))
                .collect()
        }
    };
    let header: &[&str] = match c.mode {
        Mode::Exact => &["l", "k", "value"],
        Mode::Float => &["l", "k", "value_re", "value_im"],
    };
    let table = rows.iter().map(|(l, k, cells, _)| {
        let mut row = vec![l.to_string(), k.to_string()];
        row.extend(cells.iter().cloned());
        row
    });
    let mut out = c.sink()?;
    match c.format(Format::Text) {
        Format::Json => {
            let coeffs = rows
                .iter()
                .map(|(l, k, _, v)| object([("l", (*l).into()), ("k", (*k).into()), ("value", v.clone())]))
                .collect();
            output::write_json(&mut out, &object([("run", c.run_echo("coeffs", &[])), ("coefficients", Value::Array(coeffs))]))?
        }
        Format::Csv => output::write_csv(&mut out, header, table)?,
        Format::Text => output::write_table(&mut out, header, table)?,
    }
    out.flush()?;
    Ok(0)
}

fn lookup(ids: &[String]) -> Result<Vec<IdentitySpec>, Failure> {
    ids.iter()
        .map(|id| find(id).cloned().ok_or_else(|| Failure::Usage(format!("unknown identity id '{id}'"))))
        .collect()
}

/// Reports for `specs` at the point given by the flags, or on the default
/// grid when no parameters are given.
fn run_verification(c: &Common, specs: &[IdentitySpec]) -> Result<Vec<VerifyReport>, Failure> {
    let opt = c.options()?;
    Ok(match c.mode {
        Mode::Exact => {
            if c.x.is_some() || c.y.is_some() {
                return usage("exact verification compares coefficients; --x and --y do not apply");
            }
            let grid = if c.has_point() { vec![exact_params(c)?] } else { default_exact_grid() };
            verify_all_exact(specs, &grid, c.degree)
        }
        Mode::Float => {
            let tol = c.tolerance()?;
            let grid = if c.has_point() {
                let params = float_params(c)?;
                let args = if c.x.is_some() || c.y.is_some() {
                    vec![float_args(c)?]
                } else {
                    DEFAULT_FLOAT_ARGUMENTS
                        .iter()
                        .map(|&(x, y)| Arguments::new(C64::new(x, 0.0), C64::new(y, 0.0)))
                        .collect()
                };
                args.into_iter()
                    .map(|args| FloatPoint {
                        params: params.clone(),
                        args,
                    })
                    .collect()
            } else {
                if c.x.is_some() || c.y.is_some() {
                    return usage("--x/--y need the parameter flags --q --q1 --a --b --c");
                }
                default_float_grid()
            };
            verify_all_float(specs, &grid, &opt, tol)
        }
    })
}

fn cmd_verify(c: &Common, command: &str, ids: &[String]) -> Outcome {
    let specs = if ids.is_empty() { registry().to_vec() } else { lookup(ids)? };
    let reports = run_verification(c, &specs)?;
    let mut out = c.sink()?;
    output::write_reports(&mut out, c.format(Format::Text), c.run_echo(command, ids), &reports)?;
    out.flush()?;
    Ok(exit_for_reports(&reports))
}

fn sweep_axis(v: &Option<String>, flag: &str) -> Result<Vec<f64>, Failure> {
    let s = required(v, flag)?;
    if s.contains(':') {
        parse(literal::range(s))
    } else {
        Ok(vec![parse(literal::real(s))?])
    }
}

fn cmd_sweep(c: &Common) -> Outcome {
    if c.mode == Mode::Exact {
        return usage("sweep sums the series in float mode");
    }
    let opt = c.options()?;
    let p = float_params(c)?;
    let xs = sweep_axis(&c.x, "x")?;
    let ys = sweep_axis(&c.y, "y")?;

    let mut code = 0;
    let mut rows = Vec::new();
    for &x in &xs {
        for &y in &ys {
            let arg = Arguments::new(C64::new(x, 0.0), C64::new(y, 0.0));
            let result = phi1_eval(&p, &arg, &opt);
            if let Err(e) = &result {
                code = code.max(exit_for_class(e.class()));
            }
            rows.push((x, y, result));
        }
    }

    let header = ["x", "y", "value_re", "value_im", "tail_estimate", "terms_used", "converged", "error"];
    let cells = rows.iter().map(|(x, y, r)| match r {
        Ok(r) => vec![
            fixed(*x),
            fixed(*y),
            fixed(r.value.re),
            fixed(r.value.im),
            fixed(r.tail_estimate),
            r.terms_used.to_string(),
            r.converged.to_string(),
            String::new(),
        ],
        Err(e) => {
            let mut row = vec![fixed(*x), fixed(*y)];
            row.extend(["", "", "", "", "false"].map(String::from));
            row.push(e.to_string());
            row
        }
    });
    let mut out = c.sink()?;
    match c.format(Format::Csv) {
        Format::Csv => output::write_csv(&mut out, &header, cells)?,
        Format::Text => output::write_table(&mut out, &header, cells)?,
        Format::Json => {
            let json_rows = rows
                .iter()
                .map(|(x, y, r)| {
                    let (result, error) = match r {
                        Ok(r) => (eval_json(r), Value::Null),
                        Err(e) => (Value::Null, Value::String(e.to_string())),
                    };
                    object([("x", number(*x)), ("y", number(*y)), ("result", result), ("error", error)])
                })
                .collect();
            output::write_json(&mut out, &object([("run", c.run_echo("sweep", &[])), ("rows", Value::Array(json_rows))]))?
        }
    }
    out.flush()?;
    Ok(code)
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Eval(c) => cmd_eval(c),
        Command::Coeffs(c) => cmd_coeffs(c),
        Command::Verify { ids, common } => cmd_verify(common, "verify", ids),
        Command::VerifyAll(c) => cmd_verify(c, "verify-all", &[]),
        Command::Sweep(c) => cmd_sweep(c),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let code = match dispatch(&cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            exit_for_class(e.class())
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            EXIT_FAIL
        }
    };
    ExitCode::from(code)
}
