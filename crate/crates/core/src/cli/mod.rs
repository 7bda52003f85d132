//! The `degbell` command line: `table`, `eval` and `verify`.

pub mod render;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::algebra::{
    parse_rational, rational_to_plain, AlgebraError, LambdaPoly, LambdaTarget, Rational, RationalFn, SubstituteLambda,
    XPoly,
};
use crate::families::{Family, FamilyError, Member};
use crate::identities::{all_passed, identity_ids, run_all, verdicts_to_json, IdentityError, SuiteConfig, Value};
use render::Notation;

/// Largest index accepted by `table` and `eval`.
pub const MAX_N: usize = 32;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("index {0} is outside the supported range 0..{MAX_N}")]
    OutOfRange(usize),
    #[error("pole at x = {0}: the denominator vanishes there")]
    Pole(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Parser, Debug)]
#[command(
    name = "degbell",
    version,
    about = "Exact degenerate Bell, Stirling, geometric, Bernoulli and Eulerian families"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate a family over a range of indices.
    Table(TableArgs),
    /// Evaluate one family member at exact x and λ.
    Eval(EvalArgs),
    /// Run identity checks and print JSON verdicts.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Latex,
    Json,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long)]
    pub family: String,
    /// Index range `a..b` (inclusive) or a single index.
    #[arg(long, conflicts_with = "n_max")]
    pub n: Option<String>,
    /// Shorthand for `--n 0..N`.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// `sym` or an exact rational `p/q`.
    #[arg(long, default_value = "sym", allow_hyphen_values = true)]
    pub lambda: String,
    /// `sym` or an exact rational `p/q`.
    #[arg(long, default_value = "sym", allow_hyphen_values = true)]
    pub x: String,
    /// Order parameter for `geom_r`.
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<i64>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub n: usize,
    /// Column index for triangular families.
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    #[arg(long, default_value = "sym", allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, default_value = "sym", allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<i64>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Id prefixes to run, e.g. `T8` or `GF_`.
    pub filter: Vec<String>,
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long)]
    pub m_max: Option<usize>,
    /// Largest r for the r-geometric checks.
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub k_max: Option<usize>,
    /// Largest monomial degree for the series transformations.
    #[arg(long)]
    pub deg_max: Option<usize>,
    /// Perturb every selected check so that it must fail.
    #[arg(long)]
    pub negative_control: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Parses `sym` or an exact rational.
fn parse_mode(flag: &str, text: &str) -> Result<Option<Rational>, CliError> {
    if text == "sym" {
        return Ok(None);
    }
    parse_rational(text)
        .map(Some)
        .ok_or_else(|| CliError::Usage(format!("--{flag} expects `sym` or a rational p/q, got `{text}`")))
}

pub fn parse_range(text: &str) -> Result<RangeInclusive<usize>, CliError> {
    let bad = || CliError::Usage(format!("--n expects `a..b` or a single index, got `{text}`"));
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (text, text),
    };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    if hi > MAX_N {
        return Err(CliError::OutOfRange(hi));
    }
    Ok(lo..=hi)
}

/// A rendered table entry: an exact value, or a rational function of x.
#[derive(Clone, Debug, PartialEq)]
pub enum Entry {
    Value(Value),
    Ratio { num: XPoly, den: XPoly },
}

impl Entry {
    pub fn render(&self, notation: Notation) -> String {
        match self {
            Entry::Value(Value::Rational(r)) => render::rational(r, notation),
            Entry::Value(Value::Lambda(p)) => render::lambda_poly(p, notation),
            Entry::Value(Value::X(p)) => render::x_poly(p, notation),
            Entry::Ratio { num, den } => render::ratio(num, den, notation),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Entry::Value(v) => serde_json::to_value(v).expect("values serialize"),
            Entry::Ratio { num, den } => json!({
                "num": serde_json::to_value(Value::X(num.clone())).expect("values serialize"),
                "den": serde_json::to_value(Value::X(den.clone())).expect("values serialize"),
            }),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        if let Some(obj) = v.as_object() {
            let part = |key: &str| match obj.get(key).map(Value::from_json) {
                Some(Ok(Value::X(p))) => Ok(p),
                _ => Err(format!("rational function entry needs x-polynomial `{key}`")),
            };
            return Ok(Entry::Ratio {
                num: part("num")?,
                den: part("den")?,
            });
        }
        Value::from_json(v).map(Entry::Value)
    }
}

fn lambda_target(lambda: &Option<Rational>) -> Option<LambdaTarget> {
    lambda.clone().map(LambdaTarget::Value)
}

/// Specializes a member at the requested λ and x.
pub fn specialize(member: Member, lambda: &Option<Rational>, x: &Option<Rational>) -> Result<Entry, CliError> {
    let target = lambda_target(lambda);
    let sub = |p: XPoly| match &target {
        Some(t) => p.substitute_lambda(t),
        None => p,
    };
    let sub_l = |p: LambdaPoly| match &target {
        Some(t) => p.substitute_lambda(t),
        None => p,
    };
    let at_x = |p: &XPoly| match x {
        Some(x) => Entry::Value(Value::Lambda(p.eval(&LambdaPoly::constant(x.clone())))),
        None => Entry::Value(Value::X(p.clone())),
    };
    let collapse = |e: Entry| match (e, lambda, x) {
        (Entry::Value(Value::Lambda(p)), Some(_), _) => Entry::Value(Value::Rational(p.constant_term())),
        (e, _, _) => e,
    };
    Ok(collapse(match member {
        Member::Rational(r) => Entry::Value(Value::Rational(r)),
        Member::Lambda(p) => Entry::Value(Value::Lambda(sub_l(p))),
        Member::X(p) => at_x(&sub(p)),
        Member::Ratio(q) => {
            let q = match &target {
                Some(t) => q.substitute_lambda(t),
                None => q,
            };
            match x {
                Some(xv) => Entry::Value(Value::Lambda(q.eval_x(xv).map_err(|e| match e {
                    AlgebraError::Pole => CliError::Pole(rational_to_plain(xv)),
                    _ => CliError::Usage(format!(
                        "at x = {} the value is a rational function of λ, not a polynomial; pass --lambda p/q",
                        rational_to_plain(xv)
                    )),
                })?)),
                None => reduce_ratio(q),
            }
        }
    }))
}

fn reduce_ratio(q: RationalFn) -> Entry {
    match q.num().div_exact(q.den()) {
        Ok(p) => Entry::Value(Value::X(p)),
        Err(_) => Entry::Ratio {
            num: q.num().clone(),
            den: q.den().clone(),
        },
    }
}

fn parse_family(name: &str) -> Result<Family, CliError> {
    name.parse::<Family>().map_err(CliError::Usage)
}

fn check_r(family: Family, r: Option<i64>) -> Result<(), CliError> {
    if family.needs_r() && r.is_none() {
        return Err(CliError::Usage(format!("family `{family}` needs --r <int>")));
    }
    Ok(())
}

/// One table row: `n`, `k` for triangular families, and the entry.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub n: usize,
    pub k: Option<usize>,
    pub entry: Entry,
}

pub fn table_rows(args: &TableArgs) -> Result<Vec<Row>, CliError> {
    let family = parse_family(&args.family)?;
    check_r(family, args.r)?;
    let range = match (&args.n, args.n_max) {
        (Some(text), _) => parse_range(text)?,
        (None, Some(n)) if n > MAX_N => return Err(CliError::OutOfRange(n)),
        (None, Some(n)) => 0..=n,
        (None, None) => 0..=MAX_N,
    };
    let lambda = parse_mode("lambda", &args.lambda)?;
    let x = parse_mode("x", &args.x)?;
    let mut rows = Vec::new();
    for n in range {
        let ks: Vec<Option<usize>> = if family.is_triangular() {
            (0..=n).map(Some).collect()
        } else {
            vec![None]
        };
        for k in ks {
            let member = family.member(n, k.unwrap_or(0), args.r)?;
            rows.push(Row {
                n,
                k,
                entry: specialize(member, &lambda, &x)?,
            });
        }
    }
    Ok(rows)
}

pub fn render_table(args: &TableArgs, rows: &[Row]) -> String {
    let triangular = rows.iter().any(|r| r.k.is_some());
    match args.format {
        Format::Csv => {
            let mut out = String::from(if triangular { "n,k,value\n" } else { "n,value\n" });
            for r in rows {
                let value = r.entry.render(Notation::Plain);
                match r.k {
                    Some(k) => out.push_str(&format!("{},{},{}\n", r.n, k, value)),
                    None => out.push_str(&format!("{},{}\n", r.n, value)),
                }
            }
            out
        }
        Format::Latex => {
            let mut out = String::new();
            out.push_str(if triangular {
                "\\begin{tabular}{rrl}\n$n$ & $k$ & value \\\\\n\\hline\n"
            } else {
                "\\begin{tabular}{rl}\n$n$ & value \\\\\n\\hline\n"
            });
            for r in rows {
                let value = r.entry.render(Notation::Latex);
                match r.k {
                    Some(k) => out.push_str(&format!("{} & {} & ${}$ \\\\\n", r.n, k, value)),
                    None => out.push_str(&format!("{} & ${}$ \\\\\n", r.n, value)),
                }
            }
            out.push_str("\\end{tabular}\n");
            out
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|r| {
                    let mut obj = serde_json::Map::new();
                    obj.insert("n".into(), json!(r.n));
                    if let Some(k) = r.k {
                        obj.insert("k".into(), json!(k));
                    }
                    obj.insert("value".into(), r.entry.to_json());
                    serde_json::Value::Object(obj)
                })
                .collect();
            let doc = json!({
                "family": args.family,
                "lambda": args.lambda,
                "x": args.x,
                "rows": rows,
            });
            let mut text = serde_json::to_string_pretty(&doc).expect("json serializes");
            text.push('\n');
            text
        }
    }
}

/// Parses the rows of a JSON table back into entries.
pub fn parse_json_table(text: &str) -> Result<Vec<Row>, String> {
    let doc: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let rows = doc["rows"].as_array().ok_or("missing `rows` array")?;
    rows.iter()
        .map(|r| {
            let index = |key: &str| r[key].as_u64().map(|v| v as usize);
            Ok(Row {
                n: index("n").ok_or("row without `n`")?,
                k: index("k"),
                entry: Entry::from_json(&r["value"])?,
            })
        })
        .collect()
}

pub fn eval_entry(args: &EvalArgs) -> Result<Entry, CliError> {
    let family = parse_family(&args.family)?;
    check_r(family, args.r)?;
    if args.n > MAX_N {
        return Err(CliError::OutOfRange(args.n));
    }
    if family.is_triangular() && args.k > args.n {
        return Err(CliError::Usage(format!("--k {} exceeds --n {}", args.k, args.n)));
    }
    let lambda = parse_mode("lambda", &args.lambda)?;
    let x = parse_mode("x", &args.x)?;
    specialize(family.member(args.n, args.k, args.r)?, &lambda, &x)
}

pub fn suite_config(args: &VerifyArgs) -> Result<SuiteConfig, CliError> {
    if args.all == !args.filter.is_empty() {
        return Err(CliError::Usage(
            "verify needs either --all or at least one id prefix".into(),
        ));
    }
    let defaults = SuiteConfig::default();
    let filter = if args.all { None } else { Some(args.filter.clone()) };
    let mut config = SuiteConfig {
        n_max: args.n_max.unwrap_or(defaults.n_max),
        order: args.order.unwrap_or(defaults.order),
        m_max: args.m_max.unwrap_or(defaults.m_max),
        r_max: args.r.unwrap_or(defaults.r_max),
        k_max: args.k_max.unwrap_or(defaults.k_max),
        deg_max: args.deg_max.unwrap_or(defaults.deg_max),
        filter,
        negative: BTreeSet::new(),
    };
    if args.negative_control {
        config.negative = crate::identities::selected(&config)?
            .iter()
            .map(|c| c.id.to_string())
            .collect();
    }
    Ok(config)
}

fn emit(output: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Table(args) => {
            let rows = table_rows(&args)?;
            emit(&args.output, &render_table(&args, &rows), stdout)?;
            Ok(0)
        }
        Command::Eval(args) => {
            let entry = eval_entry(&args)?;
            let text = match args.format {
                Format::Csv => entry.render(Notation::Plain),
                Format::Latex => entry.render(Notation::Latex),
                Format::Json => entry.to_json().to_string(),
            };
            writeln!(stdout, "{text}")?;
            Ok(0)
        }
        Command::Verify(args) => {
            let config = suite_config(&args)?;
            let verdicts = run_all(&config)?;
            let mut text = verdicts_to_json(&verdicts);
            text.push('\n');
            emit(&args.output, &text, stdout)?;
            for v in &verdicts {
                writeln!(stderr, "{} {}", if v.passed() { "PASS" } else { "FAIL" }, v.id)?;
            }
            Ok(if all_passed(&verdicts) { 0 } else { 1 })
        }
    }
}

/// Runs the command line; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if let CliError::Identity(IdentityError::UnknownFilter(_)) = e {
                let _ = writeln!(stderr, "known identity ids: {}", identity_ids().join(", "));
            }
            2
        }
    }
}
