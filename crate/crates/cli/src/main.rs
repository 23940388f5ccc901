use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use grammarcalc::catalog::catalog_get;
use grammarcalc::identities::{
    run_all_with, run_check_with, CheckResult, Context, Egf, Profile, ProfileName, SuiteReport,
    CHECK_KEYS,
};
use grammarcalc::oracle::{distribution, stat_counts, Bounds, Family, Filter, Stat};
use grammarcalc::recurrences::{family_polynomial, triangle, FamilyName, TriangleName};
use grammarcalc::{parse_grammar, Error, Grammar, Poly, Rational, Symbol};

const MAX_N_VAR: &str = "GRAMMARCALC_MAX_N";

/// Largest row or index accepted by `triangle` and `poly`.
const MAX_ROWS: usize = 1000;

#[derive(Parser, Debug)]
#[command(
    name = "grammarcalc",
    version,
    about = "Grammar derivations, permutation statistics and identity checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply a grammar's derivative to a seed polynomial.
    Derive {
        /// Catalog key, `@path` to a grammar file, or inline rules.
        #[arg(long)]
        grammar: String,
        #[arg(long)]
        seed: Poly,
        #[arg(long)]
        steps: usize,
        /// Substitute a rational value after deriving, e.g. `y=1` or `x=-1/2`.
        #[arg(long = "set", value_parser = parse_binding)]
        set: Vec<(Symbol, Rational)>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print rows of a number triangle.
    Triangle {
        name: TriangleName,
        /// Last row index to print.
        #[arg(long)]
        rows: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print one polynomial of a named family.
    Poly {
        family: FamilyName,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Brute-force joint distribution of statistics.
    Enumerate {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        stats: Vec<Stat>,
        /// One variable per statistic; defaults to x, y, z, u, v, w.
        #[arg(long, value_delimiter = ',', value_parser = parse_symbol)]
        vars: Vec<Symbol>,
        #[arg(long, default_value = "none")]
        filter: Filter,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run identity checks; exits 1 if any fails.
    Verify {
        #[arg(long, conflicts_with = "all")]
        check: Option<String>,
        /// Run every check (the default when no check is named).
        #[arg(long)]
        all: bool,
        #[arg(long, default_value = "quick")]
        profile: ProfileName,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Coefficients `n! [t^n]` of a closed-form generating function.
    Egf {
        #[arg(long)]
        name: Egf,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

fn parse_symbol(s: &str) -> Result<Symbol, String> {
    Symbol::parse(s).ok_or_else(|| format!("`{s}` is not a symbol name"))
}

fn parse_binding(s: &str) -> Result<(Symbol, Rational), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected sym=value, got `{s}`"))?;
    let symbol = parse_symbol(name.trim())?;
    let value = value
        .trim()
        .parse::<Rational>()
        .map_err(|e| format!("`{value}` is not a rational number: {e}"))?;
    Ok((symbol, value))
}

/// Why a command did not succeed.
enum Failure {
    Usage(String),
    Computation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        if e.is_usage() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Computation(e.to_string())
        }
    }
}

/// Rendered output plus whether the command's own verdict was success.
struct Output {
    body: String,
    success: bool,
}

impl Output {
    fn ok(body: String) -> Output {
        Output {
            body,
            success: true,
        }
    }
}

fn envelope(input: Value, result: Value, status: &str) -> String {
    let v = json!({ "input": input, "result": result, "status": status });
    serde_json::to_string_pretty(&v).expect("JSON values serialize") + "\n"
}

fn bounds() -> Result<Bounds, Failure> {
    let bounds = Bounds::default();
    match std::env::var(MAX_N_VAR) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(|n| bounds.capped(n))
            .map_err(|_| {
                Failure::Usage(format!(
                    "{MAX_N_VAR} must be a non-negative integer, got `{v}`"
                ))
            }),
        Err(_) => Ok(bounds),
    }
}

fn resolve_grammar(spec: &str) -> Result<Grammar, Failure> {
    if let Some(path) = spec.strip_prefix('@') {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read grammar file `{path}`: {e}")))?;
        return Ok(parse_grammar(&text)?.with_name(path));
    }
    if let Ok(entry) = catalog_get(spec) {
        return Ok(entry.grammar.clone());
    }
    if spec.contains("->") {
        return Ok(parse_grammar(spec)?);
    }
    Err(Failure::Usage(format!(
        "`{spec}` is neither a catalog key, an @file, nor inline rules"
    )))
}

fn derive(
    grammar: &str,
    seed: &Poly,
    steps: usize,
    set: &[(Symbol, Rational)],
    format: Format,
    input: Value,
) -> Result<Output, Failure> {
    let g = resolve_grammar(grammar)?;
    let result = g.derive_n(seed, steps)?;
    let result = if set.is_empty() {
        result
    } else {
        result.evaluate(set)?
    };
    Ok(Output::ok(match format {
        Format::Text => format!("{result}\n"),
        Format::Csv => format!("steps,result\n{steps},{result}\n"),
        Format::Json => envelope(input, json!(result.to_string()), "ok"),
    }))
}

fn check_rows(n: usize) -> Result<(), Failure> {
    if n > MAX_ROWS {
        return Err(Failure::Usage(format!(
            "n = {n} exceeds the limit {MAX_ROWS}"
        )));
    }
    Ok(())
}

fn triangle_cmd(
    name: TriangleName,
    rows: usize,
    format: Format,
    input: Value,
) -> Result<Output, Failure> {
    check_rows(rows)?;
    let t = triangle(name, rows);
    let row_strings =
        |n: usize| -> Vec<String> { t.row(n).iter().map(ToString::to_string).collect() };
    let first = name.first_row();
    Ok(Output::ok(match format {
        Format::Csv => t.to_csv(),
        Format::Text => {
            let mut out = String::new();
            for n in first..=rows {
                writeln!(out, "{n}: {}", row_strings(n).join(" ")).unwrap();
            }
            out
        }
        Format::Json => {
            let result: Vec<Value> = (first..=rows)
                .map(|n| json!({ "n": n, "row": row_strings(n) }))
                .collect();
            envelope(input, json!(result), "ok")
        }
    }))
}

fn poly_cmd(family: FamilyName, n: usize, format: Format, input: Value) -> Result<Output, Failure> {
    check_rows(n)?;
    let p = family_polynomial(family, n)?;
    Ok(Output::ok(match format {
        Format::Text => format!("{p}\n"),
        Format::Csv => format!("n,result\n{n},{p}\n"),
        Format::Json => envelope(input, json!(p.to_string()), "ok"),
    }))
}

const DEFAULT_VARS: [&str; 6] = ["x", "y", "z", "u", "v", "w"];

fn enumerate(
    family: Family,
    n: usize,
    stats: &[Stat],
    vars: &[Symbol],
    filter: Filter,
    format: Format,
    input: Value,
) -> Result<Output, Failure> {
    let bounds = bounds()?;
    let vars: Vec<Symbol> = if vars.is_empty() {
        if stats.len() > DEFAULT_VARS.len() {
            return Err(Failure::Usage(format!(
                "{} statistics need --vars; only {} default variables exist",
                stats.len(),
                DEFAULT_VARS.len()
            )));
        }
        DEFAULT_VARS[..stats.len()]
            .iter()
            .map(|s| Symbol::new(s))
            .collect()
    } else {
        vars.to_vec()
    };
    if vars.len() != stats.len() {
        return Err(Failure::Usage(format!(
            "{} statistics but {} variables",
            stats.len(),
            vars.len()
        )));
    }
    if format == Format::Csv {
        let counts = stat_counts(family, n, stats, filter, bounds)?;
        let mut out: String = stats.iter().map(|s| s.name()).collect::<Vec<_>>().join(",");
        out.push_str(if stats.is_empty() {
            "count\n"
        } else {
            ",count\n"
        });
        for (values, count) in counts {
            for v in values {
                write!(out, "{v},").unwrap();
            }
            writeln!(out, "{count}").unwrap();
        }
        return Ok(Output::ok(out));
    }
    let pairs: Vec<(Stat, Symbol)> = stats.iter().copied().zip(vars.iter().copied()).collect();
    let p = distribution(family, n, &pairs, filter, bounds)?;
    Ok(Output::ok(match format {
        Format::Json => envelope(input, json!(p.to_string()), "ok"),
        _ => format!("{p}\n"),
    }))
}

fn witness_json(r: &CheckResult) -> Value {
    match &r.witness {
        None => Value::Null,
        Some(w) => json!({ "n": w.n, "lhs": w.lhs, "rhs": w.rhs, "context": w.context }),
    }
}

fn verify(
    check: Option<&str>,
    profile: ProfileName,
    format: Format,
    input: Value,
) -> Result<Output, Failure> {
    let ctx = Context::new(Profile::named(profile)).with_bounds(bounds()?);
    let report = match check {
        Some(key) => SuiteReport {
            results: vec![run_check_with(&ctx, key)?],
            uncovered_entries: Vec::new(),
        },
        None => run_all_with(&ctx),
    };
    let success = report.passed();
    let verdict = if success { "pass" } else { "fail" };
    let body = match format {
        Format::Text => {
            let mut out = String::new();
            for r in &report.results {
                writeln!(
                    out,
                    "{:<4}  {:<16}  n={}..={}",
                    r.status,
                    r.key,
                    r.range.start(),
                    r.range.end()
                )
                .unwrap();
                if let Some(w) = &r.witness {
                    let context = w
                        .context
                        .as_deref()
                        .map(|c| format!(" [{c}]"))
                        .unwrap_or_default();
                    writeln!(out, "      witness at n={}{context}", w.n).unwrap();
                    writeln!(out, "        lhs: {}", w.lhs).unwrap();
                    writeln!(out, "        rhs: {}", w.rhs).unwrap();
                }
            }
            if !report.uncovered_entries.is_empty() {
                writeln!(
                    out,
                    "catalog entries not exercised: {}",
                    report.uncovered_entries.join(", ")
                )
                .unwrap();
            }
            let passed = report.results.iter().filter(|r| r.passed()).count();
            writeln!(
                out,
                "{passed}/{} checks passed ({profile} profile)",
                report.results.len()
            )
            .unwrap();
            out
        }
        Format::Csv => {
            let mut out = String::from("key,n_min,n_max,status,witness_n\n");
            for r in &report.results {
                let wn = r
                    .witness
                    .as_ref()
                    .map(|w| w.n.to_string())
                    .unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{},{},{wn}",
                    r.key,
                    r.range.start(),
                    r.range.end(),
                    r.status
                )
                .unwrap();
            }
            out
        }
        Format::Json => {
            let checks: Vec<Value> = report
                .results
                .iter()
                .map(|r| {
                    json!({
                        "key": r.key,
                        "range": [r.range.start(), r.range.end()],
                        "status": r.status.to_string(),
                        "witness": witness_json(r),
                    })
                })
                .collect();
            let result = json!({ "checks": checks, "uncovered_entries": report.uncovered_entries });
            envelope(input, result, verdict)
        }
    };
    Ok(Output { body, success })
}

fn egf(name: Egf, order: usize, format: Format, input: Value) -> Result<Output, Failure> {
    check_rows(order)?;
    let series = grammarcalc::identities::egf_reference(name, order)?;
    let coeffs: Vec<String> = (0..=order)
        .map(|n| series.egf_coeff(n).to_string())
        .collect();
    Ok(Output::ok(match format {
        Format::Text => coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| format!("{n}: {c}\n"))
            .collect(),
        Format::Csv => {
            let mut out = String::from("n,coefficient\n");
            for (n, c) in coeffs.iter().enumerate() {
                writeln!(out, "{n},{c}").unwrap();
            }
            out
        }
        Format::Json => envelope(input, json!(coeffs), "ok"),
    }))
}

fn format_of(command: &Command) -> Format {
    match command {
        Command::Derive { format, .. }
        | Command::Triangle { format, .. }
        | Command::Poly { format, .. }
        | Command::Enumerate { format, .. }
        | Command::Verify { format, .. }
        | Command::Egf { format, .. } => *format,
    }
}

/// The request echoed back in JSON output.
fn input_json(command: &Command) -> Value {
    match command {
        Command::Derive {
            grammar,
            seed,
            steps,
            set,
            ..
        } => {
            let set: serde_json::Map<String, Value> = set
                .iter()
                .map(|(s, v)| (s.to_string(), json!(v.to_string())))
                .collect();
            json!({
                "command": "derive",
                "grammar": grammar,
                "seed": seed.to_string(),
                "steps": steps,
                "set": set,
            })
        }
        Command::Triangle { name, rows, .. } => {
            json!({ "command": "triangle", "name": name.name(), "rows": rows })
        }
        Command::Poly { family, n, .. } => {
            json!({ "command": "poly", "family": family.name(), "n": n })
        }
        Command::Enumerate {
            family,
            n,
            stats,
            vars,
            filter,
            ..
        } => json!({
            "command": "enumerate",
            "family": family.to_string(),
            "n": n,
            "stats": stats.iter().map(|s| s.name()).collect::<Vec<_>>(),
            "vars": vars.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "filter": filter.to_string(),
        }),
        Command::Verify { check, profile, .. } => json!({
            "command": "verify",
            "checks": check.as_ref().map_or_else(|| json!(CHECK_KEYS), |k| json!([k])),
            "profile": profile.to_string(),
        }),
        Command::Egf { name, order, .. } => {
            json!({ "command": "egf", "name": name.name(), "order": order })
        }
    }
}

fn execute(command: &Command) -> Result<Output, Failure> {
    let input = input_json(command);
    match command {
        Command::Derive {
            grammar,
            seed,
            steps,
            set,
            format,
        } => derive(grammar, seed, *steps, set, *format, input),
        Command::Triangle { name, rows, format } => triangle_cmd(*name, *rows, *format, input),
        Command::Poly { family, n, format } => poly_cmd(*family, *n, *format, input),
        Command::Enumerate {
            family,
            n,
            stats,
            vars,
            filter,
            format,
        } => enumerate(*family, *n, stats, vars, *filter, *format, input),
        Command::Verify {
            check,
            all: _,
            profile,
            format,
        } => verify(check.as_deref(), *profile, *format, input),
        Command::Egf {
            name,
            order,
            format,
        } => egf(*name, *order, *format, input),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(out) => {
            print!("{}", out.body);
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Computation(msg)) => {
            if format_of(&cli.command) == Format::Json {
                let v = json!({
                    "input": input_json(&cli.command),
                    "result": Value::Null,
                    "status": "error",
                    "error": msg,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&v).expect("JSON values serialize")
                );
            }
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
