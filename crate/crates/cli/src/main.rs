//! `haarmoments`: exact Haar integrals over U(d) from the command line.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! input errors.

mod matrix;
mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use haarmoments::characters::character_table;
use haarmoments::combinatorics::{partitions_of, Partition};
use haarmoments::symfunc::{kronecker, schur_poly, schur_tensor_expand, RationalVector};
use haarmoments::tensorops::{
    exact_grid_for, exact_vs_mc_report, haar_sample, trace_power_integrand, unitarity_residual, weyl_quadrature,
    ComplexMatrix, McParams, RngStream, MC_IDENTITIES,
};
use haarmoments::weingarten::{
    conditional_expectation, format_gaussian, format_rational, monomial_integral, parse_rational, set_dense_cap,
    trace_power_moment, twirl_power, weingarten_fn, ExactOperator, MAX_TRACE_MOMENT_WEIGHT,
};
use serde_json::{json, Map, Value};

use verify::{VerifyParams, IDENTITIES};

#[derive(Debug, Parser)]
#[command(name = "haarmoments", version, about = "Exact Haar-measure integrals over U(d)")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct Config {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest dense operator dimension d^k (at least 16).
    #[arg(long, global = true, env = "HAARMOMENTS_CAP", value_parser = clap::value_parser!(u64).range(16..))]
    cap: Option<u64>,
    /// Seed for every random stream.
    #[arg(long, global = true, default_value_t = 20240611)]
    seed: u64,
    /// Digits after the decimal point for floating-point text output.
    #[arg(long, global = true, default_value_t = 6)]
    precision: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Weingarten function on S_K for U(D), keyed by cycle type.
    Wg { k: usize, d: usize },
    /// Integral of U_{I1 J1}...U_{Ik Jk} conj(U_{I'1 J'1})...conj(U_{I'k J'k}), 1-based indices.
    Moment {
        #[arg(long, value_delimiter = ',')]
        rows: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        cols: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        rows2: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        cols2: Vec<usize>,
        #[arg(short)]
        d: usize,
    },
    /// Twirl of a matrix read from a JSON file.
    Twirl {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(short)]
        k: usize,
        /// `power`: integrate (U X U†)^{⊗k} for X on C^d.
        /// `operator`: integrate U^{⊗k} A U^{†⊗k} for A on (C^d)^{⊗k}.
        #[arg(long, value_enum, default_value_t = TwirlMode::Power)]
        mode: TwirlMode,
    },
    /// Character table of S_K.
    Chartable { k: usize },
    /// Schur polynomial s_λ at a point, or at x⊗y when --y is given.
    Schur {
        lambda: Partition,
        /// Comma-separated rationals.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "ones")]
        x: Vec<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        y: Vec<String>,
        /// Evaluate at 1^D instead.
        #[arg(long, short = 'd')]
        ones: Option<usize>,
    },
    /// Kronecker coefficient g_{λμν}.
    Kron { lambda: Partition, mu: Partition, nu: Partition },
    /// Haar-random unitaries.
    Sample {
        #[arg(short)]
        d: usize,
        #[arg(short, default_value_t = 1)]
        n: usize,
    },
    /// Weyl quadrature of |Tr U^K|^{2P} over U(N).
    Quad {
        #[arg(long)]
        n: usize,
        /// Points per axis; defaults to the smallest exact grid.
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        moment: usize,
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    /// Exact value against a Monte Carlo estimate.
    Mcverify {
        identity: String,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(short, default_value_t = 2)]
        k: usize,
        #[arg(short, default_value_t = 3)]
        d: usize,
        /// Exponent n in |Tr U^k|^{2n} for `trpow`.
        #[arg(long, default_value_t = 2)]
        power: usize,
        /// Dimension of subsystem B for `purity`.
        #[arg(long, default_value_t = 2)]
        db: usize,
    },
    /// Run a registered self-check, or `all` of them.
    Verify {
        name: String,
        #[arg(short, default_value_t = 3)]
        k: usize,
        #[arg(short, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TwirlMode {
    Power,
    Operator,
}

/// Usage and input problems; all map to exit code 2.
#[derive(Debug)]
pub struct CliError(String);

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError(msg.into())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<haarmoments::Error> for CliError {
    fn from(e: haarmoments::Error) -> Self {
        CliError(e.to_string())
    }
}

/// A command's result in both output forms.
struct Output {
    json: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Output { json, text, ok: true }
    }
}

fn parse_values(items: &[String]) -> Result<RationalVector, CliError> {
    let values = items.iter().map(|s| parse_rational(s)).collect::<haarmoments::Result<Vec<_>>>()?;
    Ok(RationalVector::new(values)?)
}

fn operator_json(op: &ExactOperator) -> Value {
    Value::Array(
        op.rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(|z| json!([format_rational(&z.re), format_rational(&z.im)])).collect()))
            .collect(),
    )
}

fn float_matrix_text(m: &ComplexMatrix, precision: usize) -> String {
    let mut out = String::new();
    for r in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|c| format!("{:+.p$}{:+.p$}i", m[(r, c)].re, m[(r, c)].im, p = precision))
            .collect();
        let _ = writeln!(out, "{}", row.join("  "));
    }
    out
}

fn wg(k: usize, d: usize) -> Result<Output, CliError> {
    let wg = weingarten_fn(k, d)?;
    let mut map = Map::new();
    let mut text = String::new();
    for gamma in partitions_of(k, None) {
        let v = format_rational(&wg.value(&gamma));
        let _ = writeln!(text, "{}\t{v}", gamma.paren());
        map.insert(gamma.paren(), Value::String(v));
    }
    Ok(Output::new(Value::Object(map), text))
}

fn moment(rows: &[usize], cols: &[usize], rows2: &[usize], cols2: &[usize], d: usize) -> Result<Output, CliError> {
    if rows.len() != rows2.len() {
        return Err(CliError::input(format!(
            "--rows has {} indices but --rows2 has {}",
            rows.len(),
            rows2.len()
        )));
    }
    let value = format_rational(&monomial_integral(rows, cols, rows2, cols2, d)?);
    Ok(Output::new(json!({ "value": value }), format!("{value}\n")))
}

fn twirl(path: &PathBuf, k: usize, mode: TwirlMode) -> Result<Output, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let rows = matrix::parse_matrix(&text)?;
    match mode {
        TwirlMode::Power => {
            let x = ExactOperator::from_rows(rows)?;
            let tp = twirl_power(&x, k)?;
            let mut coeffs = Map::new();
            let mut out = String::new();
            for (lambda, c) in &tp.coefficients {
                let _ = writeln!(out, "Δ{}\t{}", lambda.paren(), format_gaussian(c));
                coeffs.insert(lambda.paren(), Value::String(format_gaussian(c)));
            }
            let _ = writeln!(out, "{}", tp.operator.to_text());
            let json = json!({ "k": k, "d": x.d(), "coefficients": coeffs, "operator": operator_json(&tp.operator) });
            Ok(Output::new(json, out))
        }
        TwirlMode::Operator => {
            let a = matrix::operator_from_rows(rows, k)?;
            let e = conditional_expectation(&a)?;
            let json = json!({ "k": k, "d": a.d(), "operator": operator_json(&e) });
            Ok(Output::new(json, format!("{}\n", e.to_text())))
        }
    }
}

fn chartable(k: usize) -> Result<Output, CliError> {
    let table = character_table(k)?;
    let labels: Vec<String> = table.partitions().iter().map(|p| p.to_string()).collect();
    let rows: Vec<Vec<String>> = table.rows().iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1).max(2);
    let mut text = String::new();
    for (label, row) in table.partitions().iter().zip(&rows) {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
        let _ = writeln!(text, "{:<12}{}", label.paren(), cells.join(" "));
    }
    Ok(Output::new(json!({ "k": k, "partitions": labels, "table": rows }), text))
}

fn schur(lambda: &Partition, x: &[String], y: &[String], ones: Option<usize>) -> Result<Output, CliError> {
    let x = match ones {
        Some(d) => RationalVector::ones(d)?,
        None if x.is_empty() => return Err(CliError::input("give the point with --x or -d")),
        None => parse_values(x)?,
    };
    if y.is_empty() {
        let v = format_rational(&schur_poly(lambda, &x));
        return Ok(Output::new(
            json!({ "lambda": lambda.to_string(), "value": v }),
            format!("{v}\n"),
        ));
    }
    let y = parse_values(y)?;
    let direct = format_rational(&schur_poly(lambda, &x.tensor(&y)));
    let expanded = format_rational(&schur_tensor_expand(lambda, &x, &y));
    let text = format!("{direct}\nvia Kronecker expansion: {expanded}\n");
    Ok(Output::new(
        json!({ "lambda": lambda.to_string(), "value": direct, "expanded": expanded }),
        text,
    ))
}

fn kron(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<Output, CliError> {
    let g = kronecker(lambda, mu, nu)?.to_string();
    let json = json!({ "lambda": lambda.to_string(), "mu": mu.to_string(), "nu": nu.to_string(), "value": g });
    Ok(Output::new(json, format!("{g}\n")))
}

fn sample(d: usize, n: usize, seed: u64, precision: usize) -> Result<Output, CliError> {
    let mut samples = Vec::new();
    let mut text = String::new();
    for i in 0..n {
        let u = haar_sample(d, &RngStream::new(seed, i as u64))?;
        let residual = unitarity_residual(&u);
        let entries: Vec<Value> = (0..d)
            .map(|r| Value::Array((0..d).map(|c| json!([u[(r, c)].re, u[(r, c)].im])).collect()))
            .collect();
        samples.push(json!({ "index": i, "unitarity_residual": residual, "matrix": entries }));
        let _ = writeln!(text, "# sample {i}, ‖U†U − 1‖ = {residual:.1e}");
        text += &float_matrix_text(&u, precision);
    }
    Ok(Output::new(json!({ "d": d, "seed": seed, "samples": samples }), text))
}

fn quad(n: usize, grid: Option<usize>, k: usize, power: u32, precision: usize) -> Result<Output, CliError> {
    if k == 0 {
        return Err(CliError::input("--moment must be at least 1"));
    }
    let grid = grid.unwrap_or_else(|| exact_grid_for(k * power as usize, n));
    let v = weyl_quadrature(trace_power_integrand(k as i64, power), n, grid)?;
    let exact = if k * power as usize <= MAX_TRACE_MOMENT_WEIGHT {
        Some(format_rational(&trace_power_moment(k, power as usize, n)?))
    } else {
        None
    };
    let mut text = format!("{:.p$}", v.re, p = precision);
    if let Some(e) = &exact {
        text += &format!("\texact {e}");
    }
    text.push('\n');
    let json = json!({ "n": n, "grid": grid, "moment": k, "power": power, "value": v.re, "imag": v.im, "exact": exact });
    Ok(Output::new(json, text))
}

fn mcverify(identity: &str, params: McParams, samples: usize, seed: u64, precision: usize) -> Result<Output, CliError> {
    let r = exact_vs_mc_report(identity, &params, samples, &RngStream::new(seed, 0))?;
    let mut json = json!({
        "identity": r.identity,
        "exact": r.exact,
        "estimate": r.estimate.re,
        "estimate_im": r.estimate.im,
        "stderr": r.stderr,
        "z": r.z,
        "pass": r.pass,
        "samples": r.samples,
    });
    if let Some((row, col)) = r.entry {
        json["entry"] = json!([row, col]);
    }
    let text = format!(
        "{} {}: exact {}, estimate {:.p$}{:+.p$}i ± {:.p$}, z = {:.2}\n",
        if r.pass { "PASS" } else { "FAIL" },
        r.identity,
        r.exact,
        r.estimate.re,
        r.estimate.im,
        r.stderr,
        r.z,
        p = precision
    );
    Ok(Output { json, text, ok: r.pass })
}

fn run_verify(name: &str, params: VerifyParams) -> Result<Output, CliError> {
    let selected: Vec<_> = if name == "all" {
        IDENTITIES.iter().collect()
    } else {
        IDENTITIES.iter().filter(|(n, _, _)| *n == name).collect()
    };
    if selected.is_empty() {
        return Err(CliError::input(format!(
            "unknown identity `{name}`; registered identities: all, {}",
            verify::names().join(", ")
        )));
    }
    // run concurrently, report in registration order
    let results: Vec<(bool, String)> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|(_, _, routine)| scope.spawn(move || routine(&params)))
            .collect();
        handles
            .into_iter()
            .map(|h| match h.join() {
                Ok(Ok(check)) => (check.pass, check.detail),
                Ok(Err(e)) => (false, format!("error: {e}")),
                Err(_) => (false, "panicked".to_string()),
            })
            .collect()
    });
    let mut text = String::new();
    let mut reports = Vec::new();
    for ((name, criterion, _), (pass, detail)) in selected.iter().zip(&results) {
        let _ = writeln!(text, "{} {name} (criterion {criterion}): {detail}", if *pass { "PASS" } else { "FAIL" });
        reports.push(json!({ "identity": name, "criterion": criterion, "pass": pass, "detail": detail }));
    }
    let ok = results.iter().all(|(pass, _)| *pass);
    let json = json!({ "k": params.k, "d": params.d, "seed": params.seed, "pass": ok, "reports": reports });
    Ok(Output { json, text, ok })
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    let Config { seed, precision, .. } = cli.config;
    match &cli.command {
        Command::Wg { k, d } => wg(*k, *d),
        Command::Moment { rows, cols, rows2, cols2, d } => moment(rows, cols, rows2, cols2, *d),
        Command::Twirl { matrix, k, mode } => twirl(matrix, *k, *mode),
        Command::Chartable { k } => chartable(*k),
        Command::Schur { lambda, x, y, ones } => schur(lambda, x, y, *ones),
        Command::Kron { lambda, mu, nu } => kron(lambda, mu, nu),
        Command::Sample { d, n } => sample(*d, *n, seed, precision),
        Command::Quad { n, grid, moment, power } => quad(*n, *grid, *moment, *power, precision),
        Command::Mcverify { identity, samples, k, d, power, db } => {
            if !MC_IDENTITIES.contains(&identity.as_str()) {
                return Err(CliError::input(format!(
                    "unknown identity `{identity}`; registered identities: {}",
                    MC_IDENTITIES.join(", ")
                )));
            }
            let params = McParams { k: *k, d: *d, power: *power, d_b: *db };
            mcverify(identity, params, *samples, seed, precision)
        }
        Command::Verify { name, k, d, samples } => run_verify(
            name,
            VerifyParams { k: *k, d: *d, seed, samples: *samples },
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    if let Some(cap) = cli.config.cap {
        if let Err(e) = set_dense_cap(cap as usize) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match dispatch(&cli) {
        Ok(out) => {
            match cli.config.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("values serialize")),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
