//! The `milnor` command line.
//!
//! Results go to the output stream, diagnostics to the error stream. Exit
//! status is 0 on success, 1 when a computation comes out mathematically
//! negative (non-isolated singularity, non-polynomial Hilbert series, a
//! failed identity or exactness check, a corpus mismatch) and 2 for usage,
//! parse and input errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::corpus::{self, Expectation};
use crate::error::Error;
use crate::grading::{self, WeightSystem};
use crate::koszul;
use crate::milnor;
use crate::poly::{self, Polynomial};
use crate::series;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "milnor", version, about = "Milnor numbers of weighted-homogeneous singularities")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "plain", global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Infer the primitive weight system of a polynomial.
    Infer {
        /// Polynomial in expanded form, e.g. "x^3 + y^5".
        #[arg(long)]
        poly: String,
        /// Variable order, comma separated (default: sorted names in POLY).
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
    },
    /// Milnor number of a polynomial by all routes, or of a bare type.
    #[command(group(ArgGroup::new("input").required(true).args(["poly", "type_"])))]
    Mu {
        /// Polynomial in expanded form, e.g. "x^3 + y^5".
        #[arg(long)]
        poly: Option<String>,
        /// Variable order, comma separated (default: sorted names in POLY).
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        /// Weight system `w1,...,wr;d` (default: inferred).
        #[arg(long, value_parser = parse_weights, conflicts_with = "type_")]
        weights: Option<WeightSystem>,
        /// Weight system `w1,...,wr;d`; only the formula and series routes run.
        #[arg(long = "type", value_parser = parse_weights, conflicts_with_all = ["poly", "vars"])]
        type_: Option<WeightSystem>,
    },
    /// Hilbert series of the weighted ring and Poincare polynomial of the type.
    Hilbert {
        /// Weight system `w1,...,wr;d`.
        #[arg(long = "type", value_parser = parse_weights)]
        type_: WeightSystem,
        /// Truncation order (default: r d).
        #[arg(long)]
        order: Option<usize>,
    },
    /// Both sides of the numerator identity and whether they agree.
    Lemma {
        /// Weight system `w1,...,wr;d`.
        #[arg(long = "type", value_parser = parse_weights)]
        type_: WeightSystem,
    },
    /// Koszul complex shifts and degreewise exactness.
    Koszul {
        /// Polynomial in expanded form, e.g. "x^3 + y^5".
        #[arg(long)]
        poly: String,
        /// Variable order, comma separated (default: sorted names in POLY).
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        /// Weight system `w1,...,wr;d` (default: inferred).
        #[arg(long, value_parser = parse_weights)]
        weights: Option<WeightSystem>,
        /// Largest degree checked (default: socle bound plus largest weight).
        #[arg(long)]
        max_degree: Option<u64>,
    },
    /// Run a corpus file of `name ; polynomial ; expected` lines.
    Corpus {
        /// Corpus file path.
        #[arg(long)]
        file: std::path::PathBuf,
    },
}

fn parse_weights(s: &str) -> std::result::Result<WeightSystem, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(CliError::Math(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_NEGATIVE
        }
        Err(CliError::Input(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

enum CliError {
    Math(Error),
    Input(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotIsolated | Error::NotPolynomial => CliError::Math(e),
            _ => CliError::Input(e),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult = std::result::Result<i32, CliError>;

fn read_polynomial(text: &str, vars: &Option<Vec<String>>) -> Result<Polynomial, Error> {
    let vars = match vars {
        Some(v) => v.iter().map(|s| s.trim().to_string()).collect(),
        None => poly::scan_variables(text)?,
    };
    poly::parse_polynomial(text, vars)
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> std::io::Result<()> {
    // Value maps are ordered, so keys come out sorted
    let value = serde_json::to_value(value).expect("serializable");
    writeln!(out, "{value}")
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Infer { poly, vars } => {
            let f = read_polynomial(poly, vars)?;
            let ws = grading::infer_weight_system(&f)?;
            if json {
                emit_json(out, &ws)?;
            } else {
                writeln!(out, "{ws}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Mu {
            poly: Some(poly),
            vars,
            weights,
            ..
        } => {
            let f = read_polynomial(poly, vars)?;
            let report = milnor::full_report(&f, weights.as_ref())?;
            if json {
                emit_json(out, &report)?;
            } else {
                writeln!(out, "type        {}", report.weight_system)?;
                writeln!(out, "formula     {}", report.mu_formula)?;
                match (&report.mu_series, &report.poincare) {
                    (Some(mu), Some(p)) => writeln!(out, "series      {mu}    ({p})")?,
                    _ => writeln!(out, "series      not a polynomial")?,
                }
                match report.mu_oracle {
                    Some(mu) => writeln!(out, "oracle      {mu}")?,
                    None => writeln!(out, "oracle      not isolated")?,
                }
                writeln!(out, "dims        {}", join(&report.per_degree_dims))?;
                writeln!(out, "isolated    {}", report.isolated)?;
                writeln!(out, "consistent  {}", report.consistent)?;
            }
            Ok(if report.consistent { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Mu {
            type_: Some(ws), ..
        } => {
            let report = milnor::type_report(ws)?;
            if json {
                emit_json(out, &report)?;
            } else {
                writeln!(out, "type        {ws}")?;
                writeln!(out, "formula     {}", report.mu_formula)?;
                match (&report.mu_series, &report.poincare) {
                    (Some(mu), Some(p)) => writeln!(out, "series      {mu}    ({p})")?,
                    _ => writeln!(out, "series      not a polynomial")?,
                }
            }
            Ok(if report.poincare.is_some() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Mu { .. } => unreachable!("clap requires --poly or --type"),
        Command::Hilbert { type_: ws, order } => {
            let order = order.unwrap_or((ws.nvars() as u64 * ws.degree()) as usize);
            let ring = series::ring_hilbert_series(ws.weights(), order);
            let poincare = match series::milnor_poincare_polynomial(ws) {
                Ok(p) => Some(p),
                Err(Error::NotPolynomial) => None,
                Err(e) => return Err(e.into()),
            };
            if json {
                emit_json(
                    out,
                    &json!({
                        "weights": ws.weights(),
                        "degree": ws.degree(),
                        "ring_series": ring,
                        "poincare": poincare,
                    }),
                )?;
            } else {
                writeln!(out, "type      {ws}")?;
                writeln!(out, "HS_S      {} (through t^{order})", join(ring.coeffs()))?;
                match &poincare {
                    Some(p) => writeln!(out, "HS_M      {p}")?,
                    None => writeln!(out, "HS_M      not a polynomial")?,
                }
            }
            Ok(if poincare.is_some() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Lemma { type_: ws } => {
            let product = series::product_numerator(ws)?;
            let expansion = series::lemma_expansion(ws)?;
            let equal = product == expansion;
            if json {
                emit_json(
                    out,
                    &json!({
                        "weights": ws.weights(),
                        "degree": ws.degree(),
                        "product": product,
                        "expansion": expansion,
                        "equal": equal,
                    }),
                )?;
            } else {
                writeln!(out, "type       {ws}")?;
                writeln!(out, "product    {product}")?;
                writeln!(out, "expansion  {expansion}")?;
                writeln!(out, "equal      {equal}")?;
            }
            Ok(if equal { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Koszul {
            poly,
            vars,
            weights,
            max_degree,
        } => {
            let f = read_polynomial(poly, vars)?;
            let ws = match weights {
                Some(ws) => ws.clone(),
                None => grading::infer_weight_system(&f)?,
            };
            let resolution = koszul::koszul_shifts(&ws)?;
            let alpha_max = max_degree.unwrap_or(milnor::socle_bound(&ws) + ws.max_weight());
            let report = koszul::verify_exactness(&f, &ws, alpha_max)?;
            let ok = report.all_exact()
                && report.complex_property_holds()
                && report.coker_matches_series == Some(true);
            if json {
                emit_json(
                    out,
                    &json!({
                        "weights": ws.weights(),
                        "degree": ws.degree(),
                        "max_degree": alpha_max,
                        "resolution": resolution,
                        "exactness": report,
                    }),
                )?;
            } else {
                writeln!(out, "type        {ws}")?;
                for (k, _) in resolution.terms.iter().enumerate() {
                    writeln!(out, "K_{k} shifts  {}", join(&resolution.shifts(k)))?;
                }
                writeln!(out, "checked     degrees 0..={alpha_max}")?;
                let failures: Vec<String> = report
                    .failures()
                    .map(|s| format!("(k={}, alpha={})", s.k, s.alpha))
                    .collect();
                if failures.is_empty() {
                    writeln!(out, "exact       true")?;
                } else {
                    writeln!(out, "exact       false at {}", failures.join(" "))?;
                }
                writeln!(out, "d^2 = 0     {}", report.complex_property_holds())?;
                writeln!(out, "coker dims  {}", join(&report.coker_dims))?;
                match report.coker_matches_series {
                    Some(m) => writeln!(out, "matches HS  {m}")?,
                    None => writeln!(out, "matches HS  no Poincare polynomial")?,
                }
            }
            Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Corpus { file } => {
            let text = std::fs::read_to_string(file)?;
            let cases = corpus::parse_corpus(&text)?;
            let outcomes = corpus::run_corpus(&cases);
            let all_passed = outcomes.iter().all(|o| o.passed);
            if json {
                let cases: Vec<_> = outcomes
                    .iter()
                    .map(|o| {
                        let expected = match o.case.expected {
                            Expectation::Mu(mu) => json!(mu),
                            Expectation::NonIsolated => json!("NONISOLATED"),
                        };
                        let (report, error) = match &o.report {
                            Ok(r) => (serde_json::to_value(r).expect("serializable"), None),
                            Err(e) => (serde_json::Value::Null, Some(e.to_string())),
                        };
                        json!({
                            "name": o.case.name,
                            "line": o.case.line,
                            "expected": expected,
                            "passed": o.passed,
                            "report": report,
                            "error": error,
                        })
                    })
                    .collect();
                emit_json(out, &json!({ "cases": cases, "passed": all_passed }))?;
            } else {
                for o in &outcomes {
                    let verdict = if o.passed { "ok  " } else { "FAIL" };
                    let detail = match &o.report {
                        Ok(r) => match r.mu() {
                            Some(mu) => format!("mu = {mu}, type {}", r.weight_system),
                            None if !r.isolated => format!("not isolated, type {}", r.weight_system),
                            None => format!("routes disagree, type {}", r.weight_system),
                        },
                        Err(e) => format!("error: {e}"),
                    };
                    writeln!(out, "{verdict} {:<14} {detail}", o.case.name)?;
                }
                let passed = outcomes.iter().filter(|o| o.passed).count();
                writeln!(out, "{passed}/{} cases passed", outcomes.len())?;
            }
            Ok(if all_passed { EXIT_OK } else { EXIT_NEGATIVE })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("milnor").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn conflicting_inputs_are_usage_errors() {
        let (code, _, err) = run_args(&["mu", "--poly", "x^3+y^5", "--type", "5,3;15"]);
        assert_eq!(code, EXIT_USAGE, "{err}");
        let (code, _, _) = run_args(&["mu"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, _, _) = run_args(&["hilbert", "--type", "1,1"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn parse_errors_exit_two() {
        let (code, out, err) = run_args(&["infer", "--poly", "x^3 + * y"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(out.is_empty());
        assert!(err.contains("position 6"), "{err}");
    }

    #[test]
    fn help_goes_to_output() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("koszul"));
    }
}
