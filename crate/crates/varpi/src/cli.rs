//! Command-line surface tying the pipelines together.
//!
//! Six subcommands: `omega` (count tables, optionally cross-checked across
//! all three pipelines), `invert` (generating function → field data),
//! `forward` (field data → generating function), `word` (a single operator
//! word by two pipelines), `axioms` (randomized law suite), and `bound`
//! (derivative-bound right-hand sides).
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 input error,
//! 3 budget exceeded. Identical invocations produce byte-identical output;
//! machine output renders rationals as `p/q`, while decimal columns are
//! display-only approximations with 12 significant digits.

use std::fmt::{self, Write as _};
use std::path::Path;

use clap::{Args, Parser, Subcommand};

use crate::bialgebra::run_axiom_suite;
use crate::calculus::{bound_pair, eval_word, BoundInput, CalculusError, OperatorWord};
use crate::files::{CoeffFile, CoeffKind, FileError};
use crate::matrix::{expand_word, ExpansionBudget, MatrixError, WeightSeq};
use crate::model::{
    model_from_gf, omega_table, resolve_field, resolve_gf, resolve_model, working_order, Method,
    Mode, ModelError, PipelineError,
};
use crate::rational::{factorial, Rational};
use crate::series::{phi_from_f, SeriesError};

/// Classified failure; the variant fixes the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// A cross-check or law suite failed (exit 1). `stdout` carries any
    /// report that should still be printed.
    Verification { stdout: String, message: String },
    /// Unusable input: unknown model, malformed file, bad flag value (exit 2).
    Input(String),
    /// The expansion outgrew its state budget (exit 3).
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification { .. } => 1,
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    /// Output that should reach stdout even though the run failed.
    pub fn stdout(&self) -> Option<&str> {
        match self {
            CliError::Verification { stdout, .. } if !stdout.is_empty() => Some(stdout),
            _ => None,
        }
    }

    fn verification(message: String) -> Self {
        CliError::Verification {
            stdout: String::new(),
            message,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Verification { message, .. } => write!(f, "{message}"),
            CliError::Input(message) => write!(f, "{message}"),
            CliError::Budget(message) => write!(f, "{message}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<MatrixError> for CliError {
    fn from(err: MatrixError) -> Self {
        match err {
            MatrixError::BudgetExceeded { .. } => CliError::Budget(err.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ModelError> for CliError {
    fn from(err: ModelError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<SeriesError> for CliError {
    fn from(err: SeriesError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<FileError> for CliError {
    fn from(err: FileError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<CalculusError> for CliError {
    fn from(err: CalculusError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<PipelineError> for CliError {
    fn from(err: PipelineError) -> Self {
        match err {
            PipelineError::Mismatch(_) => CliError::verification(err.to_string()),
            PipelineError::Matrix(inner) => inner.into(),
            PipelineError::Series(inner) => inner.into(),
            PipelineError::Calculus(inner) => inner.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Tsv,
    Json,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse()
        .map_err(|_| format!("{s:?} is not a rational (expected e.g. 3 or -1/2)"))
}

fn parse_method(s: &str) -> Result<Method, String> {
    match s {
        "matrix" => Ok(Method::Matrix),
        "series" => Ok(Method::Series),
        "calculus" => Ok(Method::Calculus),
        "all" => Ok(Method::All),
        _ => Err(format!(
            "{s:?} is not a method (matrix, series, calculus, all)"
        )),
    }
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    match s {
        "normalize" => Ok(Mode::Normalize),
        "shift" => Ok(Mode::Shift),
        _ => Err(format!("{s:?} is not a mode (normalize, shift)")),
    }
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    match s {
        "tsv" => Ok(OutputFormat::Tsv),
        "json" => Ok(OutputFormat::Json),
        _ => Err(format!("{s:?} is not an output format (tsv, json)")),
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "varpi",
    version,
    about = "Exact count pipelines for ordered-exponential models",
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Table of counts 0..=n, by one pipeline or by all three with an
    /// exact cross-check
    Omega(OmegaArgs),
    /// Recover field coefficients b_k from a generating function
    /// (emits egf-b JSON)
    Invert(InvertArgs),
    /// Build generating-function coefficients from field data
    /// (emits series-c JSON)
    Forward(ForwardArgs),
    /// Evaluate one operator word over {A, B} by the matrix and the
    /// calculus pipeline; they must agree
    Word(WordArgs),
    /// Run the randomized algebraic-law suite and print its JSON report
    Axioms(AxiomsArgs),
    /// Derivative-bound right-hand sides for given d, C, n
    Bound(BoundArgs),
}

#[derive(Args, Debug)]
pub struct OmegaArgs {
    /// Catalog name (base, catalan, bell, binomial, expsin, zero) or
    /// coefficient-file path
    #[arg(long)]
    pub model: String,
    /// Parameter for the binomial model, e.g. -1/2
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub alpha: Option<Rational>,
    /// Largest table index
    #[arg(long)]
    pub n: usize,
    /// matrix | series | calculus | all
    #[arg(long, default_value = "all", value_parser = parse_method)]
    pub method: Method,
    /// Preprocessing for generating-function inputs: normalize | shift
    #[arg(long, default_value = "normalize", value_parser = parse_mode)]
    pub mode: Mode,
    /// tsv | json
    #[arg(long, default_value = "tsv", value_parser = parse_format)]
    pub format: OutputFormat,
    /// State-count ceiling for the matrix expansion
    #[arg(long, default_value_t = ExpansionBudget::DEFAULT_MAX_STATES)]
    pub budget: usize,
}

#[derive(Args, Debug)]
pub struct InvertArgs {
    /// Generating function: catalog name or series-c file
    #[arg(long = "F")]
    pub big_f: String,
    /// Parameter for the binomial model
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub alpha: Option<Rational>,
    /// Top coefficient index of the emitted field data
    #[arg(long, default_value_t = 10)]
    pub order: usize,
    /// normalize | shift
    #[arg(long, default_value = "normalize", value_parser = parse_mode)]
    pub mode: Mode,
}

#[derive(Args, Debug)]
pub struct ForwardArgs {
    /// Field data: catalog name, "zero", or coefficient file
    #[arg(long = "f")]
    pub f: String,
    /// Parameter for the binomial model
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub alpha: Option<Rational>,
    /// Top coefficient index of the emitted generating function
    #[arg(long, default_value_t = 10)]
    pub order: usize,
}

#[derive(Args, Debug)]
pub struct WordArgs {
    /// Letters A and B, rightmost applied first; may be empty
    #[arg(long, default_value = "")]
    pub word: String,
    /// Model supplying the weights and the generating function
    #[arg(long, default_value = "base")]
    pub model: String,
    /// Parameter for the binomial model
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub alpha: Option<Rational>,
    /// normalize | shift
    #[arg(long, default_value = "normalize", value_parser = parse_mode)]
    pub mode: Mode,
    /// tsv | json
    #[arg(long, default_value = "tsv", value_parser = parse_format)]
    pub format: OutputFormat,
    /// State-count ceiling for the matrix expansion
    #[arg(long, default_value_t = ExpansionBudget::DEFAULT_MAX_STATES)]
    pub budget: usize,
}

#[derive(Args, Debug)]
pub struct AxiomsArgs {
    /// Randomized trials per law
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    /// Root seed; the report echoes it for reproduction
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Optional weight table: egf-b file listing b_0, b_1, ...
    #[arg(long)]
    pub weights: Option<String>,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    /// Dimension parameter, d >= 1
    #[arg(long)]
    pub d: u64,
    /// Positive constant C
    #[arg(long = "C", value_parser = parse_rational, allow_hyphen_values = true)]
    pub c: Rational,
    /// Derivative index, n >= 1
    #[arg(long)]
    pub n: usize,
    /// tsv | json
    #[arg(long, default_value = "tsv", value_parser = parse_format)]
    pub format: OutputFormat,
}

/// Runs a parsed invocation; the returned string is the full stdout.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Omega(args) => cmd_omega(args),
        Command::Invert(args) => cmd_invert(args),
        Command::Forward(args) => cmd_forward(args),
        Command::Word(args) => cmd_word(args),
        Command::Axioms(args) => cmd_axioms(args),
        Command::Bound(args) => cmd_bound(args),
    }
}

fn cmd_omega(args: &OmegaArgs) -> Result<String, CliError> {
    let model = resolve_model(
        &args.model,
        args.alpha.clone(),
        args.mode,
        working_order(args.n),
    )?;
    let budget = ExpansionBudget::new(args.budget);
    let rows = omega_table(&model, args.n, args.method, &budget)?;

    match args.format {
        OutputFormat::Tsv => {
            let mut out = String::new();
            let _ = writeln!(out, "# model: {}", model.label);
            let _ = writeln!(out, "# method: {}", args.method);
            let _ = writeln!(out, "# mode: {}", args.mode);
            let _ = writeln!(out, "n\texact\tapprox");
            for row in &rows {
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}",
                    row.n,
                    row.value,
                    row.value.to_decimal(12)
                );
            }
            Ok(out)
        }
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    serde_json::json!({ "n": row.n, "value": row.value.to_string() })
                })
                .collect();
            let doc = serde_json::json!({
                "model": model.label,
                "method": args.method.to_string(),
                "mode": args.mode.to_string(),
                "rows": rows,
            });
            Ok(pretty(&doc))
        }
    }
}

fn cmd_invert(args: &InvertArgs) -> Result<String, CliError> {
    let (big_f, label) = resolve_gf(&args.big_f, args.alpha.clone(), args.order + 2)?;
    let model = model_from_gf(&big_f, label, args.mode, args.order)?;
    let mut weights = Vec::with_capacity(args.order + 1);
    for k in 0..=args.order {
        weights.push(factorial(k) * model.f.coeff(k));
    }
    Ok(CoeffFile::from_weights(weights).to_json() + "\n")
}

fn cmd_forward(args: &ForwardArgs) -> Result<String, CliError> {
    let (f, _label) = resolve_field(&args.f, args.alpha.clone(), args.order.saturating_sub(1))?;
    let phi = phi_from_f(&f, args.order)?;
    Ok(CoeffFile::from_series(&phi).to_json() + "\n")
}

fn cmd_word(args: &WordArgs) -> Result<String, CliError> {
    let word: OperatorWord = args.word.parse()?;
    let model = resolve_model(
        &args.model,
        args.alpha.clone(),
        args.mode,
        working_order(word.len()),
    )?;
    let budget = ExpansionBudget::new(args.budget);

    let expansion = expand_word(&word.to_matrix_letters(), &budget)?;
    let matrix_value = expansion.upsilon(&model.weights())?;
    let calculus_value = eval_word(&word, &model.phi)?;

    if matrix_value != calculus_value {
        return Err(CliError::verification(format!(
            "word {word}: matrix pipeline gives {matrix_value}, calculus pipeline gives {calculus_value}"
        )));
    }

    match args.format {
        OutputFormat::Tsv => {
            let mut out = String::new();
            let _ = writeln!(out, "# model: {}", model.label);
            let _ = writeln!(out, "word\tmatrix\tcalculus");
            let _ = writeln!(out, "{word}\t{matrix_value}\t{calculus_value}");
            Ok(out)
        }
        OutputFormat::Json => {
            let doc = serde_json::json!({
                "model": model.label,
                "word": word.to_string(),
                "matrix": matrix_value.to_string(),
                "calculus": calculus_value.to_string(),
            });
            Ok(pretty(&doc))
        }
    }
}

fn cmd_axioms(args: &AxiomsArgs) -> Result<String, CliError> {
    if args.trials == 0 {
        return Err(CliError::Input("--trials must be at least 1".to_string()));
    }
    let weights = match &args.weights {
        None => WeightSeq::Base,
        Some(path) => {
            let file = CoeffFile::read(Path::new(path))?;
            match file.kind {
                CoeffKind::EgfB => WeightSeq::Table(file.coeffs),
                CoeffKind::SeriesC => {
                    return Err(CliError::Input(format!(
                        "{path}: the law suite takes weight data (kind \"egf-b\"), \
                         not a raw coefficient series"
                    )));
                }
            }
        }
    };
    let report = run_axiom_suite(args.trials, args.seed, &weights);
    let json = report.to_json() + "\n";
    if report.all_passed() {
        Ok(json)
    } else {
        let message = format!(
            "{} law failure(s); reproduce with --trials {} --seed {}",
            report.total_failures(),
            args.trials,
            args.seed
        );
        Err(CliError::Verification {
            stdout: json,
            message,
        })
    }
}

fn cmd_bound(args: &BoundArgs) -> Result<String, CliError> {
    let input = BoundInput::new(args.d, args.c.clone(), args.n)?;
    let (plain, refined) = bound_pair(&input);

    match args.format {
        OutputFormat::Tsv => {
            let mut out = String::new();
            let _ = writeln!(out, "# d: {}", args.d);
            let _ = writeln!(out, "# C: {}", args.c);
            let _ = writeln!(out, "# n: {}", args.n);
            let _ = writeln!(out, "quantity\texact\tapprox");
            let _ = writeln!(out, "plain\t{}\t{}", plain, plain.to_decimal(12));
            let _ = writeln!(out, "refined\t{}\t{}", refined, refined.to_decimal(12));
            Ok(out)
        }
        OutputFormat::Json => {
            let doc = serde_json::json!({
                "d": args.d,
                "C": args.c.to_string(),
                "n": args.n,
                "plain": plain.to_string(),
                "refined": refined.to_string(),
            });
            Ok(pretty(&doc))
        }
    }
}

fn pretty(doc: &serde_json::Value) -> String {
    serde_json::to_string_pretty(doc).expect("JSON document serializes") + "\n"
}
