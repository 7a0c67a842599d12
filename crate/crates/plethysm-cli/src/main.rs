//! `pleth`: exact plethystic calculus from the command line.
//!
//! Every subcommand prints canonical, deterministic output (JSON by
//! default, line-oriented text with `--format text`) and reports problems
//! on standard error with a distinguishing exit code: 2 for malformed
//! input, 3 for violated preconditions, 4 for a failed internal
//! invariant.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use plethysm::bialgebra::{bell, count_placements, delta_generator, green_delta};
use plethysm::io::{
    self, blocks_to_json, labeled_partition_from_json, IoError, LabeledPartition,
};
use plethysm::lambda::PartitionVector;
use plethysm::series::{SeriesError, TruncatedSeries};
use plethysm::setmodel::{is_transversal, SetModelError};
use plethysm::univariate;
use plethysm::verify::{run_suite, CheckReport, RunConfig};

#[derive(Parser)]
#[command(
    name = "pleth",
    version,
    about = "Exact plethystic substitution, comultiplication, and the finite-set cross-checks"
)]
struct Cli {
    /// Weight window for series and comultiplication commands.
    #[arg(long, global = true, default_value_t = 3)]
    truncation: u64,

    /// Ground-set and cell-size bound for combinatorial suites.
    #[arg(long, global = true, default_value_t = 4)]
    size_bound: u64,

    /// Seed for generated series in the verification suites.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the output to a file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Substitute the series in the second file into the first.
    Plethysm { g: PathBuf, f: PathBuf },
    /// Compose the one-variable restrictions of two series files.
    Compose1 { g: PathBuf, f: PathBuf },
    /// Comultiplication of the generator at a nonzero index.
    Delta { sigma: String },
    /// Left cofactor of the second index in the comultiplication of the first.
    Bell { sigma: String, lambda: String },
    /// Number of grid placements of a multiset decomposing one index over another.
    Placements {
        sigma: String,
        lambda: String,
        multiset: String,
    },
    /// Both expansions of the grouplike sum at the weight window; they must agree.
    Green,
    /// Partition lattice operations and predicates on JSON block lists.
    Partition {
        #[command(subcommand)]
        op: PartitionOp,
    },
    /// Run a named invariant suite at the configured bounds.
    Verify { suite: String },
}

#[derive(Subcommand)]
enum PartitionOp {
    /// Finest common coarsening.
    Join { pi: String, tau: String },
    /// Coarsest common refinement.
    Meet { pi: String, tau: String },
    /// Whether the two partitions commute as relations.
    Commute { pi: String, tau: String },
    /// Whether every block of one meets every block of the other.
    Independent { pi: String, tau: String },
    /// Whether the second and third partitions form a transversal of the first.
    Transversal {
        sigma: String,
        pi: String,
        tau: String,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn precondition(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }

    fn invariant(message: impl Into<String>) -> Self {
        Self {
            code: 4,
            message: message.into(),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Json(_) | IoError::Format(_) => Failure::parse(e.to_string()),
            IoError::Series(_) | IoError::Model(_) => Failure::precondition(e.to_string()),
        }
    }
}

impl From<SeriesError> for Failure {
    fn from(e: SeriesError) -> Self {
        Failure::precondition(e.to_string())
    }
}

impl From<SetModelError> for Failure {
    fn from(e: SetModelError) -> Self {
        Failure::precondition(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((mut output, code)) => {
            if !output.ends_with('\n') {
                output.push('\n');
            }
            let written = match &cli.output {
                Some(path) => fs::write(path, &output)
                    .map_err(|e| Failure::parse(format!("cannot write {}: {e}", path.display()))),
                None => {
                    print!("{output}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(code),
                Err(failure) => fail(failure),
            }
        }
        Err(failure) => fail(failure),
    }
}

fn fail(failure: Failure) -> ExitCode {
    eprintln!("error: {}", failure.message);
    ExitCode::from(failure.code)
}

/// Produces the output text and the exit code (nonzero only for `green`
/// and `verify` discrepancies, which still print their findings).
fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    match &cli.command {
        Command::Plethysm { g, f } => {
            let g = read_series(g)?;
            let f = read_series(f)?;
            let h = TruncatedSeries::plethysm(&g, &f)?;
            Ok((render_series(cli, &h), 0))
        }
        Command::Compose1 { g, f } => {
            let g = read_series(g)?;
            let f = read_series(f)?;
            if g.truncation() != f.truncation() {
                return Err(SeriesError::TruncationMismatch {
                    left: g.truncation(),
                    right: f.truncation(),
                }
                .into());
            }
            f.ensure_constant_free()?;
            let composed =
                univariate::compose_exponential(&g.restrict_univariate(), &f.restrict_univariate());
            let mut terms = vec![(
                PartitionVector::zero(),
                g.raw_coefficient(&PartitionVector::zero())?,
            )];
            terms.extend(
                composed
                    .into_iter()
                    .enumerate()
                    .map(|(i, c)| (PartitionVector::from_dense(&[i as u64 + 1]), c)),
            );
            let h = TruncatedSeries::from_f_coefficients(terms, g.truncation());
            Ok((render_series(cli, &h), 0))
        }
        Command::Delta { sigma } => {
            let sigma = parse_nonzero_vector(sigma, "the comultiplication index")?;
            let tensor = delta_generator(&sigma);
            let rendered = match cli.format {
                Format::Json => io::tensor_to_json(&tensor),
                Format::Text => io::tensor_to_text(&tensor),
            };
            Ok((rendered, 0))
        }
        Command::Bell { sigma, lambda } => {
            let sigma = parse_nonzero_vector(sigma, "the comultiplication index")?;
            let lambda = parse_nonzero_vector(lambda, "the cofactor index")?;
            let element = bell(&sigma, &lambda);
            let rendered = match cli.format {
                Format::Json => io::element_to_json(&element),
                Format::Text => io::element_to_text(&element),
            };
            Ok((rendered, 0))
        }
        Command::Placements {
            sigma,
            lambda,
            multiset,
        } => {
            let sigma = parse_vector(sigma)?;
            let lambda = parse_vector(lambda)?;
            let multiset = io::multiset_from_text(multiset)?;
            Ok((format!("{}\n", count_placements(&sigma, &lambda, &multiset)), 0))
        }
        Command::Green => {
            let w = ensure_positive(cli.truncation, "--truncation")?;
            let (left, right) = green_delta(w);
            let rendered = match cli.format {
                Format::Json => io::tensor_to_json(&left),
                Format::Text => io::tensor_to_text(&left),
            };
            if left == right {
                Ok((rendered, 0))
            } else {
                Err(Failure::invariant(format!(
                    "the two expansions of the grouplike sum differ at weight window {w}"
                )))
            }
        }
        Command::Partition { op } => run_partition(op),
        Command::Verify { suite } => {
            let config = RunConfig {
                truncation: ensure_positive(cli.truncation, "--truncation")?,
                size_bound: ensure_positive(cli.size_bound, "--size-bound")?,
                seed: cli.seed,
            };
            let reports = run_suite(suite, &config)
                .ok_or_else(|| Failure::parse(format!("unknown suite {suite:?}")))?;
            let failed = reports.iter().filter(|r| !r.passed).count();
            let mut out = String::new();
            for report in &reports {
                out.push_str(&render_report(report));
            }
            out.push_str(&format!(
                "{} checks, {} failed\n",
                reports.len(),
                failed
            ));
            Ok((out, if failed == 0 { 0 } else { 4 }))
        }
    }
}

fn run_partition(op: &PartitionOp) -> Result<(String, u8), Failure> {
    let answer = |value: bool| Ok((format!("{value}\n"), 0));
    match op {
        PartitionOp::Join { pi, tau } => {
            let (pi, tau) = partition_pair(pi, tau)?;
            let join = pi.partition().join(tau.partition())?;
            Ok((format!("{}\n", blocks_to_json(&pi.relabel_blocks(&join))), 0))
        }
        PartitionOp::Meet { pi, tau } => {
            let (pi, tau) = partition_pair(pi, tau)?;
            let meet = pi.partition().meet(tau.partition())?;
            Ok((format!("{}\n", blocks_to_json(&pi.relabel_blocks(&meet))), 0))
        }
        PartitionOp::Commute { pi, tau } => {
            let (pi, tau) = partition_pair(pi, tau)?;
            answer(pi.partition().commute_by_blocks(tau.partition())?)
        }
        PartitionOp::Independent { pi, tau } => {
            let (pi, tau) = partition_pair(pi, tau)?;
            answer(pi.partition().independent_by_blocks(tau.partition())?)
        }
        PartitionOp::Transversal { sigma, pi, tau } => {
            let sigma = labeled_partition_from_json(sigma)?;
            let (pi, tau) = partition_pair(pi, tau)?;
            check_same_labels(&sigma, &pi)?;
            answer(is_transversal(
                sigma.partition(),
                pi.partition(),
                tau.partition(),
            )?)
        }
    }
}

fn partition_pair(
    pi: &str,
    tau: &str,
) -> Result<(LabeledPartition, LabeledPartition), Failure> {
    let pi = labeled_partition_from_json(pi)?;
    let tau = labeled_partition_from_json(tau)?;
    check_same_labels(&pi, &tau)?;
    Ok((pi, tau))
}

fn check_same_labels(a: &LabeledPartition, b: &LabeledPartition) -> Result<(), Failure> {
    if a.labels() == b.labels() {
        Ok(())
    } else {
        Err(Failure::precondition(format!(
            "partitions use different ground labels ({:?} vs {:?})",
            a.labels(),
            b.labels()
        )))
    }
}

fn read_series(path: &PathBuf) -> Result<TruncatedSeries, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
    Ok(io::series_from_json(&text)?)
}

fn render_series(cli: &Cli, series: &TruncatedSeries) -> String {
    match cli.format {
        Format::Json => io::series_to_json(series),
        Format::Text => io::series_to_text(series),
    }
}

fn render_report(report: &CheckReport) -> String {
    if report.passed {
        format!("PASS {} ({})\n", report.name, report.detail)
    } else {
        format!("FAIL {}: {}\n", report.name, report.detail)
    }
}

fn parse_vector(text: &str) -> Result<PartitionVector, Failure> {
    text.parse()
        .map_err(|e: plethysm::lambda::LambdaError| Failure::parse(e.to_string()))
}

fn parse_nonzero_vector(text: &str, what: &str) -> Result<PartitionVector, Failure> {
    let v = parse_vector(text)?;
    if v.is_zero() {
        Err(Failure::precondition(format!("{what} must be nonzero")))
    } else {
        Ok(v)
    }
}

fn ensure_positive(value: u64, flag: &str) -> Result<u64, Failure> {
    if value == 0 {
        Err(Failure::precondition(format!("{flag} must be at least 1")))
    } else {
        Ok(value)
    }
}
