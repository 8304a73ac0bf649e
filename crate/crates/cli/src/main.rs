//! `qrev`: classify, certify and verify reversibility of quaternionic
//! matrices from the command line.
//!
//! Exit codes: 0 success, 1 internal error, 2 unparseable input,
//! 3 numeric recovery failed (or exact mode got a matrix not in Jordan form),
//! 4 no certificate of the requested kind exists, 5 verification failed.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qrev_core::classify::classify_psl;
use qrev_core::decompose::{factorize, verify_certificate};
use qrev_core::io::{
    self as wire, CertificateJson, ClassificationJson, FactorizationJson, QMatrixJson,
    VerificationJson,
};
use qrev_core::numeric::{jordan_spec_numeric, FloatQMatrix, NumericConfig, NumericRecovery};
use qrev_core::reversers::{assemble_reverser, omega, FlavorRequest};
use qrev_core::{Error, GaussianRational, JordanSpec, PartitionData, Target};

#[derive(Parser)]
#[command(name = "qrev", version, about = "Reversibility in SL(n,H) and PSL(n,H), with exact certificates")]
struct Cli {
    /// How --matrix inputs are read.
    #[arg(long, value_enum, default_value_t = Mode::Exact, global = true)]
    mode: Mode,
    /// Relative singular-value threshold for numerical rank.
    #[arg(long, global = true)]
    rank_tol: Option<f64>,
    /// Eigenvalue clustering tolerance.
    #[arg(long, global = true)]
    eig_tol: Option<f64>,
    /// Distance within which an eigenvalue snaps to an exact value.
    #[arg(long, global = true)]
    unit_tol: Option<f64>,
    /// Extra exact snapping candidate, e.g. "3/5+4/5i" (repeatable).
    #[arg(long = "candidate", global = true)]
    candidates: Vec<String>,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Numeric,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Inverse,
    NegInverse,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Any,
    Involution,
    SkewInvolution,
}

#[derive(clap::Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Jordan spec: file path, "-" for stdin, inline JSON, or text like "[(i,5),(2,1)]".
    #[arg(long)]
    jordan: Option<String>,
    /// Matrix JSON file ("-" for stdin). Exact mode expects a matrix already
    /// in Jordan form; numeric mode accepts any invertible matrix.
    #[arg(long)]
    matrix: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide (strong / negative / PSL) reversibility.
    Classify {
        #[command(flatten)]
        input: Input,
    },
    /// Build a verified certificate g for the Jordan matrix of the input.
    Certify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = TargetArg::Inverse)]
        target: TargetArg,
        #[arg(long, value_enum, default_value_t = FlavorArg::Any)]
        flavor: FlavorArg,
        /// Also write the Jordan matrix the certificate is for.
        #[arg(long)]
        emit_matrix: Option<PathBuf>,
    },
    /// Re-check a certificate against a matrix from scratch.
    Verify {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        certificate: String,
    },
    /// Factor a matrix into (skew-)involutions using a certificate.
    Decompose {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        certificate: String,
    },
    /// Print Ω(λ, n).
    Omega {
        /// "re,im" (e.g. "2,0") or a complex literal (e.g. "3/5+4/5i").
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        n: usize,
    },
    /// Print the conjugate partition and Weyr structure of a partition.
    Weyr {
        /// "2,2,1", "(2,2,1)" or "[2^2,1^1]".
        #[arg(long)]
        partition: String,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_)
            | Error::Spec(_)
            | Error::Shape(_)
            | Error::DivisionByZero
            | Error::Domain(_)
            | Error::Singular => 2,
            Error::Pairing(_) | Error::RankProfile(_) | Error::NotSingleBlock(_) => 3,
            Error::NotConstructible { .. } => 4,
            Error::Verification(_) | Error::Flavor(_) => 5,
        };
        Failure::new(code, e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_source(source: &str) -> CliResult<String> {
    if source == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::new(2, format!("reading stdin: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(source).map_err(|e| Failure::new(2, format!("reading {source}: {e}")))
}

/// A file if one exists at that path, otherwise the argument itself.
fn read_inline_or_file(arg: &str) -> CliResult<String> {
    if arg == "-" || Path::new(arg).is_file() {
        read_source(arg)
    } else {
        Ok(arg.to_string())
    }
}

fn numeric_config(cli: &Cli) -> CliResult<NumericConfig> {
    let mut cfg = NumericConfig::default();
    if let Some(t) = cli.rank_tol {
        cfg.rank_tol = t;
    }
    if let Some(t) = cli.eig_tol {
        cfg.eig_cluster_tol = t;
    }
    if let Some(t) = cli.unit_tol {
        cfg.unit_tol = t;
    }
    for c in &cli.candidates {
        cfg.candidates.push(c.parse()?);
    }
    cfg.validate()?;
    Ok(cfg)
}

/// The spec of the input, plus the numeric recovery report when one ran.
fn load_spec(cli: &Cli, input: &Input) -> CliResult<(JordanSpec, Option<NumericRecovery>)> {
    if let Some(arg) = &input.jordan {
        return Ok((wire::parse_jordan_spec(&read_inline_or_file(arg)?)?, None));
    }
    let source = input.matrix.as_deref().expect("clap enforces one input");
    let text = read_source(source)?;
    match cli.mode {
        Mode::Exact => {
            let a = wire::parse_qmatrix(&text)?;
            let spec = JordanSpec::from_jordan_matrix(&a).ok_or_else(|| {
                Failure::new(
                    3,
                    "exact mode needs a matrix already in Jordan form; use --mode numeric to recover the spec",
                )
            })?;
            Ok((spec, None))
        }
        Mode::Numeric => {
            let float = match wire::parse_float_matrix(&text) {
                Ok(f) => f,
                Err(_) => FloatQMatrix::from_exact(&wire::parse_qmatrix(&text)?)?,
            };
            let rec = jordan_spec_numeric(&float, &numeric_config(cli)?).map_err(|e| match e {
                Error::Singular | Error::Pairing(_) | Error::RankProfile(_) => Failure::new(3, e.to_string()),
                other => other.into(),
            })?;
            if rec.approximate {
                eprintln!("warning: some eigenvalues could not be snapped; the result is approximate");
            }
            Ok((rec.spec.clone(), Some(rec)))
        }
    }
}

fn emit(cli: &Cli, text: &str) -> CliResult<()> {
    write_text(cli.out.as_deref(), text)
}

fn write_text(path: Option<&Path>, text: &str) -> CliResult<()> {
    let mut body = text.to_string();
    body.push('\n');
    match path {
        Some(p) => fs::write(p, body).map_err(|e| Failure::new(1, format!("writing {}: {e}", p.display()))),
        None => io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| Failure::new(1, format!("writing stdout: {e}"))),
    }
}

fn parse_lambda(s: &str) -> CliResult<GaussianRational> {
    match s.split_once(',') {
        Some((re, im)) => Ok(GaussianRational::new(
            qrev_core::scalar::parse_rational(re)?,
            qrev_core::scalar::parse_rational(im)?,
        )),
        None => Ok(s.parse()?),
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Classify { input } => {
            let (spec, rec) = load_spec(cli, input)?;
            let cls = classify_psl(&spec);
            emit(cli, &wire::to_json_string(&ClassificationJson::new(&spec, &cls, rec.as_ref())))
        }
        Command::Certify { input, target, flavor, emit_matrix } => {
            let (spec, _) = load_spec(cli, input)?;
            let target = match target {
                TargetArg::Inverse => Target::Inverse,
                TargetArg::NegInverse => Target::NegInverse,
            };
            let request = match flavor {
                FlavorArg::Any => FlavorRequest::Any,
                FlavorArg::Involution => FlavorRequest::Involution,
                FlavorArg::SkewInvolution => FlavorRequest::SkewInvolution,
            };
            let cert = assemble_reverser(&spec, target, request)?;
            if let Some(path) = emit_matrix {
                write_text(Some(path), &wire::to_json_string(&QMatrixJson::from(&spec.matrix())))?;
            }
            emit(cli, &wire::to_json_string(&CertificateJson::from(&cert)))
        }
        Command::Verify { matrix, certificate } => {
            let a = wire::parse_qmatrix(&read_source(matrix)?)?;
            let cert = wire::parse_certificate(&read_source(certificate)?)?;
            let report = verify_certificate(&a, &cert);
            emit(cli, &wire::to_json_string(&VerificationJson::from(&report)))?;
            if report.accepted {
                Ok(())
            } else {
                Err(Failure::new(5, "certificate rejected"))
            }
        }
        Command::Decompose { matrix, certificate } => {
            let a = wire::parse_qmatrix(&read_source(matrix)?)?;
            let cert = wire::parse_certificate(&read_source(certificate)?)?;
            let f = factorize(&a, &cert)?;
            emit(cli, &wire::to_json_string(&FactorizationJson::from(&f)))
        }
        Command::Omega { lambda, n } => {
            let lambda = parse_lambda(lambda)?;
            let om = omega(&lambda, *n)?;
            let body = serde_json::json!({
                "lambda": lambda.to_string(),
                "n": n,
                "omega": QMatrixJson::from(&om.to_quaternion()),
                "rows": om.to_rows().iter()
                    .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            });
            emit(cli, &serde_json::to_string_pretty(&body).expect("json"))
        }
        Command::Weyr { partition } => {
            let p: PartitionData = partition.parse()?;
            let body = serde_json::json!({
                "partition": p.to_string(),
                "exponent_form": p.exponent_string(),
                "conjugate": p.conjugate().to_string(),
                "weyr_structure": p.weyr_structure().to_string(),
            });
            emit(cli, &serde_json::to_string_pretty(&body).expect("json"))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
