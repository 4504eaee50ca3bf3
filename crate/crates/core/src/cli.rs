//! Command-line front end.
//!
//! [`run`] parses arguments, executes one subcommand and returns captured
//! output plus the exit code, so the binary is a thin wrapper and tests can
//! drive every command in process. Exit codes: 0 success, 1 domain rejection,
//! 2 usage or parse error.

use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::berggren::{
    decompose, enumerate_tree, reconstruct, render_dot, BerggrenWord, CoefficientBound, WordJson,
};
use crate::error::Error;
use crate::field::FieldSpec;
use crate::oracle::{cross_validate, SearchBounds};
use crate::orthogroup::factor;
use crate::transform::Mat3;
use crate::triple::Triple;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "polyberg",
    version,
    about = "Polynomial Pythagorean triples: classification, Berggren words, orthogonal factorization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

/// Options shared by every subcommand.
#[derive(Clone, Debug, Args)]
pub struct CliConfig {
    /// Coefficient field: `q` or `fp:<p>` for an odd prime p.
    #[arg(long, default_value = "q", value_parser = parse_field)]
    pub field: FieldSpec,
    /// Output format; each subcommand has its own default.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
struct TripleArgs {
    x: String,
    y: String,
    z: String,
    /// Divide out the gcd of the components first and report it on stderr.
    #[arg(long)]
    normalize_gcd: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a triple; exit 0 iff it is Pythagorean and primitive.
    Verify {
        #[command(flatten)]
        config: CliConfig,
        #[command(flatten)]
        triple: TripleArgs,
    },
    /// Print the Berggren word of a standard triple.
    Decompose {
        #[command(flatten)]
        config: CliConfig,
        #[command(flatten)]
        triple: TripleArgs,
    },
    /// Rebuild a triple from a Berggren word given as JSON (or `-` for stdin).
    Reconstruct {
        #[command(flatten)]
        config: CliConfig,
        word: String,
    },
    /// Enumerate the Berggren tree up to a height bound.
    Generate {
        #[command(flatten)]
        config: CliConfig,
        #[arg(long)]
        max_height: usize,
        /// Worker threads; 0 picks the default.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Over Q: largest absolute numerator of any coefficient.
        #[arg(long)]
        coeff_bound: Option<u64>,
        /// Over Q: largest denominator of any coefficient.
        #[arg(long, default_value_t = 1)]
        max_denominator: u64,
    },
    /// Factor an orthogonal matrix (JSON, or `-` for stdin) into R_f, P_xy, T_c.
    Factor {
        #[command(flatten)]
        config: CliConfig,
        matrix: String,
    },
    /// Brute-force census over a prime field, cross-checked against the tree.
    Census {
        #[command(flatten)]
        config: CliConfig,
        #[arg(long)]
        max_deg: usize,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

fn parse_field(text: &str) -> Result<FieldSpec, String> {
    text.parse::<FieldSpec>().map_err(|e| e.to_string())
}

/// Captured result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn fail(err: &Error) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
            code: exit_code(err),
        }
    }
}

/// Exit code for a library error: bad input text or arguments are usage
/// errors, everything else is a domain rejection.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. }
        | Error::InvalidModulus(_)
        | Error::InvalidArgument(_)
        | Error::MalformedWord(_)
        | Error::FieldMismatch(..)
        | Error::UnboundedEnumeration => EXIT_USAGE,
        _ => EXIT_DOMAIN,
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(e.column().saturating_sub(1), e.to_string())
}

fn read_arg(arg: &str, stdin: &mut dyn Read) -> Result<String, Error> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut buf = String::new();
    stdin
        .read_to_string(&mut buf)
        .map_err(|e| Error::InvalidArgument(format!("reading stdin: {e}")))?;
    Ok(buf)
}

/// Parses the three components, optionally dividing out their gcd. Returns the
/// triple and a note for stderr when a non-trivial factor was removed.
fn load_triple(field: FieldSpec, args: &TripleArgs) -> Result<(Triple, String), Error> {
    let q = Triple::parse(&args.x, &args.y, &args.z, field)?;
    if !args.normalize_gcd {
        return Ok((q, String::new()));
    }
    let (q, g) = q.divide_out_gcd()?;
    let note = if g.is_one() {
        String::new()
    } else {
        format!("removed factor: {g}\n")
    };
    Ok((q, note))
}

/// Matrix payload: nine entries row-major, or three rows of three.
#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixJson {
    Flat(Vec<String>),
    Rows(Vec<Vec<String>>),
}

fn parse_matrix(text: &str, field: FieldSpec) -> Result<Mat3, Error> {
    let entries = match serde_json::from_str::<MatrixJson>(text).map_err(json_error)? {
        MatrixJson::Flat(v) => v,
        MatrixJson::Rows(rows) => {
            if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
                return Err(Error::InvalidArgument("matrix must be 3x3".into()));
            }
            rows.into_iter().flatten().collect()
        }
    };
    Mat3::from_json(&entries, field)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn execute(command: Command, stdin: &mut dyn Read) -> Result<Outcome, Error> {
    match command {
        Command::Verify { config, triple } => {
            let (q, note) = load_triple(config.field, &triple)?;
            let class = q.classify();
            Ok(Outcome {
                stdout: format!("{class}\n"),
                stderr: note,
                code: if class.is_primitive_pythagorean() {
                    EXIT_OK
                } else {
                    EXIT_DOMAIN
                },
            })
        }
        Command::Decompose { config, triple } => {
            let (q, note) = load_triple(config.field, &triple)?;
            let w = decompose(&q)?;
            let stdout = match config.format.unwrap_or(Format::Json) {
                Format::Json => to_json(&w.to_json()),
                Format::Text => w.to_string(),
                Format::Dot => return Err(Error::InvalidArgument("decompose has no dot format".into())),
            };
            Ok(Outcome {
                stdout: stdout + "\n",
                stderr: note,
                code: EXIT_OK,
            })
        }
        Command::Reconstruct { config, word } => {
            let text = read_arg(&word, stdin)?;
            let json: WordJson = serde_json::from_str(text.trim()).map_err(json_error)?;
            let w = BerggrenWord::from_json(&json, config.field)?;
            let q = reconstruct(&w, config.field)?;
            let stdout = match config.format.unwrap_or(Format::Text) {
                Format::Text => q.to_string(),
                Format::Json => to_json(&q.to_json()),
                Format::Dot => return Err(Error::InvalidArgument("reconstruct has no dot format".into())),
            };
            Ok(Outcome::ok(stdout + "\n"))
        }
        Command::Generate {
            config,
            max_height,
            jobs,
            coeff_bound,
            max_denominator,
        } => {
            let bound = coeff_bound.map(|n| CoefficientBound {
                max_numerator: n,
                max_denominator,
            });
            let nodes = enumerate_tree(config.field, max_height, bound.as_ref(), jobs)?;
            let stdout = match config.format.unwrap_or(Format::Json) {
                Format::Dot => render_dot(&nodes),
                Format::Json => nodes
                    .iter()
                    .map(|n| to_json(&n.to_json()) + "\n")
                    .collect(),
                Format::Text => nodes
                    .iter()
                    .map(|n| format!("{}\t{}\t{}\n", n.height, n.triple, n.word))
                    .collect(),
            };
            Ok(Outcome::ok(stdout))
        }
        Command::Factor { config, matrix } => {
            let text = read_arg(&matrix, stdin)?;
            let a = parse_matrix(text.trim(), config.field)?;
            let word = factor(&a)?;
            let stdout = match config.format.unwrap_or(Format::Json) {
                Format::Json => to_json(&word.to_json()),
                Format::Text => {
                    if word.is_empty() {
                        "I".to_string()
                    } else {
                        word.factors()
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(" * ")
                    }
                }
                Format::Dot => return Err(Error::InvalidArgument("factor has no dot format".into())),
            };
            Ok(Outcome::ok(stdout + "\n"))
        }
        Command::Census {
            config,
            max_deg,
            jobs,
        } => {
            let bounds = SearchBounds::new(config.field, max_deg)?;
            let report = cross_validate(&bounds, jobs)?;
            let code = if report.is_clean() { EXIT_OK } else { EXIT_DOMAIN };
            Ok(Outcome {
                stdout: to_json(&report) + "\n",
                stderr: String::new(),
                code,
            })
        }
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USAGE,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    execute(cli.command, stdin).unwrap_or_else(|e| Outcome::fail(&e))
}
