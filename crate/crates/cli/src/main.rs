use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ringlab_core::corpus::{axiom_coverage, parse_corpus, run_corpus, CorpusOptions};
use ringlab_core::report::{verdict_text, ElementReport, RingReport};
use ringlab_core::theorems::{verify_all, verify_theorem};
use ringlab_core::{
    make_group_ring, parse_elem_ref, parse_group_expr, parse_ring_expr, AxiomReport, ElemRef,
    Error, Limits, Subject, TheoremId,
};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_SIZE_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "ringlab", version, about = "Finite ring workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Decide ring-level properties and list the distinguished element sets.
    Check {
        expr: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Classify one element and list its decompositions.
    Classify {
        expr: String,
        /// `idx:N`, `label:L`, or a bare label.
        #[arg(long)]
        element: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run theorem verifiers on a ring, or on the group ring RG with --group.
    Verify {
        expr: String,
        #[arg(long)]
        group: Option<String>,
        #[arg(long, conflicts_with = "all")]
        theorem: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Verify every entry of a corpus file and compare golden values.
    Corpus {
        path: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
        /// Omit the timestamp so identical input gives identical output.
        #[arg(long)]
        stable_output: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SizeCap { .. } => EXIT_SIZE_CAP,
            Error::Internal(_) | Error::Axiom { .. } => EXIT_FAIL,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn build(expr: &str, limits: &Limits) -> Result<Subject, Failure> {
    let parsed = parse_ring_expr(expr).map_err(|e| Failure::usage(format!("{expr}: {e}")))?;
    let subject = parsed.build_subject(limits)?;
    if let AxiomReport::Fail { axiom, witness } = subject
        .ring
        .verify_axioms_with(axiom_coverage(subject.ring.order()))
    {
        return Err(Failure {
            code: EXIT_FAIL,
            message: format!("{expr}: {axiom} fails at {witness:?}"),
        });
    }
    Ok(subject)
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value).map_err(|e| Failure {
        code: EXIT_FAIL,
        message: e.to_string(),
    })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let limits = Limits::from_env().map_err(|e| Failure::usage(e.to_string()))?;
    match cli.command {
        Command::Check { expr, format } => {
            let subject = build(&expr, &limits)?;
            let report = RingReport::build(&expr, &subject)?;
            match format {
                Format::Json => println!("{}", to_json(&report)?),
                Format::Text => print!("{}", report.to_text()),
            }
            Ok(0)
        }
        Command::Classify {
            expr,
            element,
            format,
        } => {
            let subject = build(&expr, &limits)?;
            let r = &subject.ring;
            let elem_ref = if element.starts_with("idx:") || element.starts_with("label:") {
                parse_elem_ref(&element).map_err(|e| Failure::usage(format!("{element}: {e}")))?
            } else {
                ElemRef::Label(element.trim().to_string())
            };
            let report = ElementReport::build(r, elem_ref.resolve(r)?)?;
            match format {
                Format::Json => println!("{}", to_json(&report)?),
                Format::Text => print!("{}", report.to_text()),
            }
            Ok(0)
        }
        Command::Verify {
            expr,
            group,
            theorem,
            all: _,
            format,
        } => {
            let mut subject = build(&expr, &limits)?;
            if let Some(g) = group {
                let g = parse_group_expr(&g)
                    .map_err(|e| Failure::usage(format!("{g}: {e}")))?
                    .build(&limits)?;
                subject = Subject::from_group_ring(make_group_ring(&subject.ring, &g, &limits)?);
            }
            let verdicts = match theorem {
                Some(id) => {
                    let id: TheoremId = id.parse().map_err(|e: Error| {
                        let known: Vec<_> = TheoremId::ALL.iter().map(|t| t.as_str()).collect();
                        Failure::usage(format!("{e}; known ids: {}", known.join(", ")))
                    })?;
                    verify_theorem(&subject, id, &limits)?
                }
                None => verify_all(&subject, &limits)?,
            };
            match format {
                Format::Json => println!("{}", to_json(&verdicts)?),
                Format::Text => {
                    for v in &verdicts {
                        print!("{}", verdict_text(v));
                    }
                }
            }
            Ok(if verdicts.iter().all(|v| v.consistent) {
                0
            } else {
                EXIT_FAIL
            })
        }
        Command::Corpus {
            path,
            jobs,
            stable_output,
        } => {
            let text = fs::read_to_string(&path)
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            let entries = parse_corpus(&text)
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            let options = CorpusOptions {
                limits,
                jobs,
                stable_output,
            };
            let report = run_corpus(&entries, &options)?;
            println!("{}", to_json(&report)?);
            eprintln!("{}", report.summary());
            Ok(report.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
