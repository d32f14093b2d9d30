//! The `oes` command line.
//!
//! Reports go to standard output, diagnostics to standard error. Output
//! carries no timestamps or colour, so identical invocations produce
//! identical bytes.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{compare, infer_base, prevalence};
use crate::corpus::{load_corpus_path, validate, Corpus, LoadErrors};
use crate::interpret::{evaluate, Hypothesis, Interpretation, NamedHypothesis};
use crate::notation::{parse_sign, render_sign};
use crate::report;
use crate::sign::{Atom, Sign};

pub const DEFAULT_COMPARISON: &str = "default,comb-n,comb-n1,comb-nb:10,comb-b9";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    /// Parse, evaluation or corpus load failure.
    DomainError = 1,
    Usage = 2,
    /// `validate --strict` found claimed values the notation does not read.
    StrictMismatch = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "oes",
    version,
    about = "Numeric readings and corpus statistics for Old European Script signs"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a sign notation and print its structure
    Parse {
        notation: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the numeric readings of a sign
    Eval {
        notation: String,
        /// Preset name or path to a JSON hypothesis file
        #[arg(long, default_value = "default")]
        hypothesis: String,
        /// Show the derivation of every reading
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Prevalence counts and run-length evidence for a catalog
    Stats {
        corpus: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Rank comb hypotheses against a catalog
    Compare {
        corpus: PathBuf,
        /// Comma-separated preset names or hypothesis files
        #[arg(long, default_value = DEFAULT_COMPARISON)]
        hypotheses: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run-length evidence for the counting unit
    InferBase {
        corpus: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check a catalog for repeated listings and value mismatches
    Validate {
        corpus: PathBuf,
        /// Exit with status 3 when any claimed value disagrees with its notation
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// Runs the command line with `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                ExitStatus::Usage
            } else {
                let _ = write!(out, "{text}");
                ExitStatus::Success
            };
        }
    };
    match execute(cli.command) {
        Ok(Output { stdout, status }) => {
            let _ = out.write_all(stdout.as_bytes());
            status
        }
        Err(Failure { message, status }) => {
            let _ = writeln!(err, "error: {message}");
            status
        }
    }
}

struct Output {
    stdout: String,
    status: ExitStatus,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            status: ExitStatus::Success,
        }
    }
}

struct Failure {
    message: String,
    status: ExitStatus,
}

fn domain(message: impl ToString) -> Failure {
    Failure {
        message: message.to_string(),
        status: ExitStatus::DomainError,
    }
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        message: message.to_string(),
        status: ExitStatus::Usage,
    }
}

fn execute(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Parse { notation, format } => cmd_parse(&notation, format),
        Command::Eval {
            notation,
            hypothesis,
            trace,
            format,
        } => cmd_eval(&notation, &hypothesis, trace, format),
        Command::Stats { corpus, format } => {
            let corpus = load(&corpus)?;
            let (p, b) = (prevalence(&corpus), infer_base(&corpus));
            Ok(Output::ok(match format {
                Format::Text => {
                    let mut text = report::prevalence_text(&p);
                    text.push_str(&report::base_text(&b));
                    text
                }
                Format::Csv => report::stats_csv(&p, &b),
                Format::Json => {
                    #[derive(Serialize)]
                    struct Stats<'a> {
                        prevalence: &'a crate::analysis::PrevalenceReport,
                        base_evidence: &'a crate::analysis::BaseEvidenceReport,
                    }
                    report::json(&Stats {
                        prevalence: &p,
                        base_evidence: &b,
                    })
                }
            }))
        }
        Command::InferBase { corpus, format } => {
            let b = infer_base(&load(&corpus)?);
            Ok(Output::ok(match format {
                Format::Text => report::base_text(&b),
                Format::Csv => report::base_csv(&b),
                Format::Json => report::json(&b),
            }))
        }
        Command::Compare {
            corpus,
            hypotheses,
            format,
        } => {
            let named = hypotheses
                .split(',')
                .map(resolve_hypothesis)
                .collect::<Result<Vec<_>, _>>()?;
            let corpus = load(&corpus)?;
            let scores = compare(&corpus, &named).map_err(usage)?;
            Ok(Output::ok(match format {
                Format::Text => report::scores_text(&scores),
                Format::Csv => report::scores_csv(&scores),
                Format::Json => report::json(&scores),
            }))
        }
        Command::Validate {
            corpus,
            strict,
            format,
        } => {
            let findings = validate(&load(&corpus)?);
            let stdout = match format {
                Format::Text => report::validation_text(&findings),
                Format::Csv => report::validation_csv(&findings),
                Format::Json => report::json(&findings),
            };
            let status = if strict && findings.has_mismatches() {
                ExitStatus::StrictMismatch
            } else {
                ExitStatus::Success
            };
            Ok(Output { stdout, status })
        }
    }
}

fn load(path: &Path) -> Result<Corpus, Failure> {
    load_corpus_path(path).map_err(|LoadErrors(errors)| {
        let mut message = format!("cannot load {}", path.display());
        for e in errors {
            let _ = write!(message, "\n  {e}");
        }
        domain(message)
    })
}

/// A preset name, or else a path to a JSON hypothesis.
fn resolve_hypothesis(name: &str) -> Result<NamedHypothesis, Failure> {
    if let Ok(h) = Hypothesis::preset(name) {
        return Ok(NamedHypothesis::new(name, h));
    }
    let path = Path::new(name);
    if name.is_empty() || !path.is_file() {
        return Err(usage(format!("unknown hypothesis `{name}`")));
    }
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{name}: {e}")))?;
    let h: Hypothesis = serde_json::from_str(&text).map_err(|e| usage(format!("{name}: {e}")))?;
    Ok(NamedHypothesis::new(name, h))
}

fn atom_label(atom: &Atom) -> String {
    match *atom {
        Atom::ScoreRow { count, rows } => format!("score count={count} rows={rows}"),
        Atom::Comb { teeth } => format!("comb teeth={teeth}"),
        Atom::Pole { crossings } => format!("pole crossings={crossings}"),
        Atom::Divided { left, right } => format!("divided left={left} right={right}"),
        Atom::LongShort { longs, shorts } => format!("longshort longs={longs} shorts={shorts}"),
        Atom::Chevron => "chevron".to_owned(),
        Atom::Cross => "cross".to_owned(),
        Atom::Opaque { family } => format!("opaque family={family}"),
    }
}

fn atom_notation(atom: &Atom) -> String {
    Sign::single(*atom)
        .ok()
        .and_then(|s| render_sign(&s).ok())
        .unwrap_or_else(|| atom.family().to_string())
}

fn cmd_parse(notation: &str, format: Format) -> Result<Output, Failure> {
    let sign = parse_sign(notation).map_err(domain)?;
    let (normal, notes) = sign.normalize_with_notes();
    let canonical = render_sign(&normal).expect("parsed signs are not opaque");
    let stdout = match format {
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "canonical: {canonical}");
            let _ = writeln!(out, "family: {}", sign.classify());
            for (i, atom) in sign.atoms().iter().enumerate() {
                let _ = writeln!(out, "atom {i}: {}", atom_label(atom));
            }
            for note in &notes {
                let _ = writeln!(out, "note: {note}");
            }
            out
        }
        Format::Csv => report::csv_rows(
            &["index", "family", "notation", "detail"],
            sign.atoms().iter().enumerate().map(|(i, a)| {
                [
                    i.to_string(),
                    a.family().to_string(),
                    atom_notation(a),
                    atom_label(a),
                ]
            }),
        ),
        Format::Json => {
            #[derive(Serialize)]
            struct Parsed<'a> {
                notation: &'a str,
                canonical: &'a str,
                family: crate::sign::FamilyTag,
                atoms: &'a [Atom],
                normalization_notes: &'a [String],
            }
            report::json(&Parsed {
                notation,
                canonical: &canonical,
                family: sign.classify(),
                atoms: sign.atoms(),
                normalization_notes: &notes,
            })
        }
    };
    Ok(Output::ok(stdout))
}

fn cmd_eval(
    notation: &str,
    hypothesis: &str,
    trace: bool,
    format: Format,
) -> Result<Output, Failure> {
    let named = resolve_hypothesis(hypothesis)?;
    let sign = parse_sign(notation).map_err(domain)?;
    let interpretation = evaluate(&sign, &named.hypothesis).map_err(domain)?;
    let candidates = interpretation.candidates_desc();
    let stdout = match format {
        Format::Text => eval_text(&interpretation, trace),
        Format::Csv => report::csv_rows(
            &["value", "confidence"],
            candidates
                .iter()
                .map(|v| [v.to_string(), interpretation.confidence().to_string()]),
        ),
        Format::Json => {
            #[derive(Serialize)]
            struct Evaluated<'a> {
                notation: &'a str,
                hypothesis: &'a NamedHypothesis,
                candidates: &'a [u64],
                confidence: crate::interpret::Confidence,
                merged_duplicates: usize,
                derivations: &'a [crate::interpret::Derivation],
            }
            report::json(&Evaluated {
                notation,
                hypothesis: &named,
                candidates: &candidates,
                confidence: interpretation.confidence(),
                merged_duplicates: interpretation.merged_duplicates(),
                derivations: interpretation.derivations(),
            })
        }
    };
    Ok(Output::ok(stdout))
}

fn eval_text(i: &Interpretation, trace: bool) -> String {
    let values: Vec<String> = i.candidates_desc().iter().map(u64::to_string).collect();
    let mut out = String::new();
    let _ = writeln!(out, "{}", values.join(" "));
    let _ = writeln!(out, "confidence: {}", i.confidence());
    if trace {
        for d in i.derivations() {
            let parts: Vec<String> = d
                .steps
                .iter()
                .map(|s| format!("{} [{} {}]", s.contribution, atom_notation(&s.atom), s.rule))
                .collect();
            let _ = writeln!(out, "{} = {}", d.value, parts.join(" + "));
        }
        if i.is_deduplicated() {
            let _ = writeln!(
                out,
                "note: {} derivation(s) share a value with an earlier one",
                i.merged_duplicates()
            );
        }
    }
    out
}
