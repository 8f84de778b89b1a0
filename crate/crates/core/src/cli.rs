//! Command-line front end. Every command reads documents from files and writes
//! canonical documents or report lines to the given output stream.
//!
//! Exit codes: 0 success or equivalent, 1 not equivalent (or oracle mismatch),
//! 2 invalid input, 3 closure budget exhausted.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{Map, Value};

use crate::classic::Word;
use crate::constructions::{
    compute_range_with_budget, crispify_nthfa_with_budget, decompose_with_budget, determinize_cnthfa,
    embed_cnthfa, equivalent_with_budget, intersect_cdthfa, recompose, to_cdthfa_with_budget, to_nthfa,
    union_nthfa,
};
use crate::error::Error;
use crate::format::{parse_document, serialize_document, validate_text, Document};
use crate::hesitant::{HesitantAutomaton, HesitantLanguage};
use crate::hfe::DEFAULT_BUDGET;
use crate::oracle::{languages_agree_up_to, reference_eval_bounded, WordStream};

pub const EXIT_OK: u8 = 0;
pub const EXIT_DIFFERENT: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "thfa", version, about = "Typical hesitant fuzzy automata toolkit")]
struct Cli {
    /// Maximum number of value vectors explored by saturation-based commands.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a word. Single-character alphabets take the word as one string,
    /// otherwise symbols are separated by '.'; "" or --lambda is the empty word.
    Eval {
        file: PathBuf,
        word: Option<String>,
        #[arg(long)]
        lambda: bool,
    },
    /// Automaton for the pointwise sup-combination of two languages.
    Union { left: PathBuf, right: PathBuf },
    /// Deterministic automaton for the pointwise inf-combination of two languages.
    Intersect { left: PathBuf, right: PathBuf },
    /// Subset construction (crisp kinds and NFAs); weighted inputs are crispified first.
    Determinize { file: PathBuf },
    /// Crisp nondeterministic automaton with one extra sink state.
    Crispify { file: PathBuf },
    /// Weighted automaton with {0}/{1} transitions for a crisp one.
    Embed { file: PathBuf },
    /// Level decomposition; with -o, also writes one file per level.
    Decompose {
        file: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Single weighted automaton from a decomposition.
    Recompose { file: PathBuf },
    /// Every value the language takes, one per line.
    Range { file: PathBuf },
    /// Decide whether two automata compute the same language.
    Equiv { left: PathBuf, right: PathBuf },
    /// Report every problem with a document.
    Validate { file: PathBuf },
    /// Check against brute-force references on all words up to --max-len.
    OracleCheck {
        file: PathBuf,
        other: Option<PathBuf>,
        #[arg(long, default_value_t = crate::oracle::DEFAULT_REFERENCE_BOUND)]
        max_len: usize,
    },
}

enum Failure {
    Input(Error),
    Budget(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ClosureBudgetExceeded { limit } => Failure::Budget(limit),
            other => Failure::Input(other),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn load(path: &Path) -> Result<Document, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(Error::Syntax(format!("cannot read {}: {e}", path.display()))))?;
    Ok(parse_document(&text)?.document)
}

fn load_hesitant(path: &Path) -> Result<HesitantAutomaton, Failure> {
    Ok(load(path)?.into_hesitant()?)
}

fn emit(out: &mut dyn Write, doc: &Document, metadata: Option<Map<String, Value>>) -> Outcome {
    write_text(out, &serialize_document(doc, metadata))
}

fn write_text(out: &mut dyn Write, text: &str) -> Outcome {
    out.write_all(text.as_bytes()).map_err(|e| Failure::Input(Error::Syntax(format!("write failed: {e}"))))?;
    Ok(EXIT_OK)
}

fn execute(cli: Cli, out: &mut dyn Write) -> Outcome {
    let budget = cli.budget;
    match cli.command {
        Command::Eval { file, word, lambda } => {
            let doc = load(&file)?;
            let text = if lambda { "" } else { word.as_deref().unwrap_or("") };
            let word = doc.alphabet().parse_word(text)?;
            let line = match &doc {
                Document::Dfa(d) => verdict_line(d.accepts(&word)?),
                Document::Nfa(n) => verdict_line(n.accepts(&word)?),
                Document::Nthfa(m) => m.eval(&word)?.to_string(),
                Document::Cnthfa(n) => n.eval(&word)?.to_string(),
                Document::Cdthfa(d) => d.eval(&word)?.to_string(),
                Document::Decomposition(l) => l.eval(&word)?.to_string(),
            };
            write_text(out, &format!("{line}\n"))
        }
        Command::Union { left, right } => {
            let m1 = to_nthfa(&load_hesitant(&left)?);
            let m2 = to_nthfa(&load_hesitant(&right)?);
            emit(out, &Document::Nthfa(union_nthfa(&m1, &m2)?), None)
        }
        Command::Intersect { left, right } => {
            let d1 = to_cdthfa_with_budget(&load_hesitant(&left)?, budget)?;
            let d2 = to_cdthfa_with_budget(&load_hesitant(&right)?, budget)?;
            emit(out, &Document::Cdthfa(intersect_cdthfa(&d1, &d2)?), None)
        }
        Command::Determinize { file } => match load(&file)? {
            Document::Nfa(n) => emit(out, &Document::Dfa(n.to_dfa()), None),
            Document::Dfa(d) => emit(out, &Document::Dfa(d.to_nfa().to_dfa()), None),
            Document::Cnthfa(n) => emit(out, &Document::Cdthfa(determinize_cnthfa(&n)), None),
            Document::Cdthfa(d) => emit(out, &Document::Cdthfa(determinize_cnthfa(&d.to_cnthfa())), None),
            Document::Nthfa(m) => {
                emit(out, &Document::Cdthfa(to_cdthfa_with_budget(&m.into(), budget)?), None)
            }
            other => Err(wrong_kind("an automaton", &other)),
        },
        Command::Crispify { file } => match load(&file)? {
            Document::Nthfa(m) => {
                let result = crispify_nthfa_with_budget(&m, budget)?;
                let metadata = result.normalized.then(|| {
                    let mut meta = Map::new();
                    meta.insert("normalized".into(), Value::String("decompose-recompose".into()));
                    meta
                });
                emit(out, &Document::Cnthfa(result.automaton), metadata)
            }
            other => Err(wrong_kind("nthfa", &other)),
        },
        Command::Embed { file } => match load(&file)? {
            Document::Cnthfa(n) => emit(out, &Document::Nthfa(embed_cnthfa(&n)), None),
            Document::Cdthfa(d) => emit(out, &Document::Nthfa(embed_cnthfa(&d.to_cnthfa())), None),
            other => Err(wrong_kind("cnthfa or cdthfa", &other)),
        },
        Command::Decompose { file, output } => {
            let m = to_nthfa(&load_hesitant(&file)?);
            let levels = decompose_with_budget(&m, budget)?;
            let doc = Document::Decomposition(levels.clone());
            match output {
                None => emit(out, &doc, None),
                Some(dir) => {
                    let io = |e: std::io::Error| Failure::Input(Error::Syntax(format!("cannot write output: {e}")));
                    fs::create_dir_all(&dir).map_err(io)?;
                    let mut listing = String::new();
                    let manifest = dir.join("decomposition.json");
                    fs::write(&manifest, serialize_document(&doc, None)).map_err(io)?;
                    listing.push_str(&format!("{}\n", manifest.display()));
                    for (i, (k, nfa)) in levels.levels().iter().enumerate() {
                        let mut meta = Map::new();
                        meta.insert("level".into(), Value::Array(k.to_strings().into_iter().map(Value::String).collect()));
                        let path = dir.join(format!("level-{i}.json"));
                        fs::write(&path, serialize_document(&Document::Nfa(nfa.clone()), Some(meta))).map_err(io)?;
                        listing.push_str(&format!("{}\n", path.display()));
                    }
                    write_text(out, &listing)
                }
            }
        }
        Command::Recompose { file } => match load(&file)? {
            Document::Decomposition(l) => emit(out, &Document::Nthfa(recompose(&l)?), None),
            other => Err(wrong_kind("decomposition", &other)),
        },
        Command::Range { file } => {
            let m = to_nthfa(&load_hesitant(&file)?);
            let range = compute_range_with_budget(&m, budget)?;
            let text: String = range.iter().map(|x| format!("{x}\n")).collect();
            write_text(out, &text)
        }
        Command::Equiv { left, right } => {
            let a = load_hesitant(&left)?;
            let b = load_hesitant(&right)?;
            let verdict = equivalent_with_budget(&a, &b, budget)?;
            match verdict.counterexample {
                None => write_text(out, "equivalent\n"),
                Some(word) => {
                    let w = a.alphabet().format_word(&word);
                    write_text(
                        out,
                        &format!("not equivalent\ncounterexample: {w}\nleft: {}\nright: {}\n", a.eval(&word)?, b.eval(&word)?),
                    )?;
                    Ok(EXIT_DIFFERENT)
                }
            }
        }
        Command::Validate { file } => {
            let text = fs::read_to_string(&file)
                .map_err(|e| Failure::Input(Error::Syntax(format!("cannot read {}: {e}", file.display()))))?;
            let diagnostics = validate_text(&text)?;
            let mut report: String = diagnostics.iter().map(|d| format!("{d}\n")).collect();
            let fatal = diagnostics.iter().any(|d| !d.is_warning());
            if !fatal {
                report.push_str("ok\n");
            }
            write_text(out, &report)?;
            Ok(if fatal { EXIT_INPUT } else { EXIT_OK })
        }
        Command::OracleCheck { file, other, max_len } => {
            let a = load_hesitant(&file)?;
            match other {
                Some(other) => {
                    let b = load_hesitant(&other)?;
                    let verdict = languages_agree_up_to(&a, &b, max_len)?;
                    match verdict.counterexample {
                        None => write_text(out, &format!("agree on all words up to length {max_len}\n")),
                        Some(word) => {
                            write_text(out, &format!("differ at {}\n", a.alphabet().format_word(&word)))?;
                            Ok(EXIT_DIFFERENT)
                        }
                    }
                }
                None => {
                    let reference = to_nthfa(&a);
                    let mut checked = 0usize;
                    for word in WordStream::new(a.alphabet(), max_len) {
                        let word = a.alphabet().decode(&word);
                        let fast = a.eval(&word)?;
                        let slow = reference_eval_bounded(&reference, &word, max_len)?;
                        if fast != slow {
                            write_text(
                                out,
                                &format!(
                                    "mismatch at {}: evaluated {fast}, reference {slow}\n",
                                    a.alphabet().format_word(&word)
                                ),
                            )?;
                            return Ok(EXIT_DIFFERENT);
                        }
                        checked += 1;
                    }
                    write_text(out, &format!("reference agrees on {checked} words up to length {max_len}\n"))
                }
            }
        }
    }
}

fn verdict_line(accepted: bool) -> String {
    if accepted { "accepted" } else { "rejected" }.to_string()
}

fn wrong_kind(expected: &str, found: &Document) -> Failure {
    Failure::Input(Error::WrongKind { expected: expected.into(), found: found.kind().to_string() })
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(Failure::Input(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
        Err(Failure::Budget(limit)) => {
            let _ = writeln!(err, "budget-exceeded: limit={limit}");
            EXIT_BUDGET
        }
    }
}

/// Convenience for tests: words in the command-line syntax.
pub fn parse_word_arg(doc: &Document, text: &str) -> crate::error::Result<Word> {
    doc.alphabet().parse_word(text)
}
