//! The `sandhika` command-line surface: `join`, `forms`, `search`,
//! `translit`.
//!
//! Every command can emit a machine-readable JSON report; the plain
//! rendering is a pure function of that report, so the two modes always
//! carry the same content. Exit codes: 0 success (for `search`, at least
//! one hit), 1 clean no-match, 2 input error.

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::alphabet::tokenize;
use crate::ingest::{load_document, normalize_text, transliterate_devanagari};
use crate::sandhi::{apply_scutva, vowel_sandhi, SandhiOutcome};
use crate::search::{build_matcher, search_docs};
use crate::wordforms::{generate_word_forms, FormSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_MATCH: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "sandhika",
    version,
    about = "Sandhi-aware word search for Sanskrit e-texts (IAST)"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Join two words and report the applied rules
    Join {
        /// First word (IAST)
        x: String,
        /// Second word (IAST)
        y: String,
        /// Apply the ścutva consonant rule instead of the vowel rules
        #[arg(long)]
        scutva: bool,
        /// Print the rule trace and per-letter provenance
        #[arg(long)]
        trace: bool,
        /// Emit a JSON report
        #[arg(long)]
        json: bool,
    },
    /// List the sandhi-transformed search forms of a word
    Forms {
        /// Query word (IAST)
        word: String,
        /// Also join against the lexical trigger words (eti, ūḍh, ṛṇa ...)
        #[arg(long)]
        extended_contexts: bool,
        /// Emit a JSON report
        #[arg(long)]
        json: bool,
    },
    /// Find every form of a word in UTF-8 text files
    Search {
        /// Query word (IAST)
        word: String,
        /// Files to search
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Emit a JSON report
        #[arg(long)]
        json: bool,
        /// Lowercase the corpus and the query before matching
        #[arg(long)]
        fold_case: bool,
        /// Also join against the lexical trigger words
        #[arg(long)]
        extended_contexts: bool,
    },
    /// Transliterate a Devanāgarī file to IAST on standard output
    Translit {
        /// File to transliterate
        path: PathBuf,
    },
}

/// Join report: the fused word, rule trace, and per-letter provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct JoinReport {
    pub x: String,
    pub y: String,
    pub joined: String,
    pub rules: Vec<String>,
    pub letters: Vec<LetterProvenance>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LetterProvenance {
    pub letter: String,
    pub origin: String,
}

impl JoinReport {
    pub fn from_outcome(x: &str, y: &str, outcome: &SandhiOutcome) -> JoinReport {
        JoinReport {
            x: x.to_string(),
            y: y.to_string(),
            joined: outcome.joined(),
            rules: outcome.rules().iter().map(|r| r.to_string()).collect(),
            letters: outcome
                .letters()
                .map(|(p, tag)| LetterProvenance {
                    letter: p.surface().to_string(),
                    origin: tag.to_string(),
                })
                .collect(),
        }
    }
}

/// Form listing report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FormsReport {
    pub source: String,
    pub entries: Vec<FormRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FormRecord {
    pub pattern: String,
    pub full_join: String,
    pub context: String,
    pub rules: Vec<String>,
}

impl FormsReport {
    pub fn from_set(set: &FormSet) -> FormsReport {
        let source = set
            .entries()
            .first()
            .map(|e| e.source.clone())
            .unwrap_or_default();
        FormsReport {
            source,
            entries: set
                .entries()
                .iter()
                .map(|e| FormRecord {
                    pattern: e.pattern.clone(),
                    full_join: e.full_join.clone(),
                    context: e.context.clone(),
                    rules: e.rules.iter().map(|r| r.to_string()).collect(),
                })
                .collect(),
        }
    }
}

/// Search report: one record per corpus hit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchReport {
    pub query: String,
    pub entries: Vec<MatchRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MatchRecord {
    pub path: String,
    pub byte_offset: usize,
    pub line: usize,
    pub column: usize,
    pub pattern: String,
    pub rules: Vec<String>,
    pub context: String,
}

fn join_rules(rules: &[String]) -> String {
    if rules.is_empty() {
        "-".to_string()
    } else {
        rules.join(", ")
    }
}

/// Plain rendering of a join report.
pub fn render_join(report: &JoinReport, trace: bool) -> String {
    let mut out = format!("{}\n", report.joined);
    if trace {
        if report.rules.is_empty() {
            out.push_str("rule: none\n");
        }
        for rule in &report.rules {
            out.push_str(&format!("rule: {rule}\n"));
        }
        let letters: Vec<String> = report
            .letters
            .iter()
            .map(|l| format!("{}={}", l.letter, l.origin))
            .collect();
        out.push_str(&format!("letters: {}\n", letters.join(" ")));
    }
    out
}

/// Plain rendering of a forms report: `<pattern>\t<rules>\t<context>`.
pub fn render_forms(report: &FormsReport) -> String {
    report
        .entries
        .iter()
        .map(|e| format!("{}\t{}\t{}\n", e.pattern, join_rules(&e.rules), e.context))
        .collect()
}

/// Plain rendering of a search report: `<path>:<line>:<col>\t<pattern>\t<rules>`.
pub fn render_search(report: &SearchReport) -> String {
    report
        .entries
        .iter()
        .map(|e| {
            format!(
                "{}:{}:{}\t{}\t{}\n",
                e.path,
                e.line,
                e.column,
                e.pattern,
                join_rules(&e.rules)
            )
        })
        .collect()
}

fn fail(message: impl std::fmt::Display) -> i32 {
    eprintln!("error: {message}");
    EXIT_INPUT_ERROR
}

fn emit_json<T: Serialize>(report: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(report).expect("reports serialize")
    );
}

fn cmd_join(x: &str, y: &str, scutva: bool, trace: bool, json: bool) -> i32 {
    let x_seq = match tokenize(x) {
        Ok(seq) => seq,
        Err(e) => return fail(format!("first word: {e}")),
    };
    let y_seq = match tokenize(y) {
        Ok(seq) => seq,
        Err(e) => return fail(format!("second word: {e}")),
    };
    let outcome = if scutva {
        apply_scutva(&x_seq, &y_seq)
    } else {
        vowel_sandhi(&x_seq, &y_seq)
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => return fail(e),
    };
    let report = JoinReport::from_outcome(x, y, &outcome);
    if json {
        emit_json(&report);
    } else {
        print!("{}", render_join(&report, trace));
    }
    EXIT_OK
}

fn cmd_forms(word: &str, extended: bool, json: bool) -> i32 {
    let set = match generate_word_forms(word, extended) {
        Ok(set) => set,
        Err(e) => return fail(e),
    };
    let report = FormsReport::from_set(&set);
    if json {
        emit_json(&report);
    } else {
        print!("{}", render_forms(&report));
    }
    EXIT_OK
}

fn cmd_search(word: &str, paths: &[PathBuf], json: bool, fold: bool, extended: bool) -> i32 {
    let query = if fold {
        word.to_lowercase()
    } else {
        word.to_string()
    };
    let set = match generate_word_forms(&query, extended) {
        Ok(set) => set,
        Err(e) => return fail(e),
    };
    let mut docs = Vec::with_capacity(paths.len());
    for path in paths {
        match load_document(path) {
            Ok(doc) => docs.push(if fold { doc.fold_case() } else { doc }),
            Err(e) => return fail(e),
        }
    }
    let patterns: Vec<&str> = set.patterns().collect();
    let matcher = match build_matcher(&patterns) {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    let matches = search_docs(&matcher, &docs);
    let entries = matches
        .iter()
        .map(|m| {
            let entry = &set.entries()[m.pattern_id];
            MatchRecord {
                path: m.path.clone(),
                byte_offset: m.byte_offset,
                line: m.line,
                column: m.column,
                pattern: m.pattern.clone(),
                rules: entry.rules.iter().map(|r| r.to_string()).collect(),
                context: entry.context.clone(),
            }
        })
        .collect();
    let report = SearchReport {
        query: query.clone(),
        entries,
    };
    if json {
        emit_json(&report);
    } else {
        print!("{}", render_search(&report));
    }
    if report.entries.is_empty() {
        EXIT_NO_MATCH
    } else {
        EXIT_OK
    }
}

fn cmd_translit(path: &PathBuf) -> i32 {
    let bytes = match std::fs::read(path) {
        Ok(b) => b,
        Err(e) => return fail(format!("{}: {e}", path.display())),
    };
    let text = match normalize_text(&bytes) {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    match transliterate_devanagari(&text) {
        Ok(out) => {
            print!("{out}");
            EXIT_OK
        }
        Err(e) => fail(e),
    }
}

/// Run the CLI against explicit arguments; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT_ERROR,
            };
            let _ = e.print();
            return code;
        }
    };
    match &cli.command {
        Command::Join {
            x,
            y,
            scutva,
            trace,
            json,
        } => cmd_join(x, y, *scutva, *trace, *json),
        Command::Forms {
            word,
            extended_contexts,
            json,
        } => cmd_forms(word, *extended_contexts, *json),
        Command::Search {
            word,
            paths,
            json,
            fold_case,
            extended_contexts,
        } => cmd_search(word, paths, *json, *fold_case, *extended_contexts),
        Command::Translit { path } => cmd_translit(path),
    }
}

/// Entry point for the binary: parse `std::env::args_os` and dispatch.
pub fn main() -> i32 {
    run(std::env::args_os())
}
