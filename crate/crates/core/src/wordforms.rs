//! Generation of the sandhi-transformed surface forms of a query word.
//!
//! A word that starts or ends in a vowel changes shape next to its
//! neighbors, so a literal search misses it. This module joins the query
//! word against every context that can transform it — each vowel as a
//! following word (plus om/oṁ), and `go`, the prepositions and each vowel as
//! a preceding word — and cuts the query-anchored slice out of every join.
//! Those slices, deduplicated, are the patterns to search for.

use std::collections::HashSet;

use thiserror::Error;

use crate::alphabet::{detokenize, schema, tokenize, AlphabetError, Phoneme};
use crate::sandhi::{vowel_sandhi, Provenance, Rule, SandhiOutcome};

/// Errors from form generation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormsError {
    #[error("the query word is empty")]
    EmptyWord,
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
}

/// One generated surface form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormEntry {
    /// The string to search for: the query-anchored slice of the join.
    pub pattern: String,
    /// The complete joined output the pattern was cut from.
    pub full_join: String,
    /// The context word used and the side it sat on; `_` marks the query
    /// form's slot.
    pub context: String,
    /// Rules that produced this form, in application order.
    pub rules: Vec<Rule>,
    /// The query word as given.
    pub source: String,
}

/// Deduplicated form entries, keyed by pattern, in insertion order.
#[derive(Debug, Clone, Default)]
pub struct FormSet {
    entries: Vec<FormEntry>,
    seen: HashSet<String>,
}

impl FormSet {
    pub fn new() -> FormSet {
        FormSet::default()
    }

    /// Insert unless the pattern is already present. Returns true if added.
    pub fn insert(&mut self, entry: FormEntry) -> bool {
        if self.seen.contains(&entry.pattern) {
            return false;
        }
        self.seen.insert(entry.pattern.clone());
        self.entries.push(entry);
        true
    }

    pub fn entries(&self) -> &[FormEntry] {
        &self.entries
    }

    pub fn patterns(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.pattern.as_str())
    }

    pub fn contains(&self, pattern: &str) -> bool {
        self.seen.contains(pattern)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// The query-anchored slice of a join: the shortest contiguous run of output
/// letters containing every letter tagged with the query's side, extended
/// over adjacent merged letters (a merged letter belongs to both words) and
/// adjacent inserted letters (the avagraha). Context-only letters stay out.
pub fn extract_pattern(outcome: &SandhiOutcome, query_side: Provenance) -> String {
    detokenize(&pattern_run(outcome, query_side))
}

fn pattern_run(outcome: &SandhiOutcome, query_side: Provenance) -> Vec<Phoneme> {
    let prov = outcome.provenance();
    let shared = |tag: Provenance| matches!(tag, Provenance::Merged | Provenance::Inserted);
    let mut bounds: Option<(usize, usize)> = None;
    for (i, &tag) in prov.iter().enumerate() {
        if tag == query_side {
            bounds = Some(match bounds {
                None => (i, i),
                Some((lo, _)) => (lo, i),
            });
        }
    }
    let (mut lo, mut hi) = match bounds {
        Some(b) => b,
        // The rule consumed the query word whole; the merged or inserted
        // letters stand in for it.
        None => {
            match (
                prov.iter().position(|&t| shared(t)),
                prov.iter().rposition(|&t| shared(t)),
            ) {
                (Some(lo), Some(hi)) => (lo, hi),
                _ => return Vec::new(),
            }
        }
    };
    while lo > 0 && shared(prov[lo - 1]) {
        lo -= 1;
    }
    while hi + 1 < prov.len() && shared(prov[hi + 1]) {
        hi += 1;
    }
    outcome.output()[lo..=hi].to_vec()
}

fn lit(text: &str) -> Vec<Phoneme> {
    tokenize(text).expect("context literal tokenizes")
}

/// Following-word contexts: every vowel as a one-letter word, plus om and oṁ
/// for the o-with-follower fusion. The extended set adds the lexical
/// triggers of the vṛddhi fusions.
fn suffix_contexts(extended: bool) -> Vec<Vec<Phoneme>> {
    let mut out: Vec<Vec<Phoneme>> = schema().vowels().into_iter().map(|v| vec![v]).collect();
    out.push(lit("om"));
    out.push(lit("oṁ"));
    if extended {
        for word in ["eti", "edhati", "ūh", "ūḍh", "īr", "ṛṇa"] {
            out.push(lit(word));
        }
    }
    out
}

/// Preceding-word contexts: go and the prepositions, plus every vowel as a
/// one-letter word. The extended set adds sva and the ṛṇa head words.
fn prefix_contexts(extended: bool) -> Vec<Vec<Phoneme>> {
    let mut out: Vec<Vec<Phoneme>> = ["go", "pra", "ava", "apa", "upa", "parā"]
        .iter()
        .map(|w| lit(w))
        .collect();
    out.extend(schema().vowels().into_iter().map(|v| vec![v]));
    if extended {
        for word in ["sva", "vatsara", "kambala", "vasana", "daśa", "ṛṇa"] {
            out.push(lit(word));
        }
    }
    out
}

/// Generate every searchable form of `query`.
///
/// Seeds with the word as given; joins it against each following context;
/// then joins every form found so far (a snapshot, so the loop is finite)
/// against each preceding context. Duplicate patterns collapse, first entry
/// wins.
pub fn generate_word_forms(query: &str, extended: bool) -> Result<FormSet, FormsError> {
    if query.is_empty() {
        return Err(FormsError::EmptyWord);
    }
    let query_seq = tokenize(query)?;
    let mut set = FormSet::new();
    let mut runs: Vec<Vec<Phoneme>> = Vec::new();

    if set.insert(FormEntry {
        pattern: query.to_string(),
        full_join: query.to_string(),
        context: "_".to_string(),
        rules: Vec::new(),
        source: query.to_string(),
    }) {
        runs.push(query_seq.clone());
    }

    for y_ctx in suffix_contexts(extended) {
        let outcome = vowel_sandhi(&query_seq, &y_ctx).expect("both words are non-empty");
        let run = pattern_run(&outcome, Provenance::FromX);
        let entry = FormEntry {
            pattern: detokenize(&run),
            full_join: outcome.joined(),
            context: format!("_ + {}", detokenize(&y_ctx)),
            rules: outcome.rules().to_vec(),
            source: query.to_string(),
        };
        if set.insert(entry) {
            runs.push(run);
        }
    }

    let snapshot = runs.clone();
    for y_run in &snapshot {
        for x_ctx in prefix_contexts(extended) {
            let outcome = vowel_sandhi(&x_ctx, y_run).expect("both words are non-empty");
            let run = pattern_run(&outcome, Provenance::FromY);
            let entry = FormEntry {
                pattern: detokenize(&run),
                full_join: outcome.joined(),
                context: format!("{} + _", detokenize(&x_ctx)),
                rules: outcome.rules().to_vec(),
                source: query.to_string(),
            };
            if set.insert(entry) {
                runs.push(run);
            }
        }
    }

    Ok(set)
}
