//! Multi-pattern search over loaded documents.
//!
//! The matcher reports every occurrence of every pattern — overlapping hits
//! and patterns nested inside other patterns included — in one pass, in time
//! linear in the text plus the matches. Sandhi fuses words, so transformed
//! forms sit inside unbroken letter runs: matching is plain substring
//! matching, never word-boundary matching. [`naive_search`] is the
//! brute-force oracle the fast path is verified against.

use aho_corasick::AhoCorasick;
use thiserror::Error;

use crate::ingest::Document;

/// Errors from building a matcher.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("the pattern set is empty")]
    EmptyPatternSet,
    #[error("pattern {index} is empty")]
    EmptyPattern { index: usize },
}

/// A single corpus hit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Match {
    pub path: String,
    /// Byte offset of the hit in the document text.
    pub byte_offset: usize,
    /// 1-based line number.
    pub line: usize,
    /// 1-based column, counted in code points.
    pub column: usize,
    /// The matched pattern (the text at `byte_offset` starts with it).
    pub pattern: String,
    /// Index of the pattern in the set the matcher was built from; ties the
    /// hit back to its originating form entry.
    pub pattern_id: usize,
}

fn sort_matches(matches: &mut [Match]) {
    matches.sort_by(|a, b| {
        a.path
            .cmp(&b.path)
            .then(a.byte_offset.cmp(&b.byte_offset))
            .then(a.pattern.cmp(&b.pattern))
            .then(a.pattern_id.cmp(&b.pattern_id))
    });
}

/// A compiled multi-pattern matcher. Immutable and shareable once built.
#[derive(Debug)]
pub struct Matcher {
    patterns: Vec<String>,
    automaton: AhoCorasick,
}

impl Matcher {
    pub fn patterns(&self) -> &[String] {
        &self.patterns
    }

    /// Approximate heap footprint of the compiled automaton, in bytes.
    pub fn memory_usage(&self) -> usize {
        self.automaton.memory_usage() + self.patterns.iter().map(|p| p.len()).sum::<usize>()
    }
}

/// Compile a set of patterns for simultaneous matching.
pub fn build_matcher<S: AsRef<str>>(patterns: &[S]) -> Result<Matcher, SearchError> {
    if patterns.is_empty() {
        return Err(SearchError::EmptyPatternSet);
    }
    if let Some(index) = patterns.iter().position(|p| p.as_ref().is_empty()) {
        return Err(SearchError::EmptyPattern { index });
    }
    let automaton = AhoCorasick::new(patterns.iter().map(|p| p.as_ref()))
        .expect("non-empty literal patterns compile");
    Ok(Matcher {
        patterns: patterns.iter().map(|p| p.as_ref().to_string()).collect(),
        automaton,
    })
}

/// All matches of all patterns across all documents, sorted by
/// (path, byte offset, pattern). Deterministic regardless of input order
/// within a document list.
pub fn search_docs(matcher: &Matcher, docs: &[Document]) -> Vec<Match> {
    let mut out = Vec::new();
    for doc in docs {
        for m in matcher.automaton.find_overlapping_iter(&doc.text) {
            let pattern_id = m.pattern().as_usize();
            let (line, column) = doc.line_col(m.start());
            out.push(Match {
                path: doc.path.clone(),
                byte_offset: m.start(),
                line,
                column,
                pattern: matcher.patterns[pattern_id].clone(),
                pattern_id,
            });
        }
    }
    sort_matches(&mut out);
    out
}

/// Position-by-position scan with the same contract as [`search_docs`].
/// Deliberately simple: this is the oracle, kept independent of the
/// automaton path.
pub fn naive_search<S: AsRef<str>>(patterns: &[S], docs: &[Document]) -> Vec<Match> {
    let mut out = Vec::new();
    for doc in docs {
        for (offset, _) in doc.text.char_indices() {
            let rest = &doc.text[offset..];
            for (pattern_id, pattern) in patterns.iter().enumerate() {
                let pattern = pattern.as_ref();
                if !pattern.is_empty() && rest.starts_with(pattern) {
                    let (line, column) = doc.line_col(offset);
                    out.push(Match {
                        path: doc.path.clone(),
                        byte_offset: offset,
                        line,
                        column,
                        pattern: pattern.to_string(),
                        pattern_id,
                    });
                }
            }
        }
    }
    sort_matches(&mut out);
    out
}
