//! Sandhi-aware word search for Sanskrit e-texts.
//!
//! Sanskrit words change shape at word boundaries: euphonic conjunction
//! (sandhi) fuses and transforms adjacent letters, so a literal search for a
//! word misses the transformed forms it takes in running text. This crate
//! encodes the alphabet in a two-part binary schema that reduces the
//! Pāṇinian vowel-sandhi rules to bit tests and single category retargets,
//! uses that engine to enumerate the surface forms a query word can take,
//! and finds every form in UTF-8 IAST corpora in one multi-pattern pass.
//!
//! The pipeline, module by module:
//!
//! * [`alphabet`] — IAST tokenization and the 48-category binary letter code.
//! * [`sandhi`] — the vowel-sandhi processor (eleven rules, fixed order) and
//!   the ścutva consonant demonstration, with rule traces and per-letter
//!   provenance.
//! * [`wordforms`] — generation of all sandhi-transformed search patterns for
//!   a query word.
//! * [`ingest`] — corpus loading: UTF-8 validation, Unicode normalization,
//!   Devanāgarī-to-IAST transliteration.
//! * [`search`] — simultaneous multi-pattern matching over loaded documents,
//!   plus a naive scan oracle used for verification.
//! * [`cli`] — the `sandhika` command-line surface (`join`, `forms`,
//!   `search`, `translit`).

pub mod alphabet;
pub mod cli;
pub mod ingest;
pub mod sandhi;
pub mod search;
pub mod wordforms;

pub use alphabet::{LetterClass, LetterCode, Phoneme};
pub use ingest::Document;
pub use sandhi::{Provenance, Rule, SandhiOutcome};
pub use search::Match;
pub use wordforms::{FormEntry, FormSet};
