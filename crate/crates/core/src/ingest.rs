//! Corpus ingestion: UTF-8 validation, Unicode normalization, Devanāgarī
//! transliteration, and line indexing.
//!
//! Everything downstream works on one canonical encoding: composed (NFC)
//! IAST with LF line endings. Files in Devanāgarī are transliterated on
//! load; the rules and the search never see the original script.

use std::fs;
use std::path::Path;

use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

/// Errors from loading and converting corpus files.
#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid UTF-8 at byte {offset}")]
    InvalidUtf8 { offset: usize },
    #[error("no transliteration for {codepoint:?} (U+{code:04X}) at character {offset}", code = *codepoint as u32)]
    UnmappedCodePoint { offset: usize, codepoint: char },
}

/// A loaded e-text in canonical IAST form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    /// Source identifier (the path it was loaded from).
    pub path: String,
    /// Normalized text: NFC, LF line endings.
    pub text: String,
    /// Byte offsets of line beginnings; `[0]` even for empty text.
    pub line_starts: Vec<usize>,
}

impl Document {
    /// Wrap already-normalized text. Callers own the normalization
    /// guarantee; file loading goes through [`load_document`] instead.
    pub fn new(path: impl Into<String>, text: impl Into<String>) -> Document {
        let text = text.into();
        let line_starts = line_starts_of(&text);
        Document {
            path: path.into(),
            text,
            line_starts,
        }
    }

    /// 1-based line and 1-based column (in code points) of a byte offset.
    pub fn line_col(&self, byte_offset: usize) -> (usize, usize) {
        let line_index = self
            .line_starts
            .partition_point(|&start| start <= byte_offset)
            .saturating_sub(1);
        let start = self.line_starts[line_index];
        let column = self.text[start..byte_offset.min(self.text.len())]
            .chars()
            .count()
            + 1;
        (line_index + 1, column)
    }

    /// Lowercase the text for case-insensitive matching, reindexing lines.
    pub fn fold_case(self) -> Document {
        Document::new(self.path, self.text.to_lowercase())
    }
}

fn line_starts_of(text: &str) -> Vec<usize> {
    let mut starts = vec![0];
    for (i, b) in text.bytes().enumerate() {
        if b == b'\n' {
            starts.push(i + 1);
        }
    }
    starts
}

/// Decode UTF-8, normalize line endings to LF, and bring the text into
/// composed (NFC) form so precomposed and decomposed diacritics compare
/// equal. Idempotent.
pub fn normalize_text(bytes: &[u8]) -> Result<String, IngestError> {
    let s = std::str::from_utf8(bytes).map_err(|e| IngestError::InvalidUtf8 {
        offset: e.valid_up_to(),
    })?;
    let mut unified = String::with_capacity(s.len());
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        if c == '\r' {
            if chars.peek() == Some(&'\n') {
                chars.next();
            }
            unified.push('\n');
        } else {
            unified.push(c);
        }
    }
    Ok(unified.nfc().collect())
}

/// True for code points in the Devanāgarī block (U+0900–U+097F).
pub fn is_devanagari(c: char) -> bool {
    ('\u{0900}'..='\u{097F}').contains(&c)
}

fn independent_vowel(c: char) -> Option<&'static str> {
    Some(match c {
        'अ' => "a",
        'आ' => "ā",
        'इ' => "i",
        'ई' => "ī",
        'उ' => "u",
        'ऊ' => "ū",
        'ऋ' => "ṛ",
        'ॠ' => "ṝ",
        'ऌ' => "ḷ",
        'ॡ' => "ḹ",
        'ए' => "e",
        'ऐ' => "ai",
        'ओ' => "o",
        'औ' => "au",
        _ => return None,
    })
}

fn consonant(c: char) -> Option<&'static str> {
    Some(match c {
        'क' => "k",
        'ख' => "kh",
        'ग' => "g",
        'घ' => "gh",
        'ङ' => "ṅ",
        'च' => "c",
        'छ' => "ch",
        'ज' => "j",
        'झ' => "jh",
        'ञ' => "ñ",
        'ट' => "ṭ",
        'ठ' => "ṭh",
        'ड' => "ḍ",
        'ढ' => "ḍh",
        'ण' => "ṇ",
        'त' => "t",
        'थ' => "th",
        'द' => "d",
        'ध' => "dh",
        'न' => "n",
        'प' => "p",
        'फ' => "ph",
        'ब' => "b",
        'भ' => "bh",
        'म' => "m",
        'य' => "y",
        'र' => "r",
        'ल' => "l",
        'व' => "v",
        'श' => "ś",
        'ष' => "ṣ",
        'स' => "s",
        'ह' => "h",
        _ => return None,
    })
}

fn vowel_sign(c: char) -> Option<&'static str> {
    Some(match c {
        '\u{093E}' => "ā",
        '\u{093F}' => "i",
        '\u{0940}' => "ī",
        '\u{0941}' => "u",
        '\u{0942}' => "ū",
        '\u{0943}' => "ṛ",
        '\u{0944}' => "ṝ",
        '\u{0962}' => "ḷ",
        '\u{0963}' => "ḹ",
        '\u{0947}' => "e",
        '\u{0948}' => "ai",
        '\u{094B}' => "o",
        '\u{094C}' => "au",
        _ => return None,
    })
}

fn sign(c: char) -> Option<&'static str> {
    Some(match c {
        '\u{0902}' => "ṁ", // anusvāra
        '\u{0903}' => "ḥ", // visarga
        '\u{0901}' => "m̐", // candrabindu
        'ऽ' => "'",
        'ॐ' => "oṁ",
        '।' => "|",
        '॥' => "||",
        '०' => "0",
        '१' => "1",
        '२' => "2",
        '३' => "3",
        '४' => "4",
        '५' => "5",
        '६' => "6",
        '७' => "7",
        '८' => "8",
        '९' => "9",
        _ => return None,
    })
}

/// Transliterate Devanāgarī to IAST. Consonants carry an inherent `a`
/// unless a virāma or a dependent vowel sign follows; non-Devanāgarī
/// characters pass through. Offsets in errors count characters.
pub fn transliterate_devanagari(text: &str) -> Result<String, IngestError> {
    const VIRAMA: char = '\u{094D}';
    let mut out = String::with_capacity(text.len());
    // A consonant waiting to learn its vowel.
    let mut pending: Option<&'static str> = None;
    let flush = |pending: &mut Option<&'static str>, out: &mut String| {
        if let Some(prev) = pending.take() {
            out.push_str(prev);
            out.push('a');
        }
    };
    for (offset, c) in text.chars().enumerate() {
        if let Some(cons) = consonant(c) {
            flush(&mut pending, &mut out);
            pending = Some(cons);
            continue;
        }
        if let Some(v) = vowel_sign(c) {
            match pending.take() {
                Some(prev) => {
                    out.push_str(prev);
                    out.push_str(v);
                }
                None => {
                    return Err(IngestError::UnmappedCodePoint {
                        offset,
                        codepoint: c,
                    })
                }
            }
            continue;
        }
        if c == VIRAMA {
            match pending.take() {
                Some(prev) => out.push_str(prev),
                None => {
                    return Err(IngestError::UnmappedCodePoint {
                        offset,
                        codepoint: c,
                    })
                }
            }
            continue;
        }
        flush(&mut pending, &mut out);
        if let Some(v) = independent_vowel(c) {
            out.push_str(v);
            continue;
        }
        if let Some(s) = sign(c) {
            out.push_str(s);
            continue;
        }
        if is_devanagari(c) {
            return Err(IngestError::UnmappedCodePoint {
                offset,
                codepoint: c,
            });
        }
        out.push(c);
    }
    flush(&mut pending, &mut out);
    Ok(out)
}

/// Read a file, normalize it, transliterate if it carries Devanāgarī, and
/// index its lines.
pub fn load_document(path: impl AsRef<Path>) -> Result<Document, IngestError> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let bytes = fs::read(path).map_err(|source| IngestError::Io {
        path: display.clone(),
        source,
    })?;
    let mut text = normalize_text(&bytes)?;
    if text.chars().any(is_devanagari) {
        text = transliterate_devanagari(&text)?;
        text = text.nfc().collect();
    }
    Ok(Document::new(display, text))
}
