//! The letter alphabet: IAST tokenization and the two-part binary letter code.
//!
//! Every letter is identified in two parts. Part 1 is a 48-bit category
//! membership string: bits 0-3 are the class flags (vowel, semivowel,
//! consonant, special) and bits 4-47 mark the category rows the letter
//! belongs to. Part 2 holds, for each set category bit, a one-hot term index
//! (width at most 16) locating the letter inside that row. A letter that
//! occurs in several rows carries all of those memberships in one
//! [`LetterCode`], so every Part 2 question is category-qualified.
//!
//! The row layout is loaded from `data/letter_categories.txt`, the bit-exact
//! source of truth for the category table.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

/// Number of Part 1 bits.
pub const CATEGORY_COUNT: usize = 48;
/// Maximum entries per category row (Part 2 width).
pub const MAX_ROW_LEN: usize = 16;

/// Class flag bits (Part 1 bits 0-3).
pub const FLAG_VOWEL: usize = 0;
pub const FLAG_SEMIVOWEL: usize = 1;
pub const FLAG_CONSONANT: usize = 2;
pub const FLAG_SPECIAL: usize = 3;

/// First category row carrying Part 2 indices.
pub const FIRST_CATEGORY_ROW: usize = 4;

// Category rows the sandhi rules test and retarget, named by content.
pub const ROW_A: usize = 4; // a
pub const ROW_A_PAIR: usize = 5; // a ā
pub const ROW_LONG_TRIO: usize = 7; // ī ū ā
pub const ROW_SIMPLE_SHORT: usize = 8; // i u [ṛ ḷ] a
pub const ROW_SIMPLE_LONG: usize = 9; // ī ū ṝ ā
pub const ROW_IK: usize = 10; // i u ṛ ḷ
pub const ROW_IK_LONG: usize = 11; // ī ū ṝ
pub const ROW_R_VOWELS: usize = 12; // ṛ ṝ ḷ
pub const ROW_E_O: usize = 13;
pub const ROW_AI_AU: usize = 14;
pub const ROW_EC: usize = 15; // o au e ai
pub const ROW_GUNA: usize = 16; // e o ar al
pub const ROW_VRDDHI_R: usize = 17; // ār ār āl
pub const ROW_AYADI: usize = 18; // av āv ay āy
pub const ROW_AVA: usize = 19; // ava
pub const ROW_YAN: usize = 20; // y v r l
pub const ROW_H: usize = 25;
pub const ROW_M: usize = 28;
pub const ROW_PALATALS: usize = 30; // c ch j jh ñ ś
pub const ROW_DENTALS: usize = 32; // t th d dh n s
pub const ROW_ANUSVARA: usize = 42;
pub const ROW_AVAGRAHA: usize = 46;

/// Errors from alphabet operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlphabetError {
    /// A character outside the alphabet inventory.
    #[error("unknown character {character:?} at position {position}")]
    UnknownCharacter { character: char, position: usize },
    /// A category row has no entry at the requested index.
    #[error("category {category} has no entry at index {index}")]
    IndexOutOfRange { category: usize, index: usize },
    /// The entry is a sublist; it cannot be decoded without the originating
    /// letter's identity.
    #[error("category {category} index {index} is a sublist and cannot be decoded alone")]
    AmbiguousSublist { category: usize, index: usize },
    /// The letter holds no membership in the given category.
    #[error("letter holds no membership in category {category}")]
    NotInCategory { category: usize },
}

/// Errors while parsing or validating the category schema file.
#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("line {line}: expected `<row>|<entries>`")]
    Malformed { line: usize },
    #[error("line {line}: bad row number {text:?}")]
    BadRowNumber { line: usize, text: String },
    #[error("row {row} defined twice")]
    DuplicateRow { row: usize },
    #[error("row {row} missing")]
    MissingRow { row: usize },
    #[error("row {row} has {len} entries; the maximum is {MAX_ROW_LEN}")]
    RowTooLong { row: usize, len: usize },
    #[error("row {row}: letter sequence {surface:?} does not tokenize")]
    UnknownLetter { row: usize, surface: String },
    #[error("duplicate letter {surface:?} in the class listings")]
    DuplicateLetter { surface: String },
    #[error("letter {surface:?} appears twice in row {row}")]
    DuplicateMembership { surface: String, row: usize },
    #[error("row {row} must hold exactly `{expected}`")]
    FixedRowMismatch { row: usize, expected: &'static str },
    #[error("letter {surface:?}: class {class:?} is inconsistent with its memberships")]
    ClassMismatch { surface: String, class: LetterClass },
    #[error("letter {surface:?} has no category membership")]
    NoMembership { surface: String },
}

/// The four letter classes, one per Part 1 flag bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LetterClass {
    Vowel,
    Semivowel,
    Consonant,
    Special,
}

impl LetterClass {
    /// The Part 1 flag bit for this class.
    pub fn flag_bit(self) -> usize {
        match self {
            LetterClass::Vowel => FLAG_VOWEL,
            LetterClass::Semivowel => FLAG_SEMIVOWEL,
            LetterClass::Consonant => FLAG_CONSONANT,
            LetterClass::Special => FLAG_SPECIAL,
        }
    }

    /// Category rows whose memberships this class licenses.
    pub fn category_range(self) -> std::ops::RangeInclusive<usize> {
        match self {
            LetterClass::Vowel => 4..=19,
            LetterClass::Semivowel => 20..=21,
            LetterClass::Consonant => 22..=41,
            LetterClass::Special => 42..=47,
        }
    }
}

/// One alphabet unit in canonical IAST form.
///
/// A `Phoneme` is a cheap id into the alphabet inventory; its canonical
/// surface may span several characters ("dh", "ai").
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phoneme(u8);

impl Phoneme {
    /// Canonical IAST spelling.
    pub fn surface(self) -> &'static str {
        &schema().letters[self.0 as usize].surface
    }

    /// Letter class (which of Part 1 bits 0-3 is set).
    pub fn class(self) -> LetterClass {
        schema().letters[self.0 as usize].class
    }

    /// The letter's full binary identity.
    pub fn code(self) -> &'static LetterCode {
        &schema().letters[self.0 as usize].code
    }

    /// True for vowels (Part 1 bit 0).
    pub fn is_vowel(self) -> bool {
        self.class() == LetterClass::Vowel
    }
}

impl fmt::Display for Phoneme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.surface())
    }
}

impl fmt::Debug for Phoneme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.surface())
    }
}

/// A letter's two-part binary identity: 48 category bits plus a per-category
/// one-hot term index.
#[derive(Clone, PartialEq, Eq)]
pub struct LetterCode {
    part1: u64,
    part2: [u16; CATEGORY_COUNT],
}

/// The null letter: all Part 1 bits zero.
pub const NULL_LETTER: LetterCode = LetterCode {
    part1: 0,
    part2: [0; CATEGORY_COUNT],
};

impl LetterCode {
    /// True iff Part 1 bit `n` is set.
    pub fn part1(&self, n: usize) -> bool {
        n < CATEGORY_COUNT && self.part1 & (1u64 << n) != 0
    }

    /// True iff the letter holds `(category, index)`: the category bit is set
    /// in Part 1 and bit `index` is set in that category's Part 2.
    pub fn part2(&self, category: usize, index: usize) -> bool {
        self.part1(category) && index < MAX_ROW_LEN && self.part2[category] & (1u16 << index) != 0
    }

    /// The term index within `category`, if the letter belongs to it.
    pub fn part2_index(&self, category: usize) -> Option<usize> {
        if category >= FIRST_CATEGORY_ROW && self.part1(category) {
            Some(self.part2[category].trailing_zeros() as usize)
        } else {
            None
        }
    }

    /// True iff no Part 1 bit is set.
    pub fn is_null(&self) -> bool {
        self.part1 == 0
    }

    /// All `(category, index)` memberships, ascending by category.
    pub fn memberships(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (FIRST_CATEGORY_ROW..CATEGORY_COUNT)
            .filter_map(|cat| self.part2_index(cat).map(|i| (cat, i)))
    }

    /// The class flag, if exactly one of bits 0-3 is set.
    pub fn class(&self) -> Option<LetterClass> {
        let flags = self.part1 & 0b1111;
        match flags {
            0b0001 => Some(LetterClass::Vowel),
            0b0010 => Some(LetterClass::Semivowel),
            0b0100 => Some(LetterClass::Consonant),
            0b1000 => Some(LetterClass::Special),
            _ => None,
        }
    }
}

impl fmt::Debug for LetterCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LetterCode(")?;
        let mut first = true;
        for bit in 0..FIRST_CATEGORY_ROW {
            if self.part1(bit) {
                write!(f, "{}flag{}", if first { "" } else { " " }, bit)?;
                first = false;
            }
        }
        for (cat, idx) in self.memberships() {
            write!(f, "{}{}:{}", if first { "" } else { " " }, cat, idx)?;
            first = false;
        }
        write!(f, ")")
    }
}

/// One decode target inside a category row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entry {
    /// The index decodes to this letter sequence (a single letter, or a
    /// rider sequence such as "ār" or "ava").
    Seq(Vec<Phoneme>),
    /// Letters sharing this term index. Ambiguous to decode without the
    /// originating letter.
    Sublist(Vec<Phoneme>),
}

struct LetterData {
    surface: String,
    class: LetterClass,
    code: LetterCode,
}

/// The loaded category table plus the alphabet inventory derived from it.
pub struct Schema {
    letters: Vec<LetterData>,
    by_surface: HashMap<String, Phoneme>,
    rows: Vec<Vec<Entry>>,
    max_surface_chars: usize,
}

static SCHEMA: OnceLock<Schema> = OnceLock::new();
const SCHEMA_DATA: &str = include_str!("../data/letter_categories.txt");

/// The process-wide schema, loaded once from the embedded data file.
pub fn schema() -> &'static Schema {
    SCHEMA.get_or_init(|| Schema::parse(SCHEMA_DATA).expect("embedded letter schema is valid"))
}

impl Schema {
    /// Parse and validate a schema file.
    pub fn parse(text: &str) -> Result<Schema, SchemaError> {
        let mut raw_rows: Vec<Option<&str>> = vec![None; CATEGORY_COUNT];
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (row_text, rest) = line
                .split_once('|')
                .ok_or(SchemaError::Malformed { line: lineno + 1 })?;
            let row: usize = row_text
                .trim()
                .parse()
                .map_err(|_| SchemaError::BadRowNumber {
                    line: lineno + 1,
                    text: row_text.to_string(),
                })?;
            if row >= CATEGORY_COUNT {
                return Err(SchemaError::BadRowNumber {
                    line: lineno + 1,
                    text: row_text.to_string(),
                });
            }
            if raw_rows[row].is_some() {
                return Err(SchemaError::DuplicateRow { row });
            }
            raw_rows[row] = Some(rest);
        }
        for (row, raw) in raw_rows.iter().enumerate() {
            if raw.is_none() {
                return Err(SchemaError::MissingRow { row });
            }
        }

        // Pass 1: the class listings (rows 0-3) define the inventory.
        let classes = [
            LetterClass::Vowel,
            LetterClass::Semivowel,
            LetterClass::Consonant,
            LetterClass::Special,
        ];
        let mut letters: Vec<LetterData> = Vec::new();
        let mut by_surface: HashMap<String, Phoneme> = HashMap::new();
        for (row, class) in classes.iter().enumerate() {
            for surface in raw_rows[row].unwrap().split(',') {
                let surface = surface.trim();
                if surface.is_empty() {
                    return Err(SchemaError::Malformed { line: row + 1 });
                }
                if by_surface.contains_key(surface) {
                    return Err(SchemaError::DuplicateLetter {
                        surface: surface.to_string(),
                    });
                }
                let id = Phoneme(letters.len() as u8);
                by_surface.insert(surface.to_string(), id);
                letters.push(LetterData {
                    surface: surface.to_string(),
                    class: *class,
                    code: NULL_LETTER,
                });
            }
        }
        let max_surface_chars = letters
            .iter()
            .map(|l| l.surface.chars().count())
            .max()
            .unwrap_or(1);

        let lookup = |surface: &str, row: usize| -> Result<Phoneme, SchemaError> {
            by_surface
                .get(surface)
                .copied()
                .ok_or_else(|| SchemaError::UnknownLetter {
                    row,
                    surface: surface.to_string(),
                })
        };
        let tokenize_seq = |textual: &str, row: usize| -> Result<Vec<Phoneme>, SchemaError> {
            let chars: Vec<char> = textual.chars().collect();
            let mut out = Vec::new();
            let mut pos = 0;
            while pos < chars.len() {
                let mut matched = None;
                let mut len = max_surface_chars.min(chars.len() - pos);
                while len > 0 {
                    let cand: String = chars[pos..pos + len].iter().collect();
                    if let Some(&p) = by_surface.get(&cand) {
                        matched = Some((p, len));
                        break;
                    }
                    len -= 1;
                }
                match matched {
                    Some((p, len)) => {
                        out.push(p);
                        pos += len;
                    }
                    None => {
                        return Err(SchemaError::UnknownLetter {
                            row,
                            surface: textual.to_string(),
                        })
                    }
                }
            }
            Ok(out)
        };

        // Pass 2: the category rows.
        let mut rows: Vec<Vec<Entry>> = vec![Vec::new(); CATEGORY_COUNT];
        for row in FIRST_CATEGORY_ROW..CATEGORY_COUNT {
            let mut entries = Vec::new();
            for piece in raw_rows[row].unwrap().split(',') {
                let piece = piece.trim();
                if let Some(inner) = piece.strip_prefix('[').and_then(|p| p.strip_suffix(']')) {
                    let members = inner
                        .split_whitespace()
                        .map(|s| lookup(s, row))
                        .collect::<Result<Vec<_>, _>>()?;
                    entries.push(Entry::Sublist(members));
                } else {
                    entries.push(Entry::Seq(tokenize_seq(piece, row)?));
                }
            }
            if entries.len() > MAX_ROW_LEN {
                return Err(SchemaError::RowTooLong {
                    row,
                    len: entries.len(),
                });
            }
            rows[row] = entries;
        }

        // Fixed rows: 46 is the avagraha, 47 the "#" placeholder.
        let is_single = |row: usize, surface: &str| match rows[row].as_slice() {
            [Entry::Seq(seq)] => seq.len() == 1 && letters[seq[0].0 as usize].surface == surface,
            _ => false,
        };
        if !is_single(ROW_AVAGRAHA, "'") {
            return Err(SchemaError::FixedRowMismatch {
                row: ROW_AVAGRAHA,
                expected: "'",
            });
        }
        if !is_single(47, "#") {
            return Err(SchemaError::FixedRowMismatch {
                row: 47,
                expected: "#",
            });
        }

        // Derive each letter's code from its memberships.
        let mut codes = Vec::with_capacity(letters.len());
        for (id, data) in letters.iter().enumerate() {
            let me = Phoneme(id as u8);
            let mut part1 = 1u64 << data.class.flag_bit();
            let mut part2 = [0u16; CATEGORY_COUNT];
            for (row, entries) in rows.iter().enumerate().skip(FIRST_CATEGORY_ROW) {
                for (index, entry) in entries.iter().enumerate() {
                    let holds = match entry {
                        Entry::Seq(seq) => seq.len() == 1 && seq[0] == me,
                        Entry::Sublist(members) => members.contains(&me),
                    };
                    if holds {
                        if part2[row] != 0 {
                            return Err(SchemaError::DuplicateMembership {
                                surface: data.surface.clone(),
                                row,
                            });
                        }
                        part1 |= 1u64 << row;
                        part2[row] = 1u16 << index;
                    }
                }
            }
            let code = LetterCode { part1, part2 };
            let range = data.class.category_range();
            let memberships: Vec<(usize, usize)> = code.memberships().collect();
            if memberships.is_empty() {
                return Err(SchemaError::NoMembership {
                    surface: data.surface.clone(),
                });
            }
            if memberships.iter().any(|(cat, _)| !range.contains(cat)) {
                return Err(SchemaError::ClassMismatch {
                    surface: data.surface.clone(),
                    class: data.class,
                });
            }
            codes.push(code);
        }
        for (data, code) in letters.iter_mut().zip(codes) {
            data.code = code;
        }

        Ok(Schema {
            letters,
            by_surface,
            rows,
            max_surface_chars,
        })
    }

    /// Look up a letter by its canonical surface.
    pub fn phoneme(&self, surface: &str) -> Option<Phoneme> {
        self.by_surface.get(surface).copied()
    }

    /// All letters, in inventory order (vowels, semivowels, consonants,
    /// specials).
    pub fn inventory(&self) -> impl Iterator<Item = Phoneme> + '_ {
        (0..self.letters.len()).map(|i| Phoneme(i as u8))
    }

    /// All vowels, in row order.
    pub fn vowels(&self) -> Vec<Phoneme> {
        self.inventory()
            .filter(|p| self.letters[p.0 as usize].class == LetterClass::Vowel)
            .collect()
    }

    /// The entries of a category row (empty for the flag rows 0-3).
    pub fn row(&self, category: usize) -> &[Entry] {
        &self.rows[category]
    }

    fn tokenize(&self, text: &str) -> Result<Vec<Phoneme>, AlphabetError> {
        let chars: Vec<char> = text.chars().collect();
        let mut out = Vec::new();
        let mut pos = 0;
        while pos < chars.len() {
            let mut matched = None;
            let mut len = self.max_surface_chars.min(chars.len() - pos);
            while len > 0 {
                let cand: String = chars[pos..pos + len].iter().collect();
                if let Some(&p) = self.by_surface.get(&cand) {
                    matched = Some((p, len));
                    break;
                }
                len -= 1;
            }
            match matched {
                Some((p, len)) => {
                    out.push(p);
                    pos += len;
                }
                None => {
                    return Err(AlphabetError::UnknownCharacter {
                        character: chars[pos],
                        position: pos,
                    })
                }
            }
        }
        Ok(out)
    }
}

/// Segment an IAST string into letters by longest match; digraphs (ai, au,
/// kh, gh, ch, jh, ṭh, ḍh, th, dh, ph, bh) always win over their prefixes.
/// The position in errors counts characters, not bytes.
pub fn tokenize(text: &str) -> Result<Vec<Phoneme>, AlphabetError> {
    schema().tokenize(text)
}

/// Concatenate the canonical surfaces. Inverse of [`tokenize`] on its output.
pub fn detokenize(seq: &[Phoneme]) -> String {
    seq.iter().map(|p| p.surface()).collect()
}

/// The letter's full binary identity (all memberships united in one code).
pub fn encode(p: Phoneme) -> &'static LetterCode {
    p.code()
}

/// True iff bit `n` of Part 1 of `code` is set.
pub fn part1_test(code: &LetterCode, n: usize) -> bool {
    code.part1(n)
}

/// True iff `code` holds `(category, index)`.
pub fn part2_test(code: &LetterCode, category: usize, index: usize) -> bool {
    code.part2(category, index)
}

/// The raw entry at `(category, index)`, if present.
pub fn entry(category: usize, index: usize) -> Option<&'static Entry> {
    schema().rows.get(category).and_then(|row| row.get(index))
}

/// Decode `(category, index)` to its letter sequence. Sublist entries are
/// ambiguous and refuse to decode without the originating letter.
pub fn decode_entry(category: usize, index: usize) -> Result<&'static [Phoneme], AlphabetError> {
    match entry(category, index) {
        Some(Entry::Seq(seq)) => Ok(seq),
        Some(Entry::Sublist(_)) => Err(AlphabetError::AmbiguousSublist { category, index }),
        None => Err(AlphabetError::IndexOutOfRange { category, index }),
    }
}

/// Move a letter from one category to another at the same term index: the
/// category bit flips, Part 2 stays. Returns the corresponding letter
/// sequence of the target row.
pub fn retarget(
    code: &LetterCode,
    from_category: usize,
    to_category: usize,
) -> Result<&'static [Phoneme], AlphabetError> {
    let index = code
        .part2_index(from_category)
        .ok_or(AlphabetError::NotInCategory {
            category: from_category,
        })?;
    decode_entry(to_category, index)
}

/// Look up a letter by surface in the global schema.
pub fn phoneme(surface: &str) -> Option<Phoneme> {
    schema().phoneme(surface)
}
