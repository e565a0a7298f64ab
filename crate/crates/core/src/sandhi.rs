//! Euphonic conjunction of two words: the vowel-sandhi processor and the
//! ścutva consonant demonstration.
//!
//! Each rule is realized as category tests on the two-part letter code
//! followed by at most one category retarget, so applying a rule costs a few
//! bit tests plus one bit unset and one bit set in Part 1. The vowel rules
//! run in a fixed order and the first one that fires ends the join, with one
//! exception: the `go`-expansion runs first and hands its mutated word to
//! the rules after it. Precedence is encoded purely by that order; the
//! lexically conditioned vṛddhi fusions (6.1.89) sit before the pararūpa and
//! guṇa rules they would otherwise lose to.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alphabet::{
    decode_entry, encode, phoneme, retarget, tokenize, LetterCode, Phoneme, ROW_A, ROW_AI_AU,
    ROW_ANUSVARA, ROW_AVA, ROW_AYADI, ROW_A_PAIR, ROW_DENTALS, ROW_EC, ROW_E_O, ROW_GUNA, ROW_H,
    ROW_IK, ROW_IK_LONG, ROW_LONG_TRIO, ROW_M, ROW_PALATALS, ROW_R_VOWELS, ROW_SIMPLE_LONG,
    ROW_SIMPLE_SHORT, ROW_VRDDHI_R, ROW_YAN,
};

/// Errors from the sandhi operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SandhiError {
    #[error("sandhi needs a non-empty word on each side")]
    EmptyWord,
}

/// Where an output letter came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Provenance {
    /// Carried over from the first word.
    FromX,
    /// Carried over from the second word.
    FromY,
    /// Replaces both sandhi letters at once.
    Merged,
    /// New material that replaces neither side's letter run (the avagraha).
    Inserted,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::FromX => "fromX",
            Provenance::FromY => "fromY",
            Provenance::Merged => "merged",
            Provenance::Inserted => "inserted",
        })
    }
}

/// The sandhi rules, identified by their aphorism numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// 6.1.123: the o of `go` expands to `ava` before a vowel.
    AvaExpansion,
    /// 6.1.109: e/o + a, the avagraha replaces the a.
    Purvarupa,
    /// 6.1.101: homogeneous simple vowels fuse into the long form.
    SavarnaDirgha,
    /// 6.1.95: a/ā + the o of om/oṁ, the o replaces both.
    PararupaOm,
    /// 6.1.89: lexically conditioned vṛddhi fusions (eti/edhati, pra+eṣ,
    /// ū+h, pra+ūḍh, sva+īr).
    VrddhiLexical,
    /// 6.1.94: preposition-final a/ā + e/o, the e/o replaces both.
    Pararupa,
    /// 6.1.91: preposition-final a/ā + ṛ/ṝ/ḷ → ār/ār/āl; also the ṛṇa
    /// compounds.
    VrddhiR,
    /// 6.1.88: a/ā + e/o/ai/au → ai/au replaces both.
    Vrddhi,
    /// 6.1.87: a/ā + simple vowel → the guṇa letter replaces both.
    Guna,
    /// 6.1.78: e/o/ai/au + vowel → ay/av/āy/āv replaces the first.
    Ayadi,
    /// 6.1.77: i/u/ṛ/ḷ (or long) + vowel → the semivowel replaces the first.
    Yan,
    /// 8.4.40 with the 8.4.44 bar: dentals/s assimilate to palatals/ś.
    Scutva,
}

impl Rule {
    /// Aphorism number, e.g. "6.1.87".
    pub fn sutra(self) -> &'static str {
        match self {
            Rule::AvaExpansion => "6.1.123",
            Rule::Purvarupa => "6.1.109",
            Rule::SavarnaDirgha => "6.1.101",
            Rule::PararupaOm => "6.1.95",
            Rule::VrddhiLexical => "6.1.89",
            Rule::Pararupa => "6.1.94",
            Rule::VrddhiR => "6.1.91",
            Rule::Vrddhi => "6.1.88",
            Rule::Guna => "6.1.87",
            Rule::Ayadi => "6.1.78",
            Rule::Yan => "6.1.77",
            Rule::Scutva => "8.4.40",
        }
    }

    /// Common name of the rule.
    pub fn label(self) -> &'static str {
        match self {
            Rule::AvaExpansion => "avaṅādeśa sandhi",
            Rule::Purvarupa => "pūrvarūpa sandhi",
            Rule::SavarnaDirgha => "savarṇadīrgha sandhi",
            Rule::PararupaOm => "pararūpa sandhi",
            Rule::VrddhiLexical => "vṛddhi sandhi",
            Rule::Pararupa => "pararūpa sandhi",
            Rule::VrddhiR => "vṛddhi sandhi",
            Rule::Vrddhi => "vṛddhi sandhi",
            Rule::Guna => "guṇa sandhi",
            Rule::Ayadi => "ayāyāvāvādeśa sandhi",
            Rule::Yan => "yaṇādeśa sandhi",
            Rule::Scutva => "ścutva sandhi",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.sutra(), self.label())
    }
}

/// The joining site: word X culminating in the sandhi letter x, word Y
/// starting with the sandhi letter y, and the neighbors u (before x) and
/// w (after y).
#[derive(Debug, Clone)]
pub struct SandhiContext {
    x_word: Vec<Phoneme>,
    y_word: Vec<Phoneme>,
}

impl SandhiContext {
    pub fn new(x_word: &[Phoneme], y_word: &[Phoneme]) -> Result<Self, SandhiError> {
        if x_word.is_empty() || y_word.is_empty() {
            return Err(SandhiError::EmptyWord);
        }
        Ok(SandhiContext {
            x_word: x_word.to_vec(),
            y_word: y_word.to_vec(),
        })
    }

    pub fn x_word(&self) -> &[Phoneme] {
        &self.x_word
    }

    pub fn y_word(&self) -> &[Phoneme] {
        &self.y_word
    }

    /// x: the last letter of X.
    pub fn x(&self) -> Phoneme {
        *self.x_word.last().expect("X is non-empty")
    }

    /// y: the first letter of Y.
    pub fn y(&self) -> Phoneme {
        self.y_word[0]
    }

    /// u: the letter before x, if any.
    pub fn u(&self) -> Option<Phoneme> {
        let n = self.x_word.len();
        n.checked_sub(2).map(|i| self.x_word[i])
    }

    /// w: the letter after y, if any.
    pub fn w(&self) -> Option<Phoneme> {
        self.y_word.get(1).copied()
    }

    /// Replace the final letter of X by a sequence (the avaṅ expansion).
    fn expand_x(&mut self, replacement: &[Phoneme]) {
        self.x_word.pop();
        self.x_word.extend_from_slice(replacement);
    }

    fn x_is(&self, word: &str) -> bool {
        self.x_word == lit(word)
    }

    fn y_is(&self, word: &str) -> bool {
        self.y_word == lit(word)
    }

    fn y_starts_with(&self, prefix: &str) -> bool {
        self.y_word.starts_with(&lit(prefix))
    }
}

/// A joined word with per-letter provenance and the applied rule trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SandhiOutcome {
    output: Vec<Phoneme>,
    provenance: Vec<Provenance>,
    rules: Vec<Rule>,
    returned_early: bool,
}

impl SandhiOutcome {
    pub fn output(&self) -> &[Phoneme] {
        &self.output
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    /// Applied rules in application order.
    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// True if a rule ended the join early (rules after it never ran).
    pub fn returned_early(&self) -> bool {
        self.returned_early
    }

    /// The joined word as an IAST string.
    pub fn joined(&self) -> String {
        crate::alphabet::detokenize(&self.output)
    }

    /// Output letters paired with their provenance tags.
    pub fn letters(&self) -> impl Iterator<Item = (Phoneme, Provenance)> + '_ {
        self.output
            .iter()
            .copied()
            .zip(self.provenance.iter().copied())
    }
}

fn lit(text: &str) -> Vec<Phoneme> {
    tokenize(text).expect("engine literal tokenizes")
}

fn tagged(seq: &[Phoneme], tag: Provenance) -> Vec<(Phoneme, Provenance)> {
    seq.iter().map(|&p| (p, tag)).collect()
}

fn assemble(
    x_part: &[Phoneme],
    middle: &[(Phoneme, Provenance)],
    y_part: &[Phoneme],
    rules: Vec<Rule>,
    returned_early: bool,
) -> SandhiOutcome {
    let mut output = Vec::with_capacity(x_part.len() + middle.len() + y_part.len());
    let mut provenance = Vec::with_capacity(output.capacity());
    for &p in x_part {
        output.push(p);
        provenance.push(Provenance::FromX);
    }
    for &(p, tag) in middle {
        output.push(p);
        provenance.push(tag);
    }
    for &p in y_part {
        output.push(p);
        provenance.push(Provenance::FromY);
    }
    SandhiOutcome {
        output,
        provenance,
        rules,
        returned_early,
    }
}

/// The prepositions whose final a/ā takes the pararūpa and ṛ-vṛddhi rules.
const PREPOSITIONS: [&str; 5] = ["pra", "ava", "apa", "upa", "parā"];

/// Head words that fuse with a following "ṛṇa" by 6.1.91.
const RNA_HEADS: [&str; 5] = ["vatsara", "kambala", "vasana", "daśa", "ṛṇa"];

// 6.1.89 subcases. All five fuse x and y into the vṛddhi letter of y's
// class; the returned value is the term index into the ai/au row.
//   i)   a/ā + a word starting et- or edhat-        → ai
//   ii)  pra + a word starting eṣ- or eṣy-          → ai
//   iii) a/ā + ū with h right after it              → au
//   iv)  pra + a word starting ūḍh-                 → au
//   v)   sva + ī with r right after it              → ai
fn vrddhi_lexical_index(ctx: &SandhiContext, xc: &LetterCode, yc: &LetterCode) -> Option<usize> {
    let a_final = xc.part1(ROW_A_PAIR);
    if a_final && yc.part2(ROW_E_O, 0) {
        if ctx.y_starts_with("et") || ctx.y_starts_with("edhat") {
            return Some(0);
        }
        if ctx.x_is("pra") && (ctx.y_starts_with("eṣ") || ctx.y_starts_with("eṣy")) {
            return Some(0);
        }
    }
    if a_final && yc.part2(ROW_LONG_TRIO, 1) {
        if ctx.w().is_some_and(|w| encode(w).part1(ROW_H)) {
            return Some(1);
        }
        if ctx.x_is("pra") && ctx.y_starts_with("ūḍh") {
            return Some(1);
        }
    }
    if ctx.x_is("sva")
        && yc.part2(ROW_IK_LONG, 0)
        && ctx.w().is_some_and(|w| encode(w).part2(ROW_YAN, 2))
    {
        return Some(0);
    }
    None
}

/// Join two words by the vowel-sandhi rules.
///
/// Rules run in their fixed order; the first that fires produces the result.
/// The `go`-expansion alone does not end the join: it rewrites X and lets the
/// later rules see the new final letter.
pub fn vowel_sandhi(
    x_input: &[Phoneme],
    y_input: &[Phoneme],
) -> Result<SandhiOutcome, SandhiError> {
    let mut ctx = SandhiContext::new(x_input, y_input)?;
    let mut rules: Vec<Rule> = Vec::new();

    // 6.1.123: go + vowel, the o expands to ava; processing continues.
    if ctx.x_is("go") && ctx.y().is_vowel() {
        let ava = decode_entry(ROW_AVA, 0).expect("row 19 holds ava at index 0");
        ctx.expand_x(ava);
        rules.push(Rule::AvaExpansion);
    }

    let x = ctx.x();
    let y = ctx.y();
    let xc = encode(x);
    let yc = encode(y);
    let x_word = ctx.x_word();
    let y_word = ctx.y_word();
    let x_kept = &x_word[..x_word.len() - 1];
    let y_rest = &y_word[1..];
    let merged = |seq: &[Phoneme]| tagged(seq, Provenance::Merged);

    // 6.1.109: e/o + a, the avagraha replaces the a.
    if xc.part1(ROW_E_O) && yc.part1(ROW_A) {
        rules.push(Rule::Purvarupa);
        let avagraha = phoneme("'").expect("avagraha in inventory");
        return Ok(assemble(
            x_word,
            &[(avagraha, Provenance::Inserted)],
            y_rest,
            rules,
            true,
        ));
    }

    // 6.1.101: homogeneous simple vowels (same term index across the
    // short/long rows) fuse into the long form.
    let simple_index = |c: &LetterCode| {
        c.part2_index(ROW_SIMPLE_SHORT)
            .or_else(|| c.part2_index(ROW_SIMPLE_LONG))
    };
    if let (Some(xi), Some(yi)) = (simple_index(xc), simple_index(yc)) {
        if xi == yi {
            rules.push(Rule::SavarnaDirgha);
            let long = decode_entry(ROW_SIMPLE_LONG, xi).expect("rows 8 and 9 are index-aligned");
            return Ok(assemble(x_kept, &merged(long), y_rest, rules, true));
        }
    }

    // 6.1.95: a/ā + the o of om/oṁ (the letter after y is m or ṁ); the o
    // replaces both.
    if xc.part1(ROW_A_PAIR) && yc.part2(ROW_E_O, 1) {
        let om_follower = ctx
            .w()
            .is_some_and(|w| encode(w).part1(ROW_M) || encode(w).part1(ROW_ANUSVARA));
        if om_follower {
            rules.push(Rule::PararupaOm);
            return Ok(assemble(
                x_kept,
                &[(y, Provenance::Merged)],
                y_rest,
                rules,
                true,
            ));
        }
    }

    // 6.1.89: the five lexically conditioned vṛddhi fusions. Checked before
    // 6.1.94 and 6.1.87, which it takes precedence over.
    if let Some(index) = vrddhi_lexical_index(&ctx, xc, yc) {
        rules.push(Rule::VrddhiLexical);
        let v = decode_entry(ROW_AI_AU, index).expect("row 14 defines indices 0 and 1");
        return Ok(assemble(x_kept, &merged(v), y_rest, rules, true));
    }

    let preposition = PREPOSITIONS.iter().any(|p| ctx.x_is(p));

    // 6.1.94: preposition-final a/ā + e/o; the e/o replaces both.
    if preposition && yc.part1(ROW_E_O) {
        rules.push(Rule::Pararupa);
        return Ok(assemble(
            x_kept,
            &[(y, Provenance::Merged)],
            y_rest,
            rules,
            true,
        ));
    }

    // 6.1.91: preposition-final a/ā + ṛ/ṝ/ḷ → ār/ār/āl replaces both; the
    // same fusion for the listed head words followed by the word ṛṇa.
    if yc.part1(ROW_R_VOWELS) {
        let rna_compound = ctx.y_is("ṛṇa") && RNA_HEADS.iter().any(|h| ctx.x_is(h));
        if preposition || rna_compound {
            rules.push(Rule::VrddhiR);
            let idx = yc.part2_index(ROW_R_VOWELS).expect("membership tested");
            let v = decode_entry(ROW_VRDDHI_R, idx).expect("rows 12 and 17 are index-aligned");
            return Ok(assemble(x_kept, &merged(v), y_rest, rules, true));
        }
    }

    // 6.1.88: a/ā + e/o/ai/au → the vṛddhi letter ai/au replaces both.
    if xc.part1(ROW_A_PAIR) && (yc.part1(ROW_E_O) || yc.part1(ROW_AI_AU)) {
        rules.push(Rule::Vrddhi);
        let idx = yc
            .part2_index(ROW_E_O)
            .or_else(|| yc.part2_index(ROW_AI_AU))
            .expect("membership tested");
        let v = decode_entry(ROW_AI_AU, idx).expect("rows 13 and 14 are index-aligned");
        return Ok(assemble(x_kept, &merged(v), y_rest, rules, true));
    }

    // 6.1.87: a/ā + i/ī/u/ū/ṛ/ṝ/ḷ → the guṇa letter e/o/ar/al replaces both.
    if xc.part1(ROW_A_PAIR) && (yc.part1(ROW_IK) || yc.part1(ROW_IK_LONG)) {
        rules.push(Rule::Guna);
        let idx = yc
            .part2_index(ROW_IK)
            .or_else(|| yc.part2_index(ROW_IK_LONG))
            .expect("membership tested");
        let v = decode_entry(ROW_GUNA, idx).expect("rows 10/11 align with row 16");
        return Ok(assemble(x_kept, &merged(v), y_rest, rules, true));
    }

    // 6.1.78: e/o/ai/au + vowel → ay/av/āy/āv replaces the first alone.
    if xc.part1(ROW_EC) && y.is_vowel() {
        rules.push(Rule::Ayadi);
        let idx = xc.part2_index(ROW_EC).expect("membership tested");
        let v = decode_entry(ROW_AYADI, idx).expect("rows 15 and 18 are index-aligned");
        return Ok(assemble(
            x_kept,
            &tagged(v, Provenance::FromX),
            y_word,
            rules,
            true,
        ));
    }

    // 6.1.77: i/ī/u/ū/ṛ/ṝ/ḷ + vowel → the semivowel replaces the first
    // alone (its class flag flips with the row move).
    if (xc.part1(ROW_IK) || xc.part1(ROW_IK_LONG)) && y.is_vowel() {
        rules.push(Rule::Yan);
        let idx = xc
            .part2_index(ROW_IK)
            .or_else(|| xc.part2_index(ROW_IK_LONG))
            .expect("membership tested");
        let v = decode_entry(ROW_YAN, idx).expect("rows 10/11 align with row 20");
        return Ok(assemble(
            x_kept,
            &tagged(v, Provenance::FromX),
            y_word,
            rules,
            true,
        ));
    }

    // No rule fired: plain concatenation.
    Ok(assemble(x_word, &[], y_word, rules, false))
}

/// Palatal assimilation of dentals: a dental (t, th, d, dh, n) or s adjacent
/// to a palatal (c, ch, j, jh, ñ) or ś becomes the corresponding palatal.
/// A ś before a dental debars the change.
pub fn apply_scutva(
    x_input: &[Phoneme],
    y_input: &[Phoneme],
) -> Result<SandhiOutcome, SandhiError> {
    let ctx = SandhiContext::new(x_input, y_input)?;
    let xc = encode(ctx.x());
    let yc = encode(ctx.y());
    let x_word = ctx.x_word();
    let y_word = ctx.y_word();

    // Palatal (but not ś itself) before a dental: the dental goes palatal.
    if xc.part1(ROW_PALATALS) && !xc.part2(ROW_PALATALS, 5) && yc.part1(ROW_DENTALS) {
        let v = retarget(yc, ROW_DENTALS, ROW_PALATALS).expect("rows 30/32 are index-aligned");
        return Ok(assemble(
            x_word,
            &tagged(v, Provenance::FromY),
            &y_word[1..],
            vec![Rule::Scutva],
            true,
        ));
    }

    // Dental before a palatal: the dental goes palatal.
    if xc.part1(ROW_DENTALS) && yc.part1(ROW_PALATALS) {
        let v = retarget(xc, ROW_DENTALS, ROW_PALATALS).expect("rows 30/32 are index-aligned");
        return Ok(assemble(
            &x_word[..x_word.len() - 1],
            &tagged(v, Provenance::FromX),
            y_word,
            vec![Rule::Scutva],
            true,
        ));
    }

    Ok(assemble(x_word, &[], y_word, vec![], false))
}
