//! Temporal signal lexicon and measure-word tests.
//!
//! Signals are a closed class of co-ordinating phrases ("after", "since")
//! that relate a timex to an event or to another timex. When several
//! candidates occur in one annotation, monosemous phrases outrank polysemous
//! ones, lower rank wins within a class, and ties break leftmost — which
//! yields at most one signal per annotation.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::model::Span;
use crate::tag::TaggedToken;

/// One signal phrase with its sense class and preference rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignalEntry {
    /// Lowercase, single-space-joined token sequence.
    pub phrase: String,
    pub monosemous: bool,
    /// Lower = more preferred within its sense class.
    pub rank: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for LexiconError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lexicon line {}: {}", self.line, self.message)
    }
}

/// Ranked closed class of temporal signal phrases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignalLexicon {
    entries: Vec<SignalEntry>,
}

pub const DEFAULT_SIGNALS: &str = include_str!("../data/signals.tsv");

impl Default for SignalLexicon {
    fn default() -> Self {
        SignalLexicon::parse(DEFAULT_SIGNALS).expect("bundled signal lexicon is well-formed")
    }
}

impl SignalLexicon {
    pub fn new(entries: Vec<SignalEntry>) -> Self {
        SignalLexicon { entries }
    }

    /// Parse the lexicon file format: `phrase<TAB>monosemous|polysemous<TAB>rank`,
    /// one entry per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut entries: Vec<SignalEntry> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split('\t');
            let (phrase, class, rank) = match (fields.next(), fields.next(), fields.next()) {
                (Some(p), Some(c), Some(r)) => (p, c, r),
                _ => {
                    return Err(LexiconError {
                        line: i + 1,
                        message: "expected phrase<TAB>class<TAB>rank".to_string(),
                    })
                }
            };
            let monosemous = match class {
                "monosemous" => true,
                "polysemous" => false,
                other => {
                    return Err(LexiconError {
                        line: i + 1,
                        message: alloc::format!("unknown sense class `{other}`"),
                    })
                }
            };
            let rank: u32 = rank.parse().map_err(|_| LexiconError {
                line: i + 1,
                message: alloc::format!("bad rank `{rank}`"),
            })?;
            let phrase = phrase.to_lowercase();
            if entries.iter().any(|e| e.phrase == phrase) {
                return Err(LexiconError {
                    line: i + 1,
                    message: alloc::format!("duplicate phrase `{phrase}`"),
                });
            }
            entries.push(SignalEntry {
                phrase,
                monosemous,
                rank,
            });
        }
        Ok(SignalLexicon { entries })
    }

    pub fn entries(&self) -> &[SignalEntry] {
        &self.entries
    }

    /// Phrase length in tokens.
    fn phrase_len(entry: &SignalEntry) -> usize {
        entry.phrase.split(' ').count()
    }

    fn matches_at(&self, tokens: &[TaggedToken], start: usize, entry: &SignalEntry) -> bool {
        let words: Vec<&str> = entry.phrase.split(' ').collect();
        if start + words.len() > tokens.len() {
            return false;
        }
        words
            .iter()
            .zip(&tokens[start..])
            .all(|(w, t)| t.lower() == *w)
    }

    /// The single best signal occurrence in `tokens`, or `None`.
    ///
    /// All monosemous matches outrank all polysemous ones; within a class a
    /// lower rank wins; remaining ties go to the leftmost occurrence.
    pub fn find_signal<'a>(&'a self, tokens: &[TaggedToken]) -> Option<(Span, &'a SignalEntry)> {
        let mut best: Option<((u8, u32, usize), Span, &SignalEntry)> = None;
        for start in 0..tokens.len() {
            for entry in &self.entries {
                if !self.matches_at(tokens, start, entry) {
                    continue;
                }
                let end = start + Self::phrase_len(entry);
                let span = Span::new(tokens[start].span.start, tokens[end - 1].span.end);
                let key = (u8::from(!entry.monosemous), entry.rank, start);
                if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                    best = Some((key, span, entry));
                }
            }
        }
        best.map(|(_, span, entry)| (span, entry))
    }

    /// Every non-overlapping signal occurrence in `tokens`, left to right,
    /// longest phrase first at each position. Used when unpacking nested
    /// annotations, where each co-ordinating phrase becomes a SIGNAL.
    pub fn find_all_signals<'a>(&'a self, tokens: &[TaggedToken]) -> Vec<(Span, &'a SignalEntry)> {
        let mut found = Vec::new();
        let mut i = 0;
        while i < tokens.len() {
            let mut hit: Option<(usize, &SignalEntry)> = None;
            for entry in &self.entries {
                let len = Self::phrase_len(entry);
                if self.matches_at(tokens, i, entry)
                    && hit.is_none_or(|(best_len, _)| len > best_len)
                {
                    hit = Some((len, entry));
                }
            }
            match hit {
                Some((len, entry)) => {
                    let span = Span::new(tokens[i].span.start, tokens[i + len - 1].span.end);
                    found.push((span, entry));
                    i += len;
                }
                None => i += 1,
            }
        }
        found
    }
}

const MEASURE_WORDS: &[&str] = &[
    "second", "minute", "hour", "day", "week", "month", "quarter", "year", "decade",
    "century", "millennium", "morning", "afternoon", "evening", "night", "weekend",
    "fortnight",
];

/// Temporal measure word test: lowercased and de-pluralized membership in
/// the measure lexicon ("days" and even the irregular "millenia" count).
pub fn is_measure_word(token: &str) -> bool {
    let lower = token.to_lowercase();
    if MEASURE_WORDS.contains(&lower.as_str()) {
        return true;
    }
    // Irregular plurals (and their common misspellings).
    if matches!(lower.as_str(), "millennia" | "millenia" | "millenniums") {
        return true;
    }
    if let Some(stem) = lower.strip_suffix("ies") {
        let mut y = String::from(stem);
        y.push('y');
        if MEASURE_WORDS.contains(&y.as_str()) {
            return true;
        }
    }
    if let Some(stem) = lower.strip_suffix('s') {
        if MEASURE_WORDS.contains(&stem) {
            return true;
        }
    }
    false
}

/// Nouns that name time itself rather than an event; these never make good
/// event heads ("their issue date" → the event word is "issue").
pub fn is_temporal_noun(token: &str) -> bool {
    if is_measure_word(token) {
        return true;
    }
    let lower = token.to_lowercase();
    matches!(lower.as_str(), "date" | "dates" | "time" | "times" | "moment" | "moments")
}
