//! Tokenization and coarse part-of-speech tagging of timex phrases.
//!
//! The default tagger is a deterministic rule tagger: a closed-class lexicon
//! for determiners, prepositions, pronouns and number words, plus suffix
//! heuristics, defaulting to noun. The trait keeps a statistical tagger
//! pluggable. Timex phrases repeat heavily across a corpus, so tagging runs
//! through [`TagCache`], keyed on the exact phrase string.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::model::Span;

/// Coarse part-of-speech tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosTag {
    Noun,
    Verb,
    Adj,
    Adv,
    Prep,
    Det,
    Num,
    Poss,
    Other,
}

/// One token of a tagged phrase; `span` is relative to the phrase, in
/// Unicode scalar offsets, so cached results are position-independent.
#[derive(Debug, Clone, PartialEq)]
pub struct TaggedToken {
    pub surface: String,
    pub tag: PosTag,
    pub span: Span,
}

impl TaggedToken {
    pub fn lower(&self) -> String {
        self.surface.to_lowercase()
    }

    /// Copy with the span shifted by `offset` (phrase-relative to
    /// document-relative).
    pub fn at_offset(&self, offset: usize) -> TaggedToken {
        TaggedToken {
            surface: self.surface.clone(),
            tag: self.tag,
            span: Span::new(self.span.start + offset, self.span.end + offset),
        }
    }
}

/// Split a phrase into tokens with scalar-offset spans.
///
/// Words are runs of alphanumeric characters plus internal `-`, `:`, `/`
/// and `.` (so `10/02/1998` and `09:30` stay single tokens); a possessive
/// `'s` (or bare trailing `'`) becomes its own token; any other punctuation
/// character stands alone.
pub fn tokenize(phrase: &str) -> Vec<(String, Span)> {
    let mut out: Vec<(String, Span)> = Vec::new();
    let mut cur = String::new();
    let mut cur_start = 0usize;
    let mut idx = 0usize;
    let mut chars = phrase.chars().peekable();

    macro_rules! flush {
        () => {
            if !cur.is_empty() {
                out.push((core::mem::take(&mut cur), Span::new(cur_start, idx)));
            }
        };
    }

    while let Some(c) = chars.next() {
        if c.is_whitespace() {
            flush!();
        } else if c == '\'' || c == '\u{2019}' {
            flush!();
            // Possessive clitic: ' optionally followed by s.
            if chars.peek().map(|n| n.eq_ignore_ascii_case(&'s')) == Some(true) {
                let s = chars.next().unwrap();
                let mut tok = String::new();
                tok.push(c);
                tok.push(s);
                out.push((tok, Span::new(idx, idx + 2)));
                idx += 2;
                continue;
            }
            out.push((c.to_string(), Span::new(idx, idx + 1)));
        } else if c.is_alphanumeric() || c == '-' || c == ':' || c == '.' || c == '/' {
            if cur.is_empty() {
                cur_start = idx;
            }
            cur.push(c);
        } else {
            flush!();
            out.push((c.to_string(), Span::new(idx, idx + 1)));
        }
        idx += 1;
    }
    flush!();

    // Trailing sentence punctuation sticks to word runs ("moon." above);
    // split it off so the word itself is taggable.
    let mut split: Vec<(String, Span)> = Vec::new();
    for (tok, span) in out {
        let trailing: usize = tok
            .chars()
            .rev()
            .take_while(|c| matches!(c, '.' | ':' | '-' | '/'))
            .count();
        let keep = tok.chars().count() - trailing;
        if trailing > 0 && keep > 0 {
            let head: String = tok.chars().take(keep).collect();
            let tail: String = tok.chars().skip(keep).collect();
            split.push((head, Span::new(span.start, span.start + keep)));
            split.push((tail, Span::new(span.start + keep, span.end)));
        } else {
            split.push((tok, span));
        }
    }
    split
}

/// A part-of-speech tagger over whole phrases.
pub trait Tagger: Send + Sync {
    fn tag_phrase(&self, phrase: &str) -> Vec<TaggedToken>;
}

const DETERMINERS: &[&str] = &[
    "a", "an", "the", "this", "that", "these", "those", "his", "her", "its", "their", "my",
    "our", "your", "some", "any", "each", "every", "no", "all", "both", "few", "several",
    "many", "much", "most", "more", "next", "last", "another",
];

const PREPOSITIONS: &[&str] = &[
    "in", "on", "at", "by", "for", "from", "to", "of", "with", "within", "during", "over",
    "under", "between", "through", "throughout", "until", "till", "since", "after", "before",
    "about", "across", "against", "along", "around", "behind", "below", "beneath", "beside",
    "into", "near", "off", "onto", "past", "per", "than", "toward", "towards", "upon",
    "without",
];

const ADVERBS: &[&str] = &[
    "later", "earlier", "ago", "soon", "now", "then", "very", "recently", "previously",
    "currently", "already", "still", "just", "not",
];

const PRONOUNS_CONJ: &[&str] = &[
    "he", "she", "it", "they", "we", "i", "you", "him", "them", "us", "me", "and", "or",
    "but", "nor", "so", "yet", "if", "because", "while", "when", "where", "which", "who",
    "whom", "whose", "as",
];

const NUMBER_WORDS: &[&str] = &[
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "eleven",
    "twelve", "thirteen", "fourteen", "fifteen", "sixteen", "seventeen", "eighteen",
    "nineteen", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety",
    "hundred", "thousand", "million", "billion", "first", "second", "third", "fourth",
    "fifth", "sixth", "seventh", "eighth", "ninth", "tenth", "eleventh", "twelfth",
    "thirteenth", "fourteenth", "fifteenth", "sixteenth", "seventeenth", "eighteenth",
    "nineteenth", "twentieth", "thirtieth", "dozen", "couple", "half",
];

/// Deterministic closed-class + suffix tagger.
#[derive(Debug, Clone, Copy, Default)]
pub struct RuleTagger;

impl RuleTagger {
    fn tag_word(word: &str) -> PosTag {
        let lower = word.to_lowercase();
        if matches!(lower.as_str(), "'s" | "'" | "\u{2019}s" | "\u{2019}") {
            return PosTag::Poss;
        }
        if DETERMINERS.contains(&lower.as_str()) {
            return PosTag::Det;
        }
        if PREPOSITIONS.contains(&lower.as_str()) {
            return PosTag::Prep;
        }
        if ADVERBS.contains(&lower.as_str()) {
            return PosTag::Adv;
        }
        if PRONOUNS_CONJ.contains(&lower.as_str()) {
            return PosTag::Other;
        }
        if NUMBER_WORDS.contains(&lower.as_str()) || numeric_shape(&lower) {
            return PosTag::Num;
        }
        if !lower.chars().any(char::is_alphanumeric) {
            return PosTag::Other;
        }
        if lower.len() > 4 && (lower.ends_with("ed") || lower.ends_with("ing")) {
            return PosTag::Verb;
        }
        if lower.len() > 3 && lower.ends_with("ly") {
            return PosTag::Adv;
        }
        if lower.len() > 4 && (lower.ends_with("ous") || lower.ends_with("ful") || lower.ends_with("ive")) {
            return PosTag::Adj;
        }
        PosTag::Noun
    }
}

/// Digit-bearing shapes: `30`, `4-0`, `10:49`, `1990s`, ordinals like `7th`.
fn numeric_shape(lower: &str) -> bool {
    let core = lower
        .strip_suffix("th")
        .or_else(|| lower.strip_suffix("st"))
        .or_else(|| lower.strip_suffix("nd"))
        .or_else(|| lower.strip_suffix("rd"))
        .or_else(|| lower.strip_suffix('s'))
        .unwrap_or(lower);
    !core.is_empty()
        && core.chars().any(|c| c.is_ascii_digit())
        && core
            .chars()
            .all(|c| c.is_ascii_digit() || c == '.' || c == ',' || c == ':' || c == '-' || c == '/')
}

impl Tagger for RuleTagger {
    fn tag_phrase(&self, phrase: &str) -> Vec<TaggedToken> {
        tokenize(phrase)
            .into_iter()
            .map(|(surface, span)| {
                let tag = RuleTagger::tag_word(&surface);
                TaggedToken { surface, tag, span }
            })
            .collect()
    }
}

/// Phrase-level tagging cache wrapping a pluggable tagger.
///
/// Unbounded within a process run; confine one cache per worker (or guard it
/// externally) — results are deterministic per phrase either way.
pub struct TagCache {
    tagger: Box<dyn Tagger>,
    map: BTreeMap<String, Vec<TaggedToken>>,
    hits: u64,
    misses: u64,
}

impl Default for TagCache {
    fn default() -> Self {
        TagCache::new()
    }
}

impl TagCache {
    pub fn new() -> Self {
        TagCache::with_tagger(Box::new(RuleTagger))
    }

    pub fn with_tagger(tagger: Box<dyn Tagger>) -> Self {
        TagCache {
            tagger,
            map: BTreeMap::new(),
            hits: 0,
            misses: 0,
        }
    }

    /// Tag `phrase`, serving repeats from the cache.
    pub fn tag(&mut self, phrase: &str) -> Vec<TaggedToken> {
        if let Some(hit) = self.map.get(phrase) {
            self.hits += 1;
            return hit.clone();
        }
        let tagged = self.tagger.tag_phrase(phrase);
        self.misses += 1;
        self.map.insert(phrase.to_owned(), tagged.clone());
        tagged
    }

    pub fn hits(&self) -> u64 {
        self.hits
    }

    pub fn misses(&self) -> u64 {
        self.misses
    }
}

/// Tag a phrase through a cache.
pub fn tag(phrase: &str, cache: &mut TagCache) -> Vec<TaggedToken> {
    cache.tag(phrase)
}
