//! Shallow chunking and head finding.
//!
//! Both parsers here are deliberately small, deterministic stand-ins kept
//! behind traits: a dependency oracle that picks the word dominating an
//! event chunk, and a constituent oracle that splits a long phrase into
//! flat top-level chunks for trimming.

use alloc::vec::Vec;

use crate::lexicon::{is_measure_word, is_temporal_noun};
use crate::model::Span;
use crate::tag::{PosTag, TaggedToken};

/// Role of a chunk inside one signal split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChunkKind {
    PreSignal,
    Signal,
    PostSignal,
    Plain,
}

/// A contiguous token run.
#[derive(Debug, Clone, PartialEq)]
pub struct Chunk {
    pub tokens: Vec<TaggedToken>,
    pub span: Span,
    pub kind: ChunkKind,
}

impl Chunk {
    pub fn from_tokens(tokens: &[TaggedToken], kind: ChunkKind) -> Option<Chunk> {
        let first = tokens.first()?;
        let last = tokens.last()?;
        Some(Chunk {
            tokens: tokens.to_vec(),
            span: Span::new(first.span.start, last.span.end),
            kind,
        })
    }

    pub fn token_count(&self) -> usize {
        self.tokens.len()
    }

    pub fn has_measure_word(&self) -> bool {
        self.tokens.iter().any(|t| is_measure_word(&t.surface))
    }

    /// Any alphanumeric content at all (pure-punctuation runs are not
    /// usable chunks).
    pub fn has_word(&self) -> bool {
        self.tokens
            .iter()
            .any(|t| t.surface.chars().any(char::is_alphanumeric))
    }
}

/// Picks the index of the token that dominates a chunk.
pub trait DependencyOracle: Send + Sync {
    fn head_index(&self, tokens: &[TaggedToken]) -> usize;
}

/// Default head heuristic: the leftmost finite verb; failing that the
/// rightmost noun that does not itself name time ("date", "week"); failing
/// that the rightmost noun; failing that the last token.
#[derive(Debug, Clone, Copy, Default)]
pub struct HeuristicDependencyOracle;

impl DependencyOracle for HeuristicDependencyOracle {
    fn head_index(&self, tokens: &[TaggedToken]) -> usize {
        assert!(!tokens.is_empty(), "head finding needs a nonempty chunk");
        if let Some(i) = tokens
            .iter()
            .position(|t| t.tag == PosTag::Verb && !t.lower().ends_with("ing"))
        {
            return i;
        }
        if let Some(i) = tokens
            .iter()
            .rposition(|t| t.tag == PosTag::Noun && !is_temporal_noun(&t.surface))
        {
            return i;
        }
        if let Some(i) = tokens.iter().rposition(|t| t.tag == PosTag::Noun) {
            return i;
        }
        tokens.len() - 1
    }
}

/// Index of the dominating token of `tokens` under `oracle`.
pub fn select_event_head(tokens: &[TaggedToken], oracle: &dyn DependencyOracle) -> usize {
    oracle.head_index(tokens)
}

/// Splits a token sequence into flat top-level constituents.
pub trait ConstituentOracle: Send + Sync {
    fn chunks(&self, tokens: &[TaggedToken]) -> Vec<Chunk>;
}

const CLAUSE_MARKERS: &[&str] = &[
    "that", "which", "who", "whom", "whose", "when", "while", "where", "because",
    "although", "though", "if", "unless", "and", "or", "but", "nor",
];

/// Default chunker: a new chunk starts at every preposition, possessive
/// marker, clause marker, and punctuation boundary, giving a flat two-level
/// tree.
#[derive(Debug, Clone, Copy, Default)]
pub struct BoundaryChunker;

fn is_boundary(token: &TaggedToken) -> bool {
    match token.tag {
        PosTag::Prep | PosTag::Poss => true,
        PosTag::Other => {
            let lower = token.lower();
            CLAUSE_MARKERS.contains(&lower.as_str())
                || !lower.chars().any(char::is_alphanumeric)
        }
        _ => false,
    }
}

impl ConstituentOracle for BoundaryChunker {
    fn chunks(&self, tokens: &[TaggedToken]) -> Vec<Chunk> {
        let mut chunks = Vec::new();
        let mut start = 0;
        for i in 1..tokens.len() {
            if is_boundary(&tokens[i]) {
                if let Some(c) = Chunk::from_tokens(&tokens[start..i], ChunkKind::Plain) {
                    chunks.push(c);
                }
                start = i;
            }
        }
        if let Some(c) = Chunk::from_tokens(&tokens[start..], ChunkKind::Plain) {
            chunks.push(c);
        }
        chunks
    }
}
