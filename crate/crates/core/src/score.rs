//! Timex extent scoring under the two evaluation regimes.
//!
//! Entity-strict scoring credits only exactly matching extents; token-based
//! scoring credits every whitespace token covered by both a gold and a
//! system timex. Corpus scores are micro-averaged: counts pool across
//! documents before precision/recall/F1 are computed, and the
//! zero-denominator convention is pessimistic (0, not 1).

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::model::{Span, TimeMlDocument};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    EntityStrict,
    Token,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::EntityStrict => "entity_strict",
            Regime::Token => "token",
        }
    }
}

/// Gold and system documents must annotate the same text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextMismatch;

impl fmt::Display for TextMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gold and system documents have different texts")
    }
}

/// Pooled counts with derived precision/recall/F1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScoreReport {
    pub regime: Regime,
    pub true_pos: usize,
    pub false_pos: usize,
    pub false_neg: usize,
}

impl ScoreReport {
    pub fn empty(regime: Regime) -> Self {
        ScoreReport {
            regime,
            true_pos: 0,
            false_pos: 0,
            false_neg: 0,
        }
    }

    /// Pool counts from another report of the same regime.
    pub fn absorb(&mut self, other: &ScoreReport) {
        assert_eq!(self.regime, other.regime, "cannot pool across regimes");
        self.true_pos += other.true_pos;
        self.false_pos += other.false_pos;
        self.false_neg += other.false_neg;
    }

    pub fn precision(&self) -> f64 {
        ratio(self.true_pos, self.true_pos + self.false_pos)
    }

    pub fn recall(&self) -> f64 {
        ratio(self.true_pos, self.true_pos + self.false_neg)
    }

    pub fn f1(&self) -> f64 {
        let p = self.precision();
        let r = self.recall();
        if p + r > 0.0 {
            2.0 * p * r / (p + r)
        } else {
            0.0
        }
    }

    /// Machine-readable row: `regime P R F1 tp fp fn`, tab-separated.
    pub fn tsv_row(&self) -> String {
        format!(
            "{}\t{:.4}\t{:.4}\t{:.4}\t{}\t{}\t{}",
            self.regime.as_str(),
            self.precision(),
            self.recall(),
            self.f1(),
            self.true_pos,
            self.false_pos,
            self.false_neg
        )
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Aligned human-readable table over any number of reports.
pub fn render_table(reports: &[ScoreReport]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<14} {:>8} {:>8} {:>8} {:>6} {:>6} {:>6}\n",
        "regime", "P", "R", "F1", "tp", "fp", "fn"
    ));
    for r in reports {
        out.push_str(&format!(
            "{:<14} {:>8.4} {:>8.4} {:>8.4} {:>6} {:>6} {:>6}\n",
            r.regime.as_str(),
            r.precision(),
            r.recall(),
            r.f1(),
            r.true_pos,
            r.false_pos,
            r.false_neg
        ));
    }
    out
}

/// Strict entity scoring: a system timex counts only when its span equals a
/// gold span exactly.
pub fn score_entity(
    gold: &TimeMlDocument,
    sys: &TimeMlDocument,
) -> Result<ScoreReport, TextMismatch> {
    if gold.text != sys.text {
        return Err(TextMismatch);
    }
    let gold_spans: BTreeSet<Span> = gold.timex3s.iter().map(|t| t.span).collect();
    let sys_spans: BTreeSet<Span> = sys.timex3s.iter().map(|t| t.span).collect();
    let true_pos = gold_spans.intersection(&sys_spans).count();
    Ok(ScoreReport {
        regime: Regime::EntityStrict,
        true_pos,
        false_pos: sys_spans.len() - true_pos,
        false_neg: gold_spans.len() - true_pos,
    })
}

/// Whitespace tokens of `text` as character spans.
fn whitespace_tokens(text: &str) -> Vec<Span> {
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;
    let mut idx = 0usize;
    for c in text.chars() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push(Span::new(s, idx));
            }
        } else if start.is_none() {
            start = Some(idx);
        }
        idx += 1;
    }
    if let Some(s) = start {
        tokens.push(Span::new(s, idx));
    }
    tokens
}

/// Token-based scoring: a token is annotated when any timex span overlaps
/// it; credit is per token annotated on both sides.
pub fn score_token(
    gold: &TimeMlDocument,
    sys: &TimeMlDocument,
) -> Result<ScoreReport, TextMismatch> {
    if gold.text != sys.text {
        return Err(TextMismatch);
    }
    let mut true_pos = 0;
    let mut false_pos = 0;
    let mut false_neg = 0;
    for token in whitespace_tokens(&gold.text) {
        let in_gold = gold.timex3s.iter().any(|t| t.span.overlaps(&token));
        let in_sys = sys.timex3s.iter().any(|t| t.span.overlaps(&token));
        match (in_gold, in_sys) {
            (true, true) => true_pos += 1,
            (false, true) => false_pos += 1,
            (true, false) => false_neg += 1,
            (false, false) => {}
        }
    }
    Ok(ScoreReport {
        regime: Regime::Token,
        true_pos,
        false_pos,
        false_neg,
    })
}

/// Micro-averaged corpus score: pool per-document counts, then derive.
pub fn score_corpus<'a, I>(pairs: I, regime: Regime) -> Result<ScoreReport, TextMismatch>
where
    I: IntoIterator<Item = (&'a TimeMlDocument, &'a TimeMlDocument)>,
{
    let mut total = ScoreReport::empty(regime);
    for (gold, sys) in pairs {
        let report = match regime {
            Regime::EntityStrict => score_entity(gold, sys)?,
            Regime::Token => score_token(gold, sys)?,
        };
        total.absorb(&report);
    }
    Ok(total)
}
