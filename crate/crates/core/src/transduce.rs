//! TIMEX2 → TimeML conversion.
//!
//! Each top-level TIMEX2 takes exactly one of four paths:
//!
//! * **nested** — it has children: leaves map to TIMEX3 directly,
//!   co-ordinating phrases in the remaining text become SIGNALs, and the
//!   residue chunk most likely to carry the outer VAL becomes one more
//!   TIMEX3, with TLINKs co-ordinating the set;
//! * **signalled** — a temporal signal splits it into pre-signal, signal
//!   and post-signal chunks; the measure-word chunk becomes the TIMEX3,
//!   the other an EVENT on its dominating word, linked through the signal;
//! * **trimmed** — at six tokens or more with no signal, the annotation is
//!   reduced to the largest sub-cutoff constituent containing a measure
//!   word;
//! * **simple** — everything else maps one-to-one.
//!
//! Values are copied from the source annotation, never recomputed. Every
//! source annotation that yields no TIMEX3 is accounted for in the
//! [`ConversionReport`].

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::chunk::{
    BoundaryChunker, Chunk, ChunkKind, ConstituentOracle, DependencyOracle,
    HeuristicDependencyOracle,
};
use crate::lexicon::{is_measure_word, SignalEntry, SignalLexicon};
use crate::model::{
    Document, Event, EventClass, FunctionInDocument, RelType, Span, TLink, TimeMlDocument,
    Timex2, Timex3, TimexType,
};
use crate::tag::{PosTag, TagCache, TaggedToken};
use crate::values::{is_reference_val, looks_like_time, value_contains, value_order};

/// Knobs the conversion leaves variable.
#[derive(Debug, Clone)]
pub struct ConversionConfig {
    /// Annotations of this many tokens or more (and no children, no signal)
    /// are trimmed. Must be at least 2.
    pub trim_cutoff: usize,
    /// Signal phrase → relation type for signal-supported links; unmapped
    /// phrases yield untyped links.
    pub signal_relation_map: BTreeMap<String, RelType>,
    /// Leave nested-path link types blank when value containment cannot
    /// decide them.
    pub leave_ambiguous_untyped: bool,
    /// Force every emitted TLINK to be untyped.
    pub untyped_tlinks: bool,
}

impl Default for ConversionConfig {
    fn default() -> Self {
        ConversionConfig {
            trim_cutoff: 6,
            signal_relation_map: default_relation_map(),
            leave_ambiguous_untyped: true,
            untyped_tlinks: false,
        }
    }
}

/// Default signal → relation map: `after`/`since` → AFTER, `before`/`until`
/// → BEFORE, containment prepositions → IS_INCLUDED, `from` → BEGUN_BY.
pub fn default_relation_map() -> BTreeMap<String, RelType> {
    let mut map = BTreeMap::new();
    for (phrase, rel) in [
        ("after", RelType::After),
        ("since", RelType::After),
        ("before", RelType::Before),
        ("until", RelType::Before),
        ("during", RelType::IsIncluded),
        ("throughout", RelType::IsIncluded),
        ("in", RelType::IsIncluded),
        ("of", RelType::IsIncluded),
        ("from", RelType::BegunBy),
    ] {
        map.insert(String::from(phrase), rel);
    }
    map
}

/// Which conversion path a source annotation took.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvertPath {
    Simple,
    Signalled,
    Nested,
    Trimmed,
}

impl ConvertPath {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConvertPath::Simple => "simple",
            ConvertPath::Signalled => "signalled",
            ConvertPath::Nested => "nested",
            ConvertPath::Trimmed => "trimmed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WarningKind {
    /// Source VAL was empty; the TIMEX3 carries an empty value.
    EmptyValue,
    /// The signal split left no event chunk; degraded to simple mapping.
    DegenerateSignalSplit,
    /// A nested outer annotation had no residue chunk; its VAL is dropped.
    NoResidueChunk,
    /// A nested non-leaf, non-outer annotation; its VAL is dropped.
    NestedInnerDropped,
    /// ANCHOR_VAL matched no previously emitted TIMEX3 value.
    UnresolvedAnchor,
}

impl WarningKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            WarningKind::EmptyValue => "empty-value",
            WarningKind::DegenerateSignalSplit => "degenerate-signal-split",
            WarningKind::NoResidueChunk => "no-residue-chunk",
            WarningKind::NestedInnerDropped => "nested-inner-dropped",
            WarningKind::UnresolvedAnchor => "unresolved-anchor",
        }
    }

    /// Does this warning account for a source annotation that produced no
    /// TIMEX3?
    pub fn drops_value(&self) -> bool {
        matches!(self, WarningKind::NoResidueChunk | WarningKind::NestedInnerDropped)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConversionWarning {
    pub kind: WarningKind,
    pub span: Span,
    pub val: String,
}

/// Per-source-annotation conversion record.
#[derive(Debug, Clone, PartialEq)]
pub struct ConversionOutcome {
    pub source_span: Span,
    pub source_val: String,
    pub path: ConvertPath,
    /// IDs of the TIMEX3s this annotation produced.
    pub emitted: Vec<String>,
    /// Source nodes under this annotation that produced no TIMEX3.
    pub dropped: usize,
}

/// Counts conversions by path and accounts for every lost annotation:
/// `source_nodes() == timex3_emitted() + dropped_total()` always holds.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConversionReport {
    pub outcomes: Vec<ConversionOutcome>,
    pub warnings: Vec<ConversionWarning>,
}

impl ConversionReport {
    pub fn path_count(&self, path: ConvertPath) -> usize {
        self.outcomes.iter().filter(|o| o.path == path).count()
    }

    pub fn timex3_emitted(&self) -> usize {
        self.outcomes.iter().map(|o| o.emitted.len()).sum()
    }

    pub fn dropped_total(&self) -> usize {
        self.outcomes.iter().map(|o| o.dropped).sum()
    }

    /// All source TIMEX2 nodes covered by the outcomes, nested included.
    pub fn source_nodes(&self) -> usize {
        self.outcomes.iter().map(|o| o.emitted.len() + o.dropped).sum()
    }
}

/// Infer the TIMEX3 type from a TIMEX2 value and SET flag.
pub fn infer_type(val: &str, set: bool) -> TimexType {
    if set {
        return TimexType::Set;
    }
    if is_reference_val(val) {
        return TimexType::Date;
    }
    if val.starts_with('P') {
        return TimexType::Duration;
    }
    if looks_like_time(val) {
        return TimexType::Time;
    }
    TimexType::Date
}

/// The signalled path found no usable event/timex split; the caller degrades
/// to simple mapping over the whole span.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegenerateSplit;

static DEFAULT_DEP_ORACLE: HeuristicDependencyOracle = HeuristicDependencyOracle;
static DEFAULT_CHUNKER: BoundaryChunker = BoundaryChunker;

/// Drives conversion of documents under one configuration, lexicon and tag
/// cache. Pure per-document; use one converter (or at least one cache) per
/// worker when parallelizing.
pub struct Converter<'a> {
    cfg: &'a ConversionConfig,
    lexicon: &'a SignalLexicon,
    cache: &'a mut TagCache,
    dep: &'a dyn DependencyOracle,
    chunker: &'a dyn ConstituentOracle,
}

fn doc_tokens(cache: &mut TagCache, text: &str, span: Span) -> Vec<TaggedToken> {
    let phrase = span.slice_of(text);
    cache
        .tag(&phrase)
        .iter()
        .map(|t| t.at_offset(span.start))
        .collect()
}

fn span_of_tokens(tokens: &[TaggedToken]) -> Span {
    Span::new(tokens[0].span.start, tokens[tokens.len() - 1].span.end)
}

/// Remove leading and trailing prepositions and articles; keeps the input
/// when stripping would empty it.
fn strip_outer_function_words(tokens: &[TaggedToken]) -> &[TaggedToken] {
    fn strippable(t: &TaggedToken) -> bool {
        t.tag == PosTag::Prep || matches!(t.lower().as_str(), "a" | "an" | "the")
    }
    let mut start = 0;
    let mut end = tokens.len();
    while start < end && strippable(&tokens[start]) {
        start += 1;
    }
    while end > start && strippable(&tokens[end - 1]) {
        end -= 1;
    }
    if start == end {
        tokens
    } else {
        &tokens[start..end]
    }
}

/// Reduce an over-long annotation to the span of the largest constituent
/// chunk under `cutoff` tokens that contains a temporal measure word,
/// preferring the leftmost among equals; with no such chunk, the leftmost
/// chunk under the cutoff; with no chunk under the cutoff at all, a
/// `cutoff - 1` token window around the first measure word.
pub fn trim_long_timex(
    tokens: &[TaggedToken],
    cutoff: usize,
    chunker: &dyn ConstituentOracle,
) -> Span {
    assert!(cutoff >= 2, "trim cutoff must be at least 2");
    if tokens.len() < cutoff {
        return span_of_tokens(tokens);
    }
    let chunks = chunker.chunks(tokens);
    let mut best: Option<&Chunk> = None;
    for chunk in &chunks {
        if chunk.token_count() < cutoff && chunk.has_word() && chunk.has_measure_word() {
            let better = best.is_none_or(|b| chunk.token_count() > b.token_count());
            if better {
                best = Some(chunk);
            }
        }
    }
    if let Some(chunk) = best {
        return chunk.span;
    }
    if let Some(chunk) = chunks
        .iter()
        .find(|c| c.token_count() < cutoff && c.has_word())
    {
        return chunk.span;
    }
    let limit = cutoff - 1;
    let end = tokens
        .iter()
        .position(|t| is_measure_word(&t.surface))
        .map(|i| (i + 1).max(limit))
        .unwrap_or(limit)
        .min(tokens.len());
    span_of_tokens(&tokens[end - limit..end])
}

impl<'a> Converter<'a> {
    pub fn new(
        cfg: &'a ConversionConfig,
        lexicon: &'a SignalLexicon,
        cache: &'a mut TagCache,
    ) -> Self {
        Converter {
            cfg,
            lexicon,
            cache,
            dep: &DEFAULT_DEP_ORACLE,
            chunker: &DEFAULT_CHUNKER,
        }
    }

    pub fn with_oracles(
        cfg: &'a ConversionConfig,
        lexicon: &'a SignalLexicon,
        cache: &'a mut TagCache,
        dep: &'a dyn DependencyOracle,
        chunker: &'a dyn ConstituentOracle,
    ) -> Self {
        Converter {
            cfg,
            lexicon,
            cache,
            dep,
            chunker,
        }
    }

    /// Convert one document: dispatch every top-level TIMEX2 to its path.
    /// Per-annotation failures degrade to simple mapping with a warning;
    /// nothing aborts the document.
    pub fn convert(&mut self, doc: &Document) -> (TimeMlDocument, ConversionReport) {
        let mut out = TimeMlDocument::new(doc.text.clone(), doc.doc_id.clone());
        let mut report = ConversionReport::default();
        let dct = doc.dct.clone();
        let lexicon = self.lexicon;

        for t2 in doc.timexes() {
            let mut warnings = Vec::new();
            let (path, emitted) = if !t2.children.is_empty() {
                let tids =
                    self.transduce_nested(t2, &doc.text, &mut out, dct.as_deref(), &mut warnings);
                (ConvertPath::Nested, tids)
            } else {
                let tokens = doc_tokens(self.cache, &doc.text, t2.span);
                if let Some(signal) = lexicon.find_signal(&tokens) {
                    match self.transduce_signalled(
                        t2,
                        &tokens,
                        signal,
                        &mut out,
                        dct.as_deref(),
                        &mut warnings,
                    ) {
                        Ok(tids) => (ConvertPath::Signalled, tids),
                        Err(DegenerateSplit) => {
                            warnings.push(ConversionWarning {
                                kind: WarningKind::DegenerateSignalSplit,
                                span: t2.span,
                                val: t2.val.clone(),
                            });
                            let tid =
                                self.map_simple_timex(t2, &mut out, dct.as_deref(), &mut warnings);
                            (ConvertPath::Simple, vec![tid])
                        }
                    }
                } else if tokens.len() >= self.cfg.trim_cutoff {
                    let span = trim_long_timex(&tokens, self.cfg.trim_cutoff, self.chunker);
                    let tid = self.emit_timex3(t2, span, &mut out, dct.as_deref(), &mut warnings);
                    (ConvertPath::Trimmed, vec![tid])
                } else {
                    let tid = self.map_simple_timex(t2, &mut out, dct.as_deref(), &mut warnings);
                    (ConvertPath::Simple, vec![tid])
                }
            };
            report.outcomes.push(ConversionOutcome {
                source_span: t2.span,
                source_val: t2.val.clone(),
                path,
                dropped: t2.node_count() - emitted.len(),
                emitted,
            });
            report.warnings.append(&mut warnings);
        }
        // Document order: elements sorted by span, matching the wire format,
        // so serialization round-trips to an identical value.
        out.timex3s.sort_by_key(|t| (t.span.start, t.span.end));
        out.events.sort_by_key(|e| (e.span.start, e.span.end));
        out.signals.sort_by_key(|s| (s.span.start, s.span.end));
        (out, report)
    }

    /// One-to-one mapping of a childless, signal-free annotation.
    pub fn map_simple_timex(
        &mut self,
        t2: &Timex2,
        out: &mut TimeMlDocument,
        dct: Option<&str>,
        warnings: &mut Vec<ConversionWarning>,
    ) -> String {
        self.emit_timex3(t2, t2.span, out, dct, warnings)
    }

    /// Signalled event-based expansion: split on the signal, pick the
    /// measure-word chunk as the timex (first chunk when none matches),
    /// strip its function words, annotate the dominating word of the other
    /// chunk as an event, and link the two through the signal.
    pub fn transduce_signalled(
        &mut self,
        t2: &Timex2,
        tokens: &[TaggedToken],
        signal: (Span, &SignalEntry),
        out: &mut TimeMlDocument,
        dct: Option<&str>,
        warnings: &mut Vec<ConversionWarning>,
    ) -> Result<Vec<String>, DegenerateSplit> {
        let (sig_span, entry) = signal;
        let pre: Vec<TaggedToken> = tokens
            .iter()
            .filter(|t| t.span.end <= sig_span.start)
            .cloned()
            .collect();
        let post: Vec<TaggedToken> = tokens
            .iter()
            .filter(|t| t.span.start >= sig_span.end)
            .cloned()
            .collect();
        let pre = Chunk::from_tokens(&pre, ChunkKind::PreSignal);
        let post = Chunk::from_tokens(&post, ChunkKind::PostSignal);
        let (Some(pre), Some(post)) = (pre, post) else {
            return Err(DegenerateSplit);
        };
        if !pre.has_word() || !post.has_word() {
            return Err(DegenerateSplit);
        }

        // The timex chunk is the shortest one holding a measure word; with
        // no measure word anywhere, the first chunk.
        let timex_is_pre = match (pre.has_measure_word(), post.has_measure_word()) {
            (true, true) => pre.token_count() <= post.token_count(),
            (true, false) => true,
            (false, true) => false,
            (false, false) => true,
        };
        let (timex_chunk, event_chunk) = if timex_is_pre { (pre, post) } else { (post, pre) };

        let timex_tokens = strip_outer_function_words(&timex_chunk.tokens);
        let tid = self.emit_timex3(t2, span_of_tokens(timex_tokens), out, dct, warnings);
        let sid = out.add_signal(sig_span);
        let head = self.dep.head_index(&event_chunk.tokens);
        let eid = out.add_event(Event {
            eid: String::new(),
            span: event_chunk.tokens[head].span,
            class: EventClass::Occurrence,
            stem: None,
        });
        out.add_tlink(TLink {
            time_id: Some(tid.clone()),
            related_event_id: Some(eid),
            rel_type: self.relation_for(&entry.phrase),
            signal_id: Some(sid),
            ..TLink::default()
        });
        Ok(vec![tid])
    }

    /// Nested unpacking: leaves map to TIMEX3, co-ordinating phrases in the
    /// residue become SIGNALs, the residue chunk most likely to carry the
    /// outer VAL becomes one more TIMEX3, and TLINKs tie the set together
    /// (typed by value containment, blank when ambiguous).
    pub fn transduce_nested(
        &mut self,
        t2: &Timex2,
        text: &str,
        out: &mut TimeMlDocument,
        dct: Option<&str>,
        warnings: &mut Vec<ConversionWarning>,
    ) -> Vec<String> {
        let lexicon = self.lexicon;
        let mut emitted = Vec::new();

        let leaves = t2.leaves();
        let mut leaf_refs: Vec<(Span, String, String)> = Vec::new();
        for leaf in &leaves {
            let tid = self.emit_timex3(leaf, leaf.span, out, dct, warnings);
            leaf_refs.push((leaf.span, tid.clone(), leaf.val.clone()));
            emitted.push(tid);
        }

        // Intermediate levels have neither a leaf mapping nor the outer's
        // residue treatment; their values are dropped, with a warning each.
        collect_inner_drops(t2, true, warnings);

        // Residue: the outer span minus its direct children.
        let mut segments = Vec::new();
        let mut cursor = t2.span.start;
        for child in &t2.children {
            if child.span.start > cursor {
                segments.push(Span::new(cursor, child.span.start));
            }
            cursor = child.span.end;
        }
        if t2.span.end > cursor {
            segments.push(Span::new(cursor, t2.span.end));
        }

        // Signals and chunks, bounded by sub-element edges.
        let mut signals: Vec<(Span, String, String)> = Vec::new();
        let mut chunks: Vec<Chunk> = Vec::new();
        for segment in segments {
            let tokens = doc_tokens(self.cache, text, segment);
            let found = lexicon.find_all_signals(&tokens);
            for (span, entry) in &found {
                let sid = out.add_signal(*span);
                signals.push((*span, entry.phrase.clone(), sid));
            }
            let mut run: Vec<TaggedToken> = Vec::new();
            for token in tokens {
                if found.iter().any(|(s, _)| s.contains(&token.span)) {
                    push_chunk(&mut chunks, &mut run);
                } else {
                    run.push(token);
                }
            }
            push_chunk(&mut chunks, &mut run);
        }

        // The chunk most likely to carry the outer VAL: measure-worded
        // first, then frontmost.
        let residue = chunks
            .iter()
            .find(|c| c.has_measure_word())
            .or_else(|| chunks.first());
        let outer_tid = match residue {
            Some(chunk) => {
                let tid = self.emit_timex3(t2, chunk.span, out, dct, warnings);
                emitted.push(tid.clone());
                Some(tid)
            }
            None => {
                warnings.push(ConversionWarning {
                    kind: WarningKind::NoResidueChunk,
                    span: t2.span,
                    val: t2.val.clone(),
                });
                None
            }
        };

        // Co-ordinate the new elements.
        if let Some(outer_tid) = &outer_tid {
            for (leaf_span, leaf_tid, leaf_val) in &leaf_refs {
                let signal = signals
                    .iter()
                    .filter(|(s, _, _)| s.end <= leaf_span.start)
                    .max_by_key(|(s, _, _)| s.start);
                let signal_id = signal.map(|(_, _, sid)| sid.clone());
                let link = if self.cfg.untyped_tlinks {
                    TLink {
                        time_id: Some(leaf_tid.clone()),
                        related_to_time: Some(outer_tid.clone()),
                        signal_id,
                        ..TLink::default()
                    }
                } else if value_contains(&t2.val, leaf_val) {
                    TLink {
                        time_id: Some(leaf_tid.clone()),
                        related_to_time: Some(outer_tid.clone()),
                        rel_type: Some(RelType::IsIncluded),
                        signal_id,
                        ..TLink::default()
                    }
                } else if !self.cfg.leave_ambiguous_untyped {
                    let rel = signal
                        .and_then(|(_, phrase, _)| self.cfg.signal_relation_map.get(phrase))
                        .copied();
                    TLink {
                        time_id: Some(outer_tid.clone()),
                        related_to_time: Some(leaf_tid.clone()),
                        rel_type: rel,
                        signal_id,
                        ..TLink::default()
                    }
                } else {
                    TLink {
                        time_id: Some(leaf_tid.clone()),
                        related_to_time: Some(outer_tid.clone()),
                        signal_id,
                        ..TLink::default()
                    }
                };
                out.add_tlink(link);
            }
        } else {
            // No residue timex: order consecutive leaves against each other.
            for pair in leaf_refs.windows(2) {
                let (prev_span, prev_tid, prev_val) = &pair[0];
                let (cur_span, cur_tid, cur_val) = &pair[1];
                let signal = signals
                    .iter()
                    .filter(|(s, _, _)| s.start >= prev_span.end && s.end <= cur_span.start)
                    .max_by_key(|(s, _, _)| s.start);
                let rel = if self.cfg.untyped_tlinks {
                    None
                } else {
                    match value_order(prev_val, cur_val) {
                        Some(core::cmp::Ordering::Less) => Some(RelType::Before),
                        Some(core::cmp::Ordering::Greater) => Some(RelType::After),
                        _ => None,
                    }
                };
                out.add_tlink(TLink {
                    time_id: Some(prev_tid.clone()),
                    related_to_time: Some(cur_tid.clone()),
                    rel_type: rel,
                    signal_id: signal.map(|(_, _, sid)| sid.clone()),
                    ..TLink::default()
                });
            }
        }
        emitted
    }

    fn relation_for(&self, phrase: &str) -> Option<RelType> {
        if self.cfg.untyped_tlinks {
            None
        } else {
            self.cfg.signal_relation_map.get(phrase).copied()
        }
    }

    /// Emit one TIMEX3 over `span` carrying the source annotation's
    /// attributes: the value verbatim, the type inferred from it, MOD passed
    /// through, temporal function for reference values and anchored timexes,
    /// and the anchor resolved to a previously emitted TIMEX3 where its
    /// value matches (dropped with a warning otherwise).
    fn emit_timex3(
        &mut self,
        src: &Timex2,
        span: Span,
        out: &mut TimeMlDocument,
        dct: Option<&str>,
        warnings: &mut Vec<ConversionWarning>,
    ) -> String {
        if src.val.is_empty() {
            warnings.push(ConversionWarning {
                kind: WarningKind::EmptyValue,
                span: src.span,
                val: String::new(),
            });
        }
        let has_anchor = src.anchor_val.is_some() || src.anchor_dir.is_some();
        let anchor_time_id = src
            .anchor_val
            .as_ref()
            .and_then(|av| out.timex3s.iter().find(|t| t.value == *av))
            .map(|t| t.tid.clone());
        if src.anchor_val.is_some() && anchor_time_id.is_none() {
            warnings.push(ConversionWarning {
                kind: WarningKind::UnresolvedAnchor,
                span: src.span,
                val: src.val.clone(),
            });
        }
        let function_in_document = match dct {
            Some(d) if !src.val.is_empty() && d == src.val => FunctionInDocument::CreationTime,
            _ => FunctionInDocument::None,
        };
        out.add_timex3(Timex3 {
            tid: String::new(),
            span,
            ttype: infer_type(&src.val, src.set),
            value: src.val.clone(),
            modifier: src.modifier.clone(),
            temporal_function: is_reference_val(&src.val) || has_anchor,
            function_in_document,
            anchor_time_id,
        })
    }
}

fn push_chunk(chunks: &mut Vec<Chunk>, run: &mut Vec<TaggedToken>) {
    if let Some(chunk) = Chunk::from_tokens(run, ChunkKind::Plain) {
        if chunk.has_word() {
            chunks.push(chunk);
        }
    }
    run.clear();
}

fn collect_inner_drops(node: &Timex2, is_outer: bool, warnings: &mut Vec<ConversionWarning>) {
    if !is_outer && !node.is_leaf() {
        warnings.push(ConversionWarning {
            kind: WarningKind::NestedInnerDropped,
            span: node.span,
            val: node.val.clone(),
        });
    }
    for child in &node.children {
        collect_inner_drops(child, false, warnings);
    }
}

/// Convert `doc` with the default oracles.
pub fn convert_document(
    doc: &Document,
    cfg: &ConversionConfig,
    lexicon: &SignalLexicon,
    cache: &mut TagCache,
) -> (TimeMlDocument, ConversionReport) {
    Converter::new(cfg, lexicon, cache).convert(doc)
}
