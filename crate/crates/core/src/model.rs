//! Shared document and annotation model.
//!
//! All character offsets count Unicode scalar values, not bytes, so spans
//! stay well-defined after encoding normalization and standoff merging.
//! Everything here is an immutable value object once constructed; sharing
//! between threads needs no coordination.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Half-open character range `[start, end)` into a document text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[derive(Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    /// Panics if `start > end`; spans are built from scanner positions that
    /// are ordered by construction.
    pub fn new(start: usize, end: usize) -> Self {
        assert!(start <= end, "span start {start} > end {end}");
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    /// `other` lies fully inside `self` (boundaries may touch).
    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    /// `other` lies inside `self` and the two are not identical.
    pub fn strictly_contains(&self, other: &Span) -> bool {
        self.contains(other) && self != other
    }

    pub fn overlaps(&self, other: &Span) -> bool {
        self.start < other.end && other.start < self.end
    }

    /// Extract the spanned characters from `text` (scalar-value offsets).
    pub fn slice_of(&self, text: &str) -> String {
        text.chars().skip(self.start).take(self.len()).collect()
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.start, self.end)
    }
}


/// Direction of a TIMEX2 `ANCHOR_DIR` attribute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnchorDir {
    Before,
    After,
    AsOf,
    Starting,
    Ending,
}

impl AnchorDir {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().as_str() {
            "BEFORE" => Some(AnchorDir::Before),
            "AFTER" => Some(AnchorDir::After),
            "AS_OF" => Some(AnchorDir::AsOf),
            "STARTING" => Some(AnchorDir::Starting),
            "ENDING" => Some(AnchorDir::Ending),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            AnchorDir::Before => "BEFORE",
            AnchorDir::After => "AFTER",
            AnchorDir::AsOf => "AS_OF",
            AnchorDir::Starting => "STARTING",
            AnchorDir::Ending => "ENDING",
        }
    }
}

/// One source TIMEX2 annotation. Children mirror nested `<TIMEX2>` markup.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Timex2 {
    pub span: Span,
    /// TIMEX2 `VAL`, possibly empty.
    pub val: String,
    pub set: bool,
    pub modifier: Option<String>,
    pub anchor_val: Option<String>,
    pub anchor_dir: Option<AnchorDir>,
    pub children: Vec<Timex2>,
    pub source_id: Option<String>,
    /// Unknown attributes, preserved for debugging but never emitted.
    pub extra: Vec<(String, String)>,
}

impl Timex2 {
    pub fn new(span: Span, val: impl Into<String>) -> Self {
        Timex2 {
            span,
            val: val.into(),
            ..Timex2::default()
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Leaves of this subtree in text order.
    pub fn leaves(&self) -> Vec<&Timex2> {
        let mut out = Vec::new();
        fn walk<'a>(t: &'a Timex2, out: &mut Vec<&'a Timex2>) {
            if t.is_leaf() {
                out.push(t);
            } else {
                for c in &t.children {
                    walk(c, out);
                }
            }
        }
        walk(self, &mut out);
        out
    }

    /// Every node of this subtree, including `self`.
    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(Timex2::node_count).sum::<usize>()
    }
}

/// Violation of the document model invariants, rejected at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    SpanOutOfBounds { span: Span, len: usize },
    ChildNotContained { parent: Span, child: Span },
    SiblingOverlap { first: Span, second: Span },
    UnorderedForest { before: Span, after: Span },
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::SpanOutOfBounds { span, len } => {
                write!(f, "span {span} exceeds text length {len}")
            }
            ModelError::ChildNotContained { parent, child } => {
                write!(f, "child span {child} not strictly contained in parent {parent}")
            }
            ModelError::SiblingOverlap { first, second } => {
                write!(f, "sibling spans {first} and {second} overlap")
            }
            ModelError::UnorderedForest { before, after } => {
                write!(f, "span {after} ordered after {before} but starts earlier")
            }
        }
    }
}

/// Source text plus a forest of TIMEX2 annotations over character spans.
///
/// The forest is validated on construction: parent/child containment is
/// strict, siblings are pairwise disjoint, and order follows span starts.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub text: String,
    timexes: Vec<Timex2>,
    pub doc_id: String,
    /// Document creation time value, when the source marks one.
    pub dct: Option<String>,
}

impl Document {
    pub fn new(
        text: impl Into<String>,
        timexes: Vec<Timex2>,
        doc_id: impl Into<String>,
        dct: Option<String>,
    ) -> Result<Self, ModelError> {
        let text = text.into();
        let len = text.chars().count();
        check_forest(&timexes, None, len)?;
        Ok(Document {
            text,
            timexes,
            doc_id: doc_id.into(),
            dct,
        })
    }

    pub fn timexes(&self) -> &[Timex2] {
        &self.timexes
    }

    /// Total TIMEX2 annotation count, nested ones included.
    pub fn timex2_node_count(&self) -> usize {
        self.timexes.iter().map(Timex2::node_count).sum()
    }
}

fn check_forest(nodes: &[Timex2], parent: Option<Span>, len: usize) -> Result<(), ModelError> {
    for pair in nodes.windows(2) {
        if pair[1].span.start < pair[0].span.start {
            return Err(ModelError::UnorderedForest {
                before: pair[0].span,
                after: pair[1].span,
            });
        }
        if pair[0].span.overlaps(&pair[1].span) {
            return Err(ModelError::SiblingOverlap {
                first: pair[0].span,
                second: pair[1].span,
            });
        }
    }
    for node in nodes {
        if node.span.end > len {
            return Err(ModelError::SpanOutOfBounds {
                span: node.span,
                len,
            });
        }
        if let Some(p) = parent {
            if !p.strictly_contains(&node.span) {
                return Err(ModelError::ChildNotContained {
                    parent: p,
                    child: node.span,
                });
            }
        }
        check_forest(&node.children, Some(node.span), len)?;
    }
    Ok(())
}

/// TIMEX3 type attribute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TimexType {
    Date,
    Time,
    Duration,
    Set,
}

impl TimexType {
    pub fn as_str(&self) -> &'static str {
        match self {
            TimexType::Date => "DATE",
            TimexType::Time => "TIME",
            TimexType::Duration => "DURATION",
            TimexType::Set => "SET",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "DATE" => Some(TimexType::Date),
            "TIME" => Some(TimexType::Time),
            "DURATION" => Some(TimexType::Duration),
            "SET" => Some(TimexType::Set),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FunctionInDocument {
    CreationTime,
    #[default]
    None,
}

impl FunctionInDocument {
    pub fn as_str(&self) -> &'static str {
        match self {
            FunctionInDocument::CreationTime => "CREATION_TIME",
            FunctionInDocument::None => "NONE",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "CREATION_TIME" => Some(FunctionInDocument::CreationTime),
            "NONE" => Some(FunctionInDocument::None),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Timex3 {
    pub tid: String,
    pub span: Span,
    pub ttype: TimexType,
    pub value: String,
    pub modifier: Option<String>,
    pub temporal_function: bool,
    pub function_in_document: FunctionInDocument,
    pub anchor_time_id: Option<String>,
}

/// TimeML event class; conversion only ever emits `Occurrence`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EventClass {
    #[default]
    Occurrence,
    Perception,
    Reporting,
    Aspectual,
    State,
    IState,
    IAction,
}

impl EventClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            EventClass::Occurrence => "OCCURRENCE",
            EventClass::Perception => "PERCEPTION",
            EventClass::Reporting => "REPORTING",
            EventClass::Aspectual => "ASPECTUAL",
            EventClass::State => "STATE",
            EventClass::IState => "I_STATE",
            EventClass::IAction => "I_ACTION",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "OCCURRENCE" => Some(EventClass::Occurrence),
            "PERCEPTION" => Some(EventClass::Perception),
            "REPORTING" => Some(EventClass::Reporting),
            "ASPECTUAL" => Some(EventClass::Aspectual),
            "STATE" => Some(EventClass::State),
            "I_STATE" => Some(EventClass::IState),
            "I_ACTION" => Some(EventClass::IAction),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Event {
    pub eid: String,
    pub span: Span,
    pub class: EventClass,
    pub stem: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    pub sid: String,
    pub span: Span,
}

/// TimeML temporal relation inventory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelType {
    Before,
    After,
    Includes,
    IsIncluded,
    During,
    DuringInv,
    Simultaneous,
    Iafter,
    Ibefore,
    Identity,
    Begins,
    Ends,
    BegunBy,
    EndedBy,
}

impl RelType {
    pub fn as_str(&self) -> &'static str {
        match self {
            RelType::Before => "BEFORE",
            RelType::After => "AFTER",
            RelType::Includes => "INCLUDES",
            RelType::IsIncluded => "IS_INCLUDED",
            RelType::During => "DURING",
            RelType::DuringInv => "DURING_INV",
            RelType::Simultaneous => "SIMULTANEOUS",
            RelType::Iafter => "IAFTER",
            RelType::Ibefore => "IBEFORE",
            RelType::Identity => "IDENTITY",
            RelType::Begins => "BEGINS",
            RelType::Ends => "ENDS",
            RelType::BegunBy => "BEGUN_BY",
            RelType::EndedBy => "ENDED_BY",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "BEFORE" => Some(RelType::Before),
            "AFTER" => Some(RelType::After),
            "INCLUDES" => Some(RelType::Includes),
            "IS_INCLUDED" => Some(RelType::IsIncluded),
            "DURING" => Some(RelType::During),
            "DURING_INV" => Some(RelType::DuringInv),
            "SIMULTANEOUS" => Some(RelType::Simultaneous),
            "IAFTER" => Some(RelType::Iafter),
            "IBEFORE" => Some(RelType::Ibefore),
            "IDENTITY" => Some(RelType::Identity),
            "BEGINS" => Some(RelType::Begins),
            "ENDS" => Some(RelType::Ends),
            "BEGUN_BY" => Some(RelType::BegunBy),
            "ENDED_BY" => Some(RelType::EndedBy),
            _ => None,
        }
    }
}

/// Temporal link between a time/event pair, optionally signal-supported.
///
/// Exactly one of `time_id`/`event_id` is the source and exactly one of
/// `related_to_time`/`related_event_id` the target; [`crate::validate`]
/// flags anything else.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TLink {
    pub lid: String,
    pub time_id: Option<String>,
    pub event_id: Option<String>,
    pub related_to_time: Option<String>,
    pub related_event_id: Option<String>,
    pub rel_type: Option<RelType>,
    pub signal_id: Option<String>,
}

/// Element classes that carry per-class unique IDs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementClass {
    Timex3,
    Event,
    Signal,
    TLink,
}

impl ElementClass {
    pub fn prefix(&self) -> char {
        match self {
            ElementClass::Timex3 => 't',
            ElementClass::Event => 'e',
            ElementClass::Signal => 's',
            ElementClass::TLink => 'l',
        }
    }
}

/// A TimeML document: text plus TIMEX3, EVENT, SIGNAL and TLINK elements.
///
/// Fields are public so that [`crate::validate`] can be exercised on
/// deliberately broken documents; the `add_*` helpers keep IDs unique and
/// monotone for code that builds valid ones.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TimeMlDocument {
    pub text: String,
    pub timex3s: Vec<Timex3>,
    pub events: Vec<Event>,
    pub signals: Vec<Signal>,
    pub tlinks: Vec<TLink>,
    pub doc_id: String,
}

impl TimeMlDocument {
    pub fn new(text: impl Into<String>, doc_id: impl Into<String>) -> Self {
        TimeMlDocument {
            text: text.into(),
            doc_id: doc_id.into(),
            ..TimeMlDocument::default()
        }
    }

    /// Next unused ID for `class`: prefix plus the successor of the largest
    /// numeric suffix already present.
    pub fn next_id(&self, class: ElementClass) -> String {
        let prefix = class.prefix();
        let max = self
            .ids(class)
            .filter_map(|id| id.strip_prefix(prefix))
            .filter_map(|n| n.parse::<u64>().ok())
            .max()
            .unwrap_or(0);
        let mut id = String::new();
        id.push(prefix);
        id.push_str(&(max + 1).to_string());
        id
    }

    fn ids(&self, class: ElementClass) -> alloc::boxed::Box<dyn Iterator<Item = &str> + '_> {
        match class {
            ElementClass::Timex3 => {
                alloc::boxed::Box::new(self.timex3s.iter().map(|t| t.tid.as_str()))
            }
            ElementClass::Event => alloc::boxed::Box::new(self.events.iter().map(|e| e.eid.as_str())),
            ElementClass::Signal => {
                alloc::boxed::Box::new(self.signals.iter().map(|s| s.sid.as_str()))
            }
            ElementClass::TLink => alloc::boxed::Box::new(self.tlinks.iter().map(|l| l.lid.as_str())),
        }
    }

    /// Insert a TIMEX3, assigning its `tid`; returns the assigned ID.
    pub fn add_timex3(&mut self, mut t3: Timex3) -> String {
        t3.tid = self.next_id(ElementClass::Timex3);
        let tid = t3.tid.clone();
        self.timex3s.push(t3);
        tid
    }

    pub fn add_event(&mut self, mut ev: Event) -> String {
        ev.eid = self.next_id(ElementClass::Event);
        let eid = ev.eid.clone();
        self.events.push(ev);
        eid
    }

    pub fn add_signal(&mut self, span: Span) -> String {
        let sid = self.next_id(ElementClass::Signal);
        self.signals.push(Signal {
            sid: sid.clone(),
            span,
        });
        sid
    }

    pub fn add_tlink(&mut self, mut link: TLink) -> String {
        link.lid = self.next_id(ElementClass::TLink);
        let lid = link.lid.clone();
        self.tlinks.push(link);
        lid
    }

    pub fn find_timex3(&self, tid: &str) -> Option<&Timex3> {
        self.timex3s.iter().find(|t| t.tid == tid)
    }
}
