//! Consistency checking of TimeML documents.
//!
//! The checks mirror what the schema and a consistency pass enforce on the
//! emitted element subset: unique per-class IDs with the right prefixes,
//! resolvable references, in-bounds non-overlapping spans, link arity, and
//! non-empty timex values. Enumerated attributes are already enums in the
//! model, so they cannot go wrong in memory; the parser rejects bad ones at
//! the boundary instead.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::model::{Span, TimeMlDocument};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationCode {
    DupId,
    DanglingRef,
    SpanOverlap,
    BadAttr,
    MalformedXml,
    EmptyValue,
}

impl ViolationCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ViolationCode::DupId => "DUP_ID",
            ViolationCode::DanglingRef => "DANGLING_REF",
            ViolationCode::SpanOverlap => "SPAN_OVERLAP",
            ViolationCode::BadAttr => "BAD_ATTR",
            ViolationCode::MalformedXml => "MALFORMED_XML",
            ViolationCode::EmptyValue => "EMPTY_VALUE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub code: ViolationCode,
    pub element_id: String,
    pub message: String,
}

impl Violation {
    pub fn new(code: ViolationCode, element_id: impl Into<String>, message: impl Into<String>) -> Self {
        Violation {
            code,
            element_id: element_id.into(),
            message: message.into(),
        }
    }

    /// Line-oriented report form: `code<TAB>id<TAB>message`.
    pub fn tsv_line(&self) -> String {
        format!("{}\t{}\t{}", self.code.as_str(), self.element_id, self.message)
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]: {}", self.code.as_str(), self.element_id, self.message)
    }
}

fn well_formed_id(id: &str, prefix: char) -> bool {
    id.strip_prefix(prefix)
        .map(|digits| !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()))
        .unwrap_or(false)
}

/// Check a document against the TimeML rules; an empty result means valid.
pub fn validate(doc: &TimeMlDocument) -> Vec<Violation> {
    let mut violations = Vec::new();
    let text_len = doc.text.chars().count();

    // Per-class ID uniqueness and prefix discipline.
    let classes: [(&str, char, Vec<&str>); 4] = [
        ("TIMEX3", 't', doc.timex3s.iter().map(|t| t.tid.as_str()).collect()),
        ("EVENT", 'e', doc.events.iter().map(|e| e.eid.as_str()).collect()),
        ("SIGNAL", 's', doc.signals.iter().map(|s| s.sid.as_str()).collect()),
        ("TLINK", 'l', doc.tlinks.iter().map(|l| l.lid.as_str()).collect()),
    ];
    for (label, prefix, ids) in &classes {
        let mut seen = BTreeSet::new();
        for id in ids {
            if !well_formed_id(id, *prefix) {
                violations.push(Violation::new(
                    ViolationCode::BadAttr,
                    *id,
                    format!("{label} id must be `{prefix}` followed by digits"),
                ));
            }
            if !seen.insert(*id) {
                violations.push(Violation::new(
                    ViolationCode::DupId,
                    *id,
                    format!("duplicate {label} id"),
                ));
            }
        }
    }

    // Span sanity and pairwise disjointness of inline elements.
    let mut spans: Vec<(&str, Span)> = Vec::new();
    spans.extend(doc.timex3s.iter().map(|t| (t.tid.as_str(), t.span)));
    spans.extend(doc.events.iter().map(|e| (e.eid.as_str(), e.span)));
    spans.extend(doc.signals.iter().map(|s| (s.sid.as_str(), s.span)));
    for (id, span) in &spans {
        if span.start > span.end || span.end > text_len {
            violations.push(Violation::new(
                ViolationCode::SpanOverlap,
                *id,
                format!("span {span} outside text of length {text_len}"),
            ));
        }
    }
    let mut ordered = spans.clone();
    ordered.sort_by_key(|(_, s)| (s.start, s.end));
    for pair in ordered.windows(2) {
        let (a_id, a) = pair[0];
        let (b_id, b) = pair[1];
        if a.overlaps(&b) {
            violations.push(Violation::new(
                ViolationCode::SpanOverlap,
                b_id,
                format!("span {b} overlaps {a} of {a_id}"),
            ));
        }
    }

    // Reference resolution.
    let tids: BTreeSet<&str> = doc.timex3s.iter().map(|t| t.tid.as_str()).collect();
    let eids: BTreeSet<&str> = doc.events.iter().map(|e| e.eid.as_str()).collect();
    let sids: BTreeSet<&str> = doc.signals.iter().map(|s| s.sid.as_str()).collect();
    for t3 in &doc.timex3s {
        if let Some(anchor) = &t3.anchor_time_id {
            if !tids.contains(anchor.as_str()) {
                violations.push(Violation::new(
                    ViolationCode::DanglingRef,
                    anchor.as_str(),
                    format!("anchorTimeID of {} resolves to nothing", t3.tid),
                ));
            }
        }
        if t3.value.is_empty() {
            violations.push(Violation::new(
                ViolationCode::EmptyValue,
                t3.tid.as_str(),
                "TIMEX3 value is empty",
            ));
        }
    }
    for link in &doc.tlinks {
        let sources = usize::from(link.time_id.is_some()) + usize::from(link.event_id.is_some());
        let targets = usize::from(link.related_to_time.is_some())
            + usize::from(link.related_event_id.is_some());
        if sources != 1 || targets != 1 {
            violations.push(Violation::new(
                ViolationCode::BadAttr,
                link.lid.as_str(),
                "TLINK needs exactly one source and one target",
            ));
        }
        let refs: [(&Option<String>, &BTreeSet<&str>, &str); 5] = [
            (&link.time_id, &tids, "timeID"),
            (&link.event_id, &eids, "eventID"),
            (&link.related_to_time, &tids, "relatedToTime"),
            (&link.related_event_id, &eids, "relatedEventID"),
            (&link.signal_id, &sids, "signalID"),
        ];
        for (value, known, attr) in refs {
            if let Some(id) = value {
                if !known.contains(id.as_str()) {
                    violations.push(Violation::new(
                        ViolationCode::DanglingRef,
                        id.as_str(),
                        format!("{attr} of {} resolves to nothing", link.lid),
                    ));
                }
            }
        }
    }

    violations
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{
        Event, EventClass, FunctionInDocument, Signal, TLink, Timex3, TimexType,
    };
    use alloc::vec;

    fn valid_doc() -> TimeMlDocument {
        let mut doc = TimeMlDocument::new("The Tuesday after the party", "d1");
        doc.timex3s.push(Timex3 {
            tid: "t1".into(),
            span: Span::new(4, 11),
            ttype: TimexType::Date,
            value: "2012-03-20".into(),
            modifier: None,
            temporal_function: false,
            function_in_document: FunctionInDocument::None,
            anchor_time_id: None,
        });
        doc.signals.push(Signal {
            sid: "s1".into(),
            span: Span::new(12, 17),
        });
        doc.events.push(Event {
            eid: "e1".into(),
            span: Span::new(22, 27),
            class: EventClass::Occurrence,
            stem: None,
        });
        doc.tlinks.push(TLink {
            lid: "l1".into(),
            time_id: Some("t1".into()),
            related_event_id: Some("e1".into()),
            rel_type: Some(crate::model::RelType::After),
            signal_id: Some("s1".into()),
            ..TLink::default()
        });
        doc
    }

    #[test]
    fn valid_document_has_no_violations() {
        assert_eq!(validate(&valid_doc()), vec![]);
    }

    #[test]
    fn dangling_reference_is_reported() {
        let mut doc = valid_doc();
        doc.tlinks[0].time_id = Some("t99".into());
        let violations = validate(&doc);
        assert!(violations
            .iter()
            .any(|v| v.code == ViolationCode::DanglingRef && v.element_id == "t99"));
    }

    #[test]
    fn duplicate_id_is_reported() {
        let mut doc = valid_doc();
        let mut dup = doc.timex3s[0].clone();
        dup.span = Span::new(0, 3);
        doc.timex3s.push(dup);
        let violations = validate(&doc);
        assert!(violations
            .iter()
            .any(|v| v.code == ViolationCode::DupId && v.element_id == "t1"));
    }

    #[test]
    fn overlap_and_bounds_are_reported() {
        let mut doc = valid_doc();
        doc.events[0].span = Span::new(10, 15); // overlaps t1 and s1
        assert!(validate(&doc).iter().any(|v| v.code == ViolationCode::SpanOverlap));

        let mut doc = valid_doc();
        doc.events[0].span = Span::new(22, 4000);
        assert!(validate(&doc).iter().any(|v| v.code == ViolationCode::SpanOverlap));
    }

    #[test]
    fn bad_prefix_and_arity_are_bad_attrs() {
        let mut doc = valid_doc();
        doc.timex3s[0].tid = "x1".into();
        assert!(validate(&doc).iter().any(|v| v.code == ViolationCode::BadAttr));

        let mut doc = valid_doc();
        doc.tlinks[0].event_id = Some("e1".into()); // two sources
        assert!(validate(&doc).iter().any(|v| v.code == ViolationCode::BadAttr));
    }

    #[test]
    fn empty_value_is_reported() {
        let mut doc = valid_doc();
        doc.timex3s[0].value = String::new();
        assert!(validate(&doc).iter().any(|v| v.code == ViolationCode::EmptyValue));
    }

    #[test]
    fn tsv_line_shape() {
        let v = Violation::new(ViolationCode::DanglingRef, "t99", "nope");
        assert_eq!(v.tsv_line(), "DANGLING_REF\tt99\tnope");
    }
}
