//! End-to-end conversion: raw bytes → ingest → transduce → serialize →
//! re-parse → validate, over the worked examples the module tests cover
//! individually.

use chronotag_core::ingest::{merge_standoff, normalize_encoding, parse_inline, parse_standoff_records};
use chronotag_core::lexicon::SignalLexicon;
use chronotag_core::model::{FunctionInDocument, RelType, TimexType};
use chronotag_core::tag::TagCache;
use chronotag_core::timeml::{parse_timeml, serialize};
use chronotag_core::transduce::{convert_document, ConversionConfig};
use chronotag_core::validate::validate;

fn pipeline(markup: &str) -> chronotag_core::model::TimeMlDocument {
    let doc = parse_inline(markup).unwrap();
    let cfg = ConversionConfig::default();
    let lexicon = SignalLexicon::default();
    let mut cache = TagCache::new();
    let (out, _report) = convert_document(&doc, &cfg, &lexicon, &mut cache);
    assert_eq!(validate(&out), vec![]);
    let xml = serialize(&out).unwrap();
    let back = parse_timeml(&xml).unwrap();
    assert_eq!(back.text, out.text);
    assert_eq!(back.timex3s, out.timex3s);
    assert_eq!(back.events, out.events);
    assert_eq!(back.signals, out.signals);
    assert_eq!(back.tlinks, out.tlinks);
    out
}

#[test]
fn draining_evening_maps_to_single_timex() {
    let out = pipeline(
        "The Yankees had just finished <TIMEX2 val=\"1998-10-02TEV\">a draining evening</TIMEX2> with a 4-0 decision over the Rangers",
    );
    assert_eq!(out.timex3s.len(), 1);
    assert_eq!(out.timex3s[0].ttype, TimexType::Time);
    assert_eq!(out.timex3s[0].value, "1998-10-02TEV");
    assert!(out.events.is_empty());
    assert!(out.signals.is_empty());
    assert!(out.tlinks.is_empty());
}

#[test]
fn nested_week_unpacks_to_three_timexes_and_two_links() {
    let out = pipeline(
        "before <TIMEX2 VAL=\"1999-W23\">the week of <TIMEX2 VAL=\"1999-06-07\">the seventh</TIMEX2> until <TIMEX2 VAL=\"1999-06-11\">the eleventh</TIMEX2> </TIMEX2>",
    );
    assert_eq!(out.timex3s.len(), 3);
    assert_eq!(out.signals.len(), 2);
    assert_eq!(out.tlinks.len(), 2);
    let week = out.timex3s.iter().find(|t| t.value == "1999-W23").unwrap();
    assert_eq!(week.span.slice_of(&out.text), "the week");
    assert!(out
        .tlinks
        .iter()
        .all(|l| l.rel_type == Some(RelType::IsIncluded)
            && l.related_to_time.as_deref() == Some(week.tid.as_str())));
}

#[test]
fn signalled_expansion_produces_full_element_set() {
    let out = pipeline("<TIMEX2 VAL=\"2012-03-20\">The Tuesday after the party</TIMEX2>");
    assert_eq!(
        (out.timex3s.len(), out.signals.len(), out.events.len(), out.tlinks.len()),
        (1, 1, 1, 1)
    );
    assert_eq!(out.timex3s[0].span.slice_of(&out.text), "Tuesday");
    assert_eq!(out.tlinks[0].rel_type, Some(RelType::After));
}

#[test]
fn standoff_bytes_to_timeml() {
    // The ACE-style flow: bytes in, records merged over the source text,
    // DCT supplied out of band, anchors resolved against the dateline.
    let source_bytes = b"NEWS DESK \xE2\x80\x94 expect results over the next month or so, officials said.";
    let source = normalize_encoding(source_bytes, None).unwrap();
    assert!(source.starts_with("NEWS DESK \u{2014}"));

    let standoff = r#"<source_file>
<timex2 ID="D1-T1" VAL="FUTURE_REF" ANCHOR_VAL="2005-02-23T10:49:00" ANCHOR_DIR="AFTER">
  <timex2_mention ID="D1-T1-1"><extent><charseq START="32" END="51">the next month or so</charseq></extent></timex2_mention>
</timex2>
</source_file>"#;
    let records = parse_standoff_records(standoff).unwrap();
    let mut doc = merge_standoff(&source, &records).unwrap();
    doc.doc_id = "D1".into();
    doc.dct = Some("2005-02-23T10:49:00".into());
    assert_eq!(doc.timexes()[0].span.slice_of(&doc.text), "the next month or so");

    let cfg = ConversionConfig::default();
    let lexicon = SignalLexicon::default();
    let mut cache = TagCache::new();
    let (out, report) = convert_document(&doc, &cfg, &lexicon, &mut cache);
    assert_eq!(out.timex3s.len(), 1);
    let t3 = &out.timex3s[0];
    assert_eq!(t3.value, "FUTURE_REF");
    assert_eq!(t3.ttype, TimexType::Date);
    assert!(t3.temporal_function);
    assert_eq!(t3.function_in_document, FunctionInDocument::None);
    // No dateline timex exists in standoff bodies, so the anchor stays
    // unresolved and is dropped, with a warning accounting for it.
    assert_eq!(t3.anchor_time_id, None);
    assert!(report
        .warnings
        .iter()
        .any(|w| w.kind == chronotag_core::transduce::WarningKind::UnresolvedAnchor));
    assert_eq!(validate(&out), vec![]);
}

#[test]
fn trimmed_long_annotation_round_trips() {
    let out = pipeline(
        "delivered <TIMEX2 VAL=\"P20D\">twenty days later than the termination notice's delivery</TIMEX2> at the latest",
    );
    assert_eq!(out.timex3s.len(), 1);
    assert_eq!(out.timex3s[0].span.slice_of(&out.text), "twenty days later");
}

#[test]
fn mixed_document_converts_every_annotation() {
    let out = pipeline(concat!(
        "<DOC><DATE_TIME><TIMEX2 VAL=\"1998-10-02\">10/02/1998</TIMEX2></DATE_TIME><TEXT>",
        "Games happened <TIMEX2 VAL=\"1998-10-02TEV\">a draining evening</TIMEX2> ago; ",
        "results due <TIMEX2 VAL=\"P90D\">90 days after their issue date</TIMEX2>, ",
        "during <TIMEX2 VAL=\"1999-W23\">the week of <TIMEX2 VAL=\"1999-06-07\">the seventh</TIMEX2> </TIMEX2>.",
        "</TEXT></DOC>"
    ));
    // 1 dateline + 1 simple + 1 signalled + 2 nested = 5 TIMEX3.
    assert_eq!(out.timex3s.len(), 5);
    assert_eq!(out.timex3s[0].function_in_document, FunctionInDocument::CreationTime);
    assert_eq!(out.events.len(), 1);
    assert_eq!(out.signals.len(), 2); // "after" + "of"
    assert_eq!(out.tlinks.len(), 2);
}
