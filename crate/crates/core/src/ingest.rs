//! Preprocessing of source corpora into [`Document`]s.
//!
//! Two source shapes exist: plain text with inline `<TIMEX2>` tags (TERN,
//! WikiWars, TIDES dialogue), and raw text paired with standoff annotation
//! files addressing it by character offsets (ACE). Both reduce to the same
//! model: meta-information and non-TIMEX2 tags are stripped, standoff
//! mentions are merged in as inline elements, and the bytes are normalized
//! to Unicode with unrecognised entities removed.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::markup::{scan_tag, Tag, TagKind};
use crate::model::{AnchorDir, Document, ModelError, Span, Timex2};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IngestError {
    EmptyInput,
    /// Crossing or unclosed TIMEX2 markup; `offset` is a character offset
    /// into the raw input.
    MalformedMarkup { offset: usize, message: String },
    /// Two standoff mentions overlap without either containing the other.
    SpanConflict { first: Span, second: Span },
    InvalidSpan { span: Span, len: usize },
}

impl fmt::Display for IngestError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IngestError::EmptyInput => write!(f, "empty input"),
            IngestError::MalformedMarkup { offset, message } => {
                write!(f, "malformed markup at offset {offset}: {message}")
            }
            IngestError::SpanConflict { first, second } => {
                write!(f, "mention spans {first} and {second} partially overlap")
            }
            IngestError::InvalidSpan { span, len } => {
                write!(f, "mention span {span} invalid for text of length {len}")
            }
        }
    }
}

impl From<ModelError> for IngestError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::SpanOutOfBounds { span, len } => IngestError::InvalidSpan { span, len },
            other => IngestError::MalformedMarkup {
                offset: 0,
                message: other.to_string(),
            },
        }
    }
}

// ---------------------------------------------------------------------------
// Encoding normalization
// ---------------------------------------------------------------------------

/// Decode `raw` to Unicode text and resolve character entities.
///
/// Detection ladder: the declared encoding first, then a BOM, then strict
/// UTF-8, then UTF-8 with isolated invalid bytes dropped (when under 10% of
/// the stream), and Latin-1 as the last resort. Recognized entities are
/// resolved; unrecognized ones are removed.
pub fn normalize_encoding(raw: &[u8], declared: Option<&str>) -> Result<String, IngestError> {
    if raw.is_empty() {
        return Err(IngestError::EmptyInput);
    }
    let decoded = decode_bytes(raw, declared);
    Ok(resolve_entities(&decoded))
}

fn decode_bytes(raw: &[u8], declared: Option<&str>) -> String {
    if let Some(name) = declared {
        if let Some(text) = decode_declared(raw, name) {
            return text;
        }
    }
    if let Some(rest) = strip_prefix_bytes(raw, &[0xEF, 0xBB, 0xBF]) {
        return utf8_dropping(rest).0;
    }
    if let Some(rest) = strip_prefix_bytes(raw, &[0xFE, 0xFF]) {
        return decode_utf16(rest, true);
    }
    if let Some(rest) = strip_prefix_bytes(raw, &[0xFF, 0xFE]) {
        return decode_utf16(rest, false);
    }
    if let Ok(text) = core::str::from_utf8(raw) {
        return text.to_string();
    }
    let (text, dropped) = utf8_dropping(raw);
    if dropped * 10 <= raw.len() {
        text
    } else {
        decode_latin1(raw)
    }
}

fn strip_prefix_bytes<'a>(raw: &'a [u8], prefix: &[u8]) -> Option<&'a [u8]> {
    raw.strip_prefix(prefix)
}

fn decode_declared(raw: &[u8], name: &str) -> Option<String> {
    let canon: String = name
        .chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .collect::<String>()
        .to_ascii_lowercase();
    match canon.as_str() {
        "utf8" => core::str::from_utf8(raw).ok().map(str::to_string),
        "utf16be" => Some(decode_utf16(
            strip_prefix_bytes(raw, &[0xFE, 0xFF]).unwrap_or(raw),
            true,
        )),
        "utf16le" => Some(decode_utf16(
            strip_prefix_bytes(raw, &[0xFF, 0xFE]).unwrap_or(raw),
            false,
        )),
        "utf16" => {
            if let Some(rest) = strip_prefix_bytes(raw, &[0xFE, 0xFF]) {
                Some(decode_utf16(rest, true))
            } else if let Some(rest) = strip_prefix_bytes(raw, &[0xFF, 0xFE]) {
                Some(decode_utf16(rest, false))
            } else {
                // No BOM: guess endianness from where the zero bytes sit.
                let even_zeros = raw.iter().step_by(2).filter(|b| **b == 0).count();
                let odd_zeros = raw.iter().skip(1).step_by(2).filter(|b| **b == 0).count();
                Some(decode_utf16(raw, even_zeros >= odd_zeros))
            }
        }
        "latin1" | "iso88591" | "l1" | "iso8859" => Some(decode_latin1(raw)),
        "windows1252" | "cp1252" => Some(decode_cp1252(raw)),
        "ascii" | "usascii" => {
            if raw.iter().all(|b| *b < 0x80) {
                core::str::from_utf8(raw).ok().map(str::to_string)
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Strict UTF-8 over the valid stretches, dropping bytes that decode in no
/// attempted sequence; returns the text and how many bytes were dropped.
fn utf8_dropping(raw: &[u8]) -> (String, usize) {
    let mut out = String::new();
    let mut dropped = 0usize;
    let mut rest = raw;
    loop {
        match core::str::from_utf8(rest) {
            Ok(tail) => {
                out.push_str(tail);
                break;
            }
            Err(e) => {
                let valid = e.valid_up_to();
                out.push_str(core::str::from_utf8(&rest[..valid]).unwrap());
                let skip = e.error_len().unwrap_or(rest.len() - valid);
                dropped += skip;
                rest = &rest[valid + skip..];
            }
        }
    }
    (out, dropped)
}

fn decode_utf16(raw: &[u8], big_endian: bool) -> String {
    let units = raw.chunks_exact(2).map(|pair| {
        if big_endian {
            u16::from_be_bytes([pair[0], pair[1]])
        } else {
            u16::from_le_bytes([pair[0], pair[1]])
        }
    });
    // Unpaired surrogates and any trailing odd byte are dropped.
    char::decode_utf16(units).filter_map(Result::ok).collect()
}

fn decode_latin1(raw: &[u8]) -> String {
    raw.iter().map(|b| *b as char).collect()
}

fn decode_cp1252(raw: &[u8]) -> String {
    raw.iter()
        .filter_map(|b| match *b {
            0x80 => Some('\u{20AC}'),
            0x82 => Some('\u{201A}'),
            0x83 => Some('\u{0192}'),
            0x84 => Some('\u{201E}'),
            0x85 => Some('\u{2026}'),
            0x86 => Some('\u{2020}'),
            0x87 => Some('\u{2021}'),
            0x88 => Some('\u{02C6}'),
            0x89 => Some('\u{2030}'),
            0x8A => Some('\u{0160}'),
            0x8B => Some('\u{2039}'),
            0x8C => Some('\u{0152}'),
            0x8E => Some('\u{017D}'),
            0x91 => Some('\u{2018}'),
            0x92 => Some('\u{2019}'),
            0x93 => Some('\u{201C}'),
            0x94 => Some('\u{201D}'),
            0x95 => Some('\u{2022}'),
            0x96 => Some('\u{2013}'),
            0x97 => Some('\u{2014}'),
            0x98 => Some('\u{02DC}'),
            0x99 => Some('\u{2122}'),
            0x9A => Some('\u{0161}'),
            0x9B => Some('\u{203A}'),
            0x9C => Some('\u{0153}'),
            0x9E => Some('\u{017E}'),
            0x9F => Some('\u{0178}'),
            0x81 | 0x8D | 0x8F | 0x90 | 0x9D => None,
            other => Some(other as char),
        })
        .collect()
}

/// Resolve recognized character entities, drop unrecognized ones, and keep
/// bare ampersands as literal text.
pub fn resolve_entities(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while let Some(pos) = rest.find('&') {
        out.push_str(&rest[..pos]);
        let tail = &rest[pos..];
        match parse_entity(tail) {
            Some((replacement, consumed)) => {
                if let Some(c) = replacement {
                    out.push(c);
                }
                rest = &tail[consumed..];
            }
            None => {
                out.push('&');
                rest = &tail[1..];
            }
        }
    }
    out.push_str(rest);
    out
}

/// `Some((char-or-drop, bytes))` when `input` (starting with `&`) is an
/// entity; the char is `None` for well-formed but unrecognized names.
fn parse_entity(input: &str) -> Option<(Option<char>, usize)> {
    let body_end = input[1..].find(';')?;
    if body_end == 0 || body_end > 10 {
        return None;
    }
    let body = &input[1..1 + body_end];
    let consumed = body_end + 2;
    if let Some(num) = body.strip_prefix('#') {
        let code = if let Some(hex) = num.strip_prefix(['x', 'X']) {
            u32::from_str_radix(hex, 16).ok()
        } else {
            num.parse::<u32>().ok()
        };
        // Out-of-range references count as unrecognized and are removed.
        return Some((code.and_then(char::from_u32), consumed));
    }
    if !body.chars().all(|c| c.is_ascii_alphanumeric()) {
        return None;
    }
    let known = match body {
        "amp" => Some('&'),
        "lt" => Some('<'),
        "gt" => Some('>'),
        "quot" => Some('"'),
        "apos" => Some('\''),
        "nbsp" => Some('\u{00A0}'),
        _ => None,
    };
    Some((known, consumed))
}

// ---------------------------------------------------------------------------
// Inline TIMEX2 parsing
// ---------------------------------------------------------------------------

/// Accumulates Timex2 attributes from lenient tag attributes.
fn timex2_from_attrs(attrs: &[(String, String)]) -> Timex2 {
    let mut t2 = Timex2::default();
    for (name, value) in attrs {
        match name.to_ascii_uppercase().as_str() {
            "VAL" => t2.val = value.clone(),
            "SET" => {
                t2.set = value.eq_ignore_ascii_case("yes") || value.eq_ignore_ascii_case("true")
            }
            "MOD" => t2.modifier = Some(value.clone()),
            "ANCHOR_VAL" => t2.anchor_val = Some(value.clone()),
            "ANCHOR_DIR" => match AnchorDir::parse(value) {
                Some(dir) => t2.anchor_dir = Some(dir),
                None => t2.extra.push((name.clone(), value.clone())),
            },
            "ID" => t2.source_id = Some(value.clone()),
            _ => t2.extra.push((name.clone(), value.clone())),
        }
    }
    t2
}

/// Tag names whose content marks the document creation time in legacy
/// corpora; a TIMEX2 opened inside one provides the document's DCT.
const DCT_CONTEXTS: &[&str] = &[
    "DATE", "DATE_TIME", "DATETIME", "DATELINE", "DOCDATE", "DCT", "DOCTIME", "STORY_REF_TIME",
];

struct OpenTimex {
    t2: Timex2,
    start_out: usize,
    open_offset: usize,
    in_dct_context: bool,
    children: Vec<Timex2>,
}

/// Parse inline-annotated text: all tags are removed from the text, the
/// TIMEX2 forest mirrors tag nesting, and every other tag is stripped and
/// ignored. Spans index the stripped text in Unicode scalar offsets.
pub fn parse_inline(text: &str) -> Result<Document, IngestError> {
    let mut out = String::with_capacity(text.len());
    let mut out_len = 0usize; // chars
    let mut in_offset = 0usize; // chars, for error reporting
    let mut byte_pos = 0usize;

    let mut stack: Vec<OpenTimex> = Vec::new();
    let mut roots: Vec<Timex2> = Vec::new();
    let mut tag_stack: Vec<String> = Vec::new();
    let mut dct: Option<String> = None;

    while byte_pos < text.len() {
        let c = text[byte_pos..].chars().next().unwrap();
        if c == '<' {
            if let Some(tag) = scan_tag(&text[byte_pos..]) {
                let tag_chars = text[byte_pos..byte_pos + tag.len_bytes].chars().count();
                handle_tag(
                    &tag,
                    in_offset,
                    out_len,
                    &mut stack,
                    &mut roots,
                    &mut tag_stack,
                    &mut dct,
                )?;
                byte_pos += tag.len_bytes;
                in_offset += tag_chars;
                continue;
            }
        }
        out.push(c);
        out_len += 1;
        byte_pos += c.len_utf8();
        in_offset += 1;
    }

    if let Some(frame) = stack.last() {
        return Err(IngestError::MalformedMarkup {
            offset: frame.open_offset,
            message: "unclosed TIMEX2".to_string(),
        });
    }

    Ok(Document::new(out, roots, "", dct)?)
}

fn handle_tag(
    tag: &Tag,
    in_offset: usize,
    out_len: usize,
    stack: &mut Vec<OpenTimex>,
    roots: &mut Vec<Timex2>,
    tag_stack: &mut Vec<String>,
    dct: &mut Option<String>,
) -> Result<(), IngestError> {
    if tag.kind == TagKind::Markup {
        return Ok(());
    }
    let name = tag.name.to_ascii_uppercase();
    if name == "TIMEX2" {
        match tag.kind {
            TagKind::Open => {
                let t2 = timex2_from_attrs(&tag.attrs);
                stack.push(OpenTimex {
                    t2,
                    start_out: out_len,
                    open_offset: in_offset,
                    in_dct_context: tag_stack.iter().any(|n| DCT_CONTEXTS.contains(&n.as_str())),
                    children: Vec::new(),
                });
            }
            TagKind::SelfClose => {
                let mut t2 = timex2_from_attrs(&tag.attrs);
                t2.span = Span::new(out_len, out_len);
                attach_timex(t2, stack, roots);
            }
            TagKind::Close => {
                let frame = stack.pop().ok_or_else(|| IngestError::MalformedMarkup {
                    offset: in_offset,
                    message: "closing TIMEX2 without a matching open tag".to_string(),
                })?;
                let mut t2 = frame.t2;
                t2.span = Span::new(frame.start_out, out_len);
                t2.children = frame.children;
                if t2.children.iter().any(|c| c.span == t2.span) {
                    return Err(IngestError::MalformedMarkup {
                        offset: frame.open_offset,
                        message: "nested TIMEX2 with identical extent".to_string(),
                    });
                }
                if frame.in_dct_context && dct.is_none() && !t2.val.is_empty() {
                    *dct = Some(t2.val.clone());
                }
                attach_timex(t2, stack, roots);
            }
            TagKind::Markup => unreachable!(),
        }
    } else {
        match tag.kind {
            TagKind::Open => tag_stack.push(name),
            TagKind::Close => {
                // Legacy SGML leaves elements unclosed; pop through a match
                // if one exists, otherwise ignore the stray close.
                if let Some(pos) = tag_stack.iter().rposition(|n| *n == name) {
                    tag_stack.truncate(pos);
                }
            }
            TagKind::SelfClose | TagKind::Markup => {}
        }
    }
    Ok(())
}

fn attach_timex(t2: Timex2, stack: &mut [OpenTimex], roots: &mut Vec<Timex2>) {
    if let Some(parent) = stack.last_mut() {
        parent.children.push(t2);
    } else {
        roots.push(t2);
    }
}

// ---------------------------------------------------------------------------
// Standoff annotations
// ---------------------------------------------------------------------------

/// One standoff annotation record: shared attributes plus the mention spans
/// it covers in the paired source text.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct StandoffRecord {
    pub record_id: String,
    pub val: String,
    pub set: bool,
    pub modifier: Option<String>,
    pub anchor_val: Option<String>,
    pub anchor_dir: Option<AnchorDir>,
    pub extra: Vec<(String, String)>,
    pub mentions: Vec<Span>,
}

impl StandoffRecord {
    fn to_timex2(&self, span: Span) -> Timex2 {
        Timex2 {
            span,
            val: self.val.clone(),
            set: self.set,
            modifier: self.modifier.clone(),
            anchor_val: self.anchor_val.clone(),
            anchor_dir: self.anchor_dir,
            children: Vec::new(),
            source_id: if self.record_id.is_empty() {
                None
            } else {
                Some(self.record_id.clone())
            },
            extra: self.extra.clone(),
        }
    }
}

/// Parse an ACE-style standoff annotation file: `timex2` elements holding
/// `timex2_mention`/`extent`/`charseq` descendants. `charseq` END offsets
/// are inclusive in the source format and converted to exclusive here.
pub fn parse_standoff_records(xml: &str) -> Result<Vec<StandoffRecord>, IngestError> {
    let mut records: Vec<StandoffRecord> = Vec::new();
    let mut in_record = false;
    let mut byte_pos = 0usize;
    let mut in_offset = 0usize;

    while byte_pos < xml.len() {
        let c = xml[byte_pos..].chars().next().unwrap();
        if c != '<' {
            byte_pos += c.len_utf8();
            in_offset += 1;
            continue;
        }
        let Some(tag) = scan_tag(&xml[byte_pos..]) else {
            byte_pos += 1;
            in_offset += 1;
            continue;
        };
        let tag_chars = xml[byte_pos..byte_pos + tag.len_bytes].chars().count();
        let name = tag.name.to_ascii_uppercase();
        match (name.as_str(), tag.kind) {
            ("TIMEX2", TagKind::Open) => {
                let t2 = timex2_from_attrs(&tag.attrs);
                records.push(StandoffRecord {
                    record_id: t2.source_id.unwrap_or_default(),
                    val: t2.val,
                    set: t2.set,
                    modifier: t2.modifier,
                    anchor_val: t2.anchor_val,
                    anchor_dir: t2.anchor_dir,
                    extra: t2.extra,
                    mentions: Vec::new(),
                });
                in_record = true;
            }
            ("TIMEX2", TagKind::Close) => in_record = false,
            ("CHARSEQ", TagKind::Open | TagKind::SelfClose) => {
                if !in_record {
                    return Err(IngestError::MalformedMarkup {
                        offset: in_offset,
                        message: "charseq outside a timex2 record".to_string(),
                    });
                }
                let mut start: Option<usize> = None;
                let mut end: Option<usize> = None;
                for (aname, value) in &tag.attrs {
                    match aname.to_ascii_uppercase().as_str() {
                        "START" => start = value.parse().ok(),
                        "END" => end = value.parse().ok(),
                        _ => {}
                    }
                }
                let span = match (start, end) {
                    (Some(s), Some(e)) => e.checked_add(1).filter(|end| s <= *end).map(|end| Span::new(s, end)),
                    _ => None,
                };
                match span {
                    Some(span) => records
                        .last_mut()
                        .expect("in_record implies a record")
                        .mentions
                        .push(span),
                    None => {
                        return Err(IngestError::MalformedMarkup {
                            offset: in_offset,
                            message: "charseq without usable START/END".to_string(),
                        })
                    }
                }
            }
            _ => {}
        }
        byte_pos += tag.len_bytes;
        in_offset += tag_chars;
    }
    Ok(records)
}

/// Merge standoff records into a [`Document`] over `source`: one Timex2 per
/// mention, carrying the owning record's attributes. Mentions nest when one
/// contains the other and conflict otherwise.
pub fn merge_standoff(source: &str, records: &[StandoffRecord]) -> Result<Document, IngestError> {
    let len = source.chars().count();
    let mut items: Vec<(Span, &StandoffRecord)> = Vec::new();
    for record in records {
        for span in &record.mentions {
            if span.start > span.end || span.end > len {
                return Err(IngestError::InvalidSpan { span: *span, len });
            }
            items.push((*span, record));
        }
    }
    items.sort_by_key(|a| (a.0.start, core::cmp::Reverse(a.0.end)));

    let mut roots: Vec<Timex2> = Vec::new();
    let mut stack: Vec<Timex2> = Vec::new();
    for (span, record) in items {
        while let Some(top) = stack.last() {
            if top.span.end <= span.start {
                let done = stack.pop().unwrap();
                attach_merged(done, &mut stack, &mut roots);
            } else {
                break;
            }
        }
        if let Some(top) = stack.last() {
            if !top.span.strictly_contains(&span) {
                return Err(IngestError::SpanConflict {
                    first: top.span,
                    second: span,
                });
            }
        }
        stack.push(record.to_timex2(span));
    }
    while let Some(done) = stack.pop() {
        attach_merged(done, &mut stack, &mut roots);
    }

    Ok(Document::new(source, roots, "", None)?)
}

fn attach_merged(node: Timex2, stack: &mut [Timex2], roots: &mut Vec<Timex2>) {
    if let Some(parent) = stack.last_mut() {
        parent.children.push(node);
    } else {
        roots.push(node);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    // --- encoding ---------------------------------------------------------

    #[test]
    fn clean_utf8_is_identity() {
        assert_eq!(normalize_encoding(b"tomorrow", None).unwrap(), "tomorrow");
    }

    #[test]
    fn declared_latin1_round_trips() {
        // Latin-1 of "März": 0xE4 maps to U+00E4 in the reference table.
        let raw = [b'M', 0xE4, b'r', b'z'];
        assert_eq!(normalize_encoding(&raw, Some("latin-1")).unwrap(), "März");
        assert_eq!(normalize_encoding(&raw, Some("ISO-8859-1")).unwrap(), "März");
    }

    #[test]
    fn stray_byte_in_utf8_is_dropped() {
        // Reference filter-invalid-sequences decode: everything around the
        // lone 0x80 continuation byte is valid UTF-8 and survives.
        let mut raw = b"a quiet evening".to_vec();
        raw.push(0x80);
        raw.extend_from_slice(b" at home");
        assert_eq!(
            normalize_encoding(&raw, None).unwrap(),
            "a quiet evening at home"
        );
    }

    #[test]
    fn mostly_invalid_stream_falls_back_to_latin1() {
        let raw = [b'M', 0xE4, b'r', b'z'];
        assert_eq!(normalize_encoding(&raw, None).unwrap(), "März");
    }

    #[test]
    fn empty_input_is_an_error() {
        assert_eq!(normalize_encoding(b"", None).unwrap_err(), IngestError::EmptyInput);
    }

    #[test]
    fn utf16_boms_decode() {
        let be = [0xFE, 0xFF, 0x00, b'h', 0x00, b'i'];
        assert_eq!(normalize_encoding(&be, None).unwrap(), "hi");
        let le = [0xFF, 0xFE, b'h', 0x00, b'i', 0x00];
        assert_eq!(normalize_encoding(&le, None).unwrap(), "hi");
    }

    #[test]
    fn entities_resolve_or_vanish() {
        assert_eq!(normalize_encoding(b"a &amp; b", None).unwrap(), "a & b");
        assert_eq!(normalize_encoding(b"caf&#233;", None).unwrap(), "café");
        assert_eq!(normalize_encoding(b"caf&eacute;!", None).unwrap(), "caf!");
        assert_eq!(normalize_encoding(b"AT&T stock", None).unwrap(), "AT&T stock");
    }

    // --- inline parsing ----------------------------------------------------

    #[test]
    fn single_annotation_parses() {
        let doc = parse_inline(
            "The Yankees had just finished <TIMEX2 val=\"1998-10-02TEV\">a draining evening</TIMEX2> with a 4-0 decision",
        )
        .unwrap();
        assert_eq!(doc.timexes().len(), 1);
        let t2 = &doc.timexes()[0];
        assert_eq!(t2.val, "1998-10-02TEV");
        assert_eq!(t2.span.slice_of(&doc.text), "a draining evening");
        assert!(!doc.text.contains('<'));
    }

    #[test]
    fn nested_annotations_mirror_tag_structure() {
        let doc = parse_inline(
            "before <TIMEX2 VAL=\"1999-W23\">the week of <TIMEX2 VAL=\"1999-06-07\">the seventh</TIMEX2> until <TIMEX2 VAL=\"1999-06-11\">the eleventh</TIMEX2> </TIMEX2>",
        )
        .unwrap();
        assert_eq!(doc.timexes().len(), 1);
        let outer = &doc.timexes()[0];
        assert_eq!(outer.val, "1999-W23");
        assert_eq!(outer.children.len(), 2);
        assert_eq!(outer.children[0].val, "1999-06-07");
        assert_eq!(outer.children[0].span.slice_of(&doc.text), "the seventh");
        assert_eq!(outer.children[1].val, "1999-06-11");
        assert_eq!(outer.children[1].span.slice_of(&doc.text), "the eleventh");
    }

    #[test]
    fn untagged_text_passes_through() {
        let doc = parse_inline("no annotations here").unwrap();
        assert!(doc.timexes().is_empty());
        assert_eq!(doc.text, "no annotations here");
    }

    #[test]
    fn meta_tags_are_stripped() {
        let doc = parse_inline("<DOC><BODY>plain <B>bold</B> text</BODY></DOC>").unwrap();
        assert_eq!(doc.text, "plain bold text");
        assert!(doc.timexes().is_empty());
    }

    #[test]
    fn unclosed_timex2_reports_offset() {
        let err = parse_inline("abc <TIMEX2 VAL=\"1999\">def").unwrap_err();
        match err {
            IngestError::MalformedMarkup { offset, .. } => assert_eq!(offset, 4),
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn stray_close_reports_offset() {
        let err = parse_inline("abc</TIMEX2>").unwrap_err();
        assert!(matches!(err, IngestError::MalformedMarkup { offset: 3, .. }));
    }

    #[test]
    fn lenient_attribute_forms_parse() {
        let doc = parse_inline("<timex2 val='1999' set=YES>next summer</timex2>").unwrap();
        let t2 = &doc.timexes()[0];
        assert_eq!(t2.val, "1999");
        assert!(t2.set);
    }

    #[test]
    fn literal_less_than_is_text() {
        let doc = parse_inline("3 < 4 and <TIMEX2 VAL=\"2000\">2000</TIMEX2>").unwrap();
        assert_eq!(doc.text, "3 < 4 and 2000");
        assert_eq!(doc.timexes().len(), 1);
    }

    #[test]
    fn dateline_timex_provides_dct() {
        let doc = parse_inline(
            "<DOC><DATE_TIME><TIMEX2 VAL=\"2005-02-23T10:49:00\">2005-02-23 10:49</TIMEX2></DATE_TIME><TEXT>body <TIMEX2 VAL=\"2005-03\">next month</TIMEX2></TEXT></DOC>",
        )
        .unwrap();
        assert_eq!(doc.dct.as_deref(), Some("2005-02-23T10:49:00"));
    }

    #[test]
    fn unknown_attrs_are_preserved_not_lost() {
        let doc = parse_inline("<TIMEX2 VAL=\"1999\" COMMENT=\"check\">then</TIMEX2>").unwrap();
        assert_eq!(
            doc.timexes()[0].extra,
            vec![("COMMENT".to_string(), "check".to_string())]
        );
    }

    // --- standoff ----------------------------------------------------------

    fn record(val: &str, mentions: Vec<Span>) -> StandoffRecord {
        StandoffRecord {
            record_id: "T1".into(),
            val: val.into(),
            mentions,
            ..StandoffRecord::default()
        }
    }

    #[test]
    fn standoff_file_parses_ace_shape() {
        let xml = r#"<source_file><document DOCID="d">
<timex2 ID="TTRACY_20050223.1049-T1" VAL="FUTURE_REF" ANCHOR_VAL="2005-02-23T10:49:00" ANCHOR_DIR="AFTER">
  <timex2_mention ID="TTRACY_20050223.1049-T1-1">
    <extent>
      <charseq START="10" END="29">the next month or so</charseq>
    </extent>
  </timex2_mention>
</timex2>
</document></source_file>"#;
        let records = parse_standoff_records(xml).unwrap();
        assert_eq!(records.len(), 1);
        let r = &records[0];
        assert_eq!(r.val, "FUTURE_REF");
        assert_eq!(r.anchor_val.as_deref(), Some("2005-02-23T10:49:00"));
        assert_eq!(r.anchor_dir, Some(AnchorDir::After));
        // Inclusive END=29 becomes exclusive 30.
        assert_eq!(r.mentions, vec![Span::new(10, 30)]);
    }

    #[test]
    fn merge_carries_record_attributes() {
        let source = "plan over the next month or so maybe";
        let mut r = record("FUTURE_REF", vec![Span::new(10, 30)]);
        r.anchor_val = Some("2005-02-23T10:49:00".into());
        r.anchor_dir = Some(AnchorDir::After);
        let doc = merge_standoff(source, &[r]).unwrap();
        assert_eq!(doc.timexes().len(), 1);
        let t2 = &doc.timexes()[0];
        assert_eq!(t2.span.slice_of(source), "the next month or so");
        assert_eq!(t2.val, "FUTURE_REF");
        assert_eq!(t2.anchor_dir, Some(AnchorDir::After));
    }

    #[test]
    fn merge_of_nothing_is_empty() {
        let doc = merge_standoff("text", &[]).unwrap();
        assert!(doc.timexes().is_empty());
    }

    #[test]
    fn two_disjoint_mentions_become_siblings() {
        // Manual merge by definition: each mention is one Timex2 carrying
        // the record attributes; disjoint spans sit side by side.
        let source = "on Monday and on Tuesday";
        let doc = merge_standoff(
            source,
            &[record("1999-06-07", vec![Span::new(3, 9), Span::new(17, 24)])],
        )
        .unwrap();
        assert_eq!(doc.timexes().len(), 2);
        assert_eq!(doc.timexes()[0].val, "1999-06-07");
        assert_eq!(doc.timexes()[1].val, "1999-06-07");
        assert_eq!(doc.timexes()[0].span.slice_of(source), "Monday");
        assert_eq!(doc.timexes()[1].span.slice_of(source), "Tuesday");
    }

    #[test]
    fn containment_nests_conflict_errors() {
        let source = "the week of the seventh";
        let doc = merge_standoff(
            source,
            &[
                record("1999-W23", vec![Span::new(0, 23)]),
                record("1999-06-07", vec![Span::new(12, 23)]),
            ],
        )
        .unwrap();
        assert_eq!(doc.timexes().len(), 1);
        assert_eq!(doc.timexes()[0].children.len(), 1);

        let err = merge_standoff(
            source,
            &[record("1999-W23", vec![Span::new(0, 10), Span::new(5, 23)])],
        )
        .unwrap_err();
        assert!(matches!(err, IngestError::SpanConflict { .. }));
    }

    #[test]
    fn out_of_bounds_mention_is_rejected() {
        let err = merge_standoff("short", &[record("1999", vec![Span::new(0, 10)])]).unwrap_err();
        assert!(matches!(err, IngestError::InvalidSpan { .. }));
    }

    #[test]
    fn text_preservation_strips_exactly_the_tags() {
        let input = "a<B>b</B>c<TIMEX2 VAL=\"1999\">d</TIMEX2>e";
        let doc = parse_inline(input).unwrap();
        assert_eq!(doc.text, "abcde");
    }
}
