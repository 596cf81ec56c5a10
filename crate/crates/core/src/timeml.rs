//! TimeML serialization and parsing.
//!
//! Output is one canonical shape: an XML declaration, a `<TimeML>` root
//! wrapping the text with TIMEX3/EVENT/SIGNAL elements inline at their
//! spans, and TLINK empty elements on their own lines after the text.
//! Attribute order is fixed so converted corpora diff cleanly. The parser
//! is the serializer's inverse on that shape and additionally tolerates
//! (and drops) MAKEINSTANCE, SLINK and ALINK elements found in foreign
//! documents.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::markup::{scan_tag, Tag, TagKind};
use crate::model::{
    ElementClass, Event, EventClass, FunctionInDocument, RelType, Signal, Span, TLink,
    TimeMlDocument, Timex3, TimexType,
};
use crate::validate::{validate, Violation, ViolationCode};

pub const XML_HEADER: &str = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";

/// Serialization refuses documents that do not validate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerializeError {
    pub violations: Vec<Violation>,
}

impl fmt::Display for SerializeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "document has {} validation violation(s)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "; {v}")?;
        }
        Ok(())
    }
}

fn escape_text(out: &mut String, text: &str) {
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            other => out.push(other),
        }
    }
}

fn escape_attr(out: &mut String, value: &str) {
    for c in value.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            other => out.push(other),
        }
    }
}

fn push_attr(out: &mut String, name: &str, value: &str) {
    out.push(' ');
    out.push_str(name);
    out.push_str("=\"");
    escape_attr(out, value);
    out.push('"');
}

enum InlineKind<'a> {
    Timex3(&'a Timex3),
    Event(&'a Event),
    Signal(&'a Signal),
}

impl InlineKind<'_> {
    fn open_tag(&self) -> String {
        let mut s = String::new();
        match self {
            InlineKind::Timex3(t) => {
                s.push_str("<TIMEX3");
                push_attr(&mut s, "tid", &t.tid);
                push_attr(&mut s, "type", t.ttype.as_str());
                push_attr(&mut s, "value", &t.value);
                if let Some(m) = &t.modifier {
                    push_attr(&mut s, "mod", m);
                }
                push_attr(&mut s, "temporalFunction", if t.temporal_function { "true" } else { "false" });
                push_attr(&mut s, "functionInDocument", t.function_in_document.as_str());
                if let Some(a) = &t.anchor_time_id {
                    push_attr(&mut s, "anchorTimeID", a);
                }
            }
            InlineKind::Event(e) => {
                s.push_str("<EVENT");
                push_attr(&mut s, "eid", &e.eid);
                push_attr(&mut s, "class", e.class.as_str());
                if let Some(stem) = &e.stem {
                    push_attr(&mut s, "stem", stem);
                }
            }
            InlineKind::Signal(sig) => {
                s.push_str("<SIGNAL");
                push_attr(&mut s, "sid", &sig.sid);
            }
        }
        s.push('>');
        s
    }

    fn close_tag(&self) -> &'static str {
        match self {
            InlineKind::Timex3(_) => "</TIMEX3>",
            InlineKind::Event(_) => "</EVENT>",
            InlineKind::Signal(_) => "</SIGNAL>",
        }
    }

    fn span(&self) -> Span {
        match self {
            InlineKind::Timex3(t) => t.span,
            InlineKind::Event(e) => e.span,
            InlineKind::Signal(s) => s.span,
        }
    }
}

fn render_tlink(link: &TLink) -> String {
    let mut s = String::from("<TLINK");
    push_attr(&mut s, "lid", &link.lid);
    if let Some(v) = &link.time_id {
        push_attr(&mut s, "timeID", v);
    }
    if let Some(v) = &link.event_id {
        push_attr(&mut s, "eventID", v);
    }
    if let Some(v) = &link.rel_type {
        push_attr(&mut s, "relType", v.as_str());
    }
    if let Some(v) = &link.related_to_time {
        push_attr(&mut s, "relatedToTime", v);
    }
    if let Some(v) = &link.related_event_id {
        push_attr(&mut s, "relatedEventID", v);
    }
    if let Some(v) = &link.signal_id {
        push_attr(&mut s, "signalID", v);
    }
    s.push_str("/>");
    s
}

/// Serialize a validated document to TimeML. XML-escapes text and attribute
/// values; output encoding is UTF-8 with LF newlines.
pub fn serialize(doc: &TimeMlDocument) -> Result<String, SerializeError> {
    let violations = validate(doc);
    if !violations.is_empty() {
        return Err(SerializeError { violations });
    }

    // Byte index per char offset, for span slicing.
    let mut byte_at: Vec<usize> = Vec::with_capacity(doc.text.len() + 1);
    for (b, _) in doc.text.char_indices() {
        byte_at.push(b);
    }
    byte_at.push(doc.text.len());
    let slice = |a: usize, b: usize| &doc.text[byte_at[a]..byte_at[b]];

    let mut inline: Vec<InlineKind> = Vec::new();
    inline.extend(doc.timex3s.iter().map(InlineKind::Timex3));
    inline.extend(doc.events.iter().map(InlineKind::Event));
    inline.extend(doc.signals.iter().map(InlineKind::Signal));
    inline.sort_by_key(|e| (e.span().start, e.span().end));

    let mut out = String::with_capacity(doc.text.len() * 2);
    out.push_str(XML_HEADER);
    out.push_str("<TimeML>");
    let text_chars = byte_at.len() - 1;
    let mut cursor = 0usize;
    for element in &inline {
        let span = element.span();
        escape_text(&mut out, slice(cursor, span.start));
        out.push_str(&element.open_tag());
        escape_text(&mut out, slice(span.start, span.end));
        out.push_str(element.close_tag());
        cursor = span.end;
    }
    escape_text(&mut out, slice(cursor, text_chars));

    if !doc.tlinks.is_empty() {
        out.push('\n');
        for link in &doc.tlinks {
            out.push_str(&render_tlink(link));
            out.push('\n');
        }
    }
    out.push_str("</TimeML>");
    out.push('\n');
    Ok(out)
}

/// Parse failure; `offset` is a character offset into the XML string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }

    pub fn to_violation(&self) -> Violation {
        Violation::new(
            ViolationCode::MalformedXml,
            "",
            format!("offset {}: {}", self.offset, self.message),
        )
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MALFORMED_XML at offset {}: {}", self.offset, self.message)
    }
}

fn unescape(raw: &str, at: usize) -> Result<String, ParseError> {
    let mut out = String::with_capacity(raw.len());
    let mut rest = raw;
    while let Some(pos) = rest.find('&') {
        out.push_str(&rest[..pos]);
        let tail = &rest[pos + 1..];
        let semi = tail.find(';').ok_or_else(|| ParseError::new(at, "bare `&` in content"))?;
        let body = &tail[..semi];
        let c = if let Some(num) = body.strip_prefix('#') {
            let code = if let Some(hex) = num.strip_prefix(['x', 'X']) {
                u32::from_str_radix(hex, 16).ok()
            } else {
                num.parse::<u32>().ok()
            };
            code.and_then(char::from_u32)
                .ok_or_else(|| ParseError::new(at, format!("bad character reference `&{body};`")))?
        } else {
            match body {
                "amp" => '&',
                "lt" => '<',
                "gt" => '>',
                "quot" => '"',
                "apos" => '\'',
                _ => return Err(ParseError::new(at, format!("unknown entity `&{body};`"))),
            }
        };
        out.push(c);
        rest = &tail[semi + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

struct AttrView<'a> {
    attrs: &'a [(String, String)],
    offset: usize,
    element: &'a str,
}

impl<'a> AttrView<'a> {
    fn optional(&self, name: &str) -> Result<Option<String>, ParseError> {
        for (n, v) in self.attrs {
            if n == name {
                return unescape(v, self.offset).map(Some);
            }
        }
        Ok(None)
    }

    fn required(&self, name: &str) -> Result<String, ParseError> {
        self.optional(name)?.ok_or_else(|| {
            ParseError::new(self.offset, format!("{} is missing {name}", self.element))
        })
    }
}

/// Parse a TimeML document. Inverse of [`serialize`] on its own output;
/// element spans index the de-tagged, unescaped text.
pub fn parse_timeml(xml: &str) -> Result<TimeMlDocument, ParseError> {
    let mut doc = TimeMlDocument::default();
    let mut byte_pos = 0usize;
    let mut char_pos = 0usize;

    macro_rules! advance {
        ($bytes:expr) => {{
            let n: usize = $bytes;
            char_pos += xml[byte_pos..byte_pos + n].chars().count();
            byte_pos += n;
        }};
    }

    // Prologue: whitespace, declarations, comments, then the root.
    let root = loop {
        let rest = &xml[byte_pos..];
        let Some(c) = rest.chars().next() else {
            return Err(ParseError::new(char_pos, "missing <TimeML> root"));
        };
        if c.is_whitespace() {
            advance!(c.len_utf8());
            continue;
        }
        if c != '<' {
            return Err(ParseError::new(char_pos, "text before <TimeML> root"));
        }
        let tag = scan_tag(rest).ok_or_else(|| ParseError::new(char_pos, "malformed tag"))?;
        match tag.kind {
            TagKind::Markup => advance!(tag.len_bytes),
            _ => break tag,
        }
    };
    if !(root.kind == TagKind::Open && root.name.eq_ignore_ascii_case("timeml")) {
        return Err(ParseError::new(char_pos, "expected <TimeML> root element"));
    }
    advance!(root.len_bytes);

    let mut text = String::new();
    let mut text_len = 0usize; // chars
    let mut in_tail = false; // after the first link-level element
    let mut closed = false;

    while byte_pos < xml.len() {
        let rest = &xml[byte_pos..];
        let c = rest.chars().next().unwrap();
        if c != '<' {
            // Character data run.
            let end = rest.find('<').unwrap_or(rest.len());
            let run = &rest[..end];
            let unescaped = unescape(run, char_pos)?;
            if in_tail {
                if !unescaped.chars().all(char::is_whitespace) {
                    return Err(ParseError::new(char_pos, "text after link elements"));
                }
            } else {
                text_len += unescaped.chars().count();
                text.push_str(&unescaped);
            }
            advance!(end);
            continue;
        }
        let tag = scan_tag(rest).ok_or_else(|| ParseError::new(char_pos, "malformed tag"))?;
        let tag_offset = char_pos;
        match tag.kind {
            TagKind::Markup => {
                advance!(tag.len_bytes);
            }
            TagKind::Close if tag.name.eq_ignore_ascii_case("timeml") => {
                advance!(tag.len_bytes);
                closed = true;
                break;
            }
            _ => {
                let name = tag.name.to_ascii_uppercase();
                match name.as_str() {
                    "TIMEX3" | "EVENT" | "SIGNAL" => {
                        if in_tail {
                            return Err(ParseError::new(tag_offset, "inline element after link elements"));
                        }
                        if tag.kind == TagKind::Close {
                            return Err(ParseError::new(tag_offset, format!("stray closing {name}")));
                        }
                        advance!(tag.len_bytes);
                        let inner = if tag.kind == TagKind::SelfClose {
                            String::new()
                        } else {
                            let rest = &xml[byte_pos..];
                            let close = format!("</{}", name);
                            let close_bytes = close.as_bytes();
                            let rest_bytes = rest.as_bytes();
                            let close_at = (0..rest_bytes.len().saturating_sub(close_bytes.len() - 1))
                                .find(|i| {
                                    rest.is_char_boundary(*i)
                                        && rest_bytes[*i..*i + close_bytes.len()]
                                            .eq_ignore_ascii_case(close_bytes)
                                })
                                .ok_or_else(|| {
                                    ParseError::new(tag_offset, format!("unclosed {name}"))
                                })?;
                            let content = &rest[..close_at];
                            if content.contains('<') {
                                return Err(ParseError::new(
                                    tag_offset,
                                    format!("{name} must contain only text"),
                                ));
                            }
                            let close_tag = scan_tag(&rest[close_at..]).ok_or_else(|| {
                                ParseError::new(tag_offset, format!("unclosed {name}"))
                            })?;
                            let inner = unescape(content, tag_offset)?;
                            advance!(close_at + close_tag.len_bytes);
                            inner
                        };
                        let span = Span::new(text_len, text_len + inner.chars().count());
                        text_len = span.end;
                        text.push_str(&inner);
                        let view = AttrView {
                            attrs: &tag.attrs,
                            offset: tag_offset,
                            element: &name,
                        };
                        build_inline(&name, span, &view, &mut doc, tag_offset)?;
                    }
                    "TLINK" => {
                        consume_empty_element(xml, &mut byte_pos, &mut char_pos, &tag, "TLINK")?;
                        in_tail = true;
                        let view = AttrView {
                            attrs: &tag.attrs,
                            offset: tag_offset,
                            element: "TLINK",
                        };
                        let link = build_tlink(&view, &doc)?;
                        doc.tlinks.push(link);
                    }
                    "MAKEINSTANCE" | "SLINK" | "ALINK" => {
                        // Tolerated but not represented.
                        consume_empty_element(xml, &mut byte_pos, &mut char_pos, &tag, &name)?;
                        in_tail = true;
                    }
                    other => {
                        return Err(ParseError::new(tag_offset, format!("unexpected element <{other}>")));
                    }
                }
            }
        }
    }

    if !closed {
        return Err(ParseError::new(char_pos, "missing </TimeML>"));
    }
    let trailing = &xml[byte_pos..];
    if !trailing.chars().all(char::is_whitespace) {
        return Err(ParseError::new(char_pos, "content after </TimeML>"));
    }

    // The serializer separates the text from the link block with one
    // newline; give it back.
    if !doc.tlinks.is_empty() && text.ends_with('\n') {
        text.pop();
    }
    doc.text = text;
    Ok(doc)
}

/// Advance past an element that must be empty (`<X/>` or `<X></X>`).
fn consume_empty_element(
    xml: &str,
    byte_pos: &mut usize,
    char_pos: &mut usize,
    tag: &Tag,
    name: &str,
) -> Result<(), ParseError> {
    fn advance(xml: &str, byte_pos: &mut usize, char_pos: &mut usize, n: usize) {
        *char_pos += xml[*byte_pos..*byte_pos + n].chars().count();
        *byte_pos += n;
    }
    match tag.kind {
        TagKind::SelfClose => {
            advance(xml, byte_pos, char_pos, tag.len_bytes);
            Ok(())
        }
        TagKind::Open => {
            let offset = *char_pos;
            advance(xml, byte_pos, char_pos, tag.len_bytes);
            if let Some(close) = scan_tag(&xml[*byte_pos..]) {
                if close.kind == TagKind::Close && close.name.eq_ignore_ascii_case(name) {
                    advance(xml, byte_pos, char_pos, close.len_bytes);
                    return Ok(());
                }
            }
            Err(ParseError::new(offset, format!("{name} must be an empty element")))
        }
        _ => Err(ParseError::new(*char_pos, format!("stray closing {name}"))),
    }
}

fn build_inline(
    name: &str,
    span: Span,
    view: &AttrView,
    doc: &mut TimeMlDocument,
    offset: usize,
) -> Result<(), ParseError> {
    match name {
        "TIMEX3" => {
            let ttype_raw = view.required("type")?;
            let ttype = TimexType::parse(&ttype_raw)
                .ok_or_else(|| ParseError::new(offset, format!("unknown TIMEX3 type `{ttype_raw}`")))?;
            let tf = match view.optional("temporalFunction")?.as_deref() {
                None => false,
                Some("true") | Some("TRUE") => true,
                Some("false") | Some("FALSE") => false,
                Some(other) => {
                    return Err(ParseError::new(offset, format!("bad temporalFunction `{other}`")))
                }
            };
            let fid = match view.optional("functionInDocument")? {
                None => FunctionInDocument::None,
                Some(raw) => FunctionInDocument::parse(&raw).ok_or_else(|| {
                    ParseError::new(offset, format!("bad functionInDocument `{raw}`"))
                })?,
            };
            doc.timex3s.push(Timex3 {
                tid: view.required("tid")?,
                span,
                ttype,
                value: view.required("value")?,
                modifier: view.optional("mod")?,
                temporal_function: tf,
                function_in_document: fid,
                anchor_time_id: view.optional("anchorTimeID")?,
            });
        }
        "EVENT" => {
            let class = match view.optional("class")? {
                None => EventClass::Occurrence,
                Some(raw) => EventClass::parse(&raw)
                    .ok_or_else(|| ParseError::new(offset, format!("unknown event class `{raw}`")))?,
            };
            doc.events.push(Event {
                eid: view.required("eid")?,
                span,
                class,
                stem: view.optional("stem")?,
            });
        }
        "SIGNAL" => {
            doc.signals.push(Signal {
                sid: view.required("sid")?,
                span,
            });
        }
        _ => unreachable!("caller dispatches only inline elements"),
    }
    Ok(())
}

fn build_tlink(view: &AttrView, doc: &TimeMlDocument) -> Result<TLink, ParseError> {
    let rel_type = match view.optional("relType")? {
        None => None,
        Some(raw) => Some(RelType::parse(&raw).ok_or_else(|| {
            ParseError::new(view.offset, format!("unknown relType `{raw}`"))
        })?),
    };
    // Some legacy links omit lid; number them on.
    let lid = match view.optional("lid")? {
        Some(lid) => lid,
        None => doc.next_id(ElementClass::TLink),
    };
    Ok(TLink {
        lid,
        time_id: view.optional("timeID")?,
        event_id: view.optional("eventID")?,
        related_to_time: view.optional("relatedToTime")?,
        related_event_id: view.optional("relatedEventID")?,
        rel_type,
        signal_id: view.optional("signalID")?,
    })
}
