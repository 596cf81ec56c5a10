//! Low-level lenient tag scanning shared by the SGML-ish ingest parser and
//! the TimeML parser.
//!
//! Legacy TERN-era data predates strict XML: attribute values may be
//! double-, single- or un-quoted, and tag names are matched
//! case-insensitively by callers. The scanner only recognizes shapes; what
//! a tag means is the caller's business.

use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum TagKind {
    Open,
    Close,
    SelfClose,
    /// Comments, doctype and processing instructions.
    Markup,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Tag {
    pub name: String,
    /// Attribute names and raw values in source order.
    pub attrs: Vec<(String, String)>,
    pub kind: TagKind,
    /// Bytes consumed from the input, including the angle brackets.
    pub len_bytes: usize,
}

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.' | ':')
}

/// Scan one tag at the start of `input` (which must begin with `<`).
/// Returns `None` when the text is not a recognizable tag — callers decide
/// whether that means literal text or a markup error.
pub(crate) fn scan_tag(input: &str) -> Option<Tag> {
    let rest = input.strip_prefix('<')?;

    if rest.starts_with("!--") {
        let end = input.find("-->")?;
        return Some(Tag {
            name: String::new(),
            attrs: Vec::new(),
            kind: TagKind::Markup,
            len_bytes: end + 3,
        });
    }
    if rest.starts_with('!') || rest.starts_with('?') {
        let end = input.find('>')?;
        return Some(Tag {
            name: String::new(),
            attrs: Vec::new(),
            kind: TagKind::Markup,
            len_bytes: end + 1,
        });
    }

    let (closing, body_start) = if let Some(after) = rest.strip_prefix('/') {
        let _ = after;
        (true, 2)
    } else {
        (false, 1)
    };

    let mut chars = input[body_start..].char_indices().peekable();
    let (_, first) = chars.peek().copied()?;
    if !is_name_start(first) {
        return None;
    }
    let mut name_end = body_start;
    while let Some((i, c)) = chars.peek().copied() {
        if is_name_char(c) {
            chars.next();
            name_end = body_start + i + c.len_utf8();
        } else {
            break;
        }
    }
    let name = String::from(&input[body_start..name_end]);

    let mut pos = name_end;
    let bytes = input.as_bytes();
    let mut attrs = Vec::new();
    loop {
        while pos < bytes.len() && (bytes[pos] as char).is_ascii_whitespace() {
            pos += 1;
        }
        if pos >= bytes.len() {
            return None; // unterminated
        }
        match bytes[pos] {
            b'>' => {
                return Some(Tag {
                    name,
                    attrs,
                    kind: if closing { TagKind::Close } else { TagKind::Open },
                    len_bytes: pos + 1,
                });
            }
            b'/' if pos + 1 < bytes.len() && bytes[pos + 1] == b'>' => {
                return Some(Tag {
                    name,
                    attrs,
                    kind: if closing { TagKind::Close } else { TagKind::SelfClose },
                    len_bytes: pos + 2,
                });
            }
            _ => {
                if closing {
                    // Junk in a closing tag: skip to '>'.
                    pos += 1;
                    continue;
                }
                let (attr, next) = scan_attr(input, pos)?;
                if !attr.0.is_empty() {
                    attrs.push(attr);
                }
                pos = next;
            }
        }
    }
}

fn scan_attr(input: &str, start: usize) -> Option<((String, String), usize)> {
    let bytes = input.as_bytes();
    let mut pos = start;
    let c = input[pos..].chars().next()?;
    if !is_name_start(c) {
        // Not attribute-shaped; treat the single byte as noise and move on.
        return Some(((String::new(), String::new()), pos + c.len_utf8()));
    }
    let name_start = pos;
    while pos < bytes.len() && is_name_char(input[pos..].chars().next()?) {
        pos += 1;
    }
    let name = String::from(&input[name_start..pos]);
    while pos < bytes.len() && (bytes[pos] as char).is_ascii_whitespace() {
        pos += 1;
    }
    if pos >= bytes.len() || bytes[pos] != b'=' {
        // Flag attribute with no value.
        return Some(((name, String::new()), pos));
    }
    pos += 1;
    while pos < bytes.len() && (bytes[pos] as char).is_ascii_whitespace() {
        pos += 1;
    }
    if pos >= bytes.len() {
        return None;
    }
    match bytes[pos] {
        q @ (b'"' | b'\'') => {
            let vstart = pos + 1;
            let rel = input[vstart..].find(q as char)?;
            let value = String::from(&input[vstart..vstart + rel]);
            Some(((name, value), vstart + rel + 1))
        }
        _ => {
            let vstart = pos;
            while pos < bytes.len() {
                let ch = input[pos..].chars().next()?;
                if ch.is_ascii_whitespace() || ch == '>' || (ch == '/' && bytes.get(pos + 1) == Some(&b'>')) {
                    break;
                }
                pos += ch.len_utf8();
            }
            Some(((name, String::from(&input[vstart..pos])), pos))
        }
    }
}
