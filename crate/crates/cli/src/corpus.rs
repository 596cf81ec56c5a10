//! Corpus file discovery and loading.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use walkdir::WalkDir;

use chronotag_core::ingest::{merge_standoff, normalize_encoding, parse_inline, parse_standoff_records};
use chronotag_core::model::Document;

/// Expand files and directories into a sorted, deduplicated file list.
/// `keep` filters by file name.
pub fn collect_files(inputs: &[PathBuf], keep: impl Fn(&Path) -> bool) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for input in inputs {
        if input.is_dir() {
            for entry in WalkDir::new(input).sort_by_file_name() {
                let entry = entry.with_context(|| format!("walking {}", input.display()))?;
                if entry.file_type().is_file() && keep(entry.path()) {
                    files.push(entry.path().to_path_buf());
                }
            }
        } else if input.is_file() {
            files.push(input.clone());
        } else {
            bail!("input {} does not exist", input.display());
        }
    }
    files.sort();
    files.dedup();
    Ok(files)
}

fn hidden(path: &Path) -> bool {
    path.file_name()
        .and_then(|n| n.to_str())
        .map(|n| n.starts_with('.'))
        .unwrap_or(true)
}

/// Default filter for inline corpora: visible files that are not conversion
/// outputs.
pub fn inline_source(path: &Path) -> bool {
    !hidden(path)
        && path.extension().and_then(|e| e.to_str()) != Some("tml")
        && path.file_name().and_then(|n| n.to_str()) != Some("manifest.jsonl")
}

/// Standoff annotation files: `*.apf.xml` or `*.xml`.
pub fn standoff_annotation(path: &Path) -> bool {
    !hidden(path) && path.extension().and_then(|e| e.to_str()) == Some("xml")
}

/// TimeML documents.
pub fn timeml_file(path: &Path) -> bool {
    !hidden(path) && path.extension().and_then(|e| e.to_str()) == Some("tml")
}

/// Read a file and normalize its encoding.
pub fn read_normalized(path: &Path) -> Result<String> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    normalize_encoding(&bytes, None).map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// Document name: the file name with `.apf.xml` or the final extension
/// stripped.
pub fn doc_name(path: &Path) -> String {
    let name = path
        .file_name()
        .and_then(|n| n.to_str())
        .unwrap_or("document");
    if let Some(stripped) = name.strip_suffix(".apf.xml") {
        return stripped.to_string();
    }
    match name.rsplit_once('.') {
        Some((stem, _)) if !stem.is_empty() => stem.to_string(),
        _ => name.to_string(),
    }
}

/// Load one inline-annotated source file.
pub fn load_inline(path: &Path, dct_override: Option<&str>) -> Result<Document> {
    let text = read_normalized(path)?;
    let mut doc = parse_inline(&text).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    doc.doc_id = doc_name(path);
    if doc.dct.is_none() {
        doc.dct = dct_override.map(str::to_string);
    }
    Ok(doc)
}

/// Locate the raw source paired with a standoff annotation file:
/// `X.apf.xml` or `X.xml` pairs with `X.sgm`, `X.txt` or `X`.
pub fn standoff_source_for(annotation: &Path) -> Result<PathBuf> {
    let dir = annotation.parent().unwrap_or_else(|| Path::new("."));
    let base = doc_name(annotation);
    for candidate in [
        dir.join(format!("{base}.sgm")),
        dir.join(format!("{base}.txt")),
        dir.join(&base),
    ] {
        if candidate.is_file() {
            return Ok(candidate);
        }
    }
    bail!(
        "no source file ({base}.sgm, {base}.txt or {base}) next to {}",
        annotation.display()
    )
}

/// Load a standoff annotation file and its source. Mention offsets index
/// the tag-stripped, encoding-normalized source text (charseq END is
/// inclusive in the annotation format).
pub fn load_standoff(annotation: &Path, dct_override: Option<&str>) -> Result<Document> {
    let source_path = standoff_source_for(annotation)?;
    let raw = read_normalized(&source_path)?;
    // Meta tags in the source are stripped before offsets apply.
    let stripped = parse_inline(&raw)
        .map_err(|e| anyhow!("{}: {e}", source_path.display()))?
        .text;
    let xml = read_normalized(annotation)?;
    let records =
        parse_standoff_records(&xml).map_err(|e| anyhow!("{}: {e}", annotation.display()))?;
    let mut doc =
        merge_standoff(&stripped, &records).map_err(|e| anyhow!("{}: {e}", annotation.display()))?;
    doc.doc_id = doc_name(annotation);
    doc.dct = dct_override.map(str::to_string);
    Ok(doc)
}
