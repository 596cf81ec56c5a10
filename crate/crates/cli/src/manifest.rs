//! Run manifest: one JSON object per line per document, written in input
//! order so repeated runs are byte-identical.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use chronotag_core::transduce::{ConversionReport, ConvertPath};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq, Default)]
pub struct PathCounts {
    pub simple: usize,
    pub signalled: usize,
    pub nested: usize,
    pub trimmed: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct WarningRecord {
    pub kind: String,
    pub start: usize,
    pub end: usize,
    pub val: String,
}

/// Outcome of one input document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DocumentRecord {
    pub input: String,
    pub output: Option<String>,
    /// `converted` or `failed`.
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub timex2_nodes: usize,
    pub timex3: usize,
    pub events: usize,
    pub signals: usize,
    pub tlinks: usize,
    pub paths: PathCounts,
    pub dropped: usize,
    pub warnings: Vec<WarningRecord>,
}

impl DocumentRecord {
    pub fn failed(input: &Path, reason: impl Into<String>) -> Self {
        DocumentRecord {
            input: input.display().to_string(),
            output: None,
            status: "failed".into(),
            reason: Some(reason.into()),
            timex2_nodes: 0,
            timex3: 0,
            events: 0,
            signals: 0,
            tlinks: 0,
            paths: PathCounts::default(),
            dropped: 0,
            warnings: Vec::new(),
        }
    }

    pub fn is_failed(&self) -> bool {
        self.status == "failed"
    }
}

pub fn warning_records(report: &ConversionReport) -> Vec<WarningRecord> {
    report
        .warnings
        .iter()
        .map(|w| WarningRecord {
            kind: w.kind.as_str().to_string(),
            start: w.span.start,
            end: w.span.end,
            val: w.val.clone(),
        })
        .collect()
}

pub fn path_counts(report: &ConversionReport) -> PathCounts {
    PathCounts {
        simple: report.path_count(ConvertPath::Simple),
        signalled: report.path_count(ConvertPath::Signalled),
        nested: report.path_count(ConvertPath::Nested),
        trimmed: report.path_count(ConvertPath::Trimmed),
    }
}

/// The whole run: configuration echo plus per-document records.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub format: String,
    pub out_dir: String,
    pub trim_cutoff: usize,
    pub untyped_tlinks: bool,
    pub documents: Vec<DocumentRecord>,
}

impl RunManifest {
    /// JSONL body: one document record per line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for record in &self.documents {
            let line = serde_json::to_string(record).expect("records serialize");
            let _ = writeln!(out, "{line}");
        }
        out
    }

    pub fn failed_count(&self) -> usize {
        self.documents.iter().filter(|d| d.is_failed()).count()
    }

    pub fn converted_count(&self) -> usize {
        self.documents.len() - self.failed_count()
    }

    pub fn total_timex2(&self) -> usize {
        self.documents.iter().map(|d| d.timex2_nodes).sum()
    }

    pub fn total_timex3(&self) -> usize {
        self.documents.iter().map(|d| d.timex3).sum()
    }

    pub fn total_dropped(&self) -> usize {
        self.documents.iter().map(|d| d.dropped).sum()
    }
}

pub fn parse_jsonl(text: &str) -> serde_json::Result<Vec<DocumentRecord>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(serde_json::from_str)
        .collect()
}
