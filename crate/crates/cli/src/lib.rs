//! Batch pipeline around the conversion library: discover corpus files,
//! convert them to `.tml` documents with a JSONL manifest, print type
//! statistics, and score system output against gold annotations.

pub mod cli;
pub mod convert;
pub mod corpus;
pub mod manifest;
pub mod score_cmd;
pub mod stats;

/// Process exit codes: 0 success, 1 any document failed, 2 usage error.
pub const EXIT_OK: i32 = 0;
pub const EXIT_DOC_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
