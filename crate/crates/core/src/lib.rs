//! Conversion of TIMEX2-annotated text into TimeML/TIMEX3 documents.
//!
//! TIMEX2 corpora annotate temporal expressions as single, possibly long or
//! nested extents. TimeML prefers minimal timexes, with events, signals and
//! temporal links as separate elements. This crate carries a document over
//! that gap:
//!
//! * [`ingest`] parses legacy inline markup and ACE-style standoff
//!   annotations into a uniform [`model::Document`],
//! * [`transduce`] rewrites each TIMEX2 into TimeML elements — simple
//!   mapping, signalled event-based expansion, nested unpacking, and
//!   trimming of over-long extents,
//! * [`timeml`] serializes and re-parses the resulting documents,
//! * [`validate`] checks them against the TimeML well-formedness rules,
//! * [`score`] compares system output against gold annotations under
//!   entity-strict and token-based regimes.
//!
//! The crate is `no_std` (with `alloc`); all IO lives in the companion CLI
//! crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod chunk;
pub mod ingest;
pub mod lexicon;
pub(crate) mod markup;
pub mod model;
pub mod score;
pub mod tag;
pub mod timeml;
pub mod transduce;
pub mod validate;
pub mod values;

pub use model::{Document, Span, TimeMlDocument, Timex2};
pub use transduce::{convert_document, ConversionConfig, ConversionReport};
