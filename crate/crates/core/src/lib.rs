//! Acknowledgee extraction and collaboration statistics.
//!
//! This crate holds the allocation-only core of the pipeline: name
//! normalization and linkage keys, the rule-based person-name recognizer,
//! the per-record cleaning cascade, mergeable per-discipline aggregates and
//! the seeded synthetic corpus generator. It performs no I/O; the `acktally`
//! crate wires it to files and a command line.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cleanse;
pub mod lexicon;
pub mod metrics;
pub mod model;
pub mod ner;
pub mod synth;

pub use cleanse::{clean_record, count_acknowledgees, AcknowledgeeSet, Cleaner, CleaningOutcome, Verdict};
pub use lexicon::{Blacklist, SurnameSet};
pub use metrics::{
    cross_discipline_dispersion, single_author_ack_share, summarize, AggregateSet, ContributorSummary,
    DisciplineAggregate, DispersionStats, MeanCounts, Table1Row,
};
pub use model::{
    linkage_key, normalize_name, AuthorName, Discipline, DocType, Incomplete, LinkageKey, NameRules, NameToken,
    NormalizedName, Record, RecordError, RejectionReason, TokenKind,
};
pub use ner::{extract_candidates, recognizer_info, NameCandidate, Recognizer};
