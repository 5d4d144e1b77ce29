//! Seeded synthetic corpora with planted ground truth.
//!
//! Records are drawn discipline by discipline from [`DisciplineProfile`]s.
//! Each discipline owns one ChaCha8 stream (`seed_from_u64(seed)` with the
//! stream index set to the profile's position), so a shard can be
//! regenerated alone and identical configurations give identical corpora on
//! every platform.

mod eval;
mod generate;
mod names;
mod profile;

use thiserror::Error;

pub use eval::{evaluate, Evaluation, EvaluationError, PrecisionRecall};
pub use generate::{
    blacklist_text, lexicon_lines, GeneratedRecord, Generator, GeneratorConfig, GroundTruth, Mention, MentionKind,
    TruthEntry,
};
pub use profile::{
    default_targets, CountDistribution, DisciplineProfile, ProfileTargets, AUTHOR_COUNT_CAP,
    DEFAULT_SINGLE_AUTHOR_ACK_SHARE, MAX_ACKNOWLEDGEES,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(&'static str),
    #[error("invalid generator config: {0}")]
    InvalidConfig(&'static str),
    #[error("unknown discipline without default targets: {0}")]
    UnknownDiscipline(alloc::string::String),
}
