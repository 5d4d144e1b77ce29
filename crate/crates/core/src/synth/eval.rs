use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::model::{LinkageKey, NameRules};

use super::generate::GroundTruth;

/// Match counts behind one precision/recall pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PrecisionRecall {
    pub matched: u64,
    pub extracted: u64,
    pub planted: u64,
}

impl PrecisionRecall {
    /// Absent when nothing was extracted.
    pub fn precision(&self) -> Option<f64> {
        (self.extracted > 0).then(|| self.matched as f64 / self.extracted as f64)
    }

    /// Absent when nothing was planted.
    pub fn recall(&self) -> Option<f64> {
        (self.planted > 0).then(|| self.matched as f64 / self.planted as f64)
    }

    fn add(&mut self, other: PrecisionRecall) {
        self.matched += other.matched;
        self.extracted += other.extracted;
        self.planted += other.planted;
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Evaluation {
    pub per_record: BTreeMap<String, PrecisionRecall>,
    /// Micro-average over all records.
    pub overall: PrecisionRecall,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvaluationError {
    #[error(
        "record ids differ: {} only in output (first {:?}), {} only in truth (first {:?})",
        only_in_output.len(),
        only_in_output.first(),
        only_in_truth.len(),
        only_in_truth.first()
    )]
    IdMismatch { only_in_output: Vec<String>, only_in_truth: Vec<String> },
}

/// Scores extracted acknowledgee keys against planted ones. Planted names
/// are compared through their linkage keys, so a match needs the same first
/// initial and surname.
pub fn evaluate(
    extracted: &BTreeMap<String, BTreeSet<LinkageKey>>,
    truth: &GroundTruth,
    rules: &NameRules,
) -> Result<Evaluation, EvaluationError> {
    let only_in_output: Vec<String> = extracted.keys().filter(|id| !truth.contains_key(*id)).cloned().collect();
    let only_in_truth: Vec<String> = truth.keys().filter(|id| !extracted.contains_key(*id)).cloned().collect();
    if !only_in_output.is_empty() || !only_in_truth.is_empty() {
        return Err(EvaluationError::IdMismatch { only_in_output, only_in_truth });
    }
    let mut eval = Evaluation::default();
    for (id, entry) in truth {
        let planted: BTreeSet<LinkageKey> =
            entry.acknowledgees.iter().filter_map(|c| rules.normalize(c).ok()).map(|n| n.linkage_key()).collect();
        let found = &extracted[id];
        let pr = PrecisionRecall {
            matched: found.intersection(&planted).count() as u64,
            extracted: found.len() as u64,
            planted: planted.len() as u64,
        };
        eval.overall.add(pr);
        eval.per_record.insert(id.clone(), pr);
    }
    Ok(eval)
}
