//! Per-record cleaning cascade.
//!
//! Each candidate passes through five stages in a fixed order: completeness
//! (it must normalize), benchmark surname lookup, blacklist, byline
//! self-mention (same linkage key as an author of the record), and
//! within-record deduplication. The first failing stage labels the
//! rejection. Survivors form the record's acknowledgee set.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::lexicon::{Blacklist, SurnameSet};
use crate::model::{linkage_key, LinkageKey, NameRules, NormalizedName, Record, RejectionReason};
use crate::ner::NameCandidate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected(RejectionReason),
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Accepted => "accepted",
            Verdict::Rejected(r) => r.as_str(),
        }
    }

    pub fn stage(self) -> &'static str {
        match self {
            Verdict::Accepted => "final",
            Verdict::Rejected(r) => r.stage(),
        }
    }

    pub fn is_accepted(self) -> bool {
        self == Verdict::Accepted
    }
}

/// Audit entry for one candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleaningOutcome {
    pub candidate: NameCandidate,
    /// Absent exactly when the verdict is `Incomplete`.
    pub normalized: Option<NormalizedName>,
    pub verdict: Verdict,
}

/// Distinct acknowledged persons of one record, keyed by linkage key.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AcknowledgeeSet {
    pub record_id: String,
    members: BTreeMap<LinkageKey, NormalizedName>,
}

impl AcknowledgeeSet {
    pub fn new(record_id: impl Into<String>) -> Self {
        AcknowledgeeSet { record_id: record_id.into(), members: BTreeMap::new() }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_key(&self, key: &LinkageKey) -> bool {
        self.members.contains_key(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &LinkageKey> {
        self.members.keys()
    }

    pub fn names(&self) -> impl Iterator<Item = &NormalizedName> {
        self.members.values()
    }

    fn insert(&mut self, key: LinkageKey, name: NormalizedName) {
        self.members.insert(key, name);
    }
}

pub fn count_acknowledgees(set: &AcknowledgeeSet) -> usize {
    set.len()
}

/// Filter stages after normalization, in the order they are applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Stage {
    Benchmark,
    Blacklist,
    Byline,
    Dedup,
}

pub(crate) const STANDARD_ORDER: [Stage; 4] = [Stage::Benchmark, Stage::Blacklist, Stage::Byline, Stage::Dedup];

/// The cascade bound to its reference lists.
#[derive(Debug, Clone, Copy)]
pub struct Cleaner<'a> {
    pub lexicon: &'a SurnameSet,
    pub blacklist: &'a Blacklist,
    pub rules: &'a NameRules,
}

impl<'a> Cleaner<'a> {
    pub fn new(lexicon: &'a SurnameSet, blacklist: &'a Blacklist, rules: &'a NameRules) -> Self {
        Cleaner { lexicon, blacklist, rules }
    }

    /// Linkage keys of the record's byline. Authors whose given field folds
    /// to nothing have no key and cannot match.
    pub fn byline_keys(&self, record: &Record) -> BTreeSet<LinkageKey> {
        record.authors.iter().filter_map(|a| self.rules.author_key(a)).collect()
    }

    pub fn clean_record(&self, record: &Record, candidates: &[NameCandidate]) -> (AcknowledgeeSet, Vec<CleaningOutcome>) {
        self.clean_with_order(record, candidates, &STANDARD_ORDER)
    }

    pub(crate) fn clean_with_order(
        &self,
        record: &Record,
        candidates: &[NameCandidate],
        order: &[Stage],
    ) -> (AcknowledgeeSet, Vec<CleaningOutcome>) {
        let byline = self.byline_keys(record);
        let mut accepted = AcknowledgeeSet::new(record.id.clone());
        let mut audit = Vec::with_capacity(candidates.len());
        for cand in candidates {
            let name = match self.rules.normalize(&cand.surface) {
                Ok(n) => n,
                Err(_) => {
                    audit.push(CleaningOutcome {
                        candidate: cand.clone(),
                        normalized: None,
                        verdict: Verdict::Rejected(RejectionReason::Incomplete),
                    });
                    continue;
                }
            };
            let key = linkage_key(&name);
            let rejection = order.iter().find_map(|stage| match stage {
                Stage::Benchmark => (!self.lexicon.contains(&name)).then_some(RejectionReason::NotInBenchmark),
                Stage::Blacklist => self.blacklist.contains(&name).then_some(RejectionReason::Blacklisted),
                Stage::Byline => byline.contains(&key).then_some(RejectionReason::SelfAuthor),
                Stage::Dedup => accepted.contains_key(&key).then_some(RejectionReason::DuplicateInPaper),
            });
            let verdict = match rejection {
                Some(r) => Verdict::Rejected(r),
                None => {
                    accepted.insert(key, name.clone());
                    Verdict::Accepted
                }
            };
            audit.push(CleaningOutcome { candidate: cand.clone(), normalized: Some(name), verdict });
        }
        (accepted, audit)
    }
}

/// Runs the cascade with the built-in name rules.
pub fn clean_record(
    record: &Record,
    candidates: &[NameCandidate],
    lexicon: &SurnameSet,
    blacklist: &Blacklist,
) -> (AcknowledgeeSet, Vec<CleaningOutcome>) {
    let rules = NameRules::default();
    Cleaner::new(lexicon, blacklist, &rules).clean_record(record, candidates)
}
