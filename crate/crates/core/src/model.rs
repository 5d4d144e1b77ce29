//! Records, author names and the canonical name form used for linkage.
//!
//! A person name is decomposed into given tokens (initials or full given
//! names) and surname tokens. Every token is folded: compatibility
//! decomposition, combining marks stripped, lower-cased, and reduced to its
//! alphanumeric characters, so `Müller`, `Muller` and `MULLER` fold to the
//! same token and `Lloyd-Jones` folds to `lloydjones`.
//!
//! The linkage key of a name is its first given initial plus the joined
//! surname tokens. Two names with equal keys are treated as the same person
//! when matching acknowledgement mentions against a byline.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};
use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

/// Discipline label attached to a record.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Discipline(String);

impl Discipline {
    /// The twelve standard journal-level disciplines, in summary-table
    /// order.
    pub const STANDARD: [&'static str; 12] = [
        "Earth & Space",
        "Biology",
        "Biomedical Research",
        "Physics",
        "Psychology",
        "Chemistry",
        "Social Sciences",
        "Engineering & Technology",
        "Clinical Medicine",
        "Mathematics",
        "Health",
        "Professional Fields",
    ];

    pub fn new(label: impl Into<String>) -> Self {
        Discipline(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_standard(&self) -> bool {
        Self::STANDARD.contains(&self.0.as_str())
    }
}

impl fmt::Display for Discipline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Discipline {
    fn from(s: &str) -> Self {
        Discipline(s.to_owned())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DocType {
    Article,
    Review,
}

/// One byline entry as printed on the paper.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuthorName {
    /// Full given name(s) and/or initials; may be empty.
    pub given: String,
    pub surname: String,
}

impl AuthorName {
    pub fn new(given: impl Into<String>, surname: impl Into<String>) -> Self {
        AuthorName { given: given.into(), surname: surname.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecordError {
    #[error("record has no authors")]
    NoAuthors,
    #[error("author {0} has an empty surname")]
    EmptySurname(usize),
    #[error("record id is empty")]
    EmptyId,
}

/// One paper: byline plus optional acknowledgement text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    pub year: i32,
    pub discipline: Discipline,
    pub doc_type: DocType,
    pub authors: Vec<AuthorName>,
    pub ack_text: Option<String>,
}

impl Record {
    /// Builds a record, enforcing the byline invariants. A whitespace-only
    /// acknowledgement text is stored as absent.
    pub fn new(
        id: impl Into<String>,
        year: i32,
        discipline: Discipline,
        doc_type: DocType,
        authors: Vec<AuthorName>,
        ack_text: Option<String>,
    ) -> Result<Self, RecordError> {
        let id = id.into();
        if id.trim().is_empty() {
            return Err(RecordError::EmptyId);
        }
        if authors.is_empty() {
            return Err(RecordError::NoAuthors);
        }
        if let Some(i) = authors.iter().position(|a| a.surname.trim().is_empty()) {
            return Err(RecordError::EmptySurname(i));
        }
        let ack_text = ack_text.filter(|t| !t.trim().is_empty());
        Ok(Record { id, year, discipline, doc_type, authors, ack_text })
    }

    pub fn has_ack_text(&self) -> bool {
        self.ack_text.is_some()
    }
}

/// Whether a given-name token is an initial or a full given name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TokenKind {
    Initial,
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NameToken {
    pub text: String,
    pub kind: TokenKind,
}

/// A person name split into folded given and surname tokens.
///
/// Equality ignores `display`, so a name and the normalization of its
/// canonical rendering compare equal.
#[derive(Debug, Clone)]
pub struct NormalizedName {
    pub given: Vec<NameToken>,
    pub surname: Vec<String>,
    pub display: String,
}

impl PartialEq for NormalizedName {
    fn eq(&self, other: &Self) -> bool {
        self.given == other.given && self.surname == other.surname
    }
}

impl Eq for NormalizedName {}

impl NormalizedName {
    /// Canonical rendering: initials as `x.`, full tokens verbatim, single
    /// spaces between tokens.
    pub fn canonical(&self) -> String {
        let mut out = String::new();
        for tok in &self.given {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&tok.text);
            if tok.kind == TokenKind::Initial {
                out.push('.');
            }
        }
        for tok in &self.surname {
            out.push(' ');
            out.push_str(tok);
        }
        out
    }

    pub fn joined_surname(&self) -> String {
        self.surname.concat()
    }

    pub fn linkage_key(&self) -> LinkageKey {
        linkage_key(self)
    }
}

/// `(first initial, joined surname)` pair used for byline matching and
/// within-paper deduplication.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinkageKey {
    pub first_initial: char,
    pub surname: String,
}

impl fmt::Display for LinkageKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.first_initial, self.surname)
    }
}

/// The candidate did not decompose into at least one given token and one
/// surname token.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Incomplete;

impl fmt::Display for Incomplete {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("incomplete name")
    }
}

/// Why the cleaning cascade rejected a candidate. Variants are listed in
/// cascade order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RejectionReason {
    Incomplete,
    NotInBenchmark,
    Blacklisted,
    SelfAuthor,
    DuplicateInPaper,
}

impl RejectionReason {
    pub const ALL: [RejectionReason; 5] = [
        RejectionReason::Incomplete,
        RejectionReason::NotInBenchmark,
        RejectionReason::Blacklisted,
        RejectionReason::SelfAuthor,
        RejectionReason::DuplicateInPaper,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RejectionReason::Incomplete => "incomplete",
            RejectionReason::NotInBenchmark => "not_in_benchmark",
            RejectionReason::Blacklisted => "blacklisted",
            RejectionReason::SelfAuthor => "self_author",
            RejectionReason::DuplicateInPaper => "duplicate_in_paper",
        }
    }

    /// Name of the cascade stage that emits this reason.
    pub fn stage(self) -> &'static str {
        match self {
            RejectionReason::Incomplete => "normalize",
            RejectionReason::NotInBenchmark => "benchmark",
            RejectionReason::Blacklisted => "blacklist",
            RejectionReason::SelfAuthor => "byline",
            RejectionReason::DuplicateInPaper => "dedup",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|r| r.as_str() == s)
    }
}

impl fmt::Display for RejectionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub const DEFAULT_PARTICLES: [&str; 7] = ["van", "de", "der", "da", "del", "von", "la"];

const SUFFIXES: [&str; 5] = ["jr", "sr", "ii", "iii", "iv"];

/// Configuration for name decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NameRules {
    particles: BTreeSet<String>,
}

impl Default for NameRules {
    fn default() -> Self {
        NameRules { particles: DEFAULT_PARTICLES.iter().map(|p| (*p).to_owned()).collect() }
    }
}

impl NameRules {
    /// Adds surname particles on top of the built-in list.
    pub fn with_extra_particles<I, S>(mut self, extra: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        for p in extra {
            let folded = fold(p.as_ref());
            if !folded.is_empty() {
                self.particles.insert(folded);
            }
        }
        self
    }

    pub fn particles(&self) -> impl Iterator<Item = &str> {
        self.particles.iter().map(String::as_str)
    }

    pub fn is_particle(&self, folded: &str) -> bool {
        self.particles.contains(folded)
    }

    /// Decomposes a free-text person name (as extracted from prose).
    ///
    /// The last token is the surname; particles immediately before it are
    /// attached to the surname as long as one given token remains. Trailing
    /// generational suffixes are dropped. A trailing dotted single letter is
    /// an initial, not a surname, and makes the name incomplete.
    pub fn normalize(&self, raw: &str) -> Result<NormalizedName, Incomplete> {
        let mut toks = split_tokens(raw);
        while toks.len() >= 3 {
            let last = &toks[toks.len() - 1];
            let prev = &toks[toks.len() - 2];
            if SUFFIXES.contains(&last.text.as_str()) && !self.is_particle(&prev.text) {
                toks.pop();
            } else {
                break;
            }
        }
        if toks.len() < 2 {
            return Err(Incomplete);
        }
        let last = toks.pop().ok_or(Incomplete)?;
        if last.dotted && last.text.chars().count() == 1 {
            return Err(Incomplete);
        }
        let mut surname = alloc::vec![last.text];
        while toks.len() > 1 {
            let tail = &toks[toks.len() - 1];
            if tail.kind() == TokenKind::Full && self.is_particle(&tail.text) {
                let t = toks.pop().ok_or(Incomplete)?;
                surname.insert(0, t.text);
            } else {
                break;
            }
        }
        let given = toks.into_iter().map(|t| NameToken { kind: t.kind(), text: t.text }).collect();
        Ok(NormalizedName { given, surname, display: raw.to_owned() })
    }

    /// Builds the normalized form of a structured byline entry. The surname
    /// field is taken verbatim as the surname, so no particle guessing is
    /// needed. Fails when either part folds to nothing.
    pub fn from_parts(&self, given: &str, surname: &str) -> Result<NormalizedName, Incomplete> {
        let given: Vec<NameToken> =
            split_tokens(given).into_iter().map(|t| NameToken { kind: t.kind(), text: t.text }).collect();
        let surname: Vec<String> = surname.split_whitespace().map(fold).filter(|s| !s.is_empty()).collect();
        if given.is_empty() || surname.is_empty() {
            return Err(Incomplete);
        }
        let mut name = NormalizedName { given, surname, display: String::new() };
        name.display = name.canonical();
        Ok(name)
    }

    pub fn author_key(&self, author: &AuthorName) -> Option<LinkageKey> {
        self.from_parts(&author.given, &author.surname).ok().map(|n| linkage_key(&n))
    }
}

struct RawToken {
    text: String,
    dotted: bool,
}

impl RawToken {
    fn kind(&self) -> TokenKind {
        if self.text.chars().count() == 1 {
            TokenKind::Initial
        } else {
            TokenKind::Full
        }
    }
}

/// Whitespace pieces, further split on `.` so `J.R.` yields two initials.
fn split_tokens(raw: &str) -> Vec<RawToken> {
    let mut out = Vec::new();
    for piece in raw.split_whitespace() {
        let parts: Vec<&str> = piece.split('.').collect();
        let n = parts.len();
        for (i, part) in parts.into_iter().enumerate() {
            let text = fold(part);
            if !text.is_empty() {
                out.push(RawToken { text, dotted: i + 1 < n });
            }
        }
    }
    out
}

/// Folds a string for comparison: compatibility decomposition, combining
/// marks removed, lower-cased, non-decomposing Latin letters mapped to ASCII,
/// and everything but alphanumerics dropped.
pub fn fold(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.nfkd() {
        if is_combining_mark(c) {
            continue;
        }
        for lc in c.to_lowercase() {
            for d in core::iter::once(lc).nfkd() {
                if is_combining_mark(d) {
                    continue;
                }
                push_folded(&mut out, d);
            }
        }
    }
    out
}

fn push_folded(out: &mut String, c: char) {
    let mapped: &str = match c {
        'ø' => "o",
        'ł' => "l",
        'đ' | 'ð' => "d",
        'ß' => "ss",
        'æ' => "ae",
        'œ' => "oe",
        'þ' => "th",
        'ı' => "i",
        'ħ' => "h",
        _ => {
            if c.is_alphanumeric() {
                out.extend(c.to_lowercase());
            }
            return;
        }
    };
    out.push_str(mapped);
}

/// Normalizes with the built-in particle list.
pub fn normalize_name(raw: &str) -> Result<NormalizedName, Incomplete> {
    NameRules::default().normalize(raw)
}

pub fn linkage_key(name: &NormalizedName) -> LinkageKey {
    let first_initial = name.given.first().and_then(|t| t.text.chars().next()).unwrap_or('?');
    LinkageKey { first_initial, surname: name.joined_surname() }
}
