//! Surname benchmark set and non-person blacklist.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::model::{fold, NameRules, NormalizedName};

/// Folded surname used as the benchmark membership key. Whitespace-separated
/// parts are folded and concatenated, matching
/// [`NormalizedName::joined_surname`].
pub fn surname_key(raw: &str) -> String {
    raw.split_whitespace().map(fold).collect()
}

/// Set of folded surnames taken to designate real people.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SurnameSet {
    members: BTreeSet<String>,
}

impl SurnameSet {
    /// Builds the set from lexicon lines. Blank lines and lines starting with
    /// `#` are ignored.
    pub fn from_lines<'a, I>(lines: I) -> Self
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut set = SurnameSet::default();
        for line in lines {
            set.insert(line);
        }
        set
    }

    /// Inserts one lexicon line; returns false for comments and blanks.
    pub fn insert(&mut self, line: &str) -> bool {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            return false;
        }
        let key = surname_key(t);
        if key.is_empty() {
            return false;
        }
        self.members.insert(key);
        true
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_surname(&self, raw: &str) -> bool {
        self.members.contains(&surname_key(raw))
    }

    pub fn contains(&self, name: &NormalizedName) -> bool {
        self.members.contains(&name.joined_surname())
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.members.iter().map(String::as_str)
    }
}

/// Full names known not to denote an individual (grants, foundations,
/// companies, institutions), stored as canonical renderings.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Blacklist {
    members: BTreeSet<String>,
}

/// A blacklist line that could not be normalized into a full name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedEntry {
    pub line: usize,
    pub text: String,
}

impl Blacklist {
    /// Builds the blacklist from lines, one full name per line. Blank and
    /// `#` lines are ignored; lines that are not complete names are returned
    /// as skipped (1-based line numbers).
    pub fn from_lines<'a, I>(rules: &NameRules, lines: I) -> (Self, Vec<SkippedEntry>)
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut list = Blacklist::default();
        let mut skipped = Vec::new();
        for (i, line) in lines.into_iter().enumerate() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            match rules.normalize(t) {
                Ok(name) => {
                    list.members.insert(name.canonical());
                }
                Err(_) => skipped.push(SkippedEntry { line: i + 1, text: t.into() }),
            }
        }
        (list, skipped)
    }

    pub fn contains(&self, name: &NormalizedName) -> bool {
        self.members.contains(&name.canonical())
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.members.iter().map(String::as_str)
    }
}

/// The blacklist shipped with the tool: the non-person entities singled out
/// during manual cleaning of the reference corpus, plus a few more grant and
/// fellowship eponyms of the same kind.
pub const DEFAULT_BLACKLIST: &str = "\
# Non-person entities that look like person names.
# Grants, fellowships and foundations
Frederick Banting
Marie Curie
Marie Sklodowska Curie
Alexander von Humboldt
Charles Best
Rosalind Franklin
# Organizations
Boehringer Ingelheim
Robert Bosch
# Institutions
Instituto de Salud Carlos III
";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::normalize_name;

    #[test]
    fn lexicon_loads_and_folds() {
        let s = SurnameSet::from_lines(["Zhang", "Smith"]);
        assert_eq!(s.len(), 2);
        assert!(s.contains_surname("zhang"));
        assert!(s.contains_surname("ZHANG"));
        let s = SurnameSet::from_lines(["Müller", "Muller"]);
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn lexicon_comments_and_empty() {
        let s = SurnameSet::from_lines(["# header", "", "  ", "van Berg"]);
        assert_eq!(s.len(), 1);
        assert!(s.contains(&normalize_name("Maria van Berg").unwrap()));
        let e = SurnameSet::from_lines([]);
        assert_eq!(e.len(), 0);
        assert!(!e.contains_surname("smith"));
    }

    #[test]
    fn default_blacklist_members() {
        let (bl, skipped) = Blacklist::from_lines(&NameRules::default(), DEFAULT_BLACKLIST.lines());
        assert!(skipped.is_empty());
        for name in ["Frederick Banting", "Marie Curie", "Boehringer Ingelheim", "Instituto de Salud Carlos III"] {
            assert!(bl.contains(&normalize_name(name).unwrap()), "{name}");
        }
        assert!(!bl.contains(&normalize_name("M. Curie").unwrap()));
    }

    #[test]
    fn blacklist_skips_incomplete_lines() {
        let (bl, skipped) = Blacklist::from_lines(&NameRules::default(), ["Wellcome", "Marie Curie"]);
        assert_eq!(bl.len(), 1);
        assert_eq!(skipped, alloc::vec![SkippedEntry { line: 1, text: "Wellcome".into() }]);
    }
}
