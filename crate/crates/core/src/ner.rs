//! Rule-based person-name recognizer for acknowledgement prose.
//!
//! The text is scanned into word and punctuation tokens. A candidate is a
//! maximal run of name-like words separated only by whitespace, where a
//! name-like word is either a capitalized alphabetic word of two or more
//! letters (acronyms included) or an initial (`J.` or a bare `J`).
//! Lower-case surname particles (`van`, `de`, ...) may sit inside a run when
//! more name-like words follow them.
//!
//! Runs are broken by punctuation, by any other lower-case or mixed
//! alphanumeric word, by honorifics (`Dr.`, `Prof.`, which are excluded from
//! the span) and by stopwords (`We`, `The`, ...), which never begin or join a
//! candidate. A run containing an organization keyword (`Foundation`,
//! `University`, ...) is dropped whole.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::model::{fold, DEFAULT_PARTICLES};

pub const RECOGNIZER: &str = "rule-ner v1";

/// Name and version of the recognizer, recorded in run manifests.
pub fn recognizer_info() -> &'static str {
    RECOGNIZER
}

pub const DEFAULT_HONORIFICS: [&str; 8] = ["Dr", "Drs", "Prof", "Professor", "Mr", "Ms", "Mrs", "Miss"];

pub const DEFAULT_STOPWORDS: [&str; 40] = [
    "We", "The", "This", "That", "These", "Those", "Our", "Ours", "In", "It", "Its", "He", "She", "They", "Their",
    "An", "All", "Also", "And", "For", "From", "Finally", "Funding", "Support", "Special", "Thanks",
    "Thank", "Many", "Part", "Parts", "Any", "Authors", "Author", "Acknowledgements", "Acknowledgments", "Additionally",
    "Furthermore", "Moreover", "However", "Open",
];

pub const DEFAULT_ORG_KEYWORDS: [&str; 74] = [
    "Foundation", "Foundations", "University", "Universities", "Institute", "Institutes", "Institution", "Council",
    "Ministry", "Program", "Programme", "Programs", "Fund", "Funds", "Agency", "Center", "Centre", "Centers",
    "Centres", "Department", "Laboratory", "Laboratories", "Lab", "Society", "Association", "Academy", "Science",
    "Sciences", "Research", "National", "Grant", "Grants", "Project", "Projects", "Hospital", "College", "School",
    "Office", "Commission", "Trust", "Initiative", "Scholarship", "Scholarships", "Fellowship", "Fellowships",
    "Award", "Awards", "Inc", "Ltd", "Corporation", "Company", "Network", "Consortium", "Health", "Medical",
    "Engineering", "Technology", "Natural", "European", "Union", "Federal", "Government", "Service", "Board",
    "Committee", "Organization", "Organisation", "Administration", "Bureau", "Facility", "Observatory", "Museum",
    "Library", "Humanities",
];

/// A person-name candidate found in acknowledgement text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NameCandidate {
    pub surface: String,
    /// Byte range of `surface` within the source text.
    pub span: (usize, usize),
    /// Recognizer tokens in order. Glued initials are split, so `G.M. Smith`
    /// has tokens `G.`, `M.` and `Smith`.
    pub tokens: Vec<String>,
}

impl NameCandidate {
    /// A candidate standing for an entire string, for callers that already
    /// hold name strings.
    pub fn from_surface(surface: &str) -> Self {
        NameCandidate {
            surface: surface.to_owned(),
            span: (0, surface.len()),
            tokens: surface.split_whitespace().map(ToOwned::to_owned).collect(),
        }
    }
}

/// Word lists driving the recognizer. Honorifics, stopwords and organization
/// keywords match case-insensitively after folding.
#[derive(Debug, Clone)]
pub struct Recognizer {
    honorifics: BTreeSet<String>,
    stopwords: BTreeSet<String>,
    org_keywords: BTreeSet<String>,
    particles: BTreeSet<String>,
}

impl Default for Recognizer {
    fn default() -> Self {
        Recognizer {
            honorifics: folded_set(DEFAULT_HONORIFICS),
            stopwords: folded_set(DEFAULT_STOPWORDS),
            org_keywords: folded_set(DEFAULT_ORG_KEYWORDS),
            particles: folded_set(DEFAULT_PARTICLES),
        }
    }
}

fn folded_set<I, S>(words: I) -> BTreeSet<String>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    words.into_iter().map(|w| fold(w.as_ref())).filter(|w| !w.is_empty()).collect()
}

impl Recognizer {
    pub fn with_honorifics<I, S>(mut self, words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.honorifics = folded_set(words);
        self
    }

    pub fn with_stopwords<I, S>(mut self, words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.stopwords = folded_set(words);
        self
    }

    pub fn with_org_keywords<I, S>(mut self, words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.org_keywords = folded_set(words);
        self
    }

    /// Adds particles allowed in lower case inside a name.
    pub fn with_extra_particles<I, S>(mut self, words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.particles.extend(folded_set(words));
        self
    }

    pub fn extract(&self, text: &str) -> Vec<NameCandidate> {
        let tokens = tokenize(text);
        let mut out = Vec::new();
        let mut run: Vec<usize> = Vec::new();
        let mut i = 0;
        while i < tokens.len() {
            let tok = &tokens[i];
            match self.classify(text, tok) {
                Class::Honorific => {
                    self.flush(text, &tokens, &mut run, &mut out);
                    // The abbreviation dot belongs to the honorific.
                    if let Some(next) = tokens.get(i + 1) {
                        if next.kind == TokKind::Punct && &text[next.start..next.end] == "." && next.start == tok.end {
                            i += 1;
                        }
                    }
                }
                Class::Name => run.push(i),
                Class::Particle if !run.is_empty() && self.particle_run_continues(text, &tokens, i) => run.push(i),
                _ => self.flush(text, &tokens, &mut run, &mut out),
            }
            i += 1;
        }
        self.flush(text, &tokens, &mut run, &mut out);
        out
    }

    fn particle_run_continues(&self, text: &str, tokens: &[Tok], from: usize) -> bool {
        for tok in &tokens[from + 1..] {
            match self.classify(text, tok) {
                Class::Particle => continue,
                Class::Name => return true,
                _ => return false,
            }
        }
        false
    }

    fn classify(&self, text: &str, tok: &Tok) -> Class {
        if tok.kind == TokKind::Punct {
            return Class::Break;
        }
        let surface = &text[tok.start..tok.end];
        let word = surface.trim_end_matches('.');
        let mut chars = word.chars();
        let Some(first) = chars.next() else {
            return Class::Break;
        };
        let alphabetic = word.chars().all(|c| c.is_alphabetic() || c == '-' || c == '\'' || c == '\u{2019}');
        if !alphabetic {
            return Class::Break;
        }
        let folded = fold(word);
        if first.is_uppercase() {
            if self.honorifics.contains(&folded) && tok.kind == TokKind::Word {
                return Class::Honorific;
            }
            if tok.kind == TokKind::Word && self.stopwords.contains(&folded) {
                return Class::Break;
            }
            if tok.kind == TokKind::Initial || word.chars().count() >= 2 {
                return Class::Name;
            }
            return Class::Break;
        }
        if first.is_lowercase() && self.particles.contains(&folded) {
            return Class::Particle;
        }
        Class::Break
    }

    fn flush(&self, text: &str, tokens: &[Tok], run: &mut Vec<usize>, out: &mut Vec<NameCandidate>) {
        if run.is_empty() {
            return;
        }
        let words: Vec<&str> = run.iter().map(|&j| &text[tokens[j].start..tokens[j].end]).collect();
        let is_org = words.iter().any(|w| self.org_keywords.contains(&fold(w.trim_end_matches('.'))));
        if !is_org {
            let start = tokens[run[0]].start;
            let end = tokens[run[run.len() - 1]].end;
            out.push(NameCandidate {
                surface: text[start..end].to_owned(),
                span: (start, end),
                tokens: words.into_iter().map(ToOwned::to_owned).collect(),
            });
        }
        run.clear();
    }
}

/// Candidates from `text` using the built-in word lists.
pub fn extract_candidates(text: &str) -> Vec<NameCandidate> {
    Recognizer::default().extract(text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    Name,
    Particle,
    Honorific,
    Break,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TokKind {
    Word,
    /// Single upper-case letter, with its trailing dot when present.
    Initial,
    Punct,
}

#[derive(Debug, Clone, Copy)]
struct Tok {
    start: usize,
    end: usize,
    kind: TokKind,
}

fn is_joiner(c: char) -> bool {
    c == '-' || c == '\'' || c == '\u{2019}'
}

/// Words are runs of alphanumerics with inner hyphens or apostrophes; every
/// other non-whitespace character is a one-character punctuation token.
fn tokenize(text: &str) -> Vec<Tok> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some((start, c)) = it.next() {
        if c.is_whitespace() {
            continue;
        }
        if !c.is_alphanumeric() {
            out.push(Tok { start, end: start + c.len_utf8(), kind: TokKind::Punct });
            continue;
        }
        let mut end = start + c.len_utf8();
        let mut n_chars = 1;
        while let Some(&(i, d)) = it.peek() {
            let joins = is_joiner(d) && text[i + d.len_utf8()..].chars().next().is_some_and(char::is_alphanumeric);
            if !(d.is_alphanumeric() || joins) {
                break;
            }
            end = i + d.len_utf8();
            n_chars += 1;
            it.next();
        }
        let mut kind = TokKind::Word;
        if n_chars == 1 && c.is_uppercase() {
            kind = TokKind::Initial;
            if let Some(&(i, '.')) = it.peek() {
                end = i + 1;
                it.next();
            }
        }
        out.push(Tok { start, end, kind });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn surfaces(text: &str) -> Vec<String> {
        extract_candidates(text).into_iter().map(|c| c.surface).collect()
    }

    #[test]
    fn paper_x_sentence() {
        assert_eq!(
            surfaces("Jinsong Zhang, Xiao Feng, and Yong Xu contributed equally to this work"),
            vec!["Jinsong Zhang", "Xiao Feng", "Yong Xu"]
        );
    }

    #[test]
    fn empty_text() {
        assert!(extract_candidates("").is_empty());
        assert!(extract_candidates("   \n").is_empty());
    }

    #[test]
    fn honorific_and_acronym() {
        // The acronym survives the grammar; completeness filtering removes it later.
        assert_eq!(surfaces("We thank Dr. J. R. Smith and the NSF."), vec!["J. R. Smith", "NSF"]);
        assert_eq!(surfaces("Prof Ana Silva helped."), vec!["Ana Silva"]);
    }

    #[test]
    fn stopwords_never_start_a_candidate() {
        assert_eq!(surfaces("The authors thank Maria Lopez."), vec!["Maria Lopez"]);
        assert_eq!(surfaces("We are grateful to Li Wei"), vec!["Li Wei"]);
    }

    #[test]
    fn organizations_dropped() {
        assert!(surfaces("supported by the National Science Foundation (grant 123).").is_empty());
        assert_eq!(
            surfaces("funded by the Instituto de Salud Carlos III (PI15/00001)."),
            vec!["Instituto de Salud Carlos III"]
        );
    }

    #[test]
    fn particles_inside_names() {
        assert_eq!(surfaces("We thank Maria van der Meer for help"), vec!["Maria van der Meer"]);
        // A trailing particle with nothing after it is not part of the name.
        assert_eq!(surfaces("Maria Smith van the"), vec!["Maria Smith"]);
    }

    #[test]
    fn hyphens_apostrophes_and_diacritics() {
        assert_eq!(
            surfaces("We thank Megan Lloyd-Jones, Seán O'Brien and Jürgen Müller."),
            vec!["Megan Lloyd-Jones", "Seán O'Brien", "Jürgen Müller"]
        );
    }

    #[test]
    fn compact_initials_and_digits() {
        assert_eq!(surfaces("J.R. Smith (R01GM12345) helped"), vec!["J.R. Smith"]);
        assert!(surfaces("grant PI15 and R01").is_empty());
    }

    #[test]
    fn spans_are_sound() {
        let text = "Dr. Zoë Ålund, Mr. Kim and Søren Ødegaard provided samples.";
        for c in extract_candidates(text) {
            assert_eq!(&text[c.span.0..c.span.1], c.surface);
            assert!(!c.tokens.is_empty());
        }
    }

    #[test]
    fn recognizer_descriptor() {
        assert_eq!(recognizer_info(), "rule-ner v1");
        assert_eq!(recognizer_info(), recognizer_info());
    }

    #[test]
    fn overrides() {
        let r = Recognizer::default().with_honorifics(["Sir"]);
        let c: Vec<String> = r.extract("Sir Isaac Newton and Dr Who").into_iter().map(|c| c.surface).collect();
        assert_eq!(c, vec!["Isaac Newton", "Dr Who"]);
        let r = Recognizer::default().with_stopwords(Vec::<&str>::new());
        let c: Vec<String> = r.extract("We thank").into_iter().map(|c| c.surface).collect();
        assert_eq!(c, vec!["We"]);
    }
}
