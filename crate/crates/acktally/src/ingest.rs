//! Corpus, lexicon, blacklist and discipline-map readers.
//!
//! The corpus is JSON Lines: one record object per line. Reading is
//! streaming; each line is parsed on its own and nothing is retained
//! between lines.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, BufRead, Read};

use acktally_core::lexicon::SkippedEntry;
use acktally_core::{AuthorName, Blacklist, Discipline, DocType, NameRules, Record, SurnameSet};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct WireAuthor {
    given: String,
    surname: String,
}

/// On-disk shape of one corpus line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct WireRecord {
    id: String,
    year: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    discipline: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    journal: Option<String>,
    doc_type: DocType,
    authors: Vec<WireAuthor>,
    #[serde(default)]
    ack_text: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LineError {
    #[error("invalid UTF-8")]
    Encoding,
    #[error("{0}")]
    Json(String),
    #[error("{0}")]
    Record(#[from] acktally_core::RecordError),
    #[error("no discipline given and no discipline map loaded")]
    NoDiscipline,
    #[error("no journal to look up in the discipline map")]
    NoJournal,
    #[error("journal {0:?} is not in the discipline map")]
    UnmappedJournal(String),
}

/// A corpus line that could not be turned into a record.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {cause}")]
pub struct MalformedLine {
    /// One-based line number.
    pub line: u64,
    pub cause: LineError,
}

/// Journal to discipline assignment. When a map is in use it is the only
/// source of disciplines; inline labels are ignored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DisciplineMap {
    by_journal: BTreeMap<String, Discipline>,
}

impl DisciplineMap {
    /// Reads `journal,discipline` rows. A first row reading
    /// `journal,discipline` is taken as a header.
    pub fn from_reader<R: Read>(reader: R) -> io::Result<Self> {
        let mut csv = csv::ReaderBuilder::new().has_headers(false).flexible(false).from_reader(reader);
        let mut by_journal = BTreeMap::new();
        for (i, row) in csv.records().enumerate() {
            let row = row.map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
            if row.len() != 2 {
                return Err(io::Error::new(io::ErrorKind::InvalidData, format!("row {}: expected 2 columns", i + 1)));
            }
            let (journal, discipline) = (row[0].trim(), row[1].trim());
            if i == 0 && journal.eq_ignore_ascii_case("journal") && discipline.eq_ignore_ascii_case("discipline") {
                continue;
            }
            by_journal.insert(journal.to_owned(), Discipline::new(discipline));
        }
        Ok(DisciplineMap { by_journal })
    }

    pub fn get(&self, journal: &str) -> Option<&Discipline> {
        self.by_journal.get(journal.trim())
    }

    pub fn len(&self) -> usize {
        self.by_journal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_journal.is_empty()
    }
}

/// Parses one corpus line.
pub fn parse_line(text: &str, map: Option<&DisciplineMap>) -> Result<Record, LineError> {
    let wire: WireRecord = serde_json::from_str(text).map_err(|e| LineError::Json(e.to_string()))?;
    let discipline = match map {
        Some(map) => {
            let journal = wire.journal.as_deref().ok_or(LineError::NoJournal)?;
            map.get(journal).cloned().ok_or_else(|| LineError::UnmappedJournal(journal.to_owned()))?
        }
        None => Discipline::new(wire.discipline.ok_or(LineError::NoDiscipline)?),
    };
    let authors = wire.authors.into_iter().map(|a| AuthorName::new(a.given, a.surname)).collect();
    Ok(Record::new(wire.id, wire.year, discipline, wire.doc_type, authors, wire.ack_text)?)
}

/// Serializes a record as one corpus line (without the newline).
pub fn record_to_line(record: &Record, journal: Option<&str>) -> String {
    let wire = WireRecord {
        id: record.id.clone(),
        year: record.year,
        discipline: Some(record.discipline.as_str().to_owned()),
        journal: journal.map(str::to_owned),
        doc_type: record.doc_type,
        authors: record
            .authors
            .iter()
            .map(|a| WireAuthor { given: a.given.clone(), surname: a.surname.clone() })
            .collect(),
        ack_text: record.ack_text.clone(),
    };
    serde_json::to_string(&wire).expect("record serialization cannot fail")
}

/// One raw corpus line with its one-based number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawLine {
    pub line: u64,
    pub text: Result<String, LineError>,
}

/// Streams the non-blank lines of a corpus without parsing them, so parsing
/// can be spread over workers.
pub struct LineReader<R> {
    inner: R,
    buf: Vec<u8>,
    line: u64,
}

impl<R: BufRead> LineReader<R> {
    pub fn new(inner: R) -> Self {
        LineReader { inner, buf: Vec::with_capacity(4096), line: 0 }
    }

    /// Next non-blank line, `None` at end of input.
    pub fn next_line(&mut self) -> io::Result<Option<RawLine>> {
        loop {
            self.buf.clear();
            if self.inner.read_until(b'\n', &mut self.buf)? == 0 {
                return Ok(None);
            }
            self.line += 1;
            let bytes = trim_newline(&self.buf);
            if bytes.iter().all(u8::is_ascii_whitespace) {
                continue;
            }
            let text = std::str::from_utf8(bytes).map(str::to_owned).map_err(|_| LineError::Encoding);
            return Ok(Some(RawLine { line: self.line, text }));
        }
    }
}

fn trim_newline(buf: &[u8]) -> &[u8] {
    let buf = buf.strip_suffix(b"\n").unwrap_or(buf);
    buf.strip_suffix(b"\r").unwrap_or(buf)
}

/// Streaming record parser over a corpus.
pub struct CorpusReader<'m, R> {
    lines: LineReader<R>,
    map: Option<&'m DisciplineMap>,
}

impl<'m, R: BufRead> CorpusReader<'m, R> {
    pub fn new(inner: R, map: Option<&'m DisciplineMap>) -> Self {
        CorpusReader { lines: LineReader::new(inner), map }
    }
}

#[derive(Debug, Error)]
pub enum ReadError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Malformed(#[from] MalformedLine),
}

impl<R: BufRead> Iterator for CorpusReader<'_, R> {
    type Item = Result<Record, ReadError>;

    fn next(&mut self) -> Option<Self::Item> {
        let raw = match self.lines.next_line() {
            Ok(Some(raw)) => raw,
            Ok(None) => return None,
            Err(e) => return Some(Err(e.into())),
        };
        let line = raw.line;
        let parsed = raw.text.and_then(|text| parse_line(&text, self.map));
        Some(parsed.map_err(|cause| MalformedLine { line, cause }.into()))
    }
}

pub fn load_surname_set<R: BufRead>(reader: R) -> io::Result<SurnameSet> {
    let mut set = SurnameSet::default();
    for line in reader.lines() {
        set.insert(&line?);
    }
    Ok(set)
}

/// Loads a blacklist, returning entries that do not normalize to a full name.
pub fn load_blacklist<R: BufRead>(reader: R, rules: &NameRules) -> io::Result<(Blacklist, Vec<SkippedEntry>)> {
    let lines = reader.lines().collect::<io::Result<Vec<String>>>()?;
    Ok(Blacklist::from_lines(rules, lines.iter().map(String::as_str)))
}

/// One word per line; blank lines and `#` comments are ignored.
pub fn load_word_list<R: BufRead>(reader: R) -> io::Result<Vec<String>> {
    let mut words = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let word = line.trim();
        if !word.is_empty() && !word.starts_with('#') {
            words.push(word.to_owned());
        }
    }
    Ok(words)
}

impl fmt::Display for RawLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.text {
            Ok(t) => write!(f, "{}: {t}", self.line),
            Err(e) => write!(f, "{}: <{e}>", self.line),
        }
    }
}
