//! The `run` and `report` drivers.
//!
//! Corpus lines are read in fixed-size batches. Each batch is parsed,
//! recognized and cleaned in parallel, then written and folded in input
//! order on the calling thread, so outputs do not depend on the worker
//! count and memory does not grow with the corpus.

use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use acktally_core::{
    summarize, AggregateSet, Blacklist, Cleaner, CleaningOutcome, ContributorSummary, Discipline, NameRules,
    Recognizer, SurnameSet,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::ingest::{self, DisciplineMap, LineReader, MalformedLine, RawLine};
use crate::report::{self, FigureKind};

pub const BATCH_LINES: usize = 8192;
pub const SUMMARIES_FILE: &str = "summaries.csv";
pub const AUDIT_FILE: &str = "audit.csv";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const SUMMARY_HEADER: [&str; 5] = ["id", "discipline", "n_authors", "n_acknowledgees", "has_ack_text"];
pub const AUDIT_HEADER: [&str; 5] = ["id", "surface", "normalized", "verdict", "stage"];

#[derive(Debug, Error)]
pub enum RunError {
    #[error("input error: {0}")]
    Input(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("output error: {0}")]
    Output(String),
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Input(_) => 2,
            RunError::Parse(_) => 3,
            RunError::Output(_) => 4,
        }
    }

    fn input(path: &Path, e: impl std::fmt::Display) -> Self {
        RunError::Input(format!("{}: {e}", path.display()))
    }

    fn output(path: &Path, e: impl std::fmt::Display) -> Self {
        RunError::Output(format!("{}: {e}", path.display()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub corpus: PathBuf,
    pub lexicon: PathBuf,
    pub blacklist: PathBuf,
    pub discipline_map: Option<PathBuf>,
    pub out: PathBuf,
    pub workers: usize,
    /// Abort on the first malformed corpus line instead of skipping it.
    pub strict: bool,
    pub k_max: u32,
    pub honorifics: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub particles: Option<PathBuf>,
    pub figures: Vec<FigureKind>,
}

impl RunConfig {
    pub fn new(corpus: impl Into<PathBuf>, lexicon: impl Into<PathBuf>, blacklist: impl Into<PathBuf>, out: impl Into<PathBuf>) -> Self {
        RunConfig {
            corpus: corpus.into(),
            lexicon: lexicon.into(),
            blacklist: blacklist.into(),
            discipline_map: None,
            out: out.into(),
            workers: 1,
            strict: true,
            k_max: report::DEFAULT_K_MAX,
            honorifics: None,
            stopwords: None,
            particles: None,
            figures: FigureKind::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunCounts {
    pub records: u64,
    pub skipped_lines: u64,
    pub with_ack_text: u64,
    pub with_acknowledgee: u64,
    pub candidates: u64,
    pub accepted: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigSnapshot {
    pub workers: usize,
    pub strict: bool,
    pub k_max: u32,
    pub figures: Vec<String>,
    pub batch_lines: usize,
}

/// Provenance of one run: what went in, how it was configured, what came out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub recognizer: String,
    pub created_unix: u64,
    pub corpus: FileDigest,
    pub lexicon: FileDigest,
    pub blacklist: FileDigest,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discipline_map: Option<FileDigest>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub word_lists: Vec<FileDigest>,
    pub config: ConfigSnapshot,
    pub counts: RunCounts,
    pub skipped_blacklist_lines: Vec<usize>,
    pub outputs: Vec<FileDigest>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Reader that hashes everything read through it.
struct HashingReader<R> {
    inner: R,
    hasher: Sha256,
    bytes: u64,
}

impl<R: Read> Read for HashingReader<R> {
    fn read(&mut self, buf: &mut [u8]) -> io::Result<usize> {
        let n = self.inner.read(buf)?;
        self.hasher.update(&buf[..n]);
        self.bytes += n as u64;
        Ok(n)
    }
}

fn read_input(path: &Path) -> Result<(Vec<u8>, FileDigest), RunError> {
    let bytes = fs::read(path).map_err(|e| RunError::input(path, e))?;
    let digest = FileDigest { path: path.display().to_string(), sha256: sha256_hex(&bytes), bytes: bytes.len() as u64 };
    Ok((bytes, digest))
}

fn word_list(path: &Option<PathBuf>, digests: &mut Vec<FileDigest>) -> Result<Option<Vec<String>>, RunError> {
    let Some(path) = path else { return Ok(None) };
    let (bytes, digest) = read_input(path)?;
    digests.push(digest);
    ingest::load_word_list(bytes.as_slice()).map(Some).map_err(|e| RunError::input(path, e))
}

/// Output files written as `<name>.partial` and renamed once complete.
/// Dropping without `commit` removes them.
struct PartialFiles {
    dir: PathBuf,
    names: Vec<&'static str>,
    committed: bool,
}

impl PartialFiles {
    fn partial(&self, name: &str) -> PathBuf {
        self.dir.join(format!("{name}.partial"))
    }

    fn commit(mut self) -> io::Result<()> {
        for name in &self.names {
            fs::rename(self.partial(name), self.dir.join(name))?;
        }
        self.committed = true;
        Ok(())
    }
}

impl Drop for PartialFiles {
    fn drop(&mut self) {
        if !self.committed {
            for name in &self.names {
                let _ = fs::remove_file(self.partial(name));
            }
        }
    }
}

struct Processed {
    summary: ContributorSummary,
    audit: Vec<CleaningOutcome>,
}

struct Stage<'a> {
    recognizer: &'a Recognizer,
    cleaner: Cleaner<'a>,
    map: Option<&'a DisciplineMap>,
}

impl Stage<'_> {
    fn process(&self, raw: &RawLine) -> Result<Processed, MalformedLine> {
        let malformed = |cause| MalformedLine { line: raw.line, cause };
        let text = raw.text.as_ref().map_err(|e| malformed(e.clone()))?;
        let record = ingest::parse_line(text, self.map).map_err(malformed)?;
        let candidates = record.ack_text.as_deref().map(|t| self.recognizer.extract(t)).unwrap_or_default();
        let (acks, audit) = self.cleaner.clean_record(&record, &candidates);
        Ok(Processed { summary: summarize(&record, &acks), audit })
    }
}

fn csv_writer(path: &Path) -> io::Result<csv::Writer<BufWriter<File>>> {
    let file = File::create(path)?;
    Ok(csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(BufWriter::new(file)))
}

fn summary_row(s: &ContributorSummary) -> [String; 5] {
    [
        s.record_id.clone(),
        s.discipline.to_string(),
        s.n_authors.to_string(),
        s.n_acknowledgees.to_string(),
        s.has_ack_text.to_string(),
    ]
}

fn audit_row(id: &str, o: &CleaningOutcome) -> [String; 5] {
    [
        id.to_owned(),
        o.candidate.surface.clone(),
        o.normalized.as_ref().map(|n| n.canonical()).unwrap_or_default(),
        o.verdict.as_str().to_owned(),
        o.verdict.stage().to_owned(),
    ]
}

pub fn run_pipeline(config: &RunConfig) -> Result<RunManifest, RunError> {
    let rules_base = NameRules::default();
    let mut word_lists = Vec::new();
    let honorifics = word_list(&config.honorifics, &mut word_lists)?;
    let stopwords = word_list(&config.stopwords, &mut word_lists)?;
    let particles = word_list(&config.particles, &mut word_lists)?;
    let rules = match &particles {
        Some(p) => rules_base.with_extra_particles(p),
        None => rules_base,
    };
    let mut recognizer = Recognizer::default();
    if let Some(h) = honorifics {
        recognizer = recognizer.with_honorifics(h);
    }
    if let Some(s) = stopwords {
        recognizer = recognizer.with_stopwords(s);
    }
    if let Some(p) = particles {
        recognizer = recognizer.with_extra_particles(p);
    }

    let (lexicon_bytes, lexicon_digest) = read_input(&config.lexicon)?;
    let lexicon: SurnameSet =
        ingest::load_surname_set(lexicon_bytes.as_slice()).map_err(|e| RunError::input(&config.lexicon, e))?;
    drop(lexicon_bytes);
    let (blacklist_bytes, blacklist_digest) = read_input(&config.blacklist)?;
    let (blacklist, skipped): (Blacklist, _) =
        ingest::load_blacklist(blacklist_bytes.as_slice(), &rules).map_err(|e| RunError::input(&config.blacklist, e))?;
    for entry in &skipped {
        log::warn!("{}:{}: blacklist entry {:?} is not a full name; ignored", config.blacklist.display(), entry.line, entry.text);
    }
    let map = match &config.discipline_map {
        Some(path) => {
            let (bytes, digest) = read_input(path)?;
            let map = DisciplineMap::from_reader(bytes.as_slice()).map_err(|e| RunError::input(path, e))?;
            Some((map, digest))
        }
        None => None,
    };
    let corpus_file = File::open(&config.corpus).map_err(|e| RunError::input(&config.corpus, e))?;

    fs::create_dir_all(&config.out).map_err(|e| RunError::output(&config.out, e))?;
    let partials = PartialFiles { dir: config.out.clone(), names: vec![SUMMARIES_FILE, AUDIT_FILE], committed: false };
    let mut summaries = csv_writer(&partials.partial(SUMMARIES_FILE)).map_err(|e| RunError::output(&config.out, e))?;
    let mut audit = csv_writer(&partials.partial(AUDIT_FILE)).map_err(|e| RunError::output(&config.out, e))?;
    let out_err = |e: csv::Error| RunError::output(&config.out, e);
    summaries.write_record(SUMMARY_HEADER).map_err(out_err)?;
    audit.write_record(AUDIT_HEADER).map_err(out_err)?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .map_err(|e| RunError::Input(format!("cannot start {} workers: {e}", config.workers)))?;
    let stage = Stage { recognizer: &recognizer, cleaner: Cleaner::new(&lexicon, &blacklist, &rules), map: map.as_ref().map(|m| &m.0) };

    let mut hashing = HashingReader { inner: corpus_file, hasher: Sha256::new(), bytes: 0 };
    let mut lines = LineReader::new(BufReader::with_capacity(1 << 16, &mut hashing));
    let mut aggs = AggregateSet::default();
    let mut counts = RunCounts::default();
    let mut batch = Vec::with_capacity(BATCH_LINES);
    loop {
        batch.clear();
        while batch.len() < BATCH_LINES {
            match lines.next_line().map_err(|e| RunError::input(&config.corpus, e))? {
                Some(raw) => batch.push(raw),
                None => break,
            }
        }
        if batch.is_empty() {
            break;
        }
        let results: Vec<Result<Processed, MalformedLine>> = pool.install(|| batch.par_iter().map(|r| stage.process(r)).collect());
        for result in results {
            let p = match result {
                Ok(p) => p,
                Err(e) if config.strict => return Err(RunError::Parse(format!("{}: {e}", config.corpus.display()))),
                Err(e) => {
                    log::warn!("{}: {e}; skipped", config.corpus.display());
                    counts.skipped_lines += 1;
                    continue;
                }
            };
            counts.records += 1;
            counts.with_ack_text += u64::from(p.summary.has_ack_text);
            counts.with_acknowledgee += u64::from(p.summary.n_acknowledgees > 0);
            counts.candidates += p.audit.len() as u64;
            counts.accepted += u64::from(p.summary.n_acknowledgees);
            summaries.write_record(summary_row(&p.summary)).map_err(out_err)?;
            for o in &p.audit {
                audit.write_record(audit_row(&p.summary.record_id, o)).map_err(out_err)?;
            }
            aggs.fold(&p.summary);
        }
    }
    drop(lines);
    let corpus_digest = FileDigest {
        path: config.corpus.display().to_string(),
        sha256: hex::encode(hashing.hasher.finalize()),
        bytes: hashing.bytes,
    };

    for w in [summaries, audit] {
        w.into_inner().map_err(|e| RunError::output(&config.out, e.error())).and_then(|mut b| b.flush().map_err(|e| RunError::output(&config.out, e)))?;
    }
    partials.commit().map_err(|e| RunError::output(&config.out, e))?;

    let mut outputs = Vec::new();
    for name in [SUMMARIES_FILE, AUDIT_FILE] {
        outputs.push(digest_output(&config.out, name)?);
    }
    let written = report::write_reports(&config.out, &aggs, config.k_max, &config.figures)
        .map_err(|e| RunError::output(&config.out, e))?;
    for name in &written {
        outputs.push(digest_output(&config.out, name)?);
    }

    let manifest = RunManifest {
        tool: format!("acktally {}", env!("CARGO_PKG_VERSION")),
        recognizer: acktally_core::recognizer_info().to_owned(),
        created_unix: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        corpus: corpus_digest,
        lexicon: lexicon_digest,
        blacklist: blacklist_digest,
        discipline_map: map.map(|m| m.1),
        word_lists,
        config: ConfigSnapshot {
            workers: config.workers.max(1),
            strict: config.strict,
            k_max: config.k_max,
            figures: config.figures.iter().map(ToString::to_string).collect(),
            batch_lines: BATCH_LINES,
        },
        counts,
        skipped_blacklist_lines: skipped.iter().map(|s| s.line).collect(),
        outputs,
    };
    write_manifest(&config.out, &manifest)?;
    Ok(manifest)
}

fn digest_output(dir: &Path, name: &str) -> Result<FileDigest, RunError> {
    let path = dir.join(name);
    let mut hasher = Sha256::new();
    let bytes = File::open(&path)
        .and_then(|mut f| io::copy(&mut f, &mut hasher))
        .map_err(|e| RunError::output(&path, e))?;
    Ok(FileDigest { path: name.to_owned(), sha256: hex::encode(hasher.finalize()), bytes })
}

fn write_manifest(dir: &Path, manifest: &RunManifest) -> Result<(), RunError> {
    let mut json = serde_json::to_vec_pretty(manifest).expect("manifest serializes");
    json.push(b'\n');
    report::write_atomic(dir, MANIFEST_FILE, &json).map_err(|e| RunError::output(dir, e))?;
    Ok(())
}

#[derive(Debug, Deserialize)]
struct SummaryRow {
    id: String,
    discipline: String,
    n_authors: u32,
    n_acknowledgees: u32,
    has_ack_text: bool,
}

/// Reads a summaries file written by `run`.
pub fn read_summaries<R: Read>(reader: R) -> Result<Vec<ContributorSummary>, String> {
    let mut out = Vec::new();
    fold_summaries(reader, |s| out.push(s))?;
    Ok(out)
}

fn fold_summaries<R: Read>(reader: R, mut f: impl FnMut(ContributorSummary)) -> Result<(), String> {
    let mut csv = csv::Reader::from_reader(reader);
    for (i, row) in csv.deserialize::<SummaryRow>().enumerate() {
        let row = row.map_err(|e| format!("row {}: {e}", i + 1))?;
        let s = ContributorSummary::new(row.id, Discipline::new(row.discipline), row.n_authors, row.n_acknowledgees, row.has_ack_text)
            .map_err(|e| format!("row {}: {e}", i + 1))?;
        f(s);
    }
    Ok(())
}

/// Recomputes every table and figure from a saved summaries file.
pub fn run_report(summaries: &Path, out: &Path, k_max: u32, figures: &[FigureKind]) -> Result<Vec<String>, RunError> {
    let file = File::open(summaries).map_err(|e| RunError::input(summaries, e))?;
    let mut aggs = AggregateSet::default();
    fold_summaries(BufReader::new(file), |s| aggs.fold(&s)).map_err(|e| RunError::Parse(format!("{}: {e}", summaries.display())))?;
    fs::create_dir_all(out).map_err(|e| RunError::output(out, e))?;
    report::write_reports(out, &aggs, k_max, figures).map_err(|e| RunError::output(out, e))
}

/// Accepted acknowledgee names per record id from an audit file, with every
/// id of the summaries file present (possibly empty).
pub fn read_accepted<A: BufRead, S: Read>(audit: A, summaries: S) -> Result<Vec<(String, Vec<String>)>, String> {
    let mut by_id: std::collections::BTreeMap<String, Vec<String>> = std::collections::BTreeMap::new();
    fold_summaries(summaries, |s| {
        by_id.entry(s.record_id).or_default();
    })?;
    let mut csv = csv::Reader::from_reader(audit);
    for (i, row) in csv.records().enumerate() {
        let row = row.map_err(|e| format!("audit row {}: {e}", i + 1))?;
        if row.len() != AUDIT_HEADER.len() {
            return Err(format!("audit row {}: expected {} fields", i + 1, AUDIT_HEADER.len()));
        }
        if &row[3] == "accepted" {
            by_id.entry(row[0].to_owned()).or_default().push(row[2].to_owned());
        }
    }
    Ok(by_id.into_iter().collect())
}
