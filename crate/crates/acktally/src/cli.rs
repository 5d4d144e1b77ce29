//! Command-line interface.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use acktally_core::synth::{blacklist_text, evaluate, lexicon_lines, Generator, GeneratorConfig, GroundTruth, TruthEntry};
use acktally_core::{LinkageKey, NameRules};
use clap::{ArgAction, Args, Parser, Subcommand};

use crate::ingest::record_to_line;
use crate::pipeline::{self, RunConfig, RunError};
use crate::report::{FigureKind, DEFAULT_K_MAX};

#[derive(Debug, Parser)]
#[command(name = "acktally", version, about = "Count acknowledged people and authors per discipline")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extract acknowledgees from a corpus and write tables, charts and audit trail.
    Run(RunArgs),
    /// Recompute tables and charts from a saved summaries file.
    Report(ReportArgs),
    /// Write a synthetic corpus with lexicon, blacklist and ground truth.
    Generate(GenerateArgs),
    /// Score a run's accepted acknowledgees against ground truth.
    Evaluate(EvaluateArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Corpus in JSON Lines format.
    #[arg(long)]
    pub corpus: PathBuf,
    /// Surname benchmark list, one surname per line.
    #[arg(long)]
    pub lexicon: PathBuf,
    /// Full names of non-person entities, one per line.
    #[arg(long)]
    pub blacklist: PathBuf,
    /// `journal,discipline` table; when given it is the only discipline source.
    #[arg(long)]
    pub discipline_map: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Abort on a malformed corpus line (default); `--strict=false` skips it.
    #[arg(long, num_args = 0..=1, default_value_t = true, default_missing_value = "true", action = ArgAction::Set)]
    pub strict: bool,
    #[arg(long, default_value_t = DEFAULT_K_MAX)]
    pub k_max: u32,
    /// Replacement honorific list.
    #[arg(long)]
    pub honorifics: Option<PathBuf>,
    /// Replacement stopword list.
    #[arg(long)]
    pub stopwords: Option<PathBuf>,
    /// Extra lowercase name particles.
    #[arg(long)]
    pub particles: Option<PathBuf>,
    /// Figures to emit (default: all).
    #[arg(long = "figure", value_name = "fig1|fig2|fig3|fig4")]
    pub figures: Vec<FigureKind>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub summaries: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = DEFAULT_K_MAX)]
    pub k_max: u32,
    #[arg(long = "figure", value_name = "fig1|fig2|fig3|fig4")]
    pub figures: Vec<FigureKind>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    /// Total records spread over the twelve default disciplines.
    #[arg(long, conflicts_with = "per_discipline", default_value_t = 10_000)]
    pub records: u32,
    /// Records for each of the twelve default disciplines.
    #[arg(long)]
    pub per_discipline: Option<u32>,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub audit: PathBuf,
    #[arg(long)]
    pub summaries: PathBuf,
    #[arg(long)]
    pub truth: PathBuf,
}

fn figures_or_all(f: Vec<FigureKind>) -> Vec<FigureKind> {
    if f.is_empty() {
        FigureKind::ALL.to_vec()
    } else {
        let mut f = f;
        f.sort();
        f.dedup();
        f
    }
}

pub fn main_with(cli: Cli) -> ExitCode {
    let result = match cli.command {
        Command::Run(a) => run(a),
        Command::Report(a) => pipeline::run_report(&a.summaries, &a.out, a.k_max, &figures_or_all(a.figures)).map(|files| {
            log::info!("wrote {} files to {}", files.len(), a.out.display());
        }),
        Command::Generate(a) => generate(a),
        Command::Evaluate(a) => evaluate_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("acktally: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(a: RunArgs) -> Result<(), RunError> {
    let config = RunConfig {
        corpus: a.corpus,
        lexicon: a.lexicon,
        blacklist: a.blacklist,
        discipline_map: a.discipline_map,
        out: a.out,
        workers: a.workers,
        strict: a.strict,
        k_max: a.k_max,
        honorifics: a.honorifics,
        stopwords: a.stopwords,
        particles: a.particles,
        figures: figures_or_all(a.figures),
    };
    let m = pipeline::run_pipeline(&config)?;
    log::info!(
        "{} records ({} skipped), {} with acknowledgement text, {} naming a person",
        m.counts.records,
        m.counts.skipped_lines,
        m.counts.with_ack_text,
        m.counts.with_acknowledgee
    );
    Ok(())
}

fn generate(a: GenerateArgs) -> Result<(), RunError> {
    let config = match a.per_discipline {
        Some(n) => GeneratorConfig::with_default_profiles(a.seed, n),
        None => GeneratorConfig::default_total(a.seed, a.records),
    }
    .map_err(|e| RunError::Input(e.to_string()))?;
    let generator = Generator::new(&config).map_err(|e| RunError::Input(e.to_string()))?;
    let out_err = |p: &Path, e: std::io::Error| RunError::Output(format!("{}: {e}", p.display()));
    fs::create_dir_all(&a.out).map_err(|e| out_err(&a.out, e))?;
    let create = |name: &str| {
        let p = a.out.join(name);
        File::create(&p).map(BufWriter::new).map_err(|e| out_err(&p, e))
    };
    let mut corpus = create("corpus.jsonl")?;
    let mut truth = create("truth.jsonl")?;
    for g in generator {
        writeln!(corpus, "{}", record_to_line(&g.record, None)).map_err(|e| out_err(&a.out, e))?;
        let line = serde_json::to_string(&g.truth).expect("truth serializes");
        writeln!(truth, "{line}").map_err(|e| out_err(&a.out, e))?;
    }
    for mut w in [corpus, truth] {
        w.flush().map_err(|e| out_err(&a.out, e))?;
    }
    let mut lexicon = lexicon_lines().join("\n");
    lexicon.push('\n');
    fs::write(a.out.join("lexicon.txt"), lexicon).map_err(|e| out_err(&a.out, e))?;
    fs::write(a.out.join("blacklist.txt"), blacklist_text()).map_err(|e| out_err(&a.out, e))?;
    log::info!("wrote {} records to {}", config.total_records(), a.out.display());
    Ok(())
}

pub fn read_truth<R: BufRead>(reader: R) -> Result<GroundTruth, String> {
    let mut truth = GroundTruth::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| e.to_string())?;
        if line.trim().is_empty() {
            continue;
        }
        let entry: TruthEntry = serde_json::from_str(&line).map_err(|e| format!("line {}: {e}", i + 1))?;
        truth.insert(entry.id.clone(), entry);
    }
    Ok(truth)
}

fn evaluate_cmd(a: EvaluateArgs) -> Result<(), RunError> {
    let open = |p: &Path| File::open(p).map(BufReader::new).map_err(|e| RunError::Input(format!("{}: {e}", p.display())));
    let accepted = pipeline::read_accepted(open(&a.audit)?, open(&a.summaries)?).map_err(RunError::Parse)?;
    let truth = read_truth(open(&a.truth)?).map_err(|e| RunError::Parse(format!("{}: {e}", a.truth.display())))?;
    let rules = NameRules::default();
    let extracted: BTreeMap<String, BTreeSet<LinkageKey>> = accepted
        .into_iter()
        .map(|(id, names)| (id, names.iter().filter_map(|n| rules.normalize(n).ok()).map(|n| n.linkage_key()).collect()))
        .collect();
    let eval = evaluate(&extracted, &truth, &rules).map_err(|e| RunError::Parse(e.to_string()))?;
    let o = eval.overall;
    let fmt = |v: Option<f64>| v.map_or_else(|| "n/a".to_owned(), |v| format!("{v:.4}"));
    println!("records\t{}", eval.per_record.len());
    println!("planted\t{}", o.planted);
    println!("extracted\t{}", o.extracted);
    println!("matched\t{}", o.matched);
    println!("precision\t{}", fmt(o.precision()));
    println!("recall\t{}", fmt(o.recall()));
    Ok(())
}
