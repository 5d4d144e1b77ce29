use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use acktally::pipeline::{sha256_hex, RunManifest};

const BIN: &str = env!("CARGO_BIN_EXE_acktally");

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn acktally(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env("RUST_LOG", "warn").output().expect("binary runs")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn run_fixture(corpus: &Path, out: &Path, extra: &[&str]) -> Output {
    let lexicon = fixture("lexicon.txt");
    let blacklist = fixture("blacklist.txt");
    let mut args =
        vec!["run", "--corpus", p(corpus), "--lexicon", p(&lexicon), "--blacklist", p(&blacklist), "--out", p(out)];
    args.extend_from_slice(extra);
    acktally(&args)
}

fn files_in(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().into_string().unwrap(), fs::read(e.path()).unwrap())
        })
        .collect()
}

const EXPECTED_FILES: [&str; 14] = [
    "audit.csv",
    "dispersion.csv",
    "fig1.csv",
    "fig1.svg",
    "fig2.csv",
    "fig2.svg",
    "fig3.csv",
    "fig3.svg",
    "fig4.csv",
    "fig4.svg",
    "manifest.json",
    "single_author.csv",
    "summaries.csv",
    "table1.csv",
];

#[test]
fn smoke_run_on_twelve_records() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let map = fixture("disciplines.csv");
    let o = run_fixture(&fixture("corpus12.jsonl"), &out, &["--discipline-map", p(&map)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let files = files_in(&out);
    assert_eq!(files.keys().map(String::as_str).collect::<Vec<_>>(), EXPECTED_FILES);

    let manifest: RunManifest = serde_json::from_slice(&files["manifest.json"]).unwrap();
    for (digest, path) in [
        (&manifest.corpus, fixture("corpus12.jsonl")),
        (&manifest.lexicon, fixture("lexicon.txt")),
        (&manifest.blacklist, fixture("blacklist.txt")),
        (manifest.discipline_map.as_ref().unwrap(), map.clone()),
    ] {
        let bytes = fs::read(&path).unwrap();
        assert_eq!(digest.sha256, sha256_hex(&bytes), "{}", path.display());
        assert_eq!(digest.bytes, bytes.len() as u64);
    }
    assert_eq!(manifest.outputs.len(), EXPECTED_FILES.len() - 1);
    for d in &manifest.outputs {
        assert_eq!(d.sha256, sha256_hex(&files[&d.path]), "{}", d.path);
    }
    assert_eq!(manifest.recognizer, "rule-ner v1");
    assert_eq!((manifest.counts.records, manifest.counts.with_ack_text, manifest.counts.with_acknowledgee), (12, 10, 6));

    let summaries = String::from_utf8(files["summaries.csv"].clone()).unwrap();
    let acks: Vec<&str> = summaries.lines().skip(1).map(|l| l.split(',').nth(3).unwrap()).collect();
    assert_eq!(acks, ["0", "2", "1", "0", "3", "0", "0", "0", "3", "0", "2", "2"]);
    let audit = String::from_utf8(files["audit.csv"].clone()).unwrap();
    assert_eq!(audit.lines().filter(|l| l.starts_with("r01,") && l.ends_with("self_author,byline")).count(), 3);
    for name in ["Frederick Banting", "Marie Curie", "Boehringer Ingelheim", "Instituto de Salud Carlos III"] {
        assert!(audit.lines().any(|l| l.contains(name) && l.ends_with("blacklisted,blacklist")), "{name}");
    }
    assert!(audit.contains("r05,Anna Weber,anna weber,duplicate_in_paper,dedup"));
}

fn generated(dir: &Path, records: &str) -> PathBuf {
    let gen = dir.join("gen");
    let o = acktally(&["generate", "--seed", "11", "--records", records, "--out", p(&gen)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    gen
}

fn run_generated(gen: &Path, out: &Path, workers: &str) -> Output {
    acktally(&[
        "run",
        "--corpus",
        p(&gen.join("corpus.jsonl")),
        "--lexicon",
        p(&gen.join("lexicon.txt")),
        "--blacklist",
        p(&gen.join("blacklist.txt")),
        "--out",
        p(out),
        "--workers",
        workers,
    ])
}

#[test]
fn worker_count_does_not_change_outputs() {
    let dir = tempfile::tempdir().unwrap();
    // More records than one batch, so several batches are scheduled.
    let gen = generated(dir.path(), "20000");
    let mut runs = Vec::new();
    for workers in ["1", "8"] {
        let out = dir.path().join(format!("w{workers}"));
        assert!(run_generated(&gen, &out, workers).status.success());
        let mut files = files_in(&out);
        files.remove("manifest.json").unwrap();
        runs.push(files);
    }
    assert_eq!(runs[0].len(), EXPECTED_FILES.len() - 1);
    assert!(runs[0] == runs[1], "outputs differ between 1 and 8 workers");
}

#[test]
fn evaluate_scores_a_generated_run() {
    let dir = tempfile::tempdir().unwrap();
    let gen = generated(dir.path(), "1200");
    let out = dir.path().join("out");
    assert!(run_generated(&gen, &out, "2").status.success());
    let o = acktally(&[
        "evaluate",
        "--audit",
        p(&out.join("audit.csv")),
        "--summaries",
        p(&out.join("summaries.csv")),
        "--truth",
        p(&gen.join("truth.jsonl")),
    ]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("records\t1200"), "{text}");
    assert!(text.contains("precision\t1.0000") && text.contains("recall\t1.0000"), "{text}");
}

fn corpus_with_bad_line(dir: &Path) -> PathBuf {
    let mut text = fs::read_to_string(fixture("corpus12.jsonl")).unwrap();
    let insert_at = text.match_indices('\n').nth(5).unwrap().0 + 1;
    text.insert_str(insert_at, "{\"id\":\"bad\",\"year\":2015,\n");
    let path = dir.join("bad.jsonl");
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn strict_mode_aborts_without_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = run_fixture(&corpus_with_bad_line(dir.path()), &out, &[]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 7"));
    assert!(files_in(&out).is_empty(), "{:?}", files_in(&out).keys().collect::<Vec<_>>());
}

#[test]
fn lenient_mode_skips_and_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = run_fixture(&corpus_with_bad_line(dir.path()), &out, &["--strict=false"]);
    assert!(o.status.success());
    let manifest: RunManifest = serde_json::from_slice(&fs::read(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!((manifest.counts.records, manifest.counts.skipped_lines), (12, 1));
    assert!(!manifest.config.strict);
}

#[test]
fn unmapped_journal_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("map.csv");
    fs::write(&map, "Cell Reports,Biology\n").unwrap();
    let o = run_fixture(&fixture("corpus12.jsonl"), &dir.path().join("out"), &["--discipline-map", p(&map)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Physical Review B"));
}

#[test]
fn missing_input_and_unwritable_output() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_fixture(&dir.path().join("absent.jsonl"), &dir.path().join("out"), &[]);
    assert_eq!(o.status.code(), Some(2));
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let o = run_fixture(&fixture("corpus12.jsonl"), &blocker.join("out"), &[]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn charts_are_standalone_svg() {
    let dir = tempfile::tempdir().unwrap();
    let gen = generated(dir.path(), "2400");
    let out = dir.path().join("out");
    assert!(run_generated(&gen, &out, "1").status.success());
    for kind in ["fig1", "fig2", "fig3", "fig4"] {
        let text = fs::read_to_string(out.join(format!("{kind}.svg"))).unwrap();
        let doc = roxmltree::Document::parse(&text).unwrap_or_else(|e| panic!("{kind}: {e}"));
        let root = doc.root_element();
        assert_eq!(root.tag_name().name(), "svg");
        assert_eq!(root.tag_name().namespace(), Some("http://www.w3.org/2000/svg"));
        for node in doc.descendants().filter(|n| n.is_element()) {
            for attr in node.attributes() {
                assert!(attr.name() != "href", "{kind}: external reference");
                assert!(!attr.value().contains("url("), "{kind}: external reference");
            }
            assert!(!matches!(node.tag_name().name(), "image" | "use" | "script" | "foreignObject"));
        }
        assert!(doc.descendants().filter(|n| n.has_tag_name("polyline") || n.has_tag_name("rect")).count() > 12);
    }
    let fig2 = fs::read_to_string(out.join("fig2.svg")).unwrap();
    assert!(fig2.contains("log scale"));
    for tick in [">1<", ">10<", ">100<"] {
        assert!(fig2.contains(tick), "fig2 lacks power-of-ten tick {tick}");
    }
}

#[test]
fn report_recomputes_the_run_tables() {
    let dir = tempfile::tempdir().unwrap();
    let gen = generated(dir.path(), "3000");
    let out = dir.path().join("out");
    assert!(run_generated(&gen, &out, "3").status.success());
    let again = dir.path().join("again");
    let o = acktally(&["report", "--summaries", p(&out.join("summaries.csv")), "--out", p(&again)]);
    assert!(o.status.success());
    let first = files_in(&out);
    let second = files_in(&again);
    assert_eq!(second.len(), 11);
    for (name, bytes) in &second {
        assert!(first[name] == *bytes, "{name} differs");
    }
}

#[test]
fn table_percentages_follow_from_counts() {
    let dir = tempfile::tempdir().unwrap();
    let gen = generated(dir.path(), "6000");
    let out = dir.path().join("out");
    assert!(run_generated(&gen, &out, "2").status.success());
    let mut reader = csv::Reader::from_path(out.join("table1.csv")).unwrap();
    let mut rows = 0;
    for row in reader.records() {
        let row = row.unwrap();
        let n: Vec<f64> = [1, 2, 4].iter().map(|&i| row[i].parse().unwrap()).collect();
        let pct = |i: usize| row[i].parse::<f64>().unwrap();
        assert!((pct(3) - 100.0 * n[1] / n[0]).abs() <= 0.05 + 1e-9);
        assert!((pct(5) - 100.0 * n[2] / n[1]).abs() <= 0.05 + 1e-9);
        assert!((pct(6) - 100.0 * n[2] / n[0]).abs() <= 0.05 + 1e-9);
        rows += 1;
    }
    assert_eq!(rows, 13);
    let mut reader = csv::Reader::from_path(out.join("fig4.csv")).unwrap();
    let mut per_discipline: BTreeMap<String, usize> = BTreeMap::new();
    for row in reader.records() {
        *per_discipline.entry(row.unwrap()[0].to_owned()).or_default() += 1;
    }
    assert!(per_discipline.values().all(|&n| n <= 9));
}
