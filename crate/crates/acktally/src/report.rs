//! Delimited tables and SVG charts computed from finalized aggregates.

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use acktally_core::metrics::{cross_discipline_dispersion, round_to, DispersionStats};
use acktally_core::{single_author_ack_share, AggregateSet, Discipline, DisciplineAggregate, Table1Row};

use crate::svg::{color, tick_label, Anchor, Scale, Svg};

pub const TOTAL_LABEL: &str = "Total";
pub const DEFAULT_K_MAX: u32 = 9;

const FIG1_MAX_AUTHORS: u32 = 30;
const FIG2_MAX_COUNT: u32 = 50;

/// Disciplines in the standard order, then any others alphabetically.
pub fn ordered(aggs: &AggregateSet) -> Vec<&DisciplineAggregate> {
    let mut out: Vec<&DisciplineAggregate> = aggs.iter().collect();
    out.sort_by_key(|a| {
        let rank = Discipline::STANDARD.iter().position(|s| *s == a.discipline.as_str()).unwrap_or(usize::MAX);
        (rank, a.discipline.as_str().to_owned())
    });
    out
}

fn opt(v: Option<f64>, decimals: usize) -> String {
    v.map(|x| format!("{x:.decimals$}")).unwrap_or_default()
}

fn csv_bytes<I, R>(header: &[&str], rows: I) -> Vec<u8>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header).expect("writing to memory");
    for row in rows {
        w.write_record(row.into_iter().collect::<Vec<_>>()).expect("writing to memory");
    }
    w.into_inner().expect("flushing to memory")
}

/// Table 1 rows sorted by share of all papers with acknowledgees, largest
/// first, with the pooled total last. Empty input gives no rows.
pub fn table1_rows(aggs: &AggregateSet) -> Vec<Table1Row> {
    if aggs.is_empty() {
        return Vec::new();
    }
    let mut rows: Vec<Table1Row> = aggs.iter().map(DisciplineAggregate::table1_row).collect();
    rows.sort_by(|a, b| {
        let share = |r: &Table1Row| r.n_with_acknowledgee as f64 / r.n_papers.max(1) as f64;
        share(b).total_cmp(&share(a)).then_with(|| a.discipline.cmp(&b.discipline))
    });
    rows.push(aggs.total(TOTAL_LABEL).table1_row());
    rows
}

pub const TABLE1_HEADER: [&str; 7] =
    ["discipline", "N", "N_ack", "pct_ack", "N_acknowledgee", "pct_of_ack", "pct_of_total"];

pub fn table1_csv(rows: &[Table1Row]) -> Vec<u8> {
    csv_bytes(
        &TABLE1_HEADER,
        rows.iter().map(|r| {
            [
                r.discipline.clone(),
                r.n_papers.to_string(),
                r.n_with_ack.to_string(),
                opt(r.pct_ack(), 1),
                r.n_with_acknowledgee.to_string(),
                opt(r.pct_of_ack(), 1),
                opt(r.pct_of_total(), 1),
            ]
        }),
    )
}

/// Cross-discipline spread of the per-discipline means.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionReport {
    pub disciplines: usize,
    pub authors: Option<DispersionStats>,
    pub acknowledgees: Option<DispersionStats>,
    pub contributors: Option<DispersionStats>,
}

pub fn dispersion(aggs: &AggregateSet) -> DispersionReport {
    let means: Vec<_> = aggs.iter().filter_map(DisciplineAggregate::mean_counts).collect();
    let of = |f: fn(&acktally_core::MeanCounts) -> f64| cross_discipline_dispersion(&means.iter().map(f).collect::<Vec<_>>());
    DispersionReport {
        disciplines: means.len(),
        authors: of(|m| m.mean_authors),
        acknowledgees: of(|m| m.mean_acknowledgees),
        contributors: of(|m| m.mean_contributors),
    }
}

pub fn dispersion_csv(d: &DispersionReport) -> Vec<u8> {
    let row = |name: &str, s: Option<DispersionStats>| {
        [
            name.to_owned(),
            d.disciplines.to_string(),
            opt(s.map(|s| s.mean), 2),
            opt(s.map(|s| s.sd), 2),
            s.and_then(|s| s.rsd_percent()).map(|r| r.to_string()).unwrap_or_default(),
        ]
    };
    csv_bytes(
        &["measure", "disciplines", "M", "SD", "RSD"],
        [row("authors", d.authors), row("acknowledgees", d.acknowledgees), row("contributors", d.contributors)],
    )
}

pub fn single_author_csv(aggs: &AggregateSet) -> Vec<u8> {
    let row = |label: &str, parts: &[&DisciplineAggregate]| {
        let single: u64 = parts.iter().map(|a| a.authors.get(1)).sum();
        let with: u64 = parts.iter().map(|a| a.single_author_with_acknowledgee).sum();
        let pct = single_author_ack_share(parts.iter().copied()).map(|p| round_to(p, 1));
        [label.to_owned(), single.to_string(), with.to_string(), opt(pct, 1)]
    };
    let all = ordered(aggs);
    let mut rows: Vec<[String; 4]> = all.iter().map(|a| row(a.discipline.as_str(), &[*a])).collect();
    if !all.is_empty() {
        rows.push(row(TOTAL_LABEL, &all));
    }
    csv_bytes(&["discipline", "single_author_papers", "with_acknowledgee", "pct"], rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FigureKind {
    /// Cumulative distribution of papers by number of authors.
    Fig1,
    /// Paper counts by number of authors and of acknowledgees, log scale.
    Fig2,
    /// Mean authors and acknowledgees per discipline.
    Fig3,
    /// Mean acknowledgees by number of authors.
    Fig4,
}

impl FigureKind {
    pub const ALL: [FigureKind; 4] = [FigureKind::Fig1, FigureKind::Fig2, FigureKind::Fig3, FigureKind::Fig4];

    pub fn stem(self) -> &'static str {
        match self {
            FigureKind::Fig1 => "fig1",
            FigureKind::Fig2 => "fig2",
            FigureKind::Fig3 => "fig3",
            FigureKind::Fig4 => "fig4",
        }
    }
}

impl fmt::Display for FigureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.stem())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown figure {0:?} (expected fig1, fig2, fig3 or fig4)")]
pub struct UnknownFigure(pub String);

impl FromStr for FigureKind {
    type Err = UnknownFigure;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FigureKind::ALL.into_iter().find(|k| k.stem() == s.trim()).ok_or_else(|| UnknownFigure(s.to_owned()))
    }
}

/// Data table and chart for one figure.
pub fn figure(kind: FigureKind, aggs: &AggregateSet, k_max: u32) -> (Vec<u8>, String) {
    let discs = ordered(aggs);
    match kind {
        FigureKind::Fig1 => (fig1_csv(&discs), fig1_svg(&discs)),
        FigureKind::Fig2 => (fig2_csv(&discs), fig2_svg(&discs)),
        FigureKind::Fig3 => (fig3_csv(&discs), fig3_svg(&discs)),
        FigureKind::Fig4 => (fig4_csv(&discs, k_max), fig4_svg(&discs, k_max)),
    }
}

fn fig1_csv(discs: &[&DisciplineAggregate]) -> Vec<u8> {
    let rows = discs.iter().flat_map(|a| {
        a.cumulative_author_distribution()
            .into_iter()
            .map(move |(k, pct)| [a.discipline.to_string(), k.to_string(), format!("{:.1}", round_to(pct, 1))])
    });
    csv_bytes(&["discipline", "authors", "cumulative_pct"], rows)
}

fn fig2_csv(discs: &[&DisciplineAggregate]) -> Vec<u8> {
    let rows = discs.iter().flat_map(|a| {
        let authors = a.authors.iter().map(move |(k, n)| [a.discipline.to_string(), "authors".into(), k.to_string(), n.to_string()]);
        let acks = a
            .acknowledgees
            .iter()
            .map(move |(k, n)| [a.discipline.to_string(), "acknowledgees".into(), k.to_string(), n.to_string()]);
        authors.chain(acks)
    });
    csv_bytes(&["discipline", "series", "count", "papers"], rows)
}

fn fig3_csv(discs: &[&DisciplineAggregate]) -> Vec<u8> {
    let rows = discs.iter().filter_map(|a| {
        let m = a.mean_counts()?;
        Some([
            a.discipline.to_string(),
            a.n_analysed().to_string(),
            format!("{:.3}", m.mean_authors),
            format!("{:.3}", m.mean_acknowledgees),
            format!("{:.3}", m.mean_contributors),
            m.author_range.0.to_string(),
            m.author_range.1.to_string(),
            m.acknowledgee_range.0.to_string(),
            m.acknowledgee_range.1.to_string(),
        ])
    });
    csv_bytes(
        &[
            "discipline",
            "papers",
            "mean_authors",
            "mean_acknowledgees",
            "mean_contributors",
            "min_authors",
            "max_authors",
            "min_acknowledgees",
            "max_acknowledgees",
        ],
        rows,
    )
}

fn fig4_csv(discs: &[&DisciplineAggregate], k_max: u32) -> Vec<u8> {
    let rows = discs.iter().flat_map(|a| {
        a.mean_acks_by_author_count(k_max).into_iter().map(move |(k, mean)| {
            let papers = a.by_author_count.get(&k).map_or(0, |b| b.papers);
            [a.discipline.to_string(), k.to_string(), papers.to_string(), opt(mean, 3)]
        })
    });
    csv_bytes(&["discipline", "authors", "papers", "mean_acknowledgees"], rows)
}

const W: f64 = 760.0;
const H: f64 = 480.0;
const LEFT: f64 = 60.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 420.0;
const PLOT_RIGHT: f64 = 560.0;

fn axes(svg: &mut Svg, x: &Scale, y: &Scale, (left, right): (f64, f64), x_label: &str, y_label: &str) {
    svg.line((left, BOTTOM), (right, BOTTOM), "black", 1.0);
    svg.line((left, TOP), (left, BOTTOM), "black", 1.0);
    for t in x.ticks() {
        let px = x.map(t);
        svg.line((px, BOTTOM), (px, BOTTOM + 4.0), "black", 1.0);
        svg.text((px, BOTTOM + 16.0), &tick_label(t), Anchor::Middle, 10.0);
    }
    for t in y.ticks() {
        let py = y.map(t);
        svg.line((left - 4.0, py), (left, py), "black", 1.0);
        svg.line((left, py), (right, py), "#e0e0e0", 0.5);
        svg.text((left - 6.0, py + 3.0), &tick_label(t), Anchor::End, 10.0);
    }
    svg.text(((left + right) / 2.0, BOTTOM + 34.0), x_label, Anchor::Middle, 11.0);
    svg.vertical_text((left - 40.0, (TOP + BOTTOM) / 2.0), y_label, 11.0);
}

fn legend(svg: &mut Svg, discs: &[&DisciplineAggregate], x: f64) {
    for (i, a) in discs.iter().enumerate() {
        let y = TOP + 16.0 * i as f64;
        svg.rect((x, y), (10.0, 10.0), color(i));
        svg.text((x + 14.0, y + 9.0), a.discipline.as_str(), Anchor::Start, 10.0);
    }
}

fn fig1_svg(discs: &[&DisciplineAggregate]) -> String {
    let mut svg = Svg::new(W, H, "Cumulative distribution of papers with acknowledgements by number of authors");
    let max_k = discs.iter().filter_map(|a| a.author_range).map(|r| r.1).max().unwrap_or(1).clamp(2, FIG1_MAX_AUTHORS);
    let x = Scale::linear(1.0, f64::from(max_k), LEFT, PLOT_RIGHT);
    let y = Scale::linear(0.0, 100.0, BOTTOM, TOP);
    axes(&mut svg, &x, &y, (LEFT, PLOT_RIGHT), "Number of authors", "Cumulative % of papers");
    for (i, a) in discs.iter().enumerate() {
        let pts: Vec<(f64, f64)> = a
            .cumulative_author_distribution()
            .into_iter()
            .filter(|(k, _)| *k <= max_k)
            .map(|(k, p)| (x.map(f64::from(k)), y.map(p)))
            .collect();
        svg.polyline(&pts, color(i));
    }
    legend(&mut svg, discs, PLOT_RIGHT + 20.0);
    svg.finish()
}

fn fig2_svg(discs: &[&DisciplineAggregate]) -> String {
    let mut svg = Svg::new(W + 120.0, H, "Papers by number of authors (a) and acknowledgees (b), log scale");
    let max_papers = discs
        .iter()
        .flat_map(|a| a.authors.iter().chain(a.acknowledgees.iter()).map(|(_, n)| n))
        .max()
        .unwrap_or(1)
        .max(10) as f64;
    let y = Scale::log10(1.0, 10f64.powf(max_papers.log10().ceil()), BOTTOM, TOP);
    let panels = [(LEFT, 330.0, "(a) Number of authors", true), (390.0, 660.0, "(b) Number of acknowledgees", false)];
    for (left, right, label, authors) in panels {
        let x = Scale::linear(0.0, f64::from(FIG2_MAX_COUNT), left, right);
        axes(&mut svg, &x, &y, (left, right), label, "Papers (log scale)");
        for (i, a) in discs.iter().enumerate() {
            let hist = if authors { &a.authors } else { &a.acknowledgees };
            let pts: Vec<(f64, f64)> = hist
                .iter()
                .filter(|(k, n)| *k <= FIG2_MAX_COUNT && *n > 0)
                .map(|(k, n)| (x.map(f64::from(k)), y.map(n as f64)))
                .collect();
            svg.polyline(&pts, color(i));
        }
    }
    legend(&mut svg, discs, 690.0);
    svg.finish()
}

fn fig3_svg(discs: &[&DisciplineAggregate]) -> String {
    let mut rows: Vec<(&DisciplineAggregate, acktally_core::MeanCounts)> =
        discs.iter().filter_map(|a| a.mean_counts().map(|m| (*a, m))).collect();
    rows.sort_by(|a, b| b.1.mean_contributors.total_cmp(&a.1.mean_contributors));
    let mut svg = Svg::new(W, H, "Mean number of authors and acknowledgees by discipline");
    let label_w = 170.0;
    let max = rows.iter().map(|(_, m)| m.mean_contributors).fold(1.0, f64::max);
    let x = Scale::linear(0.0, max.ceil(), label_w, W - 150.0);
    let band = (BOTTOM - TOP) / rows.len().max(1) as f64;
    for (i, (a, m)) in rows.iter().enumerate() {
        let top = TOP + band * i as f64 + band * 0.15;
        let h = band * 0.7;
        let author_end = x.map(m.mean_authors);
        let ack_end = x.map(m.mean_contributors);
        svg.rect((label_w, top), (author_end - label_w, h), "#4c72b0");
        svg.rect((author_end, top), (ack_end - author_end, h), "#dd8452");
        svg.text((label_w - 6.0, top + h * 0.7), a.discipline.as_str(), Anchor::End, 10.0);
        let note = format!(
            "{:.1} + {:.1}  [{}-{}] [{}-{}]",
            m.mean_authors,
            m.mean_acknowledgees,
            m.author_range.0,
            m.author_range.1,
            m.acknowledgee_range.0,
            m.acknowledgee_range.1
        );
        svg.text((ack_end + 6.0, top + h * 0.7), &note, Anchor::Start, 9.0);
    }
    svg.line((label_w, BOTTOM), (W - 150.0, BOTTOM), "black", 1.0);
    for t in x.ticks() {
        svg.text((x.map(t), BOTTOM + 16.0), &tick_label(t), Anchor::Middle, 10.0);
    }
    svg.text(((label_w + W - 150.0) / 2.0, BOTTOM + 34.0), "Mean per paper", Anchor::Middle, 11.0);
    svg.rect((W - 140.0, TOP), (10.0, 10.0), "#4c72b0");
    svg.text((W - 126.0, TOP + 9.0), "Authors", Anchor::Start, 10.0);
    svg.rect((W - 140.0, TOP + 16.0), (10.0, 10.0), "#dd8452");
    svg.text((W - 126.0, TOP + 25.0), "Acknowledgees", Anchor::Start, 10.0);
    svg.finish()
}

fn fig4_svg(discs: &[&DisciplineAggregate], k_max: u32) -> String {
    let mut svg = Svg::new(W, H, "Mean number of acknowledgees by number of authors");
    let series: Vec<Vec<(u32, Option<f64>)>> = discs.iter().map(|a| a.mean_acks_by_author_count(k_max)).collect();
    let max = series.iter().flatten().filter_map(|(_, m)| *m).fold(1.0, f64::max);
    let x = Scale::linear(1.0, f64::from(k_max.max(2)), LEFT, PLOT_RIGHT);
    let y = Scale::linear(0.0, max.ceil(), BOTTOM, TOP);
    axes(&mut svg, &x, &y, (LEFT, PLOT_RIGHT), "Number of authors", "Mean acknowledgees");
    for (i, s) in series.iter().enumerate() {
        // Author counts without papers break the line.
        for run in s.split(|(_, m)| m.is_none()) {
            let pts: Vec<(f64, f64)> =
                run.iter().filter_map(|(k, m)| m.map(|m| (x.map(f64::from(*k)), y.map(m)))).collect();
            if pts.len() == 1 {
                svg.circle(pts[0], 2.0, color(i));
            }
            svg.polyline(&pts, color(i));
        }
    }
    legend(&mut svg, discs, PLOT_RIGHT + 20.0);
    svg.finish()
}

/// Writes `bytes` to `dir/name` through a temporary file and rename.
pub fn write_atomic(dir: &Path, name: &str, bytes: &[u8]) -> io::Result<PathBuf> {
    let path = dir.join(name);
    let tmp = dir.join(format!("{name}.partial"));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, &path)?;
    Ok(path)
}

/// Writes every table and the selected figures; returns the file names in
/// write order.
pub fn write_reports(dir: &Path, aggs: &AggregateSet, k_max: u32, figures: &[FigureKind]) -> io::Result<Vec<String>> {
    let mut files = Vec::new();
    let mut put = |name: String, bytes: &[u8]| -> io::Result<()> {
        write_atomic(dir, &name, bytes)?;
        files.push(name);
        Ok(())
    };
    put("table1.csv".into(), &table1_csv(&table1_rows(aggs)))?;
    put("dispersion.csv".into(), &dispersion_csv(&dispersion(aggs)))?;
    put("single_author.csv".into(), &single_author_csv(aggs))?;
    for &kind in figures {
        let (table, chart) = figure(kind, aggs, k_max);
        put(format!("{kind}.csv"), &table)?;
        put(format!("{kind}.svg"), chart.as_bytes())?;
    }
    Ok(files)
}

#[cfg(test)]
mod tests {
    use super::*;
    use acktally_core::ContributorSummary;

    fn set(rows: &[(&str, u32, u32, bool)]) -> AggregateSet {
        let mut s = AggregateSet::default();
        for (d, au, ac, t) in rows {
            s.fold(&ContributorSummary::new("x", Discipline::from(*d), *au, *ac, *t).unwrap());
        }
        s
    }

    #[test]
    fn table1_rendering() {
        let rows = vec![
            Table1Row::new("Earth & Space", 92238, 72922, 41633),
            Table1Row::new("Total", 1503548, 1009411, 362767),
            Table1Row::new("Empty", 100, 0, 0),
        ];
        let text = String::from_utf8(table1_csv(&rows)).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "discipline,N,N_ack,pct_ack,N_acknowledgee,pct_of_ack,pct_of_total");
        assert_eq!(lines[1], "Earth & Space,92238,72922,79.1,41633,57.1,45.1");
        assert_eq!(lines[2], "Total,1503548,1009411,67.1,362767,35.9,24.1");
        assert_eq!(lines[3], "Empty,100,0,0.0,0,,0.0");
        assert_eq!(String::from_utf8(table1_csv(&table1_rows(&AggregateSet::default()))).unwrap().lines().count(), 1);
    }

    #[test]
    fn table1_sorted_with_total_last() {
        let s = set(&[("Physics", 3, 0, true), ("Biology", 2, 1, true), ("Biology", 2, 0, false), ("Mathematics", 1, 1, true)]);
        let names: Vec<String> = table1_rows(&s).into_iter().map(|r| r.discipline).collect();
        assert_eq!(names, ["Mathematics", "Biology", "Physics", "Total"]);
    }

    #[test]
    fn figure_kinds_parse() {
        assert_eq!("fig2".parse::<FigureKind>(), Ok(FigureKind::Fig2));
        assert!("fig5".parse::<FigureKind>().is_err());
        assert!("".parse::<FigureKind>().is_err());
    }

    #[test]
    fn fig1_ends_at_100_and_fig4_has_k_max_rows() {
        let s = set(&[("Biology", 1, 1, true), ("Biology", 2, 0, true), ("Biology", 2, 3, true), ("Biology", 5, 1, true)]);
        let (fig1, _) = figure(FigureKind::Fig1, &s, 9);
        let text = String::from_utf8(fig1).unwrap();
        assert_eq!(text.lines().last(), Some("Biology,5,100.0"));
        assert!(text.contains("Biology,1,25.0") && text.contains("Biology,2,75.0"));
        let (fig4, _) = figure(FigureKind::Fig4, &s, 9);
        let text = String::from_utf8(fig4).unwrap();
        assert_eq!(text.lines().count(), 1 + 9);
        assert!(text.contains("Biology,2,2,1.500"));
        assert!(text.contains("Biology,3,0,\n"));
    }

    #[test]
    fn dispersion_table() {
        let s = set(&[("A", 2, 0, true), ("B", 4, 0, true), ("C", 6, 0, true)]);
        let text = String::from_utf8(dispersion_csv(&dispersion(&s))).unwrap();
        assert!(text.contains("authors,3,4.00,1.63,41"), "{text}");
        assert!(text.contains("acknowledgees,3,0.00,0.00,\n"), "{text}");
    }

    #[test]
    fn single_author_table() {
        let mut rows = vec![("Biology", 1, 1, true); 4];
        rows.extend(vec![("Biology", 1, 0, true); 6]);
        rows.push(("Biology", 1, 0, false));
        let text = String::from_utf8(single_author_csv(&set(&rows))).unwrap();
        assert!(text.contains("Biology,10,4,40.0"));
        assert!(text.contains("Total,10,4,40.0"));
    }
}
