use acktally::report::{figure, FigureKind};
use acktally_core::{AggregateSet, ContributorSummary, Discipline};

fn fold(set: &mut AggregateSet, discipline: &str, authors: u32, acks: u32, copies: usize) {
    let s = ContributorSummary::new("x", Discipline::new(discipline), authors, acks, true).unwrap();
    for _ in 0..copies {
        set.fold(&s);
    }
}

fn rect_widths(svg: &str, fill: &str) -> Vec<f64> {
    let doc = roxmltree::Document::parse(svg).unwrap();
    doc.descendants()
        .filter(|n| n.has_tag_name("rect") && n.attribute("fill") == Some(fill) && n.attribute("height") != Some("10.00"))
        .map(|n| n.attribute("width").unwrap().parse().unwrap())
        .collect()
}

/// Ten papers with 27 authors and 28 acknowledgees in total.
#[test]
fn fig3_acknowledgee_segment_exceeds_author_segment() {
    let mut set = AggregateSet::default();
    fold(&mut set, "Social Sciences", 1, 4, 3);
    fold(&mut set, "Social Sciences", 3, 2, 4);
    fold(&mut set, "Social Sciences", 4, 4, 2);
    fold(&mut set, "Social Sciences", 4, 0, 1);
    let (table, chart) = figure(FigureKind::Fig3, &set, 9);
    let table = String::from_utf8(table).unwrap();
    assert!(table.contains("Social Sciences,10,2.700,2.800,5.500,1,4,0,4"), "{table}");
    let authors = rect_widths(&chart, "#4c72b0");
    let acks = rect_widths(&chart, "#dd8452");
    assert_eq!((authors.len(), acks.len()), (1, 1));
    assert!(acks[0] > authors[0], "{acks:?} vs {authors:?}");
}

#[test]
fn fig4_follows_a_decreasing_trend() {
    let mut set = AggregateSet::default();
    for k in 1..=9u32 {
        // Conditional means 9, 8, ..., 1 acknowledgees.
        fold(&mut set, "Biology", k, 10 - k, 5);
    }
    fold(&mut set, "Biology", 12, 7, 5);
    let (table, _) = figure(FigureKind::Fig4, &set, 9);
    let table = String::from_utf8(table).unwrap();
    let means: Vec<f64> = table.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(means.len(), 9);
    assert!(means.windows(2).all(|w| w[0] > w[1]), "{means:?}");
}

#[test]
fn fig1_last_row_per_discipline_is_100() {
    let mut set = AggregateSet::default();
    fold(&mut set, "Physics", 3, 0, 7);
    fold(&mut set, "Physics", 250, 1, 2);
    fold(&mut set, "Mathematics", 1, 0, 3);
    fold(&mut set, "Mathematics", 2, 1, 1);
    let (table, _) = figure(FigureKind::Fig1, &set, 9);
    let table = String::from_utf8(table).unwrap();
    let mut last = std::collections::BTreeMap::new();
    for line in table.lines().skip(1) {
        let mut parts = line.rsplitn(3, ',');
        let pct = parts.next().unwrap().to_owned();
        parts.next();
        last.insert(parts.next().unwrap().to_owned(), pct);
    }
    assert_eq!(last.len(), 2);
    assert!(last.values().all(|v| v == "100.0"), "{last:?}");
}

#[test]
fn empty_aggregates_give_header_only_tables() {
    let set = AggregateSet::default();
    for kind in FigureKind::ALL {
        let (table, chart) = figure(kind, &set, 9);
        assert_eq!(String::from_utf8(table).unwrap().lines().count(), 1, "{kind}");
        roxmltree::Document::parse(&chart).unwrap();
    }
}
