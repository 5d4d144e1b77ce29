use acktally_core::metrics::round_to;
use acktally_core::{AggregateSet, ContributorSummary, Discipline, DisciplineAggregate, Table1Row};
use proptest::prelude::*;

const LABELS: [&str; 3] = ["Physics", "Biology", "Mathematics"];

fn summary() -> impl Strategy<Value = ContributorSummary> {
    (0usize..LABELS.len(), 1u32..40, 0u32..12, any::<bool>()).prop_map(|(d, authors, acks, has_text)| {
        let acks = if has_text { acks } else { 0 };
        ContributorSummary::new("r", Discipline::from(LABELS[d]), authors, acks, has_text).unwrap()
    })
}

fn fold_all(items: &[ContributorSummary]) -> AggregateSet {
    let mut set = AggregateSet::default();
    for s in items {
        set.fold(s);
    }
    set
}

fn single(label: &str, items: &[ContributorSummary]) -> DisciplineAggregate {
    let d = Discipline::from(label);
    items.iter().filter(|s| s.discipline == d).fold(DisciplineAggregate::empty(d.clone()), |a, s| a.folded(s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn random_splits_merge_to_the_whole(items in prop::collection::vec(summary(), 0..60), cuts in prop::collection::vec(any::<prop::sample::Index>(), 0..6)) {
        let whole = fold_all(&items);
        let mut bounds: Vec<usize> = cuts.iter().map(|c| c.index(items.len() + 1)).collect();
        bounds.extend([0, items.len()]);
        bounds.sort_unstable();
        let mut merged = AggregateSet::default();
        for w in bounds.windows(2).rev() {
            merged.merge(&fold_all(&items[w[0]..w[1]]));
        }
        prop_assert_eq!(merged, whole);
    }

    #[test]
    fn merge_is_associative_and_commutative(a in prop::collection::vec(summary(), 0..20), b in prop::collection::vec(summary(), 0..20), c in prop::collection::vec(summary(), 0..20)) {
        for label in LABELS {
            let (x, y, z) = (single(label, &a), single(label, &b), single(label, &c));
            let mut left = x.clone();
            left.merge(&y);
            left.merge(&z);
            let mut yz = y.clone();
            yz.merge(&z);
            let mut right = x.clone();
            right.merge(&yz);
            prop_assert_eq!(&left, &right);
            let mut xy = x.clone();
            xy.merge(&y);
            let mut yx = y.clone();
            yx.merge(&x);
            prop_assert_eq!(xy, yx);
            let mut with_identity = x.clone();
            with_identity.merge(&DisciplineAggregate::empty(Discipline::from(label)));
            prop_assert_eq!(with_identity, x);
        }
    }

    #[test]
    fn record_order_is_irrelevant(items in prop::collection::vec(summary(), 0..60).prop_shuffle()) {
        let mut sorted = items.clone();
        sorted.sort_by_key(|s| (s.discipline.clone(), s.n_authors, s.n_acknowledgees, s.has_ack_text));
        prop_assert_eq!(fold_all(&items), fold_all(&sorted));
    }

    #[test]
    fn derived_statistics_are_consistent(items in prop::collection::vec(summary(), 1..80)) {
        let set = fold_all(&items);
        for agg in set.iter() {
            prop_assert!(agg.n_with_acknowledgee <= agg.n_with_ack && agg.n_with_ack <= agg.n_papers);
            prop_assert_eq!(agg.authors.total(), agg.n_with_ack);
            prop_assert_eq!(agg.acknowledgees.total(), agg.n_with_ack);
            let cdf = agg.cumulative_author_distribution();
            prop_assert!(cdf.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 <= w[1].1));
            if let Some(&(_, last)) = cdf.last() {
                prop_assert!((last - 100.0).abs() < 1e-9);
            }
            if let Some(m) = agg.mean_counts() {
                prop_assert_eq!(m.mean_contributors, m.mean_authors + m.mean_acknowledgees);
                let direct = (agg.sum_authors + agg.sum_acknowledgees) as f64 / agg.n_with_ack as f64;
                prop_assert!((m.mean_contributors - direct).abs() < 1e-12);
            }
        }
        let total = set.total("Total");
        prop_assert_eq!(total.n_papers, items.len() as u64);
    }

    #[test]
    fn table1_percentages_compose(n in 1u64..2_000_000, ack_share in 0.0f64..=1.0, person_share in 0.0f64..=1.0) {
        let n_ack = (n as f64 * ack_share) as u64;
        let n_person = (n_ack as f64 * person_share) as u64;
        let row = Table1Row::new("x", n, n_ack, n_person);
        let exact_total = 100.0 * n_person as f64 / n as f64;
        prop_assert_eq!(row.pct_of_total(), Some(round_to(exact_total, 1)));
        if n_ack > 0 {
            let composed = row.pct_ack().unwrap() * row.pct_of_ack().unwrap() / 100.0;
            // Composing two rounded shares stays within their rounding error.
            prop_assert!((composed - exact_total).abs() <= 0.05 + 0.05 + 0.0025 / 100.0 + 1e-9);
        }
    }
}
