//! Per-record contributor counts and per-discipline collaboration statistics.
//!
//! [`DisciplineAggregate`] is a commutative monoid: shard-local aggregates
//! can be folded independently and merged in any order. All counters are
//! integers, so merging is exact and the finalized statistics do not depend
//! on record order.
//!
//! Table 1 counters cover every record. The distributional statistics
//! (histograms, means, ranges, per-author-count means) cover only records
//! that carry acknowledgement text, which is the analysed subset.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cleanse::AcknowledgeeSet;
use crate::model::{Discipline, Record};

/// Author, acknowledgee and contributor counts of one record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContributorSummary {
    pub record_id: String,
    pub discipline: Discipline,
    pub n_authors: u32,
    pub n_acknowledgees: u32,
    pub has_ack_text: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SummaryError {
    #[error("a record has at least one author")]
    NoAuthors,
    #[error("acknowledgees without acknowledgement text")]
    AcknowledgeesWithoutText,
}

impl ContributorSummary {
    pub fn new(
        record_id: impl Into<String>,
        discipline: Discipline,
        n_authors: u32,
        n_acknowledgees: u32,
        has_ack_text: bool,
    ) -> Result<Self, SummaryError> {
        if n_authors == 0 {
            return Err(SummaryError::NoAuthors);
        }
        if n_acknowledgees > 0 && !has_ack_text {
            return Err(SummaryError::AcknowledgeesWithoutText);
        }
        Ok(ContributorSummary { record_id: record_id.into(), discipline, n_authors, n_acknowledgees, has_ack_text })
    }

    pub fn n_contributors(&self) -> u32 {
        self.n_authors + self.n_acknowledgees
    }

    /// At least two contributors, counting byline and acknowledgements.
    pub fn is_collaborative(&self) -> bool {
        self.n_contributors() >= 2
    }
}

pub fn summarize(record: &Record, acks: &AcknowledgeeSet) -> ContributorSummary {
    ContributorSummary {
        record_id: record.id.clone(),
        discipline: record.discipline.clone(),
        n_authors: record.authors.len() as u32,
        n_acknowledgees: acks.len() as u32,
        has_ack_text: record.has_ack_text(),
    }
}

/// Exact frequency table of non-negative counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CountHistogram {
    bins: BTreeMap<u32, u64>,
}

impl CountHistogram {
    pub fn add(&mut self, value: u32) {
        *self.bins.entry(value).or_insert(0) += 1;
    }

    pub fn merge(&mut self, other: &CountHistogram) {
        for (&v, &n) in &other.bins {
            *self.bins.entry(v).or_insert(0) += n;
        }
    }

    pub fn total(&self) -> u64 {
        self.bins.values().sum()
    }

    pub fn get(&self, value: u32) -> u64 {
        self.bins.get(&value).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.bins.iter().map(|(&v, &n)| (v, n))
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    /// Lower median.
    pub fn median(&self) -> Option<u32> {
        let total = self.total();
        if total == 0 {
            return None;
        }
        let target = total.div_ceil(2);
        let mut seen = 0;
        for (v, n) in self.iter() {
            seen += n;
            if seen >= target {
                return Some(v);
            }
        }
        None
    }
}

/// Number of analysed papers with a given author count, and the sum of
/// their acknowledgee counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ByAuthorCount {
    pub papers: u64,
    pub acknowledgees: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisciplineAggregate {
    pub discipline: Discipline,
    pub n_papers: u64,
    pub n_with_ack: u64,
    pub n_with_acknowledgee: u64,
    pub authors: CountHistogram,
    pub acknowledgees: CountHistogram,
    pub by_author_count: BTreeMap<u32, ByAuthorCount>,
    pub author_range: Option<(u32, u32)>,
    pub acknowledgee_range: Option<(u32, u32)>,
    pub sum_authors: u64,
    pub sum_acknowledgees: u64,
    /// Analysed single-author papers naming at least one acknowledgee.
    pub single_author_with_acknowledgee: u64,
}

fn widen(range: &mut Option<(u32, u32)>, v: u32) {
    *range = Some(match *range {
        None => (v, v),
        Some((lo, hi)) => (lo.min(v), hi.max(v)),
    });
}

fn union(a: Option<(u32, u32)>, b: Option<(u32, u32)>) -> Option<(u32, u32)> {
    match (a, b) {
        (Some((a0, a1)), Some((b0, b1))) => Some((a0.min(b0), a1.max(b1))),
        (x, None) | (None, x) => x,
    }
}

impl DisciplineAggregate {
    /// The identity element for `discipline`.
    pub fn empty(discipline: Discipline) -> Self {
        DisciplineAggregate {
            discipline,
            n_papers: 0,
            n_with_ack: 0,
            n_with_acknowledgee: 0,
            authors: CountHistogram::default(),
            acknowledgees: CountHistogram::default(),
            by_author_count: BTreeMap::new(),
            author_range: None,
            acknowledgee_range: None,
            sum_authors: 0,
            sum_acknowledgees: 0,
            single_author_with_acknowledgee: 0,
        }
    }

    /// Number of analysed papers (those with acknowledgement text).
    pub fn n_analysed(&self) -> u64 {
        self.n_with_ack
    }

    /// Adds one record.
    ///
    /// # Panics
    ///
    /// If the summary belongs to another discipline.
    pub fn fold(&mut self, s: &ContributorSummary) {
        assert_eq!(s.discipline, self.discipline, "summary folded into another discipline's aggregate");
        self.n_papers += 1;
        if !s.has_ack_text {
            return;
        }
        self.n_with_ack += 1;
        if s.n_acknowledgees > 0 {
            self.n_with_acknowledgee += 1;
            if s.n_authors == 1 {
                self.single_author_with_acknowledgee += 1;
            }
        }
        self.authors.add(s.n_authors);
        self.acknowledgees.add(s.n_acknowledgees);
        let slot = self.by_author_count.entry(s.n_authors).or_default();
        slot.papers += 1;
        slot.acknowledgees += u64::from(s.n_acknowledgees);
        widen(&mut self.author_range, s.n_authors);
        widen(&mut self.acknowledgee_range, s.n_acknowledgees);
        self.sum_authors += u64::from(s.n_authors);
        self.sum_acknowledgees += u64::from(s.n_acknowledgees);
    }

    pub fn folded(mut self, s: &ContributorSummary) -> Self {
        self.fold(s);
        self
    }

    /// # Panics
    ///
    /// If the aggregates belong to different disciplines.
    pub fn merge(&mut self, other: &DisciplineAggregate) {
        assert_eq!(self.discipline, other.discipline, "merging aggregates of different disciplines");
        self.absorb(other);
    }

    fn absorb(&mut self, other: &DisciplineAggregate) {
        self.n_papers += other.n_papers;
        self.n_with_ack += other.n_with_ack;
        self.n_with_acknowledgee += other.n_with_acknowledgee;
        self.authors.merge(&other.authors);
        self.acknowledgees.merge(&other.acknowledgees);
        for (&k, v) in &other.by_author_count {
            let slot = self.by_author_count.entry(k).or_default();
            slot.papers += v.papers;
            slot.acknowledgees += v.acknowledgees;
        }
        self.author_range = union(self.author_range, other.author_range);
        self.acknowledgee_range = union(self.acknowledgee_range, other.acknowledgee_range);
        self.sum_authors += other.sum_authors;
        self.sum_acknowledgees += other.sum_acknowledgees;
        self.single_author_with_acknowledgee += other.single_author_with_acknowledgee;
    }

    /// Pools aggregates of any disciplines under a new label (e.g. `Total`).
    pub fn pooled<'a, I>(label: Discipline, parts: I) -> Self
    where
        I: IntoIterator<Item = &'a DisciplineAggregate>,
    {
        let mut out = DisciplineAggregate::empty(label);
        for p in parts {
            out.absorb(p);
        }
        out
    }

    pub fn table1_row(&self) -> Table1Row {
        Table1Row {
            discipline: self.discipline.as_str().into(),
            n_papers: self.n_papers,
            n_with_ack: self.n_with_ack,
            n_with_acknowledgee: self.n_with_acknowledgee,
        }
    }

    /// `(k, % of analysed papers with at most k authors)` at every observed
    /// author count.
    pub fn cumulative_author_distribution(&self) -> Vec<(u32, f64)> {
        let total = self.authors.total();
        let mut cum = 0u64;
        self.authors
            .iter()
            .map(|(k, n)| {
                cum += n;
                (k, 100.0 * cum as f64 / total as f64)
            })
            .collect()
    }

    /// Author-count and acknowledgee-count histograms of analysed papers.
    pub fn count_distributions(&self) -> (&CountHistogram, &CountHistogram) {
        (&self.authors, &self.acknowledgees)
    }

    pub fn mean_counts(&self) -> Option<MeanCounts> {
        if self.n_with_ack == 0 {
            return None;
        }
        let n = self.n_with_ack as f64;
        let mean_authors = self.sum_authors as f64 / n;
        let mean_acknowledgees = self.sum_acknowledgees as f64 / n;
        Some(MeanCounts {
            mean_authors,
            mean_acknowledgees,
            mean_contributors: mean_authors + mean_acknowledgees,
            author_range: self.author_range?,
            acknowledgee_range: self.acknowledgee_range?,
        })
    }

    /// Mean acknowledgees among analysed papers with exactly `k` authors,
    /// for `k = 1..=k_max`; `None` where no such paper exists.
    pub fn mean_acks_by_author_count(&self, k_max: u32) -> Vec<(u32, Option<f64>)> {
        (1..=k_max)
            .map(|k| {
                let mean = self
                    .by_author_count
                    .get(&k)
                    .filter(|b| b.papers > 0)
                    .map(|b| b.acknowledgees as f64 / b.papers as f64);
                (k, mean)
            })
            .collect()
    }
}

/// Papers with acknowledgements and with acknowledgees, as counts and
/// one-decimal percentages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Row {
    pub discipline: String,
    pub n_papers: u64,
    pub n_with_ack: u64,
    pub n_with_acknowledgee: u64,
}

fn pct(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| round_to(100.0 * num as f64 / den as f64, 1))
}

/// Rounds half away from zero to `digits` decimals.
pub fn round_to(x: f64, digits: i32) -> f64 {
    let scale = libm::pow(10.0, f64::from(digits));
    libm::round(x * scale) / scale
}

impl Table1Row {
    pub fn new(discipline: impl Into<String>, n_papers: u64, n_with_ack: u64, n_with_acknowledgee: u64) -> Self {
        Table1Row { discipline: discipline.into(), n_papers, n_with_ack, n_with_acknowledgee }
    }

    /// Share of all papers carrying acknowledgement text.
    pub fn pct_ack(&self) -> Option<f64> {
        pct(self.n_with_ack, self.n_papers)
    }

    /// Share of papers with acknowledgement text that name an acknowledgee.
    pub fn pct_of_ack(&self) -> Option<f64> {
        pct(self.n_with_acknowledgee, self.n_with_ack)
    }

    /// Share of all papers naming an acknowledgee.
    pub fn pct_of_total(&self) -> Option<f64> {
        pct(self.n_with_acknowledgee, self.n_papers)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanCounts {
    pub mean_authors: f64,
    pub mean_acknowledgees: f64,
    /// Defined as `mean_authors + mean_acknowledgees`.
    pub mean_contributors: f64,
    pub author_range: (u32, u32),
    pub acknowledgee_range: (u32, u32),
}

/// Spread of per-discipline means: arithmetic mean, population standard
/// deviation and their ratio in percent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionStats {
    pub mean: f64,
    pub sd: f64,
    pub rsd: Option<f64>,
}

impl DispersionStats {
    /// RSD rounded to a whole percent.
    pub fn rsd_percent(&self) -> Option<i64> {
        self.rsd.map(|r| libm::round(r) as i64)
    }
}

/// Neumaier-compensated sum.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if libm::fabs(sum) >= libm::fabs(v) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

pub fn cross_discipline_dispersion(means: &[f64]) -> Option<DispersionStats> {
    if means.is_empty() {
        return None;
    }
    let n = means.len() as f64;
    let mean = compensated_sum(means.iter().copied()) / n;
    let var = compensated_sum(means.iter().map(|m| (m - mean) * (m - mean))) / n;
    let sd = libm::sqrt(var);
    let rsd = (mean != 0.0).then(|| 100.0 * sd / mean);
    Some(DispersionStats { mean, sd, rsd })
}

/// Percentage of analysed single-author papers that name at least one
/// acknowledgee, pooled over `aggs`.
pub fn single_author_ack_share<'a, I>(aggs: I) -> Option<f64>
where
    I: IntoIterator<Item = &'a DisciplineAggregate>,
{
    let mut single = 0u64;
    let mut with_acks = 0u64;
    for agg in aggs {
        single += agg.authors.get(1);
        with_acks += agg.single_author_with_acknowledgee;
    }
    (single > 0).then(|| 100.0 * with_acks as f64 / single as f64)
}

/// Aggregates for every discipline seen, keyed and ordered by label.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AggregateSet {
    by_discipline: BTreeMap<Discipline, DisciplineAggregate>,
}

impl AggregateSet {
    pub fn fold(&mut self, s: &ContributorSummary) {
        self.by_discipline
            .entry(s.discipline.clone())
            .or_insert_with(|| DisciplineAggregate::empty(s.discipline.clone()))
            .fold(s);
    }

    pub fn merge(&mut self, other: &AggregateSet) {
        for (d, agg) in &other.by_discipline {
            match self.by_discipline.get_mut(d) {
                Some(mine) => mine.merge(agg),
                None => {
                    self.by_discipline.insert(d.clone(), agg.clone());
                }
            }
        }
    }

    pub fn get(&self, d: &Discipline) -> Option<&DisciplineAggregate> {
        self.by_discipline.get(d)
    }

    pub fn iter(&self) -> impl Iterator<Item = &DisciplineAggregate> {
        self.by_discipline.values()
    }

    pub fn len(&self) -> usize {
        self.by_discipline.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_discipline.is_empty()
    }

    pub fn total(&self, label: &str) -> DisciplineAggregate {
        DisciplineAggregate::pooled(Discipline::new(label), self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn summary(d: &str, authors: u32, acks: u32) -> ContributorSummary {
        ContributorSummary::new("x", Discipline::from(d), authors, acks, true).unwrap()
    }

    fn agg_of(d: &str, pairs: &[(u32, u32)]) -> DisciplineAggregate {
        let mut a = DisciplineAggregate::empty(Discipline::from(d));
        for &(au, ac) in pairs {
            a.fold(&summary(d, au, ac));
        }
        a
    }

    #[test]
    fn summary_counts() {
        let s = summary("Physics", 3, 2);
        assert_eq!(s.n_contributors(), 5);
        let solo = summary("Physics", 1, 0);
        assert_eq!(solo.n_contributors(), 1);
        assert!(!solo.is_collaborative());
        assert_eq!(
            ContributorSummary::new("x", Discipline::from("P"), 1, 2, false),
            Err(SummaryError::AcknowledgeesWithoutText)
        );
        assert_eq!(ContributorSummary::new("x", Discipline::from("P"), 0, 0, true), Err(SummaryError::NoAuthors));
    }

    #[test]
    fn identity_fold() {
        let a = agg_of("Biology", &[(2, 1)]);
        assert_eq!(a.n_papers, 1);
        let mut b = agg_of("Biology", &[(2, 1), (3, 0)]);
        let before = b.clone();
        b.merge(&DisciplineAggregate::empty(Discipline::from("Biology")));
        assert_eq!(b, before);
    }

    #[test]
    #[should_panic(expected = "another discipline")]
    fn discipline_mismatch_panics() {
        let mut a = DisciplineAggregate::empty(Discipline::from("Biology"));
        a.fold(&summary("Physics", 1, 0));
    }

    #[test]
    fn table1_rows() {
        let r = Table1Row::new("Earth & Space", 92238, 72922, 41633);
        assert_eq!((r.pct_ack(), r.pct_of_ack(), r.pct_of_total()), (Some(79.1), Some(57.1), Some(45.1)));
        let r = Table1Row::new("Total", 1503548, 1009411, 362767);
        assert_eq!((r.pct_ack(), r.pct_of_ack(), r.pct_of_total()), (Some(67.1), Some(35.9), Some(24.1)));
        let r = Table1Row::new("None", 100, 0, 0);
        assert_eq!((r.pct_ack(), r.pct_of_ack(), r.pct_of_total()), (Some(0.0), None, Some(0.0)));
        let r = Table1Row::new("Empty", 0, 0, 0);
        assert_eq!((r.pct_ack(), r.pct_of_ack(), r.pct_of_total()), (None, None, None));
    }

    #[test]
    fn records_without_text_only_count_in_table1() {
        let mut a = DisciplineAggregate::empty(Discipline::from("Health"));
        a.fold(&ContributorSummary::new("x", Discipline::from("Health"), 4, 0, false).unwrap());
        a.fold(&summary("Health", 2, 1));
        assert_eq!((a.n_papers, a.n_with_ack, a.n_with_acknowledgee), (2, 1, 1));
        assert_eq!(a.authors.total(), 1);
        assert_eq!(a.mean_counts().unwrap().mean_authors, 2.0);
    }

    #[test]
    fn cumulative_distribution() {
        let a = agg_of("M", &[(1, 0), (2, 0), (2, 0), (5, 0)]);
        assert_eq!(a.cumulative_author_distribution(), vec![(1, 25.0), (2, 75.0), (5, 100.0)]);
        let a = agg_of("M", &[(7, 0)]);
        assert_eq!(a.cumulative_author_distribution(), vec![(7, 100.0)]);
    }

    #[test]
    fn distributions_and_median() {
        let a = agg_of("M", &[(1, 0), (1, 0), (1, 1)]);
        let (_, acks) = a.count_distributions();
        assert_eq!(acks.iter().collect::<Vec<_>>(), vec![(0, 2), (1, 1)]);
        assert_eq!(acks.total(), a.n_with_ack);
        assert_eq!(acks.median(), Some(0));
        assert_eq!(CountHistogram::default().median(), None);
    }

    #[test]
    fn means_and_ranges() {
        let a = agg_of("S", &[(3, 2), (3, 2), (3, 2)]);
        let m = a.mean_counts().unwrap();
        assert_eq!((m.mean_authors, m.mean_acknowledgees, m.mean_contributors), (3.0, 2.0, 5.0));
        let a = agg_of("S", &[(1, 0), (4, 7), (2, 3)]);
        let m = a.mean_counts().unwrap();
        assert_eq!(m.author_range, (1, 4));
        assert_eq!(m.acknowledgee_range, (0, 7));
        assert!(DisciplineAggregate::empty(Discipline::from("S")).mean_counts().is_none());
    }

    #[test]
    fn acks_by_author_count() {
        let a = agg_of("B", &[(1, 3), (1, 1), (2, 1)]);
        assert_eq!(a.mean_acks_by_author_count(3), vec![(1, Some(2.0)), (2, Some(1.0)), (3, None)]);
    }

    #[test]
    fn dispersion() {
        let d = cross_discipline_dispersion(&[2.0, 4.0, 6.0]).unwrap();
        assert_eq!(d.mean, 4.0);
        assert!((d.sd - 1.632_993_161_855_452).abs() < 1e-12);
        assert_eq!(d.rsd_percent(), Some(41));
        assert!(cross_discipline_dispersion(&[]).is_none());
        assert_eq!(cross_discipline_dispersion(&[0.0, 0.0]).unwrap().rsd, None);
    }

    #[test]
    fn single_author_share() {
        let a = agg_of("X", &[(1, 1), (1, 2), (1, 0), (1, 0), (1, 0), (1, 0), (1, 1), (1, 3), (1, 0), (1, 0), (2, 5)]);
        assert_eq!(single_author_ack_share([&a]), Some(40.0));
        let none = agg_of("X", &[(1, 0), (1, 0)]);
        assert_eq!(single_author_ack_share([&none]), Some(0.0));
        let all = agg_of("X", &[(1, 1)]);
        assert_eq!(single_author_ack_share([&all]), Some(100.0));
        let multi = agg_of("X", &[(2, 1)]);
        assert_eq!(single_author_ack_share([&multi]), None);
    }

    #[test]
    fn pooled_total() {
        let mut set = AggregateSet::default();
        set.fold(&summary("A", 1, 0));
        set.fold(&summary("B", 2, 1));
        let t = set.total("Total");
        assert_eq!(t.n_papers, 2);
        assert_eq!(t.discipline.as_str(), "Total");
        assert_eq!(t.author_range, Some((1, 2)));
    }
}
