//! Finite count distributions and per-discipline generation profiles.

use alloc::vec::Vec;

use crate::model::Discipline;

use super::SynthError;

/// Largest acknowledgee count a calibrated profile can draw.
pub const MAX_ACKNOWLEDGEES: u32 = 80;

/// Author counts from this value upward share one acknowledgee distribution.
pub const AUTHOR_COUNT_CAP: u32 = 10;

const SUM_TOLERANCE: f64 = 1e-9;

/// Probability distribution over `min..=min + probs.len() - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CountDistribution {
    min: u32,
    probs: Vec<f64>,
    cdf: Vec<f64>,
}

impl CountDistribution {
    pub fn new(min: u32, probs: Vec<f64>) -> Result<Self, SynthError> {
        if probs.is_empty() {
            return Err(SynthError::InvalidDistribution("empty support"));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(SynthError::InvalidDistribution("probabilities must be finite and non-negative"));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(SynthError::InvalidDistribution("probabilities must sum to 1"));
        }
        let mut acc = 0.0;
        let cdf = probs
            .iter()
            .map(|p| {
                acc += p;
                acc / total
            })
            .collect();
        Ok(CountDistribution { min, probs, cdf })
    }

    /// All mass on `value`.
    pub fn point(value: u32) -> Self {
        CountDistribution { min: value, probs: alloc::vec![1.0], cdf: alloc::vec![1.0] }
    }

    /// Geometric-shaped distribution on `min..=max` with the given mean,
    /// i.e. weights proportional to `r^(k - min)` for the ratio `r` that
    /// yields `mean`.
    pub fn truncated_geometric(min: u32, max: u32, mean: f64) -> Result<Self, SynthError> {
        if max < min || !mean.is_finite() {
            return Err(SynthError::InvalidDistribution("bad geometric bounds"));
        }
        let (lo, hi) = (f64::from(min), f64::from(max));
        if (mean - lo).abs() < 1e-12 {
            return Ok(Self::point(min));
        }
        if (mean - hi).abs() < 1e-12 {
            return Ok(Self::point(max));
        }
        if mean < lo || mean > hi {
            return Err(SynthError::InvalidDistribution("mean outside support"));
        }
        let n = (max - min + 1) as usize;
        let weights = |log_r: f64| -> Vec<f64> {
            let peak = if log_r > 0.0 { log_r * (n - 1) as f64 } else { 0.0 };
            let w: Vec<f64> = (0..n).map(|j| libm::exp(log_r * j as f64 - peak)).collect();
            let s: f64 = w.iter().sum();
            w.into_iter().map(|x| x / s).collect()
        };
        let mean_of = |w: &[f64]| -> f64 { w.iter().enumerate().map(|(j, p)| (lo + j as f64) * p).sum() };
        let (mut a, mut b) = (-60.0f64, 60.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mean_of(&weights(mid)) < mean {
                a = mid;
            } else {
                b = mid;
            }
        }
        let mut w = weights(0.5 * (a + b));
        let s: f64 = w.iter().sum();
        w.iter_mut().for_each(|x| *x /= s);
        Self::new(min, w)
    }

    pub fn min(&self) -> u32 {
        self.min
    }

    pub fn max(&self) -> u32 {
        self.min + self.probs.len() as u32 - 1
    }

    pub fn prob(&self, value: u32) -> f64 {
        if value < self.min {
            return 0.0;
        }
        self.probs.get((value - self.min) as usize).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.probs.iter().enumerate().map(move |(j, p)| (self.min + j as u32, *p))
    }

    pub fn mean(&self) -> f64 {
        self.iter().map(|(v, p)| f64::from(v) * p).sum()
    }

    /// Inverse-CDF draw for a uniform `u` in `[0, 1)`.
    pub fn sample(&self, u: f64) -> u32 {
        let idx = self.cdf.partition_point(|&c| c <= u).min(self.probs.len() - 1);
        self.min + idx as u32
    }

    /// Mixture `P(0) = 1 - share`, `P(k) = share * self(k)`; `self` must not
    /// put mass on 0.
    pub fn zero_inflated(&self, share: f64) -> Result<Self, SynthError> {
        if !(0.0..=1.0).contains(&share) {
            return Err(SynthError::InvalidDistribution("share outside [0, 1]"));
        }
        if self.min == 0 {
            return Err(SynthError::InvalidDistribution("base distribution already has mass at zero"));
        }
        let mut probs = alloc::vec![0.0; self.max() as usize + 1];
        probs[0] = 1.0 - share;
        for (v, p) in self.iter() {
            probs[v as usize] = share * p;
        }
        Self::new(0, probs)
    }
}

/// Generation settings for one discipline.
#[derive(Debug, Clone, PartialEq)]
pub struct DisciplineProfile {
    pub discipline: Discipline,
    /// Records to generate.
    pub papers: u32,
    /// Share of records that carry acknowledgement text.
    pub ack_text_share: f64,
    pub authors: CountDistribution,
    /// Acknowledgee-count distribution for author counts `1..=AUTHOR_COUNT_CAP`
    /// (index `k - 1`); the last entry also covers larger bylines.
    pub acknowledgees: Vec<CountDistribution>,
}

/// Moment targets from which a profile is derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileTargets {
    pub ack_text_share: f64,
    /// Share of papers with acknowledgement text naming at least one person.
    pub acknowledgee_share: f64,
    pub single_author_share: f64,
    pub mean_authors: f64,
    pub max_authors: u32,
    /// Mean acknowledgees per paper with acknowledgement text, zeros included.
    pub mean_acknowledgees: f64,
    /// Overrides `acknowledgee_share` for single-author papers.
    pub single_author_ack_share: Option<f64>,
    /// Conditional acknowledgee mean shrinks as `1 / (1 + decay * (k - 1))`
    /// with the author count `k`; zero gives a flat profile.
    pub decay: f64,
}

impl DisciplineProfile {
    pub fn new(
        discipline: Discipline,
        papers: u32,
        ack_text_share: f64,
        authors: CountDistribution,
        acknowledgees: Vec<CountDistribution>,
    ) -> Result<Self, SynthError> {
        if !(0.0..=1.0).contains(&ack_text_share) {
            return Err(SynthError::InvalidDistribution("ack_text_share outside [0, 1]"));
        }
        if authors.min() == 0 {
            return Err(SynthError::InvalidDistribution("author counts start at 1"));
        }
        if acknowledgees.is_empty() {
            return Err(SynthError::InvalidDistribution("no acknowledgee distribution"));
        }
        Ok(DisciplineProfile { discipline, papers, ack_text_share, authors, acknowledgees })
    }

    /// Builds a profile whose expected author and acknowledgee means equal
    /// the targets exactly.
    ///
    /// Authors: `P(1) = single_author_share`, the rest geometric on
    /// `2..=max_authors`. Acknowledgees for a byline of `k` authors: zero with
    /// probability `1 - q_k`, otherwise `1 + s * t(k)` on average where `t` is
    /// the decay trend and `s` is solved in closed form from the overall mean.
    pub fn calibrated(discipline: Discipline, papers: u32, t: &ProfileTargets) -> Result<Self, SynthError> {
        let p1 = t.single_author_share;
        if !(0.0..1.0).contains(&p1) {
            return Err(SynthError::InvalidDistribution("single_author_share outside [0, 1)"));
        }
        let rest_mean = (t.mean_authors - p1) / (1.0 - p1);
        let rest = CountDistribution::truncated_geometric(2, t.max_authors, rest_mean)?;
        let mut probs = alloc::vec![0.0; t.max_authors as usize];
        probs[0] = p1;
        for (v, p) in rest.iter() {
            probs[(v - 1) as usize] = (1.0 - p1) * p;
        }
        let authors = CountDistribution::new(1, probs)?;

        let share_for = |k: u32| if k == 1 { t.single_author_ack_share.unwrap_or(t.acknowledgee_share) } else { t.acknowledgee_share };
        let trend = |k: u32| 1.0 / (1.0 + t.decay * f64::from(k.min(AUTHOR_COUNT_CAP) - 1));
        let mut base = 0.0;
        let mut slope = 0.0;
        for (k, pk) in authors.iter() {
            base += pk * share_for(k);
            slope += pk * share_for(k) * trend(k);
        }
        let mut acknowledgees = Vec::with_capacity(AUTHOR_COUNT_CAP as usize);
        if t.mean_acknowledgees == 0.0 {
            acknowledgees.push(CountDistribution::point(0));
        } else {
            if slope <= 0.0 || t.mean_acknowledgees < base {
                return Err(SynthError::InvalidDistribution("acknowledgee mean unreachable with these shares"));
            }
            let s = (t.mean_acknowledgees - base) / slope;
            for k in 1..=AUTHOR_COUNT_CAP {
                let cond = CountDistribution::truncated_geometric(1, MAX_ACKNOWLEDGEES, 1.0 + s * trend(k))?;
                acknowledgees.push(cond.zero_inflated(share_for(k))?);
            }
        }
        Self::new(discipline, papers, t.ack_text_share, authors, acknowledgees)
    }

    pub fn acknowledgees_for(&self, n_authors: u32) -> &CountDistribution {
        let idx = (n_authors.max(1) as usize - 1).min(self.acknowledgees.len() - 1);
        &self.acknowledgees[idx]
    }

    pub fn expected_authors(&self) -> f64 {
        self.authors.mean()
    }

    /// Expected acknowledgees per record with acknowledgement text.
    pub fn expected_acknowledgees(&self) -> f64 {
        self.authors.iter().map(|(k, p)| p * self.acknowledgees_for(k).mean()).sum()
    }
}

/// Calibration targets of the built-in profiles, one per standard
/// discipline: acknowledgement-text share and acknowledgee share from the
/// reference summary table, plus author and acknowledgee means chosen so the
/// cross-discipline spread of author means and of contributor means is close
/// to the reference values.
pub(crate) const DEFAULT_TARGETS: [(&str, ProfileTargets); 12] = [
    ("Earth & Space", targets(0.791, 0.571, 0.06, 5.1, 120, 2.7, 0.0)),
    ("Biology", targets(0.725, 0.568, 0.07, 5.0, 120, 2.6, 0.15)),
    ("Biomedical Research", targets(0.836, 0.374, 0.015, 6.7, 200, 1.4, 0.0)),
    ("Physics", targets(0.768, 0.366, 0.03, 10.7, 400, 1.0, 0.0)),
    ("Psychology", targets(0.482, 0.513, 0.08, 4.0, 60, 2.3, 0.0)),
    ("Chemistry", targets(0.815, 0.295, 0.04, 4.9, 60, 1.1, 0.0)),
    ("Social Sciences", targets(0.337, 0.547, 0.27, 2.7, 40, 2.8, 0.15)),
    ("Engineering & Technology", targets(0.687, 0.265, 0.06, 4.1, 60, 0.8, 0.0)),
    ("Clinical Medicine", targets(0.561, 0.307, 0.015, 6.7, 200, 1.4, 0.0)),
    ("Mathematics", targets(0.708, 0.235, 0.20, 2.6, 30, 0.5, 0.0)),
    ("Health", targets(0.501, 0.302, 0.05, 4.6, 60, 1.7, 0.0)),
    ("Professional Fields", targets(0.306, 0.404, 0.15, 2.6, 40, 2.2, 0.15)),
];

/// Planted share of single-author papers that acknowledge someone.
pub const DEFAULT_SINGLE_AUTHOR_ACK_SHARE: f64 = 0.40;

const fn targets(
    ack_text_share: f64,
    acknowledgee_share: f64,
    single_author_share: f64,
    mean_authors: f64,
    max_authors: u32,
    mean_acknowledgees: f64,
    decay: f64,
) -> ProfileTargets {
    ProfileTargets {
        ack_text_share,
        acknowledgee_share,
        single_author_share,
        mean_authors,
        max_authors,
        mean_acknowledgees,
        single_author_ack_share: Some(DEFAULT_SINGLE_AUTHOR_ACK_SHARE),
        decay,
    }
}

/// Built-in targets for a standard discipline label.
pub fn default_targets(discipline: &str) -> Option<ProfileTargets> {
    DEFAULT_TARGETS.iter().find(|(d, _)| *d == discipline).map(|(_, t)| *t)
}
