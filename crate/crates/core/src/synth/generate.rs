use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::lexicon::{surname_key, DEFAULT_BLACKLIST};
use crate::model::{fold, AuthorName, Discipline, DocType, NameRules, Record};

use super::names::{
    BLACKLIST_SENTENCES, BLACKLIST_SURNAMES, CODE_PREFIXES, DEFAULT_ACK_TEMPLATES, FUNDERS, FUNDING_TEMPLATES,
    GIVEN_NAMES, HONORIFICS, NOISE_SURNAMES, REPEAT_TEMPLATES, SELF_MENTION_MULTI, SELF_MENTION_SINGLE, SURNAMES,
};
use super::profile::{default_targets, DisciplineProfile};
use super::SynthError;

const MIDDLE_INITIALS: &[u8] = b"ABCDEFGHJKLMNPRSTW";

/// Everything that determines a synthetic corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub year: i32,
    pub profiles: Vec<DisciplineProfile>,
    /// Share of records with acknowledgement text that also name their own
    /// authors.
    pub self_mention_rate: f64,
    /// Share of records with acknowledgement text carrying an eponymous grant
    /// or company name from the blacklist.
    pub blacklist_distractor_rate: f64,
    /// Share of records with acknowledgees that name one of them twice.
    pub repeat_mention_rate: f64,
    /// Share of funding sentences that spell out the funder's acronym.
    pub acronym_rate: f64,
    /// Share of acknowledgee mentions preceded by a title.
    pub honorific_rate: f64,
    pub review_share: f64,
    /// Thank-you sentences; each must contain `{names}`.
    pub ack_templates: Vec<String>,
}

impl GeneratorConfig {
    pub fn new(seed: u64, profiles: Vec<DisciplineProfile>) -> Self {
        GeneratorConfig {
            seed,
            year: 2015,
            profiles,
            self_mention_rate: 0.10,
            blacklist_distractor_rate: 0.05,
            repeat_mention_rate: 0.05,
            acronym_rate: 0.04,
            honorific_rate: 0.15,
            review_share: 0.10,
            ack_templates: DEFAULT_ACK_TEMPLATES.iter().map(|t| t.to_string()).collect(),
        }
    }

    /// The twelve built-in profiles with `per_discipline` records each.
    pub fn with_default_profiles(seed: u64, per_discipline: u32) -> Result<Self, SynthError> {
        let profiles = Discipline::STANDARD
            .iter()
            .map(|label| default_profile(label, per_discipline))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(seed, profiles))
    }

    /// The built-in profiles sharing `total` records as evenly as possible,
    /// earlier disciplines taking the remainder.
    pub fn default_total(seed: u64, total: u32) -> Result<Self, SynthError> {
        let n = Discipline::STANDARD.len() as u32;
        let profiles = Discipline::STANDARD
            .iter()
            .enumerate()
            .map(|(i, label)| default_profile(label, total / n + u32::from((i as u32) < total % n)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(seed, profiles))
    }

    pub fn total_records(&self) -> u64 {
        self.profiles.iter().map(|p| u64::from(p.papers)).sum()
    }

    pub fn validate(&self) -> Result<(), SynthError> {
        if self.profiles.is_empty() {
            return Err(SynthError::InvalidConfig("no profiles"));
        }
        let rates = [
            self.self_mention_rate,
            self.blacklist_distractor_rate,
            self.repeat_mention_rate,
            self.acronym_rate,
            self.honorific_rate,
            self.review_share,
        ];
        if rates.iter().any(|r| !(0.0..=1.0).contains(r)) {
            return Err(SynthError::InvalidConfig("rates must lie in [0, 1]"));
        }
        if self.ack_templates.is_empty() || self.ack_templates.iter().any(|t| !t.contains("{names}")) {
            return Err(SynthError::InvalidConfig("every acknowledgement template needs {names}"));
        }
        let mut seen = BTreeSet::new();
        let capacity = Pools::new().capacity();
        for p in &self.profiles {
            if !seen.insert(p.discipline.as_str()) {
                return Err(SynthError::InvalidConfig("duplicate discipline"));
            }
            if slug(p.discipline.as_str()).is_empty() {
                return Err(SynthError::InvalidConfig("discipline label has no letters or digits"));
            }
            if !(0.0..=1.0).contains(&p.ack_text_share) {
                return Err(SynthError::InvalidDistribution("ack_text_share outside [0, 1]"));
            }
            if p.authors.min() == 0 {
                return Err(SynthError::InvalidDistribution("author counts start at 1"));
            }
            let Some(max_acks) = p.acknowledgees.iter().map(|d| d.max()).max() else {
                return Err(SynthError::InvalidDistribution("no acknowledgee distribution"));
            };
            // Distinct people are drawn by rejection; keep the pool sparse.
            if 2 * (p.authors.max() as usize + max_acks as usize) > capacity {
                return Err(SynthError::InvalidConfig("counts exceed the name pool"));
            }
        }
        Ok(())
    }
}

fn default_profile(label: &str, papers: u32) -> Result<DisciplineProfile, SynthError> {
    let targets = default_targets(label).ok_or_else(|| SynthError::UnknownDiscipline(label.to_string()))?;
    DisciplineProfile::calibrated(Discipline::from(label), papers, &targets)
}

/// Surnames for the generated lexicon: every surname that can be planted,
/// the blacklist surnames, and surnames that never occur in text.
pub fn lexicon_lines() -> Vec<&'static str> {
    SURNAMES.iter().chain(NOISE_SURNAMES).chain(BLACKLIST_SURNAMES).copied().collect()
}

/// Blacklist shipped alongside generated corpora.
pub fn blacklist_text() -> &'static str {
    DEFAULT_BLACKLIST
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MentionKind {
    /// First mention of a planted acknowledgee.
    Acknowledgee,
    /// Later mention of an already planted acknowledgee.
    Repeat,
    /// Mention of one of the record's own authors.
    SelfAuthor,
    /// Blacklisted eponym (grant, company or institute name).
    Blacklisted,
    /// Funder name or acronym.
    Organization,
}

impl MentionKind {
    /// Whether the mention has the shape of a personal name.
    pub fn is_name_shaped(self) -> bool {
        !matches!(self, MentionKind::Organization)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mention {
    pub surface: String,
    pub kind: MentionKind,
}

/// Planted content of one record.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TruthEntry {
    pub id: String,
    /// Canonical forms of the planted acknowledgees, in planting order.
    pub acknowledgees: Vec<String>,
    /// Every planted mention, in text order of the sentences.
    pub mentions: Vec<Mention>,
}

pub type GroundTruth = BTreeMap<String, TruthEntry>;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedRecord {
    pub record: Record,
    pub truth: TruthEntry,
}

/// Name pools with precomputed linkage-key parts.
#[derive(Debug, Clone)]
struct Pools {
    initials: Vec<char>,
    /// Surname pool with entries that fold to an earlier key removed.
    surnames: Vec<&'static str>,
}

impl Pools {
    fn new() -> Self {
        let initials = GIVEN_NAMES.iter().map(|g| fold(g).chars().next().unwrap_or('?')).collect();
        let mut keys = BTreeSet::new();
        let surnames = SURNAMES.iter().copied().filter(|s| keys.insert(surname_key(s))).collect();
        Pools { initials, surnames }
    }

    fn capacity(&self) -> usize {
        let distinct: BTreeSet<char> = self.initials.iter().copied().collect();
        distinct.len() * self.surnames.len()
    }
}

#[derive(Debug, Clone, Copy)]
struct Person {
    given: &'static str,
    surname: &'static str,
}

/// Iterator over generated records, discipline after discipline.
#[derive(Debug, Clone)]
pub struct Generator<'c> {
    config: &'c GeneratorConfig,
    pools: Pools,
    rules: NameRules,
    shard: usize,
    index: u32,
    slug: String,
    rng: ChaCha8Rng,
}

impl<'c> Generator<'c> {
    pub fn new(config: &'c GeneratorConfig) -> Result<Self, SynthError> {
        config.validate()?;
        let mut gen = Generator {
            config,
            pools: Pools::new(),
            rules: NameRules::default(),
            shard: 0,
            index: 0,
            slug: String::new(),
            rng: ChaCha8Rng::seed_from_u64(config.seed),
        };
        gen.enter_shard(0);
        Ok(gen)
    }

    fn enter_shard(&mut self, shard: usize) {
        self.shard = shard;
        self.index = 0;
        self.rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        self.rng.set_stream(shard as u64);
        if let Some(p) = self.config.profiles.get(shard) {
            self.slug = slug(p.discipline.as_str());
        }
    }

    fn unit(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn below(&mut self, n: usize) -> usize {
        ((u128::from(self.rng.next_u64()) * n as u128) >> 64) as usize
    }

    fn chance(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    fn pick<T: Copy>(&mut self, items: &[T]) -> T {
        items[self.below(items.len())]
    }

    fn draw_person(&mut self, taken: &mut BTreeSet<(char, usize)>) -> Person {
        loop {
            let g = self.below(GIVEN_NAMES.len());
            let s = self.below(self.pools.surnames.len());
            if taken.insert((self.pools.initials[g], s)) {
                return Person { given: GIVEN_NAMES[g], surname: self.pools.surnames[s] };
            }
        }
    }

    fn initial_of(given: &str) -> char {
        given.chars().next().unwrap_or('X')
    }

    fn middle_initial(&mut self) -> char {
        char::from(self.pick(MIDDLE_INITIALS))
    }

    /// A rendering of `p` as it might appear in running text.
    fn surface(&mut self, p: Person) -> String {
        let u = self.unit();
        let g = Self::initial_of(p.given);
        if u < 0.5 {
            format!("{} {}", p.given, p.surname)
        } else if u < 0.7 {
            format!("{g}. {}", p.surname)
        } else if u < 0.85 {
            let m = self.middle_initial();
            format!("{} {m}. {}", p.given, p.surname)
        } else {
            let m = self.middle_initial();
            format!("{g}.{m}. {}", p.surname)
        }
    }

    fn byline_given(&mut self, p: Person) -> String {
        let u = self.unit();
        let g = Self::initial_of(p.given);
        if u < 0.55 {
            format!("{g}.")
        } else if u < 0.7 {
            let m = self.middle_initial();
            format!("{g}. {m}.")
        } else {
            p.given.to_string()
        }
    }

    fn canonical(&self, surface: &str) -> String {
        self.rules.normalize(surface).map(|n| n.canonical()).unwrap_or_else(|_| surface.to_string())
    }

    fn funding_sentence(&mut self, mentions: &mut Vec<Mention>) -> String {
        let total: u32 = FUNDERS.iter().map(|f| f.2).sum();
        let mut ticket = self.below(total as usize) as u32;
        let mut funder = FUNDERS[0];
        for f in FUNDERS {
            if ticket < f.2 {
                funder = *f;
                break;
            }
            ticket -= f.2;
        }
        let (name, acronym, _) = funder;
        let mut funder_text = name.to_string();
        mentions.push(Mention { surface: name.to_string(), kind: MentionKind::Organization });
        if !acronym.is_empty() && self.chance(self.config.acronym_rate) {
            funder_text = format!("{name} ({acronym})");
            mentions.push(Mention { surface: acronym.to_string(), kind: MentionKind::Organization });
        }
        let prefix = self.pick(CODE_PREFIXES);
        let digits = 100_000 + self.below(900_000);
        let template = self.pick(FUNDING_TEMPLATES);
        template.replace("{funder}", &funder_text).replace("{code}", &format!("{prefix}{digits}"))
    }

    fn thank_sentence(&mut self, people: &[Person], ack: &mut TruthEntry) -> String {
        let mut rendered = Vec::with_capacity(people.len());
        for &p in people {
            let surface = self.surface(p);
            ack.acknowledgees.push(self.canonical(&surface));
            ack.mentions.push(Mention { surface: surface.clone(), kind: MentionKind::Acknowledgee });
            if self.chance(self.config.honorific_rate) {
                let title = self.pick(HONORIFICS);
                rendered.push(format!("{title} {surface}"));
            } else {
                rendered.push(surface);
            }
        }
        let oxford = self.chance(0.5);
        let names = join_names(&rendered, oxford);
        let template = self.below(self.config.ack_templates.len());
        self.config.ack_templates[template].replace("{names}", &names)
    }

    fn self_mention(&mut self, authors: &[Person], truth: &mut TruthEntry) -> String {
        let many = authors.len() >= 2 && self.chance(0.5);
        let n = if many { 2 + usize::from(authors.len() >= 3 && self.chance(0.3)) } else { 1 };
        let mut chosen = BTreeSet::new();
        while chosen.len() < n {
            chosen.insert(self.below(authors.len()));
        }
        let mut rendered = Vec::with_capacity(n);
        for i in chosen {
            let p = authors[i];
            let surface = if self.chance(0.7) {
                format!("{} {}", p.given, p.surname)
            } else {
                format!("{}. {}", Self::initial_of(p.given), p.surname)
            };
            truth.mentions.push(Mention { surface: surface.clone(), kind: MentionKind::SelfAuthor });
            rendered.push(surface);
        }
        if many {
            let names = join_names(&rendered, true);
            self.pick(SELF_MENTION_MULTI).replace("{names}", &names)
        } else {
            self.pick(SELF_MENTION_SINGLE).replace("{name}", &rendered[0])
        }
    }

    fn generate(&mut self, profile: &DisciplineProfile, id: String) -> GeneratedRecord {
        let doc_type = if self.chance(self.config.review_share) { DocType::Review } else { DocType::Article };
        let n_authors = profile.authors.sample(self.unit());
        let mut taken = BTreeSet::new();
        let authors: Vec<Person> = (0..n_authors).map(|_| self.draw_person(&mut taken)).collect();
        let byline: Vec<AuthorName> =
            authors.iter().map(|&p| AuthorName::new(self.byline_given(p), p.surname)).collect();
        let mut truth = TruthEntry { id: id.clone(), ..TruthEntry::default() };

        let ack_text = if self.chance(profile.ack_text_share) {
            let n_acks = profile.acknowledgees_for(n_authors).sample(self.unit());
            let acked: Vec<Person> = (0..n_acks).map(|_| self.draw_person(&mut taken)).collect();
            let mut lead = Vec::new();
            let mut body = Vec::new();
            let funding_first = self.chance(0.5);
            let funding = self.funding_sentence(&mut truth.mentions);
            let mut rest = acked.as_slice();
            while !rest.is_empty() {
                let size = (1 + self.below(4)).min(rest.len());
                let (chunk, tail) = rest.split_at(size);
                body.push(self.thank_sentence(chunk, &mut truth));
                rest = tail;
            }
            if !acked.is_empty() && self.chance(self.config.repeat_mention_rate) {
                let p = self.pick(&acked);
                let surface = self.surface(p);
                truth.mentions.push(Mention { surface: surface.clone(), kind: MentionKind::Repeat });
                body.push(self.pick(REPEAT_TEMPLATES).replace("{name}", &surface));
            }
            if self.chance(self.config.self_mention_rate) {
                body.push(self.self_mention(&authors, &mut truth));
            }
            if self.chance(self.config.blacklist_distractor_rate) {
                let (sentence, name) = self.pick(BLACKLIST_SENTENCES);
                truth.mentions.push(Mention { surface: name.to_string(), kind: MentionKind::Blacklisted });
                body.push(sentence.to_string());
            }
            if funding_first {
                lead.push(funding);
                lead.append(&mut body);
            } else {
                lead.append(&mut body);
                lead.push(funding);
                // Keep mention order aligned with sentence order.
                let n_org = truth.mentions.iter().take_while(|m| m.kind == MentionKind::Organization).count();
                truth.mentions.rotate_left(n_org);
            }
            Some(lead.join(" "))
        } else {
            None
        };

        let record = Record {
            id,
            year: self.config.year,
            discipline: profile.discipline.clone(),
            doc_type,
            authors: byline,
            ack_text,
        };
        GeneratedRecord { record, truth }
    }
}

impl Iterator for Generator<'_> {
    type Item = GeneratedRecord;

    fn next(&mut self) -> Option<GeneratedRecord> {
        let config = self.config;
        loop {
            let profile = config.profiles.get(self.shard)?;
            if self.index < profile.papers {
                self.index += 1;
                let id = format!("{}-{:07}", self.slug, self.index);
                return Some(self.generate(profile, id));
            }
            self.enter_shard(self.shard + 1);
        }
    }
}

fn join_names(names: &[String], oxford: bool) -> String {
    match names {
        [] => String::new(),
        [one] => one.clone(),
        [a, b] => format!("{a} and {b}"),
        [init @ .., last] => {
            let sep = if oxford { ", and " } else { " and " };
            format!("{}{sep}{last}", init.join(", "))
        }
    }
}

/// Lower-case, hyphen-separated form of a discipline label for record ids.
fn slug(label: &str) -> String {
    let words: Vec<String> = label.split(|c: char| !c.is_alphanumeric()).map(fold).filter(|w| !w.is_empty()).collect();
    words.join("-")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::linkage_key;

    #[test]
    fn slugs() {
        assert_eq!(slug("Earth & Space"), "earth-space");
        assert_eq!(slug("Engineering & Technology"), "engineering-technology");
        assert_eq!(slug("Économie"), "economie");
    }

    #[test]
    fn joins() {
        let n = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(join_names(&n(&["A B"]), true), "A B");
        assert_eq!(join_names(&n(&["A B", "C D"]), true), "A B and C D");
        assert_eq!(join_names(&n(&["A B", "C D", "E F"]), true), "A B, C D, and E F");
        assert_eq!(join_names(&n(&["A B", "C D", "E F"]), false), "A B, C D and E F");
    }

    #[test]
    fn pool_keys_match_byline_keys() {
        let pools = Pools::new();
        let rules = NameRules::default();
        for (g, given) in GIVEN_NAMES.iter().enumerate() {
            for surname in &pools.surnames {
                let full = rules.from_parts(given, surname).unwrap();
                assert_eq!(full.linkage_key().first_initial, pools.initials[g]);
                assert_eq!(full.linkage_key().surname, surname_key(surname));
                let text = rules.normalize(&format!("{given} {surname}")).unwrap();
                assert_eq!(linkage_key(&text), full.linkage_key());
            }
        }
    }

    #[test]
    fn ids_are_sequential_per_discipline() {
        let config = GeneratorConfig::default_total(3, 25).unwrap();
        let ids: Vec<String> = Generator::new(&config).unwrap().map(|g| g.record.id).collect();
        assert_eq!(ids.len(), 25);
        assert_eq!(ids[0], "earth-space-0000001");
        assert_eq!(ids[1], "earth-space-0000002");
        assert_eq!(ids[3], "biology-0000001");
        assert_eq!(ids[24], "professional-fields-0000002");
    }

    #[test]
    fn config_validation() {
        let mut c = GeneratorConfig::with_default_profiles(1, 1).unwrap();
        assert!(c.validate().is_ok());
        c.ack_templates.push("no placeholder".into());
        assert_eq!(c.validate(), Err(SynthError::InvalidConfig("every acknowledgement template needs {names}")));
        let mut c = GeneratorConfig::with_default_profiles(1, 1).unwrap();
        c.self_mention_rate = 1.5;
        assert!(c.validate().is_err());
        let mut c = GeneratorConfig::with_default_profiles(1, 1).unwrap();
        c.profiles.push(c.profiles[0].clone());
        assert!(c.validate().is_err());
        assert!(GeneratorConfig::new(1, Vec::new()).validate().is_err());
        assert!(matches!(default_profile("Alchemy", 1), Err(SynthError::UnknownDiscipline(_))));
    }
}
