//! Corpus statistics: prevalence of the numerical sign groups, run-length
//! evidence for a unit of ten, and scoring of rival comb readings.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::corpus::{Corpus, Section, Site};
use crate::interpret::{
    attested_single_atom_forms, evaluate, evaluate_atom, expressible_values, CombRule,
    NamedHypothesis,
};
use crate::notation::render_sign;
use crate::sign::{attested, Atom, FamilyTag, Sign};

/// Highest value in the catalog; readings are checked for gaps up to here.
pub const COVERAGE_CEILING: u64 = 42;

/// Runs longer than nine strokes must stay below this share of score
/// inscriptions for the run-length evidence to count as consistent with a
/// unit of ten.
pub const RARE_RUN_PERCENT: u64 = 5;

pub const PUBLISHED_SCORE_1_TO_9: usize = 134;
pub const PUBLISHED_COMB_COUNT: usize = 33;
pub const PUBLISHED_ROWS_OVER_NINE: usize = 2;

/// Figures that need denominators the catalog does not carry.
pub const UNRECOMPUTABLE_CLAIMS: &[(&str, &str)] = &[
    ("inscriptions on pottery", "82%"),
    ("inscriptions on the base of pots", "260"),
    ("inscriptions of a single sign", "more than 85%"),
    ("pottery inscriptions that are simple number signs", "32%"),
    ("inscriptions on the bottom of a pot", "28%"),
];

/// A count as a share of a fixed denominator, rendered to one decimal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Share {
    pub count: usize,
    pub denominator: u32,
    pub percent: String,
}

impl Share {
    pub fn new(count: usize, denominator: u32) -> Share {
        Share {
            count,
            denominator,
            percent: percent_tenths(count as u64, u64::from(denominator)),
        }
    }
}

/// `count / denominator` as a percentage rounded half-up to one decimal.
pub fn percent_tenths(count: u64, denominator: u64) -> String {
    if denominator == 0 {
        return "n/a".to_owned();
    }
    let tenths = (count * 1000 + denominator / 2) / denominator;
    format!("{}.{}%", tenths / 10, tenths % 10)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupCount {
    pub group: String,
    pub count: usize,
    pub share: Share,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ListCount {
    pub section: String,
    pub value: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SiteCount {
    pub site: String,
    pub name: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PublishedFigure {
    pub label: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrevalenceReport {
    pub total_records: usize,
    pub total_inscriptions: u32,
    /// `A`, `B`, `C`, `C1`, `C2`, `C3`, `D`, in that order.
    pub sections: Vec<GroupCount>,
    pub lists: Vec<ListCount>,
    pub sites: Vec<SiteCount>,
    pub score_1_to_9_count: usize,
    pub score_1_to_9_share: Share,
    pub published_score_1_to_9: usize,
    pub comb_count: usize,
    pub comb_share: Share,
    pub published_comb_count: usize,
    pub notes: Vec<String>,
    /// Echoed as published; not recomputable from the catalog.
    pub unrecomputable: Vec<PublishedFigure>,
}

impl PrevalenceReport {
    pub fn section(&self, group: &str) -> Option<&GroupCount> {
        self.sections.iter().find(|g| g.group == group)
    }
}

fn single_score_row(sign: &Sign) -> Option<(u32, u32)> {
    match sign.atoms() {
        [Atom::ScoreRow { count, rows }] => Some((*count, *rows)),
        _ => None,
    }
}

pub fn prevalence(corpus: &Corpus) -> PrevalenceReport {
    let denominator = corpus.total_inscriptions;
    let mut by_section: BTreeMap<Section, usize> = BTreeMap::new();
    for r in corpus.iter() {
        *by_section.entry(r.table_section).or_default() += 1;
    }
    let count = |s: Section| by_section.get(&s).copied().unwrap_or(0);
    let group = |name: &str, n: usize| GroupCount {
        group: name.to_owned(),
        count: n,
        share: Share::new(n, denominator),
    };
    let part_c = count(Section::C1) + count(Section::C2) + count(Section::C3);
    let sections = vec![
        group("A", count(Section::A)),
        group("B", count(Section::B)),
        group("C", part_c),
        group("C1", count(Section::C1)),
        group("C2", count(Section::C2)),
        group("C3", count(Section::C3)),
        group("D", count(Section::D)),
    ];

    let lists = crate::corpus::counts_by_list(corpus)
        .into_iter()
        .map(|((section, value), count)| ListCount {
            section: section.to_string(),
            value: value.map(|v| v.to_string()).unwrap_or_default(),
            count,
        })
        .collect();

    let mut by_site: BTreeMap<Site, usize> = BTreeMap::new();
    for r in corpus.iter() {
        *by_site.entry(r.site).or_default() += 1;
    }
    let sites = by_site
        .into_iter()
        .map(|(site, count)| SiteCount {
            site: site.to_string(),
            name: site.full_name().to_owned(),
            count,
        })
        .collect();

    let score_1_to_9_count = corpus
        .iter()
        .filter_map(|r| single_score_row(&r.sign))
        .filter(|(count, _)| attested::SCORE_COUNT.contains(count))
        .count();
    let comb_count = corpus
        .iter()
        .filter(|r| r.family == FamilyTag::Comb)
        .count();

    let mut notes = Vec::new();
    if comb_count != PUBLISHED_COMB_COUNT {
        notes.push(format!(
            "comb listings: {comb_count} counted, {PUBLISHED_COMB_COUNT} published"
        ));
    }
    if score_1_to_9_count != PUBLISHED_SCORE_1_TO_9 {
        notes.push(format!(
            "one-to-nine score marks: {score_1_to_9_count} counted, {PUBLISHED_SCORE_1_TO_9} \
             published; section A in full has {}",
            count(Section::A)
        ));
    }

    PrevalenceReport {
        total_records: corpus.len(),
        total_inscriptions: denominator,
        sections,
        lists,
        sites,
        score_1_to_9_count,
        score_1_to_9_share: Share::new(score_1_to_9_count, denominator),
        published_score_1_to_9: PUBLISHED_SCORE_1_TO_9,
        comb_count,
        comb_share: Share::new(comb_count, denominator),
        published_comb_count: PUBLISHED_COMB_COUNT,
        notes,
        unrecomputable: UNRECOMPUTABLE_CLAIMS
            .iter()
            .map(|(label, value)| PublishedFigure {
                label: (*label).to_owned(),
                value: (*value).to_owned(),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunCount {
    pub run: u32,
    pub records: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LongRun {
    pub id: String,
    pub strokes: u32,
    pub rows: u32,
    pub run: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseEvidenceReport {
    /// Score inscriptions considered (single score-row signs).
    pub score_records: usize,
    /// Longest row per inscription; one entry per inscription.
    pub histogram: Vec<RunCount>,
    pub rows_exceeding_nine: usize,
    pub rows_exceeding_four: usize,
    pub max_run: u32,
    pub long_runs: Vec<LongRun>,
    /// Inscriptions laid out in several rows; strokes are split evenly.
    pub multi_row_records: usize,
    pub published_rows_exceeding_nine: usize,
    pub consistent_with_unit_ten: bool,
    pub verdict: String,
}

/// Builds a run-length histogram of score-mark inscriptions. A layout of
/// `c` strokes in `r` rows is taken to have a longest row of `ceil(c / r)`.
pub fn infer_base(corpus: &Corpus) -> BaseEvidenceReport {
    let mut histogram: BTreeMap<u32, usize> = BTreeMap::new();
    let mut long_runs = Vec::new();
    let mut multi_row_records = 0;
    for r in corpus.iter() {
        let Some((strokes, rows)) = single_score_row(&r.sign) else {
            continue;
        };
        let run = strokes.div_ceil(rows);
        if rows > 1 {
            multi_row_records += 1;
        }
        *histogram.entry(run).or_default() += 1;
        if run > 9 {
            long_runs.push(LongRun {
                id: r.id.clone(),
                strokes,
                rows,
                run,
            });
        }
    }
    let score_records: usize = histogram.values().sum();
    let exceeding = |limit: u32| histogram.range(limit + 1..).map(|(_, n)| n).sum::<usize>();
    let rows_exceeding_nine = exceeding(9);
    let rows_exceeding_four = exceeding(4);
    let max_run = histogram.keys().next_back().copied().unwrap_or(0);
    let consistent = score_records > 0
        && (rows_exceeding_nine as u64) * 100 < RARE_RUN_PERCENT * score_records as u64;

    let verdict = if score_records == 0 {
        "no score-mark inscriptions to assess".to_owned()
    } else {
        let share = |n: usize| percent_tenths(n as u64, score_records as u64);
        format!(
            "{}: {rows_exceeding_nine} of {score_records} score inscriptions ({}) run past nine \
             strokes in a row; {rows_exceeding_four} ({}) run past four",
            if consistent {
                "consistent with a unit of ten"
            } else {
                "not clearly consistent with a unit of ten"
            },
            share(rows_exceeding_nine),
            share(rows_exceeding_four),
        )
    };

    BaseEvidenceReport {
        score_records,
        histogram: histogram
            .into_iter()
            .map(|(run, records)| RunCount { run, records })
            .collect(),
        rows_exceeding_nine,
        rows_exceeding_four,
        max_run,
        long_runs,
        multi_row_records,
        published_rows_exceeding_nine: PUBLISHED_ROWS_OVER_NINE,
        consistent_with_unit_ten: consistent,
        verdict,
    }
}

/// Two distinct forms that share a reading.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub first: String,
    pub second: String,
    pub values: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Dearth {
    pub claimed_9: usize,
    pub claimed_19: usize,
    pub derived_9: usize,
    pub derived_19: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisScore {
    pub name: String,
    pub collision_count: usize,
    pub collisions: Vec<Collision>,
    pub coverage_gaps: Vec<u64>,
    pub unattested_predicted_forms: Vec<String>,
    pub dearth: Dearth,
}

impl HypothesisScore {
    fn rank_key(&self) -> (usize, usize, usize) {
        (
            self.collision_count,
            self.unattested_predicted_forms.len(),
            self.coverage_gaps.len(),
        )
    }
}

/// The forms compared for collisions: attested score rows and combs.
pub fn collision_domain() -> Vec<Atom> {
    attested_single_atom_forms()
        .into_iter()
        .filter(|a| matches!(a, Atom::ScoreRow { .. } | Atom::Comb { .. }))
        .collect()
}

fn atom_notation(atom: Atom) -> String {
    render_sign(&Sign::single(atom).expect("attested forms are well-formed"))
        .expect("attested forms are not opaque")
}

/// Comb-plus-score ligatures needed to write the values between comb
/// multiples when combs are read as `n * base`.
pub fn predicted_comb_composites(comb: CombRule) -> Vec<Sign> {
    let CombRule::NTimesB { base } = comb else {
        return Vec::new();
    };
    let max_scores = (base - 1).min(*attested::SCORE_COUNT.end());
    let mut out = Vec::new();
    for teeth in attested::COMB_TEETH {
        for strokes in 1..=max_scores {
            out.push(
                Sign::new(vec![Atom::Comb { teeth }, Atom::score(strokes)])
                    .expect("well-formed ligature"),
            );
        }
    }
    out
}

pub fn score_hypothesis(corpus: &Corpus, named: &NamedHypothesis) -> HypothesisScore {
    let h = &named.hypothesis;

    let readings: Vec<(Atom, BTreeSet<u64>)> = collision_domain()
        .into_iter()
        .map(|atom| {
            let values = evaluate_atom(&atom, h)
                .expect("attested forms are evaluable")
                .into_iter()
                .map(|(v, _)| v)
                .collect();
            (atom, values)
        })
        .collect();
    let mut collisions = Vec::new();
    for (i, (a, va)) in readings.iter().enumerate() {
        for (b, vb) in &readings[i + 1..] {
            let shared: Vec<u64> = va.intersection(vb).copied().collect();
            if !shared.is_empty() {
                collisions.push(Collision {
                    first: atom_notation(*a),
                    second: atom_notation(*b),
                    values: shared,
                });
            }
        }
    }

    let reachable = expressible_values(h, COVERAGE_CEILING).expect("ceiling is positive");
    let coverage_gaps = (1..=COVERAGE_CEILING)
        .filter(|v| !reachable.contains(v))
        .collect();

    let attested_signs: HashSet<Sign> = corpus
        .iter()
        .filter(|r| r.sign.is_evaluable())
        .map(|r| r.sign.normalize())
        .collect();
    let unattested_predicted_forms = predicted_comb_composites(h.comb())
        .into_iter()
        .filter(|s| !attested_signs.contains(&s.normalize()))
        .map(|s| render_sign(&s).expect("not opaque"))
        .collect();

    let claimed = |v: u64| {
        corpus
            .iter()
            .filter(|r| r.claimed_value.map(|c| c.value) == Some(v))
            .count()
    };
    let derived = |v: u64| {
        corpus
            .iter()
            .filter(|r| r.notation.is_some())
            .filter_map(|r| evaluate(&r.sign, h).ok())
            .filter(|i| i.candidates().contains(&v))
            .count()
    };

    HypothesisScore {
        name: named.name.clone(),
        collision_count: collisions.len(),
        collisions,
        coverage_gaps,
        unattested_predicted_forms,
        dearth: Dearth {
            claimed_9: claimed(9),
            claimed_19: claimed(19),
            derived_9: derived(9),
            derived_19: derived(19),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no hypotheses to compare")]
pub struct EmptyComparison;

/// Scores each hypothesis and orders them by collisions, then unattested
/// predicted forms, then coverage gaps (all ascending). Ties keep input
/// order.
pub fn compare(
    corpus: &Corpus,
    hypotheses: &[NamedHypothesis],
) -> Result<Vec<HypothesisScore>, EmptyComparison> {
    if hypotheses.is_empty() {
        return Err(EmptyComparison);
    }
    let mut scores: Vec<HypothesisScore> = hypotheses
        .iter()
        .map(|h| score_hypothesis(corpus, h))
        .collect();
    scores.sort_by_key(HypothesisScore::rank_key);
    Ok(scores)
}
