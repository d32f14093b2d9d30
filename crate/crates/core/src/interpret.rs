//! Numeric readings of signs.
//!
//! A [`Hypothesis`] fixes how each sign family maps to numbers. Evaluating a
//! sign produces every reading the hypothesis allows, each with the per-atom
//! steps that justify it. Ligatures are additive.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sign::{attested, Atom, FamilyTag, Sign};

/// Upper bound on the number of per-atom reading combinations for one sign.
pub const MAX_DERIVATIONS: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum CombRule {
    /// `10 + n`
    TenPlusN,
    /// `n`
    NOnly,
    /// `n + 1`, counting the horizontal stroke.
    NPlusOne,
    /// `n * base`
    NTimesB { base: u32 },
    /// `base + n`
    BPlusN { base: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PoleRule {
    TenPlusN,
    NOnly,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DividedRule {
    SumPlusTen,
    SumOnly,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Composition {
    #[default]
    Additive,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypothesisError {
    #[error("chevron and cross must have different values (both {0})")]
    SameSignValue(u32),
    #[error("sign values must be positive")]
    ZeroSignValue,
    #[error("long-stroke unit must be at least 2, got {0}")]
    SmallUnit(u32),
    #[error("comb base must be at least 2, got {0}")]
    SmallBase(u32),
    #[error("unknown hypothesis `{0}`")]
    UnknownPreset(String),
}

/// A complete assignment of numeric rules to sign families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "HypothesisFields")]
pub struct Hypothesis {
    comb: CombRule,
    pole: PoleRule,
    divided: DividedRule,
    chevron_value: u32,
    cross_value: u32,
    longshort_unit: u32,
    composition: Composition,
}

#[derive(Deserialize)]
struct HypothesisFields {
    comb: CombRule,
    pole: PoleRule,
    divided: DividedRule,
    chevron_value: u32,
    cross_value: u32,
    longshort_unit: u32,
    #[serde(default)]
    composition: Composition,
}

impl TryFrom<HypothesisFields> for Hypothesis {
    type Error = HypothesisError;

    fn try_from(f: HypothesisFields) -> Result<Self, Self::Error> {
        let Composition::Additive = f.composition;
        Hypothesis::new(
            f.comb,
            f.pole,
            f.divided,
            f.chevron_value,
            f.cross_value,
            f.longshort_unit,
        )
    }
}

impl Default for Hypothesis {
    fn default() -> Self {
        Hypothesis::DEFAULT
    }
}

impl Hypothesis {
    /// Comb `10+n`, both pole and divided readings, `V`=10, `X`=20, long
    /// strokes worth ten.
    pub const DEFAULT: Hypothesis = Hypothesis {
        comb: CombRule::TenPlusN,
        pole: PoleRule::Both,
        divided: DividedRule::Both,
        chevron_value: 10,
        cross_value: 20,
        longshort_unit: 10,
        composition: Composition::Additive,
    };

    pub fn new(
        comb: CombRule,
        pole: PoleRule,
        divided: DividedRule,
        chevron_value: u32,
        cross_value: u32,
        longshort_unit: u32,
    ) -> Result<Hypothesis, HypothesisError> {
        if chevron_value == 0 || cross_value == 0 {
            return Err(HypothesisError::ZeroSignValue);
        }
        if chevron_value == cross_value {
            return Err(HypothesisError::SameSignValue(chevron_value));
        }
        if longshort_unit < 2 {
            return Err(HypothesisError::SmallUnit(longshort_unit));
        }
        if let CombRule::NTimesB { base } | CombRule::BPlusN { base } = comb {
            if base < 2 {
                return Err(HypothesisError::SmallBase(base));
            }
        }
        Ok(Hypothesis {
            comb,
            pole,
            divided,
            chevron_value,
            cross_value,
            longshort_unit,
            composition: Composition::Additive,
        })
    }

    /// DEFAULT with a different comb rule.
    pub fn with_comb(comb: CombRule) -> Result<Hypothesis, HypothesisError> {
        let d = Hypothesis::DEFAULT;
        Hypothesis::new(
            comb,
            d.pole,
            d.divided,
            d.chevron_value,
            d.cross_value,
            d.longshort_unit,
        )
    }

    /// Resolves a named preset: `default`, `comb-n`, `comb-n1`,
    /// `comb-nb:<B>`, `comb-b9`, or `comb-bn:<B>`.
    pub fn preset(name: &str) -> Result<Hypothesis, HypothesisError> {
        let unknown = || HypothesisError::UnknownPreset(name.to_owned());
        let base = |s: &str| s.parse::<u32>().map_err(|_| unknown());
        let comb = match name {
            "default" => return Ok(Hypothesis::DEFAULT),
            "comb-n" => CombRule::NOnly,
            "comb-n1" => CombRule::NPlusOne,
            "comb-b9" => CombRule::BPlusN { base: 9 },
            _ => {
                if let Some(b) = name.strip_prefix("comb-nb:") {
                    CombRule::NTimesB { base: base(b)? }
                } else if let Some(b) = name.strip_prefix("comb-bn:") {
                    CombRule::BPlusN { base: base(b)? }
                } else {
                    return Err(unknown());
                }
            }
        };
        Hypothesis::with_comb(comb)
    }

    pub fn comb(&self) -> CombRule {
        self.comb
    }
    pub fn pole(&self) -> PoleRule {
        self.pole
    }
    pub fn divided(&self) -> DividedRule {
        self.divided
    }
    pub fn chevron_value(&self) -> u32 {
        self.chevron_value
    }
    pub fn cross_value(&self) -> u32 {
        self.cross_value
    }
    pub fn longshort_unit(&self) -> u32 {
        self.longshort_unit
    }
    pub fn composition(&self) -> Composition {
        self.composition
    }
}

/// A hypothesis with the name it is reported under.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedHypothesis {
    pub name: String,
    pub hypothesis: Hypothesis,
}

impl NamedHypothesis {
    pub fn new(name: impl Into<String>, hypothesis: Hypothesis) -> Self {
        NamedHypothesis {
            name: name.into(),
            hypothesis,
        }
    }
}

impl FromStr for NamedHypothesis {
    type Err = HypothesisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(NamedHypothesis::new(s, Hypothesis::preset(s)?))
    }
}

/// The rule used to read one atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Rule {
    ScoreCount,
    CombTenPlusN,
    CombN,
    CombNPlusOne,
    CombNTimesB { base: u32 },
    CombBPlusN { base: u32 },
    PoleTenPlusN,
    PoleN,
    DividedSumPlusTen,
    DividedSum,
    LongShort { unit: u32 },
    ChevronValue,
    CrossValue,
}

impl Rule {
    pub fn is_tentative(self) -> bool {
        matches!(self, Rule::ChevronValue | Rule::CrossValue)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::ScoreCount => f.write_str("score count"),
            Rule::CombTenPlusN => f.write_str("comb 10+n"),
            Rule::CombN => f.write_str("comb n"),
            Rule::CombNPlusOne => f.write_str("comb n+1"),
            Rule::CombNTimesB { base } => write!(f, "comb n*{base}"),
            Rule::CombBPlusN { base } => write!(f, "comb {base}+n"),
            Rule::PoleTenPlusN => f.write_str("pole 10+n"),
            Rule::PoleN => f.write_str("pole n"),
            Rule::DividedSumPlusTen => f.write_str("divided 10+a+b (generalized from 9|6)"),
            Rule::DividedSum => f.write_str("divided a+b (generalized from 9|6)"),
            Rule::LongShort { unit } => write!(f, "long/short {unit}m+n"),
            Rule::ChevronValue => f.write_str("chevron value (tentative)"),
            Rule::CrossValue => f.write_str("cross value (tentative)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Step {
    pub atom_index: usize,
    pub atom: Atom,
    pub rule: Rule,
    pub contribution: u64,
}

/// One way of reading a whole sign: a choice of reading per atom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub value: u64,
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Confidence {
    Asserted,
    Tentative,
}

impl fmt::Display for Confidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Confidence::Asserted => "asserted",
            Confidence::Tentative => "tentative",
        })
    }
}

/// Every reading of a sign under one hypothesis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Interpretation {
    candidates: BTreeSet<u64>,
    derivations: Vec<Derivation>,
    merged_duplicates: usize,
    confidence: Confidence,
}

impl Interpretation {
    pub fn candidates(&self) -> &BTreeSet<u64> {
        &self.candidates
    }

    /// Candidates, largest first.
    pub fn candidates_desc(&self) -> Vec<u64> {
        self.candidates.iter().rev().copied().collect()
    }

    /// All combinations of per-atom readings, in enumeration order. Several
    /// may share a value.
    pub fn derivations(&self) -> &[Derivation] {
        &self.derivations
    }

    pub fn traces_for(&self, value: u64) -> impl Iterator<Item = &Derivation> {
        self.derivations.iter().filter(move |d| d.value == value)
    }

    /// How many derivations collapsed onto an already-seen value.
    pub fn merged_duplicates(&self) -> usize {
        self.merged_duplicates
    }

    pub fn is_deduplicated(&self) -> bool {
        self.merged_duplicates > 0
    }

    pub fn confidence(&self) -> Confidence {
        self.confidence
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("atom {index} is an opaque {family} sign; its value is only known from the catalog")]
    NonEvaluable { index: usize, family: FamilyTag },
    #[error("value overflow while reading atom {index}")]
    Overflow { index: usize },
    #[error("sign has more than {MAX_DERIVATIONS} reading combinations")]
    TooManyReadings,
}

/// Readings of a single atom, the primary reading first.
pub fn evaluate_atom(atom: &Atom, h: &Hypothesis) -> Result<Vec<(u64, Rule)>, EvalError> {
    evaluate_atom_at(0, atom, h)
}

fn evaluate_atom_at(
    index: usize,
    atom: &Atom,
    h: &Hypothesis,
) -> Result<Vec<(u64, Rule)>, EvalError> {
    let overflow = EvalError::Overflow { index };
    let wide = u64::from;
    let readings = match *atom {
        Atom::ScoreRow { count, .. } => vec![(wide(count), Rule::ScoreCount)],
        Atom::Comb { teeth } => {
            let n = wide(teeth);
            vec![match h.comb {
                CombRule::TenPlusN => (10 + n, Rule::CombTenPlusN),
                CombRule::NOnly => (n, Rule::CombN),
                CombRule::NPlusOne => (n + 1, Rule::CombNPlusOne),
                CombRule::NTimesB { base } => (n * wide(base), Rule::CombNTimesB { base }),
                CombRule::BPlusN { base } => (wide(base) + n, Rule::CombBPlusN { base }),
            }]
        }
        Atom::Pole { crossings } => {
            let n = wide(crossings);
            match h.pole {
                PoleRule::TenPlusN => vec![(10 + n, Rule::PoleTenPlusN)],
                PoleRule::NOnly => vec![(n, Rule::PoleN)],
                PoleRule::Both => vec![(10 + n, Rule::PoleTenPlusN), (n, Rule::PoleN)],
            }
        }
        Atom::Divided { left, right } => {
            let sum = wide(left) + wide(right);
            match h.divided {
                DividedRule::SumPlusTen => vec![(10 + sum, Rule::DividedSumPlusTen)],
                DividedRule::SumOnly => vec![(sum, Rule::DividedSum)],
                DividedRule::Both => {
                    vec![(10 + sum, Rule::DividedSumPlusTen), (sum, Rule::DividedSum)]
                }
            }
        }
        Atom::LongShort { longs, shorts } => {
            let unit = h.longshort_unit;
            let value = wide(unit)
                .checked_mul(wide(longs))
                .and_then(|v| v.checked_add(wide(shorts)))
                .ok_or(overflow)?;
            vec![(value, Rule::LongShort { unit })]
        }
        Atom::Chevron => vec![(wide(h.chevron_value), Rule::ChevronValue)],
        Atom::Cross => vec![(wide(h.cross_value), Rule::CrossValue)],
        Atom::Opaque { family } => return Err(EvalError::NonEvaluable { index, family }),
    };
    Ok(readings)
}

/// Reads a sign additively: one reading is chosen per atom and the chosen
/// contributions are summed, over every combination.
pub fn evaluate(sign: &Sign, h: &Hypothesis) -> Result<Interpretation, EvalError> {
    let per_atom = sign
        .atoms()
        .iter()
        .enumerate()
        .map(|(i, atom)| evaluate_atom_at(i, atom, h))
        .collect::<Result<Vec<_>, _>>()?;

    let total = per_atom
        .iter()
        .try_fold(1usize, |acc, r| acc.checked_mul(r.len()))
        .filter(|&n| n <= MAX_DERIVATIONS)
        .ok_or(EvalError::TooManyReadings)?;

    let mut partial = vec![Derivation {
        value: 0,
        steps: Vec::with_capacity(per_atom.len()),
    }];
    for (index, readings) in per_atom.iter().enumerate() {
        let atom = sign.atoms()[index];
        let mut next = Vec::with_capacity(partial.len() * readings.len());
        for d in &partial {
            for &(contribution, rule) in readings {
                let value = d
                    .value
                    .checked_add(contribution)
                    .ok_or(EvalError::Overflow { index })?;
                let mut steps = d.steps.clone();
                steps.push(Step {
                    atom_index: index,
                    atom,
                    rule,
                    contribution,
                });
                next.push(Derivation { value, steps });
            }
        }
        partial = next;
    }
    debug_assert_eq!(partial.len(), total);

    let candidates: BTreeSet<u64> = partial.iter().map(|d| d.value).collect();
    let merged_duplicates = partial.len() - candidates.len();
    let tentative = partial
        .iter()
        .flat_map(|d| &d.steps)
        .any(|s| s.rule.is_tentative());
    Ok(Interpretation {
        candidates,
        derivations: partial,
        merged_duplicates,
        confidence: if tentative {
            Confidence::Tentative
        } else {
            Confidence::Asserted
        },
    })
}

/// Every single-atom form whose parameters lie in the attested ranges.
pub fn attested_single_atom_forms() -> Vec<Atom> {
    let mut forms = Vec::new();
    forms.extend(attested::SCORE_COUNT.map(Atom::score));
    forms.extend(attested::COMB_TEETH.map(|teeth| Atom::Comb { teeth }));
    forms.extend(attested::POLE_CROSSINGS.map(|crossings| Atom::Pole { crossings }));
    for left in attested::DIVIDED_SIDE {
        for right in attested::DIVIDED_SIDE.filter(|&r| r <= left) {
            if left + right > 0 {
                forms.push(Atom::Divided { left, right });
            }
        }
    }
    for longs in attested::LONG_STROKES {
        forms.extend(attested::SHORT_STROKES.map(|shorts| Atom::LongShort { longs, shorts }));
    }
    forms.push(Atom::Chevron);
    forms.push(Atom::Cross);
    forms
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("the expressibility bound must be at least 1")]
pub struct ZeroBound;

/// Values up to `max` reachable by some attested single-atom form.
pub fn expressible_values(h: &Hypothesis, max: u64) -> Result<BTreeSet<u64>, ZeroBound> {
    if max == 0 {
        return Err(ZeroBound);
    }
    Ok(attested_single_atom_forms()
        .iter()
        .filter_map(|atom| evaluate_atom(atom, h).ok())
        .flatten()
        .map(|(value, _)| value)
        .filter(|&v| v <= max)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_sign;

    fn values(atom: Atom, h: &Hypothesis) -> Vec<u64> {
        evaluate_atom(&atom, h)
            .unwrap()
            .into_iter()
            .map(|(v, _)| v)
            .collect()
    }

    fn eval(text: &str, h: &Hypothesis) -> Interpretation {
        evaluate(&parse_sign(text).unwrap(), h).unwrap()
    }

    const D: Hypothesis = Hypothesis::DEFAULT;

    #[test]
    fn atom_readings_under_default() {
        assert_eq!(values(Atom::Comb { teeth: 5 }, &D), [15]);
        assert_eq!(values(Atom::Divided { left: 9, right: 6 }, &D), [25, 15]);
        assert_eq!(
            values(
                Atom::LongShort {
                    longs: 3,
                    shorts: 2
                },
                &D
            ),
            [32]
        );
        assert_eq!(values(Atom::Pole { crossings: 4 }, &D), [14, 4]);
        assert_eq!(values(Atom::score(7), &D), [7]);
        assert_eq!(values(Atom::ScoreRow { count: 7, rows: 2 }, &D), [7]);
        assert_eq!(values(Atom::Chevron, &D), [10]);
        assert_eq!(values(Atom::Cross, &D), [20]);
    }

    #[test]
    fn comb_rules() {
        let comb = Atom::Comb { teeth: 5 };
        let with = |rule| Hypothesis::with_comb(rule).unwrap();
        assert_eq!(values(comb, &with(CombRule::NTimesB { base: 5 })), [25]);
        assert_eq!(values(comb, &with(CombRule::NOnly)), [5]);
        assert_eq!(values(comb, &with(CombRule::NPlusOne)), [6]);
        assert_eq!(values(comb, &with(CombRule::BPlusN { base: 9 })), [14]);
    }

    #[test]
    fn score_ignores_hypothesis() {
        for name in ["default", "comb-n", "comb-n1", "comb-nb:10", "comb-b9"] {
            let h = Hypothesis::preset(name).unwrap();
            assert_eq!(values(Atom::score(7), &h), [7]);
        }
    }

    #[test]
    fn ligatures_are_additive() {
        let i = eval("X;V;S2", &D);
        assert_eq!(i.candidates_desc(), [32]);
        assert_eq!(i.confidence(), Confidence::Tentative);
        let i = eval("X;X", &D);
        assert_eq!(i.candidates_desc(), [40]);
        assert_eq!(i.confidence(), Confidence::Tentative);
    }

    #[test]
    fn pole_ligature_enumerates_choices() {
        // P3 reads 13 or 3, S2 reads 2: the two choices give 15 and 5.
        let i = eval("P3;S2", &D);
        assert_eq!(i.candidates_desc(), [15, 5]);
        assert_eq!(i.confidence(), Confidence::Asserted);
        assert_eq!(i.derivations().len(), 2);
        assert!(!i.is_deduplicated());
    }

    #[test]
    fn duplicate_sums_are_recorded() {
        // {13,3} + {13,3} = 26, 16, 16, 6
        let i = eval("P3;P3", &D);
        assert_eq!(i.derivations().len(), 4);
        assert_eq!(i.candidates_desc(), [26, 16, 6]);
        assert_eq!(i.merged_duplicates(), 1);
        assert_eq!(i.traces_for(16).count(), 2);
    }

    #[test]
    fn opaque_atoms_are_not_evaluable() {
        let sign = Sign::new(vec![
            Atom::score(2),
            Atom::Opaque {
                family: FamilyTag::Pole,
            },
        ])
        .unwrap();
        assert_eq!(
            evaluate(&sign, &D),
            Err(EvalError::NonEvaluable {
                index: 1,
                family: FamilyTag::Pole
            })
        );
    }

    #[test]
    fn hypothesis_invariants() {
        use CombRule::*;
        assert!(Hypothesis::new(TenPlusN, PoleRule::Both, DividedRule::Both, 10, 10, 10).is_err());
        assert!(Hypothesis::new(TenPlusN, PoleRule::Both, DividedRule::Both, 10, 20, 1).is_err());
        assert!(Hypothesis::new(
            NTimesB { base: 1 },
            PoleRule::Both,
            DividedRule::Both,
            10,
            20,
            10
        )
        .is_err());
        assert!(Hypothesis::new(TenPlusN, PoleRule::Both, DividedRule::Both, 0, 20, 10).is_err());
    }

    #[test]
    fn presets() {
        assert_eq!(Hypothesis::preset("default").unwrap(), D);
        assert_eq!(
            Hypothesis::preset("comb-n").unwrap().comb(),
            CombRule::NOnly
        );
        assert_eq!(
            Hypothesis::preset("comb-n1").unwrap().comb(),
            CombRule::NPlusOne
        );
        assert_eq!(
            Hypothesis::preset("comb-nb:7").unwrap().comb(),
            CombRule::NTimesB { base: 7 }
        );
        assert_eq!(
            Hypothesis::preset("comb-b9").unwrap().comb(),
            CombRule::BPlusN { base: 9 }
        );
        assert!(Hypothesis::preset("comb-nb:1").is_err());
        assert!(Hypothesis::preset("comb-nb:x").is_err());
        assert!(Hypothesis::preset("nope").is_err());
    }

    #[test]
    fn hypothesis_json_is_validated() {
        let json = serde_json::to_string(&D).unwrap();
        let back: Hypothesis = serde_json::from_str(&json).unwrap();
        assert_eq!(back, D);
        let bad = json.replace("\"cross_value\":20", "\"cross_value\":10");
        assert!(serde_json::from_str::<Hypothesis>(&bad).is_err());
    }

    #[test]
    fn expressibility_bounds() {
        assert_eq!(expressible_values(&D, 0), Err(ZeroBound));
        assert_eq!(expressible_values(&D, 1).unwrap(), BTreeSet::from([1]));
    }

    #[test]
    fn overflow_is_reported() {
        let h = Hypothesis::new(
            CombRule::TenPlusN,
            PoleRule::Both,
            DividedRule::Both,
            10,
            20,
            u32::MAX,
        )
        .unwrap();
        let big = Atom::LongShort {
            longs: u32::MAX,
            shorts: u32::MAX,
        };
        assert!(evaluate_atom(&big, &h).is_ok());
        let sign = Sign::new(vec![big; 3]).unwrap();
        assert!(matches!(
            evaluate(&sign, &h),
            Err(EvalError::Overflow { .. })
        ));
    }
}
