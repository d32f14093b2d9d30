//! The catalog of numerically inscribed objects and its CSV format.
//!
//! One row per listing:
//!
//! ```text
//! id,site,kind,locus,family,claimed_value,notation,table_section
//! Tor91,Tor,pot,unknown,score,1,S1,A
//! Ban22,Ban,pot,unknown,chevron,?10,V,D
//! Tor201,Tor,pot,unknown,divided,24,,C2
//! ```
//!
//! Empty fields are absent values; a `?` prefix marks a tentative value.
//! An object listed under several values appears once per listing.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::interpret::{evaluate, Hypothesis};
use crate::notation::{parse_sign, NotationError};
use crate::sign::{FamilyTag, Sign};

pub const HEADER: [&str; 8] = [
    "id",
    "site",
    "kind",
    "locus",
    "family",
    "claimed_value",
    "notation",
    "table_section",
];

/// Approximate number of inscribed objects in the full corpus. The shipped
/// catalog is only the numerical subset, so this is not derived from it.
pub const TOTAL_INSCRIPTIONS: u32 = 940;

/// The shipped catalog transcription.
pub const TABLE1_CSV: &str = include_str!("../data/table1.csv");

/// Notes on how the shipped catalog was transcribed.
pub const TRANSCRIPTION_NOTES: &[(&str, &str)] = &[
    (
        "Tor170,Tor171,Tor172",
        "listed as T170, T171, T172 in the score-mark (1) list; transcribed as Tordos objects",
    ),
    (
        "C1,C2,C3",
        "the three unlabeled paragraphs of part C are mapped in order to the pole, divided \
         and long/short groups; this mapping is inferred",
    ),
    (
        "C",
        "part C entries carry no recoverable stroke parameters and ship without notation",
    ),
    (
        "Vin41",
        "possibly the long/short example read as 32 (L3S2); not asserted",
    ),
    (
        "Tor201",
        "listed under both 24 and 25; the 25 listing may be the 9|6 divided example (D9,6); not asserted",
    ),
    (
        "B",
        "34 comb listings against a published count of 33; Tor152 and Med10 also appear among score marks",
    ),
    (
        "A",
        "A sums to 134 listings; the one-to-nine rows alone sum to 129",
    ),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Site {
    Tor,
    Vin,
    Anz,
    Ara,
    Ban,
    Div,
    GorTu,
    Grab,
    Jel,
    Korm,
    Med,
    Vrs,
}

impl Site {
    pub const ALL: [Site; 12] = [
        Site::Tor,
        Site::Vin,
        Site::Anz,
        Site::Ara,
        Site::Ban,
        Site::Div,
        Site::GorTu,
        Site::Grab,
        Site::Jel,
        Site::Korm,
        Site::Med,
        Site::Vrs,
    ];

    pub fn abbreviation(self) -> &'static str {
        match self {
            Site::Tor => "Tor",
            Site::Vin => "Vin",
            Site::Anz => "Anz",
            Site::Ara => "Ara",
            Site::Ban => "Ban",
            Site::Div => "Div",
            Site::GorTu => "GorTu",
            Site::Grab => "Grab",
            Site::Jel => "Jel",
            Site::Korm => "Korm",
            Site::Med => "Med",
            Site::Vrs => "Vrs",
        }
    }

    pub fn full_name(self) -> &'static str {
        match self {
            Site::Tor => "Tordos",
            Site::Vin => "Vinca",
            Site::Anz => "Anza (Anzabegovo)",
            Site::Ara => "Aradac",
            Site::Ban => "Banjica",
            Site::Div => "Divostin",
            Site::GorTu => "Gornja Tuzla",
            Site::Grab => "Grabovac",
            Site::Jel => "Jela",
            Site::Korm => "Kormadin",
            Site::Med => "Medvednjak",
            Site::Vrs => "Vrsac",
        }
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.abbreviation())
    }
}

impl FromStr for Site {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Site::ALL
            .into_iter()
            .find(|site| site.abbreviation() == s)
            .ok_or(())
    }
}

impl Serialize for Site {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.abbreviation())
    }
}

macro_rules! keyword_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name { $($variant),+ }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self { $($name::$variant => $text),+ }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = ();
            fn from_str(s: &str) -> Result<Self, ()> {
                match s { $($text => Ok($name::$variant),)+ _ => Err(()) }
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(self.as_str())
            }
        }
    };
}

keyword_enum!(ObjectKind {
    Pot => "pot",
    Whorl => "whorl",
    Figurine => "figurine",
    Other => "other",
    Unknown => "unknown",
});

keyword_enum!(Locus {
    Base => "base",
    Body => "body",
    Unknown => "unknown",
});

keyword_enum!(
    /// Catalog part a listing comes from. Part C is split into its three
    /// groups.
    Section {
        A => "A",
        B => "B",
        C1 => "C1",
        C2 => "C2",
        C3 => "C3",
        D => "D",
    }
);

impl Section {
    /// The catalog part letter (`C1`..`C3` all map to `C`).
    pub fn part(self) -> &'static str {
        match self {
            Section::C1 | Section::C2 | Section::C3 => "C",
            other => other.as_str(),
        }
    }

    /// Whether a listing of `family` may appear in this section.
    pub fn admits(self, family: FamilyTag) -> bool {
        use FamilyTag::*;
        matches!(
            (self, family),
            (_, Unknown)
                | (Section::A, Score)
                | (Section::B, Comb)
                | (Section::C1, Pole)
                | (Section::C2, Divided)
                | (Section::C3, LongShort)
                | (Section::D, Chevron | Cross | Composite)
        )
    }
}

/// The value a listing is cataloged under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClaimedValue {
    pub value: u64,
    pub tentative: bool,
}

impl ClaimedValue {
    pub fn exact(value: u64) -> Self {
        ClaimedValue {
            value,
            tentative: false,
        }
    }

    pub fn tentative(value: u64) -> Self {
        ClaimedValue {
            value,
            tentative: true,
        }
    }
}

impl fmt::Display for ClaimedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tentative {
            write!(f, "?{}", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

impl FromStr for ClaimedValue {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        let (digits, tentative) = match s.strip_prefix('?') {
            Some(rest) => (rest, true),
            None => (s, false),
        };
        if digits.is_empty()
            || !digits.bytes().all(|b| b.is_ascii_digit())
            || digits.starts_with('0')
        {
            return Err(());
        }
        let value = digits.parse().map_err(|_| ())?;
        Ok(ClaimedValue { value, tentative })
    }
}

impl Serialize for ClaimedValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One catalog listing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusRecord {
    pub id: String,
    pub site: Site,
    pub kind: ObjectKind,
    pub locus: Locus,
    pub family: FamilyTag,
    pub claimed_value: Option<ClaimedValue>,
    pub notation: Option<String>,
    pub table_section: Section,
    /// The parsed notation, or an opaque sign of `family` when there is none.
    #[serde(skip)]
    pub sign: Sign,
    /// 1-based line in the source file; 0 for records built in memory.
    #[serde(skip)]
    pub line: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transcription_note: Option<String>,
}

impl CorpusRecord {
    fn csv_fields(&self) -> [String; 8] {
        [
            self.id.clone(),
            self.site.to_string(),
            self.kind.to_string(),
            self.locus.to_string(),
            self.family.to_string(),
            self.claimed_value
                .map(|v| v.to_string())
                .unwrap_or_default(),
            self.notation.clone().unwrap_or_default(),
            self.table_section.to_string(),
        ]
    }

    /// `A(3)`-style label of the value list this listing belongs to.
    pub fn list_label(&self) -> String {
        match self.claimed_value {
            Some(v) => format!("{}({v})", self.table_section),
            None => format!("{}(-)", self.table_section),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadErrorKind {
    #[error("cannot read corpus: {0}")]
    Io(String),
    #[error("malformed row: {0}")]
    Malformed(String),
    #[error("bad header, expected `{}`", HEADER.join(","))]
    BadHeader,
    #[error("unknown site `{0}`")]
    UnknownSite(String),
    #[error("invalid {field} `{value}`")]
    BadField { field: &'static str, value: String },
    #[error("id `{id}` does not begin with site `{site}`")]
    IdSite { id: String, site: Site },
    #[error("notation `{notation}`: {error}")]
    Notation {
        notation: String,
        error: NotationError,
    },
    #[error("notation `{notation}` is a {parsed} sign but the row says {family}")]
    FamilyMismatch {
        notation: String,
        parsed: FamilyTag,
        family: FamilyTag,
    },
    #[error("section {section} does not list {family} signs")]
    SectionFamily { section: Section, family: FamilyTag },
    #[error("section D values must be tentative (`?n`)")]
    NotTentative,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct LoadError {
    pub line: u64,
    pub kind: LoadErrorKind,
}

/// All row errors found while loading.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct LoadErrors(pub Vec<LoadError>);

impl fmt::Display for LoadErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Corpus {
    pub records: Vec<CorpusRecord>,
    pub total_inscriptions: u32,
}

impl Default for Corpus {
    fn default() -> Self {
        Corpus::new(Vec::new())
    }
}

impl Corpus {
    pub fn new(records: Vec<CorpusRecord>) -> Self {
        Corpus {
            records,
            total_inscriptions: TOTAL_INSCRIPTIONS,
        }
    }

    /// The shipped catalog.
    pub fn table1() -> Corpus {
        load_corpus(TABLE1_CSV.as_bytes()).expect("shipped catalog is well-formed")
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, CorpusRecord> {
        self.records.iter()
    }

    pub fn filter(&self, predicate: &RecordFilter) -> Corpus {
        self.filter_by(|r| predicate.matches(r))
    }

    pub fn filter_by(&self, mut keep: impl FnMut(&CorpusRecord) -> bool) -> Corpus {
        Corpus {
            records: self.records.iter().filter(|r| keep(r)).cloned().collect(),
            total_inscriptions: self.total_inscriptions,
        }
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        writer.write_record(HEADER)?;
        for record in &self.records {
            writer.write_record(record.csv_fields())?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("fields are UTF-8")
    }
}

/// Field-wise conjunction; `None` matches anything.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RecordFilter {
    pub site: Option<Site>,
    pub kind: Option<ObjectKind>,
    pub family: Option<FamilyTag>,
    pub section: Option<Section>,
    pub value: Option<ClaimedValue>,
}

impl RecordFilter {
    pub fn matches(&self, r: &CorpusRecord) -> bool {
        self.site.is_none_or(|s| r.site == s)
            && self.kind.is_none_or(|k| r.kind == k)
            && self.family.is_none_or(|f| r.family == f)
            && self.section.is_none_or(|s| r.table_section == s)
            && self.value.is_none_or(|v| r.claimed_value == Some(v))
    }
}

pub fn load_corpus_path(path: impl AsRef<Path>) -> Result<Corpus, LoadErrors> {
    let file = std::fs::File::open(path.as_ref()).map_err(|e| {
        LoadErrors(vec![LoadError {
            line: 0,
            kind: LoadErrorKind::Io(format!("{}: {e}", path.as_ref().display())),
        }])
    })?;
    load_corpus(file)
}

/// Parses a catalog, collecting every row error instead of stopping at the
/// first one.
pub fn load_corpus<R: Read>(input: R) -> Result<Corpus, LoadErrors> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(input);
    let mut errors = Vec::new();
    let mut records = Vec::new();
    let mut header_seen = false;

    for row in reader.records() {
        let row = match row {
            Ok(row) => row,
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line());
                let kind = match e.kind() {
                    csv::ErrorKind::Io(io) => LoadErrorKind::Io(io.to_string()),
                    csv::ErrorKind::Utf8 { .. } => LoadErrorKind::Malformed("invalid UTF-8".into()),
                    _ => LoadErrorKind::Malformed(e.to_string()),
                };
                let fatal = matches!(kind, LoadErrorKind::Io(_));
                errors.push(LoadError { line, kind });
                if fatal {
                    break;
                }
                continue;
            }
        };
        let line = row.position().map_or(0, |p| p.line());
        if !header_seen {
            header_seen = true;
            if row.iter().ne(HEADER.iter().copied()) {
                errors.push(LoadError {
                    line,
                    kind: LoadErrorKind::BadHeader,
                });
            }
            continue;
        }
        match parse_row(&row, line) {
            Ok(record) => records.push(record),
            Err(kinds) => errors.extend(kinds.into_iter().map(|kind| LoadError { line, kind })),
        }
    }
    if !header_seen {
        errors.push(LoadError {
            line: 1,
            kind: LoadErrorKind::BadHeader,
        });
    }
    if errors.is_empty() {
        Ok(Corpus::new(records))
    } else {
        Err(LoadErrors(errors))
    }
}

fn parse_row(row: &csv::StringRecord, line: u64) -> Result<CorpusRecord, Vec<LoadErrorKind>> {
    if row.len() != HEADER.len() {
        return Err(vec![LoadErrorKind::Malformed(format!(
            "expected {} fields, found {}",
            HEADER.len(),
            row.len()
        ))]);
    }
    let mut errors = Vec::new();
    let field = |i: usize| &row[i];
    fn keyword<T: FromStr>(
        raw: &str,
        name: &'static str,
        errors: &mut Vec<LoadErrorKind>,
    ) -> Option<T> {
        let parsed = raw.parse().ok();
        if parsed.is_none() {
            errors.push(LoadErrorKind::BadField {
                field: name,
                value: raw.to_owned(),
            });
        }
        parsed
    }

    let site = field(1).parse::<Site>().ok();
    if site.is_none() {
        errors.push(LoadErrorKind::UnknownSite(field(1).to_owned()));
    }
    let kind = keyword::<ObjectKind>(field(2), "kind", &mut errors);
    let locus = keyword::<Locus>(field(3), "locus", &mut errors);
    let family = keyword::<FamilyTag>(field(4), "family", &mut errors);
    let claimed_value = match field(5) {
        "" => Some(None),
        raw => keyword::<ClaimedValue>(raw, "claimed_value", &mut errors).map(Some),
    };
    let section = keyword::<Section>(field(7), "table_section", &mut errors);

    let mut id = field(0).to_owned();
    let mut transcription_note = None;
    if let Some(site) = site {
        if let Some(canonical) = expand_short_id(&id, site) {
            transcription_note = Some(format!("id {id} read as {canonical}"));
            id = canonical;
        }
        let numbered = id
            .strip_prefix(site.abbreviation())
            .is_some_and(|rest| !rest.is_empty());
        if !numbered {
            errors.push(LoadErrorKind::IdSite {
                id: id.clone(),
                site,
            });
        }
    }

    let notation = match field(6) {
        "" => None,
        text => Some(text.to_owned()),
    };
    let parsed = match &notation {
        Some(text) => match parse_sign(text) {
            Ok(sign) => Some(sign),
            Err(error) => {
                errors.push(LoadErrorKind::Notation {
                    notation: text.clone(),
                    error,
                });
                None
            }
        },
        None => None,
    };

    if let (Some(family), Some(sign), Some(text)) = (family, &parsed, &notation) {
        if sign.classify() != family {
            errors.push(LoadErrorKind::FamilyMismatch {
                notation: text.clone(),
                parsed: sign.classify(),
                family,
            });
        }
    }
    if let (Some(section), Some(family)) = (section, family) {
        if !section.admits(family) {
            errors.push(LoadErrorKind::SectionFamily { section, family });
        }
    }
    if let (Some(Section::D), Some(Some(value))) = (section, claimed_value) {
        if !value.tentative {
            errors.push(LoadErrorKind::NotTentative);
        }
    }

    if !errors.is_empty() {
        return Err(errors);
    }
    let family = family.expect("checked");
    Ok(CorpusRecord {
        id,
        site: site.expect("checked"),
        kind: kind.expect("checked"),
        locus: locus.expect("checked"),
        family,
        claimed_value: claimed_value.expect("checked"),
        sign: parsed.unwrap_or_else(|| Sign::opaque(family)),
        notation,
        table_section: section.expect("checked"),
        line,
        transcription_note,
    })
}

/// `T170` with site `Tor` becomes `Tor170`.
fn expand_short_id(id: &str, site: Site) -> Option<String> {
    let abbreviation = site.abbreviation();
    if id.starts_with(abbreviation) {
        return None;
    }
    let mut chars = id.chars();
    let initial = chars.next()?;
    let rest = chars.as_str();
    let short = abbreviation.starts_with(initial)
        && !rest.is_empty()
        && rest.bytes().all(|b| b.is_ascii_digit());
    short.then(|| format!("{abbreviation}{rest}"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "finding", rename_all = "kebab-case")]
pub enum Finding {
    /// The same id appears more than once in one value list.
    DuplicateInList {
        id: String,
        list: String,
        occurrences: usize,
    },
    /// The same id appears in more than one value list.
    CrossListed { id: String, lists: Vec<String> },
    /// The notation's reading does not include the claimed value.
    ValueMismatch {
        id: String,
        line: u64,
        claimed: ClaimedValue,
        derived: Vec<u64>,
    },
    OutOfRange {
        id: String,
        line: u64,
        detail: String,
    },
}

impl Finding {
    pub fn is_mismatch(&self) -> bool {
        matches!(self, Finding::ValueMismatch { .. })
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::DuplicateInList {
                id,
                list,
                occurrences,
            } => write!(f, "duplicate-in-list {id}: {occurrences} times in {list}"),
            Finding::CrossListed { id, lists } => {
                write!(f, "cross-listed {id}: {}", lists.join(", "))
            }
            Finding::ValueMismatch {
                id,
                line,
                claimed,
                derived,
            } => {
                let derived: Vec<String> = derived.iter().map(u64::to_string).collect();
                write!(
                    f,
                    "value-mismatch {id} (line {line}): claimed {claimed}, notation reads {}",
                    if derived.is_empty() {
                        "nothing".to_owned()
                    } else {
                        derived.join(" ")
                    }
                )
            }
            Finding::OutOfRange { id, line, detail } => {
                write!(f, "out-of-range {id} (line {line}): {detail}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn has_mismatches(&self) -> bool {
        self.findings.iter().any(Finding::is_mismatch)
    }

    /// Ids flagged as repeated within a single list.
    pub fn duplicate_ids(&self) -> Vec<&str> {
        self.findings
            .iter()
            .filter_map(|f| match f {
                Finding::DuplicateInList { id, .. } => Some(id.as_str()),
                _ => None,
            })
            .collect()
    }

    pub fn cross_listed_ids(&self) -> Vec<&str> {
        self.findings
            .iter()
            .filter_map(|f| match f {
                Finding::CrossListed { id, .. } => Some(id.as_str()),
                _ => None,
            })
            .collect()
    }
}

/// Checks the catalog for repeated listings, readings that disagree with the
/// claimed value under the default hypothesis, and unattested parameters.
/// Repeated listings are kept; objects may carry several inscriptions.
pub fn validate(corpus: &Corpus) -> ValidationReport {
    let mut findings = Vec::new();

    // id -> list label -> count, in first-seen order
    let mut order: Vec<&str> = Vec::new();
    let mut lists: HashMap<&str, Vec<(String, usize)>> = HashMap::new();
    for r in &corpus.records {
        let entry = lists.entry(&r.id).or_insert_with(|| {
            order.push(&r.id);
            Vec::new()
        });
        let label = r.list_label();
        match entry.iter_mut().find(|(l, _)| *l == label) {
            Some((_, n)) => *n += 1,
            None => entry.push((label, 1)),
        }
    }
    for id in &order {
        for (list, n) in &lists[id] {
            if *n > 1 {
                findings.push(Finding::DuplicateInList {
                    id: id.to_string(),
                    list: list.clone(),
                    occurrences: *n,
                });
            }
        }
    }
    for id in &order {
        let l = &lists[id];
        if l.len() > 1 {
            findings.push(Finding::CrossListed {
                id: id.to_string(),
                lists: l.iter().map(|(label, _)| label.clone()).collect(),
            });
        }
    }

    for r in &corpus.records {
        let (Some(claimed), Some(_)) = (r.claimed_value, &r.notation) else {
            continue;
        };
        let derived = evaluate(&r.sign, &Hypothesis::DEFAULT)
            .map(|i| i.candidates_desc())
            .unwrap_or_default();
        if !derived.contains(&claimed.value) {
            findings.push(Finding::ValueMismatch {
                id: r.id.clone(),
                line: r.line,
                claimed,
                derived,
            });
        }
    }

    for r in &corpus.records {
        for atom in r.sign.atoms() {
            for detail in atom.range_warnings() {
                findings.push(Finding::OutOfRange {
                    id: r.id.clone(),
                    line: r.line,
                    detail,
                });
            }
        }
    }

    ValidationReport { findings }
}

/// Listing counts keyed by `(section, claimed value)`.
pub fn counts_by_list(corpus: &Corpus) -> BTreeMap<(Section, Option<ClaimedValue>), usize> {
    let mut out = BTreeMap::new();
    for r in &corpus.records {
        *out.entry((r.table_section, r.claimed_value)).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(rows: &[&str]) -> Result<Corpus, LoadErrors> {
        let mut text = HEADER.join(",");
        for row in rows {
            text.push('\n');
            text.push_str(row);
        }
        text.push('\n');
        load_corpus(text.as_bytes())
    }

    #[test]
    fn loads_score_row() {
        let c = load(&["Tor91,Tor,pot,unknown,score,1,S1,A"]).unwrap();
        let r = &c.records[0];
        assert_eq!(r.id, "Tor91");
        assert_eq!(r.family, FamilyTag::Score);
        assert_eq!(r.claimed_value, Some(ClaimedValue::exact(1)));
        assert_eq!(r.line, 2);
        assert_eq!(c.total_inscriptions, 940);
    }

    #[test]
    fn loads_tentative_and_opaque_rows() {
        let c = load(&[
            "Ban22,Ban,pot,unknown,chevron,?10,V,D",
            "Tor201,Tor,pot,unknown,divided,24,,C2",
        ])
        .unwrap();
        assert_eq!(
            c.records[0].claimed_value,
            Some(ClaimedValue::tentative(10))
        );
        assert_eq!(c.records[1].notation, None);
        assert!(!c.records[1].sign.is_evaluable());
        assert_eq!(c.records[1].sign.classify(), FamilyTag::Divided);
    }

    #[test]
    fn quoted_divided_notation() {
        let c = load(&["Tor201,Tor,pot,unknown,divided,25,\"D9,6\",C2"]).unwrap();
        assert_eq!(c.records[0].notation.as_deref(), Some("D9,6"));
        assert!(c.to_csv().contains("\"D9,6\""));
    }

    #[test]
    fn collects_errors_per_line() {
        let errors = load(&[
            "Tor91,Tor,pot,unknown,score,1,S1,A",
            "Xyz1,Xyz,pot,unknown,score,1,S1,A",
            "Tor92,Tor,pot,unknown,score,2,Q2,A",
            "Tor93,Tor,pot,unknown,comb,2,S2,A",
            "Tor94,Tor,pot",
            "Ban22,Ban,pot,unknown,chevron,10,V,D",
            "Tor95,Tor,vase,unknown,score,3,S3,A",
            "Vin1,Tor,pot,unknown,score,3,S3,A",
            "Tor96,Tor,pot,unknown,comb,15,C5,A",
        ])
        .unwrap_err()
        .0;
        let lines: Vec<u64> = errors.iter().map(|e| e.line).collect();
        assert_eq!(lines, [3, 4, 5, 5, 6, 7, 8, 9, 10]);
        assert!(matches!(errors[0].kind, LoadErrorKind::UnknownSite(_)));
        assert!(matches!(errors[1].kind, LoadErrorKind::Notation { .. }));
        assert!(matches!(
            errors[2].kind,
            LoadErrorKind::FamilyMismatch { .. }
        ));
        assert!(matches!(
            errors[3].kind,
            LoadErrorKind::SectionFamily { .. }
        ));
        assert!(matches!(errors[4].kind, LoadErrorKind::Malformed(_)));
        assert!(matches!(errors[5].kind, LoadErrorKind::NotTentative));
        assert!(matches!(
            errors[6].kind,
            LoadErrorKind::BadField { field: "kind", .. }
        ));
        assert!(matches!(errors[7].kind, LoadErrorKind::IdSite { .. }));
        assert!(matches!(
            errors[8].kind,
            LoadErrorKind::SectionFamily { .. }
        ));
    }

    #[test]
    fn rejects_bad_header_and_empty_input() {
        assert!(load_corpus("id,site\n".as_bytes()).is_err());
        assert!(load_corpus("".as_bytes()).is_err());
        assert!(load(&[]).unwrap().is_empty());
    }

    #[test]
    fn short_tordos_ids_are_expanded() {
        let c = load(&["T170,Tor,pot,unknown,score,1,S1,A"]).unwrap();
        assert_eq!(c.records[0].id, "Tor170");
        assert!(c.records[0].transcription_note.is_some());
    }

    #[test]
    fn claimed_value_syntax() {
        assert_eq!("?20".parse(), Ok(ClaimedValue::tentative(20)));
        assert_eq!("7".parse(), Ok(ClaimedValue::exact(7)));
        assert!("?".parse::<ClaimedValue>().is_err());
        assert!("07".parse::<ClaimedValue>().is_err());
        assert!("-3".parse::<ClaimedValue>().is_err());
    }

    #[test]
    fn mismatch_detection() {
        let ok = load(&["Tor49,Tor,pot,unknown,comb,15,C5,B"]).unwrap();
        assert!(!validate(&ok).has_mismatches());
        let bad = load(&["Tor49,Tor,pot,unknown,comb,14,C5,B"]).unwrap();
        let report = validate(&bad);
        assert!(report.has_mismatches());
        assert_eq!(
            report.findings,
            [Finding::ValueMismatch {
                id: "Tor49".into(),
                line: 2,
                claimed: ClaimedValue::exact(14),
                derived: vec![15],
            }]
        );
    }

    #[test]
    fn duplicates_are_kept_and_flagged() {
        let c = load(&[
            "Tor156,Tor,pot,unknown,score,2,S2,A",
            "Tor156,Tor,pot,unknown,score,2,S2,A",
            "Tor117,Tor,pot,unknown,score,3,S3,A",
            "Tor117,Tor,pot,unknown,score,5,S5,A",
        ])
        .unwrap();
        assert_eq!(c.len(), 4);
        let report = validate(&c);
        assert_eq!(report.duplicate_ids(), ["Tor156"]);
        assert_eq!(report.cross_listed_ids(), ["Tor117"]);
    }

    #[test]
    fn out_of_range_parameters_are_warnings() {
        let c = load(&["Tor224,Tor,pot,unknown,score,14,S14,A"]).unwrap();
        let report = validate(&c);
        assert!(!report.has_mismatches());
        assert!(matches!(report.findings[..], [Finding::OutOfRange { .. }]));
    }

    #[test]
    fn filters() {
        let c = Corpus::table1();
        let vrs = c.filter(&RecordFilter {
            site: Some(Site::Vrs),
            ..Default::default()
        });
        assert_eq!(vrs.len(), 1);
        assert_eq!(vrs.records[0].id, "Vrs5");
        assert_eq!(vrs.total_inscriptions, 940);
        assert_eq!(c.filter(&RecordFilter::default()), c);
    }

    #[test]
    fn shipped_catalog_round_trips() {
        assert_eq!(Corpus::table1().to_csv(), TABLE1_CSV);
    }
}
