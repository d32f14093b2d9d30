//! The sign model: atoms, ligatures and sign families.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Parameter ranges observed in the catalog. Forms outside these ranges are
/// still well-formed and evaluable, but are reported by validation and left
/// out of expressibility enumeration.
pub mod attested {
    use std::ops::RangeInclusive;

    pub const SCORE_COUNT: RangeInclusive<u32> = 1..=9;
    pub const COMB_TEETH: RangeInclusive<u32> = 3..=8;
    pub const POLE_CROSSINGS: RangeInclusive<u32> = 1..=9;
    pub const DIVIDED_SIDE: RangeInclusive<u32> = 0..=9;
    pub const LONG_STROKES: RangeInclusive<u32> = 1..=4;
    pub const SHORT_STROKES: RangeInclusive<u32> = 0..=9;
}

/// The sign groups used to catalog inscriptions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyTag {
    Score,
    Comb,
    Pole,
    Divided,
    LongShort,
    Chevron,
    Cross,
    Composite,
    Unknown,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 9] = [
        FamilyTag::Score,
        FamilyTag::Comb,
        FamilyTag::Pole,
        FamilyTag::Divided,
        FamilyTag::LongShort,
        FamilyTag::Chevron,
        FamilyTag::Cross,
        FamilyTag::Composite,
        FamilyTag::Unknown,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyTag::Score => "score",
            FamilyTag::Comb => "comb",
            FamilyTag::Pole => "pole",
            FamilyTag::Divided => "divided",
            FamilyTag::LongShort => "longshort",
            FamilyTag::Chevron => "chevron",
            FamilyTag::Cross => "cross",
            FamilyTag::Composite => "composite",
            FamilyTag::Unknown => "unknown",
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown sign family `{0}`")]
pub struct UnknownFamily(pub String);

impl FromStr for FamilyTag {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyTag::ALL
            .into_iter()
            .find(|tag| tag.as_str() == s)
            .ok_or_else(|| UnknownFamily(s.to_owned()))
    }
}

/// One elementary sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "atom", rename_all = "lowercase")]
pub enum Atom {
    /// `count` short strokes laid out in `rows` rows (or columns).
    ScoreRow { count: u32, rows: u32 },
    /// A horizontal stroke carrying `teeth` perpendicular teeth.
    Comb { teeth: u32 },
    /// A long stroke crossed by `crossings` short strokes.
    Pole { crossings: u32 },
    /// Score marks on both sides of a line.
    Divided { left: u32, right: u32 },
    /// `longs` long strokes next to `shorts` short strokes.
    LongShort { longs: u32, shorts: u32 },
    /// `V`
    Chevron,
    /// `X` or `+`
    Cross,
    /// A cataloged sign whose stroke parameters are not recoverable.
    Opaque { family: FamilyTag },
}

impl Atom {
    pub fn score(count: u32) -> Atom {
        Atom::ScoreRow { count, rows: 1 }
    }

    pub fn family(&self) -> FamilyTag {
        match self {
            Atom::ScoreRow { .. } => FamilyTag::Score,
            Atom::Comb { .. } => FamilyTag::Comb,
            Atom::Pole { .. } => FamilyTag::Pole,
            Atom::Divided { .. } => FamilyTag::Divided,
            Atom::LongShort { .. } => FamilyTag::LongShort,
            Atom::Chevron => FamilyTag::Chevron,
            Atom::Cross => FamilyTag::Cross,
            Atom::Opaque { family } => *family,
        }
    }

    pub fn is_opaque(&self) -> bool {
        matches!(self, Atom::Opaque { .. })
    }

    /// Checks the structural invariants of the atom.
    pub fn check(&self) -> Result<(), SignError> {
        let bad = |reason: &'static str| {
            Err(SignError::InvalidAtom {
                atom: *self,
                reason,
            })
        };
        match *self {
            Atom::ScoreRow { count, rows } => {
                if count == 0 {
                    return bad("score row needs at least one stroke");
                }
                if rows == 0 || rows > count {
                    return bad("score rows must be between 1 and the stroke count");
                }
            }
            Atom::Comb { teeth: 0 } => return bad("comb needs at least one tooth"),
            Atom::Pole { crossings: 0 } => return bad("pole needs at least one crossing"),
            Atom::Divided { left: 0, right: 0 } => {
                return bad("divided line needs at least one score mark")
            }
            Atom::LongShort { longs: 0, .. } => return bad("long/short group needs a long stroke"),
            _ => {}
        }
        Ok(())
    }

    /// Describes every parameter lying outside the catalog's attested range.
    pub fn range_warnings(&self) -> Vec<String> {
        fn outside(name: &str, value: u32, range: RangeInclusive<u32>, out: &mut Vec<String>) {
            if !range.contains(&value) {
                out.push(format!(
                    "{name} {value} outside attested range {}..{}",
                    range.start(),
                    range.end()
                ));
            }
        }
        let mut out = Vec::new();
        match *self {
            Atom::ScoreRow { count, .. } => {
                outside("score count", count, attested::SCORE_COUNT, &mut out)
            }
            Atom::Comb { teeth } => outside("comb teeth", teeth, attested::COMB_TEETH, &mut out),
            Atom::Pole { crossings } => outside(
                "pole crossings",
                crossings,
                attested::POLE_CROSSINGS,
                &mut out,
            ),
            Atom::Divided { left, right } => {
                outside("divided side", left, attested::DIVIDED_SIDE, &mut out);
                outside("divided side", right, attested::DIVIDED_SIDE, &mut out);
            }
            Atom::LongShort { longs, shorts } => {
                outside("long strokes", longs, attested::LONG_STROKES, &mut out);
                outside("short strokes", shorts, attested::SHORT_STROKES, &mut out);
            }
            Atom::Chevron | Atom::Cross | Atom::Opaque { .. } => {}
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignError {
    #[error("a sign needs at least one atom")]
    Empty,
    #[error("invalid atom {atom:?}: {reason}")]
    InvalidAtom { atom: Atom, reason: &'static str },
}

/// The content of one inscription: a single atom, or several atoms
/// juxtaposed or ligatured together.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Sign {
    atoms: Vec<Atom>,
}

impl Sign {
    pub fn new(atoms: Vec<Atom>) -> Result<Sign, SignError> {
        if atoms.is_empty() {
            return Err(SignError::Empty);
        }
        atoms.iter().try_for_each(Atom::check)?;
        Ok(Sign { atoms })
    }

    pub fn single(atom: Atom) -> Result<Sign, SignError> {
        Sign::new(vec![atom])
    }

    /// A sign known only by its family.
    pub fn opaque(family: FamilyTag) -> Sign {
        Sign {
            atoms: vec![Atom::Opaque { family }],
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_ligature(&self) -> bool {
        self.atoms.len() > 1
    }

    /// False when any atom is opaque; such a sign only has the value its
    /// catalog entry claims.
    pub fn is_evaluable(&self) -> bool {
        !self.atoms.iter().any(Atom::is_opaque)
    }

    pub fn classify(&self) -> FamilyTag {
        match self.atoms.as_slice() {
            [atom] => atom.family(),
            _ => FamilyTag::Composite,
        }
    }

    pub fn normalize(&self) -> Sign {
        self.normalize_with_notes().0
    }

    /// Canonical form plus a note for every rewrite applied.
    ///
    /// Divided sides are stored largest first. Juxtaposed atoms are never
    /// merged or reordered.
    pub fn normalize_with_notes(&self) -> (Sign, Vec<String>) {
        let mut notes = Vec::new();
        let atoms = self
            .atoms
            .iter()
            .enumerate()
            .map(|(i, atom)| match *atom {
                Atom::Divided { left, right } if left < right => {
                    notes.push(format!(
                        "atom {i}: divided sides reordered {left},{right} -> {right},{left}"
                    ));
                    Atom::Divided {
                        left: right,
                        right: left,
                    }
                }
                other => other,
            })
            .collect();
        (Sign { atoms }, notes)
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let atoms = Vec::<Atom>::deserialize(deserializer)?;
        Sign::new(atoms).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<Vec<Atom>> for Sign {
    type Error = SignError;

    fn try_from(atoms: Vec<Atom>) -> Result<Self, Self::Error> {
        Sign::new(atoms)
    }
}
