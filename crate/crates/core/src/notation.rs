//! ASCII notation for signs.
//!
//! ```text
//! sign  := atom (';' atom)*
//! atom  := 'S' int ('x' int)?     score row (count, rows)
//!        | 'C' int                comb (teeth)
//!        | 'P' int                pole (crossings)
//!        | 'D' int0 ',' int0      divided line (left, right)
//!        | 'L' int 'S' int0       long/short group (longs, shorts)
//!        | 'V'                    chevron
//!        | 'X' | '+'              cross
//! int   := [1-9][0-9]*
//! int0  := '0' | int
//! ```
//!
//! No whitespace is allowed anywhere. The grammar is LL(1).

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::sign::{Atom, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NotationErrorKind {
    UnexpectedCharacter,
    BadInteger,
    EmptySign,
    TrailingInput,
}

impl fmt::Display for NotationErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NotationErrorKind::UnexpectedCharacter => "unexpected-character",
            NotationErrorKind::BadInteger => "bad-integer",
            NotationErrorKind::EmptySign => "empty-sign",
            NotationErrorKind::TrailingInput => "trailing-input",
        })
    }
}

/// A parse failure at a zero-based character offset.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("{kind} at offset {position}: {message}")]
pub struct NotationError {
    pub position: usize,
    pub kind: NotationErrorKind,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("atom {index} is opaque ({family}) and has no notation")]
pub struct RenderError {
    pub index: usize,
    pub family: crate::sign::FamilyTag,
}

pub fn parse_sign(text: &str) -> Result<Sign, NotationError> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    if parser.chars.is_empty() {
        return Err(parser.error(NotationErrorKind::EmptySign, "empty notation"));
    }
    let mut atoms = vec![parser.atom()?];
    while let Some(c) = parser.peek() {
        if c != ';' {
            return Err(parser.error(
                NotationErrorKind::TrailingInput,
                format!("expected ';' or end of input, found {c:?}"),
            ));
        }
        parser.pos += 1;
        atoms.push(parser.atom()?);
    }
    // Every atom was range-checked while parsing.
    Ok(Sign::new(atoms).expect("parsed atoms are well-formed"))
}

/// Renders the canonical notation of `sign`, i.e. of its normal form.
pub fn render_sign(sign: &Sign) -> Result<String, RenderError> {
    let normal = sign.normalize();
    let mut out = String::new();
    for (index, atom) in normal.atoms().iter().enumerate() {
        if index > 0 {
            out.push(';');
        }
        match *atom {
            Atom::ScoreRow { count, rows: 1 } => out.push_str(&format!("S{count}")),
            Atom::ScoreRow { count, rows } => out.push_str(&format!("S{count}x{rows}")),
            Atom::Comb { teeth } => out.push_str(&format!("C{teeth}")),
            Atom::Pole { crossings } => out.push_str(&format!("P{crossings}")),
            Atom::Divided { left, right } => out.push_str(&format!("D{left},{right}")),
            Atom::LongShort { longs, shorts } => out.push_str(&format!("L{longs}S{shorts}")),
            Atom::Chevron => out.push('V'),
            Atom::Cross => out.push('X'),
            Atom::Opaque { family } => return Err(RenderError { index, family }),
        }
    }
    Ok(out)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, kind: NotationErrorKind, message: impl Into<String>) -> NotationError {
        self.error_at(self.pos, kind, message)
    }

    fn error_at(
        &self,
        position: usize,
        kind: NotationErrorKind,
        message: impl Into<String>,
    ) -> NotationError {
        NotationError {
            position,
            kind,
            message: message.into(),
        }
    }

    fn unexpected(&self, expected: &str) -> NotationError {
        let message = match self.peek() {
            Some(c) => format!("expected {expected}, found {c:?}"),
            None => format!("expected {expected}, found end of input"),
        };
        self.error(NotationErrorKind::UnexpectedCharacter, message)
    }

    fn expect(&mut self, wanted: char) -> Result<(), NotationError> {
        if self.peek() == Some(wanted) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(&format!("{wanted:?}")))
        }
    }

    /// Reads an unsigned integer. `allow_zero` admits a lone `0`; leading
    /// zeros are never accepted.
    fn integer(&mut self, allow_zero: bool) -> Result<(usize, u32), NotationError> {
        let start = self.pos;
        match self.peek() {
            Some('0') => {
                self.pos += 1;
                if allow_zero {
                    return Ok((start, 0));
                }
                return Err(self.error_at(
                    start,
                    NotationErrorKind::BadInteger,
                    "expected a positive integer, found 0",
                ));
            }
            Some(c) if c.is_ascii_digit() => {}
            _ => return Err(self.unexpected("a digit")),
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse::<u32>().map(|n| (start, n)).map_err(|_| {
            self.error_at(
                start,
                NotationErrorKind::BadInteger,
                format!("integer {digits} is too large"),
            )
        })
    }

    fn atom(&mut self) -> Result<Atom, NotationError> {
        let Some(head) = self.peek() else {
            return Err(self.unexpected("an atom"));
        };
        self.pos += 1;
        let atom = match head {
            'S' => {
                let (_, count) = self.integer(false)?;
                let mut rows = 1;
                if self.peek() == Some('x') {
                    self.pos += 1;
                    let (at, r) = self.integer(false)?;
                    if r > count {
                        return Err(self.error_at(
                            at,
                            NotationErrorKind::BadInteger,
                            format!("{r} rows exceed the {count} strokes"),
                        ));
                    }
                    rows = r;
                }
                Atom::ScoreRow { count, rows }
            }
            'C' => Atom::Comb {
                teeth: self.integer(false)?.1,
            },
            'P' => Atom::Pole {
                crossings: self.integer(false)?.1,
            },
            'D' => {
                let (_, left) = self.integer(true)?;
                self.expect(',')?;
                let (at, right) = self.integer(true)?;
                if left == 0 && right == 0 {
                    return Err(self.error_at(
                        at,
                        NotationErrorKind::BadInteger,
                        "a divided line needs at least one score mark",
                    ));
                }
                Atom::Divided { left, right }
            }
            'L' => {
                let (_, longs) = self.integer(false)?;
                self.expect('S')?;
                let (_, shorts) = self.integer(true)?;
                Atom::LongShort { longs, shorts }
            }
            'V' => Atom::Chevron,
            'X' | '+' => Atom::Cross,
            _ => {
                self.pos -= 1;
                return Err(self.unexpected("one of S, C, P, D, L, V, X, +"));
            }
        };
        Ok(atom)
    }
}

impl std::str::FromStr for Sign {
    type Err = NotationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sign(s)
    }
}
