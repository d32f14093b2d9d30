//! Numeric decoding and corpus statistics for the sign system of the Old
//! European (Vinca-Tordos) Script.
//!
//! The crate is organised bottom-up:
//!
//! * [`sign`]: the sign AST (score rows, combs, poles, divided lines,
//!   long/short groups, `V`, `X`/`+`, and ligatures of these).
//! * [`notation`]: a compact ASCII notation for signs with a parser and a
//!   canonical renderer.
//! * [`interpret`]: numeric readings of signs under a configurable
//!   [`interpret::Hypothesis`], with derivation traces.
//! * [`corpus`]: the catalog of numerically inscribed objects and its CSV
//!   format.
//! * [`analysis`]: prevalence counts, run-length evidence for the unit, and
//!   scoring of rival comb readings.
//! * [`cli`]: the `oes` command-line front end.

pub mod analysis;
pub mod cli;
pub mod corpus;
pub mod interpret;
pub mod notation;
pub mod report;
pub mod sign;

pub use corpus::{load_corpus, Corpus, CorpusRecord};
pub use interpret::{evaluate, evaluate_atom, Hypothesis, Interpretation};
pub use notation::{parse_sign, render_sign};
pub use sign::{Atom, FamilyTag, Sign};
