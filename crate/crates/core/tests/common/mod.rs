#![allow(dead_code)]

use oes_core::interpret::{CombRule, DividedRule, Hypothesis, PoleRule};
use oes_core::{Atom, Sign};
use proptest::prelude::*;

/// Atoms with parameters up to `limit`.
pub fn atom(limit: u32) -> impl Strategy<Value = Atom> {
    prop_oneof![
        (1..=limit)
            .prop_flat_map(|count| (Just(count), 1..=count))
            .prop_map(|(count, rows)| Atom::ScoreRow { count, rows }),
        (1..=limit).prop_map(|teeth| Atom::Comb { teeth }),
        (1..=limit).prop_map(|crossings| Atom::Pole { crossings }),
        (0..=limit, 0..=limit)
            .prop_filter("needs a mark", |(l, r)| *l > 0 || *r > 0)
            .prop_map(|(left, right)| Atom::Divided { left, right }),
        (1..=limit, 0..=limit).prop_map(|(longs, shorts)| Atom::LongShort { longs, shorts }),
        Just(Atom::Chevron),
        Just(Atom::Cross),
    ]
}

pub fn sign(limit: u32, max_atoms: usize) -> impl Strategy<Value = Sign> {
    prop::collection::vec(atom(limit), 1..=max_atoms).prop_map(|atoms| Sign::new(atoms).unwrap())
}

pub fn hypothesis() -> impl Strategy<Value = Hypothesis> {
    let comb = prop_oneof![
        Just(CombRule::TenPlusN),
        Just(CombRule::NOnly),
        Just(CombRule::NPlusOne),
        (2u32..=20).prop_map(|base| CombRule::NTimesB { base }),
        (2u32..=20).prop_map(|base| CombRule::BPlusN { base }),
    ];
    let pole = prop_oneof![
        Just(PoleRule::TenPlusN),
        Just(PoleRule::NOnly),
        Just(PoleRule::Both)
    ];
    let divided = prop_oneof![
        Just(DividedRule::SumPlusTen),
        Just(DividedRule::SumOnly),
        Just(DividedRule::Both)
    ];
    (comb, pole, divided, 1u32..=50, 1u32..=50, 2u32..=20)
        .prop_filter("V and X differ", |t| t.3 != t.4)
        .prop_map(|(c, p, d, v, x, u)| Hypothesis::new(c, p, d, v, x, u).unwrap())
}
