#![allow(dead_code)]

use ghz_core::paradox::{Base, EntryWord, ParadoxTable};
use ghz_core::weyl::{Dimension, Monomial};
use proptest::prelude::*;

pub fn dim(d: u32) -> Dimension {
    Dimension::new(d).unwrap()
}

pub fn monomial(d: u32) -> impl Strategy<Value = Monomial> {
    (0..2 * d as i64, 0..d as i64, 0..d as i64).prop_map(move |(s, x, z)| Monomial::new(s, x, z, dim(d)))
}

pub fn word(d: u32) -> impl Strategy<Value = EntryWord> {
    prop_oneof![
        Just(EntryWord::IDENTITY),
        (prop::sample::select(Base::NON_IDENTITY.to_vec()), 1..d).prop_map(|(base, exp)| EntryWord { base, exp }),
    ]
}

/// Random rectangular table with `parties` columns and `rows` rows.
pub fn table(d: u32, parties: usize, rows: usize) -> impl Strategy<Value = ParadoxTable> {
    prop::collection::vec(prop::collection::vec(word(d), parties), rows)
        .prop_map(move |rows| ParadoxTable::new(dim(d), rows, "random").unwrap())
}

/// Random permutation of `0..n`.
pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}
