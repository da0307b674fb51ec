#![allow(dead_code)]

use aisr_core::{Term, VarId, Word};
use proptest::prelude::*;

pub fn var_ids(n: u32) -> Vec<VarId> {
    (0..n).map(VarId).collect()
}

/// Words over the first `nvars` ids with exponents up to `max_exp`.
pub fn word(nvars: u32, max_exp: u32) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..=max_exp, nvars as usize)
        .prop_filter("nonempty", |es| es.iter().any(|&e| e > 0))
        .prop_map(|es| {
            Word::from_factors(
                es.into_iter()
                    .enumerate()
                    .filter(|&(_, e)| e > 0)
                    .map(|(i, e)| (VarId(i as u32), e)),
            )
            .unwrap()
        })
}

pub fn term(nvars: u32, max_exp: u32, max_len: usize) -> impl Strategy<Value = Term> {
    prop::collection::vec(word(nvars, max_exp), 1..=max_len).prop_map(|ws| Term::from_words(ws).unwrap())
}
