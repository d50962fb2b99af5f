#![allow(dead_code)]

use kv_core::{lyndon_words, AssocElt, LieElt, Rational, TAutElt, TDer, Word};
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn w(s: &str) -> Word {
    s.parse().unwrap()
}

/// Lyndon words of degree `lo..=hi`.
pub fn lyndon_range(lo: usize, hi: usize) -> Vec<Word> {
    (lo..=hi).flat_map(|d| lyndon_words(d).unwrap()).collect()
}

/// Sparse Lie element at `cap` with small integer coefficients on Lyndon
/// words of degree `lo..=hi`.
pub fn lie_elt(
    cap: usize,
    lo: usize,
    hi: usize,
    max_terms: usize,
) -> impl Strategy<Value = LieElt> {
    let words = lyndon_range(lo, hi);
    let n = words.len();
    prop::collection::vec((0..n, -3i64..=3), 0..=max_terms).prop_map(move |picks| {
        let terms: Vec<(Word, Rational)> = picks
            .into_iter()
            .map(|(i, c)| (words[i], q(c, 1)))
            .collect();
        LieElt::from_lyndon_terms(cap, terms).unwrap()
    })
}

pub fn assoc_elt(cap: usize, max_terms: usize) -> impl Strategy<Value = AssocElt> {
    prop::collection::vec((0..=cap, any::<u64>(), -3i64..=3), 0..=max_terms).prop_map(
        move |picks| {
            let terms = picks.into_iter().map(|(len, bits, c)| {
                let mask = if len == 0 { 0 } else { u64::MAX >> (64 - len) };
                (Word::from_bits(len, bits & mask), q(c, 1))
            });
            AssocElt::from_word_terms(cap, terms)
        },
    )
}

pub fn tder(cap: usize, lo: usize, hi: usize, max_terms: usize) -> impl Strategy<Value = TDer> {
    (
        lie_elt(cap, lo, hi, max_terms),
        lie_elt(cap, lo, hi, max_terms),
    )
        .prop_map(|(a, b)| TDer::new(a, b).unwrap())
}

pub fn taut(cap: usize, lo: usize, hi: usize, max_terms: usize) -> impl Strategy<Value = TAutElt> {
    (
        lie_elt(cap, lo, hi, max_terms),
        lie_elt(cap, lo, hi, max_terms),
    )
        .prop_map(|(a, b)| TAutElt::new(a, b).unwrap())
}
