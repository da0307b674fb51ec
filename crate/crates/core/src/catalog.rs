//! The specific algebras: `SR_6`, flat semirings `S_c(W)`, `D_2` and zero
//! adjunctions.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use crate::algebra::FiniteAiSemiring;
use crate::parse::{parse_word, ParseError};
use crate::term::{VarTable, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("flat semiring needs at least one word")]
    NoWords,
    #[error("flat semiring alphabet has {0} letters, at most 26 allowed")]
    AlphabetTooLarge(usize),
    #[error("flat semiring would have {0} elements")]
    TooLarge(usize),
    #[error("unknown algebra `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Largest carrier `flat` will build.
pub const FLAT_MAX_SIZE: usize = 256;

const SR6_ADD: [[usize; 6]; 6] = [
    [1, 1, 1, 1, 1, 1],
    [1, 2, 1, 1, 2, 1],
    [1, 1, 3, 1, 1, 1],
    [1, 1, 1, 4, 1, 4],
    [1, 2, 1, 1, 5, 1],
    [1, 1, 1, 4, 1, 6],
];

const SR6_MUL: [[usize; 6]; 6] = [
    [1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 3],
    [1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 3, 1],
    [1, 1, 1, 3, 1, 3],
    [1, 3, 1, 1, 3, 1],
];

/// The six-element algebra. Elements are stored 0-based; labels are `1..6`.
pub fn sr6() -> FiniteAiSemiring {
    let table = |t: &[[usize; 6]; 6]| -> Vec<Vec<usize>> {
        t.iter().map(|row| row.iter().map(|&e| e - 1).collect()).collect()
    };
    FiniteAiSemiring::new(Some("SR6".into()), table(&SR6_ADD), table(&SR6_MUL))
        .expect("well-formed")
        .with_labels((1..=6).map(|i| i.to_string()).collect())
        .expect("six labels")
}

/// `S_c(W)`: the nonempty subwords of `W` in length-lexicographic order,
/// followed by `0`.
pub fn flat(words: &[Word], vars: &VarTable) -> Result<FiniteAiSemiring, CatalogError> {
    if words.is_empty() {
        return Err(CatalogError::NoWords);
    }
    let alphabet: BTreeSet<_> = words.iter().flat_map(Word::support).collect();
    if alphabet.len() > 26 {
        return Err(CatalogError::AlphabetTooLarge(alphabet.len()));
    }
    let carrier: BTreeSet<Word> = words.iter().flat_map(Word::divisors).collect();
    let carrier: Vec<Word> = carrier.into_iter().collect();
    let n = carrier.len() + 1;
    if n > FLAT_MAX_SIZE {
        return Err(CatalogError::TooLarge(n));
    }
    let zero = n - 1;
    let index = |w: &Word| carrier.binary_search(w).ok();
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            add.push(if a == b { a } else { zero });
            mul.push(if a == zero || b == zero {
                zero
            } else {
                index(&carrier[a].mul(&carrier[b])).unwrap_or(zero)
            });
        }
    }
    let compact = alphabet.iter().all(|&v| vars.name(v).chars().count() == 1);
    let mut labels: Vec<String> = carrier
        .iter()
        .map(|w| {
            let s = w.display(vars).to_string();
            if compact {
                s.replace('*', "")
            } else {
                s
            }
        })
        .collect();
    labels.push("0".into());
    let name = labels[..n - 1]
        .iter()
        .zip(&carrier)
        .filter(|(_, w)| words.contains(w))
        .map(|(l, _)| l.as_str())
        .collect::<Vec<_>>()
        .join(",");
    Ok(FiniteAiSemiring::from_flat(
        Some(alloc::format!("Sc:{name}")),
        n,
        add,
        mul,
        labels,
    ))
}

/// Parses a comma-separated word list. Items made only of ASCII letters are
/// read one letter per variable, so `ab` is the word `a*b`; anything else
/// uses the term grammar.
pub fn parse_flat_words(text: &str, vars: &mut VarTable) -> Result<Vec<Word>, CatalogError> {
    let mut out = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        if !item.is_empty() && item.chars().all(|c| c.is_ascii_alphabetic()) {
            let mut buf = [0u8; 4];
            let letters = item.chars().map(|c| vars.intern(c.encode_utf8(&mut buf)));
            out.push(Word::from_vars(letters.collect::<Vec<_>>()).expect("nonempty"));
        } else {
            out.push(parse_word(item, vars)?);
        }
    }
    if out.is_empty() {
        return Err(CatalogError::NoWords);
    }
    Ok(out)
}

fn flat_letters(text: &str) -> FiniteAiSemiring {
    let mut vars = VarTable::new();
    let words = parse_flat_words(text, &mut vars).expect("valid literal");
    flat(&words, &vars).expect("small")
}

pub fn sca() -> FiniteAiSemiring {
    flat_letters("a")
}

pub fn scab() -> FiniteAiSemiring {
    flat_letters("ab")
}

pub fn scabc() -> FiniteAiSemiring {
    flat_letters("abc")
}

/// The two-element distributive lattice, obtained by adjoining a zero to the
/// trivial algebra.
pub fn d2() -> FiniteAiSemiring {
    FiniteAiSemiring::trivial().adjoin_zero().with_name("D2")
}

pub fn scab0() -> FiniteAiSemiring {
    scab().adjoin_zero().with_name("Sc:ab0")
}

/// Catalog lookup: `SR6`, `D2`, `T`, `Sc:a`, `Sc:ab`, `Sc:abc`, `Sc:ab0`, or
/// `Sc:<word list>`.
pub fn by_name(name: &str) -> Result<FiniteAiSemiring, CatalogError> {
    match name {
        "SR6" => Ok(sr6()),
        "D2" => Ok(d2()),
        "T" => Ok(FiniteAiSemiring::trivial()),
        "Sc:ab0" => Ok(scab0()),
        _ => {
            let Some(list) = name.strip_prefix("Sc:") else {
                return Err(CatalogError::Unknown(name.to_string()));
            };
            let mut vars = VarTable::new();
            let words = parse_flat_words(list, &mut vars)?;
            flat(&words, &vars)
        }
    }
}

/// Names accepted by [`by_name`] without a word list.
pub const NAMES: &[&str] = &["SR6", "D2", "T", "Sc:a", "Sc:ab", "Sc:abc", "Sc:ab0"];
