//! Exhaustive corpora of small inequalities, one representative per orbit
//! under renaming of the variables.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::term::{Inequality, Term, VarId, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusBounds {
    pub max_degree: u32,
    pub max_summands: usize,
}

impl Default for CorpusBounds {
    fn default() -> Self {
        CorpusBounds {
            max_degree: 3,
            max_summands: 4,
        }
    }
}

/// Every word over `vars` of degree `1..=max_degree`, sorted.
pub fn words_up_to(vars: &[VarId], max_degree: u32) -> Vec<Word> {
    let mut out = Vec::new();
    fn go(vars: &[VarId], from: usize, left: u32, acc: &mut Vec<VarId>, out: &mut Vec<Word>) {
        if !acc.is_empty() {
            out.push(Word::from_vars(acc.iter().copied()).expect("nonempty"));
        }
        if left == 0 {
            return;
        }
        for i in from..vars.len() {
            acc.push(vars[i]);
            go(vars, i, left - 1, acc, out);
            acc.pop();
        }
    }
    go(vars, 0, max_degree, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return alloc::vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// `table[k][i]` is the index of the image of word `i` under the `k`-th
/// non-identity variable permutation.
fn word_permutations(vars: &[VarId], words: &[Word]) -> Vec<Vec<usize>> {
    let index: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    permutations(vars.len())
        .into_iter()
        .filter(|p| p.iter().enumerate().any(|(i, &j)| i != j))
        .map(|p| {
            let map: BTreeMap<VarId, VarId> = vars.iter().enumerate().map(|(i, &v)| (v, vars[p[i]])).collect();
            words.iter().map(|w| index[&w.rename(&map)]).collect()
        })
        .collect()
}

/// Whether `(q, u)` (with `u` sorted) is the least member of its orbit.
fn is_canonical(q: usize, u: &[usize], table: &[Vec<usize>], buf: &mut Vec<usize>) -> bool {
    for perm in table {
        let pq = perm[q];
        if pq > q {
            continue;
        }
        buf.clear();
        buf.extend(u.iter().map(|&i| perm[i]));
        buf.sort_unstable();
        if pq < q || buf.as_slice() < u {
            return false;
        }
    }
    true
}

fn subsets(n: usize, k: usize, from: usize, u: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if !u.is_empty() {
        f(u);
    }
    if u.len() == k {
        return;
    }
    for i in from..n {
        u.push(i);
        subsets(n, k, i + 1, u, f);
        u.pop();
    }
}

/// Index form of the corpus: `(q, u)` with `u` a strictly increasing list of
/// indices into the returned word list (which is [`words_up_to`]).
pub fn corpus_indices(vars: &[VarId], bounds: CorpusBounds) -> (Vec<Word>, Vec<(usize, Vec<usize>)>) {
    let words = words_up_to(vars, bounds.max_degree);
    let table = word_permutations(vars, &words);
    let mut out = Vec::new();
    let mut buf = Vec::new();
    let n = words.len();
    subsets(n, bounds.max_summands, 0, &mut Vec::new(), &mut |u| {
        for q in 0..n {
            if is_canonical(q, u, &table, &mut buf) {
                out.push((q, u.to_vec()));
            }
        }
    });
    (words, out)
}

/// The inequalities `q ⪯ u` over `vars` within `bounds`, one per renaming
/// orbit.
pub fn corpus(vars: &[VarId], bounds: CorpusBounds) -> Vec<Inequality> {
    let (words, items) = corpus_indices(vars, bounds);
    items
        .into_iter()
        .map(|(q, u)| {
            Inequality::new(
                words[q].clone(),
                Term::from_words(u.into_iter().map(|i| words[i].clone())).expect("nonempty"),
            )
        })
        .collect()
}
