//! Isomorphisms and embeddings between small algebras by backtracking.
//!
//! Elements of the source are assigned in order. After each assignment every
//! sum and product whose operands are both assigned is checked against the
//! target wherever its result is assigned too, so contradictions surface as
//! early as possible. Candidates are filtered by invariants that any
//! injective homomorphism preserves.

use alloc::vec::Vec;

use crate::algebra::{Elem, FiniteAiSemiring};

/// Source element `i` maps to `map[i]`.
pub type Mapping = Vec<Elem>;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Embedding,
    Isomorphism,
}

/// Per-element data preserved by injective homomorphisms: whether `a` is
/// idempotent and whether `a + a*a = a`, `a*a*a = a*a`.
fn local_signature(alg: &FiniteAiSemiring, a: Elem) -> (bool, bool, bool) {
    let sq = alg.mul(a, a);
    (sq == a, alg.add(a, sq) == a, alg.mul(sq, a) == sq)
}

/// Data preserved by isomorphisms only: sizes of the principal down- and
/// up-sets, and the number of elements `b` with `ab = a`.
fn global_signature(alg: &FiniteAiSemiring, a: Elem) -> (usize, usize, usize) {
    let down = alg.elements().filter(|&b| alg.leq(b, a)).count();
    let up = alg.elements().filter(|&b| alg.leq(a, b)).count();
    let fix = alg.elements().filter(|&b| alg.mul(a, b) == a).count();
    (down, up, fix)
}

struct Search<'a> {
    src: &'a FiniteAiSemiring,
    dst: &'a FiniteAiSemiring,
    candidates: Vec<Vec<Elem>>,
    map: Vec<Option<Elem>>,
    used: Vec<bool>,
    found: Vec<Mapping>,
    limit: usize,
}

impl Search<'_> {
    fn consistent(&self, a: Elem) -> bool {
        let fa = self.map[a].expect("assigned");
        for b in 0..self.src.size() {
            let Some(fb) = self.map[b] else { continue };
            for (s, t) in [
                (self.src.add(a, b), self.dst.add(fa, fb)),
                (self.src.mul(a, b), self.dst.mul(fa, fb)),
                (self.src.mul(b, a), self.dst.mul(fb, fa)),
            ] {
                if let Some(fs) = self.map[s] {
                    if fs != t {
                        return false;
                    }
                }
            }
        }
        // operands already assigned whose result is the new element
        for b in 0..self.src.size() {
            let Some(fb) = self.map[b] else { continue };
            for c in 0..self.src.size() {
                let Some(fc) = self.map[c] else { continue };
                if self.src.add(b, c) == a && self.dst.add(fb, fc) != fa {
                    return false;
                }
                if self.src.mul(b, c) == a && self.dst.mul(fb, fc) != fa {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, next: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if next == self.src.size() {
            let m: Mapping = self.map.iter().map(|e| e.expect("complete")).collect();
            debug_assert!(is_homomorphism(self.src, self.dst, &m));
            self.found.push(m);
            return;
        }
        for i in 0..self.candidates[next].len() {
            let c = self.candidates[next][i];
            if self.used[c] {
                continue;
            }
            self.map[next] = Some(c);
            self.used[c] = true;
            if self.consistent(next) {
                self.run(next + 1);
            }
            self.map[next] = None;
            self.used[c] = false;
        }
    }
}

fn search(src: &FiniteAiSemiring, dst: &FiniteAiSemiring, mode: Mode, limit: usize) -> Vec<Mapping> {
    if src.size() > dst.size() || (mode == Mode::Isomorphism && src.size() != dst.size()) {
        return Vec::new();
    }
    let candidates = src
        .elements()
        .map(|a| {
            let sig = local_signature(src, a);
            let gsig = global_signature(src, a);
            dst.elements()
                .filter(|&b| local_signature(dst, b) == sig)
                .filter(|&b| mode == Mode::Embedding || global_signature(dst, b) == gsig)
                .collect()
        })
        .collect();
    let mut s = Search {
        src,
        dst,
        candidates,
        map: alloc::vec![None; src.size()],
        used: alloc::vec![false; dst.size()],
        found: Vec::new(),
        limit,
    };
    s.run(0);
    s.found
}

/// Checks that `map` preserves both operations.
pub fn is_homomorphism(src: &FiniteAiSemiring, dst: &FiniteAiSemiring, map: &[Elem]) -> bool {
    map.len() == src.size()
        && map.iter().all(|&e| e < dst.size())
        && src.elements().all(|a| {
            src.elements().all(|b| {
                map[src.add(a, b)] == dst.add(map[a], map[b])
                    && map[src.mul(a, b)] == dst.mul(map[a], map[b])
            })
        })
}

pub fn find_isomorphism(a: &FiniteAiSemiring, b: &FiniteAiSemiring) -> Option<Mapping> {
    search(a, b, Mode::Isomorphism, 1).pop()
}

pub fn is_isomorphic(a: &FiniteAiSemiring, b: &FiniteAiSemiring) -> bool {
    find_isomorphism(a, b).is_some()
}

pub fn find_embedding(a: &FiniteAiSemiring, b: &FiniteAiSemiring) -> Option<Mapping> {
    search(a, b, Mode::Embedding, 1).pop()
}

/// Every injective homomorphism from `a` into `b`.
pub fn embeddings(a: &FiniteAiSemiring, b: &FiniteAiSemiring) -> Vec<Mapping> {
    search(a, b, Mode::Embedding, usize::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{sca, scab, sr6};
    use alloc::collections::BTreeSet;

    fn image(alg: &FiniteAiSemiring, m: &Mapping) -> BTreeSet<alloc::string::String> {
        m.iter().map(|&e| alg.label(e).into()).collect()
    }

    #[test]
    fn scab_into_sr6() {
        let s = sr6();
        let all = embeddings(&scab(), &s);
        assert!(!all.is_empty());
        let want: BTreeSet<_> = ["1", "3", "5", "6"].into_iter().map(Into::into).collect();
        assert!(all.iter().any(|m| image(&s, m) == want));
        for m in &all {
            assert!(is_homomorphism(&scab(), &s, m));
        }
    }

    #[test]
    fn sca_into_sr6() {
        let s = sr6();
        let all = embeddings(&sca(), &s);
        let want: BTreeSet<_> = ["1", "3"].into_iter().map(Into::into).collect();
        assert!(all.iter().any(|m| image(&s, m) == want));
    }

    #[test]
    fn self_isomorphism() {
        let s = sr6();
        let m = find_isomorphism(&s, &s).unwrap();
        assert!(is_homomorphism(&s, &s, &m));
        assert!(!is_isomorphic(&s, &scab()));
        assert!(find_embedding(&s, &scab()).is_none());
    }
}
