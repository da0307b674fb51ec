//! Subterms, substitution instances and `u`-freeness.
//!
//! `u` is a subterm of `v` when `v = p·u + r` for a context `p` (possibly the
//! empty word) and a remainder `r` (possibly empty). `v` is `u`-free when no
//! `φ(u)` is a subterm of `v`.
//!
//! Only single-word contexts and single-word images are searched. This loses
//! nothing: if `v = P·φ(u) + r` with `P` a term and `φ` sending variables to
//! terms, pick one word `p` of `P` and one word of each `φ(x)` to get `φ'`.
//! Every word of `φ'(u)` is a word of `φ(u)`, so `p·φ'(u) ⊆ P·φ(u) ⊆ v`, and
//! `v = p·φ'(u) + (v ∖ p·φ'(u))`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use thiserror::Error;

use crate::term::{Context, Substitution, Term, VarId, Word};

/// Default cap on search nodes for [`instance_subterm`].
pub const DEFAULT_SEARCH_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreenessError {
    #[error("search exceeded {cap} nodes without a verdict")]
    SearchBoundExceeded { cap: u64 },
}

/// `v = context·φ(u) + remainder`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtermWitness {
    pub context: Context,
    pub substitution: Substitution,
    pub remainder: Vec<Word>,
}

impl SubtermWitness {
    /// Rebuilds `context·φ(u) + remainder`.
    pub fn reconstruct(&self, u: &Term) -> Term {
        let image = self
            .substitution
            .apply(u)
            .expect("witness substitution covers u");
        image.mul_context(&self.context).with_words(&self.remainder)
    }
}

/// Candidate contexts: the empty word, then every proper divisor of a word
/// of `v`, in length-lexicographic order.
fn contexts(v: &Term) -> Vec<Context> {
    let mut ds: BTreeSet<Word> = BTreeSet::new();
    for w in v.words() {
        for d in w.divisors() {
            if d != *w {
                ds.insert(d);
            }
        }
    }
    let mut out: Vec<Context> = alloc::vec![None];
    out.extend(ds.into_iter().map(Some));
    out
}

/// `{ w / p : w ∈ v, p | w, w ≠ p }`.
fn quotients(v: &Term, p: &Context) -> Vec<Word> {
    let mut out: Vec<Word> = match p {
        None => v.words().to_vec(),
        Some(p) => v
            .words()
            .iter()
            .filter_map(|w| Word::divide(w, p).flatten())
            .collect(),
    };
    out.sort();
    out.dedup();
    out
}

fn witness_for(u: &Term, v: &Term, p: Context, phi: Substitution) -> SubtermWitness {
    let core = phi.apply(u).expect("total").mul_context(&p);
    let remainder = v.minus(&core);
    let w = SubtermWitness {
        context: p,
        substitution: phi,
        remainder,
    };
    assert_eq!(w.reconstruct(u), *v, "witness must rebuild v exactly");
    w
}

/// Finds `p` with `p·u ⊆ v`.
pub fn is_subterm(u: &Term, v: &Term) -> Option<SubtermWitness> {
    let first = &u.words()[0];
    let mut seen: BTreeSet<Context> = BTreeSet::new();
    for w in v.words() {
        let Some(p) = Word::divide(w, first) else { continue };
        if !seen.insert(p.clone()) {
            continue;
        }
        if u.mul_context(&p).is_subset(v) {
            return Some(witness_for(u, v, p, Substitution::identity(u.content())));
        }
    }
    None
}

struct Matcher<'a> {
    /// words of `u` as `(slot, exponent)` lists
    pattern: Vec<Vec<(usize, u32)>>,
    /// for each slot, the pattern words that become fully assigned with it
    completes: Vec<Vec<usize>>,
    targets: &'a [Word],
    candidates: Vec<Word>,
    images: Vec<Option<Word>>,
    nodes: u64,
    cap: u64,
    /// when set, every solution is recorded and the search continues
    all: Option<Vec<Vec<Word>>>,
}

impl Matcher<'_> {
    fn image_of(&self, w: &[(usize, u32)]) -> Option<Word> {
        let mut acc: Option<Word> = None;
        for &(s, e) in w {
            let img = self.images[s].as_ref()?.pow(e);
            acc = Some(match acc {
                None => img,
                Some(a) => a.mul(&img),
            });
        }
        acc
    }

    /// Product of the assigned part of `w`, which must divide some target.
    fn partial_ok(&self, w: &[(usize, u32)]) -> bool {
        let mut acc: Option<Word> = None;
        for &(s, e) in w {
            if let Some(img) = &self.images[s] {
                let p = img.pow(e);
                acc = Some(match acc {
                    None => p,
                    Some(a) => a.mul(&p),
                });
            }
        }
        match acc {
            None => true,
            Some(a) => self.targets.iter().any(|t| a.divides(t)),
        }
    }

    fn run(&mut self, slot: usize) -> Result<bool, FreenessError> {
        if slot == self.images.len() {
            if let Some(all) = &mut self.all {
                all.push(self.images.iter().map(|w| w.clone().expect("assigned")).collect());
                return Ok(false);
            }
            return Ok(true);
        }
        for i in 0..self.candidates.len() {
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(FreenessError::SearchBoundExceeded { cap: self.cap });
            }
            self.images[slot] = Some(self.candidates[i].clone());
            let ok = self.completes[slot].iter().all(|&k| {
                let img = self.image_of(&self.pattern[k]).expect("complete");
                self.targets.binary_search(&img).is_ok()
            }) && self.pattern.iter().all(|w| self.partial_ok(w));
            if ok && self.run(slot + 1)? {
                return Ok(true);
            }
        }
        self.images[slot] = None;
        Ok(false)
    }
}

/// Pattern variables, each word as `(variable slot, exponent)`, and for each
/// slot the words completed once it is assigned.
type Prepared = (Vec<VarId>, Vec<Vec<(usize, u32)>>, Vec<Vec<usize>>);

fn prepare(u: &Term) -> Prepared {
    let vars: Vec<VarId> = u.content().into_iter().collect();
    let slot = |x: VarId| vars.binary_search(&x).expect("in content");
    let pattern: Vec<Vec<(usize, u32)>> = u
        .words()
        .iter()
        .map(|w| w.factors().iter().map(|&(x, e)| (slot(x), e)).collect())
        .collect();
    let mut completes = alloc::vec![Vec::new(); vars.len()];
    for (k, w) in pattern.iter().enumerate() {
        let last = w.iter().map(|&(s, _)| s).max().expect("nonempty");
        completes[last].push(k);
    }
    (vars, pattern, completes)
}

fn substitution(vars: &[VarId], images: Vec<Word>) -> Substitution {
    let mut phi = Substitution::new();
    for (x, img) in vars.iter().zip(images) {
        phi.insert(*x, Term::word(img));
    }
    phi
}

/// Finds `p` and `φ` with `v = p·φ(u) + r`, searching contexts by increasing
/// length and images in length-lexicographic order, so the first witness is
/// deterministic.
pub fn instance_subterm_capped(
    u: &Term,
    v: &Term,
    cap: u64,
) -> Result<Option<SubtermWitness>, FreenessError> {
    let (vars, pattern, completes) = prepare(u);
    let mut nodes = 0u64;
    for p in contexts(v) {
        let targets = quotients(v, &p);
        if targets.is_empty() {
            continue;
        }
        let candidates: BTreeSet<Word> = targets.iter().flat_map(Word::divisors).collect();
        let mut m = Matcher {
            pattern: pattern.clone(),
            completes: completes.clone(),
            targets: &targets,
            candidates: candidates.into_iter().collect(),
            images: alloc::vec![None; vars.len()],
            nodes,
            cap,
            all: None,
        };
        let found = m.run(0)?;
        nodes = m.nodes;
        if found {
            let images = m.images.into_iter().map(|w| w.expect("assigned")).collect();
            return Ok(Some(witness_for(u, v, p, substitution(&vars, images))));
        }
    }
    Ok(None)
}

/// Every `(p, φ)` with single-word images and `p·φ(u) ⊆ v`, in search order.
pub fn all_instances(
    u: &Term,
    v: &Term,
    cap: u64,
) -> Result<Vec<(Context, Substitution)>, FreenessError> {
    let (vars, pattern, completes) = prepare(u);
    let mut nodes = 0u64;
    let mut out = Vec::new();
    for p in contexts(v) {
        let targets = quotients(v, &p);
        if targets.is_empty() {
            continue;
        }
        let candidates: BTreeSet<Word> = targets.iter().flat_map(Word::divisors).collect();
        let mut m = Matcher {
            pattern: pattern.clone(),
            completes: completes.clone(),
            targets: &targets,
            candidates: candidates.into_iter().collect(),
            images: alloc::vec![None; vars.len()],
            nodes,
            cap,
            all: Some(Vec::new()),
        };
        m.run(0)?;
        nodes = m.nodes;
        for images in m.all.take().unwrap_or_default() {
            out.push((p.clone(), substitution(&vars, images)));
        }
    }
    Ok(out)
}

pub fn instance_subterm(u: &Term, v: &Term) -> Result<Option<SubtermWitness>, FreenessError> {
    instance_subterm_capped(u, v, DEFAULT_SEARCH_CAP)
}

/// `true` iff no substitution instance of `u` is a subterm of `v`.
pub fn is_free(v: &Term, u: &Term) -> Result<bool, FreenessError> {
    Ok(instance_subterm(u, v)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::u_n;
    use crate::parse::parse_term;
    use crate::term::VarTable;

    fn t(vars: &mut VarTable, s: &str) -> Term {
        parse_term(s, vars).unwrap()
    }

    #[test]
    fn plain_subterms() {
        let mut vars = VarTable::new();
        let w = is_subterm(&t(&mut vars, "x*y"), &t(&mut vars, "x*y + z")).unwrap();
        assert_eq!(w.context, None);
        assert_eq!(w.remainder, t(&mut vars, "z").into_words());
        let w = is_subterm(&t(&mut vars, "x + y"), &t(&mut vars, "z*x + z*y")).unwrap();
        assert_eq!(w.context, Some(parse_term("z", &mut vars).unwrap().into_words().remove(0)));
        assert!(w.remainder.is_empty());
        let u2 = u_n(&mut vars, 2).unwrap();
        assert!(is_subterm(&t(&mut vars, "x^2"), &u2).is_none());
    }

    #[test]
    fn instances() {
        let mut vars = VarTable::new();
        let u1 = u_n(&mut vars, 1).unwrap();
        let w = instance_subterm(&u1, &u1).unwrap().unwrap();
        assert!(w.remainder.is_empty());
        let v = t(&mut vars, "x1*x2 + x1*x2*x3");
        let w = instance_subterm(&t(&mut vars, "x*y"), &v).unwrap().unwrap();
        assert_eq!(w.reconstruct(&t(&mut vars, "x*y")), v);
        let u2 = u_n(&mut vars, 2).unwrap();
        assert!(instance_subterm(&u1, &u2).unwrap().is_none());
    }

    #[test]
    fn freeness_of_cycles() {
        let mut vars = VarTable::new();
        let u1 = u_n(&mut vars, 1).unwrap();
        let u3 = u_n(&mut vars, 3).unwrap();
        assert!(is_free(&u3, &u1).unwrap());
        let u2 = u_n(&mut vars, 2).unwrap();
        assert!(!is_free(&u2, &u2).unwrap());
        let w = t(&mut vars, "x + x*y");
        for m in 1..=4 {
            let um = u_n(&mut vars, m).unwrap();
            assert!(is_free(&um, &w).unwrap());
        }
    }

    #[test]
    fn cap_is_reported() {
        let mut vars = VarTable::new();
        let u = t(&mut vars, "a*b + b*c + c*d + d*e");
        let v = u_n(&mut vars, 4).unwrap();
        assert_eq!(
            instance_subterm_capped(&u, &v, 3),
            Err(FreenessError::SearchBoundExceeded { cap: 3 })
        );
    }
}
