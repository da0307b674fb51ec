//! Finite witnesses for the subvariety chain of `V(SR_6)`: the two-generated
//! subalgebra whose quotient is `S_c(ab)`, and the four-generated one whose
//! quotient is `SR_6`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::algebra::{AlgebraError, Elem, FiniteAiSemiring, Partition};
use crate::catalog;
use crate::iso::{find_isomorphism, is_homomorphism, Mapping};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("the generators do not satisfy the hypothesis")]
    Hypothesis,
    #[error("relation `{0}` fails")]
    Relation(&'static str),
    #[error("generated subalgebra has {actual} elements, expected {expected}")]
    Generated { expected: usize, actual: usize },
    #[error("classes R{0} and R{1} overlap")]
    Overlap(usize, usize),
    #[error("R1 is empty")]
    EmptyRest,
    #[error("quotient is not isomorphic to {0}")]
    NotIsomorphic(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Data for a pair `a, b` with `a² ≠ ab`.
#[derive(Debug, Clone)]
pub struct PairWitness {
    pub a: Elem,
    pub b: Elem,
    /// `⟨a, b⟩` as elements of the ambient algebra.
    pub generated: BTreeSet<Elem>,
    pub ideal: BTreeSet<Elem>,
    pub quotient: FiniteAiSemiring,
    /// Quotient element to `S_c(ab)` element.
    pub iso: Mapping,
}

/// Checks the order relations between `a², ab, a+b, a, b` listed for
/// members of `V(SR_6)` with `a² ≠ ab`.
pub fn pair_relations(s: &FiniteAiSemiring, a: Elem, b: Elem) -> Result<(), StructureError> {
    let (a2, ab, apb) = (s.mul(a, a), s.mul(a, b), s.add(a, b));
    let lt = |x: Elem, y: Elem| x != y && s.leq(x, y);
    let checks: [(&'static str, bool); 8] = [
        ("ab < a^2", lt(ab, a2)),
        ("a < a^2", lt(a, a2)),
        ("b < a^2", lt(b, a2)),
        ("ab != a", ab != a),
        ("ab != b", ab != b),
        ("ab != a+b", ab != apb),
        ("a+b != a", apb != a),
        ("a+b != b", apb != b),
    ];
    match checks.iter().find(|(_, ok)| !ok) {
        Some((name, _)) => Err(StructureError::Relation(name)),
        None => Ok(()),
    }
}

/// Runs the pair construction on `a, b`.
pub fn check_pair(s: &FiniteAiSemiring, a: Elem, b: Elem) -> Result<PairWitness, StructureError> {
    let (a2, ab, apb) = (s.mul(a, a), s.mul(a, b), s.add(a, b));
    if a2 == ab {
        return Err(StructureError::Hypothesis);
    }
    pair_relations(s, a, b)?;
    let expected: BTreeSet<Elem> = [a2, ab, apb, a, b].into_iter().collect();
    let generated = s.subalgebra_closure(&[a, b]);
    if generated != expected {
        return Err(StructureError::Generated {
            expected: expected.len(),
            actual: generated.len(),
        });
    }
    let (sub, incl) = s.restrict(&generated)?;
    let local = |e: Elem| incl.iter().position(|&x| x == e).expect("in subalgebra");
    let ideal: BTreeSet<Elem> = [a2, apb].into_iter().collect();
    let block: Vec<Elem> = ideal.iter().map(|&e| local(e)).collect();
    let p = Partition::collapsing(sub.size(), &block)?;
    let quotient = sub.quotient(&p)?;
    let target = catalog::scab();
    let iso = find_isomorphism(&quotient, &target)
        .ok_or_else(|| StructureError::NotIsomorphic("Sc:ab".into()))?;
    Ok(PairWitness {
        a,
        b,
        generated,
        ideal,
        quotient,
        iso,
    })
}

/// All pairs with `a² ≠ ab`, in order.
pub fn pairs(s: &FiniteAiSemiring) -> impl Iterator<Item = (Elem, Elem)> + '_ {
    s.elements()
        .flat_map(move |a| s.elements().map(move |b| (a, b)))
        .filter(move |&(a, b)| s.mul(a, a) != s.mul(a, b))
}

/// Data for a quadruple `a, b, c, d` with `ad ≰ ab + bc + cd`.
#[derive(Debug, Clone)]
pub struct QuadrupleWitness {
    pub gens: [Elem; 4],
    pub generated: BTreeSet<Elem>,
    /// `classes[i]` is `R_{i+1}` as elements of the ambient algebra.
    pub classes: Vec<BTreeSet<Elem>>,
    pub quotient: FiniteAiSemiring,
    /// Quotient element to `SR_6` element; `R_i` goes to `i`.
    pub iso: Mapping,
}

/// `ad ≰ ab + bc + cd`.
pub fn separates(s: &FiniteAiSemiring, [a, b, c, d]: [Elem; 4]) -> bool {
    let rhs = s.add(s.add(s.mul(a, b), s.mul(b, c)), s.mul(c, d));
    !s.leq(s.mul(a, d), rhs)
}

/// `R_2, ..., R_6` as element sets.
fn named_classes(s: &FiniteAiSemiring, [a, b, c, d]: [Elem; 4]) -> [BTreeSet<Elem>; 5] {
    let (ab, bc, cd) = (s.mul(a, b), s.mul(b, c), s.mul(c, d));
    let sum = |xs: &[Elem]| xs[1..].iter().fold(xs[0], |acc, &x| s.add(acc, x));
    [
        [a, s.add(a, c)].into_iter().collect(),
        [
            ab,
            bc,
            cd,
            sum(&[ab, bc]),
            sum(&[ab, cd]),
            sum(&[bc, cd]),
            sum(&[ab, bc, cd]),
        ]
        .into_iter()
        .collect(),
        [d, s.add(b, d)].into_iter().collect(),
        [c].into_iter().collect(),
        [b].into_iter().collect(),
    ]
}

/// Runs the quadruple construction on `gens = [a, b, c, d]`.
pub fn check_quadruple(s: &FiniteAiSemiring, gens: [Elem; 4]) -> Result<QuadrupleWitness, StructureError> {
    if !separates(s, gens) {
        return Err(StructureError::Hypothesis);
    }
    let generated = s.subalgebra_closure(&gens);
    let named = named_classes(s, gens);
    for i in 0..named.len() {
        for j in i + 1..named.len() {
            if !named[i].is_disjoint(&named[j]) {
                return Err(StructureError::Overlap(i + 2, j + 2));
            }
        }
    }
    let used: BTreeSet<Elem> = named.iter().flatten().copied().collect();
    let rest: BTreeSet<Elem> = generated.difference(&used).copied().collect();
    if rest.is_empty() {
        return Err(StructureError::EmptyRest);
    }
    let mut classes = alloc::vec![rest];
    classes.extend(named);

    let (sub, incl) = s.restrict(&generated)?;
    let local = |e: Elem| incl.iter().position(|&x| x == e).expect("in subalgebra");
    let blocks: Vec<Vec<Elem>> = classes
        .iter()
        .map(|c| c.iter().map(|&e| local(e)).collect())
        .collect();
    let p = Partition::new(sub.size(), blocks.clone())?;
    let quotient = sub.quotient(&p)?;
    let mut iso = alloc::vec![0; quotient.size()];
    for (i, block) in blocks.iter().enumerate() {
        iso[p.class_of(block[0])] = i;
    }
    let sr6 = catalog::sr6();
    if !is_homomorphism(&quotient, &sr6, &iso) {
        return Err(StructureError::NotIsomorphic("SR6 under R_i -> i".into()));
    }
    Ok(QuadrupleWitness {
        gens,
        generated,
        classes,
        quotient,
        iso,
    })
}

/// Up to `limit` quadruples satisfying [`separates`], visiting the `n^4`
/// candidates in a fixed scrambled order.
pub fn sample_quadruples(s: &FiniteAiSemiring, limit: usize) -> Vec<[Elem; 4]> {
    const STRIDE: u64 = 1_000_003;
    let n = s.size() as u64;
    let total = n.pow(4);
    let mut out = Vec::new();
    for i in 0..total {
        if out.len() >= limit {
            break;
        }
        let mut k = (i * STRIDE) % total;
        let mut g = [0; 4];
        for slot in g.iter_mut().rev() {
            *slot = (k % n) as Elem;
            k /= n;
        }
        if separates(s, g) {
            out.push(g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &FiniteAiSemiring, x: &str) -> Elem {
        s.elem(x).unwrap()
    }

    #[test]
    fn sr6_pairs_and_quadruple() {
        let s = catalog::sr6();
        let mut n = 0;
        for (a, b) in pairs(&s) {
            check_pair(&s, a, b).unwrap();
            n += 1;
        }
        assert!(n > 0);
        let gens = [l(&s, "2"), l(&s, "6"), l(&s, "5"), l(&s, "4")];
        let w = check_quadruple(&s, gens).unwrap();
        assert_eq!(w.generated.len(), 6);
        assert_eq!(w.iso.len(), 6);
    }

    #[test]
    fn quadruple_needs_hypothesis() {
        let s = catalog::scab();
        assert!(sample_quadruples(&s, 10).is_empty());
        assert_eq!(check_quadruple(&s, [0, 0, 0, 0]).unwrap_err(), StructureError::Hypothesis);
    }
}
