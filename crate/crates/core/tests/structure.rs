mod common;

use std::collections::BTreeSet;

use aisr_core::algebra::FiniteAiSemiring;
use aisr_core::catalog::{d2, sca, scab, sr6};
use aisr_core::characterize::dq_filter;
use aisr_core::iso::{is_homomorphism, is_isomorphic};
use aisr_core::term::split_identity;
use aisr_core::{Formula, Identity, Inequality, Partition, Term};
use common::{term, word};
use proptest::prelude::*;

fn small() -> [FiniteAiSemiring; 4] {
    [sr6(), scab(), d2(), sca()]
}

fn holds(a: &FiniteAiSemiring, f: &Formula) -> bool {
    a.satisfies(f).unwrap().holds
}

fn identity(s: Term, t: Term) -> Formula {
    Formula::Identity(Identity::new(s, t))
}

/// `A x B` with the congruence "same first coordinate".
fn first_projection(a: &FiniteAiSemiring, b: &FiniteAiSemiring) -> (FiniteAiSemiring, Partition) {
    let ab = a.direct_product(b);
    let m = b.size();
    let blocks = (0..a.size()).map(|i| (i * m..(i + 1) * m).collect()).collect();
    let p = Partition::new(ab.size(), blocks).unwrap();
    (ab, p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identities_split_into_two_inequalities(s in term(3, 2, 3), t in term(3, 2, 3), i in 0usize..4) {
        let a = &small()[i];
        let id = Identity::new(s, t);
        let parts = split_identity(&id);
        let both = parts.iter().all(|q| holds(a, &Formula::Inequality(q.clone())));
        prop_assert_eq!(holds(a, &Formula::Identity(id)), both);
    }

    #[test]
    fn products_satisfy_exactly_the_common_identities(s in term(2, 2, 3), t in term(2, 2, 3), i in 0usize..4, j in 0usize..4) {
        let (a, b) = (&small()[i], &small()[j]);
        let f = identity(s, t);
        prop_assert_eq!(holds(&a.direct_product(b), &f), holds(a, &f) && holds(b, &f));
    }

    #[test]
    fn quotients_and_subalgebras_keep_identities(s in term(2, 2, 3), t in term(2, 2, 3), i in 0usize..4, j in 0usize..4) {
        let (a, b) = (&small()[i], &small()[j]);
        let (ab, p) = first_projection(a, b);
        let q = ab.quotient(&p).unwrap();
        prop_assert!(is_isomorphic(&q, a));
        let f = identity(s, t);
        if holds(&ab, &f) {
            prop_assert!(holds(&q, &f));
        }
        let s6 = sr6();
        let sub: BTreeSet<_> = ["1", "3", "5", "6"].iter().map(|l| s6.elem(l).unwrap()).collect();
        let (sub, _) = s6.restrict(&sub).unwrap();
        if holds(&s6, &f) {
            prop_assert!(holds(&sub, &f));
        }
    }

    #[test]
    fn zero_adjunction_filters_summands(q in word(3, 2), u in term(3, 2, 3)) {
        let ab0 = scab().adjoin_zero();
        let direct = holds(&ab0, &Formula::Inequality(Inequality::new(q.clone(), u.clone())));
        let d = dq_filter(&q, &u);
        let filtered = !d.is_empty()
            && holds(&scab(), &Formula::Inequality(Inequality::new(q, Term::from_words(d).unwrap())));
        prop_assert_eq!(direct, filtered);
    }
}

#[test]
fn block_maps_are_surjective_homomorphisms() {
    for a in small() {
        for b in small() {
            let (ab, p) = first_projection(&a, &b);
            let q = ab.quotient(&p).unwrap();
            let map: Vec<usize> = (0..ab.size()).map(|e| p.class_of(e)).collect();
            assert!(is_homomorphism(&ab, &q, &map));
            let image: BTreeSet<_> = map.iter().collect();
            assert_eq!(image.len(), q.size());
        }
    }
}
