mod common;

use std::collections::BTreeSet;

use aisr_core::freeness::{instance_subterm, is_free, is_subterm};
use aisr_core::{Substitution, Term, VarId, Word};
use common::{term, word};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Nonempty subsets of `items` with at most `k` elements.
fn small_subsets(items: &[Word], k: usize) -> Vec<Vec<Word>> {
    let mut out = Vec::new();
    fn go(items: &[Word], k: usize, from: usize, acc: &mut Vec<Word>, out: &mut Vec<Vec<Word>>) {
        if !acc.is_empty() {
            out.push(acc.clone());
        }
        if acc.len() == k {
            return;
        }
        for i in from..items.len() {
            acc.push(items[i].clone());
            go(items, k, i + 1, acc, out);
            acc.pop();
        }
    }
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Searches multi-word contexts and multi-word images directly.
fn brute_force_instance(u: &Term, v: &Term) -> bool {
    let divisors: Vec<Word> = v
        .words()
        .iter()
        .flat_map(Word::divisors)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let image_choices = small_subsets(&divisors, 2);
    let mut contexts: Vec<Option<Term>> = vec![None];
    contexts.extend(small_subsets(&divisors, 2).into_iter().map(|ws| Some(Term::from_words(ws).unwrap())));
    let xs: Vec<VarId> = u.content().into_iter().collect();
    let mut idx = vec![0usize; xs.len()];
    loop {
        let mut phi = Substitution::new();
        for (x, &i) in xs.iter().zip(&idx) {
            phi.insert(*x, Term::from_words(image_choices[i].clone()).unwrap());
        }
        let img = phi.apply(u).unwrap();
        for p in &contexts {
            let full = match p {
                None => img.clone(),
                Some(p) => p.mul(&img),
            };
            if full.is_subset(v) {
                return true;
            }
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return false;
            }
            idx[k] += 1;
            if idx[k] < image_choices.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn single_word_search_matches_multi_word_brute_force(
        u in term(2, 2, 2),
        v in term(2, 2, 3),
    ) {
        let found = instance_subterm(&u, &v).unwrap();
        prop_assert_eq!(found.is_some(), brute_force_instance(&u, &v));
        if let Some(w) = found {
            prop_assert_eq!(w.reconstruct(&u), v);
        }
    }

    #[test]
    fn planted_multi_word_contexts_are_found(
        u in term(2, 2, 2),
        p in term(3, 1, 2),
        img0 in term(3, 2, 2),
        img1 in term(3, 2, 2),
        r in prop::collection::vec(word(3, 2), 0..3),
    ) {
        let phi = Substitution::new().with(VarId(0), img0).with(VarId(1), img1);
        let planted = p.mul(&phi.apply(&u).unwrap());
        let v = planted.with_words(&r);
        let w = instance_subterm(&u, &v).unwrap().expect("planted instance");
        prop_assert_eq!(w.reconstruct(&u), v);
    }

    #[test]
    fn plain_subterms_are_instances(u in term(3, 2, 2), p in word(3, 1), r in prop::collection::vec(word(3, 2), 0..3)) {
        let v = u.mul_context(&Some(p)).with_words(&r);
        prop_assert!(is_subterm(&u, &v).is_some());
        prop_assert!(!is_free(&v, &u).unwrap());
    }
}

/// Random small term over `nvars` variables.
fn random_term(rng: &mut ChaCha8Rng, nvars: u32, max_words: usize) -> Term {
    let n = rng.gen_range(1..=max_words);
    let words = (0..n).map(|_| loop {
        let fs: Vec<(VarId, u32)> = (0..nvars).map(|i| (VarId(i), rng.gen_range(0..=2))).collect();
        if let Ok(w) = Word::from_factors(fs) {
            break w;
        }
    });
    Term::from_words(words.collect::<Vec<_>>()).unwrap()
}

#[test]
fn freeness_passes_to_larger_terms() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2_1);
    let mut nonvacuous = 0;
    for _ in 0..2000 {
        let u = random_term(&mut rng, 2, 2);
        let v = random_term(&mut rng, 3, 3);
        let w = if rng.gen_bool(0.5) {
            let p = random_term(&mut rng, 2, 1).words()[0].clone();
            let r = random_term(&mut rng, 2, 2);
            u.mul_context(&Some(p)).add(&r)
        } else {
            u.add(&random_term(&mut rng, 2, 1))
        };
        assert!(is_subterm(&u, &w).is_some());
        if is_free(&v, &u).unwrap() {
            nonvacuous += 1;
            assert!(is_free(&v, &w).unwrap(), "v is u-free but not w-free");
        }
    }
    assert!(nonvacuous > 100);
}
