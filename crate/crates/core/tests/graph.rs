use std::collections::BTreeSet;

use aisr_core::families::u_n;
use aisr_core::graph::TermGraph;
use aisr_core::{VarId, VarTable};
use proptest::prelude::*;

fn edges(n: u32, max: usize) -> impl Strategy<Value = Vec<(u32, u32)>> {
    prop::collection::vec((0..n, 0..n), 1..max)
}

fn graph(es: &[(u32, u32)]) -> TermGraph {
    TermGraph::from_edges(es.iter().map(|&(a, b)| (VarId(a), VarId(b))))
}

fn adjacent(es: &[(u32, u32)], a: u32, b: u32) -> bool {
    es.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
}

/// Whether some 2-colouring of the vertices is proper.
fn colourable(es: &[(u32, u32)], n: u32) -> bool {
    (0u32..1 << n).any(|mask| es.iter().all(|&(a, b)| (mask >> a & 1) != (mask >> b & 1)))
}

/// Pairs joined by a simple path of odd length, by exhaustive DFS.
fn odd_path_pairs(es: &[(u32, u32)], n: u32) -> BTreeSet<(u32, u32)> {
    fn go(es: &[(u32, u32)], n: u32, path: &mut Vec<u32>, out: &mut BTreeSet<(u32, u32)>) {
        let last = *path.last().unwrap();
        if path.len().is_multiple_of(2) {
            let (a, b) = (path[0], last);
            out.insert((a.min(b), a.max(b)));
        }
        for v in 0..n {
            if !path.contains(&v) && adjacent(es, last, v) {
                path.push(v);
                go(es, n, path, out);
                path.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    let verts: BTreeSet<u32> = es.iter().flat_map(|&(a, b)| [a, b]).collect();
    for &v in &verts {
        go(es, n, &mut vec![v], &mut out);
    }
    out
}

fn valid_walk(es: &[(u32, u32)], w: &[VarId]) -> bool {
    w.windows(2).all(|p| adjacent(es, p[0].0, p[1].0))
}

proptest! {
    #[test]
    fn odd_cycle_iff_no_bipartition(es in edges(6, 9)) {
        let g = graph(&es);
        prop_assert_eq!(g.has_odd_cycle(), !colourable(&es, 6));
        prop_assert_eq!(g.bipartition().is_none(), g.odd_cycle().is_some());
        if let Some(c) = g.odd_cycle() {
            prop_assert!(c.len() % 2 == 0, "odd number of edges");
            prop_assert_eq!(c.first(), c.last());
            prop_assert!(valid_walk(&es, &c));
            let inner: BTreeSet<_> = c[1..].iter().collect();
            prop_assert_eq!(inner.len(), c.len() - 1, "a shortest odd cycle is simple");
        }
    }

    #[test]
    fn odd_closure_is_odd_paths_on_bipartite_graphs(sides in prop::collection::vec(any::<bool>(), 7), es in edges(7, 10)) {
        let es: Vec<_> = es.into_iter().filter(|&(a, b)| sides[a as usize] != sides[b as usize]).collect();
        prop_assume!(!es.is_empty());
        let g = graph(&es);
        prop_assert!(!g.has_odd_cycle());
        let walks: BTreeSet<(u32, u32)> = g.odd_closure().into_iter().map(|(a, b)| (a.0, b.0)).collect();
        prop_assert_eq!(&walks, &odd_path_pairs(&es, 7));
        let colour = g.bipartition().unwrap();
        for (a, b) in walks {
            let (x, y) = (VarId(a), VarId(b));
            prop_assert_ne!(colour[&x], colour[&y]);
            prop_assert_eq!(g.component(x), g.component(y));
            let w = g.odd_walk(x, y).unwrap();
            prop_assert!(w.len().is_multiple_of(2) && valid_walk(&es, &w));
            let distinct: BTreeSet<_> = w.iter().collect();
            prop_assert_eq!(distinct.len(), w.len(), "odd walks are paths without odd cycles");
        }
    }
}

#[test]
fn odd_cycles_of_the_family_are_two_regular_and_connected() {
    let mut vars = VarTable::new();
    for n in 1..=5 {
        let g = TermGraph::build(&u_n(&mut vars, n).unwrap());
        let vs: Vec<VarId> = g.vertices().collect();
        assert_eq!(vs.len(), 2 * n + 1);
        assert!(vs.iter().all(|&v| g.neighbours(v).count() == 2));
        assert_eq!(g.component(vs[0]).unwrap().len(), vs.len());
        assert!(g.has_odd_cycle());
        assert_eq!(g.odd_cycle().unwrap().len(), 2 * n + 2);
    }
}
