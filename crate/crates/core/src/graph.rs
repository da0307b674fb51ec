//! The graph `G_t` of a term: vertices are the variables of the length-2
//! words of `t`, and each length-2 word `xy` is an edge (`x^2` is a loop).
//!
//! Parity questions are answered by breadth-first search on the double cover
//! whose nodes are `(vertex, parity of the walk so far)`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::term::{Term, VarId, Word};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TermGraph {
    adj: BTreeMap<VarId, BTreeSet<VarId>>,
}

/// `(vertex, parity)` to distance and predecessor.
type ParityMap = BTreeMap<(VarId, bool), (usize, Option<(VarId, bool)>)>;

/// Unordered pair stored with the smaller id first.
pub type Edge = (VarId, VarId);

fn edge(a: VarId, b: VarId) -> Edge {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl TermGraph {
    pub fn build(t: &Term) -> Self {
        Self::from_words(t.words())
    }

    /// The graph of the length-2 words among `words`; other lengths are
    /// ignored.
    pub fn from_words(words: &[Word]) -> Self {
        let mut g = TermGraph::default();
        for w in words.iter().filter(|w| w.degree() == 2) {
            let mut letters = w.letters();
            let a = letters.next().expect("two letters");
            let b = letters.next().expect("two letters");
            g.add_edge(a, b);
        }
        g
    }

    pub fn from_edges<I: IntoIterator<Item = (VarId, VarId)>>(edges: I) -> Self {
        let mut g = TermGraph::default();
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_edge(&mut self, a: VarId, b: VarId) {
        self.adj.entry(a).or_default().insert(b);
        self.adj.entry(b).or_default().insert(a);
    }

    pub fn vertices(&self) -> impl Iterator<Item = VarId> + '_ {
        self.adj.keys().copied()
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn edges(&self) -> BTreeSet<Edge> {
        self.adj
            .iter()
            .flat_map(|(&a, ns)| ns.iter().map(move |&b| edge(a, b)))
            .collect()
    }

    pub fn neighbours(&self, v: VarId) -> impl Iterator<Item = VarId> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    pub fn loops(&self) -> impl Iterator<Item = VarId> + '_ {
        self.adj
            .iter()
            .filter(|(a, ns)| ns.contains(a))
            .map(|(&a, _)| a)
    }

    /// Connected component of `x`, or `None` if `x` is not a vertex.
    pub fn component(&self, x: VarId) -> Option<BTreeSet<VarId>> {
        if !self.contains(x) {
            return None;
        }
        let mut seen = BTreeSet::from([x]);
        let mut queue = VecDeque::from([x]);
        while let Some(v) = queue.pop_front() {
            for n in self.neighbours(v) {
                if seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        Some(seen)
    }

    /// Parity BFS from `start`: `dist[(v, p)]` is the length of a shortest
    /// walk from `start` to `v` whose length has parity `p`, with predecessor
    /// links for reconstruction.
    fn parity_bfs(&self, start: VarId) -> ParityMap {
        let mut dist = BTreeMap::new();
        dist.insert((start, false), (0, None));
        let mut queue = VecDeque::from([(start, false)]);
        while let Some((v, p)) = queue.pop_front() {
            let d = dist[&(v, p)].0;
            for n in self.neighbours(v) {
                let key = (n, !p);
                if let alloc::collections::btree_map::Entry::Vacant(e) = dist.entry(key) {
                    e.insert((d + 1, Some((v, p))));
                    queue.push_back(key);
                }
            }
        }
        dist
    }

    fn walk_to(
        dist: &ParityMap,
        end: (VarId, bool),
    ) -> Option<Vec<VarId>> {
        let mut node = end;
        let mut walk = alloc::vec![end.0];
        loop {
            let &(_, pred) = dist.get(&node)?;
            match pred {
                None => break,
                Some(p) => {
                    walk.push(p.0);
                    node = p;
                }
            }
        }
        walk.reverse();
        Some(walk)
    }

    /// Whether some component fails to be 2-colourable. A loop is an odd
    /// cycle of length 1.
    pub fn has_odd_cycle(&self) -> bool {
        self.bipartition().is_none()
    }

    /// A proper 2-colouring (`false`/`true` per vertex), the least vertex of
    /// each component coloured `false`; `None` if there is an odd cycle.
    pub fn bipartition(&self) -> Option<BTreeMap<VarId, bool>> {
        let mut colour: BTreeMap<VarId, bool> = BTreeMap::new();
        for start in self.vertices() {
            if colour.contains_key(&start) {
                continue;
            }
            colour.insert(start, false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let c = colour[&v];
                for n in self.neighbours(v) {
                    match colour.get(&n) {
                        Some(&d) if d == c => return None,
                        Some(_) => {}
                        None => {
                            colour.insert(n, !c);
                            queue.push_back(n);
                        }
                    }
                }
            }
        }
        Some(colour)
    }

    /// A shortest odd cycle as a closed vertex sequence `[v0, v1, ..., v0]`,
    /// so a loop at `x` is `[x, x]`. Ties are broken by least starting
    /// vertex.
    pub fn odd_cycle(&self) -> Option<Vec<VarId>> {
        let mut best: Option<Vec<VarId>> = None;
        for v in self.vertices() {
            let dist = self.parity_bfs(v);
            if let Some(&(d, _)) = dist.get(&(v, true)) {
                if best.as_ref().is_none_or(|b| d < b.len() - 1) {
                    best = Self::walk_to(&dist, (v, true));
                }
            }
        }
        best
    }

    /// Pairs `{x, y}` joined by a walk of odd length, smaller id first.
    /// Includes `(x, x)` when `x` lies on an odd closed walk. In graphs
    /// without odd cycles these are exactly the pairs joined by an odd path.
    pub fn odd_closure(&self) -> BTreeSet<Edge> {
        let mut out = BTreeSet::new();
        for x in self.vertices() {
            for ((y, p), _) in self.parity_bfs(x) {
                if p && x <= y {
                    out.insert((x, y));
                }
            }
        }
        out
    }

    pub fn has_odd_walk(&self, x: VarId, y: VarId) -> bool {
        self.contains(x) && self.parity_bfs(x).contains_key(&(y, true))
    }

    /// A shortest odd walk from `x` to `y` as a vertex sequence. When the
    /// graph has no odd cycle this is a path.
    pub fn odd_walk(&self, x: VarId, y: VarId) -> Option<Vec<VarId>> {
        if !self.contains(x) {
            return None;
        }
        Self::walk_to(&self.parity_bfs(x), (y, true))
    }
}
