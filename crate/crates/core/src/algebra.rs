//! Finite commutative ai-semirings given by Cayley tables.
//!
//! Elements are indices `0..size`. Each algebra carries display labels so
//! reports can use the element names of the source (for example `1..6` for
//! the six-element algebra, or subwords and `0` for flat semirings).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::term::{Formula, Inequality, Term, VarId};

pub type Elem = usize;

/// Values for the variables of a term.
pub type Assignment = BTreeMap<VarId, Elem>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("multiplication is not commutative ({a}*{b} != {b}*{a})")]
    NotCommutative { a: Elem, b: Elem },
    #[error("no value assigned to variable #{}", .0 .0)]
    Unassigned(VarId),
    #[error("{needed} assignments exceed the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("not a partition of the carrier: {0}")]
    NotAPartition(String),
    #[error("partition is not a congruence: {0}")]
    NotACongruence(CongruenceViolation),
    #[error("element {0} is outside the carrier")]
    OutOfRange(Elem),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    AddCommutative,
    AddAssociative,
    AddIdempotent,
    MulCommutative,
    MulAssociative,
    LeftDistributive,
    RightDistributive,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::AddCommutative => "addition is commutative",
            Axiom::AddAssociative => "addition is associative",
            Axiom::AddIdempotent => "addition is idempotent",
            Axiom::MulCommutative => "multiplication is commutative",
            Axiom::MulAssociative => "multiplication is associative",
            Axiom::LeftDistributive => "x(y+z) = xy+xz",
            Axiom::RightDistributive => "(x+y)z = xz+yz",
        }
    }
}

/// A violated axiom with the first witness triple found (unused positions
/// repeat the first element).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: (Elem, Elem, Elem),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// True if the only problem is noncommutative multiplication.
    pub fn only_noncommutative(&self) -> bool {
        !self.violations.is_empty()
            && self
                .violations
                .iter()
                .all(|v| v.axiom == Axiom::MulCommutative)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteAiSemiring {
    name: Option<String>,
    size: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    labels: Vec<String>,
}

impl FiniteAiSemiring {
    /// Builds an algebra from row-major tables. Checks only shape and range;
    /// use [`validate`](Self::validate) for the axioms.
    pub fn new(
        name: Option<String>,
        add: Vec<Vec<Elem>>,
        mul: Vec<Vec<Elem>>,
    ) -> Result<Self, AlgebraError> {
        let size = add.len();
        if size == 0 {
            return Err(AlgebraError::Malformed("carrier is empty".into()));
        }
        for (what, table) in [("add", &add), ("mul", &mul)] {
            if table.len() != size {
                return Err(AlgebraError::Malformed(alloc::format!(
                    "{what} has {} rows, expected {size}",
                    table.len()
                )));
            }
            for (i, row) in table.iter().enumerate() {
                if row.len() != size {
                    return Err(AlgebraError::Malformed(alloc::format!(
                        "{what} row {i} has {} entries, expected {size}",
                        row.len()
                    )));
                }
                if let Some(&bad) = row.iter().find(|&&e| e >= size) {
                    return Err(AlgebraError::Malformed(alloc::format!(
                        "{what} row {i} contains {bad}, outside 0..{size}"
                    )));
                }
            }
        }
        Ok(FiniteAiSemiring {
            name,
            size,
            add: add.into_iter().flatten().collect(),
            mul: mul.into_iter().flatten().collect(),
            labels: (0..size).map(|i| i.to_string()).collect(),
        })
    }

    pub(crate) fn from_flat(
        name: Option<String>,
        size: usize,
        add: Vec<Elem>,
        mul: Vec<Elem>,
        labels: Vec<String>,
    ) -> Self {
        debug_assert_eq!(add.len(), size * size);
        debug_assert_eq!(mul.len(), size * size);
        debug_assert_eq!(labels.len(), size);
        FiniteAiSemiring {
            name,
            size,
            add,
            mul,
            labels,
        }
    }

    /// The one-element algebra.
    pub fn trivial() -> Self {
        Self::from_flat(
            Some("T".into()),
            1,
            alloc::vec![0],
            alloc::vec![0],
            alloc::vec!["e".into()],
        )
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, AlgebraError> {
        if labels.len() != self.size {
            return Err(AlgebraError::Malformed(alloc::format!(
                "{} labels for {} elements",
                labels.len(),
                self.size
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e]
    }

    /// Element with the given label.
    pub fn elem(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.size + b]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.size + b]
    }

    pub fn add_table(&self) -> Vec<Vec<Elem>> {
        self.add.chunks(self.size).map(<[Elem]>::to_vec).collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<Elem>> {
        self.mul.chunks(self.size).map(<[Elem]>::to_vec).collect()
    }

    pub fn elements(&self) -> core::ops::Range<Elem> {
        0..self.size
    }

    /// Checks every ai-semiring axiom plus commutativity of multiplication,
    /// recording the first witness for each violated axiom.
    pub fn validate(&self) -> ValidationReport {
        let n = self.size;
        let mut found: BTreeMap<Axiom, (Elem, Elem, Elem)> = BTreeMap::new();
        let mut note = |ax: Axiom, w: (Elem, Elem, Elem)| {
            found.entry(ax).or_insert(w);
        };
        for a in 0..n {
            if self.add(a, a) != a {
                note(Axiom::AddIdempotent, (a, a, a));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    note(Axiom::AddCommutative, (a, b, a));
                }
                if self.mul(a, b) != self.mul(b, a) {
                    note(Axiom::MulCommutative, (a, b, a));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        note(Axiom::AddAssociative, (a, b, c));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        note(Axiom::MulAssociative, (a, b, c));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        note(Axiom::LeftDistributive, (a, b, c));
                    }
                    if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        note(Axiom::RightDistributive, (a, b, c));
                    }
                }
            }
        }
        ValidationReport {
            violations: found
                .into_iter()
                .map(|(axiom, witness)| Violation { axiom, witness })
                .collect(),
        }
    }

    pub fn is_commutative(&self) -> Result<(), AlgebraError> {
        for a in 0..self.size {
            for b in (a + 1)..self.size {
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(AlgebraError::NotCommutative { a, b });
                }
            }
        }
        Ok(())
    }

    /// Natural order: `a <= b` iff `a + b = b`.
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.add(a, b) == b
    }

    /// Greatest element of the natural order, if any.
    pub fn top(&self) -> Option<Elem> {
        (0..self.size).find(|&t| (0..self.size).all(|a| self.leq(a, t)))
    }

    /// Least element of the natural order, if any.
    pub fn bottom(&self) -> Option<Elem> {
        (0..self.size).find(|&t| (0..self.size).all(|a| self.leq(t, a)))
    }

    pub fn power(&self, a: Elem, e: u32) -> Elem {
        debug_assert!(e > 0);
        let mut acc = a;
        for _ in 1..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Value of `t` under the homomorphism extending `alpha`.
    pub fn eval(&self, t: &Term, alpha: &Assignment) -> Result<Elem, AlgebraError> {
        let mut sum: Option<Elem> = None;
        for w in t.words() {
            let mut prod: Option<Elem> = None;
            for &(v, e) in w.factors() {
                let a = *alpha.get(&v).ok_or(AlgebraError::Unassigned(v))?;
                if a >= self.size {
                    return Err(AlgebraError::OutOfRange(a));
                }
                let p = self.power(a, e);
                prod = Some(prod.map_or(p, |acc| self.mul(acc, p)));
            }
            let p = prod.expect("nonempty word");
            sum = Some(sum.map_or(p, |acc| self.add(acc, p)));
        }
        Ok(sum.expect("nonempty term"))
    }

    /// Exhaustive satisfaction check over every assignment of the formula's
    /// variables. Refuses noncommutative algebras.
    pub fn satisfies(&self, f: &Formula) -> Result<Satisfaction, AlgebraError> {
        self.satisfies_within(f, u128::MAX)
    }

    /// As [`satisfies`](Self::satisfies), refusing up front when
    /// `size^|vars|` exceeds `budget`.
    pub fn satisfies_within(&self, f: &Formula, budget: u128) -> Result<Satisfaction, AlgebraError> {
        self.is_commutative()?;
        let vars: Vec<VarId> = f.content().into_iter().collect();
        let needed = (self.size as u128)
            .checked_pow(vars.len() as u32)
            .unwrap_or(u128::MAX);
        if needed > budget {
            return Err(AlgebraError::BudgetExceeded { needed, budget });
        }
        let checker = CompiledFormula::new(self, f, &vars);
        let mut values = alloc::vec![0usize; vars.len()];
        loop {
            if !checker.holds_at(&values) {
                let witness = vars.iter().copied().zip(values.iter().copied()).collect();
                return Ok(Satisfaction {
                    holds: false,
                    witness: Some(witness),
                });
            }
            // mixed-radix increment, last variable fastest
            let mut i = values.len();
            loop {
                if i == 0 {
                    return Ok(Satisfaction {
                        holds: true,
                        witness: None,
                    });
                }
                i -= 1;
                values[i] += 1;
                if values[i] < self.size {
                    break;
                }
                values[i] = 0;
            }
        }
    }

    /// Least subset containing `generators` and closed under both operations.
    pub fn subalgebra_closure(&self, generators: &[Elem]) -> BTreeSet<Elem> {
        let mut set: BTreeSet<Elem> = generators.iter().copied().collect();
        let mut members: Vec<Elem> = set.iter().copied().collect();
        let mut frontier = 0;
        // pairs (i, j) with j < frontier..members.len() are new each round
        while frontier < members.len() {
            let end = members.len();
            let mut fresh = Vec::new();
            for j in frontier..end {
                for i in 0..=j {
                    let (a, b) = (members[i], members[j]);
                    for c in [self.add(a, b), self.mul(a, b), self.mul(b, a)] {
                        if set.insert(c) {
                            fresh.push(c);
                        }
                    }
                }
            }
            frontier = end;
            members.extend(fresh);
        }
        set
    }

    /// The algebra induced on a closed subset, with labels inherited. Returns
    /// the subalgebra and the inclusion map (new index -> parent element).
    pub fn restrict(&self, elems: &BTreeSet<Elem>) -> Result<(FiniteAiSemiring, Vec<Elem>), AlgebraError> {
        let members: Vec<Elem> = elems.iter().copied().collect();
        if let Some(&bad) = members.iter().find(|&&e| e >= self.size) {
            return Err(AlgebraError::OutOfRange(bad));
        }
        let index: BTreeMap<Elem, usize> =
            members.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let k = members.len();
        let mut add = Vec::with_capacity(k * k);
        let mut mul = Vec::with_capacity(k * k);
        for &a in &members {
            for &b in &members {
                let s = self.add(a, b);
                let p = self.mul(a, b);
                let (Some(&si), Some(&pi)) = (index.get(&s), index.get(&p)) else {
                    return Err(AlgebraError::Malformed(alloc::format!(
                        "subset is not closed: {} and {} leave it",
                        self.label(a),
                        self.label(b)
                    )));
                };
                add.push(si);
                mul.push(pi);
            }
        }
        let labels = members.iter().map(|&e| self.labels[e].clone()).collect();
        let name = self.name.as_ref().map(|n| alloc::format!("sub({n})"));
        Ok((FiniteAiSemiring::from_flat(name, k, add, mul, labels), members))
    }

    /// Checks compatibility of `p` with both operations.
    pub fn check_congruence(&self, p: &Partition) -> Result<(), AlgebraError> {
        if p.size() != self.size {
            return Err(AlgebraError::NotAPartition(alloc::format!(
                "partition covers {} elements, algebra has {}",
                p.size(),
                self.size
            )));
        }
        for block in p.blocks() {
            let a = block[0];
            for &b in &block[1..] {
                for c in 0..self.size {
                    for (op, x, y) in [
                        (Op::Add, self.add(a, c), self.add(b, c)),
                        (Op::Mul, self.mul(a, c), self.mul(b, c)),
                        (Op::Mul, self.mul(c, a), self.mul(c, b)),
                    ] {
                        if p.class_of(x) != p.class_of(y) {
                            return Err(AlgebraError::NotACongruence(CongruenceViolation {
                                a,
                                b,
                                c,
                                op,
                            }));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `true` iff `p` is a congruence. Equivalent pairs need only be checked
    /// against a block representative, since equivalence is transitive.
    pub fn is_congruence(&self, p: &Partition) -> bool {
        self.check_congruence(p).is_ok()
    }

    /// The quotient by a congruence. Block `i` of `p` becomes element `i`,
    /// labelled by its members.
    pub fn quotient(&self, p: &Partition) -> Result<FiniteAiSemiring, AlgebraError> {
        self.check_congruence(p)?;
        let k = p.blocks().len();
        let mut add = Vec::with_capacity(k * k);
        let mut mul = Vec::with_capacity(k * k);
        for bi in p.blocks() {
            for bj in p.blocks() {
                add.push(p.class_of(self.add(bi[0], bj[0])));
                mul.push(p.class_of(self.mul(bi[0], bj[0])));
            }
        }
        let labels = p
            .blocks()
            .iter()
            .map(|b| {
                if b.len() == 1 {
                    self.labels[b[0]].clone()
                } else {
                    let inner: Vec<&str> = b.iter().map(|&e| self.labels[e].as_str()).collect();
                    alloc::format!("[{}]", inner.join(","))
                }
            })
            .collect();
        let name = self.name.as_ref().map(|n| alloc::format!("{n}/~"));
        Ok(FiniteAiSemiring::from_flat(name, k, add, mul, labels))
    }

    /// Componentwise product; `(a, b)` is element `a * size(B) + b`.
    pub fn direct_product(&self, other: &FiniteAiSemiring) -> FiniteAiSemiring {
        let (n, m) = (self.size, other.size);
        let k = n * m;
        let split = |e: Elem| (e / m, e % m);
        let mut add = Vec::with_capacity(k * k);
        let mut mul = Vec::with_capacity(k * k);
        for x in 0..k {
            let (a1, b1) = split(x);
            for y in 0..k {
                let (a2, b2) = split(y);
                add.push(self.add(a1, a2) * m + other.add(b1, b2));
                mul.push(self.mul(a1, a2) * m + other.mul(b1, b2));
            }
        }
        let labels = (0..k)
            .map(|x| {
                let (a, b) = split(x);
                alloc::format!("({},{})", self.labels[a], other.labels[b])
            })
            .collect();
        let name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(alloc::format!("{a}x{b}")),
            _ => None,
        };
        FiniteAiSemiring::from_flat(name, k, add, mul, labels)
    }

    /// Adjoins a new element that is the additive identity (least element)
    /// and a multiplicative zero. It becomes the last element.
    pub fn adjoin_zero(&self) -> FiniteAiSemiring {
        let n = self.size;
        let z = n;
        let k = n + 1;
        let mut add = Vec::with_capacity(k * k);
        let mut mul = Vec::with_capacity(k * k);
        for a in 0..k {
            for b in 0..k {
                add.push(match (a == z, b == z) {
                    (true, _) => b,
                    (_, true) => a,
                    _ => self.add(a, b),
                });
                mul.push(if a == z || b == z { z } else { self.mul(a, b) });
            }
        }
        let mut labels = self.labels.clone();
        let mut zero = String::from("0");
        while labels.contains(&zero) {
            zero.push('\'');
        }
        labels.push(zero);
        let name = self.name.as_ref().map(|n| alloc::format!("{n}^0"));
        FiniteAiSemiring::from_flat(name, k, add, mul, labels)
    }
}

impl fmt::Display for FiniteAiSemiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.labels.iter().map(String::len).max().unwrap_or(1);
        for (sym, table) in [("+", &self.add), ("*", &self.mul)] {
            write!(f, "{sym:>width$} |")?;
            for l in &self.labels {
                write!(f, " {l:>width$}")?;
            }
            writeln!(f)?;
            for a in 0..self.size {
                write!(f, "{:>width$} |", self.labels[a])?;
                for b in 0..self.size {
                    write!(f, " {:>width$}", self.labels[table[a * self.size + b]])?;
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Outcome of an exhaustive satisfaction check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Satisfaction {
    pub holds: bool,
    pub witness: Option<Assignment>,
}

/// Formula compiled against a slot layout: each word is a list of
/// `(slot, exponent)`.
struct CompiledFormula<'a> {
    alg: &'a FiniteAiSemiring,
    kind: CompiledKind,
    /// `powers[e][a] = a^e`
    powers: Vec<Vec<Elem>>,
}

enum CompiledKind {
    Identity(Vec<Vec<(usize, u32)>>, Vec<Vec<(usize, u32)>>),
    Inequality(Vec<(usize, u32)>, Vec<Vec<(usize, u32)>>),
}

impl<'a> CompiledFormula<'a> {
    fn new(alg: &'a FiniteAiSemiring, f: &Formula, vars: &[VarId]) -> Self {
        let slot = |v: VarId| vars.binary_search(&v).expect("variable in content");
        let word = |w: &crate::term::Word| -> Vec<(usize, u32)> {
            w.factors().iter().map(|&(v, e)| (slot(v), e)).collect()
        };
        let term = |t: &Term| -> Vec<Vec<(usize, u32)>> { t.words().iter().map(word).collect() };
        let (kind, max_exp) = match f {
            Formula::Identity(id) => {
                let m = id
                    .lhs
                    .words()
                    .iter()
                    .chain(id.rhs.words())
                    .flat_map(|w| w.factors().iter().map(|&(_, e)| e))
                    .max()
                    .unwrap_or(1);
                (CompiledKind::Identity(term(&id.lhs), term(&id.rhs)), m)
            }
            Formula::Inequality(Inequality { lhs, rhs }) => {
                let m = core::iter::once(lhs)
                    .chain(rhs.words())
                    .flat_map(|w| w.factors().iter().map(|&(_, e)| e))
                    .max()
                    .unwrap_or(1);
                (CompiledKind::Inequality(word(lhs), term(rhs)), m)
            }
        };
        let powers = (0..=max_exp)
            .map(|e| {
                alg.elements()
                    .map(|a| if e == 0 { a } else { alg.power(a, e) })
                    .collect()
            })
            .collect();
        CompiledFormula { alg, kind, powers }
    }

    #[inline]
    fn word(&self, w: &[(usize, u32)], values: &[Elem]) -> Elem {
        let mut it = w.iter();
        let &(s, e) = it.next().expect("nonempty word");
        let mut acc = self.powers[e as usize][values[s]];
        for &(s, e) in it {
            acc = self.alg.mul(acc, self.powers[e as usize][values[s]]);
        }
        acc
    }

    #[inline]
    fn term(&self, t: &[Vec<(usize, u32)>], values: &[Elem]) -> Elem {
        let mut it = t.iter();
        let mut acc = self.word(it.next().expect("nonempty term"), values);
        for w in it {
            acc = self.alg.add(acc, self.word(w, values));
        }
        acc
    }

    fn holds_at(&self, values: &[Elem]) -> bool {
        match &self.kind {
            CompiledKind::Identity(l, r) => self.term(l, values) == self.term(r, values),
            CompiledKind::Inequality(q, u) => {
                let big = self.term(u, values);
                self.alg.add(self.word(q, values), big) == big
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Mul,
}

/// `a ~ b` but `a op c` and `b op c` fall in different blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CongruenceViolation {
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
    pub op: Op,
}

impl fmt::Display for CongruenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.op {
            Op::Add => "+",
            Op::Mul => "*",
        };
        write!(
            f,
            "{a} ~ {b} but {a}{op}{c} and {b}{op}{c} are not equivalent",
            a = self.a,
            b = self.b,
            c = self.c
        )
    }
}

/// Exact cover of `0..size` by disjoint nonempty blocks, each sorted, blocks
/// ordered by least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<Elem>>,
    class: Vec<usize>,
}

impl Partition {
    pub fn new(size: usize, blocks: Vec<Vec<Elem>>) -> Result<Self, AlgebraError> {
        let mut class = alloc::vec![usize::MAX; size];
        let mut blocks: Vec<Vec<Elem>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        if blocks.iter().any(Vec::is_empty) {
            return Err(AlgebraError::NotAPartition("empty block".into()));
        }
        blocks.sort();
        for (i, b) in blocks.iter().enumerate() {
            for &e in b {
                if e >= size {
                    return Err(AlgebraError::NotAPartition(alloc::format!(
                        "element {e} outside 0..{size}"
                    )));
                }
                if class[e] != usize::MAX {
                    return Err(AlgebraError::NotAPartition(alloc::format!(
                        "element {e} appears twice"
                    )));
                }
                class[e] = i;
            }
        }
        if let Some(missing) = class.iter().position(|&c| c == usize::MAX) {
            return Err(AlgebraError::NotAPartition(alloc::format!(
                "element {missing} is not covered"
            )));
        }
        Ok(Partition { blocks, class })
    }

    pub fn identity(size: usize) -> Self {
        Self::new(size, (0..size).map(|e| alloc::vec![e]).collect()).expect("valid")
    }

    pub fn single_block(size: usize) -> Self {
        Self::new(size, alloc::vec![(0..size).collect()]).expect("valid")
    }

    /// The partition whose only nontrivial block is `block`.
    pub fn collapsing(size: usize, block: &[Elem]) -> Result<Self, AlgebraError> {
        let mut blocks: Vec<Vec<Elem>> = alloc::vec![block.to_vec()];
        blocks.extend((0..size).filter(|e| !block.contains(e)).map(|e| alloc::vec![e]));
        Self::new(size, blocks)
    }

    pub fn blocks(&self) -> &[Vec<Elem>] {
        &self.blocks
    }

    pub fn class_of(&self, e: Elem) -> usize {
        self.class[e]
    }

    pub fn size(&self) -> usize {
        self.class.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::parse::parse_formula;
    use crate::term::VarTable;

    fn sr6() -> FiniteAiSemiring {
        catalog::sr6()
    }

    fn l(a: &FiniteAiSemiring, s: &str) -> Elem {
        a.elem(s).unwrap()
    }

    #[test]
    fn sr6_is_valid() {
        assert!(sr6().validate().is_valid());
        assert!(FiniteAiSemiring::trivial().validate().is_valid());
    }

    #[test]
    fn broken_commutativity_is_reported() {
        let mut add = sr6().add_table();
        add[1][2] = 1;
        let broken = FiniteAiSemiring::new(None, add, sr6().mul_table()).unwrap();
        let report = broken.validate();
        let v = report
            .violations
            .iter()
            .find(|v| v.axiom == Axiom::AddCommutative)
            .expect("commutativity violation");
        let (a, b, _) = v.witness;
        assert_ne!(broken.add(a, b), broken.add(b, a));
    }

    #[test]
    fn malformed_tables() {
        assert!(matches!(
            FiniteAiSemiring::new(None, alloc::vec![alloc::vec![0, 1]], alloc::vec![alloc::vec![0]]),
            Err(AlgebraError::Malformed(_))
        ));
        assert!(matches!(
            FiniteAiSemiring::new(None, alloc::vec![alloc::vec![1]], alloc::vec![alloc::vec![0]]),
            Err(AlgebraError::Malformed(_))
        ));
    }

    #[test]
    fn order_and_top() {
        let s = sr6();
        assert!(s.leq(l(&s, "3"), l(&s, "1")));
        assert_eq!(s.top(), Some(l(&s, "1")));
        for a in s.elements() {
            assert!(s.leq(a, a));
        }
    }

    #[test]
    fn evaluation() {
        let s = sr6();
        let mut vars = VarTable::new();
        let t = crate::parse::parse_term("x*y", &mut vars).unwrap();
        let alpha: Assignment = [
            (vars.get("x").unwrap(), l(&s, "2")),
            (vars.get("y").unwrap(), l(&s, "6")),
        ]
        .into_iter()
        .collect();
        assert_eq!(s.eval(&t, &alpha).unwrap(), l(&s, "3"));

        let p = crate::parse::parse_term("x1*x2 + x2*x3 + x3*x4", &mut vars).unwrap();
        let alpha: Assignment = [("x1", "2"), ("x2", "6"), ("x3", "5"), ("x4", "4")]
            .into_iter()
            .map(|(v, e)| (vars.get(v).unwrap(), l(&s, e)))
            .collect();
        assert_eq!(s.eval(&p, &alpha).unwrap(), l(&s, "3"));

        let x = crate::parse::parse_term("x", &mut vars).unwrap();
        let one: Assignment = [(vars.get("x").unwrap(), 4)].into_iter().collect();
        assert_eq!(s.eval(&x, &one).unwrap(), 4);
        assert!(matches!(
            s.eval(&t, &one),
            Err(AlgebraError::Unassigned(_))
        ));
    }

    #[test]
    fn satisfaction_in_sr6() {
        let s = sr6();
        let mut vars = VarTable::new();
        let sr03 = parse_formula("x^2 = x + x*y", &mut vars).unwrap();
        assert!(s.satisfies(&sr03).unwrap().holds);
        let d1 = parse_formula("x1*x4 <= x1*x2 + x2*x3 + x3*x4", &mut vars).unwrap();
        let out = s.satisfies(&d1).unwrap();
        assert!(!out.holds);
        let w = out.witness.unwrap();
        // the witness must really violate the inequality
        let Formula::Inequality(q) = &d1 else { unreachable!() };
        let lhs = s.eval(&Term::word(q.lhs.clone()), &w).unwrap();
        let rhs = s.eval(&q.rhs, &w).unwrap();
        assert!(!s.leq(lhs, rhs));
    }

    #[test]
    fn budget_guard() {
        let s = sr6();
        let mut vars = VarTable::new();
        let f = parse_formula("x1*x2*x3 <= x1*x2 + x2*x3 + x3*x1", &mut vars).unwrap();
        assert!(matches!(
            s.satisfies_within(&f, 100),
            Err(AlgebraError::BudgetExceeded { needed: 216, .. })
        ));
        assert!(s.satisfies_within(&f, 216).unwrap().holds);
    }

    #[test]
    fn noncommutative_algebras_are_refused() {
        // left-zero band with a two-element chain for addition
        let add = alloc::vec![alloc::vec![0, 1], alloc::vec![1, 1]];
        let mul = alloc::vec![alloc::vec![0, 0], alloc::vec![1, 1]];
        let l2 = FiniteAiSemiring::new(None, add, mul).unwrap();
        assert!(l2.validate().only_noncommutative());
        let mut vars = VarTable::new();
        let f = parse_formula("x*y = y*x", &mut vars).unwrap();
        assert!(matches!(
            l2.satisfies(&f),
            Err(AlgebraError::NotCommutative { .. })
        ));
    }

    #[test]
    fn closures() {
        let s = sr6();
        let got = s.subalgebra_closure(&[l(&s, "3")]);
        let want: BTreeSet<Elem> = [l(&s, "1"), l(&s, "3")].into_iter().collect();
        assert_eq!(got, want);
        let all: Vec<Elem> = s.elements().collect();
        assert_eq!(s.subalgebra_closure(&all).len(), 6);
        let gens = [l(&s, "2"), l(&s, "6"), l(&s, "5"), l(&s, "4")];
        assert_eq!(s.subalgebra_closure(&gens).len(), 6);
    }

    #[test]
    fn partitions() {
        assert!(Partition::new(3, alloc::vec![alloc::vec![0, 1]]).is_err());
        assert!(Partition::new(3, alloc::vec![alloc::vec![0, 1], alloc::vec![1, 2]]).is_err());
        assert!(Partition::new(2, alloc::vec![alloc::vec![0], alloc::vec![], alloc::vec![1]]).is_err());
        let p = Partition::new(3, alloc::vec![alloc::vec![2, 0], alloc::vec![1]]).unwrap();
        assert_eq!(p.blocks(), &[alloc::vec![0, 2], alloc::vec![1]]);
        assert_eq!(p.class_of(2), 0);
    }

    #[test]
    fn trivial_congruences() {
        let s = sr6();
        assert!(s.is_congruence(&Partition::identity(6)));
        assert!(s.is_congruence(&Partition::single_block(6)));
        let q = s.quotient(&Partition::identity(6)).unwrap();
        assert_eq!(q.add_table(), s.add_table());
        assert_eq!(q.mul_table(), s.mul_table());
        assert_eq!(s.quotient(&Partition::single_block(6)).unwrap().size(), 1);
    }

    #[test]
    fn collapsing_one_and_three() {
        // 3 ~ 1, but 3 + 2 = 1 while 1 + 2 = 1, and 3*6 = 1 = 1*6; the
        // decisive pair is 3*k = 1 for every k, so the block {1,3} absorbs all
        // products; a brute-force scan settles it
        let s = sr6();
        let p = Partition::collapsing(6, &[l(&s, "1"), l(&s, "3")]).unwrap();
        let mut brute = true;
        for a in s.elements() {
            for b in s.elements() {
                if p.class_of(a) != p.class_of(b) {
                    continue;
                }
                for c in s.elements() {
                    brute &= p.class_of(s.add(a, c)) == p.class_of(s.add(b, c));
                    brute &= p.class_of(s.mul(a, c)) == p.class_of(s.mul(b, c));
                }
            }
        }
        assert_eq!(s.is_congruence(&p), brute);
        if brute {
            assert!(s.quotient(&p).unwrap().validate().is_valid());
        } else {
            assert!(matches!(s.quotient(&p), Err(AlgebraError::NotACongruence(_))));
        }
    }

    #[test]
    fn products_and_zero() {
        let s = sr6();
        let t = FiniteAiSemiring::trivial();
        let st = s.direct_product(&t);
        assert_eq!(st.size(), 6);
        assert_eq!(st.add_table(), s.add_table());
        let ss = s.direct_product(&s);
        assert_eq!(ss.size(), 36);
        assert!(ss.validate().is_valid());

        let d2 = t.adjoin_zero();
        assert_eq!(d2.size(), 2);
        assert!(d2.validate().is_valid());
        let z = s.adjoin_zero();
        assert!(z.validate().is_valid());
        assert_eq!(z.top(), s.top());
        assert_eq!(z.bottom(), Some(6));
    }
}
