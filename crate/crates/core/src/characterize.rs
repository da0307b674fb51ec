//! Syntactic decision procedures for the inequalities holding in `S_c(ab)`,
//! `SR_6`, `D_2`, `S^0` and the varieties built from them.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::algebra::FiniteAiSemiring;
use crate::catalog;
use crate::families::FamilyError;
use crate::graph::TermGraph;
use crate::term::{Formula, Inequality, Term, VarId, Word};

/// The first condition that makes `q ⪯ u` hold in `S_c(ab)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScabReason {
    Trivial,
    /// Some summand has length at least 3.
    CondI,
    /// A variable occurs both as a summand and in a length-2 summand.
    CondII,
    /// `G_u` has an odd cycle (a loop counts).
    CondIII,
    /// `q = xy` with an odd path between `x` and `y` in `G_u`.
    CondIV,
    None,
}

impl ScabReason {
    pub fn as_str(self) -> &'static str {
        match self {
            ScabReason::Trivial => "trivial",
            ScabReason::CondI => "cond_i",
            ScabReason::CondII => "cond_ii",
            ScabReason::CondIII => "cond_iii",
            ScabReason::CondIV => "cond_iv",
            ScabReason::None => "none",
        }
    }
}

impl fmt::Display for ScabReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScabVerdict {
    pub holds: bool,
    pub reason: ScabReason,
}

impl From<ScabReason> for ScabVerdict {
    fn from(reason: ScabReason) -> Self {
        ScabVerdict {
            holds: reason != ScabReason::None,
            reason,
        }
    }
}

fn content_of(words: &[Word]) -> BTreeSet<VarId> {
    words.iter().flat_map(Word::support).collect()
}

/// Conditions (i) to (iii) only; `q` plays no role in them.
fn scab_structural(words: &[Word]) -> Option<ScabReason> {
    if words.iter().any(|w| w.degree() >= 3) {
        return Some(ScabReason::CondI);
    }
    let l1: Vec<Word> = words.iter().filter(|w| w.degree() == 1).cloned().collect();
    let l2: Vec<Word> = words.iter().filter(|w| w.degree() == 2).cloned().collect();
    if !content_of(&l1).is_disjoint(&content_of(&l2)) {
        return Some(ScabReason::CondII);
    }
    if TermGraph::from_words(&l2).has_odd_cycle() {
        return Some(ScabReason::CondIII);
    }
    None
}

fn scab_words(q: &Word, words: &[Word]) -> ScabReason {
    if words.contains(q) {
        return ScabReason::Trivial;
    }
    if let Some(r) = scab_structural(words) {
        return r;
    }
    if q.degree() == 2 {
        let mut letters = q.letters();
        let (x, y) = (letters.next().unwrap(), letters.next().unwrap());
        if TermGraph::from_words(words).has_odd_walk(x, y) {
            return ScabReason::CondIV;
        }
    }
    ScabReason::None
}

/// Whether `q ⪯ u` holds in `S_c(ab)`, with the first matching condition in
/// the order trivial, (i), (ii), (iii), (iv).
pub fn decide_scab(q: &Word, u: &Term) -> ScabVerdict {
    scab_words(q, u.words()).into()
}

/// Whether `q ⪯ u` holds in `SR_6`: trivial, or one of (i) to (iii).
pub fn decide_sr6(q: &Word, u: &Term) -> bool {
    u.contains(q) || scab_structural(u.words()).is_some()
}

/// Whether `q ⪯ u` holds in `D_2`: some summand has content inside `c(q)`.
pub fn decide_d2(q: &Word, u: &Term) -> bool {
    let cq: BTreeSet<VarId> = q.support().collect();
    u.contains(q) || u.words().iter().any(|w| w.support().all(|v| cq.contains(&v)))
}

/// `D_q(u)`: the summands of `u` whose content lies inside `c(q)`.
pub fn dq_filter(q: &Word, u: &Term) -> Vec<Word> {
    let cq: BTreeSet<VarId> = q.support().collect();
    u.words()
        .iter()
        .filter(|w| w.support().all(|v| cq.contains(&v)))
        .cloned()
        .collect()
}

/// `q ⪯ u` holds in `S^0` iff `D_q(u)` is nonempty and `q ⪯ D_q(u)` holds
/// in `S`, as decided by `base`.
pub fn decide_s0<F>(base: F, q: &Word, u: &Term) -> bool
where
    F: Fn(&Word, &Term) -> bool,
{
    match Term::from_words(dq_filter(q, u)) {
        Ok(d) => base(q, &d),
        Err(_) => false,
    }
}

/// `decide_s0` specialised to `S_c(ab)`, returning the reason found on
/// `D_q(u)` (or `None` when the filter is empty).
pub fn decide_scab0(q: &Word, u: &Term) -> ScabVerdict {
    let d = dq_filter(q, u);
    if d.is_empty() {
        return ScabReason::None.into();
    }
    scab_words(q, &d).into()
}

/// Brute force over `S_c(a)`, which has only two elements.
pub fn decide_sca(q: &Word, u: &Term) -> bool {
    let f = Formula::Inequality(Inequality::new(q.clone(), u.clone()));
    catalog::sca().satisfies(&f).expect("commutative").holds
}

/// Varieties with a decision procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variety {
    Sr6,
    Scab,
    D2,
    ScabD2,
    Scab0,
    Sca,
}

impl Variety {
    pub const ALL: [Variety; 6] = [
        Variety::Sr6,
        Variety::Scab,
        Variety::D2,
        Variety::ScabD2,
        Variety::Scab0,
        Variety::Sca,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Variety::Sr6 => "SR6",
            Variety::Scab => "Scab",
            Variety::D2 => "D2",
            Variety::ScabD2 => "ScabD2",
            Variety::Scab0 => "Scab0",
            Variety::Sca => "Sca",
        }
    }

    /// Generating algebras of the variety.
    pub fn generators(self) -> Vec<FiniteAiSemiring> {
        match self {
            Variety::Sr6 => alloc::vec![catalog::sr6()],
            Variety::Scab => alloc::vec![catalog::scab()],
            Variety::D2 => alloc::vec![catalog::d2()],
            Variety::ScabD2 => alloc::vec![catalog::scab(), catalog::d2()],
            Variety::Scab0 => alloc::vec![catalog::scab0()],
            Variety::Sca => alloc::vec![catalog::sca()],
        }
    }

    /// Decides a single inequality.
    pub fn decide(self, q: &Word, u: &Term) -> bool {
        match self {
            Variety::Sr6 => decide_sr6(q, u),
            Variety::Scab => decide_scab(q, u).holds,
            Variety::D2 => decide_d2(q, u),
            Variety::ScabD2 => decide_scab(q, u).holds && decide_d2(q, u),
            Variety::Scab0 => decide_s0(|q, d| decide_scab(q, d).holds, q, u),
            Variety::Sca => decide_sca(q, u),
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variety {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variety::ALL
            .into_iter()
            .find(|v| v.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| FamilyError::UnknownTag(s.into()))
    }
}

/// Decides an identity or inequality by splitting it into inequalities.
pub fn decide_variety(v: Variety, f: &Formula) -> bool {
    f.inequalities().iter().all(|q| v.decide(&q.lhs, &q.rhs))
}
