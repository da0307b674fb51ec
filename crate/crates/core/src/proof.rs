//! Equational derivations in the free commutative ai-semiring.
//!
//! A step rewrites `t = p·φ(s) + r` to `p·φ(s') + r` for a basis formula
//! `s ≈ s'` (an inequality `q ⪯ u` is used as `u ≈ u + q`). Contexts are
//! single words: a term context `P = p1 + ... + pk` is the same as `k`
//! successive single-word applications, each keeping the others in `r`.
//!
//! [`LeqChain`] mirrors the displayed `u ⪰ ... ⪰ q` chains: besides
//! `≈`-steps it allows dropping summands and applying an inequality
//! `q ⪯ u` downward, from `p·φ(u) + r` to `p·φ(q) + r`.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::families::Basis;
use crate::freeness::all_instances;
use crate::term::{
    display_context, display_words, Context, Formula, Identity, Inequality, Substitution, Term,
    VarId, VarTable, Word,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Replace an instance of the left-hand side by the right-hand side.
    Fwd,
    Bwd,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Fwd => "fwd",
            Direction::Bwd => "bwd",
        }
    }
}

/// A basis label or a formula given inline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleRef {
    Label(String),
    Inline(Formula),
}

impl From<&str> for RuleRef {
    fn from(s: &str) -> Self {
        RuleRef::Label(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub rule: RuleRef,
    pub dir: Direction,
    pub subst: Substitution,
    pub context: Context,
    pub remainder: Vec<Word>,
}

impl Step {
    pub fn new(rule: impl Into<RuleRef>, dir: Direction, subst: Substitution) -> Self {
        Step {
            rule: rule.into(),
            dir,
            subst,
            context: None,
            remainder: Vec::new(),
        }
    }

    pub fn in_context(mut self, p: Context) -> Self {
        self.context = p;
        self
    }

    pub fn keeping(mut self, r: Vec<Word>) -> Self {
        self.remainder = r;
        self
    }

    pub fn label(&self) -> String {
        match &self.rule {
            RuleRef::Label(l) => l.clone(),
            RuleRef::Inline(_) => "inline".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofScript {
    pub basis: Basis,
    pub start: Term,
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Link {
    /// `t ⪰ t'` for `t' ⊆ t`.
    Drop(Term),
    /// An `≈`-step.
    Rule(Step),
    /// `p·φ(u) + r ⪰ p·φ(q) + r` for a basis inequality `q ⪯ u`; the step's
    /// direction is ignored.
    Leq(Step),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeqChain {
    pub basis: Basis,
    pub start: Term,
    pub links: Vec<Link>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("step {index}: unknown rule `{label}`")]
    UnknownRule { index: usize, label: String },
    #[error("step {index}: rule `{label}` is not an inequality")]
    NotAnInequality { index: usize, label: String },
    #[error("step {index}: substitution has no image for variable #{}", .var.0)]
    Unbound { index: usize, var: VarId },
    #[error("step {index}: term does not match the decomposition p*phi(s) + r")]
    Mismatch {
        index: usize,
        expected: Term,
        actual: Term,
    },
    #[error("step {index}: dropped summands are not a subset")]
    NotASubset { index: usize, from: Term, to: Term },
    #[error("derivation starts at the wrong term")]
    WrongStart { expected: Term, actual: Term },
    #[error("derivation ends at the wrong term")]
    WrongEnd { expected: Term, actual: Term },
}

impl ProofError {
    /// Step index the error refers to, if any.
    pub fn index(&self) -> Option<usize> {
        match self {
            ProofError::UnknownRule { index, .. }
            | ProofError::NotAnInequality { index, .. }
            | ProofError::Unbound { index, .. }
            | ProofError::Mismatch { index, .. }
            | ProofError::NotASubset { index, .. } => Some(*index),
            _ => None,
        }
    }

    /// Message with terms printed.
    pub fn describe(&self, vars: &VarTable) -> String {
        match self {
            ProofError::Mismatch {
                index,
                expected,
                actual,
            } => alloc::format!(
                "step {index}: expected {} but the current term is {}",
                expected.display(vars),
                actual.display(vars)
            ),
            ProofError::NotASubset { index, from, to } => alloc::format!(
                "step {index}: {} is not a subterm-drop of {}",
                to.display(vars),
                from.display(vars)
            ),
            ProofError::Unbound { index, var } => alloc::format!(
                "step {index}: substitution has no image for {}",
                vars.name(*var)
            ),
            ProofError::WrongStart { expected, actual } => alloc::format!(
                "derivation starts at {} instead of {}",
                actual.display(vars),
                expected.display(vars)
            ),
            ProofError::WrongEnd { expected, actual } => alloc::format!(
                "derivation ends at {} instead of {}",
                actual.display(vars),
                expected.display(vars)
            ),
            other => other.to_string(),
        }
    }
}

fn resolve<'a>(basis: &'a Basis, rule: &'a RuleRef, index: usize) -> Result<&'a Formula, ProofError> {
    match rule {
        RuleRef::Inline(f) => Ok(f),
        RuleRef::Label(l) => basis.get(l).ok_or_else(|| ProofError::UnknownRule {
            index,
            label: l.clone(),
        }),
    }
}

fn instance(subst: &Substitution, t: &Term, index: usize) -> Result<Term, ProofError> {
    if let Some(&var) = t.content().iter().find(|v| subst.get(**v).is_none()) {
        return Err(ProofError::Unbound { index, var });
    }
    Ok(subst.apply(t).expect("checked"))
}

/// Replaces `p·φ(from) + r` (which must equal `t`) by `p·φ(to) + r`.
fn rewrite(t: &Term, step: &Step, from: &Term, to: &Term, index: usize) -> Result<Term, ProofError> {
    let lhs = instance(&step.subst, from, index)?;
    let rhs = instance(&step.subst, to, index)?;
    let expected = lhs.mul_context(&step.context).with_words(&step.remainder);
    if expected != *t {
        return Err(ProofError::Mismatch {
            index,
            expected,
            actual: t.clone(),
        });
    }
    Ok(rhs.mul_context(&step.context).with_words(&step.remainder))
}

fn check_step_at(basis: &Basis, t: &Term, step: &Step, index: usize) -> Result<Term, ProofError> {
    let Identity { lhs, rhs } = resolve(basis, &step.rule, index)?.as_identity();
    match step.dir {
        Direction::Fwd => rewrite(t, step, &lhs, &rhs, index),
        Direction::Bwd => rewrite(t, step, &rhs, &lhs, index),
    }
}

/// Applies one `≈`-step to `t`.
pub fn check_step(basis: &Basis, t: &Term, step: &Step) -> Result<Term, ProofError> {
    check_step_at(basis, t, step, 0)
}

/// Applies a basis inequality `q ⪯ u` downward.
pub fn check_leq_step(basis: &Basis, t: &Term, step: &Step) -> Result<Term, ProofError> {
    check_leq_at(basis, t, step, 0)
}

fn check_leq_at(basis: &Basis, t: &Term, step: &Step, index: usize) -> Result<Term, ProofError> {
    let Formula::Inequality(Inequality { lhs, rhs }) = resolve(basis, &step.rule, index)? else {
        return Err(ProofError::NotAnInequality {
            index,
            label: step.label(),
        });
    };
    rewrite(t, step, rhs, &Term::word(lhs.clone()), index)
}

/// Replays a script and returns the final term.
pub fn replay(script: &ProofScript) -> Result<Term, ProofError> {
    let mut t = script.start.clone();
    for (i, step) in script.steps.iter().enumerate() {
        t = check_step_at(&script.basis, &t, step, i)?;
    }
    Ok(t)
}

/// Checks that `script` derives `goal.lhs ≈ goal.rhs`.
pub fn check_proof(script: &ProofScript, goal: &Identity) -> Result<(), ProofError> {
    if script.start != goal.lhs {
        return Err(ProofError::WrongStart {
            expected: goal.lhs.clone(),
            actual: script.start.clone(),
        });
    }
    let end = replay(script)?;
    if end != goal.rhs {
        return Err(ProofError::WrongEnd {
            expected: goal.rhs.clone(),
            actual: end,
        });
    }
    Ok(())
}

/// Validates every link and returns the last term of the chain.
pub fn check_leq_chain(chain: &LeqChain) -> Result<Term, ProofError> {
    let mut t = chain.start.clone();
    for (i, link) in chain.links.iter().enumerate() {
        t = match link {
            Link::Drop(to) => {
                if !to.is_subset(&t) {
                    return Err(ProofError::NotASubset {
                        index: i,
                        from: t,
                        to: to.clone(),
                    });
                }
                to.clone()
            }
            Link::Rule(step) => check_step_at(&chain.basis, &t, step, i)?,
            Link::Leq(step) => check_leq_at(&chain.basis, &t, step, i)?,
        };
    }
    Ok(t)
}

/// Checks that `chain` establishes `goal`: it starts at `goal.rhs` and ends at
/// the single word `goal.lhs`.
pub fn chain_proves(chain: &LeqChain, goal: &Inequality) -> Result<(), ProofError> {
    let want = goal.rhs.clone();
    if chain.start != want {
        return Err(ProofError::WrongStart {
            expected: want,
            actual: chain.start.clone(),
        });
    }
    let end = check_leq_chain(chain)?;
    let q = Term::word(goal.lhs.clone());
    if end != q {
        return Err(ProofError::WrongEnd {
            expected: q,
            actual: end,
        });
    }
    Ok(())
}

/// Bounds for [`search_derivation`].
#[derive(Debug, Clone, Copy)]
pub struct SearchBounds {
    pub depth: usize,
    /// Largest total letter count of an explored term; `None` means three
    /// times the target's.
    pub size: Option<u32>,
    /// Cap on matching nodes per expansion.
    pub match_cap: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            depth: 4,
            size: None,
            match_cap: 1_000_000,
        }
    }
}

/// Subsets of `items`, smallest first.
fn subsets(items: &[Word]) -> Vec<Vec<Word>> {
    let n = items.len().min(12);
    let mut out: Vec<Vec<Word>> = (0u32..(1 << n))
        .map(|mask| {
            (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| items[i].clone())
                .collect()
        })
        .collect();
    out.sort_by_key(Vec::len);
    out
}

/// One-step successors of `t`: every rule, both directions, every match
/// with single-word images and context, and every remainder consistent with
/// the match. Variables occurring only on the produced side take images
/// from `fresh`.
fn successors(basis: &Basis, t: &Term, fresh: &[Word], cap: u64) -> Vec<(Step, Term)> {
    let mut out = Vec::new();
    for (label, f) in basis.members() {
        let Identity { lhs, rhs } = f.as_identity();
        for (dir, from, to) in [(Direction::Fwd, &lhs, &rhs), (Direction::Bwd, &rhs, &lhs)] {
            let Ok(matches) = all_instances(from, t, cap) else { continue };
            let extra: Vec<VarId> = to.content().difference(&from.content()).copied().collect();
            for (p, phi) in matches {
                let image = phi.apply(from).expect("total").mul_context(&p);
                let forced = t.minus(&image);
                for keep in subsets(image.words()) {
                    let mut r = forced.clone();
                    r.extend(keep);
                    r.sort();
                    for ext in extensions(&phi, &extra, fresh) {
                        let step = Step {
                            rule: RuleRef::Label(label.clone()),
                            dir,
                            subst: ext,
                            context: p.clone(),
                            remainder: r.clone(),
                        };
                        let next = instance(&step.subst, to, 0)
                            .expect("total")
                            .mul_context(&p)
                            .with_words(&r);
                        out.push((step, next));
                    }
                }
            }
        }
    }
    out
}

fn extensions(phi: &Substitution, extra: &[VarId], fresh: &[Word]) -> Vec<Substitution> {
    let mut acc = alloc::vec![phi.clone()];
    for &x in extra {
        let mut next = Vec::with_capacity(acc.len() * fresh.len());
        for s in &acc {
            for w in fresh {
                next.push(s.clone().with(x, w.clone()));
            }
        }
        acc = next;
    }
    acc
}

/// Breadth-first search for a derivation of `u ≈ u + q` from `basis`.
/// `None` only means nothing was found within the bounds.
pub fn search_derivation(basis: &Basis, goal: &Inequality, bounds: SearchBounds) -> Option<ProofScript> {
    let start = goal.rhs.clone();
    let target = goal.to_identity().rhs;
    let size_bound = bounds.size.unwrap_or(3 * target.size());
    let mut fresh: Vec<Word> = goal.content().into_iter().map(Word::var).collect();
    if !fresh.contains(&goal.lhs) {
        fresh.push(goal.lhs.clone());
    }
    let mut parent: BTreeMap<Term, Option<(Term, Step)>> = BTreeMap::new();
    parent.insert(start.clone(), None);
    let mut frontier = VecDeque::from([(start.clone(), 0usize)]);
    let mut found = start == target;
    while !found {
        let Some((t, d)) = frontier.pop_front() else { break };
        if d == bounds.depth {
            continue;
        }
        for (step, next) in successors(basis, &t, &fresh, bounds.match_cap) {
            if next.size() > size_bound || parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), Some((t.clone(), step)));
            if next == target {
                found = true;
                break;
            }
            frontier.push_back((next, d + 1));
        }
    }
    if !found {
        return None;
    }
    let mut steps = Vec::new();
    let mut cur = target;
    while let Some(Some((prev, step))) = parent.get(&cur) {
        steps.push(step.clone());
        cur = prev.clone();
    }
    steps.reverse();
    let script = ProofScript {
        basis: basis.clone(),
        start,
        steps,
    };
    debug_assert!(check_proof(&script, &goal.to_identity()).is_ok());
    Some(script)
}

/// Human-readable rendering of a step.
pub fn format_step(step: &Step, vars: &VarTable) -> String {
    let subst: Vec<String> = step
        .subst
        .images()
        .iter()
        .map(|(v, t)| alloc::format!("{} -> {}", vars.name(*v), t.display(vars)))
        .collect();
    alloc::format!(
        "{} {} [{}] p = {} r = {}",
        step.label(),
        step.dir.as_str(),
        subst.join(", "),
        display_context(&step.context, vars),
        display_words(&step.remainder, vars)
    )
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{basis, delta, BasisTag};
    use crate::parse::{parse_term, parse_word};

    fn var(vars: &mut VarTable, s: &str) -> VarId {
        vars.intern(s)
    }

    fn w(vars: &mut VarTable, s: &str) -> Word {
        parse_word(s, vars).unwrap()
    }

    fn t(vars: &mut VarTable, s: &str) -> Term {
        parse_term(s, vars).unwrap()
    }

    #[test]
    fn single_steps() {
        let mut vars = VarTable::new();
        let b = basis(&mut vars, BasisTag::Sr6, 2);
        let (x, y) = (var(&mut vars, "x"), var(&mut vars, "y"));
        let phi = Substitution::new().with(x, Term::var(x)).with(y, Term::var(y));
        let s = Step::new("SR03", Direction::Bwd, phi);
        let out = check_step(&b, &t(&mut vars, "x + x*y"), &s).unwrap();
        assert_eq!(out, t(&mut vars, "x^2"));

        let phi = Substitution::new().with(x, Term::var(x));
        let s = Step::new("SR02", Direction::Bwd, phi.clone());
        assert_eq!(check_step(&b, &out, &s).unwrap(), t(&mut vars, "x^3"));

        let z = w(&mut vars, "z");
        let wv = w(&mut vars, "w");
        let s = Step::new("SR02", Direction::Bwd, phi).in_context(Some(z)).keeping(alloc::vec![wv]);
        let got = check_step(&b, &t(&mut vars, "z*x^2 + w"), &s).unwrap();
        assert_eq!(got, t(&mut vars, "z*x^3 + w"));
        // same step, wrong term
        assert!(matches!(
            check_step(&b, &t(&mut vars, "z*x^2"), &s),
            Err(ProofError::Mismatch { index: 0, .. })
        ));
    }

    #[test]
    fn unknown_and_unbound() {
        let mut vars = VarTable::new();
        let b = basis(&mut vars, BasisTag::Scab, 1);
        let s = Step::new("sigma:1", Direction::Fwd, Substitution::new());
        assert!(matches!(
            check_step(&b, &t(&mut vars, "x"), &s),
            Err(ProofError::UnknownRule { .. })
        ));
        let s = Step::new("SR02", Direction::Fwd, Substitution::new());
        assert!(matches!(
            check_step(&b, &t(&mut vars, "x^3"), &s),
            Err(ProofError::Unbound { .. })
        ));
    }

    #[test]
    fn empty_proof() {
        let mut vars = VarTable::new();
        let b = basis(&mut vars, BasisTag::Sr6, 1);
        let x = t(&mut vars, "x*y + z");
        let script = ProofScript {
            basis: b,
            start: x.clone(),
            steps: Vec::new(),
        };
        assert!(check_proof(&script, &Identity::new(x.clone(), x)).is_ok());
    }

    #[test]
    fn search_finds_delta2() {
        let mut vars = VarTable::new();
        let d1 = Formula::Inequality(delta(&mut vars, 1).unwrap());
        let b = Basis::inline(alloc::vec![("delta:1".into(), d1)]).unwrap();
        let goal = delta(&mut vars, 2).unwrap();
        let script = search_derivation(&b, &goal, SearchBounds::default()).unwrap();
        assert!(script.steps.len() <= 4);
        assert!(check_proof(&script, &goal.to_identity()).is_ok());
    }

    #[test]
    fn search_is_trivial_on_basis_members() {
        let mut vars = VarTable::new();
        let d1 = delta(&mut vars, 1).unwrap();
        let b = Basis::inline(alloc::vec![("delta:1".into(), Formula::Inequality(d1.clone()))]).unwrap();
        let script = search_derivation(&b, &d1, SearchBounds::default()).unwrap();
        assert_eq!(script.steps.len(), 1);
    }
}
