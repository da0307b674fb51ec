//! Commutative words, terms, substitutions, identities and inequalities.
//!
//! A [`Word`] is an element of the free commutative semigroup: a nonempty
//! exponent vector over interned variables. A [`Term`] is a finite nonempty
//! set of words, written as a formal sum. Terms form the free commutative
//! ai-semiring, with union as addition and pointwise products as
//! multiplication.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use thiserror::Error;

/// Interned variable.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VarId(pub u32);

/// Bidirectional name table for variables.
#[derive(Clone, Debug, Default)]
pub struct VarTable {
    names: Vec<String>,
    index: BTreeMap<String, VarId>,
}

impl VarTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, name: &str) -> VarId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = VarId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    pub fn get(&self, name: &str) -> Option<VarId> {
        self.index.get(name).copied()
    }

    /// Name of an interned variable. Ids from another table print as `?<id>`.
    pub fn name(&self, id: VarId) -> &str {
        self.names.get(id.0 as usize).map(String::as_str).unwrap_or("?")
    }

    /// `x1, x2, ..., xn`.
    pub fn indexed(&mut self, prefix: &str, n: usize) -> Vec<VarId> {
        (1..=n)
            .map(|i| self.intern(&alloc::format!("{prefix}{i}")))
            .collect()
    }

    /// A variable whose name is not yet taken, derived from `hint`.
    pub fn fresh(&mut self, hint: &str) -> VarId {
        if self.get(hint).is_none() {
            return self.intern(hint);
        }
        let mut i = 1usize;
        loop {
            let name = alloc::format!("{hint}_{i}");
            if self.get(&name).is_none() {
                return self.intern(&name);
            }
            i += 1;
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("a term must contain at least one word")]
    EmptyTerm,
    #[error("a word must contain at least one variable")]
    EmptyWord,
    #[error("substitution has no image for variable #{}", .0 .0)]
    Unbound(VarId),
}

/// Nonempty commutative word, stored as `(variable, exponent)` pairs sorted by
/// variable with every exponent positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    factors: Vec<(VarId, u32)>,
}

/// A word or the empty word. `None` plays the role of the multiplicative
/// identity wherever a context or quotient may be empty.
pub type Context = Option<Word>;

impl Word {
    pub fn var(v: VarId) -> Self {
        Word {
            factors: alloc::vec![(v, 1)],
        }
    }

    pub fn power(v: VarId, e: u32) -> Result<Self, TermError> {
        Self::from_factors([(v, e)])
    }

    /// Builds a word from arbitrary `(variable, exponent)` pairs, merging
    /// repeats and dropping zero exponents.
    pub fn from_factors<I>(factors: I) -> Result<Self, TermError>
    where
        I: IntoIterator<Item = (VarId, u32)>,
    {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in factors {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        if map.is_empty() {
            return Err(TermError::EmptyWord);
        }
        Ok(Word {
            factors: map.into_iter().collect(),
        })
    }

    /// Product of the given variables, with repetition.
    pub fn from_vars<I: IntoIterator<Item = VarId>>(vars: I) -> Result<Self, TermError> {
        Self::from_factors(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn factors(&self) -> &[(VarId, u32)] {
        &self.factors
    }

    /// Length counting multiplicity.
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_linear(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.factors
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = VarId> + '_ {
        self.factors.iter().map(|&(v, _)| v)
    }

    /// Variables with repetition, in increasing order.
    pub fn letters(&self) -> impl Iterator<Item = VarId> + '_ {
        self.factors
            .iter()
            .flat_map(|&(v, e)| core::iter::repeat_n(v, e as usize))
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Word { factors: out }
    }

    pub fn pow(&self, e: u32) -> Word {
        assert!(e > 0, "words have no zeroth power");
        Word {
            factors: self.factors.iter().map(|&(v, k)| (v, k * e)).collect(),
        }
    }

    /// `true` if `self` divides `w` (pointwise exponent comparison).
    pub fn divides(&self, w: &Word) -> bool {
        self.factors.iter().all(|&(v, e)| w.exponent(v) >= e)
    }

    /// `w / self` when `self` divides `w`. The inner `None` is the empty word,
    /// returned when `self == w`.
    pub fn divide(w: &Word, divisor: &Word) -> Option<Context> {
        if !divisor.divides(w) {
            return None;
        }
        let rest: Vec<(VarId, u32)> = w
            .factors
            .iter()
            .filter_map(|&(v, e)| {
                let k = e - divisor.exponent(v);
                (k > 0).then_some((v, k))
            })
            .collect();
        Some(if rest.is_empty() {
            None
        } else {
            Some(Word { factors: rest })
        })
    }

    /// All nonempty divisors of this word, including the word itself.
    pub fn divisors(&self) -> Vec<Word> {
        let mut acc: Vec<Vec<(VarId, u32)>> = alloc::vec![Vec::new()];
        for &(v, e) in &self.factors {
            let mut next = Vec::with_capacity(acc.len() * (e as usize + 1));
            for partial in &acc {
                for k in 0..=e {
                    let mut p = partial.clone();
                    if k > 0 {
                        p.push((v, k));
                    }
                    next.push(p);
                }
            }
            acc = next;
        }
        let mut out: Vec<Word> = acc
            .into_iter()
            .filter(|f| !f.is_empty())
            .map(|factors| Word { factors })
            .collect();
        out.sort();
        out
    }

    /// Applies a variable renaming; variables not in `map` are left alone.
    pub fn rename(&self, map: &BTreeMap<VarId, VarId>) -> Word {
        Word::from_factors(
            self.factors
                .iter()
                .map(|&(v, e)| (*map.get(&v).unwrap_or(&v), e)),
        )
        .expect("renaming preserves nonemptiness")
    }

    pub fn display<'a>(&'a self, vars: &'a VarTable) -> WordDisplay<'a> {
        WordDisplay { word: self, vars }
    }
}

/// Length-lexicographic: shorter words first, then by the sorted letter
/// sequence.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.letters().cmp(other.letters()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    vars: &'a VarTable,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(v, e)) in self.word.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            f.write_str(self.vars.name(v))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Formats a context, printing the empty word as `1`.
pub fn display_context(ctx: &Context, vars: &VarTable) -> String {
    match ctx {
        Some(w) => w.display(vars).to_string(),
        None => "1".to_string(),
    }
}

/// Nonempty finite set of words, kept sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Term {
    words: Vec<Word>,
}

impl Term {
    pub fn word(w: Word) -> Self {
        Term {
            words: alloc::vec![w],
        }
    }

    pub fn var(v: VarId) -> Self {
        Self::word(Word::var(v))
    }

    pub fn from_words<I: IntoIterator<Item = Word>>(words: I) -> Result<Self, TermError> {
        let mut words: Vec<Word> = words.into_iter().collect();
        if words.is_empty() {
            return Err(TermError::EmptyTerm);
        }
        words.sort();
        words.dedup();
        Ok(Term { words })
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn into_words(self) -> Vec<Word> {
        self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }

    /// `true` if every word of `self` occurs in `other`.
    pub fn is_subset(&self, other: &Term) -> bool {
        self.words.iter().all(|w| other.contains(w))
    }

    /// Set union.
    pub fn add(&self, other: &Term) -> Term {
        let mut words = Vec::with_capacity(self.words.len() + other.words.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.words, &other.words);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    words.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    words.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    words.push(a[i].clone());
                    i += 1;
                    j += 1;
                }
            }
        }
        words.extend_from_slice(&a[i..]);
        words.extend_from_slice(&b[j..]);
        Term { words }
    }

    /// Union with a possibly-empty set of extra words.
    pub fn with_words<'a, I: IntoIterator<Item = &'a Word>>(&self, extra: I) -> Term {
        let mut words = self.words.clone();
        words.extend(extra.into_iter().cloned());
        words.sort();
        words.dedup();
        Term { words }
    }

    pub fn mul(&self, other: &Term) -> Term {
        let mut words: Vec<Word> = self
            .words
            .iter()
            .flat_map(|a| other.words.iter().map(move |b| a.mul(b)))
            .collect();
        words.sort();
        words.dedup();
        Term { words }
    }

    /// Multiplies every word by `ctx`; the empty context is the identity.
    pub fn mul_context(&self, ctx: &Context) -> Term {
        match ctx {
            None => self.clone(),
            Some(p) => Term::from_words(self.words.iter().map(|w| p.mul(w)))
                .expect("nonempty input"),
        }
    }

    pub fn pow(&self, e: u32) -> Term {
        assert!(e > 0, "terms have no zeroth power");
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// The set of variables occurring in the term.
    pub fn content(&self) -> BTreeSet<VarId> {
        self.words.iter().flat_map(|w| w.support()).collect()
    }

    /// Words of length exactly `k`. Possibly empty.
    pub fn layer(&self, k: u32) -> Vec<Word> {
        self.words
            .iter()
            .filter(|w| w.degree() == k)
            .cloned()
            .collect()
    }

    /// Words of `self` not in `other`; possibly empty.
    pub fn minus(&self, other: &Term) -> Vec<Word> {
        self.words
            .iter()
            .filter(|w| !other.contains(w))
            .cloned()
            .collect()
    }

    /// Total number of letters over all words.
    pub fn size(&self) -> u32 {
        self.words.iter().map(Word::degree).sum()
    }

    pub fn rename(&self, map: &BTreeMap<VarId, VarId>) -> Term {
        Term::from_words(self.words.iter().map(|w| w.rename(map))).expect("nonempty input")
    }

    pub fn display<'a>(&'a self, vars: &'a VarTable) -> TermDisplay<'a> {
        TermDisplay { term: self, vars }
    }
}

impl From<Word> for Term {
    fn from(w: Word) -> Self {
        Term::word(w)
    }
}

pub struct TermDisplay<'a> {
    term: &'a Term,
    vars: &'a VarTable,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.term.words.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}", w.display(self.vars))?;
        }
        Ok(())
    }
}

/// Formats a possibly-empty word set, printing the empty set as `0`.
pub fn display_words(words: &[Word], vars: &VarTable) -> String {
    if words.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, w) in words.iter().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        out.push_str(&w.display(vars).to_string());
    }
    out
}

/// Endomorphism of the free algebra, given by the images of finitely many
/// variables. Querying an unmapped variable is an error.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Substitution {
    images: BTreeMap<VarId, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn identity<I: IntoIterator<Item = VarId>>(vars: I) -> Self {
        Substitution {
            images: vars.into_iter().map(|v| (v, Term::var(v))).collect(),
        }
    }

    pub fn insert(&mut self, v: VarId, image: Term) -> &mut Self {
        self.images.insert(v, image);
        self
    }

    pub fn with(mut self, v: VarId, image: impl Into<Term>) -> Self {
        self.images.insert(v, image.into());
        self
    }

    pub fn get(&self, v: VarId) -> Option<&Term> {
        self.images.get(&v)
    }

    pub fn images(&self) -> &BTreeMap<VarId, Term> {
        &self.images
    }

    pub fn is_defined_on<'a, I: IntoIterator<Item = &'a VarId>>(&self, vars: I) -> bool {
        vars.into_iter().all(|v| self.images.contains_key(v))
    }

    pub fn apply_word(&self, w: &Word) -> Result<Term, TermError> {
        let mut acc: Option<Term> = None;
        for &(v, e) in w.factors() {
            let img = self.images.get(&v).ok_or(TermError::Unbound(v))?;
            let p = img.pow(e);
            acc = Some(match acc {
                None => p,
                Some(a) => a.mul(&p),
            });
        }
        Ok(acc.expect("words are nonempty"))
    }

    pub fn apply(&self, t: &Term) -> Result<Term, TermError> {
        let mut words = Vec::new();
        for w in t.words() {
            words.extend(self.apply_word(w)?.into_words());
        }
        Term::from_words(words)
    }
}

/// `lhs ⪯ rhs`, shorthand for `rhs ≈ rhs + lhs`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Inequality {
    pub lhs: Word,
    pub rhs: Term,
}

impl Inequality {
    pub fn new(lhs: Word, rhs: Term) -> Self {
        Inequality { lhs, rhs }
    }

    pub fn is_trivial(&self) -> bool {
        self.rhs.contains(&self.lhs)
    }

    pub fn content(&self) -> BTreeSet<VarId> {
        let mut c = self.rhs.content();
        c.extend(self.lhs.support());
        c
    }

    /// The identity `rhs ≈ rhs + lhs` this inequality abbreviates.
    pub fn to_identity(&self) -> Identity {
        Identity {
            lhs: self.rhs.clone(),
            rhs: self.rhs.with_words([&self.lhs]),
        }
    }

    pub fn display<'a>(&'a self, vars: &'a VarTable) -> impl fmt::Display + 'a {
        FormulaDisplay {
            lhs: Term::word(self.lhs.clone()),
            op: "<=",
            rhs: self.rhs.clone(),
            vars,
        }
    }
}

/// `lhs ≈ rhs`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Identity { lhs, rhs }
    }

    pub fn content(&self) -> BTreeSet<VarId> {
        let mut c = self.lhs.content();
        c.extend(self.rhs.content());
        c
    }

    pub fn display<'a>(&'a self, vars: &'a VarTable) -> impl fmt::Display + 'a {
        FormulaDisplay {
            lhs: self.lhs.clone(),
            op: "=",
            rhs: self.rhs.clone(),
            vars,
        }
    }
}

/// Splits `u ≈ v` into the inequalities `u_i ⪯ v` and `v_j ⪯ u`, which
/// jointly hold in a commutative ai-semiring exactly when the identity does.
pub fn split_identity(id: &Identity) -> Vec<Inequality> {
    let mut out: Vec<Inequality> = id
        .lhs
        .words()
        .iter()
        .map(|w| Inequality::new(w.clone(), id.rhs.clone()))
        .collect();
    out.extend(
        id.rhs
            .words()
            .iter()
            .map(|w| Inequality::new(w.clone(), id.lhs.clone())),
    );
    out
}

/// Either an identity or an inequality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Formula {
    Identity(Identity),
    Inequality(Inequality),
}

impl Formula {
    pub fn content(&self) -> BTreeSet<VarId> {
        match self {
            Formula::Identity(id) => id.content(),
            Formula::Inequality(ineq) => ineq.content(),
        }
    }

    /// The inequalities this formula is equivalent to.
    pub fn inequalities(&self) -> Vec<Inequality> {
        match self {
            Formula::Identity(id) => split_identity(id),
            Formula::Inequality(ineq) => alloc::vec![ineq.clone()],
        }
    }

    /// The identity form used by rewriting.
    pub fn as_identity(&self) -> Identity {
        match self {
            Formula::Identity(id) => id.clone(),
            Formula::Inequality(ineq) => ineq.to_identity(),
        }
    }

    pub fn display<'a>(&'a self, vars: &'a VarTable) -> impl fmt::Display + 'a {
        match self {
            Formula::Identity(id) => FormulaDisplay {
                lhs: id.lhs.clone(),
                op: "=",
                rhs: id.rhs.clone(),
                vars,
            },
            Formula::Inequality(q) => FormulaDisplay {
                lhs: Term::word(q.lhs.clone()),
                op: "<=",
                rhs: q.rhs.clone(),
                vars,
            },
        }
    }
}

impl From<Identity> for Formula {
    fn from(id: Identity) -> Self {
        Formula::Identity(id)
    }
}

impl From<Inequality> for Formula {
    fn from(q: Inequality) -> Self {
        Formula::Inequality(q)
    }
}

struct FormulaDisplay<'a> {
    lhs: Term,
    op: &'static str,
    rhs: Term,
    vars: &'a VarTable,
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}",
            self.lhs.display(self.vars),
            self.op,
            self.rhs.display(self.vars)
        )
    }
}
