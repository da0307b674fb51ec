//! Named identities, the `q^(n)`/`u^(n)` families, and the finite prefixes of
//! the equational bases used throughout the crate.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::parse::{parse_formula, ParseError};
use crate::term::{Formula, Identity, Inequality, Term, VarTable, Word};

/// Default truncation bound for the σ family.
pub const DEFAULT_SIGMA_BOUND: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("family index must be at least 1")]
    ZeroIndex,
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("unknown basis tag `{0}`")]
    UnknownTag(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// `x1 x2 ... x_{2n+1}`.
pub fn q_n(vars: &mut VarTable, n: usize) -> Result<Word, FamilyError> {
    if n == 0 {
        return Err(FamilyError::ZeroIndex);
    }
    let xs = vars.indexed("x", 2 * n + 1);
    Ok(Word::from_vars(xs).expect("nonempty"))
}

/// The odd cycle `x1x2 + x2x3 + ... + x_{2n}x_{2n+1} + x_{2n+1}x1`.
pub fn u_n(vars: &mut VarTable, n: usize) -> Result<Term, FamilyError> {
    if n == 0 {
        return Err(FamilyError::ZeroIndex);
    }
    let xs = vars.indexed("x", 2 * n + 1);
    let k = xs.len();
    let words = (0..k).map(|i| Word::from_vars([xs[i], xs[(i + 1) % k]]).expect("nonempty"));
    Ok(Term::from_words(words).expect("nonempty"))
}

/// The path `x1x2 + x2x3 + ... + x_{k}x_{k+1}` on `k` edges.
pub fn path(vars: &mut VarTable, edges: usize) -> Term {
    assert!(edges > 0);
    let xs = vars.indexed("x", edges + 1);
    Term::from_words(xs.windows(2).map(|p| Word::from_vars([p[0], p[1]]).expect("nonempty")))
        .expect("nonempty")
}

/// `σ_n : q^(n) ⪯ u^(n)`.
pub fn sigma(vars: &mut VarTable, n: usize) -> Result<Inequality, FamilyError> {
    Ok(Inequality::new(q_n(vars, n)?, u_n(vars, n)?))
}

/// `δ_n : x1 x_{2n+2} ⪯ x1x2 + ... + x_{2n+1}x_{2n+2}`.
pub fn delta(vars: &mut VarTable, n: usize) -> Result<Inequality, FamilyError> {
    if n == 0 {
        return Err(FamilyError::ZeroIndex);
    }
    let rhs = path(vars, 2 * n + 1);
    let xs = vars.indexed("x", 2 * n + 2);
    let lhs = Word::from_vars([xs[0], xs[2 * n + 1]]).expect("nonempty");
    Ok(Inequality::new(lhs, rhs))
}

const FIXED: &[(&str, &str)] = &[
    ("SR02", "x^3 = x^2"),
    ("SR03", "x^2 = x + x*y"),
    ("SR04", "x1 <= x2*x3*x4"),
    ("SR06", "y <= x^2"),
    ("I26022301", "x1*x4 <= x1*x2 + x2*x3 + x3*x4"),
    ("ScabD201", "x1*x5 <= x1 + x2*x3*x4"),
    ("ab01", "x <= x^2"),
    ("ab02", "x*y*z*t <= x*y*z"),
    ("ab03", "(x*y)^2 <= x + x*y"),
    ("t01", "x^2 = x*y"),
];

/// Labels of the fixed (non-family) formulas.
pub fn fixed_labels() -> impl Iterator<Item = &'static str> {
    FIXED.iter().map(|&(l, _)| l)
}

fn family_index(label: &str, prefix: &str) -> Option<Result<usize, FamilyError>> {
    let rest = label.strip_prefix(prefix)?;
    Some(
        rest.parse::<usize>()
            .map_err(|_| FamilyError::UnknownLabel(label.to_string())),
    )
}

/// Looks up a formula by its label: one of the fixed labels, `sigma:<n>` or
/// `delta:<n>`. `26022301` is accepted as an alias of `I26022301`.
pub fn named(vars: &mut VarTable, label: &str) -> Result<Formula, FamilyError> {
    if let Some(n) = family_index(label, "sigma:") {
        return Ok(Formula::Inequality(sigma(vars, n?)?));
    }
    if let Some(n) = family_index(label, "delta:") {
        return Ok(Formula::Inequality(delta(vars, n?)?));
    }
    let key = if label == "26022301" { "I26022301" } else { label };
    let (_, text) = FIXED
        .iter()
        .find(|(l, _)| *l == key)
        .ok_or_else(|| FamilyError::UnknownLabel(label.to_string()))?;
    Ok(parse_formula(text, vars)?)
}

/// A label if `text` names a formula, otherwise the text parsed as a formula.
pub fn resolve(vars: &mut VarTable, text: &str) -> Result<Formula, FamilyError> {
    match named(vars, text.trim()) {
        Err(FamilyError::UnknownLabel(_)) => Ok(parse_formula(text, vars)?),
        other => other,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisTag {
    Sr6,
    Scab,
    ScabD2,
    Scab0,
    Sca,
}

impl BasisTag {
    pub const ALL: [BasisTag; 5] = [
        BasisTag::Sr6,
        BasisTag::Scab,
        BasisTag::ScabD2,
        BasisTag::Scab0,
        BasisTag::Sca,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BasisTag::Sr6 => "SR6",
            BasisTag::Scab => "Scab",
            BasisTag::ScabD2 => "ScabD2",
            BasisTag::Scab0 => "Scab0",
            BasisTag::Sca => "Sca",
        }
    }

    /// Whether the basis contains the σ family.
    pub fn has_sigma(self) -> bool {
        !matches!(self, BasisTag::Scab)
    }

    fn fixed_members(self) -> &'static [&'static str] {
        match self {
            BasisTag::Sr6 => &["SR02", "SR03", "SR04"],
            BasisTag::Scab => &["SR02", "SR03", "SR04", "I26022301"],
            BasisTag::ScabD2 => &["SR02", "SR03", "ScabD201"],
            BasisTag::Scab0 => &["SR02", "ab01", "ab02", "ab03"],
            BasisTag::Sca => &["SR02", "SR03", "SR04", "t01"],
        }
    }
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BasisTag {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BasisTag::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| FamilyError::UnknownTag(s.to_string()))
    }
}

/// A labelled set of formulas. Bases for infinite families are truncated at
/// `sigma_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    pub tag: Option<BasisTag>,
    pub sigma_bound: usize,
    members: Vec<(String, Formula)>,
}

impl Basis {
    /// An ad-hoc basis; labels must be unique.
    pub fn inline(members: Vec<(String, Formula)>) -> Result<Self, FamilyError> {
        for (i, (l, _)) in members.iter().enumerate() {
            if members[..i].iter().any(|(m, _)| m == l) {
                return Err(FamilyError::UnknownLabel(alloc::format!("duplicate label {l}")));
            }
        }
        Ok(Basis {
            tag: None,
            sigma_bound: 0,
            members,
        })
    }

    pub fn members(&self) -> &[(String, Formula)] {
        &self.members
    }

    pub fn get(&self, label: &str) -> Option<&Formula> {
        let key = if label == "26022301" { "I26022301" } else { label };
        self.members
            .iter()
            .find(|(l, _)| l == key)
            .map(|(_, f)| f)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.members.iter().map(|(l, _)| l.as_str())
    }

    /// Members outside the σ family.
    pub fn non_sigma(&self) -> impl Iterator<Item = &(String, Formula)> {
        self.members.iter().filter(|(l, _)| !l.starts_with("sigma:"))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// The finite prefix of the basis named by `tag`.
pub fn basis(vars: &mut VarTable, tag: BasisTag, sigma_bound: usize) -> Basis {
    let mut members: Vec<(String, Formula)> = tag
        .fixed_members()
        .iter()
        .map(|&l| (l.to_string(), named(vars, l).expect("fixed labels resolve")))
        .collect();
    if tag.has_sigma() {
        for n in 1..=sigma_bound {
            members.push((
                alloc::format!("sigma:{n}"),
                Formula::Inequality(sigma(vars, n).expect("n >= 1")),
            ));
        }
    }
    Basis {
        tag: Some(tag),
        sigma_bound: if tag.has_sigma() { sigma_bound } else { 0 },
        members,
    }
}

/// Identity-or-inequality helper used by tests and the CLI.
pub fn identity(lhs: Term, rhs: Term) -> Formula {
    Formula::Identity(Identity::new(lhs, rhs))
}
