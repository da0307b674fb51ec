//! Algebra and proof files.
//!
//! Algebra files are JSON objects `{"name", "size", "add", "mul", "labels"}`
//! with 0-indexed tables; `name` and `labels` are optional. Proof files hold
//! either a script (`"steps"`) or a `⪰`-chain (`"links"`).

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use aisr_core::algebra::FiniteAiSemiring;
use aisr_core::catalog;
use aisr_core::families::{basis, named, Basis, BasisTag, DEFAULT_SIGMA_BOUND};
use aisr_core::parse::{format_formula, format_term, format_word, parse_formula, parse_term, parse_word};
use aisr_core::proof::{Direction, Link, LeqChain, ProofScript, RuleRef, Step};
use aisr_core::{Substitution, Term, VarTable};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("invalid JSON in {path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{0}")]
    Invalid(String),
}

fn invalid(e: impl std::fmt::Display) -> IoError {
    IoError::Invalid(e.to_string())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub size: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl AlgebraFile {
    pub fn from_algebra(a: &FiniteAiSemiring) -> Self {
        AlgebraFile {
            name: a.name().map(str::to_string),
            size: a.size(),
            add: a.add_table(),
            mul: a.mul_table(),
            labels: Some(a.labels().to_vec()),
        }
    }

    pub fn into_algebra(self) -> Result<FiniteAiSemiring, IoError> {
        if self.add.len() != self.size {
            return Err(IoError::Invalid(format!(
                "size is {} but the addition table has {} rows",
                self.size,
                self.add.len()
            )));
        }
        let alg = FiniteAiSemiring::new(self.name, self.add, self.mul).map_err(invalid)?;
        match self.labels {
            Some(l) => alg.with_labels(l).map_err(invalid),
            None => Ok(alg),
        }
    }
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, path: &Path) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|source| IoError::Json {
        path: path.display().to_string(),
        source,
    })
}

/// A catalog name (see [`catalog::NAMES`]), a product `A*B` of sources, or a
/// path to a JSON algebra file.
pub fn load_algebra(source: &str) -> Result<FiniteAiSemiring, IoError> {
    if let Some((a, b)) = source.split_once('*') {
        return Ok(load_algebra(a.trim())?.direct_product(&load_algebra(b.trim())?));
    }
    let path = Path::new(source);
    if path.exists() {
        let file: AlgebraFile = parse_json(&read(path)?, path)?;
        return file.into_algebra();
    }
    catalog::by_name(source).map_err(|e| {
        IoError::Invalid(format!(
            "`{source}` is neither a file nor a catalog algebra ({e}); known names: {}",
            catalog::NAMES.join(", ")
        ))
    })
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct InlineRule {
    pub label: String,
    pub formula: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum BasisSpec {
    Tag(String),
    Tagged { tag: String, sigma_bound: usize },
    Inline(Vec<InlineRule>),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct StepFile {
    pub rule: String,
    pub dir: String,
    #[serde(default)]
    pub subst: BTreeMap<String, String>,
    #[serde(default)]
    pub context: Option<String>,
    #[serde(default)]
    pub remainder: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "link", rename_all = "lowercase")]
pub enum LinkFile {
    Drop { to: String },
    Rule(StepFile),
    Leq(StepFile),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ProofFile {
    pub basis: BasisSpec,
    pub start: String,
    /// For scripts, the term the derivation must reach; for chains, the word.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goal: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<Vec<StepFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub links: Option<Vec<LinkFile>>,
}

pub enum Proof {
    Script(ProofScript),
    Chain(LeqChain),
}

pub fn load_basis(spec: &BasisSpec, vars: &mut VarTable) -> Result<Basis, IoError> {
    match spec {
        BasisSpec::Tag(t) => {
            let tag: BasisTag = t.parse().map_err(invalid)?;
            Ok(basis(vars, tag, DEFAULT_SIGMA_BOUND))
        }
        BasisSpec::Tagged { tag, sigma_bound } => {
            let tag: BasisTag = tag.parse().map_err(invalid)?;
            Ok(basis(vars, tag, (*sigma_bound).max(1)))
        }
        BasisSpec::Inline(rules) => {
            let members = rules
                .iter()
                .map(|r| {
                    let f = match named(vars, &r.formula) {
                        Ok(f) => f,
                        Err(_) => parse_formula(&r.formula, vars).map_err(invalid)?,
                    };
                    Ok((r.label.clone(), f))
                })
                .collect::<Result<Vec<_>, IoError>>()?;
            Basis::inline(members).map_err(invalid)
        }
    }
}

fn to_step(s: &StepFile, vars: &mut VarTable) -> Result<Step, IoError> {
    let dir = match s.dir.as_str() {
        "fwd" => Direction::Fwd,
        "bwd" => Direction::Bwd,
        other => return Err(IoError::Invalid(format!("direction must be fwd or bwd, not `{other}`"))),
    };
    let mut subst = Substitution::new();
    for (v, t) in &s.subst {
        let id = vars.intern(v);
        subst.insert(id, parse_term(t, vars).map_err(invalid)?);
    }
    let context = match &s.context {
        None => None,
        Some(c) if c.trim() == "1" => None,
        Some(c) => Some(parse_word(c, vars).map_err(invalid)?),
    };
    let remainder = s
        .remainder
        .iter()
        .map(|w| parse_word(w, vars).map_err(invalid))
        .collect::<Result<Vec<_>, _>>()?;
    let rule = match named(vars, &s.rule) {
        Err(_) if s.rule.contains(['=', '<', '>']) => RuleRef::Inline(parse_formula(&s.rule, vars).map_err(invalid)?),
        _ => RuleRef::Label(s.rule.clone()),
    };
    Ok(Step {
        rule,
        dir,
        subst,
        context,
        remainder,
    })
}

pub fn load_proof(file: &ProofFile, vars: &mut VarTable) -> Result<Proof, IoError> {
    let basis = load_basis(&file.basis, vars)?;
    let start = parse_term(&file.start, vars).map_err(invalid)?;
    match (&file.steps, &file.links) {
        (Some(steps), None) => {
            let steps = steps.iter().map(|s| to_step(s, vars)).collect::<Result<_, _>>()?;
            Ok(Proof::Script(ProofScript { basis, start, steps }))
        }
        (None, Some(links)) => {
            let links = links
                .iter()
                .map(|l| {
                    Ok(match l {
                        LinkFile::Drop { to } => Link::Drop(parse_term(to, vars).map_err(invalid)?),
                        LinkFile::Rule(s) => Link::Rule(to_step(s, vars)?),
                        LinkFile::Leq(s) => Link::Leq(to_step(s, vars)?),
                    })
                })
                .collect::<Result<_, IoError>>()?;
            Ok(Proof::Chain(LeqChain { basis, start, links }))
        }
        _ => Err(IoError::Invalid("a proof file needs exactly one of `steps` and `links`".into())),
    }
}

pub fn read_proof(path: &Path) -> Result<ProofFile, IoError> {
    parse_json(&read(path)?, path)
}

fn step_file(s: &Step, vars: &VarTable) -> StepFile {
    StepFile {
        rule: match &s.rule {
            RuleRef::Label(l) => l.clone(),
            RuleRef::Inline(f) => format_formula(f, vars),
        },
        dir: s.dir.as_str().into(),
        subst: s
            .subst
            .images()
            .iter()
            .map(|(v, t)| (vars.name(*v).to_string(), format_term(t, vars)))
            .collect(),
        context: s.context.as_ref().map(|w| format_word(w, vars)),
        remainder: s.remainder.iter().map(|w| format_word(w, vars)).collect(),
    }
}

fn basis_spec(b: &Basis, vars: &VarTable) -> BasisSpec {
    match b.tag {
        Some(tag) => BasisSpec::Tagged {
            tag: tag.as_str().into(),
            sigma_bound: b.sigma_bound.max(1),
        },
        None => BasisSpec::Inline(
            b.members()
                .iter()
                .map(|(l, f)| InlineRule {
                    label: l.clone(),
                    formula: format_formula(f, vars),
                })
                .collect(),
        ),
    }
}

pub fn script_file(s: &ProofScript, goal: Option<&Term>, vars: &VarTable) -> ProofFile {
    ProofFile {
        basis: basis_spec(&s.basis, vars),
        start: format_term(&s.start, vars),
        goal: goal.map(|g| format_term(g, vars)),
        steps: Some(s.steps.iter().map(|st| step_file(st, vars)).collect()),
        links: None,
    }
}

pub fn chain_file(c: &LeqChain, goal: Option<&Term>, vars: &VarTable) -> ProofFile {
    ProofFile {
        basis: basis_spec(&c.basis, vars),
        start: format_term(&c.start, vars),
        goal: goal.map(|g| format_term(g, vars)),
        steps: None,
        links: Some(
            c.links
                .iter()
                .map(|l| match l {
                    Link::Drop(t) => LinkFile::Drop { to: format_term(t, vars) },
                    Link::Rule(s) => LinkFile::Rule(step_file(s, vars)),
                    Link::Leq(s) => LinkFile::Leq(step_file(s, vars)),
                })
                .collect(),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use aisr_core::certify::certify;
    use aisr_core::proof::check_leq_chain;

    #[test]
    fn algebra_round_trip() {
        let a = catalog::sr6();
        let f = AlgebraFile::from_algebra(&a);
        let text = serde_json::to_string(&f).unwrap();
        let back: AlgebraFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_algebra().unwrap(), a);
    }

    #[test]
    fn chain_round_trip() {
        let mut vars = VarTable::new();
        let g = parse_formula("z <= a*b + b*c + c*a", &mut vars).unwrap().inequalities().remove(0);
        let c = certify(&mut vars, BasisTag::Sr6, &g).unwrap();
        let file = chain_file(&c.chain, None, &vars);
        let text = serde_json::to_string_pretty(&file).unwrap();
        let back: ProofFile = serde_json::from_str(&text).unwrap();
        let mut fresh = VarTable::new();
        let Proof::Chain(ch) = load_proof(&back, &mut fresh).unwrap() else { panic!("chain expected") };
        let end = check_leq_chain(&ch).unwrap();
        assert_eq!(format_term(&end, &fresh), "z");
    }

    #[test]
    fn products_by_name() {
        assert_eq!(load_algebra("SR6*SR6").unwrap().size(), 36);
        assert!(load_algebra("nonsense").is_err());
    }
}
