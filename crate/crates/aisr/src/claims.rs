//! The registry of checkable claims run by `reproduce` and the acceptance
//! target. Each claim returns a status and human-readable evidence lines.

use std::collections::BTreeSet;

use aisr_core::algebra::{Assignment, FiniteAiSemiring};
use aisr_core::catalog::{d2, sca, scab, scab0, scabc, sr6};
use aisr_core::certify::certify;
use aisr_core::characterize::{decide_d2, decide_s0, decide_scab, decide_sr6};
use aisr_core::corpus::{corpus, CorpusBounds};
use aisr_core::enumerate::enumerate_ai_semirings;
use aisr_core::families::{basis, delta, named, sigma, u_n, BasisTag};
use aisr_core::freeness::{instance_subterm_capped, is_subterm, DEFAULT_SEARCH_CAP};
use aisr_core::iso::{embeddings, find_isomorphism, is_isomorphic};
use aisr_core::parse::{parse_formula, parse_term, parse_word};
use aisr_core::proof::{
    check_leq_chain, check_proof, search_derivation, Direction, Link, LeqChain, SearchBounds, Step,
};
use aisr_core::subvariety::{check_pair, check_quadruple, pairs, sample_quadruples};
use aisr_core::{Basis, Formula, Inequality, Substitution, Term, VarTable, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Refuted,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Refuted => "refuted",
            Status::Skipped => "skipped",
        }
    }
}

/// Knobs for the claim checks.
#[derive(Debug, Clone, Serialize)]
pub struct Bounds {
    pub sigma_max: usize,
    pub m_max: usize,
    /// Largest number of assignments a single satisfaction check may visit.
    pub budget: u128,
    pub freeness_cap: u64,
    pub corpus_vars: usize,
    pub random_triples: usize,
    pub quadruple_samples: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            sigma_max: 4,
            m_max: 4,
            budget: 100_000_000,
            freeness_cap: DEFAULT_SEARCH_CAP,
            corpus_vars: 4,
            random_triples: 10_000,
            quadruple_samples: 2_000,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub status: Status,
    pub details: Vec<String>,
}

/// Collects evidence; any failed expectation refutes the claim.
#[derive(Default)]
struct Log {
    lines: Vec<String>,
    failed: bool,
    skipped: bool,
}

impl Log {
    fn note(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    fn expect(&mut self, ok: bool, line: impl Into<String>) {
        let line = line.into();
        if ok {
            self.lines.push(line);
        } else {
            self.failed = true;
            self.lines.push(format!("FAILED: {line}"));
        }
    }

    fn skip(&mut self, line: impl Into<String>) {
        self.skipped = true;
        self.lines.push(format!("skipped: {}", line.into()));
    }

    fn finish(self) -> Outcome {
        let status = if self.failed {
            Status::Refuted
        } else if self.skipped {
            Status::Skipped
        } else {
            Status::Verified
        };
        Outcome {
            status,
            details: self.lines,
        }
    }
}

pub struct Claim {
    pub id: &'static str,
    /// Acceptance criterion number.
    pub criterion: u8,
    pub description: &'static str,
    pub run: fn(&Bounds) -> Outcome,
}

/// Every claim, sorted by id.
pub const CLAIMS: &[Claim] = &[
    Claim {
        id: "axioms",
        criterion: 1,
        description: "SR6, Sc:ab, Sc:abc, D2 and Sc:ab0 are ai-semirings",
        run: axioms,
    },
    Claim {
        id: "deciders",
        criterion: 4,
        description: "syntactic deciders agree with brute force on the exhaustive corpus",
        run: deciders,
    },
    Claim {
        id: "freeness",
        criterion: 5,
        description: "u^(m) is u^(n)-free for n < m and free of the basis right-hand sides",
        run: freeness,
    },
    Claim {
        id: "lattice",
        criterion: 8,
        description: "Sc:a and Sc:ab embed in SR6; the pair and quadruple quotients",
        run: lattice,
    },
    Claim {
        id: "subterm-free",
        criterion: 6,
        description: "freeness passes from a subterm to the larger term on random triples",
        run: subterm_free,
    },
    Claim {
        id: "minimality",
        criterion: 9,
        description: "among two-element ai-semirings only Sc:a satisfies (SR04)",
        run: minimality,
    },
    Claim {
        id: "monotone",
        criterion: 10,
        description: "theories grow strictly along SR6, Sc:ab, Sc:a",
        run: monotone,
    },
    Claim {
        id: "proofs",
        criterion: 7,
        description: "the basis derivation chains check",
        run: proofs,
    },
    Claim {
        id: "separation",
        criterion: 3,
        description: "(26022301) and delta_1..3 hold in Sc:ab; (26022301) fails in SR6",
        run: separation,
    },
    Claim {
        id: "sr6-identities",
        criterion: 2,
        description: "SR6 satisfies (SR02), (SR03), (SR04) and sigma_n",
        run: sr6_identities,
    },
];

pub fn find(id: &str) -> Option<&'static Claim> {
    CLAIMS.iter().find(|c| c.id == id)
}

/// `x1=2, x2=6, ...` in the algebra's labels.
/// Variables are listed by name, with numeric suffixes compared as numbers.
pub fn format_assignment(alg: &FiniteAiSemiring, a: &Assignment, vars: &VarTable) -> String {
    let mut items: Vec<(&str, &str)> = a.iter().map(|(v, &e)| (vars.name(*v), alg.label(e))).collect();
    items.sort_by_key(|(n, _)| {
        let stem = n.trim_end_matches(|c: char| c.is_ascii_digit());
        (stem.to_string(), n[stem.len()..].parse::<u64>().unwrap_or(0))
    });
    items.iter().map(|(n, l)| format!("{n}={l}")).collect::<Vec<_>>().join(", ")
}

fn axioms(_: &Bounds) -> Outcome {
    let mut log = Log::default();
    for (alg, size) in [(sr6(), 6), (scab(), 4), (scabc(), 8), (d2(), 2), (scab0(), 5)] {
        let report = alg.validate();
        log.expect(
            report.is_valid() && alg.size() == size,
            format!(
                "{}: size {}, {} violations",
                alg.name().unwrap_or("?"),
                alg.size(),
                report.violations.len()
            ),
        );
    }
    log.finish()
}

/// Exhaustive check of `f` in `alg`, honouring the budget.
fn holds(alg: &FiniteAiSemiring, f: &Formula, b: &Bounds) -> Option<aisr_core::algebra::Satisfaction> {
    alg.satisfies_within(f, b.budget).ok()
}

fn sr6_identities(b: &Bounds) -> Outcome {
    let mut log = Log::default();
    let mut vars = VarTable::new();
    let s = sr6();
    let mut labels: Vec<String> = ["SR02", "SR03", "SR04"].iter().map(|l| l.to_string()).collect();
    labels.extend((1..=b.sigma_max).map(|n| format!("sigma:{n}")));
    for l in &labels {
        let f = named(&mut vars, l).expect("known label");
        let n = f.content().len() as u32;
        match holds(&s, &f, b) {
            Some(sat) => log.expect(sat.holds, format!("{l}: holds over 6^{n} assignments")),
            None => log.skip(format!("{l}: 6^{n} assignments exceed the budget")),
        }
    }
    log.finish()
}

fn separation(b: &Bounds) -> Outcome {
    let mut log = Log::default();
    let mut vars = VarTable::new();
    let d1 = named(&mut vars, "I26022301").unwrap();
    let (ab, s6) = (scab(), sr6());
    log.expect(ab.satisfies(&d1).unwrap().holds, "(26022301) holds in Sc:ab");
    let sat = s6.satisfies(&d1).unwrap();
    match &sat.witness {
        Some(w) => log.expect(
            !sat.holds,
            format!("(26022301) fails in SR6 at {}", format_assignment(&s6, w, &vars)),
        ),
        None => log.expect(false, "(26022301) fails in SR6"),
    }
    // the witness a=2, b=6, c=5, d=4 from the separating quadruple
    let alpha: Assignment = ["x1", "x2", "x3", "x4"]
        .iter()
        .zip(["2", "6", "5", "4"])
        .map(|(v, e)| (vars.get(v).unwrap(), s6.elem(e).unwrap()))
        .collect();
    let Formula::Inequality(ineq) = &d1 else { unreachable!() };
    let lhs = s6.eval(&Term::word(ineq.lhs.clone()), &alpha).unwrap();
    let rhs = s6.eval(&ineq.rhs, &alpha).unwrap();
    log.expect(
        !s6.leq(lhs, rhs),
        format!("x1=2, x2=6, x3=5, x4=4 is a witness: {} not <= {}", s6.label(lhs), s6.label(rhs)),
    );
    for n in 1..=3 {
        let f = Formula::Inequality(delta(&mut vars, n).unwrap());
        match holds(&ab, &f, b) {
            Some(sat) => log.expect(sat.holds, format!("delta_{n} holds in Sc:ab")),
            None => log.skip(format!("delta_{n}: over budget")),
        }
    }
    log.finish()
}

fn corpus_of(b: &Bounds, vars: &mut VarTable) -> Vec<Inequality> {
    let xs = vars.indexed("v", b.corpus_vars);
    corpus(&xs, CorpusBounds::default())
}

fn brute(alg: &FiniteAiSemiring, g: &Inequality) -> bool {
    alg.satisfies(&Formula::Inequality(g.clone())).expect("commutative").holds
}

fn deciders(b: &Bounds) -> Outcome {
    let mut log = Log::default();
    let mut vars = VarTable::new();
    let items = corpus_of(b, &mut vars);
    log.note(format!(
        "corpus: {} inequalities over {} variables, words of length <= 3, <= 4 summands",
        items.len(),
        b.corpus_vars
    ));
    let (s6, ab, d, ab0) = (sr6(), scab(), d2(), scab0());
    // per inequality: (holds, mismatch) for Sc:ab, D2, Sc:ab0, SR6
    let rows: Vec<[(bool, bool); 4]> = items
        .par_iter()
        .map(|g| {
            let (q, u) = (&g.lhs, &g.rhs);
            let ds = [
                decide_scab(q, u).holds,
                decide_d2(q, u),
                decide_s0(|q, u| decide_scab(q, u).holds, q, u),
                decide_sr6(q, u),
            ];
            let bs = [brute(&ab, g), brute(&d, g), brute(&ab0, g), brute(&s6, g)];
            [0, 1, 2, 3].map(|i| (bs[i], ds[i] != bs[i]))
        })
        .collect();
    for (i, name) in ["decide_scab vs Sc:ab", "decide_d2 vs D2", "decide_s0 vs Sc:ab0", "decide_sr6 vs SR6"]
        .iter()
        .enumerate()
    {
        let valid = rows.iter().filter(|r| r[i].0).count();
        let bad: Vec<usize> = (0..rows.len()).filter(|&k| rows[k][i].1).collect();
        let first = bad
            .first()
            .map(|&k| format!(", first at {}", items[k].display(&vars)))
            .unwrap_or_default();
        log.expect(
            bad.is_empty(),
            format!("{name}: {valid} valid, {} discrepancies{first}", bad.len()),
        );
    }
    log.finish()
}

fn freeness(b: &Bounds) -> Outcome {
    let mut log = Log::default();
    let mut vars = VarTable::new();
    let cap = b.freeness_cap;
    let us: Vec<Term> = (1..=b.m_max).map(|m| u_n(&mut vars, m).unwrap()).collect();
    for m in 1..=b.m_max {
        for n in 1..=m {
            let (um, un) = (&us[m - 1], &us[n - 1]);
            match instance_subterm_capped(un, um, cap) {
                Err(e) => log.skip(format!("u^({m}) vs u^({n}): {e}")),
                Ok(found) if n < m => log.expect(found.is_none(), format!("u^({m}) is u^({n})-free")),
                Ok(found) => {
                    let trivial = is_subterm(un, um)
                        .is_some_and(|w| w.context.is_none() && w.remainder.is_empty());
                    log.expect(
                        found.is_some() && trivial,
                        format!("u^({m}) is not u^({m})-free (identity witness)"),
                    );
                }
            }
        }
    }
    let sides = [
        ("SR02", "x^3"),
        ("SR02/SR03", "x^2"),
        ("SR03", "x + x*y"),
        ("SR04", "x*y*z"),
        ("ScabD201", "x1 + x2*x3*x4"),
        ("ab02", "x*y*z"),
        ("ab03", "x + x*y"),
    ];
    for (src, text) in sides {
        let w = parse_term(text, &mut vars).unwrap();
        let mut all = true;
        for (i, um) in us.iter().enumerate() {
            match instance_subterm_capped(&w, um, cap) {
                Ok(found) => all &= found.is_none(),
                Err(e) => {
                    log.skip(format!("u^({}) vs {text}: {e}", i + 1));
                    all = false;
                }
            }
        }
        log.expect(all, format!("u^(1..={}) are ({text})-free [{src}]", b.m_max));
    }
    log.finish()
}

fn random_term(rng: &mut ChaCha8Rng, nvars: usize, max_words: usize, vars: &[aisr_core::VarId]) -> Term {
    let n = rng.gen_range(1..=max_words);
    let mut words = Vec::with_capacity(n);
    while words.len() < n {
        let fs: Vec<_> = vars[..nvars].iter().map(|&v| (v, rng.gen_range(0..=2u32))).collect();
        if let Ok(w) = Word::from_factors(fs) {
            words.push(w);
        }
    }
    Term::from_words(words).unwrap()
}

fn subterm_free(b: &Bounds) -> Outcome {
    let mut log = Log::default();
    let mut vars = VarTable::new();
    let xs = vars.indexed("x", 3);
    let seeds: Vec<u64> = (0..b.random_triples as u64).collect();
    // (vacuous, violated)
    let results: Vec<(bool, bool)> = seeds
        .par_iter()
        .map(|&seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let u = random_term(&mut rng, 2, 2, &xs);
            let v = random_term(&mut rng, 3, 3, &xs);
            let w = if rng.gen_bool(0.5) {
                let p = random_term(&mut rng, 2, 1, &xs).words()[0].clone();
                u.mul_context(&Some(p)).add(&random_term(&mut rng, 2, 2, &xs))
            } else {
                u.add(&random_term(&mut rng, 3, 1, &xs))
            };
            debug_assert!(is_subterm(&u, &w).is_some());
            let v_u_free = instance_subterm_capped(&u, &v, DEFAULT_SEARCH_CAP).unwrap().is_none();
            if !v_u_free {
                return (true, false);
            }
            let v_w_free = instance_subterm_capped(&w, &v, DEFAULT_SEARCH_CAP).unwrap().is_none();
            (false, !v_w_free)
        })
        .collect();
    let nonvacuous = results.iter().filter(|r| !r.0).count();
    let violated = results.iter().filter(|r| r.1).count();
    log.note(format!("{} triples, {nonvacuous} with v u-free", results.len()));
    log.expect(violated == 0, format!("{violated} violations"));
    log.finish()
}

/// A certified chain: name, expected case, actual case, goal, chain.
pub struct NamedChain {
    pub name: String,
    pub expected_case: &'static str,
    pub case: &'static str,
    pub goal: Inequality,
    pub chain: LeqChain,
}

fn ineq(vars: &mut VarTable, s: &str) -> Inequality {
    parse_formula(s, vars).unwrap().inequalities().remove(0)
}

fn sub(vars: &mut VarTable, pairs: &[(&str, &str)]) -> Substitution {
    let mut s = Substitution::new();
    for (v, t) in pairs {
        let id = vars.intern(v);
        s.insert(id, parse_term(t, vars).unwrap());
    }
    s
}

/// `u ⪰ x + xy ≈ x² ≈ x³ ⪰ q`, written out by hand.
pub fn scab_case2_chain(vars: &mut VarTable) -> (Inequality, LeqChain) {
    let goal = ineq(vars, "z*w <= x + x*y + y*t");
    let b = basis(vars, BasisTag::Scab, 1);
    let xy = sub(vars, &[("x", "x"), ("y", "y")]);
    let x = sub(vars, &[("x", "x")]);
    let s04 = sub(vars, &[("x1", "z*w"), ("x2", "x"), ("x3", "x"), ("x4", "x")]);
    let links = vec![
        Link::Drop(parse_term("x + x*y", vars).unwrap()),
        Link::Rule(Step::new("SR03", Direction::Bwd, xy)),
        Link::Rule(Step::new("SR02", Direction::Bwd, x)),
        Link::Leq(Step::new("SR04", Direction::Fwd, s04)),
    ];
    let chain = LeqChain {
        basis: b,
        start: goal.rhs.clone(),
        links,
    };
    (goal, chain)
}

/// `δ_2` from `δ_1` by two applications in context.
pub fn delta2_chain(vars: &mut VarTable) -> (Inequality, LeqChain) {
    let d1 = delta(vars, 1).unwrap();
    let goal = delta(vars, 2).unwrap();
    let b = Basis::inline(vec![("delta:1".into(), Formula::Inequality(d1))]).unwrap();
    let w = |vars: &mut VarTable, s: &str| parse_word(s, vars).unwrap();
    let keep = vec![w(vars, "x4*x5"), w(vars, "x5*x6")];
    let first = sub(vars, &[("x1", "x1"), ("x2", "x2"), ("x3", "x3"), ("x4", "x4")]);
    let second = sub(vars, &[("x1", "x1"), ("x2", "x4"), ("x3", "x5"), ("x4", "x6")]);
    let links = vec![
        Link::Leq(Step::new("delta:1", Direction::Fwd, first).keeping(keep)),
        Link::Leq(Step::new("delta:1", Direction::Fwd, second)),
    ];
    let chain = LeqChain {
        basis: b,
        start: goal.rhs.clone(),
        links,
    };
    (goal, chain)
}

/// The displayed chains of the basis arguments, one representative goal per
/// case, generated by [`certify`] and checked link by link.
pub fn case_chains(vars: &mut VarTable) -> Vec<NamedChain> {
    let cases: &[(BasisTag, &str, &str)] = &[
        (BasisTag::Scab, "case1", "q <= x*y*z + w"),
        (BasisTag::Scab, "case2", "q <= x + x*y + z*w"),
        (BasisTag::Scab, "case3", "q <= x1*x2 + x2*x3 + x3*x1"),
        (BasisTag::Scab, "case3", "q <= x1*x2 + x2*x3 + x3*x4 + x4*x5 + x5*x1"),
        (BasisTag::Scab, "case3", "q <= x^2 + y"),
        (BasisTag::Scab, "case4", "x1*x4 <= x1*x2 + x2*x3 + x3*x4"),
        (BasisTag::Scab, "case4", "x1*x6 <= x1*x2 + x2*x3 + x3*x4 + x4*x5 + x5*x6"),
        (BasisTag::Sr6, "case1", "q <= x*y*z + w"),
        (BasisTag::Sr6, "case2", "q <= x + x*y"),
        (BasisTag::Sr6, "case3", "q <= x1*x2 + x2*x3 + x3*x1"),
        (BasisTag::Sr6, "case3", "q <= x1*x2 + x2*x3 + x3*x4 + x4*x5 + x5*x1"),
        (BasisTag::Sr6, "case3", "y <= x^2"),
        (BasisTag::ScabD2, "case1", "x*y <= x + z*w*t"),
        (BasisTag::ScabD2, "case2", "x*y <= y + z + z*w"),
        (BasisTag::ScabD2, "case3", "x*y <= x + x1*x2 + x2*x3 + x3*x1"),
        (BasisTag::ScabD2, "case3", "x*y <= x + z^2"),
        (BasisTag::Scab0, "case1", "x*y <= x*y^2 + z"),
        (BasisTag::Scab0, "case2", "x*y <= x + x^2 + z"),
        (BasisTag::Scab0, "case2", "x*y <= y + y^2 + z*w"),
        (BasisTag::Scab0, "case3", "x*y*z <= x*y + y*z + z*x + t"),
        (BasisTag::Scab0, "case3", "x <= x^2 + y"),
        (BasisTag::Sca, "case1", "y1*y2 <= x1*x2"),
        (BasisTag::Sca, "case1", "x1*x2 <= y1*y2"),
    ];
    let mut out = Vec::new();
    for &(tag, case, text) in cases {
        let g = ineq(vars, text);
        let c = certify(vars, tag, &g).unwrap_or_else(|e| panic!("{tag} {text}: {e}"));
        out.push(NamedChain {
            name: format!("{tag} {case}: {text}"),
            expected_case: case,
            case: c.case,
            goal: g,
            chain: c.chain,
        });
    }
    out
}

fn proofs(_: &Bounds) -> Outcome {
    let mut log = Log::default();
    let mut vars = VarTable::new();
    let mut chains = case_chains(&mut vars);
    for (name, hand) in [("Scab case2, hand-written", scab_case2_chain(&mut vars)), ("delta_2 from delta_1", delta2_chain(&mut vars))] {
        chains.push(NamedChain {
            name: name.into(),
            expected_case: "",
            case: "",
            goal: hand.0,
            chain: hand.1,
        });
    }
    for c in &chains {
        let ok = aisr_core::proof::chain_proves(&c.chain, &c.goal);
        let line = format!("{} ({} links)", c.name, c.chain.links.len());
        match ok {
            Ok(()) if c.case != c.expected_case => log.expect(false, format!("{line}: certified as {}", c.case)),
            Ok(()) => log.expect(true, line),
            Err(e) => log.expect(false, format!("{line}: {}", e.describe(&vars))),
        }
    }

    let d1 = delta(&mut vars, 1).unwrap();
    let b = Basis::inline(vec![("delta:1".into(), Formula::Inequality(d1))]).unwrap();
    let goal = delta(&mut vars, 2).unwrap();
    let found = search_derivation(&b, &goal, SearchBounds::default());
    log.expect(
        found
            .as_ref()
            .is_some_and(|s| check_proof(s, &goal.to_identity()).is_ok()),
        format!(
            "search finds delta_2 from delta_1 ({} steps)",
            found.map_or(0, |s| s.steps.len())
        ),
    );

    // corrupt the hand-written chain: SR02 applied in a context that is not there
    let (_, mut bad) = scab_case2_chain(&mut vars);
    if let Link::Rule(step) = &mut bad.links[2] {
        step.context = Some(parse_word("y", &mut vars).unwrap());
    }
    let err = check_leq_chain(&bad).err();
    log.expect(
        err.as_ref().and_then(|e| e.index()) == Some(2),
        format!(
            "corrupted chain rejected at link 2: {}",
            err.map(|e| e.describe(&vars)).unwrap_or_default()
        ),
    );
    log.finish()
}

fn lattice(b: &Bounds) -> Outcome {
    let mut log = Log::default();
    let s6 = sr6();
    let image = |m: &Vec<usize>| -> BTreeSet<String> { m.iter().map(|&e| s6.label(e).to_string()).collect() };
    let a_emb = embeddings(&sca(), &s6);
    log.expect(
        !a_emb.is_empty(),
        format!(
            "Sc:a embeds in SR6 ({} embeddings, first image {{{}}})",
            a_emb.len(),
            a_emb.first().map(|m| image(m).into_iter().collect::<Vec<_>>().join(",")).unwrap_or_default()
        ),
    );
    let ab_emb = embeddings(&scab(), &s6);
    let want: BTreeSet<String> = ["1", "3", "5", "6"].iter().map(|s| s.to_string()).collect();
    log.expect(
        ab_emb.iter().any(|m| image(m) == want),
        format!("Sc:ab embeds in SR6 with image {{1,3,5,6}} ({} embeddings)", ab_emb.len()),
    );

    let sq = s6.direct_product(&s6);
    let all_pairs: Vec<_> = pairs(&sq).collect();
    let failures: Vec<_> = all_pairs
        .par_iter()
        .filter_map(|&(a, bb)| check_pair(&sq, a, bb).err().map(|e| (a, bb, e)))
        .collect();
    if let Some(&(a, bb)) = all_pairs.first() {
        let w = check_pair(&sq, a, bb);
        if let Ok(w) = w {
            let gen: Vec<&str> = w.generated.iter().map(|&e| sq.label(e)).collect();
            log.note(format!(
                "SR6xSR6: a={}, b={}: <a,b> = {{{}}}, quotient by I = Sc:ab",
                sq.label(a),
                sq.label(bb),
                gen.join(", ")
            ));
        }
    }
    log.expect(
        !all_pairs.is_empty() && failures.is_empty(),
        format!(
            "SR6xSR6: {} pairs with a^2 != ab, {} failures{}",
            all_pairs.len(),
            failures.len(),
            failures.first().map(|f| format!(", first {f:?}")).unwrap_or_default()
        ),
    );

    let gens = ["2", "6", "5", "4"].map(|l| s6.elem(l).unwrap());
    match check_quadruple(&s6, gens) {
        Ok(w) => {
            for (i, c) in w.classes.iter().enumerate() {
                let ls: Vec<&str> = c.iter().map(|&e| s6.label(e)).collect();
                log.note(format!("SR6, (a,b,c,d) = (2,6,5,4): R{} = {{{}}}", i + 1, ls.join(", ")));
            }
            log.expect(true, "SR6: quotient by R1..R6 is SR6 under R_i -> i");
        }
        Err(e) => log.expect(false, format!("SR6 quadruple (2,6,5,4): {e}")),
    }
    let sample = sample_quadruples(&sq, b.quadruple_samples);
    let failures: Vec<_> = sample
        .par_iter()
        .filter_map(|&g| check_quadruple(&sq, g).err().map(|e| (g, e)))
        .collect();
    let max_gen = sample
        .iter()
        .map(|&g| sq.subalgebra_closure(&g).len())
        .max()
        .unwrap_or(0);
    log.expect(
        !sample.is_empty() && failures.is_empty(),
        format!(
            "SR6xSR6: {} sampled quadruples with ad not <= ab+bc+cd, {} failures, largest <a,b,c,d> has {max_gen} elements",
            sample.len(),
            failures.len()
        ),
    );
    log.finish()
}

fn minimality(_: &Bounds) -> Outcome {
    let mut log = Log::default();
    let mut vars = VarTable::new();
    let sr04 = named(&mut vars, "SR04").unwrap();
    let two = enumerate_ai_semirings(2).expect("order 2");
    log.note(format!("{} two-element ai-semirings up to isomorphism", two.len()));
    let sat: Vec<&FiniteAiSemiring> = two.iter().filter(|a| a.satisfies(&sr04).unwrap().holds).collect();
    log.expect(sat.len() == 1, format!("{} satisfy (SR04)", sat.len()));
    log.expect(
        sat.first().is_some_and(|a| is_isomorphic(a, &sca())),
        "the one satisfying (SR04) is Sc:a",
    );
    let d = d2();
    let d_in = two.iter().find(|a| find_isomorphism(a, &d).is_some());
    log.expect(
        d_in.is_some_and(|a| !a.satisfies(&sr04).unwrap().holds),
        "D2 is among them and fails (SR04)",
    );
    log.finish()
}

fn monotone(b: &Bounds) -> Outcome {
    let mut log = Log::default();
    let mut vars = VarTable::new();
    let items = corpus_of(b, &mut vars);
    let a = sca();
    let rows: Vec<(bool, bool, bool)> = items
        .par_iter()
        .map(|g| {
            let (q, u) = (&g.lhs, &g.rhs);
            (decide_sr6(q, u), decide_scab(q, u).holds, brute(&a, g))
        })
        .collect();
    let sr6_not_scab = rows.iter().filter(|r| r.0 && !r.1).count();
    let scab_not_sca = rows.iter().filter(|r| r.1 && !r.2).count();
    log.expect(sr6_not_scab == 0, format!("SR6 => Sc:ab: {sr6_not_scab} exceptions"));
    log.expect(scab_not_sca == 0, format!("Sc:ab => Sc:a: {scab_not_sca} exceptions"));
    let strict1 = rows.iter().filter(|r| r.1 && !r.0).count();
    let strict2 = rows.iter().filter(|r| r.2 && !r.1).count();
    log.note(format!(
        "corpus: {strict1} inequalities hold in Sc:ab but not SR6, {strict2} in Sc:a but not Sc:ab"
    ));

    let d1 = named(&mut vars, "I26022301").unwrap();
    log.expect(
        scab().satisfies(&d1).unwrap().holds && !sr6().satisfies(&d1).unwrap().holds,
        "(26022301) separates Sc:ab from SR6",
    );
    let t01 = named(&mut vars, "t01").unwrap();
    log.expect(
        sca().satisfies(&t01).unwrap().holds && !scab().satisfies(&t01).unwrap().holds,
        "(t01) separates Sc:a from Sc:ab",
    );
    let scab_reason = t01
        .inequalities()
        .iter()
        .map(|i| decide_scab(&i.lhs, &i.rhs).reason)
        .collect::<Vec<_>>();
    log.note(format!(
        "decide_scab on the halves of (t01): {}",
        scab_reason.iter().map(|r| r.as_str()).collect::<Vec<_>>().join(", ")
    ));
    log.finish()
}

/// Whether `sigma_n` is outside the reach of the `Sc:ab` basis at `depth`.
pub fn sigma_search(vars: &mut VarTable, n: usize, depth: usize) -> bool {
    let b = basis(vars, BasisTag::Scab, 1);
    let g = sigma(vars, n).unwrap();
    search_derivation(
        &b,
        &g,
        SearchBounds {
            depth,
            ..SearchBounds::default()
        },
    )
    .is_none()
}
