use std::path::PathBuf;
use std::process::ExitCode;

use aisr::claims::{format_assignment, Bounds};
use aisr::io::{self, load_algebra, Proof};
use aisr::report;
use aisr_core::certify::{certify, CertifyError};
use aisr_core::characterize::{decide_scab, Variety};
use aisr_core::enumerate::enumerate_ai_semirings;
use aisr_core::families::{basis, resolve, BasisTag, DEFAULT_SIGMA_BOUND};
use aisr_core::freeness::instance_subterm_capped;
use aisr_core::graph::TermGraph;
use aisr_core::parse::{format_formula, format_term, format_word, parse_term};
use aisr_core::proof::{chain_proves, Link, check_leq_chain, check_proof, format_step, replay, search_derivation, SearchBounds};
use aisr_core::term::{display_context, display_words};
use aisr_core::{Formula, Inequality, VarTable};
use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "aisr", version, about = "Finite ai-semirings, term identities and their proofs")]
struct Cli {
    /// Largest number of assignments a satisfaction check may enumerate.
    #[arg(long, global = true, env = "AISR_BUDGET", default_value_t = 100_000_000)]
    budget: u128,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the ai-semiring axioms of an algebra (catalog name, `A*B`, or JSON file).
    Validate { algebra: String },
    /// Decide whether an algebra satisfies an identity or inequality.
    Check { algebra: String, formula: String },
    /// Decide an inequality `q <= u` in a variety syntactically.
    Decide {
        #[arg(long)]
        variety: Variety,
        inequality: String,
    },
    /// Look for `v = p*phi(u) + r`.
    Free {
        #[arg(long)]
        target: String,
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = aisr_core::freeness::DEFAULT_SEARCH_CAP)]
        cap: u64,
    },
    /// Print the graph of the length-2 words of a term.
    Graph { term: String },
    /// Check, search for or build derivations.
    Prove(ProveArgs),
    /// List the ai-semirings of order n up to isomorphism.
    Enumerate {
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Re-run the claim checks.
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct ProveArgs {
    /// Proof file to check.
    #[arg(long, conflicts_with_all = ["search", "certify"])]
    check: Option<PathBuf>,
    /// Breadth-first search for a derivation.
    #[arg(long, requires = "inequality")]
    search: bool,
    /// Build a checked chain following the case analysis of the basis.
    #[arg(long, requires = "inequality", conflicts_with = "search")]
    certify: bool,
    #[arg(long, default_value = "Scab")]
    basis: BasisTag,
    #[arg(long, default_value_t = DEFAULT_SIGMA_BOUND)]
    sigma_bound: usize,
    #[arg(long, default_value_t = 4)]
    depth: usize,
    /// Print the found proof as a JSON proof file.
    #[arg(long)]
    emit: bool,
    inequality: Option<String>,
}

#[derive(Args)]
struct ReproduceArgs {
    #[arg(long, conflicts_with = "claim")]
    all: bool,
    /// Claim id; may be repeated.
    #[arg(long)]
    claim: Vec<String>,
    #[arg(long)]
    sigma_max: Option<usize>,
    #[arg(long)]
    m_max: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    json: bool,
    /// List the claim ids and exit.
    #[arg(long)]
    list: bool,
}

/// A semantic "no": the property asked about does not hold.
struct Refuted;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Refuted)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn verdict(ok: bool) -> Result<Result<(), Refuted>> {
    Ok(if ok { Ok(()) } else { Err(Refuted) })
}

fn run(cli: Cli) -> Result<Result<(), Refuted>> {
    match cli.cmd {
        Cmd::Validate { algebra } => {
            let a = load_algebra(&algebra)?;
            let r = a.validate();
            println!("{}: size {}", a.name().unwrap_or(&algebra), a.size());
            for v in &r.violations {
                let (x, y, z) = v.witness;
                println!(
                    "violation: {} fails at x={}, y={}, z={}",
                    v.axiom.name(),
                    a.label(x),
                    a.label(y),
                    a.label(z)
                );
            }
            println!("{}", if r.is_valid() { "valid" } else { "invalid" });
            verdict(r.is_valid())
        }
        Cmd::Check { algebra, formula } => {
            let a = load_algebra(&algebra)?;
            let mut vars = VarTable::new();
            let f = resolve(&mut vars, &formula)?;
            let sat = a.satisfies_within(&f, cli.budget)?;
            println!("{}", format_formula(&f, &vars));
            match &sat.witness {
                None => println!("holds"),
                Some(w) => println!("fails at {}", format_assignment(&a, w, &vars)),
            }
            verdict(sat.holds)
        }
        Cmd::Decide { variety, inequality } => {
            let mut vars = VarTable::new();
            let f = resolve(&mut vars, &inequality)?;
            let mut all = true;
            for g in f.inequalities() {
                let holds = variety.decide(&g.lhs, &g.rhs);
                let reason = match variety {
                    Variety::Scab => format!(" ({})", decide_scab(&g.lhs, &g.rhs).reason),
                    _ => String::new(),
                };
                println!("{}: {}{reason}", g.display(&vars), if holds { "holds" } else { "fails" });
                all &= holds;
            }
            verdict(all)
        }
        Cmd::Free { target, pattern, cap } => {
            let mut vars = VarTable::new();
            let v = parse_term(&target, &mut vars)?;
            let u = parse_term(&pattern, &mut vars)?;
            match instance_subterm_capped(&u, &v, cap)? {
                None => {
                    println!("FREE");
                    verdict(true)
                }
                Some(w) => {
                    println!("NOT FREE");
                    println!("context: {}", display_context(&w.context, &vars));
                    for (x, t) in w.substitution.images() {
                        println!("  {} -> {}", vars.name(*x), format_term(t, &vars));
                    }
                    println!("remainder: {}", display_words(&w.remainder, &vars));
                    verdict(false)
                }
            }
        }
        Cmd::Graph { term } => {
            let mut vars = VarTable::new();
            let t = parse_term(&term, &mut vars)?;
            print_graph(&TermGraph::build(&t), &vars);
            verdict(true)
        }
        Cmd::Prove(args) => prove(args),
        Cmd::Enumerate { n, json } => {
            let all = enumerate_ai_semirings(n)?;
            if json {
                let files: Vec<_> = all.iter().map(io::AlgebraFile::from_algebra).collect();
                println!("{}", serde_json::to_string_pretty(&files)?);
            } else {
                println!("{} ai-semirings of order {n} up to isomorphism", all.len());
                for a in &all {
                    println!("{a}");
                }
            }
            verdict(true)
        }
        Cmd::Reproduce(args) => reproduce(args, cli.budget),
    }
}

fn print_graph(g: &TermGraph, vars: &VarTable) {
    let name = |v| vars.name(v).to_string();
    let vs: Vec<String> = g.vertices().map(name).collect();
    println!("vertices: {}", vs.join(" "));
    let es: Vec<String> = g.edges().into_iter().map(|(a, b)| format!("{}{}", name(a), name(b))).collect();
    println!("edges: {}", es.join(" "));
    match (g.bipartition(), g.odd_cycle()) {
        (Some(sides), _) => {
            let side = |s: bool| -> Vec<String> {
                sides.iter().filter(|(_, &b)| b == s).map(|(v, _)| name(*v)).collect()
            };
            println!("bipartition: {{{}}} {{{}}}", side(false).join(", "), side(true).join(", "));
        }
        (None, Some(c)) => {
            let c: Vec<String> = c.into_iter().map(name).collect();
            println!("odd cycle: {}", c.join(" "));
        }
        (None, None) => unreachable!("a graph without a bipartition has an odd cycle"),
    }
    let pairs: Vec<String> = g
        .odd_closure()
        .into_iter()
        .map(|(a, b)| format!("({}, {})", name(a), name(b)))
        .collect();
    println!("odd closure: {}", pairs.join(" "));
}

fn format_link(l: &Link, vars: &VarTable) -> String {
    match l {
        Link::Drop(t) => format!("drop to {}", format_term(t, vars)),
        Link::Rule(st) => format_step(st, vars),
        Link::Leq(st) => format!("{} (leq)", format_step(st, vars)),
    }
}

fn goal_of(text: &str, vars: &mut VarTable) -> Result<Inequality> {
    let f = resolve(vars, text)?;
    match f {
        Formula::Inequality(g) => Ok(g),
        Formula::Identity(_) => bail!("expected an inequality `q <= u`, got an identity"),
    }
}

fn prove(args: ProveArgs) -> Result<Result<(), Refuted>> {
    let mut vars = VarTable::new();
    if let Some(path) = &args.check {
        let file = io::read_proof(path)?;
        let proof = io::load_proof(&file, &mut vars)?;
        let goal = file
            .goal
            .as_deref()
            .map(|g| parse_term(g, &mut vars))
            .transpose()?;
        let result = match &proof {
            Proof::Script(s) => replay(s).and_then(|end| match &goal {
                Some(g) if &end != g => check_proof(s, &aisr_core::Identity::new(s.start.clone(), g.clone())),
                _ => Ok(()),
            }),
            Proof::Chain(c) => match &goal {
                Some(g) if g.len() == 1 => chain_proves(c, &Inequality::new(g.words()[0].clone(), c.start.clone())),
                Some(_) => bail!("the goal of a chain is a single word"),
                None => check_leq_chain(c).map(|_| ()),
            },
        };
        return match result {
            Ok(()) => {
                println!("valid");
                verdict(true)
            }
            Err(e) => {
                println!("invalid: {}", e.describe(&vars));
                verdict(false)
            }
        };
    }
    let Some(text) = &args.inequality else {
        bail!("give --check FILE, or an inequality with --search or --certify");
    };
    let goal = goal_of(text, &mut vars)?;
    if args.certify {
        return match certify(&mut vars, args.basis, &goal) {
            Ok(c) => {
                let summary = format!("{} {}: {} links", args.basis, c.case, c.chain.links.len());
                if !args.emit {
                    println!("{summary}");
                    for l in &c.chain.links {
                        println!("  {}", format_link(l, &vars));
                    }
                } else {
                    eprintln!("{summary}");
                    let file = io::chain_file(&c.chain, Some(&goal.lhs.clone().into()), &vars);
                    println!("{}", serde_json::to_string_pretty(&file)?);
                }
                verdict(true)
            }
            Err(CertifyError::DoesNotHold) => {
                println!("does not hold in {}", args.basis);
                verdict(false)
            }
            Err(e) => bail!(e),
        };
    }
    if !args.search {
        bail!("give --search or --certify");
    }
    let b = basis(&mut vars, args.basis, args.sigma_bound);
    let bounds = SearchBounds {
        depth: args.depth,
        ..SearchBounds::default()
    };
    match search_derivation(&b, &goal, bounds) {
        Some(s) => {
            if !args.emit {
                println!("found a derivation in {} steps", s.steps.len());
                for st in &s.steps {
                    println!("  {}", format_step(st, &vars));
                }
            } else {
                let target = goal.to_identity().rhs;
                println!("{}", serde_json::to_string_pretty(&io::script_file(&s, Some(&target), &vars))?);
            }
            verdict(true)
        }
        None => {
            println!("no derivation within depth {}", args.depth);
            println!("goal: {} <= {}", format_word(&goal.lhs, &vars), format_term(&goal.rhs, &vars));
            verdict(false)
        }
    }
}

fn reproduce(args: ReproduceArgs, budget: u128) -> Result<Result<(), Refuted>> {
    if args.list {
        for c in aisr::claims::CLAIMS {
            println!("{:<16} {:>2}  {}", c.id, c.criterion, c.description);
        }
        return verdict(true);
    }
    if !args.all && args.claim.is_empty() {
        bail!("give --all or --claim ID");
    }
    let mut bounds = Bounds {
        budget,
        ..Bounds::default()
    };
    if let Some(s) = args.sigma_max {
        bounds.sigma_max = s;
    }
    if let Some(m) = args.m_max {
        bounds.m_max = m;
    }
    if let Some(n) = args.samples {
        bounds.quadruple_samples = n;
    }
    let r = report::run(&args.claim, &bounds).map_err(anyhow::Error::msg)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&r).context("serializing the report")?);
    } else {
        print!("{}", r.to_text());
    }
    verdict(!r.any_refuted())
}
