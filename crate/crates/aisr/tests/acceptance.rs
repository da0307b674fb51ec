//! The ten acceptance criteria. Each prints one PASS/FAIL line; run with
//! `cargo test -p aisr --test acceptance -- --nocapture` to see them.

use std::time::Duration;

use aisr::claims::{find, Bounds, Status};
use aisr::report::{run_claim, Item};

/// (criterion, claim id, time limit)
const CRITERIA: [(u8, &str, Duration); 10] = [
    (1, "axioms", Duration::from_secs(1)),
    (2, "sr6-identities", Duration::from_secs(60)),
    (3, "separation", Duration::from_secs(5)),
    (4, "deciders", Duration::from_secs(300)),
    (5, "freeness", Duration::from_secs(120)),
    (6, "subterm-free", Duration::from_secs(30)),
    (7, "proofs", Duration::from_secs(10)),
    (8, "lattice", Duration::from_secs(120)),
    (9, "minimality", Duration::from_secs(30)),
    (10, "monotone", Duration::from_secs(60)),
];

/// Bounds the criteria are stated with.
fn bounds() -> Bounds {
    let b = Bounds::default();
    assert_eq!(b.sigma_max, 4);
    assert_eq!(b.m_max, 4);
    assert_eq!(b.corpus_vars, 4);
    assert_eq!(b.random_triples, 10_000);
    b
}

fn has(item: &Item, needle: &str) -> bool {
    item.details.iter().any(|d| d.contains(needle) && !d.starts_with("FAILED"))
}

/// Specific evidence each criterion asks for, beyond the claim's own status.
fn evidence(criterion: u8, item: &Item) -> Result<(), String> {
    let need: &[&str] = match criterion {
        1 => &["SR6: size 6, 0 violations", "Sc:abc: size 8, 0 violations", "Sc:ab0: size 5, 0 violations"],
        2 => &["sigma:4: holds over 6^9 assignments", "SR04: holds"],
        3 => &["fails in SR6 at x1=2, x2=6, x3=5, x4=4", "delta_3 holds in Sc:ab"],
        4 => &[
            "decide_scab vs Sc:ab: ",
            "decide_d2 vs D2: ",
            "decide_s0 vs Sc:ab0: ",
            "decide_sr6 vs SR6: ",
            "over 4 variables",
        ],
        5 => &["u^(4) is u^(3)-free", "u^(4) is not u^(4)-free", "(x1 + x2*x3*x4)-free", "(x*y*z)-free"],
        6 => &["10000 triples", "0 violations"],
        7 => &["Scab case4", "SR6 case3: q <= x1*x2 + x2*x3 + x3*x4 + x4*x5 + x5*x1", "Sca case1", "delta_2 from delta_1", "rejected at link 2"],
        8 => &["image {1,3,5,6}", "pairs with a^2 != ab, 0 failures", "quotient by R1..R6 is SR6", "sampled quadruples"],
        9 => &["1 satisfy (SR04)", "is Sc:a", "D2 is among them"],
        10 => &["SR6 => Sc:ab: 0 exceptions", "Sc:ab => Sc:a: 0 exceptions", "(26022301) separates", "(t01) separates"],
        _ => &[],
    };
    for n in need {
        if !has(item, n) {
            return Err(format!("missing evidence `{n}`"));
        }
    }
    if criterion == 4 && item.details.iter().skip(1).any(|d| !d.contains(", 0 discrepancies")) {
        return Err("discrepancies".into());
    }
    Ok(())
}

#[test]
fn acceptance() {
    let b = bounds();
    let mut failures = Vec::new();
    for (criterion, id, limit) in CRITERIA {
        let claim = find(id).expect("registered claim");
        assert_eq!(claim.criterion, criterion);
        let item = run_claim(claim, &b);
        let elapsed = Duration::from_millis(item.elapsed_ms as u64);
        let verdict = if item.status != Status::Verified {
            Err(format!("status {}", item.status.as_str()))
        } else if elapsed > limit {
            Err(format!("took {elapsed:?}, limit {limit:?}"))
        } else {
            evidence(criterion, &item)
        };
        match &verdict {
            Ok(()) => println!("PASS criterion {criterion:>2} [{id}] {elapsed:?} (limit {limit:?})"),
            Err(why) => {
                println!("FAIL criterion {criterion:>2} [{id}] {elapsed:?} (limit {limit:?}): {why}");
                for d in &item.details {
                    println!("    {d}");
                }
                failures.push(criterion);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
