//! A checked chain is sound: every catalog algebra satisfying the basis
//! satisfies the goal.

use aisr::claims::{delta2_chain, case_chains, scab_case2_chain};
use aisr_core::catalog::{by_name, NAMES};
use aisr_core::proof::chain_proves;
use aisr_core::{Formula, VarTable};

const BUDGET: u128 = 10_000_000;

#[test]
fn chains_are_sound_in_the_catalog() {
    let mut vars = VarTable::new();
    let mut chains: Vec<_> = case_chains(&mut vars).into_iter().map(|c| (c.goal, c.chain)).collect();
    chains.push(scab_case2_chain(&mut vars));
    chains.push(delta2_chain(&mut vars));
    let algebras: Vec<_> = NAMES.iter().map(|n| by_name(n).unwrap()).collect();
    let mut nonvacuous = 0;
    for (goal, chain) in &chains {
        chain_proves(chain, goal).unwrap();
        let g = Formula::Inequality(goal.clone());
        for a in &algebras {
            let models_basis = chain.basis.members().iter().all(|(_, f)| {
                a.satisfies_within(f, BUDGET).map(|s| s.holds).unwrap_or(false)
            });
            if models_basis {
                nonvacuous += 1;
                assert!(
                    a.satisfies(&g).unwrap().holds,
                    "{:?} models the basis but not {}",
                    a.name(),
                    goal.display(&vars)
                );
            }
        }
    }
    assert!(nonvacuous >= chains.len());
}
