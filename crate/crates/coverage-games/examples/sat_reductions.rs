//! One 3CNF formula, three labeled games: two-agent Büchi coverage, one-player
//! co-Büchi coverage, and two-agent Büchi disruption all decide exactly
//! satisfiability.

use coverage_games::coverage::decide_coverage;
use coverage_games::disruption::{solve_disruption_buchi, DisruptionConfig};
use coverage_games::one_player::coverage_one_player_coverer;
use coverage_games::reductions::{from_3sat, sat_brute, CnfFormula, SatTarget};

fn check(formula: &CnfFormula, name: &str) {
    let expected = sat_brute(formula);
    println!("{name}: satisfiable = {expected}");

    let cover = from_3sat(formula, SatTarget::TwoAgentBuchiCoverage).unwrap();
    println!(
        "  two-agent Büchi coverage   ({:2} vertices): {}",
        cover.graph.len(),
        decide_coverage(&cover)
    );

    let one = from_3sat(formula, SatTarget::OnePlayerCoBuchi).unwrap();
    println!(
        "  one-player co-Büchi cover  ({:2} vertices): {}",
        one.graph.len(),
        coverage_one_player_coverer(&one).unwrap()
    );

    let disrupt = from_3sat(formula, SatTarget::TwoAgentBuchiDisruption).unwrap();
    let (verdict, witness) = solve_disruption_buchi(&disrupt, &DisruptionConfig::default()).unwrap();
    println!("  two-agent Büchi disruption ({:2} vertices): {verdict}", disrupt.graph.len());
    if let Some(w) = witness {
        let picks: Vec<String> = w
            .domain()
            .map(|(v, t)| format!("{}→{}", disrupt.graph.id(v), disrupt.graph.id(t)))
            .collect();
        println!("    witness assignment: {}", picks.join(", "));
    }
    println!();
}

fn main() {
    let satisfiable = CnfFormula::from_clauses(2, &[vec![1, 2], vec![-1, 2]]).unwrap();
    check(&satisfiable, "(x1 ∨ x2) ∧ (¬x1 ∨ x2)");

    let contradiction = CnfFormula::from_clauses(1, &[vec![1], vec![-1]]).unwrap();
    check(&contradiction, "x1 ∧ ¬x1");
}
