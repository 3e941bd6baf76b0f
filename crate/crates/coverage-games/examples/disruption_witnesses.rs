//! Disruption witnesses in both flavors: a memoryless strategy for a Büchi
//! game, and a symbolic fairness pair (trap region plus per-vertex successor
//! requirements) for a co-Büchi game, where memoryless strategies are not
//! enough in general.

use coverage_games::disruption::{
    is_disrupting_memoryless, solve_disruption_buchi, solve_disruption_cobuchi, DisruptionConfig,
};
use coverage_games::game::ObjectiveKind;
use coverage_games::io::{fairness_pair_to_json, memoryless_to_json};
use coverage_games::reductions::fixture_undetermined;

fn main() {
    let config = DisruptionConfig::default();

    // Against a single agent the undetermined fixture is disruptable: any
    // choice at v2 leaves some objective uncovered by one play.
    let mut buchi = fixture_undetermined(ObjectiveKind::Buchi);
    buchi.agents = 1;
    let (disrupted, witness) = solve_disruption_buchi(&buchi, &config).unwrap();
    assert!(disrupted);
    let witness = witness.unwrap();
    println!("Büchi game, one agent — memoryless disrupting strategy:");
    println!("{}", memoryless_to_json(&buchi.graph, &witness));
    assert!(is_disrupting_memoryless(&buchi, &witness).unwrap());

    let mut cobuchi = fixture_undetermined(ObjectiveKind::CoBuchi);
    cobuchi.agents = 1;
    let (disrupted, pair) = solve_disruption_cobuchi(&cobuchi, &config).unwrap();
    assert!(disrupted);
    let pair = pair.unwrap();
    println!("\nco-Büchi game, one agent — fairness pair (U, g):");
    println!("{}", fairness_pair_to_json(&cobuchi.graph, &pair));
    pair.validate(&cobuchi.graph).unwrap();

    // With both agents the fixture is undetermined, so the scans exhaust
    // their candidate spaces and report nothing.
    let two = fixture_undetermined(ObjectiveKind::CoBuchi);
    let (disrupted, _) = solve_disruption_cobuchi(&two, &config).unwrap();
    println!("\nsame game with two agents: disruption = {disrupted}");
}
