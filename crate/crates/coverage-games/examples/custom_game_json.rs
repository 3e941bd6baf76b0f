//! Load a game from the JSON interchange format, validate it, solve both
//! problems, and write it back out.

use coverage_games::coverage::decide_coverage;
use coverage_games::disruption::{solve_disruption, DisruptionConfig};
use coverage_games::game::validate;
use coverage_games::io::{game_to_json, parse_game};

const GAME: &str = r#"{
  "vertices": [
    {"id": "hub", "owner": 2},
    {"id": "east", "owner": 1},
    {"id": "west", "owner": 1},
    {"id": "depot", "owner": 1}
  ],
  "initial": "hub",
  "edges": [
    ["hub", "east"], ["hub", "west"],
    ["east", "depot"], ["west", "depot"],
    ["depot", "hub"], ["depot", "depot"]
  ],
  "objective_kind": "buchi",
  "objectives": [
    {"label": "east-patrol", "vertices": ["east"]},
    {"label": "west-patrol", "vertices": ["west"]},
    {"label": "resupply", "vertices": ["depot"]}
  ],
  "agents": 2
}"#;

fn main() {
    let game = parse_game(GAME).expect("well-formed game");
    let violations = validate(&game);
    assert!(violations.is_empty(), "{violations:?}");
    println!(
        "loaded {} vertices, {} edges, {} objectives, {} agents",
        game.graph.len(),
        game.graph.edge_count(),
        game.objective_count(),
        game.agents
    );

    let covered = decide_coverage(&game);
    let (disrupted, _) = solve_disruption(&game, &DisruptionConfig::default()).unwrap();
    println!("coverage = {covered}, disruption = {disrupted}");

    println!("\ncanonical serialization:\n{}", game_to_json(&game));
}
