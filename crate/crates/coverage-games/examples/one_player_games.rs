//! One-player coverage: when Coverer owns every vertex, the game reduces to
//! picking k lassos, and the vertex-cover reduction shows why it stays hard.
//! When Disruptor owns everything, a single lasso violating one objective
//! settles the game.

use coverage_games::game::{CoverageGame, GameGraph, Objective, ObjectiveKind, Player};
use coverage_games::VertexSet;
use coverage_games::io::lasso_to_json;
use coverage_games::one_player::{
    coverage_one_player_coverer, disruption_one_player_disruptor, maximal_satisfiable_sets,
};
use coverage_games::reductions::{from_vertex_cover, vertex_cover_brute, UndirectedGraph};

fn main() {
    // Coverage over a triangle: two sinks cover all three edges, one cannot.
    let triangle = UndirectedGraph::complete(3);
    for k in [1u32, 2] {
        let game = from_vertex_cover(&triangle, k, ObjectiveKind::Buchi).unwrap();
        let covered = coverage_one_player_coverer(&game).unwrap();
        println!(
            "triangle, {k} agent(s): coverage = {covered} (vertex cover of size {k} exists: {})",
            vertex_cover_brute(&triangle, k)
        );
    }

    let game = from_vertex_cover(&triangle, 2, ObjectiveKind::Buchi).unwrap();
    let sets = maximal_satisfiable_sets(&game).unwrap();
    println!("\nmaximal objective sets one play can satisfy, with witnesses:");
    for (mask, lasso) in &sets.members {
        let labels: Vec<&str> = mask.iter().map(|i| game.objectives[i].label.as_str()).collect();
        println!("  {:?} via {}", labels, lasso_to_json(&game.graph, lasso).replace('\n', " "));
    }

    // Disruptor-owned: she drives all tokens along one play.
    let graph = GameGraph::build(
        &[("v0", Player::Disruptor), ("a", Player::Disruptor), ("b", Player::Disruptor)],
        &[(0, 1), (0, 2), (1, 1), (2, 2)],
        0,
    )
    .unwrap();
    let game = CoverageGame::new(
        graph,
        3,
        ObjectiveKind::Buchi,
        vec![Objective { label: "visit-a".into(), vertices: VertexSet::singleton(3, 1) }],
    );
    let (disrupted, witness) = disruption_one_player_disruptor(&game).unwrap();
    println!("\nDisruptor-owned fork: disruption = {disrupted} (agent count is irrelevant)");
    println!("violating lasso: {}", lasso_to_json(&game.graph, &witness.unwrap()).replace('\n', " "));
}
