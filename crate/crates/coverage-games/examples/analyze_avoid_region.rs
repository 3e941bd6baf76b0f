//! The structure behind the coverage algorithm, on the patrol game: three
//! colored stations that a single agent can only cover round-robin, and two
//! exit vertices where the agents must split differently. The decomposition
//! points are exactly the exits, and the avoid region is the patrol loop
//! Disruptor can keep the play in.

use coverage_games::coverage::{is_decomposable, CoverageSolver};
use coverage_games::io::game_to_dot;
use coverage_games::reductions::fixture_round_robin;

fn main() {
    let game = fixture_round_robin();
    let graph = &game.graph;
    let names = |set: &coverage_games::VertexSet| -> Vec<&str> {
        set.iter().map(|v| graph.id(v)).collect()
    };

    let mut solver = CoverageSolver::new(&game);
    let analysis = solver.top_analysis();
    println!("decomposition points: {:?}", names(&analysis.decomposable));
    println!("avoid region:         {:?}", names(&analysis.avoid));
    println!(
        "single-play All win inside it: {:?}",
        names(&analysis.avoid_win)
    );
    println!(
        "coverage winning set: {:?}",
        names(&solver.winning_set(game.agents, game.all_objectives()))
    );
    assert!(!is_decomposable(&game, graph.initial()));

    println!("\nstrongly connected components (sinks first):");
    for (component, trivial) in graph.scc_decomposition() {
        println!("  {:?} trivial={trivial}", names(&component));
    }

    println!("\nDOT rendering:\n{}", game_to_dot(&game));
}
