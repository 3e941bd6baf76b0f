//! The classic sub-solvers on their own: attractors, single-objective Büchi
//! and co-Büchi games with memoryless strategies, and a generalized Büchi
//! winning cage with one witness strategy per conjunct.

use coverage_games::game::{GameGraph, Player};
use coverage_games::VertexSet;
use coverage_games::solvers::{attractor, solve_all_buchi, solve_buchi, solve_cobuchi};

fn main() {
    // A ring where Disruptor picks the way round and Coverer can dodge the
    // trap on one of the branches.
    let graph = GameGraph::build(
        &[
            ("a", Player::Coverer),
            ("b", Player::Disruptor),
            ("c", Player::Coverer),
            ("d", Player::Coverer),
            ("trap", Player::Coverer),
        ],
        &[(0, 1), (1, 2), (1, 3), (2, 0), (3, 0), (3, 4), (4, 4)],
        0,
    )
    .unwrap();
    let names = |set: &VertexSet| -> Vec<&str> { set.iter().map(|v| graph.id(v)).collect() };

    let target = VertexSet::singleton(graph.len(), 0);
    let reach = attractor(&graph, &graph.full_set(), Player::Coverer, &target);
    println!("Coverer attractor of {{a}}: {:?}", names(&reach));

    let buchi = solve_buchi(&graph, &target, Player::Coverer);
    println!("Büchi({{a}}) winning set:   {:?}", names(&buchi.winning));

    let trap = VertexSet::singleton(graph.len(), 4);
    let cobuchi = solve_cobuchi(&graph, &trap, Player::Coverer);
    println!("co-Büchi({{trap}}) winning: {:?}", names(&cobuchi.winning));

    // Two alternating targets on a Coverer-owned cycle.
    let cycle = GameGraph::build(
        &[("p", Player::Coverer), ("q", Player::Coverer), ("r", Player::Coverer)],
        &[(0, 1), (1, 2), (2, 0), (1, 0)],
        0,
    )
    .unwrap();
    let sets = [VertexSet::singleton(3, 0), VertexSet::singleton(3, 2)];
    let sol = solve_all_buchi(&cycle, &sets, Player::Coverer);
    let cage = sol.cage.expect("the cycle wins the conjunction");
    println!("\nAll-Büchi cage on the 3-cycle: {} vertices", cage.cage.count());
    for (i, witness) in cage.witnesses.iter().enumerate() {
        let moves: Vec<String> = witness
            .domain()
            .map(|(v, t)| format!("{}→{}", cycle.id(v), cycle.id(t)))
            .collect();
        println!("  witness {i}: {}", moves.join(", "));
    }
    cage.validate(&cycle, &sets, Player::Coverer).unwrap();
}
