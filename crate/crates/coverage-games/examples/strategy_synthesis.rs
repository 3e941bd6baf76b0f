//! Synthesize a structured covering strategy and verify it independently.
//!
//! The non-decomposable fixture forces dynamic allocation: Disruptor's
//! opening move decides which sink covers which objective, so the tree is a
//! march to her successor vertices followed by a different split at each.

use coverage_games::coverage::{solve_coverage, verify_covering_strategy, CoveringStrategyTree};
use coverage_games::game::ObjectiveKind;
use coverage_games::io::strategy_tree_to_json;
use coverage_games::reductions::fixture_nondecomposable;

fn describe(tree: &CoveringStrategyTree, indent: usize) {
    let pad = "  ".repeat(indent);
    match tree {
        CoveringStrategyTree::Leaf(leaf) => {
            println!("{pad}leaf over {} vertices", leaf.region.count());
        }
        CoveringStrategyTree::March(march) => {
            println!("{pad}march to {} decomposition points", march.splits.len());
            for split in &march.splits {
                println!("{pad}  split at vertex #{}", split.at);
                for part in &split.parts {
                    println!(
                        "{pad}    {} agent(s) take objectives {:?}",
                        part.agents, part.objectives
                    );
                    describe(&part.child, indent + 3);
                }
            }
        }
        CoveringStrategyTree::Split(split) => {
            println!("{pad}split at vertex #{}", split.at);
            for part in &split.parts {
                describe(&part.child, indent + 1);
            }
        }
    }
}

fn main() {
    let game = fixture_nondecomposable(2, ObjectiveKind::Buchi).unwrap();
    let (covered, tree) = solve_coverage(&game);
    assert!(covered);
    let tree = tree.unwrap();

    println!("covering strategy for the k=2 non-decomposable game:");
    describe(&tree, 1);

    let outcome = verify_covering_strategy(&game, &tree).unwrap();
    println!("\nindependent verification: {outcome:?}");

    println!("\nserialized tree:\n{}", strategy_tree_to_json(&game, &tree));
}
