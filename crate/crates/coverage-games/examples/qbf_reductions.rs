//! Quantified formulas as games: QBF truth becomes coverage in the assignment
//! game (one agent per variable camps on its chosen literal), and ∃X ∀Y
//! formulas become disruption instances two ways — by negating into the
//! assignment game, or through the dedicated two-agent co-Büchi construction
//! with assignment and refute sub-graphs.

use coverage_games::coverage::decide_coverage;
use coverage_games::disruption::{solve_disruption, DisruptionConfig};
use coverage_games::game::ObjectiveKind;
use coverage_games::reductions::{
    from_2qbf_disruption, from_qbf, qbf_brute, Matrix, QbfFormula, Quantifier, TwoQbfTarget,
};

fn main() {
    let config = DisruptionConfig::default();

    // ∀x1 ∃x2 (x1 ∨ x2) ∧ (¬x1 ∨ x2): true, x2 = 1 always works.
    let qbf = QbfFormula::new(
        vec![(Quantifier::ForAll, 1), (Quantifier::Exists, 2)],
        Matrix::Cnf(vec![[1, 2, 2], [-1, 2, 2]]),
    )
    .unwrap();
    println!("∀x1 ∃x2 (x1∨x2)(¬x1∨x2): truth = {}", qbf_brute(&qbf));
    for kind in [ObjectiveKind::Buchi, ObjectiveKind::CoBuchi] {
        let game = from_qbf(&qbf, kind).unwrap();
        println!(
            "  {kind:?} assignment game ({} vertices, {} agents): coverage = {}",
            game.graph.len(),
            game.agents,
            decide_coverage(&game)
        );
    }

    // ∃x1 ∀y2 (x1∧y2) ∨ (x1∧¬y2): true via x1 = 1.
    let two = QbfFormula::new(
        vec![(Quantifier::Exists, 1), (Quantifier::ForAll, 2)],
        Matrix::Dnf(vec![[1, 2, 2], [1, -2, -2]]),
    )
    .unwrap();
    println!("\n∃x1 ∀y2 (x1∧y2)∨(x1∧¬y2): truth = {}", qbf_brute(&two));
    for target in [
        TwoQbfTarget::General(ObjectiveKind::Buchi),
        TwoQbfTarget::General(ObjectiveKind::CoBuchi),
        TwoQbfTarget::CoBuchiTwoAgent,
    ] {
        let game = from_2qbf_disruption(&two, target).unwrap();
        let (verdict, _) = solve_disruption(&game, &config).unwrap();
        println!(
            "  {target:?} ({} vertices, {} objectives): disruption = {verdict}",
            game.graph.len(),
            game.objective_count()
        );
    }
}
