//! Coverage games need not be determined: in the seven-vertex fixture with
//! two agents and three objectives, neither Coverer has a covering strategy
//! nor Disruptor a disrupting one. A third agent tips the game to Coverer.

use coverage_games::coverage::decide_coverage;
use coverage_games::disruption::{solve_disruption, DisruptionConfig};
use coverage_games::game::ObjectiveKind;
use coverage_games::reductions::fixture_undetermined;

fn main() {
    let config = DisruptionConfig::default();
    for kind in [ObjectiveKind::Buchi, ObjectiveKind::CoBuchi] {
        let game = fixture_undetermined(kind);
        let covered = decide_coverage(&game);
        let (disrupted, _) = solve_disruption(&game, &config).unwrap();
        println!("{kind:?} game, {} agents:", game.agents);
        println!("  Coverer has a covering strategy:    {covered}");
        println!("  Disruptor has a disrupting strategy: {disrupted}");
        assert!(!covered && !disrupted, "the fixture is undetermined");

        let mut richer = game.clone();
        richer.agents = 3;
        println!("  with a third agent, coverage holds: {}", decide_coverage(&richer));

        let mut poorer = game.clone();
        poorer.agents = 1;
        let (disrupted, _) = solve_disruption(&poorer, &config).unwrap();
        println!("  with a single agent, disruption holds: {disrupted}");
        println!();
    }
}
