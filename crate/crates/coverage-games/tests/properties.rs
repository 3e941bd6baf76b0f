//! Invariant and property tests across the solver stack: graph analyses,
//! determinacy, strategy replay, Δ-family domination, fairness-pair semantics
//! against the literal candidate enumeration, coverage monotonicity, and the
//! synthesis/verification round trip.

mod common;

use proptest::prelude::*;
use rand::Rng;

use common::{random_game, random_one_player_game, rng, CorpusParams, BOTH_KINDS};
use coverage_games::bitset::{ObjectiveIndexSet, VertexSet};
use coverage_games::coverage::{
    decide_coverage, is_decomposable_into, solve_coverage, verify_covering_strategy,
    CoverageSolver,
};
use coverage_games::disruption::{
    delta_sets, enumerate_fairness_pairs, fairness_pair_is_disrupting, is_disrupting_memoryless,
    solve_disruption_cobuchi, DisruptionConfig, FairnessPair,
};
use coverage_games::exhaustive::{replay, StrategyEnumeration};
use coverage_games::game::{CoverageGame, GameGraph, ObjectiveKind, Player};
use coverage_games::io::{game_to_json, parse_game};
use coverage_games::one_player::maximal_satisfiable_sets;
use coverage_games::solvers::{
    attractor, solve_all_buchi, solve_buchi, solve_cobuchi, superset_to_all_buchi,
};

fn graph_strategy() -> impl Strategy<Value = GameGraph> {
    (2usize..=7).prop_flat_map(|n| {
        (
            proptest::collection::vec(proptest::collection::btree_set(0..n, 1..=3), n),
            proptest::collection::vec(any::<bool>(), n),
            0..n,
        )
            .prop_map(move |(succs, owners, initial)| {
                let vertices: Vec<(String, Player)> = owners
                    .iter()
                    .enumerate()
                    .map(|(i, &coverer)| {
                        let owner = if coverer { Player::Coverer } else { Player::Disruptor };
                        (format!("q{i}"), owner)
                    })
                    .collect();
                let mut edges = Vec::new();
                for (v, targets) in succs.iter().enumerate() {
                    for &w in targets {
                        edges.push((v, w));
                    }
                }
                GameGraph::new(vertices, &edges, initial).expect("total by construction")
            })
    })
}

fn vertex_subset(graph: &GameGraph, bits: u64) -> VertexSet {
    VertexSet::from_indices(graph.len(), (0..graph.len()).filter(|&v| bits >> v & 1 == 1))
}

proptest! {
    #[test]
    fn restriction_is_idempotent(graph in graph_strategy(), bits in any::<u64>()) {
        let mut keep = vertex_subset(&graph, bits);
        keep.insert(graph.initial());
        if let Ok(first) = graph.restrict(&keep) {
            let second = first.restrict(&first.full_set()).unwrap();
            prop_assert_eq!(first, second);
        }
    }

    #[test]
    fn reachability_is_the_edge_closure(graph in graph_strategy(), from in 0usize..7) {
        let from = from % graph.len();
        let reach = graph.reachable(from).unwrap();
        // Brute-force closure: saturate under successor edges.
        let mut closure = VertexSet::singleton(graph.len(), from);
        loop {
            let mut grew = false;
            for v in 0..graph.len() {
                if closure.contains(v) {
                    for &w in graph.successors(v) {
                        if !closure.contains(w) {
                            closure.insert(w);
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        prop_assert_eq!(reach, closure);
    }

    #[test]
    fn scc_partition_and_order(graph in graph_strategy()) {
        let sccs = graph.scc_decomposition();
        let mut seen = VertexSet::empty(graph.len());
        for (comp, trivial) in &sccs {
            prop_assert!(!comp.intersects(&seen));
            seen.union_with(comp);
            if comp.count() == 1 {
                let v = comp.first().unwrap();
                prop_assert_eq!(*trivial, !graph.has_edge(v, v));
            } else {
                prop_assert!(!trivial);
            }
        }
        prop_assert_eq!(seen, graph.full_set());
        // Reverse-topological: edges stay within a component or point to an
        // earlier-listed one.
        let position: Vec<usize> = (0..graph.len())
            .map(|v| sccs.iter().position(|(c, _)| c.contains(v)).unwrap())
            .collect();
        for v in 0..graph.len() {
            for &w in graph.successors(v) {
                prop_assert!(position[w] <= position[v]);
            }
        }
    }

    #[test]
    fn attractor_complement_is_a_trap(graph in graph_strategy(), bits in any::<u64>()) {
        let target = vertex_subset(&graph, bits);
        for player in [Player::Coverer, Player::Disruptor] {
            let attr = attractor(&graph, &graph.full_set(), player, &target);
            let outside = attr.complement();
            for v in outside.iter() {
                if graph.owner(v) == player {
                    prop_assert!(graph.successor_set(v).is_subset(&outside));
                } else {
                    prop_assert!(graph.successor_set(v).intersects(&outside));
                }
            }
        }
    }

    #[test]
    fn game_json_round_trips(graph in graph_strategy(), bits in any::<u64>(), agents in 1u32..4) {
        let objectives = vec![coverage_games::game::Objective {
            label: "a0".into(),
            vertices: vertex_subset(&graph, bits),
        }];
        let game = CoverageGame::new(graph, agents, ObjectiveKind::Buchi, objectives);
        let back = parse_game(&game_to_json(&game)).unwrap();
        prop_assert_eq!(back, game);
    }
}

/// Single-objective determinacy: the protagonist's Büchi region and the
/// opponent's co-Büchi region partition the vertices.
#[test]
fn determinacy_partitions_the_graph() {
    let mut rng = rng(11);
    let params = CorpusParams::default();
    for case in 0..500 {
        let game = random_game(&mut rng, &params, ObjectiveKind::Buchi);
        let graph = &game.graph;
        let alpha = game
            .objectives
            .first()
            .map(|o| o.vertices.clone())
            .unwrap_or_else(|| VertexSet::empty(graph.len()));
        let mine = solve_buchi(graph, &alpha, Player::Coverer).winning;
        let theirs = solve_cobuchi(graph, &alpha, Player::Disruptor).winning;
        assert!(!mine.intersects(&theirs), "case {case}");
        assert_eq!(mine.union(&theirs), graph.full_set(), "case {case}");
    }
}

/// Replaying the returned single-objective strategies against every opponent
/// memoryless strategy yields satisfying lassos from every winning vertex.
#[test]
fn returned_strategies_win_under_replay() {
    let mut rng = rng(12);
    let params = CorpusParams { max_vertices: 6, ..Default::default() };
    for case in 0..120 {
        let game = random_game(&mut rng, &params, ObjectiveKind::Buchi);
        let graph = &game.graph;
        let alpha = game
            .objectives
            .first()
            .map(|o| o.vertices.clone())
            .unwrap_or_else(|| VertexSet::empty(graph.len()));
        for (kind, protagonist) in
            [(ObjectiveKind::Buchi, Player::Coverer), (ObjectiveKind::CoBuchi, Player::Disruptor)]
        {
            let sol = match kind {
                ObjectiveKind::Buchi => solve_buchi(graph, &alpha, protagonist),
                ObjectiveKind::CoBuchi => solve_cobuchi(graph, &alpha, protagonist),
            };
            let opponent = protagonist.opponent();
            for adversary in StrategyEnumeration::new(graph, &sol.winning, opponent) {
                for v in sol.winning.iter() {
                    let (coverer, disruptor) = match protagonist {
                        Player::Coverer => (&sol.strategy, &adversary),
                        Player::Disruptor => (&adversary, &sol.strategy),
                    };
                    let lasso = replay(graph, coverer, disruptor, v);
                    assert!(
                        lasso.satisfies(kind, &alpha),
                        "case {case} kind {kind:?} from {}",
                        graph.id(v)
                    );
                }
            }
        }
    }
}

/// The choice-product translation is equivalent to the superset condition on
/// every candidate infinity set, and the reduced internal variant agrees.
#[test]
fn superset_translation_truth_table() {
    let mut rng = rng(13);
    for case in 0..300 {
        let universe = rng.gen_range(1usize..=6);
        let family_count = rng.gen_range(1usize..=3);
        let families: Vec<Vec<VertexSet>> = (0..family_count)
            .map(|_| {
                let sets = rng.gen_range(1usize..=3);
                (0..sets)
                    .map(|_| {
                        let mut s = VertexSet::empty(universe);
                        for v in 0..universe {
                            if rng.gen_bool(0.4) {
                                s.insert(v);
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        let translation = superset_to_all_buchi(&families, universe);
        let expected_len: usize = families.iter().map(Vec::len).product();
        assert_eq!(translation.objectives.len(), expected_len, "case {case}");
        for bits in 0..(1u64 << universe) {
            let inf = VertexSet::from_indices(
                universe,
                (0..universe).filter(|&v| bits >> v & 1 == 1),
            );
            let satisfies_superset = families
                .iter()
                .any(|family| family.iter().all(|s| s.intersects(&inf)));
            let satisfies_all = translation.objectives.iter().all(|s| s.intersects(&inf));
            assert_eq!(satisfies_superset, satisfies_all, "case {case} inf {inf:?}");
        }
    }
}

/// Every play against a fixed memoryless Disruptor strategy satisfies a
/// subset of some member of its Δ-family.
#[test]
fn delta_family_dominates_outcomes() {
    let mut rng = rng(14);
    let params = CorpusParams { max_vertices: 6, ..Default::default() };
    for kind in BOTH_KINDS {
        for case in 0..120 {
            let game = random_game(&mut rng, &params, kind);
            let graph = &game.graph;
            for f2 in StrategyEnumeration::new(graph, &graph.full_set(), Player::Disruptor) {
                let delta = delta_sets(&game, &f2).unwrap();
                for f1 in StrategyEnumeration::new(graph, &graph.full_set(), Player::Coverer) {
                    let lasso = replay(graph, &f1, &f2, graph.initial());
                    let sat = game.satisfied_by_inf(&lasso.inf_set(graph.len()));
                    assert!(
                        delta.members.iter().any(|m| sat.is_subset(m)),
                        "case {case} kind {kind:?}: {sat:?} not dominated by {:?}",
                        delta.members
                    );
                }
            }
        }
    }
}

/// The optimized fairness-pair check agrees with the literal enumeration of
/// candidate infinity sets on every pair of small games.
#[test]
fn fairness_check_matches_literal_enumeration() {
    let mut rng = rng(15);
    let params = CorpusParams {
        max_vertices: 5,
        max_disruptor: 2,
        max_objectives: 3,
        max_agents: 3,
        ..Default::default()
    };
    let mut pairs_checked = 0usize;
    for case in 0..150 {
        let game = random_game(&mut rng, &params, ObjectiveKind::CoBuchi);
        for pair in enumerate_fairness_pairs(&game.graph, 1 << 16).unwrap() {
            pair.validate(&game.graph).unwrap();
            let fast = fairness_pair_is_disrupting(&game, &pair);
            let slow = literal_pair_is_disrupting(&game, &pair);
            assert_eq!(fast, slow, "case {case} region {:?}", pair.region);
            pairs_checked += 1;
        }
    }
    assert!(pairs_checked > 1000, "corpus too thin: {pairs_checked}");
}

/// Literal candidate scan: every subset of the region that is strongly
/// connected in the requirement-restricted sub-graph, closed under the
/// requirement, and whose unforced vertices are Coverer-successors.
fn literal_pair_is_disrupting(game: &CoverageGame, pair: &FairnessPair) -> bool {
    let graph = &game.graph;
    let n = graph.len();
    let members: Vec<usize> = pair.region.iter().collect();
    let mut satsets: Vec<ObjectiveIndexSet> = Vec::new();
    for bits in 1u64..(1 << members.len()) {
        let s = VertexSet::from_indices(
            n,
            members
                .iter()
                .enumerate()
                .filter(|&(i, _)| bits >> i & 1 == 1)
                .map(|(_, &v)| v),
        );
        if !literal_candidate(game, pair, &s) {
            continue;
        }
        let mut sat = ObjectiveIndexSet::empty(game.objective_count());
        for (i, obj) in game.objectives.iter().enumerate() {
            if !obj.vertices.intersects(&s) {
                sat.insert(i);
            }
        }
        satsets.push(sat);
    }
    let full = game.all_objectives();
    if full.is_empty() {
        return false;
    }
    satsets.sort();
    satsets.dedup();
    // Direct k-multiset union check.
    fn covers(satsets: &[ObjectiveIndexSet], left: u32, acc: ObjectiveIndexSet, full: ObjectiveIndexSet) -> bool {
        if acc == full {
            return true;
        }
        if left == 0 {
            return false;
        }
        satsets.iter().any(|s| covers(satsets, left - 1, acc.union(s), full))
    }
    !covers(&satsets, game.agents, ObjectiveIndexSet::empty(full.universe()), full)
}

fn literal_candidate(game: &CoverageGame, pair: &FairnessPair, s: &VertexSet) -> bool {
    let graph = &game.graph;
    // Requirement closure.
    for v in s.iter() {
        if graph.owner(v) == Player::Disruptor {
            match pair.requirement(v) {
                Some(r) if r.is_subset(s) => {}
                _ => return false,
            }
        }
    }
    // Strong connectivity of the induced requirement-restricted sub-graph.
    let succ_in = |v: usize| -> VertexSet {
        let base = match graph.owner(v) {
            Player::Coverer => graph.successor_set(v).intersection(&pair.region),
            Player::Disruptor => pair.requirement(v).cloned().unwrap(),
        };
        base.intersection(s)
    };
    for v in s.iter() {
        let mut seen = VertexSet::empty(graph.len());
        let mut stack = vec![v];
        seen.insert(v);
        while let Some(u) = stack.pop() {
            for w in succ_in(u).iter() {
                if !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        if !s.is_subset(&seen) {
            return false;
        }
    }
    // Unforced vertices must be Coverer-reachable inside the candidate.
    let mut forced = VertexSet::empty(graph.len());
    let mut coverer_succ = VertexSet::empty(graph.len());
    for v in s.iter() {
        match graph.owner(v) {
            Player::Disruptor => forced.union_with(pair.requirement(v).unwrap()),
            Player::Coverer => coverer_succ.union_with(graph.successor_set(v)),
        }
    }
    s.difference(&forced).is_subset(&coverer_succ)
}

/// A single Disruptor self-loop yields exactly the trivial fairness pair.
#[test]
fn fairness_pairs_on_a_self_loop() {
    let graph = GameGraph::build(&[("v0", Player::Disruptor)], &[(0, 0)], 0).unwrap();
    let pairs: Vec<FairnessPair> = enumerate_fairness_pairs(&graph, 1 << 10).unwrap().collect();
    assert_eq!(pairs.len(), 1);
    assert_eq!(pairs[0].region, graph.full_set());
    assert_eq!(pairs[0].requirement(0), Some(&VertexSet::singleton(1, 0)));
}

/// A memoryless disrupting strategy in a co-Büchi game implies the fairness
/// scan also reports disruption (one-sided: memoryless is incomplete there).
#[test]
fn memoryless_cobuchi_disruption_implies_fair_disruption() {
    let mut rng = rng(16);
    let params = CorpusParams {
        max_vertices: 6,
        max_disruptor: 2,
        max_objectives: 3,
        ..Default::default()
    };
    let config = DisruptionConfig::default();
    let mut hits = 0usize;
    for case in 0..200 {
        let game = random_game(&mut rng, &params, ObjectiveKind::CoBuchi);
        let any_memoryless = StrategyEnumeration::new(
            &game.graph,
            &game.graph.full_set(),
            Player::Disruptor,
        )
        .any(|f2| is_disrupting_memoryless(&game, &f2).unwrap());
        if any_memoryless {
            hits += 1;
            let (verdict, _) = solve_disruption_cobuchi(&game, &config).unwrap();
            assert!(verdict, "case {case}");
        }
    }
    assert!(hits > 20, "corpus too thin: {hits}");
}

/// Winning sets are monotone in agents and antitone in objectives.
#[test]
fn coverage_table_monotonicity() {
    let mut rng = rng(17);
    let params = CorpusParams { max_agents: 3, ..Default::default() };
    for kind in BOTH_KINDS {
        for case in 0..150 {
            let game = random_game(&mut rng, &params, kind);
            let mut solver = CoverageSolver::new(&game);
            let m = game.objective_count();
            let full = game.all_objectives();
            for k in 1..=2u32 {
                let now = solver.winning_set(k, full);
                let more = solver.winning_set(k + 1, full);
                assert!(now.is_subset(&more), "case {case} kind {kind:?} agents");
            }
            for i in 0..m {
                let mut without = full;
                without = without.difference(&ObjectiveIndexSet::singleton(m, i));
                let smaller = solver.winning_set(game.agents, full);
                let larger = solver.winning_set(game.agents, without);
                assert!(smaller.is_subset(&larger), "case {case} kind {kind:?} objectives");
            }
        }
    }
}

/// Wider decompositions imply narrower ones.
#[test]
fn decomposability_is_monotone_in_group_count() {
    let mut rng = rng(18);
    let params = CorpusParams { max_objectives: 4, max_agents: 3, ..Default::default() };
    for kind in BOTH_KINDS {
        for case in 0..120 {
            let mut game = random_game(&mut rng, &params, kind);
            game.agents = 3;
            let v = game.graph.initial();
            if is_decomposable_into(&game, v, 3) {
                assert!(is_decomposable_into(&game, v, 2), "case {case} kind {kind:?}");
            }
        }
    }
}

/// Synthesized covering strategies always verify.
#[test]
fn synthesis_verifies_round_trip() {
    let mut rng = rng(19);
    let params = CorpusParams { max_agents: 3, ..Default::default() };
    let mut wins = 0usize;
    for kind in BOTH_KINDS {
        for case in 0..300 {
            let game = random_game(&mut rng, &params, kind);
            let (verdict, tree) = solve_coverage(&game);
            assert_eq!(verdict, decide_coverage(&game));
            if let Some(tree) = tree {
                wins += 1;
                let outcome = verify_covering_strategy(&game, &tree).unwrap();
                assert!(
                    outcome.is_verified(),
                    "case {case} kind {kind:?}: {outcome:?}"
                );
            }
        }
    }
    assert!(wins > 100, "corpus too thin: {wins}");
}

/// One-player witnesses realize their satisfied sets and respect the length
/// bound.
#[test]
fn one_player_witnesses_are_faithful() {
    let mut rng = rng(20);
    let params = CorpusParams { max_vertices: 10, max_objectives: 4, ..Default::default() };
    for kind in BOTH_KINDS {
        for case in 0..200 {
            let game = random_one_player_game(&mut rng, &params, Player::Coverer, kind);
            let sets = maximal_satisfiable_sets(&game).unwrap();
            for (i, (mask, lasso)) in sets.members.iter().enumerate() {
                lasso.validate(&game.graph).unwrap();
                let sat = game.satisfied_by_inf(&lasso.inf_set(game.graph.len()));
                match kind {
                    // The witness loop realizes the member exactly.
                    ObjectiveKind::Buchi => assert_eq!(
                        sat, *mask,
                        "case {case} member {i}"
                    ),
                    // Avoiding more than required is allowed.
                    ObjectiveKind::CoBuchi => assert!(
                        mask.is_subset(&sat),
                        "case {case} member {i}"
                    ),
                }
                if kind == ObjectiveKind::Buchi {
                    let bound = game.graph.len() * game.objective_count().max(1);
                    assert!(
                        lasso.len() <= bound,
                        "case {case} member {i}: {} > {bound}",
                        lasso.len()
                    );
                }
                // Antichain.
                for (j, (other, _)) in sets.members.iter().enumerate() {
                    if i != j {
                        assert!(!mask.is_subset(other), "case {case}: {i} inside {j}");
                    }
                }
            }
        }
    }
}

/// One-sided coverage oracle: if some memoryless strategy vector covers the
/// objectives even against a Disruptor allowed to answer each agent
/// independently — an over-approximation of her real power, since she must
/// answer shared histories identically — then the solver must report
/// coverage.
#[test]
fn memoryless_vector_coverage_implies_solver_coverage() {
    let mut rng = rng(22);
    let params = CorpusParams {
        max_vertices: 5,
        max_degree: 2,
        max_agents: 2,
        max_objectives: 3,
        ..Default::default()
    };
    let mut hits = 0usize;
    for kind in BOTH_KINDS {
        for case in 0..250 {
            let game = random_game(&mut rng, &params, kind);
            let graph = &game.graph;
            let strategies: Vec<_> =
                StrategyEnumeration::new(graph, &graph.full_set(), Player::Coverer).collect();
            if strategies.is_empty() {
                continue;
            }
            // Self-contained play analysis for one agent: with the agent's
            // strategy fixed, the graph is one-player for Disruptor.
            let induced = |f: &coverage_games::MemorylessStrategy| -> Vec<Vec<usize>> {
                (0..graph.len())
                    .map(|v| match graph.owner(v) {
                        Player::Coverer => vec![f.get(v).unwrap()],
                        Player::Disruptor => graph.successors(v).to_vec(),
                    })
                    .collect()
            };
            let reach_from = |succ: &[Vec<usize>], start: usize| -> Vec<bool> {
                let mut seen = vec![false; succ.len()];
                seen[start] = true;
                let mut stack = vec![start];
                while let Some(v) = stack.pop() {
                    for &w in &succ[v] {
                        if !seen[w] {
                            seen[w] = true;
                            stack.push(w);
                        }
                    }
                }
                seen
            };
            // Can a play be steered to eventually miss / hit the set forever?
            let agent_defeats = |f: &coverage_games::MemorylessStrategy,
                                 obj: &VertexSet|
             -> bool {
                let succ = induced(f);
                let reach = reach_from(&succ, graph.initial());
                match kind {
                    // Miss a Büchi set: a reachable cycle clear of it.
                    ObjectiveKind::Buchi => (0..graph.len()).any(|s| {
                        reach[s]
                            && !obj.contains(s)
                            && cycle_back(&succ, s, &|v| reach[v] && !obj.contains(v))
                    }),
                    // Miss a co-Büchi set: a reachable cycle through it.
                    ObjectiveKind::CoBuchi => (0..graph.len()).any(|s| {
                        reach[s] && obj.contains(s) && cycle_back(&succ, s, &|v| reach[v])
                    }),
                }
            };
            // Agents are interchangeable, so scan unordered pairs.
            let k = game.agents.min(2) as usize;
            let mut vector_covers = false;
            'vectors: for a in 0..strategies.len() {
                let picks_b: Vec<usize> =
                    if k == 2 { (a..strategies.len()).collect() } else { vec![a] };
                for &b in &picks_b {
                    let agents = [&strategies[a], &strategies[b]];
                    let defeated = game
                        .objectives
                        .iter()
                        .any(|obj| agents[..k].iter().all(|f| agent_defeats(f, &obj.vertices)));
                    if !defeated {
                        vector_covers = true;
                        break 'vectors;
                    }
                }
            }
            if vector_covers {
                hits += 1;
                assert!(
                    decide_coverage(&game),
                    "case {case} kind {kind:?}: a covering vector exists but the solver says no"
                );
            }
        }
    }
    assert!(hits > 100, "corpus too thin: {hits}");
}

/// Is there a nonempty walk from `start` back to itself through vertices the
/// filter admits?
fn cycle_back(succ: &[Vec<usize>], start: usize, admit: &dyn Fn(usize) -> bool) -> bool {
    let mut seen = vec![false; succ.len()];
    let mut stack: Vec<usize> = succ[start]
        .iter()
        .copied()
        .filter(|&w| admit(w))
        .collect();
    while let Some(v) = stack.pop() {
        if v == start {
            return true;
        }
        if seen[v] {
            continue;
        }
        seen[v] = true;
        for &w in &succ[v] {
            if admit(w) && !seen[w] {
                stack.push(w);
            }
        }
    }
    false
}

/// All-Büchi winning sets coincide with the exhaustive evaluation (also run
/// in the acceptance suite; kept here at a smaller scale for quick feedback).
#[test]
fn all_buchi_smoke_against_exhaustive() {
    let mut rng = rng(21);
    let params = CorpusParams { max_vertices: 5, ..Default::default() };
    for case in 0..60 {
        let game = random_game(&mut rng, &params, ObjectiveKind::Buchi);
        let sets: Vec<VertexSet> = game.objectives.iter().map(|o| o.vertices.clone()).collect();
        let fix = solve_all_buchi(&game.graph, &sets, Player::Coverer).winning;
        let brute = coverage_games::exhaustive::all_buchi_win_set(
            &game.graph,
            &sets,
            Player::Coverer,
        );
        assert_eq!(fix, brute, "case {case}");
    }
}
