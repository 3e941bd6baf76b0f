//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Every criterion runs at desk scale with pinned tolerances; the corpora are
//! seeded, so all runs check the same instances.

mod common;

use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use common::{random_game, random_one_player_game, rng, CorpusParams, BOTH_KINDS};
use coverage_games::bitset::VertexSet;
use coverage_games::coverage::{
    decide_coverage, is_decomposable, is_decomposable_into, solve_coverage,
    verify_covering_strategy, CoverageSolver,
};
use coverage_games::disruption::{
    solve_disruption, solve_disruption_buchi, solve_disruption_cobuchi,
    solve_disruption_fixed_beta, DisruptionConfig,
};
use coverage_games::exhaustive;
use coverage_games::game::{validate, CoverageGame, ObjectiveKind, Player};
use coverage_games::one_player::{
    coverage_one_player_coverer, coverage_one_player_disruptor, disruption_one_player_disruptor,
};
use coverage_games::reductions::{
    fixture_nondecomposable, fixture_partial_decomposable, fixture_undetermined, from_2qbf_disruption,
    from_3sat, from_qbf, qbf_brute, sat_brute, CnfFormula, Matrix, QbfFormula, Quantifier,
    SatTarget, TwoQbfTarget,
};
use coverage_games::solvers::{solve_all_buchi, solve_buchi, solve_cobuchi};

fn pass(criterion: u32, started: Instant, budget: Duration, detail: &str) {
    let elapsed = started.elapsed();
    println!(
        "[criterion {criterion}] PASS ({:.2}s, budget {:.0}s): {detail}",
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
    assert!(
        elapsed <= budget,
        "[criterion {criterion}] exceeded its time budget: {elapsed:?} > {budget:?}"
    );
}

/// Criterion 1: the undetermined fixture is lost by both players, for both
/// objective kinds, in under a second each.
#[test]
fn criterion_1_undetermined_fixture() {
    let config = DisruptionConfig::default();
    for kind in BOTH_KINDS {
        let started = Instant::now();
        let game = fixture_undetermined(kind);
        assert!(validate(&game).is_empty());
        assert!(!decide_coverage(&game), "{kind:?}: coverage must fail");
        let (disrupted, _) = solve_disruption(&game, &config).unwrap();
        assert!(!disrupted, "{kind:?}: disruption must fail");
        pass(1, started, Duration::from_secs(1), &format!("{kind:?} undetermined"));
    }
}

/// Criterion 2: non-decomposability fixtures for k in {2, 3}, both kinds:
/// coverage holds, the initial vertex is not decomposable, the synthesized
/// strategy verifies, and the k=2 objective sets are pinned exactly.
#[test]
fn criterion_2_nondecomposable_fixtures() {
    let started = Instant::now();
    for agents in [2u32, 3] {
        for kind in BOTH_KINDS {
            let game = fixture_nondecomposable(agents, kind).unwrap();
            assert!(validate(&game).is_empty());
            let (covered, tree) = solve_coverage(&game);
            assert!(covered, "k={agents} {kind:?}: coverage must hold");
            assert!(
                !is_decomposable(&game, game.graph.initial()),
                "k={agents} {kind:?}: initial vertex must not be decomposable"
            );
            let outcome = verify_covering_strategy(&game, &tree.unwrap()).unwrap();
            assert!(outcome.is_verified(), "k={agents} {kind:?}: {outcome:?}");
        }
    }
    // Exact objective sets for k = 2.
    let game = fixture_nondecomposable(2, ObjectiveKind::Buchi).unwrap();
    let ids = |label: &str| -> Vec<String> {
        let obj = game.objectives.iter().find(|o| o.label == label).unwrap();
        obj.vertices.iter().map(|v| game.graph.id(v).to_string()).collect()
    };
    assert_eq!(ids("a1"), ["s1_1", "s2_1", "s3_1"]);
    assert_eq!(ids("a2"), ["s1_1", "s2_1", "s3_2"]);
    assert_eq!(ids("a3"), ["s1_2", "s2_2", "s3_1"]);
    pass(2, started, Duration::from_secs(5), "k in {2,3}, both kinds, verified strategies");
}

/// Criterion 3: the partial-decomposability boundary at k=3, l=2: the
/// objectives split into two groups but not three.
#[test]
fn criterion_3_partial_decomposability_boundary() {
    let started = Instant::now();
    for kind in BOTH_KINDS {
        let game = fixture_partial_decomposable(3, 2, kind).unwrap();
        assert!(validate(&game).is_empty());
        let v0 = game.graph.initial();
        assert!(is_decomposable_into(&game, v0, 2), "{kind:?}: must split two ways");
        assert!(!is_decomposable_into(&game, v0, 3), "{kind:?}: must not split three ways");
    }
    pass(3, started, Duration::from_secs(30), "decomposable at l=2, not at l=3, both kinds");
}

fn corpus(seed: u64, count: usize) -> Vec<CoverageGame> {
    let mut rng = rng(seed);
    let params = CorpusParams::default();
    let mut games = Vec::with_capacity(count * 2);
    for kind in BOTH_KINDS {
        for _ in 0..count {
            games.push(random_game(&mut rng, &params, kind));
        }
    }
    games
}

/// Criterion 4: regime equivalences on the random corpus: one agent reduces
/// to the All game, and with at least as many agents as objectives the
/// problems reduce to per-objective two-player games and complement each
/// other.
#[test]
fn criterion_4_regime_equivalences() {
    let started = Instant::now();
    let games = corpus(40, 260);
    assert!(games.len() >= 500);
    let config = DisruptionConfig::default();
    let mut single_checked = 0usize;
    let mut many_checked = 0usize;
    for (i, game) in games.iter().enumerate() {
        let graph = &game.graph;
        let v0 = graph.initial();
        let sets: Vec<VertexSet> = game.objectives.iter().map(|o| o.vertices.clone()).collect();
        let covered = decide_coverage(game);
        if game.agents == 1 {
            single_checked += 1;
            let all = match game.kind {
                ObjectiveKind::Buchi => solve_all_buchi(graph, &sets, Player::Coverer).winning,
                ObjectiveKind::CoBuchi => {
                    coverage_games::solvers::solve_all_cobuchi(graph, &sets, Player::Coverer)
                        .winning
                }
            };
            assert_eq!(covered, all.contains(v0), "game {i}: k=1 All reduction");
        }
        if game.agents as usize >= game.objective_count() {
            many_checked += 1;
            let per_objective_win = sets.iter().all(|alpha| {
                let win = match game.kind {
                    ObjectiveKind::Buchi => solve_buchi(graph, alpha, Player::Coverer).winning,
                    ObjectiveKind::CoBuchi => solve_cobuchi(graph, alpha, Player::Coverer).winning,
                };
                win.contains(v0)
            });
            assert_eq!(covered, per_objective_win, "game {i}: k>=m coverage reduction");
            let (disrupted, _) = solve_disruption(game, &config).unwrap();
            let some_dual_win = sets.iter().any(|alpha| {
                let win = match game.kind {
                    ObjectiveKind::Buchi => solve_buchi(graph, alpha, Player::Coverer).winning,
                    ObjectiveKind::CoBuchi => solve_cobuchi(graph, alpha, Player::Coverer).winning,
                };
                !win.contains(v0)
            });
            assert_eq!(disrupted, some_dual_win, "game {i}: k>=m disruption reduction");
            assert_eq!(covered, !disrupted, "game {i}: k>=m determinacy");
        }
    }
    pass(
        4,
        started,
        Duration::from_secs(300),
        &format!(
            "{} games ({single_checked} single-agent, {many_checked} k>=m), zero disagreements",
            games.len()
        ),
    );
}

/// Criterion 5: consistency and monotonicity on the same corpus: coverage and
/// disruption never both hold; coverage is monotone in agents and antitone in
/// objectives; disruption is antitone in agents.
#[test]
fn criterion_5_consistency_and_monotonicity() {
    let started = Instant::now();
    let games = corpus(40, 260);
    let config = DisruptionConfig::default();
    for (i, game) in games.iter().enumerate() {
        let covered = decide_coverage(game);
        let (disrupted, _) = solve_disruption(game, &config).unwrap();
        assert!(!(covered && disrupted), "game {i}: both players cannot win");

        let mut solver = CoverageSolver::new(game);
        let full = game.all_objectives();
        let v0 = game.graph.initial();
        let win_now = solver.winning_set(game.agents, full).contains(v0);
        assert_eq!(win_now, covered, "game {i}: table agrees");
        let win_more = solver.winning_set(game.agents + 1, full).contains(v0);
        if covered {
            assert!(win_more, "game {i}: coverage monotone in agents");
        }
        if covered {
            for bits in 0..(1u64 << game.objective_count()) {
                let sub = coverage_games::bitset::ObjectiveIndexSet::from_bits(
                    game.objective_count(),
                    bits,
                );
                assert!(
                    solver.winning_set(game.agents, sub).contains(v0),
                    "game {i}: coverage antitone in objectives ({sub:?})"
                );
            }
        }
        if disrupted && game.agents > 1 {
            let mut fewer = game.clone();
            fewer.agents -= 1;
            let (still, _) = solve_disruption(&fewer, &config).unwrap();
            assert!(still, "game {i}: disruption antitone in agents");
        }
    }
    pass(
        5,
        started,
        Duration::from_secs(300),
        &format!("{} games, zero violations", games.len()),
    );
}

fn random_cnf(rng: &mut ChaCha8Rng, max_vars: usize, max_clauses: usize) -> CnfFormula {
    let n = rng.gen_range(1..=max_vars);
    let m = rng.gen_range(1..=max_clauses);
    let clauses = (0..m)
        .map(|_| {
            let mut triple = [0i32; 3];
            for slot in &mut triple {
                let var = rng.gen_range(1..=n) as i32;
                *slot = if rng.gen_bool(0.5) { var } else { -var };
            }
            triple
        })
        .collect();
    CnfFormula::new(n, clauses).unwrap()
}

/// Criterion 6: reduction sweeps. Every 3SAT instance agrees with its three
/// game targets, every QBF instance with both coverage kinds, and every 2QBF
/// instance with all disruption targets.
#[test]
fn criterion_6_reduction_sweeps() {
    let started = Instant::now();
    let config = DisruptionConfig::default();

    // 3SAT: >= 500 formulas, <= 4 variables and clauses, three targets.
    // Random small 3CNFs are nearly always satisfiable, so a slice of
    // contradiction patterns keeps the unsatisfiable path honest.
    let mut r = rng(60);
    let mut formulas: Vec<CnfFormula> = (0..490).map(|_| random_cnf(&mut r, 4, 4)).collect();
    formulas.push(CnfFormula::new(1, vec![[1, 1, 1], [-1, -1, -1]]).unwrap());
    for extra in 0..9 {
        let n = extra % 2 + 2;
        let mut clauses = vec![
            [1, 2, 2],
            [-1, 2, 2],
            [1, -2, -2],
            [-1, -2, -2],
        ];
        for _ in 0..extra % 3 {
            let var = r.gen_range(1..=n) as i32;
            clauses.pop();
            clauses.push([if r.gen_bool(0.5) { var } else { -var }, -1, 2]);
            clauses.push([-1, -2, -2]);
        }
        formulas.push(CnfFormula::new(n, clauses).unwrap());
    }
    for _ in 0..30 {
        // Dense clauses over two variables are unsatisfiable about half the
        // time.
        let clauses: Vec<[i32; 3]> = (0..4)
            .map(|_| {
                let a = if r.gen_bool(0.5) { 1 } else { -1 };
                let b = if r.gen_bool(0.5) { 2 } else { -2 };
                [a, b, b]
            })
            .collect();
        formulas.push(CnfFormula::new(2, clauses).unwrap());
    }
    let sat_count = formulas.len();
    let mut sat_true = 0usize;
    for (case, formula) in formulas.iter().enumerate() {
        let expected = sat_brute(formula);
        sat_true += expected as usize;

        let cover = from_3sat(formula, SatTarget::TwoAgentBuchiCoverage).unwrap();
        assert!(validate(&cover).is_empty());
        assert_eq!(decide_coverage(&cover), expected, "sat case {case}: coverage target");

        let one = from_3sat(formula, SatTarget::OnePlayerCoBuchi).unwrap();
        assert!(validate(&one).is_empty());
        assert_eq!(
            coverage_one_player_coverer(&one).unwrap(),
            expected,
            "sat case {case}: one-player target"
        );

        let disrupt = from_3sat(formula, SatTarget::TwoAgentBuchiDisruption).unwrap();
        assert!(validate(&disrupt).is_empty());
        let (verdict, _) = solve_disruption_buchi(&disrupt, &config).unwrap();
        assert_eq!(verdict, expected, "sat case {case}: disruption target");
    }
    assert!(sat_count >= 500);
    let sat_false = sat_count - sat_true;
    assert!(sat_true > 100 && sat_false >= 15, "labels unbalanced: {sat_true}/{sat_count}");

    // QBF: every prefix over <= 3 variables, sampled matrices, both kinds.
    let mut r = rng(61);
    let mut qbf_cases = 0usize;
    let mut qbf_true = 0usize;
    for n in 1..=3usize {
        for pattern in 0..(1u32 << n) {
            let prefix: Vec<(Quantifier, usize)> = (0..n)
                .map(|i| {
                    let q = if pattern >> i & 1 == 1 { Quantifier::ForAll } else { Quantifier::Exists };
                    (q, i + 1)
                })
                .collect();
            for _ in 0..10 {
                let m = r.gen_range(1..=3);
                let clauses: Vec<[i32; 3]> = (0..m)
                    .map(|_| {
                        let mut triple = [0i32; 3];
                        for slot in &mut triple {
                            let var = r.gen_range(1..=n) as i32;
                            *slot = if r.gen_bool(0.5) { var } else { -var };
                        }
                        triple
                    })
                    .collect();
                let Ok(formula) = QbfFormula::new(prefix.clone(), Matrix::Cnf(clauses)) else {
                    continue;
                };
                let expected = qbf_brute(&formula);
                qbf_cases += 1;
                qbf_true += expected as usize;
                for kind in BOTH_KINDS {
                    let game = from_qbf(&formula, kind).unwrap();
                    assert!(validate(&game).is_empty());
                    assert_eq!(
                        decide_coverage(&game),
                        expected,
                        "qbf case {qbf_cases} {kind:?}: {formula:?}"
                    );
                }
            }
        }
    }
    assert!(qbf_true > 10 && qbf_true < qbf_cases - 10, "labels unbalanced: {qbf_true}");

    // 2QBF: every block split with |X| + |Y| <= 4, both general kinds and the
    // dedicated two-agent co-Büchi construction. Cube slots are seeded with
    // every variable once (the constructions require the prefix to cover the
    // matrix); a crafted all-existential cube per split keeps true labels in
    // the corpus, since random ∃∀ formulas are almost always false.
    let mut r = rng(62);
    let mut two_cases = 0usize;
    let mut two_true = 0usize;
    for (n, m) in [(1usize, 1usize), (1, 2), (2, 1), (1, 3), (3, 1), (2, 2)] {
        let total = n + m;
        let prefix: Vec<(Quantifier, usize)> = (1..=total)
            .map(|v| {
                let q = if v <= n { Quantifier::Exists } else { Quantifier::ForAll };
                (q, v)
            })
            .collect();
        let min_cubes = total.div_ceil(3);
        let mut formulas: Vec<QbfFormula> = Vec::new();
        for c in min_cubes..=3 {
            for sample in 0..4 {
                let mut slots: Vec<i32> = (1..=total as i32)
                    .map(|v| if r.gen_bool(0.5) { v } else { -v })
                    .collect();
                while slots.len() < 3 * c {
                    let var = r.gen_range(1..=total) as i32;
                    slots.push(if r.gen_bool(0.5) { var } else { -var });
                }
                for i in (1..slots.len()).rev() {
                    slots.swap(i, r.gen_range(0..=i));
                }
                let mut cubes: Vec<[i32; 3]> =
                    slots.chunks(3).map(|ch| [ch[0], ch[1], ch[2]]).collect();
                if sample == 0 && c >= min_cubes.max(2) {
                    // Make one cube purely existential and consistent: the
                    // formula is then true whatever the other cubes say.
                    let x1 = 1i32;
                    cubes[0] = [x1, x1, x1];
                    // Rebalance: every variable must still appear somewhere.
                    let mut fill: Vec<i32> = (2..=total as i32).collect();
                    for cube in cubes.iter_mut().skip(1) {
                        for slot in cube.iter_mut() {
                            if let Some(v) = fill.pop() {
                                *slot = if r.gen_bool(0.5) { v } else { -v };
                            }
                        }
                    }
                    if !fill.is_empty() {
                        continue;
                    }
                }
                if let Ok(formula) = QbfFormula::new(prefix.clone(), Matrix::Dnf(cubes)) {
                    formulas.push(formula);
                }
            }
        }
        for formula in &formulas {
            let expected = qbf_brute(formula);
            two_cases += 1;
            two_true += expected as usize;

            for kind in BOTH_KINDS {
                let game = from_2qbf_disruption(formula, TwoQbfTarget::General(kind)).unwrap();
                assert!(validate(&game).is_empty());
                let (verdict, _) = solve_disruption(&game, &config).unwrap();
                assert_eq!(verdict, expected, "2qbf case {two_cases} general {kind:?}");
            }
            let game = from_2qbf_disruption(formula, TwoQbfTarget::CoBuchiTwoAgent).unwrap();
            assert!(validate(&game).is_empty());
            let (verdict, _) = solve_disruption_cobuchi(&game, &config).unwrap();
            assert_eq!(verdict, expected, "2qbf case {two_cases} two-agent");
        }
    }
    assert!(two_true > 5 && two_cases - two_true > 10, "labels unbalanced: {two_true}/{two_cases}");

    pass(
        6,
        started,
        Duration::from_secs(900),
        &format!(
            "3SAT {sat_count} formulas x 3 targets, QBF {qbf_cases} x 2 kinds, 2QBF {two_cases} x 3 targets, zero disagreements"
        ),
    );
}

/// Criterion 7: the disruption algorithms cross-validate on the corpus: the
/// enumerative solvers agree with the fixed-objective Δ-iteration.
#[test]
fn criterion_7_disruption_cross_validation() {
    let started = Instant::now();
    let games = corpus(40, 260);
    let config = DisruptionConfig::default();
    let mut buchi = 0usize;
    let mut cobuchi = 0usize;
    for (i, game) in games.iter().enumerate() {
        let second = solve_disruption_fixed_beta(game);
        match game.kind {
            ObjectiveKind::Buchi => {
                buchi += 1;
                let (first, _) = solve_disruption_buchi(game, &config).unwrap();
                assert_eq!(first, second, "game {i}: Büchi cross-validation");
            }
            ObjectiveKind::CoBuchi => {
                cobuchi += 1;
                let (first, _) = solve_disruption_cobuchi(game, &config).unwrap();
                assert_eq!(first, second, "game {i}: co-Büchi cross-validation");
            }
        }
    }
    pass(
        7,
        started,
        Duration::from_secs(600),
        &format!("{buchi} Büchi + {cobuchi} co-Büchi games, zero disagreements"),
    );
}

/// Criterion 8: one-player four-way agreement: the specialized procedures,
/// the general solvers, and the determinacy complement all coincide.
#[test]
fn criterion_8_one_player_agreement() {
    let started = Instant::now();
    let config = DisruptionConfig::default();
    let params = CorpusParams::default();

    // Coverer owns everything.
    let mut r = rng(80);
    for case in 0..200 {
        let kind = BOTH_KINDS[case % 2];
        let game = random_one_player_game(&mut r, &params, Player::Coverer, kind);
        let specialized = coverage_one_player_coverer(&game).unwrap();
        let general = decide_coverage(&game);
        let (disrupted, _) = solve_disruption(&game, &config).unwrap();
        let table = coverage_games::coverage::winning_coverage_set(&game)
            .contains(game.graph.initial());
        assert_eq!(specialized, general, "coverer case {case}");
        assert_eq!(specialized, !disrupted, "coverer case {case}: determinacy");
        assert_eq!(specialized, table, "coverer case {case}: table");
    }

    // Disruptor owns everything.
    let mut r = rng(81);
    for case in 0..200 {
        let kind = BOTH_KINDS[case % 2];
        let game = random_one_player_game(&mut r, &params, Player::Disruptor, kind);
        let (specialized, witness) = disruption_one_player_disruptor(&game).unwrap();
        if let Some(w) = &witness {
            w.validate(&game.graph).unwrap();
        }
        let complement = coverage_one_player_disruptor(&game).unwrap();
        let general_cover = decide_coverage(&game);
        let (general_disrupt, _) = solve_disruption(&game, &config).unwrap();
        assert_eq!(specialized, general_disrupt, "disruptor case {case}");
        assert_eq!(complement, general_cover, "disruptor case {case}: coverage");
        assert_eq!(specialized, !complement, "disruptor case {case}: determinacy");
    }
    pass(8, started, Duration::from_secs(300), "200 games per side, zero disagreements");
}

/// Criterion 9: the classical solvers match exhaustive memoryless-profile
/// evaluation, and the superset translation matches its truth table.
#[test]
fn criterion_9_classical_solver_oracles() {
    let started = Instant::now();
    let mut r = rng(90);
    let params = CorpusParams { max_vertices: 6, max_disruptor: 6, ..Default::default() };
    let cases = 320;
    for case in 0..cases {
        let game = random_game(&mut r, &params, ObjectiveKind::Buchi);
        let graph = &game.graph;
        let alpha = game
            .objectives
            .first()
            .map(|o| o.vertices.clone())
            .unwrap_or_else(|| VertexSet::empty(graph.len()));
        let sets: Vec<VertexSet> = game.objectives.iter().map(|o| o.vertices.clone()).collect();
        for protagonist in [Player::Coverer, Player::Disruptor] {
            assert_eq!(
                solve_buchi(graph, &alpha, protagonist).winning,
                exhaustive::buchi_win_set(graph, &alpha, protagonist),
                "case {case}: Büchi {protagonist:?}"
            );
            assert_eq!(
                solve_cobuchi(graph, &alpha, protagonist).winning,
                exhaustive::cobuchi_win_set(graph, &alpha, protagonist),
                "case {case}: co-Büchi {protagonist:?}"
            );
        }
        assert_eq!(
            solve_all_buchi(graph, &sets, Player::Coverer).winning,
            exhaustive::all_buchi_win_set(graph, &sets, Player::Coverer),
            "case {case}: All-Büchi"
        );
    }

    // Superset equivalence by truth table over candidate infinity sets.
    let mut r = rng(91);
    for case in 0..100 {
        let universe = r.gen_range(1usize..=6);
        let families: Vec<Vec<VertexSet>> = (0..r.gen_range(1usize..=3))
            .map(|_| {
                (0..r.gen_range(1usize..=3))
                    .map(|_| {
                        let mut s = VertexSet::empty(universe);
                        for v in 0..universe {
                            if r.gen_bool(0.4) {
                                s.insert(v);
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        let translation = coverage_games::solvers::superset_to_all_buchi(&families, universe);
        for bits in 0..(1u64 << universe) {
            let inf = VertexSet::from_indices(
                universe,
                (0..universe).filter(|&v| bits >> v & 1 == 1),
            );
            let superset = families.iter().any(|f| f.iter().all(|s| s.intersects(&inf)));
            let all = translation.objectives.iter().all(|s| s.intersects(&inf));
            assert_eq!(superset, all, "case {case}");
        }
    }
    pass(
        9,
        started,
        Duration::from_secs(600),
        &format!("{cases} games against exhaustive evaluation, superset truth tables clean"),
    );
}
