//! Decision procedures for one-player coverage games: when Coverer owns every
//! vertex, coverage reduces to picking `k` lassos whose satisfied sets cover
//! the objectives; when Disruptor owns every vertex, all tokens travel
//! together and disruption reduces to finding one lasso violating some
//! objective.

use thiserror::Error;

use crate::bitset::{ObjectiveIndexSet, VertexSet};
use crate::game::{CoverageGame, GameGraph, LassoPath, ObjectiveKind, Player};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OnePlayerError {
    #[error("the graph has vertices of both players; expected all vertices owned by {expected:?}")]
    NotOnePlayer { expected: Player },
}

/// Maximal objective subsets satisfiable by a single play, each with a
/// witness lasso.
#[derive(Clone, Debug)]
pub struct SatisfiableSets {
    pub members: Vec<(ObjectiveIndexSet, LassoPath)>,
}

impl SatisfiableSets {
    pub fn masks(&self) -> Vec<ObjectiveIndexSet> {
        self.members.iter().map(|(m, _)| *m).collect()
    }
}

fn require_owner(game: &CoverageGame, expected: Player) -> Result<(), OnePlayerError> {
    let graph = &game.graph;
    if (0..graph.len()).all(|v| graph.owner(v) == expected) {
        Ok(())
    } else {
        Err(OnePlayerError::NotOnePlayer { expected })
    }
}

/// Lexicographically-first shortest path `from -> to` inside `region`,
/// returned as the vertex sequence excluding `to`. A `from == to` query asks
/// for a shortest nonempty cycle and returns the whole cycle body.
fn shortest_path_within(
    graph: &GameGraph,
    region: &VertexSet,
    from: usize,
    to: usize,
) -> Option<Vec<usize>> {
    // BFS from `from` over region vertices; first discovery wins, and
    // successors are scanned in ascending order.
    let n = graph.len();
    let mut parent = vec![usize::MAX; n];
    let mut seen = VertexSet::empty(n);
    let mut queue = std::collections::VecDeque::new();
    for &w in graph.successors(from) {
        if region.contains(w) && !seen.contains(w) {
            seen.insert(w);
            parent[w] = from;
            if w == to {
                return Some(unwind(from, to, &parent));
            }
            queue.push_back(w);
        }
    }
    if from == to && seen.contains(to) {
        return Some(vec![from]);
    }
    while let Some(v) = queue.pop_front() {
        for &w in graph.successors(v) {
            if region.contains(w) && !seen.contains(w) {
                seen.insert(w);
                parent[w] = v;
                if w == to {
                    return Some(unwind(from, to, &parent));
                }
                queue.push_back(w);
            }
        }
    }
    None
}

fn unwind(from: usize, to: usize, parent: &[usize]) -> Vec<usize> {
    let mut rev = Vec::new();
    let mut v = parent[to];
    while v != from {
        rev.push(v);
        v = parent[v];
    }
    rev.push(from);
    rev.reverse();
    rev
}

/// Stitches a loop through `reps` (in the given order) inside `component`,
/// skipping consecutive duplicates.
fn stitch_loop(graph: &GameGraph, component: &VertexSet, reps: &[usize]) -> Option<Vec<usize>> {
    let mut stops: Vec<usize> = Vec::new();
    for &r in reps {
        if stops.last() != Some(&r) {
            stops.push(r);
        }
    }
    if stops.len() > 1 && stops.first() == stops.last() {
        stops.pop();
    }
    if stops.is_empty() {
        return None;
    }
    if stops.len() == 1 {
        return shortest_path_within(graph, component, stops[0], stops[0]);
    }
    let mut cycle = Vec::new();
    for i in 0..stops.len() {
        let a = stops[i];
        let b = stops[(i + 1) % stops.len()];
        cycle.extend(shortest_path_within(graph, component, a, b)?);
    }
    Some(cycle)
}

/// Exact minimal lasso visiting one vertex of each set in `sets`, staying
/// inside `component` for the loop. Product-automaton BFS per anchor; used
/// only when cheap stitching exceeds the advertised length bound.
fn minimal_lasso(
    graph: &GameGraph,
    component: &VertexSet,
    sets: &[VertexSet],
    initial: usize,
) -> Option<LassoPath> {
    let t = sets.len();
    if t > 16 {
        return None;
    }
    let verts: Vec<usize> = component.iter().collect();
    let pos = {
        let mut p = vec![usize::MAX; graph.len()];
        for (i, &v) in verts.iter().enumerate() {
            p[v] = i;
        }
        p
    };
    let full: u32 = if t == 32 { u32::MAX } else { (1u32 << t) - 1 };
    let visit_mask = |v: usize| -> u32 {
        let mut m = 0;
        for (i, s) in sets.iter().enumerate() {
            if s.contains(v) {
                m |= 1 << i;
            }
        }
        m
    };
    let mut best: Option<LassoPath> = None;
    for &anchor in &verts {
        // BFS over (vertex, satisfied-subset) from anchor.
        let states = verts.len() << t;
        let mut prev = vec![usize::MAX; states];
        let idx = |v: usize, m: u32| -> usize { (pos[v] << t) | m as usize };
        let start_mask = visit_mask(anchor);
        let mut queue = std::collections::VecDeque::new();
        queue.push_back((anchor, start_mask));
        let start_state = idx(anchor, start_mask);
        prev[start_state] = start_state;
        let mut closed: Option<(usize, u32)> = None;
        'bfs: while let Some((v, m)) = queue.pop_front() {
            for &w in graph.successors(v) {
                if !component.contains(w) {
                    continue;
                }
                let m2 = m | visit_mask(w);
                if w == anchor && m2 == full {
                    closed = Some((v, m));
                    break 'bfs;
                }
                let s = idx(w, m2);
                if prev[s] == usize::MAX {
                    prev[s] = idx(v, m);
                    queue.push_back((w, m2));
                }
            }
        }
        let Some((end_v, end_m)) = closed else { continue };
        // Unwind the loop anchor -> ... -> end_v.
        let mut cycle = Vec::new();
        let mut s = idx(end_v, end_m);
        loop {
            cycle.push(verts[s >> t]);
            if s == start_state {
                break;
            }
            s = prev[s];
        }
        cycle.reverse();
        let stem = if initial == anchor {
            Vec::new()
        } else {
            match shortest_path_within(graph, &graph.full_set(), initial, anchor) {
                Some(p) => p,
                None => continue,
            }
        };
        let lasso = LassoPath { stem, cycle };
        if best.as_ref().is_none_or(|b| lasso.len() < b.len()) {
            best = Some(lasso);
        }
    }
    best
}

fn buchi_witness(
    game: &CoverageGame,
    component: &VertexSet,
    mask: ObjectiveIndexSet,
) -> LassoPath {
    let graph = &game.graph;
    let reps: Vec<usize> = mask
        .iter()
        .map(|i| {
            game.objectives[i]
                .vertices
                .intersection(component)
                .first()
                .expect("satisfied objective must meet the component")
        })
        .collect();
    let cycle = if reps.is_empty() {
        let a = component.first().unwrap();
        shortest_path_within(graph, component, a, a).expect("non-trivial component has a cycle")
    } else {
        stitch_loop(graph, component, &reps).expect("component is strongly connected")
    };
    let start = cycle[0];
    let stem = if start == graph.initial() {
        Vec::new()
    } else {
        shortest_path_within(graph, &graph.full_set(), graph.initial(), start)
            .expect("component was picked reachable")
    };
    let lasso = LassoPath { stem, cycle };
    let bound = graph.len() * game.objective_count().max(1);
    if lasso.len() <= bound {
        return lasso;
    }
    let sets: Vec<VertexSet> = mask
        .iter()
        .map(|i| game.objectives[i].vertices.clone())
        .collect();
    minimal_lasso(graph, component, &sets, graph.initial()).unwrap_or(lasso)
}

/// Shortest reachable lasso whose loop stays inside `allowed`; `None` when no
/// cycle survives the restriction.
fn cycle_witness(graph: &GameGraph, allowed: &VertexSet) -> Option<LassoPath> {
    let reach = graph.reachable_within(graph.initial(), &graph.full_set());
    let scope = reach.intersection(allowed);
    let comp = graph
        .scc_within(&scope)
        .into_iter()
        .find(|(_, trivial)| !trivial)
        .map(|(c, _)| c)?;
    let a = comp.first().unwrap();
    let cycle = shortest_path_within(graph, &comp, a, a)?;
    let stem = if cycle[0] == graph.initial() {
        Vec::new()
    } else {
        shortest_path_within(graph, &graph.full_set(), graph.initial(), cycle[0])?
    };
    Some(LassoPath { stem, cycle })
}

/// Maximal objective subsets a single play can satisfy when Coverer owns the
/// whole graph.
///
/// Büchi: one candidate per reachable non-trivial SCC (everything the
/// component touches). Co-Büchi: descending subset scan, keeping subsets
/// whose union of vertex sets is avoided by some reachable cycle.
pub fn maximal_satisfiable_sets(game: &CoverageGame) -> Result<SatisfiableSets, OnePlayerError> {
    require_owner(game, Player::Coverer)?;
    let graph = &game.graph;
    let m = game.objective_count();
    let reach = graph.reachable_within(graph.initial(), &graph.full_set());
    let mut members: Vec<(ObjectiveIndexSet, LassoPath)> = Vec::new();

    match game.kind {
        ObjectiveKind::Buchi => {
            let mut comps: Vec<(ObjectiveIndexSet, VertexSet)> = Vec::new();
            for (comp, trivial) in graph.scc_within(&reach) {
                if trivial {
                    continue;
                }
                let mut mask = ObjectiveIndexSet::empty(m);
                for (i, obj) in game.objectives.iter().enumerate() {
                    if obj.vertices.intersects(&comp) {
                        mask.insert(i);
                    }
                }
                comps.push((mask, comp));
            }
            comps.sort_by_key(|(mask, comp)| (std::cmp::Reverse(mask.count()), comp.clone()));
            for (mask, comp) in comps {
                if members.iter().any(|(kept, _)| mask.is_subset(kept)) {
                    continue;
                }
                let witness = buchi_witness(game, &comp, mask);
                members.push((mask, witness));
            }
        }
        ObjectiveKind::CoBuchi => {
            assert!(m <= 24, "subset scan over objectives is capped at 24");
            let mut masks: Vec<u64> = (0..(1u64 << m)).collect();
            masks.sort_by_key(|b| std::cmp::Reverse(b.count_ones()));
            for bits in masks {
                let mask = ObjectiveIndexSet::from_bits(m, bits);
                if members.iter().any(|(kept, _)| mask.is_subset(kept)) {
                    continue;
                }
                let avoid = game.objective_union(mask);
                if let Some(witness) = cycle_witness(graph, &avoid.complement()) {
                    members.push((mask, witness));
                }
            }
        }
    }
    Ok(SatisfiableSets { members })
}

/// Fewest sets from `members` whose union covers `universe`; `None` if even
/// all of them together fall short. Exact bitmask dynamic program.
pub fn min_union_cover(universe: ObjectiveIndexSet, members: &[ObjectiveIndexSet]) -> Option<u32> {
    let m = universe.universe();
    assert!(m <= 24, "set-cover DP is capped at 24 objectives");
    let goal = universe.bits();
    let size = 1usize << m;
    let mut cost = vec![u32::MAX; size];
    cost[0] = 0;
    // Masks outside `universe` never help; project members onto it.
    for covered in 0..size {
        let c = cost[covered];
        if c == u32::MAX {
            continue;
        }
        for member in members {
            let next = (covered as u64 | (member.bits() & goal)) as usize;
            if cost[next] > c + 1 {
                cost[next] = c + 1;
            }
        }
    }
    (cost[goal as usize] != u32::MAX).then(|| cost[goal as usize])
}

/// Coverage when Coverer owns all vertices: can `k` plays cover every
/// objective? Decided by exact set cover over the maximal satisfiable sets.
pub fn coverage_one_player_coverer(game: &CoverageGame) -> Result<bool, OnePlayerError> {
    let sets = maximal_satisfiable_sets(game)?;
    let need = game.all_objectives();
    if need.is_empty() {
        return Ok(true);
    }
    Ok(match min_union_cover(need, &sets.masks()) {
        Some(c) => c <= game.agents,
        None => false,
    })
}

/// Disruption when Disruptor owns all vertices: she directs all tokens along
/// one play, so she wins iff some lasso violates some objective. The agent
/// count is irrelevant.
pub fn disruption_one_player_disruptor(
    game: &CoverageGame,
) -> Result<(bool, Option<LassoPath>), OnePlayerError> {
    require_owner(game, Player::Disruptor)?;
    let graph = &game.graph;
    for obj in &game.objectives {
        let witness = match game.kind {
            // Violate a Büchi objective: loop clear of it.
            ObjectiveKind::Buchi => cycle_witness(graph, &obj.vertices.complement()),
            // Violate a co-Büchi objective: loop through it.
            ObjectiveKind::CoBuchi => {
                let reach = graph.reachable_within(graph.initial(), &graph.full_set());
                graph
                    .scc_within(&reach)
                    .into_iter()
                    .find(|(c, trivial)| !trivial && c.intersects(&obj.vertices))
                    .and_then(|(comp, _)| {
                        let through = obj.vertices.intersection(&comp).first().unwrap();
                        let cycle = shortest_path_within(graph, &comp, through, through)?;
                        let stem = if cycle[0] == graph.initial() {
                            Vec::new()
                        } else {
                            shortest_path_within(
                                graph,
                                &graph.full_set(),
                                graph.initial(),
                                cycle[0],
                            )?
                        };
                        Some(LassoPath { stem, cycle })
                    })
            }
        };
        if let Some(w) = witness {
            return Ok((true, Some(w)));
        }
    }
    Ok((false, None))
}

/// One-player games are determined, so coverage here is the complement of
/// disruption.
pub fn coverage_one_player_disruptor(game: &CoverageGame) -> Result<bool, OnePlayerError> {
    disruption_one_player_disruptor(game).map(|(verdict, _)| !verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Objective;

    fn two_loop_game(kind: ObjectiveKind, owner: Player) -> CoverageGame {
        let g = GameGraph::build(
            &[("v0", owner), ("a", owner), ("b", owner)],
            &[(0, 1), (0, 2), (1, 1), (2, 2)],
            0,
        )
        .unwrap();
        CoverageGame::new(
            g,
            1,
            kind,
            vec![
                Objective { label: "a".into(), vertices: VertexSet::singleton(3, 1) },
                Objective { label: "b".into(), vertices: VertexSet::singleton(3, 2) },
            ],
        )
    }

    #[test]
    fn maximal_sets_two_loops() {
        let game = two_loop_game(ObjectiveKind::Buchi, Player::Coverer);
        let sets = maximal_satisfiable_sets(&game).unwrap();
        let masks = sets.masks();
        assert_eq!(masks.len(), 2);
        assert!(masks.contains(&ObjectiveIndexSet::singleton(2, 0)));
        assert!(masks.contains(&ObjectiveIndexSet::singleton(2, 1)));
        for (mask, lasso) in &sets.members {
            lasso.validate(&game.graph).unwrap();
            let inf = lasso.inf_set(game.graph.len());
            assert_eq!(game.satisfied_by_inf(&inf), *mask);
        }

        let game = two_loop_game(ObjectiveKind::CoBuchi, Player::Coverer);
        let sets = maximal_satisfiable_sets(&game).unwrap();
        let masks = sets.masks();
        assert_eq!(masks.len(), 2);
        assert!(masks.contains(&ObjectiveIndexSet::singleton(2, 0)));
        assert!(masks.contains(&ObjectiveIndexSet::singleton(2, 1)));
    }

    #[test]
    fn maximal_sets_single_component() {
        let g = GameGraph::build(
            &[("a", Player::Coverer), ("b", Player::Coverer)],
            &[(0, 1), (1, 0)],
            0,
        )
        .unwrap();
        let game = CoverageGame::new(
            g,
            1,
            ObjectiveKind::Buchi,
            vec![
                Objective { label: "a".into(), vertices: VertexSet::singleton(2, 0) },
                Objective { label: "b".into(), vertices: VertexSet::singleton(2, 1) },
            ],
        );
        let sets = maximal_satisfiable_sets(&game).unwrap();
        assert_eq!(sets.masks(), vec![ObjectiveIndexSet::full(2)]);
    }

    #[test]
    fn min_cover_examples() {
        let u = ObjectiveIndexSet::full(3);
        let members = [
            ObjectiveIndexSet::from_bits(3, 0b011),
            ObjectiveIndexSet::from_bits(3, 0b100),
            ObjectiveIndexSet::from_bits(3, 0b001),
        ];
        assert_eq!(min_union_cover(u, &members), Some(2));
        assert_eq!(min_union_cover(u, &members[2..]), None);
        assert_eq!(min_union_cover(ObjectiveIndexSet::empty(3), &members), Some(0));
    }

    #[test]
    fn one_player_coverage_counts_agents() {
        let mut game = two_loop_game(ObjectiveKind::Buchi, Player::Coverer);
        assert!(!coverage_one_player_coverer(&game).unwrap());
        game.agents = 2;
        assert!(coverage_one_player_coverer(&game).unwrap());
        game.objectives.clear();
        game.agents = 1;
        assert!(coverage_one_player_coverer(&game).unwrap());
    }

    #[test]
    fn disruptor_owned_examples() {
        let mut game = two_loop_game(ObjectiveKind::Buchi, Player::Disruptor);
        game.objectives = vec![Objective {
            label: "a".into(),
            vertices: VertexSet::singleton(3, 1),
        }];
        let (verdict, witness) = disruption_one_player_disruptor(&game).unwrap();
        assert!(verdict);
        let w = witness.unwrap();
        w.validate(&game.graph).unwrap();
        assert!(!w.satisfies(ObjectiveKind::Buchi, &game.objectives[0].vertices));
        assert!(!coverage_one_player_disruptor(&game).unwrap());

        // Both loops hit {a, b}, so the Büchi objective cannot be violated.
        game.objectives = vec![Objective {
            label: "ab".into(),
            vertices: VertexSet::from_indices(3, [1, 2]),
        }];
        assert!(!disruption_one_player_disruptor(&game).unwrap().0);

        let mut co = two_loop_game(ObjectiveKind::CoBuchi, Player::Disruptor);
        co.objectives = vec![Objective {
            label: "a".into(),
            vertices: VertexSet::singleton(3, 1),
        }];
        let (verdict, witness) = disruption_one_player_disruptor(&co).unwrap();
        assert!(verdict);
        assert!(!witness.unwrap().satisfies(ObjectiveKind::CoBuchi, &co.objectives[0].vertices));
    }

    #[test]
    fn wrong_owner_is_rejected() {
        let game = two_loop_game(ObjectiveKind::Buchi, Player::Disruptor);
        assert!(matches!(
            maximal_satisfiable_sets(&game),
            Err(OnePlayerError::NotOnePlayer { expected: Player::Coverer })
        ));
        let game = two_loop_game(ObjectiveKind::Buchi, Player::Coverer);
        assert!(disruption_one_player_disruptor(&game).is_err());
    }
}
