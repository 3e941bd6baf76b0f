//! Shared corpus generation for the integration suites.
#![allow(dead_code)] // each suite uses a different slice of the helpers

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use coverage_games::bitset::VertexSet;
use coverage_games::game::{CoverageGame, GameGraph, Objective, ObjectiveKind, Player};

pub struct CorpusParams {
    pub max_vertices: usize,
    pub max_degree: usize,
    /// Upper bound on Disruptor-owned vertices (keeps the disruption
    /// enumerations desk-sized).
    pub max_disruptor: usize,
    pub max_objectives: usize,
    pub max_agents: u32,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            max_vertices: 8,
            max_degree: 3,
            max_disruptor: 3,
            max_objectives: 4,
            max_agents: 4,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut ChaCha8Rng, p: &CorpusParams) -> GameGraph {
    let n = rng.gen_range(2..=p.max_vertices);
    let mut owners = vec![Player::Coverer; n];
    let disruptors = rng.gen_range(0..=p.max_disruptor.min(n));
    for _ in 0..disruptors {
        let v = rng.gen_range(0..n);
        owners[v] = Player::Disruptor;
    }
    random_graph_with_owners(rng, p, owners)
}

pub fn random_one_player_graph(
    rng: &mut ChaCha8Rng,
    p: &CorpusParams,
    owner: Player,
) -> GameGraph {
    let n = rng.gen_range(2..=p.max_vertices);
    random_graph_with_owners(rng, p, vec![owner; n])
}

fn random_graph_with_owners(
    rng: &mut ChaCha8Rng,
    p: &CorpusParams,
    owners: Vec<Player>,
) -> GameGraph {
    let n = owners.len();
    let vertices: Vec<(String, Player)> = owners
        .into_iter()
        .enumerate()
        .map(|(i, o)| (format!("q{i}"), o))
        .collect();
    let mut edges = Vec::new();
    for v in 0..n {
        let degree = rng.gen_range(1..=p.max_degree.min(n));
        let mut targets: Vec<usize> = (0..n).collect();
        for i in (1..targets.len()).rev() {
            targets.swap(i, rng.gen_range(0..=i));
        }
        targets.truncate(degree);
        for w in targets {
            edges.push((v, w));
        }
    }
    GameGraph::new(vertices, &edges, 0).expect("random graph construction")
}

pub fn random_objectives(
    rng: &mut ChaCha8Rng,
    universe: usize,
    max_objectives: usize,
) -> Vec<Objective> {
    let count = rng.gen_range(0..=max_objectives);
    (0..count)
        .map(|i| {
            let mut set = VertexSet::empty(universe);
            for v in 0..universe {
                if rng.gen_bool(0.35) {
                    set.insert(v);
                }
            }
            Objective { label: format!("a{i}"), vertices: set }
        })
        .collect()
}

pub fn random_game(rng: &mut ChaCha8Rng, p: &CorpusParams, kind: ObjectiveKind) -> CoverageGame {
    let graph = random_graph(rng, p);
    let objectives = random_objectives(rng, graph.len(), p.max_objectives);
    let agents = rng.gen_range(1..=p.max_agents);
    CoverageGame::new(graph, agents, kind, objectives)
}

pub fn random_one_player_game(
    rng: &mut ChaCha8Rng,
    p: &CorpusParams,
    owner: Player,
    kind: ObjectiveKind,
) -> CoverageGame {
    let graph = random_one_player_graph(rng, p, owner);
    let objectives = random_objectives(rng, graph.len(), p.max_objectives);
    let agents = rng.gen_range(1..=p.max_agents);
    CoverageGame::new(graph, agents, kind, objectives)
}

pub const BOTH_KINDS: [ObjectiveKind; 2] = [ObjectiveKind::Buchi, ObjectiveKind::CoBuchi];
