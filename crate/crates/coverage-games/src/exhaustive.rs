//! Brute-force reference evaluators.
//!
//! These evaluate games by enumerating memoryless strategies outright and
//! analysing the one-player graphs that remain, with no shared code with the
//! fixpoint solvers. They exist to validate the solvers at desk scale and are
//! deliberately naive; expect exponential running time.

use crate::bitset::VertexSet;
use crate::game::{GameGraph, LassoPath, Player};
use crate::solvers::{induced_successor_sets, scc_of_induced, MemorylessStrategy};

/// Iterator over every total memoryless strategy of `player` whose choices
/// stay inside `region`, in canonical (mixed-radix, lowest-index-first)
/// order.
pub struct StrategyEnumeration {
    owner: Player,
    universe: usize,
    vertices: Vec<usize>,
    options: Vec<Vec<usize>>,
    picks: Vec<usize>,
    done: bool,
}

impl StrategyEnumeration {
    pub fn new(graph: &GameGraph, region: &VertexSet, player: Player) -> Self {
        let vertices: Vec<usize> = region
            .iter()
            .filter(|&v| graph.owner(v) == player)
            .collect();
        let options: Vec<Vec<usize>> = vertices
            .iter()
            .map(|&v| {
                graph
                    .successors(v)
                    .iter()
                    .copied()
                    .filter(|&w| region.contains(w))
                    .collect()
            })
            .collect();
        let done = options.iter().any(Vec::is_empty);
        StrategyEnumeration {
            owner: player,
            universe: graph.len(),
            picks: vec![0; vertices.len()],
            vertices,
            options,
            done,
        }
    }

    /// Total number of strategies this enumeration yields.
    pub fn count_total(&self) -> u64 {
        if self.options.iter().any(Vec::is_empty) {
            return 0;
        }
        self.options
            .iter()
            .fold(1u64, |acc, o| acc.saturating_mul(o.len() as u64))
    }
}

impl Iterator for StrategyEnumeration {
    type Item = MemorylessStrategy;

    fn next(&mut self) -> Option<MemorylessStrategy> {
        if self.done {
            return None;
        }
        let mut s = MemorylessStrategy::new(self.owner, self.universe);
        for (i, &v) in self.vertices.iter().enumerate() {
            s.set(v, self.options[i][self.picks[i]]);
        }
        // Advance the mixed-radix counter.
        let mut i = 0;
        loop {
            if i == self.picks.len() {
                self.done = true;
                break;
            }
            self.picks[i] += 1;
            if self.picks[i] < self.options[i].len() {
                break;
            }
            self.picks[i] = 0;
            i += 1;
        }
        Some(s)
    }
}

/// Replays a profile of two memoryless strategies from `start` until a vertex
/// repeats, yielding the generated lasso.
pub fn replay(
    graph: &GameGraph,
    coverer: &MemorylessStrategy,
    disruptor: &MemorylessStrategy,
    start: usize,
) -> LassoPath {
    let mut seen_at = vec![usize::MAX; graph.len()];
    let mut path = Vec::new();
    let mut v = start;
    loop {
        if seen_at[v] != usize::MAX {
            let cycle = path.split_off(seen_at[v]);
            return LassoPath { stem: path, cycle };
        }
        seen_at[v] = path.len();
        path.push(v);
        let choice = match graph.owner(v) {
            Player::Coverer => coverer.get(v),
            Player::Disruptor => disruptor.get(v),
        };
        v = choice.unwrap_or_else(|| {
            panic!("profile undefined at {:?}", graph.id(v))
        });
    }
}

fn induced_with(graph: &GameGraph, player: Player, strategy: &MemorylessStrategy) -> Vec<VertexSet> {
    induced_successor_sets(graph, &graph.full_set(), player, strategy)
}

fn reachable_in_induced(succ: &[VertexSet], from: usize) -> VertexSet {
    let mut seen = VertexSet::empty(succ.len());
    seen.insert(from);
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        for w in succ[v].iter() {
            if !seen.contains(w) {
                seen.insert(w);
                stack.push(w);
            }
        }
    }
    seen
}

/// Is there a cycle reachable from `from` that stays clear of `avoid`?
fn has_reachable_cycle_avoiding(succ: &[VertexSet], from: usize, avoid: &VertexSet) -> bool {
    let reach = reachable_in_induced(succ, from);
    let allowed = reach.difference(avoid);
    let restricted: Vec<VertexSet> = succ
        .iter()
        .map(|s| s.intersection(&allowed))
        .collect();
    scc_of_induced(&restricted, &allowed)
        .into_iter()
        .any(|(_, trivial)| !trivial)
}

/// Is there a cycle reachable from `from` whose vertex set meets every set in
/// `targets`? (Touring a strongly connected component realizes its full
/// vertex set as the infinity set.)
fn has_reachable_scc_meeting_all(succ: &[VertexSet], from: usize, targets: &[VertexSet]) -> bool {
    let reach = reachable_in_induced(succ, from);
    scc_of_induced(succ, &reach)
        .into_iter()
        .any(|(comp, trivial)| !trivial && targets.iter().all(|t| t.intersects(&comp)))
}

/// Büchi winning set by exhaustive search: a vertex wins iff some memoryless
/// protagonist strategy leaves the opponent no reachable cycle avoiding
/// `alpha`. Memoryless strategies suffice for both sides of a Büchi game.
pub fn buchi_win_set(graph: &GameGraph, alpha: &VertexSet, protagonist: Player) -> VertexSet {
    let mut win = VertexSet::empty(graph.len());
    let strategies: Vec<MemorylessStrategy> =
        StrategyEnumeration::new(graph, &graph.full_set(), protagonist).collect();
    for v in 0..graph.len() {
        let won = strategies.iter().any(|f| {
            let succ = induced_with(graph, protagonist, f);
            !has_reachable_cycle_avoiding(&succ, v, alpha)
        });
        if won {
            win.insert(v);
        }
    }
    win
}

/// co-Büchi winning set by exhaustive search: some memoryless protagonist
/// strategy leaves no reachable cycle through `alpha`.
pub fn cobuchi_win_set(graph: &GameGraph, alpha: &VertexSet, protagonist: Player) -> VertexSet {
    let mut win = VertexSet::empty(graph.len());
    let strategies: Vec<MemorylessStrategy> =
        StrategyEnumeration::new(graph, &graph.full_set(), protagonist).collect();
    for v in 0..graph.len() {
        let won = strategies.iter().any(|f| {
            let succ = induced_with(graph, protagonist, f);
            let reach = reachable_in_induced(&succ, v);
            !scc_of_induced(&succ, &reach)
                .into_iter()
                .any(|(comp, trivial)| !trivial && comp.intersects(alpha))
        });
        if won {
            win.insert(v);
        }
    }
    win
}

/// All-Büchi winning set by exhausting the *opponent's* memoryless
/// strategies: the protagonist may need memory, but against a fixed opponent
/// she wins iff some reachable component meets every target; and the
/// opponent's side (Exists-co-Büchi) is memoryless-determined.
pub fn all_buchi_win_set(
    graph: &GameGraph,
    targets: &[VertexSet],
    protagonist: Player,
) -> VertexSet {
    let opponent = protagonist.opponent();
    let mut win = VertexSet::full(graph.len());
    for g in StrategyEnumeration::new(graph, &graph.full_set(), opponent) {
        let succ = induced_with(graph, opponent, &g);
        for v in 0..graph.len() {
            if win.contains(v) && !has_reachable_scc_meeting_all(&succ, v, targets) {
                win.remove(v);
            }
        }
        if win.is_empty() {
            break;
        }
    }
    win
}

/// Exists-co-Büchi winning set by exhausting the protagonist's memoryless
/// strategies (sufficient for the Exists side): she wins iff no reachable
/// component meets every family.
pub fn exists_cobuchi_win_set(
    graph: &GameGraph,
    families: &[VertexSet],
    protagonist: Player,
) -> VertexSet {
    let mut win = VertexSet::empty(graph.len());
    let strategies: Vec<MemorylessStrategy> =
        StrategyEnumeration::new(graph, &graph.full_set(), protagonist).collect();
    for v in 0..graph.len() {
        let won = strategies.iter().any(|f| {
            let succ = induced_with(graph, protagonist, f);
            !has_reachable_scc_meeting_all(&succ, v, families)
        });
        if won {
            win.insert(v);
        }
    }
    win
}
