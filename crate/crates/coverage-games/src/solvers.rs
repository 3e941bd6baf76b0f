//! Classic two-player ω-regular sub-solvers: attractors, Büchi, co-Büchi,
//! All-Büchi (with winning-cage extraction), All-co-Büchi, the superset-to-
//! All-Büchi translation, and Exists-co-Büchi.
//!
//! Every solver takes an explicit `region` and works in the induced sub-game,
//! which is how the coverage algorithm runs the All game on the avoid
//! sub-graph without re-indexing vertices. Callers must pass regions that
//! induce total sub-games (attractor complements and winning regions always
//! do). Tie-breaking everywhere: among equally valid successors, the lowest
//! vertex index wins, so all outputs are deterministic.

use crate::bitset::VertexSet;
use crate::game::{GameGraph, Player};

/// A positional strategy: one chosen successor per owned vertex in scope.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MemorylessStrategy {
    pub owner: Player,
    choices: Vec<Option<usize>>,
}

impl MemorylessStrategy {
    pub fn new(owner: Player, universe: usize) -> Self {
        MemorylessStrategy { owner, choices: vec![None; universe] }
    }

    pub fn universe(&self) -> usize {
        self.choices.len()
    }

    pub fn set(&mut self, v: usize, target: usize) {
        self.choices[v] = Some(target);
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        self.choices[v]
    }

    /// Vertices the strategy makes a choice for, ascending.
    pub fn domain(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.choices
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|t| (v, t)))
    }

    pub fn merge_from(&mut self, other: &MemorylessStrategy) {
        debug_assert_eq!(self.owner, other.owner);
        for (v, t) in other.domain() {
            if self.choices[v].is_none() {
                self.choices[v] = Some(t);
            }
        }
    }

    /// Checks each choice is an actual edge from an owned vertex.
    pub fn validate(&self, graph: &GameGraph) -> Result<(), String> {
        for (v, t) in self.domain() {
            if graph.owner(v) != self.owner {
                return Err(format!("strategy chooses at {:?}, owned by the opponent", graph.id(v)));
            }
            if !graph.has_edge(v, t) {
                return Err(format!("strategy uses missing edge {:?} -> {:?}", graph.id(v), graph.id(t)));
            }
        }
        Ok(())
    }
}

/// Least set containing `target` from which `player` can force reaching
/// `target` inside `region`.
pub fn attractor(
    graph: &GameGraph,
    region: &VertexSet,
    player: Player,
    target: &VertexSet,
) -> VertexSet {
    attractor_with_strategy(graph, region, player, target).0
}

/// Attractor plus the rank-decreasing memoryless strategy for `player` on
/// the attractor minus the target.
pub fn attractor_with_strategy(
    graph: &GameGraph,
    region: &VertexSet,
    player: Player,
    target: &VertexSet,
) -> (VertexSet, MemorylessStrategy) {
    let n = graph.len();
    let mut attr = target.intersection(region);
    let mut strategy = MemorylessStrategy::new(player, n);
    // Count, per opponent vertex, successors inside the region but not yet
    // attracted; when the count hits zero the vertex is forced in.
    let mut missing = vec![0usize; n];
    for v in region.iter() {
        if graph.owner(v) != player {
            missing[v] = graph
                .successors(v)
                .iter()
                .filter(|&&w| region.contains(w))
                .count();
        }
    }
    let mut queue: Vec<usize> = attr.iter().collect();
    let mut qi = 0;
    while qi < queue.len() {
        let w = queue[qi];
        qi += 1;
        for &v in graph.predecessors(w) {
            if !region.contains(v) || attr.contains(v) {
                continue;
            }
            if graph.owner(v) == player {
                attr.insert(v);
                queue.push(v);
            } else {
                missing[v] -= 1;
                if missing[v] == 0 {
                    attr.insert(v);
                    queue.push(v);
                }
            }
        }
    }
    // Rank pass: the strategy takes the lowest successor of strictly smaller
    // rank, so outputs do not depend on queue order.
    let mut rank = vec![usize::MAX; n];
    for v in target.intersection(region).iter() {
        rank[v] = 0;
    }
    let mut changed = true;
    let mut level = 0usize;
    while changed {
        changed = false;
        level += 1;
        for v in attr.iter() {
            if rank[v] != usize::MAX {
                continue;
            }
            let ok = if graph.owner(v) == player {
                graph
                    .successors(v)
                    .iter()
                    .any(|&w| attr.contains(w) && rank[w] < level)
            } else {
                graph
                    .successors(v)
                    .iter()
                    .filter(|&&w| region.contains(w))
                    .all(|&w| attr.contains(w) && rank[w] < level)
            };
            if ok {
                rank[v] = level;
                changed = true;
            }
        }
    }
    for v in attr.iter() {
        if graph.owner(v) == player && rank[v] != 0 {
            let pick = graph
                .successors(v)
                .iter()
                .copied()
                .find(|&w| attr.contains(w) && rank[w] < rank[v])
                .expect("attracted vertex must have a rank-decreasing successor");
            strategy.set(v, pick);
        }
    }
    (attr, strategy)
}

/// Outcome of a single-objective solve: winning region and a memoryless
/// strategy for the protagonist on it.
#[derive(Clone, Debug)]
pub struct SingleSolution {
    pub winning: VertexSet,
    pub strategy: MemorylessStrategy,
}

/// Solves the Büchi game: `protagonist` wants to visit `alpha` infinitely
/// often. Classical iterated-attractor algorithm.
pub fn solve_buchi_in(
    graph: &GameGraph,
    region: &VertexSet,
    alpha: &VertexSet,
    protagonist: Player,
) -> SingleSolution {
    let opponent = protagonist.opponent();
    let mut z = region.clone();
    loop {
        let target = alpha.intersection(&z);
        let reach = attractor(graph, &z, protagonist, &target);
        let trap = z.difference(&reach);
        if trap.is_empty() {
            break;
        }
        let escaped = attractor(graph, &z, opponent, &trap);
        z.subtract(&escaped);
    }
    // On the final region the protagonist attracts to alpha from everywhere;
    // cycle the attractor strategy, taking any inside successor on alpha.
    let target = alpha.intersection(&z);
    let (_, mut strategy) = attractor_with_strategy(graph, &z, protagonist, &target);
    for v in z.iter() {
        if graph.owner(v) == protagonist && strategy.get(v).is_none() {
            let pick = graph
                .successors(v)
                .iter()
                .copied()
                .find(|&w| z.contains(w))
                .expect("winning region is total for the protagonist");
            strategy.set(v, pick);
        }
    }
    SingleSolution { winning: z, strategy }
}

pub fn solve_buchi(graph: &GameGraph, alpha: &VertexSet, protagonist: Player) -> SingleSolution {
    solve_buchi_in(graph, &graph.full_set(), alpha, protagonist)
}

/// Solves the co-Büchi game: `protagonist` wants only finitely many `alpha`
/// visits. The winning region is the complement of the opponent's Büchi
/// region (two-player ω-regular games are determined); the strategy is
/// assembled from the trap/attractor pieces of the dual iteration.
pub fn solve_cobuchi_in(
    graph: &GameGraph,
    region: &VertexSet,
    alpha: &VertexSet,
    protagonist: Player,
) -> SingleSolution {
    let opponent = protagonist.opponent();
    let mut z = region.clone();
    let mut winning = VertexSet::empty(graph.len());
    let mut strategy = MemorylessStrategy::new(protagonist, graph.len());
    loop {
        let target = alpha.intersection(&z);
        let reach = attractor(graph, &z, opponent, &target);
        let trap = z.difference(&reach);
        if trap.is_empty() {
            break;
        }
        // Inside the trap the protagonist can stay clear of alpha forever.
        for v in trap.iter() {
            if graph.owner(v) == protagonist {
                let pick = graph
                    .successors(v)
                    .iter()
                    .copied()
                    .find(|&w| trap.contains(w))
                    .expect("trap is total for the protagonist");
                strategy.set(v, pick);
            }
        }
        let (reach_trap, march) = attractor_with_strategy(graph, &z, protagonist, &trap);
        strategy.merge_from(&march);
        winning.union_with(&reach_trap);
        z.subtract(&reach_trap);
    }
    SingleSolution { winning, strategy }
}

pub fn solve_cobuchi(graph: &GameGraph, alpha: &VertexSet, protagonist: Player) -> SingleSolution {
    solve_cobuchi_in(graph, &graph.full_set(), alpha, protagonist)
}

/// A region from which every conjunct of an All-Büchi objective can be
/// re-reached forever, with one witness strategy per conjunct.
#[derive(Clone, Debug)]
pub struct WinningCage {
    pub cage: VertexSet,
    pub witnesses: Vec<MemorylessStrategy>,
}

impl WinningCage {
    /// Checks the cage invariants directly: each witness stays inside the
    /// cage and forces its target from every cage vertex, and the cage is
    /// closed under opponent moves.
    pub fn validate(
        &self,
        graph: &GameGraph,
        targets: &[VertexSet],
        protagonist: Player,
    ) -> Result<(), String> {
        if self.witnesses.len() != targets.len() {
            return Err("one witness strategy per objective is required".into());
        }
        for v in self.cage.iter() {
            if graph.owner(v) != protagonist
                && !graph.successor_set(v).is_subset(&self.cage)
            {
                return Err(format!("cage is not closed at {:?}", graph.id(v)));
            }
        }
        for (i, (witness, target)) in self.witnesses.iter().zip(targets).enumerate() {
            witness.validate(graph)?;
            let mut reached = target.intersection(&self.cage);
            loop {
                let mut grew = false;
                for v in self.cage.difference(&reached).iter() {
                    let ok = if graph.owner(v) == protagonist {
                        match witness.get(v) {
                            Some(t) => self.cage.contains(t) && reached.contains(t),
                            None => false,
                        }
                    } else {
                        graph
                            .successors(v)
                            .iter()
                            .filter(|&&w| self.cage.contains(w))
                            .all(|&w| reached.contains(w))
                    };
                    if ok {
                        reached.insert(v);
                        grew = true;
                    }
                }
                if !grew {
                    break;
                }
            }
            if !self.cage.is_subset(&reached) {
                return Err(format!("witness {i} does not force its target from the whole cage"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct AllBuchiSolution {
    pub winning: VertexSet,
    pub cage: Option<WinningCage>,
}

/// Solves the generalized (All-) Büchi game by the classical nested fixpoint:
/// rotate through the targets, removing the opponent attractor of any part of
/// the candidate region that cannot re-reach the current target.
///
/// The final region is exactly the protagonist's winning set, and it doubles
/// as a winning cage; the per-target attractor strategies are its witnesses.
pub fn solve_all_buchi_in(
    graph: &GameGraph,
    region: &VertexSet,
    targets: &[VertexSet],
    protagonist: Player,
) -> AllBuchiSolution {
    let opponent = protagonist.opponent();
    let mut z = region.clone();
    if targets.is_empty() {
        // Vacuous conjunction: everything wins, no witnesses needed.
        return AllBuchiSolution {
            winning: z.clone(),
            cage: if z.is_empty() { None } else { Some(WinningCage { cage: z, witnesses: vec![] }) },
        };
    }
    'outer: loop {
        for t in targets {
            let goal = t.intersection(&z);
            let reach = attractor(graph, &z, protagonist, &goal);
            let stuck = z.difference(&reach);
            if !stuck.is_empty() {
                let escaped = attractor(graph, &z, opponent, &stuck);
                z.subtract(&escaped);
                if z.is_empty() {
                    break 'outer;
                }
                continue 'outer;
            }
        }
        break;
    }
    if z.is_empty() {
        return AllBuchiSolution { winning: z, cage: None };
    }
    let mut witnesses = Vec::with_capacity(targets.len());
    for t in targets {
        let goal = t.intersection(&z);
        let (_, mut w) = attractor_with_strategy(graph, &z, protagonist, &goal);
        for v in z.iter() {
            if graph.owner(v) == protagonist && w.get(v).is_none() {
                let pick = graph
                    .successors(v)
                    .iter()
                    .copied()
                    .find(|&u| z.contains(u))
                    .expect("cage is total for the protagonist");
                w.set(v, pick);
            }
        }
        witnesses.push(w);
    }
    AllBuchiSolution { winning: z.clone(), cage: Some(WinningCage { cage: z, witnesses }) }
}

/// Public entry point; the cage is reported when the protagonist wins from
/// the initial vertex.
pub fn solve_all_buchi(
    graph: &GameGraph,
    targets: &[VertexSet],
    protagonist: Player,
) -> AllBuchiSolution {
    let mut sol = solve_all_buchi_in(graph, &graph.full_set(), targets, protagonist);
    if !sol.winning.contains(graph.initial()) {
        sol.cage = None;
    }
    sol
}

/// All-co-Büchi reduces to a single co-Büchi objective over the union.
pub fn solve_all_cobuchi_in(
    graph: &GameGraph,
    region: &VertexSet,
    targets: &[VertexSet],
    protagonist: Player,
) -> SingleSolution {
    let mut union = VertexSet::empty(graph.len());
    for t in targets {
        union.union_with(t);
    }
    solve_cobuchi_in(graph, region, &union, protagonist)
}

pub fn solve_all_cobuchi(
    graph: &GameGraph,
    targets: &[VertexSet],
    protagonist: Player,
) -> SingleSolution {
    solve_all_cobuchi_in(graph, &graph.full_set(), targets, protagonist)
}

/// Result of translating a superset objective (a disjunction of All-Büchi
/// objectives) into one equivalent All-Büchi objective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupersetTranslation {
    pub objectives: Vec<VertexSet>,
    /// Set when every input family was empty and the output had to be forced
    /// unsatisfiable.
    pub degenerate: bool,
}

/// Choice-product construction: one output set per way of picking a set from
/// each family, each output being the union of the picks. A play satisfies
/// the output conjunction iff it satisfies every set of at least one family.
///
/// Empty families are treated as unsatisfiable disjuncts: they are dropped
/// when another family remains, and if nothing remains the output is the
/// single empty (Büchi-unsatisfiable) set, flagged degenerate.
pub fn superset_to_all_buchi(families: &[Vec<VertexSet>], universe: usize) -> SupersetTranslation {
    let kept: Vec<&Vec<VertexSet>> = families.iter().filter(|f| !f.is_empty()).collect();
    if kept.is_empty() {
        return SupersetTranslation {
            objectives: vec![VertexSet::empty(universe)],
            degenerate: !families.is_empty(),
        };
    }
    let mut out: Vec<VertexSet> = vec![VertexSet::empty(universe)];
    for family in kept {
        let mut next = Vec::with_capacity(out.len() * family.len());
        for prefix in &out {
            for set in family {
                next.push(prefix.union(set));
            }
        }
        out = next;
    }
    SupersetTranslation { objectives: out, degenerate: false }
}

/// Deduplicated, minimal-sets-only variant used internally where the output
/// feeds another solver; semantically equivalent to the raw product.
pub(crate) fn superset_to_all_buchi_reduced(
    families: &[Vec<VertexSet>],
    universe: usize,
) -> Vec<VertexSet> {
    let raw = superset_to_all_buchi(families, universe).objectives;
    let mut minimal: Vec<VertexSet> = Vec::new();
    for s in raw {
        if minimal.iter().any(|m| m.is_subset(&s)) {
            continue;
        }
        minimal.retain(|m| !s.is_subset(m));
        minimal.push(s);
    }
    minimal.sort();
    minimal
}

/// Exists-co-Büchi: the protagonist wins a play iff at least one of the
/// `families` sets is visited only finitely often. The winning region is the
/// complement of the opponent's All-Büchi region; a uniform memoryless
/// strategy is searched for exhaustively inside the winning region, and
/// `None` is returned if the region is empty or the search space exceeds
/// `search_budget`.
pub fn solve_exists_cobuchi(
    graph: &GameGraph,
    families: &[VertexSet],
    protagonist: Player,
    search_budget: u64,
) -> (VertexSet, Option<MemorylessStrategy>) {
    let winning = exists_cobuchi_win_set(graph, &graph.full_set(), families, protagonist);
    if winning.is_empty() {
        return (winning, None);
    }
    let strategy = find_exists_cobuchi_strategy(graph, &winning, families, protagonist, search_budget);
    (winning, strategy)
}

pub(crate) fn exists_cobuchi_win_set(
    graph: &GameGraph,
    region: &VertexSet,
    families: &[VertexSet],
    protagonist: Player,
) -> VertexSet {
    let dual = solve_all_buchi_in(graph, region, families, protagonist.opponent());
    region.difference(&dual.winning)
}

fn find_exists_cobuchi_strategy(
    graph: &GameGraph,
    winning: &VertexSet,
    families: &[VertexSet],
    protagonist: Player,
    search_budget: u64,
) -> Option<MemorylessStrategy> {
    // Candidate choices per owned vertex in the winning region have to stay
    // inside it; the opponent cannot leave it.
    let owned: Vec<usize> = winning
        .iter()
        .filter(|&v| graph.owner(v) == protagonist)
        .collect();
    let options: Vec<Vec<usize>> = owned
        .iter()
        .map(|&v| {
            graph
                .successors(v)
                .iter()
                .copied()
                .filter(|&w| winning.contains(w))
                .collect()
        })
        .collect();
    if options.iter().any(Vec::is_empty) {
        return None;
    }
    let mut total: u64 = 1;
    for opts in &options {
        total = total.saturating_mul(opts.len() as u64);
        if total > search_budget {
            return None;
        }
    }
    let mut picks = vec![0usize; owned.len()];
    loop {
        let mut candidate = MemorylessStrategy::new(protagonist, graph.len());
        for (i, &v) in owned.iter().enumerate() {
            candidate.set(v, options[i][picks[i]]);
        }
        if exists_cobuchi_strategy_wins(graph, winning, families, protagonist, &candidate) {
            return Some(candidate);
        }
        // Next assignment in mixed-radix order.
        let mut i = 0;
        loop {
            if i == picks.len() {
                return None;
            }
            picks[i] += 1;
            if picks[i] < options[i].len() {
                break;
            }
            picks[i] = 0;
            i += 1;
        }
    }
}

/// With the protagonist fixed to a memoryless strategy the opponent plays a
/// one-player game: she defeats the Exists-co-Büchi objective iff some
/// reachable non-trivial SCC of the induced graph meets every family.
fn exists_cobuchi_strategy_wins(
    graph: &GameGraph,
    winning: &VertexSet,
    families: &[VertexSet],
    protagonist: Player,
    strategy: &MemorylessStrategy,
) -> bool {
    let induced = induced_successor_sets(graph, winning, protagonist, strategy);
    for (component, trivial) in scc_of_induced(&induced, winning) {
        if trivial {
            continue;
        }
        if families.iter().all(|f| f.intersects(&component)) {
            // Reachability within the winning region: the component must be
            // reachable from some winning vertex, which it is by membership.
            return false;
        }
    }
    true
}

pub(crate) fn induced_successor_sets(
    graph: &GameGraph,
    region: &VertexSet,
    strategist: Player,
    strategy: &MemorylessStrategy,
) -> Vec<VertexSet> {
    let n = graph.len();
    let mut succ = vec![VertexSet::empty(n); n];
    for v in region.iter() {
        if graph.owner(v) == strategist {
            if let Some(t) = strategy.get(v) {
                if region.contains(t) {
                    succ[v].insert(t);
                }
            }
        } else {
            succ[v] = graph.successor_set(v).intersection(region);
        }
    }
    succ
}

/// Tarjan over an explicit successor-set table (used for strategy-induced
/// sub-graphs); returns components with their triviality flag.
pub(crate) fn scc_of_induced(
    succ: &[VertexSet],
    region: &VertexSet,
) -> Vec<(VertexSet, bool)> {
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next = 0;
    let mut out = Vec::new();

    enum Frame {
        Enter(usize),
        Resume(usize, Vec<usize>, usize),
    }
    let mut work = Vec::new();
    for root in region.iter() {
        if index[root] != usize::MAX {
            continue;
        }
        work.push(Frame::Enter(root));
        while let Some(frame) = work.pop() {
            match frame {
                Frame::Enter(v) => {
                    index[v] = next;
                    low[v] = next;
                    next += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    let succs: Vec<usize> = succ[v].iter().collect();
                    work.push(Frame::Resume(v, succs, 0));
                }
                Frame::Resume(v, succs, mut i) => {
                    let mut descended = false;
                    while i < succs.len() {
                        let w = succs[i];
                        i += 1;
                        if index[w] == usize::MAX {
                            work.push(Frame::Resume(v, succs.clone(), i));
                            work.push(Frame::Enter(w));
                            descended = true;
                            break;
                        } else if on_stack[w] {
                            low[v] = low[v].min(index[w]);
                        }
                    }
                    if descended {
                        continue;
                    }
                    if low[v] == index[v] {
                        let mut comp = VertexSet::empty(n);
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp.insert(w);
                            if w == v {
                                break;
                            }
                        }
                        let trivial = comp.count() == 1 && {
                            let u = comp.first().unwrap();
                            !succ[u].contains(u)
                        };
                        out.push((comp, trivial));
                    } else if let Some(Frame::Resume(p, _, _)) = work.last() {
                        low[*p] = low[*p].min(low[v]);
                    }
                }
            }
        }
    }
    out
}
