//! The coverage decision procedure, structured covering-strategy synthesis,
//! and an independent strategy verifier.
//!
//! The decision rests on decomposition points: vertices where the objectives
//! and agents can be split into two sub-problems that both win. Outside the
//! region from which Disruptor can avoid such points forever, Coverer marches
//! all tokens to a decomposition point and splits; inside it, all agents must
//! jointly win the single-play All game on the induced sub-graph. Sub-problem
//! winning sets are memoized per (agent count, objective subset), and the
//! recursion strictly shrinks the objective subset.

use std::collections::HashMap;
use std::fmt;

use crate::bitset::{ObjectiveIndexSet, VertexSet};
use crate::game::{CoverageGame, ObjectiveKind, Player};
use crate::solvers::{
    attractor_with_strategy, solve_all_buchi_in, solve_all_cobuchi_in, MemorylessStrategy,
    WinningCage,
};

/// One memoized sub-problem: how many agents must cover which objectives.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SubproblemKey {
    pub agents: u32,
    pub objectives: ObjectiveIndexSet,
}

/// Intermediates of the general (recursive) case, kept for reporting.
#[derive(Clone, Debug)]
pub struct CoverageAnalysis {
    /// Coverer-owned vertices where the sub-problem can be split two ways.
    pub decomposable: VertexSet,
    /// Vertices from which Disruptor can avoid every decomposition point.
    pub avoid: VertexSet,
    /// Winning set of the single-play All game on the avoid sub-graph.
    pub avoid_win: VertexSet,
}

/// Memoizing solver for one game; winning sets are computed per vertex, so
/// reinitialized variants come for free.
pub struct CoverageSolver<'g> {
    game: &'g CoverageGame,
    table: HashMap<SubproblemKey, VertexSet>,
    analysis: HashMap<SubproblemKey, CoverageAnalysis>,
}

impl<'g> CoverageSolver<'g> {
    pub fn new(game: &'g CoverageGame) -> Self {
        CoverageSolver { game, table: HashMap::new(), analysis: HashMap::new() }
    }

    pub fn subproblems_solved(&self) -> usize {
        self.table.len()
    }

    /// Winning set of the sub-problem: vertices from which `agents` agents
    /// cover the `objectives` subset.
    pub fn winning_set(&mut self, agents: u32, objectives: ObjectiveIndexSet) -> VertexSet {
        let key = SubproblemKey { agents, objectives };
        if let Some(hit) = self.table.get(&key) {
            return hit.clone();
        }
        let graph = &self.game.graph;
        let count = objectives.count() as u32;
        let result = if objectives.is_empty() {
            graph.full_set()
        } else if agents == 1 {
            let sets = self.game.objective_sets(objectives);
            match self.game.kind {
                ObjectiveKind::Buchi => {
                    solve_all_buchi_in(graph, &graph.full_set(), &sets, Player::Coverer).winning
                }
                ObjectiveKind::CoBuchi => {
                    solve_all_cobuchi_in(graph, &graph.full_set(), &sets, Player::Coverer).winning
                }
            }
        } else if agents >= count {
            // One agent per objective suffices; surplus agents are idle.
            let mut acc = graph.full_set();
            for i in objectives.iter() {
                let single =
                    self.winning_set(1, ObjectiveIndexSet::singleton(objectives.universe(), i));
                acc.intersect_with(&single);
            }
            acc
        } else {
            let analysis = self.general_analysis(agents, objectives);
            let mut win = self.game.graph.full_set();
            win.subtract(&analysis.avoid);
            win.union_with(&analysis.avoid_win);
            win
        };
        self.table.insert(key, result.clone());
        result
    }

    /// Vertices (any owner) where the sub-problem splits into two winning
    /// halves. Only Coverer-owned members can serve as decomposition points.
    pub fn decomposable_set(&mut self, agents: u32, objectives: ObjectiveIndexSet) -> VertexSet {
        let n = self.game.graph.len();
        let mut dec = VertexSet::empty(n);
        if agents < 2 || objectives.count() < 2 {
            return dec;
        }
        let m = objectives.universe();
        let low = objectives.iter().next().expect("nonempty");
        let members: Vec<usize> = objectives.iter().collect();
        let rest: Vec<usize> = members.iter().copied().filter(|&i| i != low).collect();
        // Bipartitions: the part containing the lowest objective runs over
        // all subsets of the remaining indices.
        for bits in 0..(1u64 << rest.len()) {
            let mut part = ObjectiveIndexSet::singleton(m, low);
            for (j, &i) in rest.iter().enumerate() {
                if bits >> j & 1 == 1 {
                    part.insert(i);
                }
            }
            let other = objectives.difference(&part);
            if other.is_empty() {
                continue;
            }
            for first_agents in 1..agents {
                let a = self.winning_set(first_agents, part);
                let b = self.winning_set(agents - first_agents, other);
                dec.union_with(&a.intersection(&b));
            }
        }
        dec
    }

    fn general_analysis(&mut self, agents: u32, objectives: ObjectiveIndexSet) -> CoverageAnalysis {
        let key = SubproblemKey { agents, objectives };
        if let Some(hit) = self.analysis.get(&key) {
            return hit.clone();
        }
        let graph = &self.game.graph;
        let dec = self
            .decomposable_set(agents, objectives)
            .intersection(&graph.owned_by(Player::Coverer));
        let (reach, _) = attractor_with_strategy(graph, &graph.full_set(), Player::Coverer, &dec);
        let avoid = reach.complement();
        let avoid_win = if avoid.is_empty() {
            VertexSet::empty(graph.len())
        } else {
            let sets = self.game.objective_sets(objectives);
            match self.game.kind {
                ObjectiveKind::Buchi => {
                    solve_all_buchi_in(graph, &avoid, &sets, Player::Coverer).winning
                }
                ObjectiveKind::CoBuchi => {
                    solve_all_cobuchi_in(graph, &avoid, &sets, Player::Coverer).winning
                }
            }
        };
        let analysis = CoverageAnalysis { decomposable: dec, avoid, avoid_win };
        self.analysis.insert(key, analysis.clone());
        analysis
    }

    /// The intermediates of the top-level problem (useful for reports); for
    /// base-case games the decomposable and avoid sets are degenerate.
    pub fn top_analysis(&mut self) -> CoverageAnalysis {
        let agents = self.game.agents;
        let objectives = self.game.all_objectives();
        let count = objectives.count() as u32;
        if !objectives.is_empty() && agents >= 2 && agents < count {
            self.general_analysis(agents, objectives)
        } else {
            let win = self.winning_set(agents, objectives);
            CoverageAnalysis {
                decomposable: VertexSet::empty(self.game.graph.len()),
                avoid: self.game.graph.full_set(),
                avoid_win: win,
            }
        }
    }

    pub fn covered(&mut self) -> bool {
        let win = self.winning_set(self.game.agents, self.game.all_objectives());
        win.contains(self.game.graph.initial())
    }

    /// Builds the structured covering strategy; call only when the entry
    /// vertex is winning for the sub-problem.
    fn synthesize(
        &mut self,
        entry: usize,
        agents: u32,
        objectives: ObjectiveIndexSet,
    ) -> CoveringStrategyTree {
        debug_assert!(self.winning_set(agents, objectives).contains(entry));
        let graph = &self.game.graph;
        let count = objectives.count() as u32;
        if objectives.is_empty() {
            return CoveringStrategyTree::Leaf(self.trivial_leaf());
        }
        if count == 1 || agents == 1 {
            return CoveringStrategyTree::Leaf(self.all_leaf(&graph.full_set(), objectives, None));
        }
        if agents >= count {
            // Dedicated agent per objective, extras joining the first.
            let m = objectives.universe();
            let parts: Vec<SplitPart> = objectives
                .iter()
                .enumerate()
                .map(|(j, i)| {
                    let part_agents = if j == 0 { agents - count + 1 } else { 1 };
                    let mask = ObjectiveIndexSet::singleton(m, i);
                    SplitPart {
                        agents: part_agents,
                        objectives: mask,
                        child: self.synthesize(entry, part_agents, mask),
                    }
                })
                .collect();
            return CoveringStrategyTree::Split(SplitNode { at: entry, parts });
        }
        let analysis = self.general_analysis(agents, objectives);
        let march = (!analysis.decomposable.is_empty())
            .then(|| self.march_node(agents, objectives, &analysis));
        if analysis.avoid.contains(entry) {
            let leaf = self.all_leaf(&analysis.avoid, objectives, march.map(Box::new));
            CoveringStrategyTree::Leaf(leaf)
        } else {
            CoveringStrategyTree::March(march.expect("entry attracted to a decomposition point"))
        }
    }

    fn march_node(
        &mut self,
        agents: u32,
        objectives: ObjectiveIndexSet,
        analysis: &CoverageAnalysis,
    ) -> MarchNode {
        let graph = &self.game.graph;
        let (_, strategy) = attractor_with_strategy(
            graph,
            &graph.full_set(),
            Player::Coverer,
            &analysis.decomposable,
        );
        let splits = analysis
            .decomposable
            .iter()
            .map(|d| self.split_node(d, agents, objectives))
            .collect();
        MarchNode { attractor: strategy, splits }
    }

    fn split_node(&mut self, at: usize, agents: u32, objectives: ObjectiveIndexSet) -> SplitNode {
        let (first_agents, part) = self
            .first_decomposition(at, agents, objectives)
            .expect("decomposition point admits a split");
        let other = objectives.difference(&part);
        let parts = vec![
            SplitPart {
                agents: first_agents,
                objectives: part,
                child: self.synthesize(at, first_agents, part),
            },
            SplitPart {
                agents: agents - first_agents,
                objectives: other,
                child: self.synthesize(at, agents - first_agents, other),
            },
        ];
        SplitNode { at, parts }
    }

    /// Lexicographically-first winning bipartition at a vertex.
    fn first_decomposition(
        &mut self,
        v: usize,
        agents: u32,
        objectives: ObjectiveIndexSet,
    ) -> Option<(u32, ObjectiveIndexSet)> {
        let m = objectives.universe();
        let low = objectives.iter().next()?;
        let rest: Vec<usize> = objectives.iter().filter(|&i| i != low).collect();
        for bits in 0..(1u64 << rest.len()) {
            let mut part = ObjectiveIndexSet::singleton(m, low);
            for (j, &i) in rest.iter().enumerate() {
                if bits >> j & 1 == 1 {
                    part.insert(i);
                }
            }
            let other = objectives.difference(&part);
            if other.is_empty() {
                continue;
            }
            for first_agents in 1..agents {
                if self.winning_set(first_agents, part).contains(v)
                    && self.winning_set(agents - first_agents, other).contains(v)
                {
                    return Some((first_agents, part));
                }
            }
        }
        None
    }

    fn trivial_leaf(&self) -> LeafNode {
        let graph = &self.game.graph;
        let mut strategy = MemorylessStrategy::new(Player::Coverer, graph.len());
        for v in 0..graph.len() {
            if graph.owner(v) == Player::Coverer {
                strategy.set(v, graph.successors(v)[0]);
            }
        }
        let strategy = match self.game.kind {
            ObjectiveKind::Buchi => LeafStrategy::Rotation(vec![]),
            ObjectiveKind::CoBuchi => LeafStrategy::Avoidance(strategy),
        };
        LeafNode { region: graph.full_set(), strategy, escape: None }
    }

    fn all_leaf(
        &mut self,
        region: &VertexSet,
        objectives: ObjectiveIndexSet,
        escape: Option<Box<MarchNode>>,
    ) -> LeafNode {
        let graph = &self.game.graph;
        let sets = self.game.objective_sets(objectives);
        match self.game.kind {
            ObjectiveKind::Buchi => {
                let sol = solve_all_buchi_in(graph, region, &sets, Player::Coverer);
                let WinningCage { cage, witnesses } =
                    sol.cage.expect("winning entry implies a nonempty cage");
                LeafNode { region: cage, strategy: LeafStrategy::Rotation(witnesses), escape }
            }
            ObjectiveKind::CoBuchi => {
                let sol = solve_all_cobuchi_in(graph, region, &sets, Player::Coverer);
                LeafNode {
                    region: sol.winning,
                    strategy: LeafStrategy::Avoidance(sol.strategy),
                    escape,
                }
            }
        }
    }
}

/// Is the sub-problem splittable two ways at `v`? (The internal check is
/// fixed to bipartitions; wider splits reduce to repeated bipartition.)
pub fn is_decomposable(game: &CoverageGame, v: usize) -> bool {
    let mut solver = CoverageSolver::new(game);
    solver
        .decomposable_set(game.agents, game.all_objectives())
        .contains(v)
}

/// Test-generalized decomposability into `parts` groups. Enumerates every
/// partition of the objectives and every composition of the agents.
pub fn is_decomposable_into(game: &CoverageGame, v: usize, parts: u32) -> bool {
    let m = game.objective_count();
    let k = game.agents;
    if parts == 0 || parts > k || (parts as usize) > m {
        return false;
    }
    let mut solver = CoverageSolver::new(game);
    let mut assignment = vec![0u32; m];
    partition_search(&mut solver, v, k, parts, &mut assignment, 0)
}

fn partition_search(
    solver: &mut CoverageSolver,
    v: usize,
    agents: u32,
    parts: u32,
    assignment: &mut Vec<u32>,
    at: usize,
) -> bool {
    let m = assignment.len();
    if at == m {
        let masks: Vec<ObjectiveIndexSet> = (0..parts)
            .map(|g| {
                ObjectiveIndexSet::from_bits(
                    m,
                    assignment
                        .iter()
                        .enumerate()
                        .filter(|(_, &a)| a == g)
                        .fold(0u64, |acc, (i, _)| acc | (1 << i)),
                )
            })
            .collect();
        if masks.iter().any(ObjectiveIndexSet::is_empty) {
            return false;
        }
        return composition_search(solver, v, agents, &masks, &mut Vec::new());
    }
    for g in 0..parts {
        assignment[at] = g;
        if partition_search(solver, v, agents, parts, assignment, at + 1) {
            return true;
        }
    }
    false
}

fn composition_search(
    solver: &mut CoverageSolver,
    v: usize,
    remaining: u32,
    masks: &[ObjectiveIndexSet],
    chosen: &mut Vec<u32>,
) -> bool {
    if masks.len() == 1 {
        if remaining == 0 {
            return false;
        }
        return solver.winning_set(remaining, masks[0]).contains(v);
    }
    let tail = masks.len() as u32 - 1;
    for a in 1..=(remaining.saturating_sub(tail)) {
        if solver.winning_set(a, masks[0]).contains(v) {
            chosen.push(a);
            if composition_search(solver, v, remaining - a, &masks[1..], chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Decides coverage without synthesizing a strategy.
pub fn decide_coverage(game: &CoverageGame) -> bool {
    CoverageSolver::new(game).covered()
}

/// Per-vertex winning set for the game's own agent count and objectives.
pub fn winning_coverage_set(game: &CoverageGame) -> VertexSet {
    CoverageSolver::new(game).winning_set(game.agents, game.all_objectives())
}

/// Decides coverage and, when Coverer wins, synthesizes the covering
/// strategy tree.
pub fn solve_coverage(game: &CoverageGame) -> (bool, Option<CoveringStrategyTree>) {
    let mut solver = CoverageSolver::new(game);
    if !solver.covered() {
        return (false, None);
    }
    let tree = solver.synthesize(game.graph.initial(), game.agents, game.all_objectives());
    (true, Some(tree))
}

// ---------------------------------------------------------------------------
// Covering strategy trees
// ---------------------------------------------------------------------------

/// Structured covering strategy.
///
/// A `Leaf` keeps all agents together on one joint All-strategy inside a
/// region; if Disruptor can exit the region, the leaf carries an escape march
/// that takes over at the exit targets. A `March` moves all tokens to a
/// decomposition point, then hands over to the split for the point actually
/// reached. A `Split` divides agents and objectives at a vertex and recurses.
#[derive(Clone, Debug)]
pub enum CoveringStrategyTree {
    Leaf(LeafNode),
    March(MarchNode),
    Split(SplitNode),
}

#[derive(Clone, Debug)]
pub struct LeafNode {
    pub region: VertexSet,
    pub strategy: LeafStrategy,
    pub escape: Option<Box<MarchNode>>,
}

/// Joint strategy of a leaf: a witness per objective cycled in index order
/// for Büchi (the one place finite memory is required), or a single
/// memoryless avoidance strategy for co-Büchi.
#[derive(Clone, Debug)]
pub enum LeafStrategy {
    Rotation(Vec<MemorylessStrategy>),
    Avoidance(MemorylessStrategy),
}

#[derive(Clone, Debug)]
pub struct MarchNode {
    pub attractor: MemorylessStrategy,
    pub splits: Vec<SplitNode>,
}

#[derive(Clone, Debug)]
pub struct SplitNode {
    pub at: usize,
    pub parts: Vec<SplitPart>,
}

#[derive(Clone, Debug)]
pub struct SplitPart {
    pub agents: u32,
    pub objectives: ObjectiveIndexSet,
    pub child: CoveringStrategyTree,
}

/// Malformed tree: wrong shape, wrong graph, or broken partition bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralError {
    pub path: String,
    pub reason: String,
}

impl fmt::Display for StructuralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "structural error at {}: {}", self.path, self.reason)
    }
}

impl std::error::Error for StructuralError {}

/// Verification result: either verified, or refuted with a diagnostic naming
/// the failing node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyOutcome {
    Verified,
    Refuted { path: String, reason: String },
}

impl VerifyOutcome {
    pub fn is_verified(&self) -> bool {
        matches!(self, VerifyOutcome::Verified)
    }
}

/// Replays a covering strategy tree against the game, independently of the
/// solver: leaves are checked by force-reach fixpoints (Büchi witnesses) or
/// cycle analysis of the induced sub-graph (co-Büchi), marches by a
/// forced-reach fixpoint, splits by the partition bookkeeping, all walked
/// recursively from the initial vertex.
pub fn verify_covering_strategy(
    game: &CoverageGame,
    tree: &CoveringStrategyTree,
) -> Result<VerifyOutcome, StructuralError> {
    let entries = VertexSet::singleton(game.graph.len(), game.graph.initial());
    let mut v = Verifier { game };
    v.node(tree, "root", &entries, game.agents, game.all_objectives())
}

struct Verifier<'g> {
    game: &'g CoverageGame,
}

type VerifyResult = Result<VerifyOutcome, StructuralError>;

impl Verifier<'_> {
    fn structural(&self, path: &str, reason: impl Into<String>) -> StructuralError {
        StructuralError { path: path.to_string(), reason: reason.into() }
    }

    fn refuted(&self, path: &str, reason: impl Into<String>) -> VerifyResult {
        Ok(VerifyOutcome::Refuted { path: path.to_string(), reason: reason.into() })
    }

    fn node(
        &mut self,
        tree: &CoveringStrategyTree,
        path: &str,
        entries: &VertexSet,
        agents: u32,
        objectives: ObjectiveIndexSet,
    ) -> VerifyResult {
        match tree {
            CoveringStrategyTree::Leaf(leaf) => self.leaf(leaf, path, entries, agents, objectives),
            CoveringStrategyTree::March(march) => {
                self.march(march, path, entries, agents, objectives)
            }
            CoveringStrategyTree::Split(split) => {
                self.split(split, path, entries, agents, objectives)
            }
        }
    }

    fn split(
        &mut self,
        split: &SplitNode,
        path: &str,
        entries: &VertexSet,
        agents: u32,
        objectives: ObjectiveIndexSet,
    ) -> VerifyResult {
        let graph = &self.game.graph;
        if split.at >= graph.len() {
            return Err(self.structural(path, "split vertex out of range"));
        }
        if entries != &VertexSet::singleton(graph.len(), split.at) {
            return Err(self.structural(
                path,
                format!("split at {:?} does not match its entry point", graph.id(split.at)),
            ));
        }
        if split.parts.is_empty() {
            return Err(self.structural(path, "split has no parts"));
        }
        let mut seen = ObjectiveIndexSet::empty(objectives.universe());
        let mut total_agents = 0u32;
        for (i, part) in split.parts.iter().enumerate() {
            if part.agents == 0 {
                return Err(self.structural(path, format!("part {i} has no agents")));
            }
            if part.objectives.is_empty() {
                return Err(self.structural(path, format!("part {i} has no objectives")));
            }
            if !part.objectives.intersection(&seen).is_empty() {
                return Err(self.structural(path, format!("part {i} shares an objective")));
            }
            seen = seen.union(&part.objectives);
            total_agents += part.agents;
        }
        if seen != objectives {
            return Err(self.structural(path, "parts do not partition the objectives"));
        }
        if total_agents != agents {
            return Err(self.structural(path, "part agent counts do not sum to the parent's"));
        }
        let entry = VertexSet::singleton(graph.len(), split.at);
        for (i, part) in split.parts.iter().enumerate() {
            let sub = format!("{path}/part[{i}]");
            match self.node(&part.child, &sub, &entry, part.agents, part.objectives)? {
                VerifyOutcome::Verified => {}
                refuted => return Ok(refuted),
            }
        }
        Ok(VerifyOutcome::Verified)
    }

    fn march(
        &mut self,
        march: &MarchNode,
        path: &str,
        entries: &VertexSet,
        agents: u32,
        objectives: ObjectiveIndexSet,
    ) -> VerifyResult {
        let graph = &self.game.graph;
        if march.splits.is_empty() {
            return Err(self.structural(path, "march has no splits to reach"));
        }
        if march.attractor.owner != Player::Coverer {
            return Err(self.structural(path, "march strategy not owned by Coverer"));
        }
        march
            .attractor
            .validate(graph)
            .map_err(|e| self.structural(path, e))?;
        let mut targets = VertexSet::empty(graph.len());
        for s in &march.splits {
            if s.at >= graph.len() {
                return Err(self.structural(path, "split vertex out of range"));
            }
            if targets.contains(s.at) {
                return Err(self.structural(
                    path,
                    format!("duplicate split at {:?}", graph.id(s.at)),
                ));
            }
            targets.insert(s.at);
        }
        // Forced reach of the split set under the declared strategy.
        let mut forced = targets.clone();
        loop {
            let mut grew = false;
            for v in forced.complement().iter() {
                let ok = match graph.owner(v) {
                    Player::Coverer => {
                        march.attractor.get(v).is_some_and(|t| forced.contains(t))
                    }
                    Player::Disruptor => graph.successor_set(v).is_subset(&forced),
                };
                if ok {
                    forced.insert(v);
                    grew = true;
                }
            }
            if !grew {
                break;
            }
        }
        if !entries.is_subset(&forced) {
            let stray = entries.difference(&forced).first().unwrap();
            return self.refuted(
                path,
                format!(
                    "march does not force the play from {:?} to a decomposition point",
                    graph.id(stray)
                ),
            );
        }
        for (i, split) in march.splits.iter().enumerate() {
            let sub = format!("{path}/split[{}]", graph.id(split.at));
            let entry = VertexSet::singleton(graph.len(), split.at);
            match self.split(split, &sub, &entry, agents, objectives)? {
                VerifyOutcome::Verified => {}
                refuted => {
                    let _ = i;
                    return Ok(refuted);
                }
            }
        }
        Ok(VerifyOutcome::Verified)
    }

    fn leaf(
        &mut self,
        leaf: &LeafNode,
        path: &str,
        entries: &VertexSet,
        agents: u32,
        objectives: ObjectiveIndexSet,
    ) -> VerifyResult {
        let graph = &self.game.graph;
        if leaf.region.universe() != graph.len() {
            return Err(self.structural(path, "leaf region built against a different graph"));
        }
        if !entries.is_subset(&leaf.region) {
            return self.refuted(path, "leaf region does not contain its entry points");
        }
        let sets = self.game.objective_sets(objectives);
        let strategies: Vec<&MemorylessStrategy> = match (&leaf.strategy, self.game.kind) {
            (LeafStrategy::Rotation(w), ObjectiveKind::Buchi) => {
                if w.len() != sets.len() {
                    return Err(self.structural(path, "one witness per objective is required"));
                }
                w.iter().collect()
            }
            (LeafStrategy::Avoidance(s), ObjectiveKind::CoBuchi) => vec![s],
            _ => {
                return Err(self.structural(path, "leaf strategy kind does not match the game"));
            }
        };
        for s in &strategies {
            if s.owner != Player::Coverer {
                return Err(self.structural(path, "leaf strategy not owned by Coverer"));
            }
            s.validate(graph).map_err(|e| self.structural(path, e))?;
            for v in leaf.region.iter() {
                if graph.owner(v) == Player::Coverer {
                    match s.get(v) {
                        None => {
                            return self.refuted(
                                path,
                                format!("strategy undefined at {:?}", graph.id(v)),
                            )
                        }
                        Some(t) if !leaf.region.contains(t) => {
                            return self.refuted(
                                path,
                                format!("strategy leaves the region at {:?}", graph.id(v)),
                            )
                        }
                        _ => {}
                    }
                }
            }
        }
        // Disruptor exits must be absorbed by the escape march, or not exist.
        let mut exits = VertexSet::empty(graph.len());
        for v in leaf.region.iter() {
            if graph.owner(v) == Player::Disruptor {
                exits.union_with(&graph.successor_set(v).difference(&leaf.region));
            }
        }
        if !exits.is_empty() {
            match &leaf.escape {
                None => {
                    return self.refuted(path, "region is not closed under Disruptor moves");
                }
                Some(march) => {
                    let sub = format!("{path}/escape");
                    match self.march(march, &sub, &exits, agents, objectives)? {
                        VerifyOutcome::Verified => {}
                        refuted => return Ok(refuted),
                    }
                }
            }
        }
        match self.game.kind {
            ObjectiveKind::Buchi => {
                for (i, (witness, target)) in strategies.iter().zip(&sets).enumerate() {
                    if let Some(bad) = self.force_reach_gap(leaf, witness, target) {
                        return self.refuted(
                            path,
                            format!(
                                "witness {i} cannot force its objective from {:?}",
                                graph.id(bad)
                            ),
                        );
                    }
                }
            }
            ObjectiveKind::CoBuchi => {
                let mut avoid = VertexSet::empty(graph.len());
                for s in &sets {
                    avoid.union_with(s);
                }
                let succ = crate::solvers::induced_successor_sets(
                    graph,
                    &leaf.region,
                    Player::Coverer,
                    strategies[0],
                );
                let bad = crate::solvers::scc_of_induced(&succ, &leaf.region)
                    .into_iter()
                    .find(|(c, trivial)| !trivial && c.intersects(&avoid));
                if let Some((comp, _)) = bad {
                    return self.refuted(
                        path,
                        format!(
                            "plays can cycle through an avoided objective at {:?}",
                            graph.id(comp.first().unwrap())
                        ),
                    );
                }
            }
        }
        Ok(VerifyOutcome::Verified)
    }

    /// First region vertex from which the witness fails to force its target
    /// while staying inside the region, if any.
    fn force_reach_gap(
        &self,
        leaf: &LeafNode,
        witness: &MemorylessStrategy,
        target: &VertexSet,
    ) -> Option<usize> {
        let graph = &self.game.graph;
        let mut reached = target.intersection(&leaf.region);
        loop {
            let mut grew = false;
            for v in leaf.region.difference(&reached).iter() {
                let ok = match graph.owner(v) {
                    Player::Coverer => witness.get(v).is_some_and(|t| reached.contains(t)),
                    Player::Disruptor => graph
                        .successor_set(v)
                        .intersection(&leaf.region)
                        .is_subset(&reached),
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
        leaf.region.difference(&reached).first()
    }
}
