//! Disruption procedures: memoryless enumeration for Büchi games, symbolic
//! fairness-pair enumeration for co-Büchi games, the Δ-family machinery that
//! characterizes disrupting strategies, and the fixed-objective-count
//! Δ-iteration used as an independent cross-check.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::bitset::{ObjectiveIndexSet, VertexSet};
use crate::game::{CoverageGame, GameGraph, ObjectiveKind, Player};
use crate::one_player::min_union_cover;
use crate::solvers::{
    attractor, exists_cobuchi_win_set, scc_of_induced, solve_all_buchi_in,
    superset_to_all_buchi_reduced, MemorylessStrategy,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DisruptionError {
    #[error("enumeration needs {required} candidates, over the budget of {budget}")]
    BudgetExceeded { budget: u64, required: u64 },
    #[error("strategy leaves Disruptor vertex {0:?} without a choice")]
    IncompleteStrategy(String),
}

/// Enumeration budgets and parallelism knobs.
#[derive(Clone, Copy, Debug)]
pub struct DisruptionConfig {
    /// Cap on the number of memoryless Disruptor strategies scanned.
    pub memoryless_budget: u64,
    /// Cap on fairness-pair work units (pairs plus inner regions).
    pub fairness_budget: u64,
    /// Worker threads for the memoryless scan; 1 keeps it sequential.
    pub jobs: usize,
}

impl Default for DisruptionConfig {
    fn default() -> Self {
        DisruptionConfig {
            memoryless_budget: 1 << 20,
            fairness_budget: 1 << 24,
            jobs: 1,
        }
    }
}

/// Antichain of the maximal objective subsets a single agent can satisfy
/// against a fixed Disruptor strategy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaFamily {
    pub members: Vec<ObjectiveIndexSet>,
}

fn maximal_filter(mut masks: Vec<ObjectiveIndexSet>) -> Vec<ObjectiveIndexSet> {
    masks.sort_by_key(|m| std::cmp::Reverse(m.count()));
    let mut out: Vec<ObjectiveIndexSet> = Vec::new();
    for m in masks {
        if !out.iter().any(|kept| m.is_subset(kept)) {
            out.push(m);
        }
    }
    out.sort();
    out
}

/// Restricts the graph to a memoryless Disruptor strategy and computes the
/// maximal satisfiable objective subsets of the resulting one-player game.
pub fn delta_sets(
    game: &CoverageGame,
    strategy: &MemorylessStrategy,
) -> Result<DeltaFamily, DisruptionError> {
    let graph = &game.graph;
    let m = game.objective_count();
    let n = graph.len();
    let mut succ = vec![VertexSet::empty(n); n];
    for (v, set) in succ.iter_mut().enumerate() {
        match graph.owner(v) {
            Player::Coverer => *set = graph.successor_set(v).clone(),
            Player::Disruptor => match strategy.get(v) {
                Some(t) => set.insert(t),
                None => {
                    return Err(DisruptionError::IncompleteStrategy(graph.id(v).to_string()))
                }
            },
        }
    }
    let reach = reachable_induced(&succ, graph.initial());
    let mut masks = Vec::new();
    match game.kind {
        ObjectiveKind::Buchi => {
            for (comp, trivial) in scc_of_induced(&succ, &reach) {
                if trivial {
                    continue;
                }
                let mut mask = ObjectiveIndexSet::empty(m);
                for (i, obj) in game.objectives.iter().enumerate() {
                    if obj.vertices.intersects(&comp) {
                        mask.insert(i);
                    }
                }
                masks.push(mask);
            }
        }
        ObjectiveKind::CoBuchi => {
            assert!(m <= 24, "subset scan over objectives is capped at 24");
            let mut bits: Vec<u64> = (0..(1u64 << m)).collect();
            bits.sort_by_key(|b| std::cmp::Reverse(b.count_ones()));
            for b in bits {
                let mask = ObjectiveIndexSet::from_bits(m, b);
                if masks.iter().any(|kept| mask.is_subset(kept)) {
                    continue;
                }
                let avoid = game.objective_union(mask);
                let allowed = reach.difference(&avoid);
                let restricted: Vec<VertexSet> =
                    succ.iter().map(|s| s.intersection(&allowed)).collect();
                let has_cycle = scc_of_induced(&restricted, &allowed)
                    .into_iter()
                    .any(|(_, trivial)| !trivial);
                if has_cycle {
                    masks.push(mask);
                }
            }
        }
    }
    Ok(DeltaFamily { members: maximal_filter(masks) })
}

fn reachable_induced(succ: &[VertexSet], from: usize) -> VertexSet {
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

/// Does every multiset of `k` members (repetition allowed) have a nonempty
/// intersection? Decided by a breadth-first walk over the distinct
/// intersection masks, tracking the fewest members needed to reach each.
pub fn is_k_wise_intersecting(complements: &[ObjectiveIndexSet], k: u32) -> bool {
    if complements.is_empty() {
        return true;
    }
    let mut best: HashMap<u64, u32> = HashMap::new();
    let mut frontier: Vec<(u64, u32)> = Vec::new();
    for c in complements {
        if best.get(&c.bits()).is_none_or(|&d| d > 1) {
            best.insert(c.bits(), 1);
            frontier.push((c.bits(), 1));
        }
    }
    while let Some((bits, depth)) = frontier.pop() {
        if bits == 0 {
            return depth > k;
        }
        if depth >= k {
            continue;
        }
        for c in complements {
            let next = bits & c.bits();
            if best.get(&next).is_none_or(|&d| d > depth + 1) {
                best.insert(next, depth + 1);
                frontier.push((next, depth + 1));
            }
        }
    }
    !best.contains_key(&0) || best[&0] > k
}

/// Is a memoryless Disruptor strategy disrupting? True iff no `k` members of
/// its Δ-family union to the full objective set.
pub fn is_disrupting_memoryless(
    game: &CoverageGame,
    strategy: &MemorylessStrategy,
) -> Result<bool, DisruptionError> {
    let delta = delta_sets(game, strategy)?;
    Ok(delta_blocks_coverage(game, &delta))
}

fn delta_blocks_coverage(game: &CoverageGame, delta: &DeltaFamily) -> bool {
    let full = game.all_objectives();
    if full.is_empty() {
        return false;
    }
    match min_union_cover(full, &delta.members) {
        Some(c) => c > game.agents,
        None => true,
    }
}

/// Canonical enumeration of Disruptor's memoryless strategies, addressable
/// by index so the scan can be parallelized deterministically.
struct DisruptorProfiles {
    universe: usize,
    vertices: Vec<usize>,
    options: Vec<Vec<usize>>,
}

impl DisruptorProfiles {
    fn new(graph: &GameGraph) -> Self {
        let vertices: Vec<usize> = (0..graph.len())
            .filter(|&v| graph.owner(v) == Player::Disruptor)
            .collect();
        let options = vertices
            .iter()
            .map(|&v| graph.successors(v).to_vec())
            .collect();
        DisruptorProfiles { universe: graph.len(), vertices, options }
    }

    fn count(&self) -> u64 {
        self.options
            .iter()
            .fold(1u64, |acc, o| acc.saturating_mul(o.len().max(1) as u64))
    }

    fn materialize(&self, mut index: u64) -> MemorylessStrategy {
        let mut s = MemorylessStrategy::new(Player::Disruptor, self.universe);
        for (i, &v) in self.vertices.iter().enumerate() {
            let base = self.options[i].len() as u64;
            s.set(v, self.options[i][(index % base) as usize]);
            index /= base;
        }
        s
    }
}

/// Büchi disruption by exhaustive scan over memoryless Disruptor strategies
/// (memoryless strategies are complete for Büchi disruption). Returns the
/// first disrupting strategy in canonical order, if any.
pub fn solve_disruption_buchi(
    game: &CoverageGame,
    config: &DisruptionConfig,
) -> Result<(bool, Option<MemorylessStrategy>), DisruptionError> {
    assert_eq!(game.kind, ObjectiveKind::Buchi, "Büchi solver fed a co-Büchi game");
    let profiles = DisruptorProfiles::new(&game.graph);
    let total = profiles.count();
    if total > config.memoryless_budget {
        return Err(DisruptionError::BudgetExceeded {
            budget: config.memoryless_budget,
            required: total,
        });
    }
    let hit = if config.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            (0..total)
                .into_par_iter()
                .filter(|&i| {
                    let s = profiles.materialize(i);
                    is_disrupting_memoryless(game, &s).expect("profile is total")
                })
                .min()
        })
    } else {
        (0..total).find(|&i| {
            let s = profiles.materialize(i);
            is_disrupting_memoryless(game, &s).expect("profile is total")
        })
    };
    Ok(match hit {
        Some(i) => (true, Some(profiles.materialize(i))),
        None => (false, None),
    })
}

/// A symbolic Disruptor strategy for co-Büchi disruption: trap the play in
/// `region` and, at each Disruptor vertex visited infinitely often, take each
/// successor in its requirement set infinitely often.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FairnessPair {
    pub region: VertexSet,
    requirement: Vec<Option<VertexSet>>,
}

impl FairnessPair {
    pub fn new(region: VertexSet, requirement: Vec<Option<VertexSet>>) -> Self {
        FairnessPair { region, requirement }
    }

    pub fn requirement(&self, v: usize) -> Option<&VertexSet> {
        self.requirement.get(v).and_then(|r| r.as_ref())
    }

    /// Vertices carrying a requirement, ascending.
    pub fn requirement_domain(&self) -> impl Iterator<Item = (usize, &VertexSet)> + '_ {
        self.requirement
            .iter()
            .enumerate()
            .filter_map(|(v, r)| r.as_ref().map(|s| (v, s)))
    }

    /// Checks all pair invariants against a graph: requirement sets are
    /// nonempty in-region successor subsets, Coverer cannot leave the region,
    /// and Disruptor can force the play into the region from the initial
    /// vertex.
    pub fn validate(&self, graph: &GameGraph) -> Result<(), String> {
        if self.requirement.len() != graph.len() || self.region.universe() != graph.len() {
            return Err("fairness pair was built against a different graph".into());
        }
        for v in self.region.iter() {
            match graph.owner(v) {
                Player::Coverer => {
                    if !graph.successor_set(v).is_subset(&self.region) {
                        return Err(format!("Coverer can leave the region at {:?}", graph.id(v)));
                    }
                    if self.requirement[v].is_some() {
                        return Err(format!("requirement on Coverer vertex {:?}", graph.id(v)));
                    }
                }
                Player::Disruptor => match &self.requirement[v] {
                    None => {
                        return Err(format!("missing requirement at {:?}", graph.id(v)));
                    }
                    Some(r) => {
                        if r.is_empty() {
                            return Err(format!("empty requirement at {:?}", graph.id(v)));
                        }
                        if !r.is_subset(&graph.successor_set(v).intersection(&self.region)) {
                            return Err(format!(
                                "requirement at {:?} leaves the region or uses missing edges",
                                graph.id(v)
                            ));
                        }
                    }
                },
            }
        }
        for (v, _) in self.requirement_domain() {
            if !self.region.contains(v) {
                return Err(format!("requirement outside the region at {:?}", graph.id(v)));
            }
        }
        let reach = attractor(graph, &graph.full_set(), Player::Disruptor, &self.region);
        if !reach.contains(graph.initial()) {
            return Err("Disruptor cannot force the play into the region".into());
        }
        Ok(())
    }
}

/// All sets closed under Coverer successors (a play can be trapped in such a
/// set only if Coverer cannot steer out of it), ascending. Every closed set
/// is a union of single-vertex closures, which keeps the enumeration near the
/// actual count instead of 2^|V|.
fn coverer_closed_sets(graph: &GameGraph, cap: u64) -> Result<Vec<VertexSet>, DisruptionError> {
    let n = graph.len();
    let mut closures: Vec<VertexSet> = Vec::new();
    for v in 0..n {
        let mut c = VertexSet::empty(n);
        let mut stack = vec![v];
        c.insert(v);
        while let Some(u) = stack.pop() {
            if graph.owner(u) == Player::Coverer {
                for &w in graph.successors(u) {
                    if !c.contains(w) {
                        c.insert(w);
                        stack.push(w);
                    }
                }
            }
        }
        if !closures.contains(&c) {
            closures.push(c);
        }
    }
    let mut seen: HashSet<VertexSet> = HashSet::new();
    let mut queue: Vec<VertexSet> = vec![VertexSet::empty(n)];
    seen.insert(VertexSet::empty(n));
    let mut qi = 0;
    while qi < queue.len() {
        let base = queue[qi].clone();
        qi += 1;
        for atom in &closures {
            let next = base.union(atom);
            if seen.insert(next.clone()) {
                if seen.len() as u64 > cap {
                    return Err(DisruptionError::BudgetExceeded {
                        budget: cap,
                        required: seen.len() as u64,
                    });
                }
                queue.push(next);
            }
        }
    }
    let mut out: Vec<VertexSet> = seen.into_iter().filter(|s| !s.is_empty()).collect();
    out.sort();
    Ok(out)
}

/// Streams every fairness pair of the graph in canonical order: candidate
/// regions ascending, then requirement assignments in mixed-radix order.
pub fn enumerate_fairness_pairs(
    graph: &GameGraph,
    cap: u64,
) -> Result<FairnessPairs<'_>, DisruptionError> {
    let regions = coverer_closed_sets(graph, cap)?
        .into_iter()
        .filter(|u| {
            attractor(graph, &graph.full_set(), Player::Disruptor, u).contains(graph.initial())
        })
        .collect();
    Ok(FairnessPairs { graph, regions, at: 0, current: None })
}

pub struct FairnessPairs<'g> {
    graph: &'g GameGraph,
    regions: Vec<VertexSet>,
    at: usize,
    current: Option<RequirementScan>,
}

struct RequirementScan {
    region: VertexSet,
    vertices: Vec<usize>,
    options: Vec<Vec<VertexSet>>,
    picks: Vec<usize>,
    done: bool,
}

impl RequirementScan {
    fn new(graph: &GameGraph, region: VertexSet) -> Option<RequirementScan> {
        let vertices: Vec<usize> = region
            .iter()
            .filter(|&v| graph.owner(v) == Player::Disruptor)
            .collect();
        let mut options = Vec::with_capacity(vertices.len());
        for &v in &vertices {
            let inside: Vec<usize> = graph
                .successors(v)
                .iter()
                .copied()
                .filter(|&w| region.contains(w))
                .collect();
            if inside.is_empty() {
                return None;
            }
            let mut subsets = Vec::with_capacity((1 << inside.len()) - 1);
            for bits in 1u32..(1 << inside.len()) {
                let mut s = VertexSet::empty(graph.len());
                for (i, &w) in inside.iter().enumerate() {
                    if bits >> i & 1 == 1 {
                        s.insert(w);
                    }
                }
                subsets.push(s);
            }
            options.push(subsets);
        }
        Some(RequirementScan {
            region,
            picks: vec![0; vertices.len()],
            vertices,
            options,
            done: false,
        })
    }

    fn next(&mut self, universe: usize) -> Option<FairnessPair> {
        if self.done {
            return None;
        }
        let mut req = vec![None; universe];
        for (i, &v) in self.vertices.iter().enumerate() {
            req[v] = Some(self.options[i][self.picks[i]].clone());
        }
        let pair = FairnessPair::new(self.region.clone(), req);
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
        Some(pair)
    }
}

impl Iterator for FairnessPairs<'_> {
    type Item = FairnessPair;

    fn next(&mut self) -> Option<FairnessPair> {
        loop {
            if let Some(scan) = &mut self.current {
                if let Some(pair) = scan.next(self.graph.len()) {
                    return Some(pair);
                }
                self.current = None;
            }
            if self.at == self.regions.len() {
                return None;
            }
            let region = self.regions[self.at].clone();
            self.at += 1;
            self.current = RequirementScan::new(self.graph, region);
        }
    }
}

/// Successor table of the sub-graph a fairness pair induces: Disruptor
/// vertices use exactly their requirement edges, Coverer vertices keep their
/// in-region edges.
fn pair_successors(graph: &GameGraph, pair: &FairnessPair) -> Vec<VertexSet> {
    let n = graph.len();
    let mut succ = vec![VertexSet::empty(n); n];
    for v in pair.region.iter() {
        succ[v] = match graph.owner(v) {
            Player::Coverer => graph.successor_set(v).intersection(&pair.region),
            Player::Disruptor => pair
                .requirement(v)
                .cloned()
                .unwrap_or_else(|| VertexSet::empty(n)),
        };
    }
    succ
}

/// Removes vertices that cannot belong to any requirement-closed strongly
/// connected set of the current scope, then returns the surviving components.
fn consistent_components(
    graph: &GameGraph,
    pair: &FairnessPair,
    succ: &[VertexSet],
    mut scope: VertexSet,
) -> Vec<VertexSet> {
    loop {
        let restricted: Vec<VertexSet> = succ.iter().map(|s| s.intersection(&scope)).collect();
        let comps = scc_of_induced(&restricted, &scope);
        let mut removed = false;
        for (comp, _) in &comps {
            for v in comp.iter() {
                if graph.owner(v) == Player::Disruptor {
                    if let Some(r) = pair.requirement(v) {
                        if !r.is_subset(comp) {
                            scope.remove(v);
                            removed = true;
                        }
                    }
                }
            }
        }
        if !removed {
            return comps
                .into_iter()
                .filter_map(|(c, trivial)| (!trivial).then_some(c))
                .collect();
        }
    }
}

/// Maximal objective subsets satisfiable by candidate infinity sets of the
/// pair. Candidates are requirement-closed strongly connected sets; the scan
/// walks the lattice of components obtained by repeatedly forbidding one
/// objective's vertices, which visits a component witnessing every maximal
/// satisfied set.
fn pair_maximal_satsets(
    game: &CoverageGame,
    pair: &FairnessPair,
    work: &mut u64,
    budget: u64,
) -> Result<Vec<ObjectiveIndexSet>, DisruptionError> {
    let graph = &game.graph;
    let m = game.objective_count();
    let succ = pair_successors(graph, pair);
    let mut seen: HashSet<VertexSet> = HashSet::new();
    let mut stack = vec![pair.region.clone()];
    seen.insert(pair.region.clone());
    let mut sats: Vec<ObjectiveIndexSet> = Vec::new();
    while let Some(scope) = stack.pop() {
        *work += 1;
        if *work > budget {
            return Err(DisruptionError::BudgetExceeded { budget, required: *work });
        }
        for comp in consistent_components(graph, pair, &succ, scope) {
            let mut sat = ObjectiveIndexSet::empty(m);
            for (i, obj) in game.objectives.iter().enumerate() {
                if !obj.vertices.intersects(&comp) {
                    sat.insert(i);
                }
            }
            sats.push(sat);
            for (i, obj) in game.objectives.iter().enumerate() {
                if sat.contains(i) {
                    continue;
                }
                let next = comp.difference(&obj.vertices);
                if !next.is_empty() && seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
    }
    Ok(maximal_filter(sats))
}

/// Is every Disruptor strategy compatible with the pair disrupting? True iff
/// no `k` candidate-satisfied sets union to the whole objective list.
pub fn fairness_pair_is_disrupting(game: &CoverageGame, pair: &FairnessPair) -> bool {
    assert_eq!(game.kind, ObjectiveKind::CoBuchi, "fairness pairs decide co-Büchi games");
    let mut work = 0;
    let sats = pair_maximal_satsets(game, pair, &mut work, u64::MAX)
        .expect("unbounded budget cannot be exceeded");
    let full = game.all_objectives();
    if full.is_empty() {
        return false;
    }
    match min_union_cover(full, &sats) {
        Some(c) => c > game.agents,
        None => true,
    }
}

/// co-Büchi disruption: scan fairness pairs in canonical order and report the
/// first disrupting one.
pub fn solve_disruption_cobuchi(
    game: &CoverageGame,
    config: &DisruptionConfig,
) -> Result<(bool, Option<FairnessPair>), DisruptionError> {
    cobuchi_scan(game, config).map(|(v, w, _)| (v, w))
}

fn cobuchi_scan(
    game: &CoverageGame,
    config: &DisruptionConfig,
) -> Result<(bool, Option<FairnessPair>, u64), DisruptionError> {
    assert_eq!(game.kind, ObjectiveKind::CoBuchi, "co-Büchi solver fed a Büchi game");
    let full = game.all_objectives();
    let mut work: u64 = 0;
    let mut pairs: u64 = 0;
    for pair in enumerate_fairness_pairs(&game.graph, config.fairness_budget)? {
        work += 1;
        pairs += 1;
        let sats = pair_maximal_satsets(game, &pair, &mut work, config.fairness_budget)?;
        if full.is_empty() {
            return Ok((false, None, pairs));
        }
        let disrupting = match min_union_cover(full, &sats) {
            Some(c) => c > game.agents,
            None => true,
        };
        if disrupting {
            return Ok((true, Some(pair), pairs));
        }
    }
    Ok((false, None, pairs))
}

/// Decides disruption by iterating over candidate Δ antichains, for games
/// with few objectives: Disruptor disrupts iff she wins the induced
/// Exists-co-Büchi (Büchi case) or translated All-Büchi (co-Büchi case)
/// objective for some antichain whose k-fold unions all miss the full set.
pub fn solve_disruption_fixed_beta(game: &CoverageGame) -> bool {
    let m = game.objective_count();
    assert!(m <= 16, "Δ-iteration is intended for small objective counts");
    if m == 0 {
        return false;
    }
    let full = game.all_objectives();
    let mut chain: Vec<ObjectiveIndexSet> = Vec::new();
    // The empty set is a legal member: Δ = {∅} says no objective is
    // satisfiable at all against the strategy.
    fn extend(
        game: &CoverageGame,
        full: ObjectiveIndexSet,
        chain: &mut Vec<ObjectiveIndexSet>,
        from: u64,
    ) -> bool {
        let m = full.universe();
        for bits in from..(1u64 << m) {
            let mask = ObjectiveIndexSet::from_bits(m, bits);
            if chain
                .iter()
                .any(|c| c.is_subset(&mask) || mask.is_subset(c))
            {
                continue;
            }
            chain.push(mask);
            // Every k-fold union must miss the full set; adding members only
            // grows the unions, so a violating chain can be pruned outright.
            let ok = match min_union_cover(full, chain) {
                Some(c) => c > game.agents,
                None => true,
            };
            if ok && (delta_candidate_wins(game, chain) || extend(game, full, chain, bits + 1)) {
                chain.pop();
                return true;
            }
            chain.pop();
        }
        false
    }
    extend(game, full, &mut chain, 0)
}

fn delta_candidate_wins(game: &CoverageGame, delta: &[ObjectiveIndexSet]) -> bool {
    let graph = &game.graph;
    let full = game.all_objectives();
    match game.kind {
        ObjectiveKind::Buchi => {
            // One co-Büchi disjunct per member: keep every objective outside
            // it visited only finitely often.
            let families: Vec<VertexSet> = delta
                .iter()
                .map(|d| game.objective_union(full.difference(d)))
                .collect();
            let win = exists_cobuchi_win_set(graph, &graph.full_set(), &families, Player::Disruptor);
            win.contains(graph.initial())
        }
        ObjectiveKind::CoBuchi => {
            // One All-Büchi disjunct per member: visit the complement's
            // vertex sets infinitely often. Translate the disjunction into a
            // single All-Büchi objective and solve for Disruptor.
            let families: Vec<Vec<VertexSet>> = delta
                .iter()
                .map(|d| game.objective_sets(full.difference(d)))
                .collect();
            let targets = superset_to_all_buchi_reduced(&families, graph.len());
            let sol = solve_all_buchi_in(graph, &graph.full_set(), &targets, Player::Disruptor);
            sol.winning.contains(graph.initial())
        }
    }
}

/// A disruption witness of either flavor.
#[derive(Clone, Debug)]
pub enum DisruptionWitness {
    Memoryless(MemorylessStrategy),
    Fairness(FairnessPair),
}

/// Kind-dispatching entry point.
pub fn solve_disruption(
    game: &CoverageGame,
    config: &DisruptionConfig,
) -> Result<(bool, Option<DisruptionWitness>), DisruptionError> {
    solve_disruption_report(game, config).map(|r| (r.disrupting, r.witness))
}

/// Verdict plus the number of candidates the scan ranged over (the full
/// strategy space for Büchi, pairs consumed for co-Büchi).
pub struct DisruptionReport {
    pub disrupting: bool,
    pub witness: Option<DisruptionWitness>,
    pub candidates: u64,
}

pub fn solve_disruption_report(
    game: &CoverageGame,
    config: &DisruptionConfig,
) -> Result<DisruptionReport, DisruptionError> {
    match game.kind {
        ObjectiveKind::Buchi => {
            let candidates = DisruptorProfiles::new(&game.graph).count();
            solve_disruption_buchi(game, config).map(|(v, w)| DisruptionReport {
                disrupting: v,
                witness: w.map(DisruptionWitness::Memoryless),
                candidates,
            })
        }
        ObjectiveKind::CoBuchi => cobuchi_scan(game, config).map(|(v, w, pairs)| DisruptionReport {
            disrupting: v,
            witness: w.map(DisruptionWitness::Fairness),
            candidates: pairs,
        }),
    }
}
