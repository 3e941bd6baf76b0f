//! Game graphs, objectives, coverage games, and the basic graph analyses
//! (validation, restriction, reachability, SCC decomposition) everything else
//! builds on.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::bitset::{ObjectiveIndexSet, VertexSet};

/// The two players. Coverer operates the agents; Disruptor plays a single
/// strategy against all of them.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Player {
    Coverer,
    Disruptor,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Coverer => Player::Disruptor,
            Player::Disruptor => Player::Coverer,
        }
    }
}

/// Whether an objective asks for infinitely many visits (Büchi) or finitely
/// many visits (co-Büchi).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ObjectiveKind {
    Buchi,
    CoBuchi,
}

/// A single objective: a labelled vertex set. Empty sets are legal: an empty
/// Büchi objective is unsatisfiable, an empty co-Büchi objective is always
/// satisfied.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Objective {
    pub label: String,
    pub vertices: VertexSet,
}

/// A two-player game graph: vertices partitioned between the players, a total
/// edge relation, and an initial vertex. Vertices are dense indices with
/// stable user-facing string ids.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GameGraph {
    ids: Vec<String>,
    owners: Vec<Player>,
    initial: usize,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    succ_set: Vec<VertexSet>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("duplicate edge {0:?} -> {1:?}")]
    DuplicateEdge(String, String),
    #[error("restriction removes the initial vertex")]
    InitialRemoved,
    #[error("restriction leaves vertex {0:?} without successors")]
    NonTotalRestriction(String),
    #[error("graph has no vertices")]
    Empty,
}

impl GameGraph {
    /// Builds a graph from `(id, owner)` pairs, edges over indices into that
    /// list, and the index of the initial vertex. Duplicate ids and duplicate
    /// edges are rejected; totality is not checked here (see [`validate`]).
    pub fn new(
        vertices: Vec<(String, Player)>,
        edges: &[(usize, usize)],
        initial: usize,
    ) -> Result<GameGraph, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let n = vertices.len();
        if initial >= n {
            return Err(GraphError::VertexOutOfRange(initial));
        }
        let mut seen = HashMap::new();
        for (i, (id, _)) in vertices.iter().enumerate() {
            if seen.insert(id.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(id.clone()));
            }
        }
        let (ids, owners): (Vec<_>, Vec<_>) = vertices.into_iter().unzip();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        let mut succ_set = vec![VertexSet::empty(n); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v));
            }
            if succ_set[u].contains(v) {
                return Err(GraphError::DuplicateEdge(ids[u].clone(), ids[v].clone()));
            }
            succ_set[u].insert(v);
            succ[u].push(v);
            pred[v].push(u);
        }
        for list in succ.iter_mut().chain(pred.iter_mut()) {
            list.sort_unstable();
        }
        Ok(GameGraph { ids, owners, initial, succ, pred, succ_set })
    }

    /// Convenience constructor for `&str` ids.
    pub fn build(
        vertices: &[(&str, Player)],
        edges: &[(usize, usize)],
        initial: usize,
    ) -> Result<GameGraph, GraphError> {
        Self::new(
            vertices.iter().map(|(id, o)| (id.to_string(), *o)).collect(),
            edges,
            initial,
        )
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    /// Same graph reinitialized at `v`.
    pub fn with_initial(&self, v: usize) -> GameGraph {
        assert!(v < self.len());
        let mut g = self.clone();
        g.initial = v;
        g
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn owner(&self, v: usize) -> Player {
        self.owners[v]
    }

    /// Successors in ascending index order.
    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn successor_set(&self, v: usize) -> &VertexSet {
        &self.succ_set[v]
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.pred[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.succ_set[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// All vertices owned by `player`, as a set.
    pub fn owned_by(&self, player: Player) -> VertexSet {
        VertexSet::from_indices(
            self.len(),
            (0..self.len()).filter(|&v| self.owners[v] == player),
        )
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.len())
    }

    /// Forward-reachable set from `from`, including `from` itself.
    pub fn reachable(&self, from: usize) -> Result<VertexSet, GraphError> {
        if from >= self.len() {
            return Err(GraphError::VertexOutOfRange(from));
        }
        Ok(self.reachable_within(from, &self.full_set()))
    }

    /// Forward reachability restricted to `region`; `from` must be in it.
    pub fn reachable_within(&self, from: usize, region: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::empty(self.len());
        if !region.contains(from) {
            return seen;
        }
        let mut stack = vec![from];
        seen.insert(from);
        while let Some(v) = stack.pop() {
            for &w in &self.succ[v] {
                if region.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// The sub-graph induced by `keep`. Vertex ids survive; indices are
    /// re-assigned densely in the original order. Fails if the initial vertex
    /// is dropped or some kept vertex loses all of its successors.
    pub fn restrict(&self, keep: &VertexSet) -> Result<GameGraph, GraphError> {
        assert_eq!(keep.universe(), self.len());
        if !keep.contains(self.initial) {
            return Err(GraphError::InitialRemoved);
        }
        let mut remap = vec![usize::MAX; self.len()];
        let mut vertices = Vec::new();
        for (new_idx, v) in keep.iter().enumerate() {
            remap[v] = new_idx;
            vertices.push((self.ids[v].clone(), self.owners[v]));
        }
        let mut edges = Vec::new();
        for v in keep.iter() {
            let mut any = false;
            for &w in &self.succ[v] {
                if keep.contains(w) {
                    edges.push((remap[v], remap[w]));
                    any = true;
                }
            }
            if !any {
                return Err(GraphError::NonTotalRestriction(self.ids[v].clone()));
            }
        }
        GameGraph::new(vertices, &edges, remap[self.initial])
    }

    /// SCCs in reverse-topological order (sinks first) with a flag marking
    /// trivial components (singletons without a self-loop).
    pub fn scc_decomposition(&self) -> Vec<(VertexSet, bool)> {
        self.scc_within(&self.full_set())
    }

    /// Tarjan over the sub-graph induced by `region`.
    pub fn scc_within(&self, region: &VertexSet) -> Vec<(VertexSet, bool)> {
        let n = self.len();
        let mut index = vec![usize::MAX; n];
        let mut lowlink = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        let mut next = 0usize;
        let mut out = Vec::new();

        // Explicit DFS stack to stay safe on long chains.
        enum Frame {
            Enter(usize),
            Resume(usize, usize),
        }
        let mut work: Vec<Frame> = Vec::new();
        for root in region.iter() {
            if index[root] != usize::MAX {
                continue;
            }
            work.push(Frame::Enter(root));
            while let Some(frame) = work.pop() {
                match frame {
                    Frame::Enter(v) => {
                        index[v] = next;
                        lowlink[v] = next;
                        next += 1;
                        stack.push(v);
                        on_stack[v] = true;
                        work.push(Frame::Resume(v, 0));
                    }
                    Frame::Resume(v, mut i) => {
                        let mut descended = false;
                        while i < self.succ[v].len() {
                            let w = self.succ[v][i];
                            i += 1;
                            if !region.contains(w) {
                                continue;
                            }
                            if index[w] == usize::MAX {
                                work.push(Frame::Resume(v, i));
                                work.push(Frame::Enter(w));
                                descended = true;
                                break;
                            } else if on_stack[w] {
                                lowlink[v] = lowlink[v].min(index[w]);
                            }
                        }
                        if descended {
                            continue;
                        }
                        if lowlink[v] == index[v] {
                            let mut comp = VertexSet::empty(n);
                            loop {
                                let w = stack.pop().expect("tarjan stack underflow");
                                on_stack[w] = false;
                                comp.insert(w);
                                if w == v {
                                    break;
                                }
                            }
                            let trivial = comp.count() == 1 && {
                                let u = comp.first().unwrap();
                                !self.has_edge(u, u)
                            };
                            out.push((comp, trivial));
                        } else if let Some(Frame::Resume(p, _)) = work.last() {
                            lowlink[*p] = lowlink[*p].min(lowlink[v]);
                        }
                    }
                }
            }
        }
        out
    }
}

/// A coverage game: a graph, a number of agents, and an ordered list of
/// objectives of one kind.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoverageGame {
    pub graph: GameGraph,
    pub agents: u32,
    pub kind: ObjectiveKind,
    pub objectives: Vec<Objective>,
}

impl CoverageGame {
    pub fn new(
        graph: GameGraph,
        agents: u32,
        kind: ObjectiveKind,
        objectives: Vec<Objective>,
    ) -> CoverageGame {
        CoverageGame { graph, agents, kind, objectives }
    }

    pub fn objective_count(&self) -> usize {
        self.objectives.len()
    }

    /// Vertex sets of the objectives selected by `set`, in index order.
    pub fn objective_sets(&self, set: ObjectiveIndexSet) -> Vec<VertexSet> {
        set.iter().map(|i| self.objectives[i].vertices.clone()).collect()
    }

    pub fn all_objectives(&self) -> ObjectiveIndexSet {
        ObjectiveIndexSet::full(self.objectives.len())
    }

    /// Union of the vertex sets of the objectives in `set`.
    pub fn objective_union(&self, set: ObjectiveIndexSet) -> VertexSet {
        let mut u = VertexSet::empty(self.graph.len());
        for i in set.iter() {
            u.union_with(&self.objectives[i].vertices);
        }
        u
    }

    /// Which objectives a play with infinity set `inf` satisfies.
    pub fn satisfied_by_inf(&self, inf: &VertexSet) -> ObjectiveIndexSet {
        let mut sat = ObjectiveIndexSet::empty(self.objectives.len());
        for (i, obj) in self.objectives.iter().enumerate() {
            let hits = obj.vertices.intersects(inf);
            let ok = match self.kind {
                ObjectiveKind::Buchi => hits,
                ObjectiveKind::CoBuchi => !hits,
            };
            if ok {
                sat.insert(i);
            }
        }
        sat
    }
}

/// A violated invariant, reported as data rather than an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Vertex has no outgoing edge.
    Totality(String),
    /// An objective (or edge, or initial vertex) names a vertex that does
    /// not exist.
    UnknownVertex(String),
    /// Agent count is zero.
    NoAgents,
    /// An objective's bitset was built against a different graph.
    ObjectiveUniverseMismatch(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Totality(id) => write!(f, "vertex {id:?} has no outgoing edge"),
            Violation::UnknownVertex(id) => write!(f, "unknown vertex {id:?}"),
            Violation::NoAgents => write!(f, "agent count must be at least 1"),
            Violation::ObjectiveUniverseMismatch(label) => {
                write!(f, "objective {label:?} ranges over a different vertex universe")
            }
        }
    }
}

/// Checks every type invariant of a coverage game and returns the list of
/// violations; an empty list means the game is well-formed.
pub fn validate(game: &CoverageGame) -> Vec<Violation> {
    let mut out = Vec::new();
    for v in 0..game.graph.len() {
        if game.graph.successors(v).is_empty() {
            out.push(Violation::Totality(game.graph.id(v).to_string()));
        }
    }
    if game.agents == 0 {
        out.push(Violation::NoAgents);
    }
    for obj in &game.objectives {
        if obj.vertices.universe() != game.graph.len() {
            out.push(Violation::ObjectiveUniverseMismatch(obj.label.clone()));
        }
    }
    out
}

/// A finitely represented ultimately periodic play: `stem` followed by
/// `loop` repeated forever.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LassoPath {
    pub stem: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl LassoPath {
    /// Checks the lasso is a real play of `graph`: the stem starts at the
    /// initial vertex, consecutive vertices (including the stem-to-loop
    /// junction and the loop wrap) are edges, and the loop is nonempty.
    pub fn validate(&self, graph: &GameGraph) -> Result<(), String> {
        if self.cycle.is_empty() {
            return Err("lasso loop is empty".into());
        }
        let first = *self.stem.first().unwrap_or(&self.cycle[0]);
        if first != graph.initial() {
            return Err(format!(
                "lasso starts at {:?}, not the initial vertex {:?}",
                graph.id(first),
                graph.id(graph.initial())
            ));
        }
        let path: Vec<usize> = self.stem.iter().chain(self.cycle.iter()).copied().collect();
        for pair in path.windows(2) {
            if !graph.has_edge(pair[0], pair[1]) {
                return Err(format!(
                    "missing edge {:?} -> {:?}",
                    graph.id(pair[0]),
                    graph.id(pair[1])
                ));
            }
        }
        let last = *self.cycle.last().unwrap();
        if !graph.has_edge(last, self.cycle[0]) {
            return Err(format!(
                "loop does not close: missing edge {:?} -> {:?}",
                graph.id(last),
                graph.id(self.cycle[0])
            ));
        }
        Ok(())
    }

    /// Vertices visited infinitely often.
    pub fn inf_set(&self, universe: usize) -> VertexSet {
        VertexSet::from_indices(universe, self.cycle.iter().copied())
    }

    /// Number of vertices in the finite representation.
    pub fn len(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Does the lasso satisfy a single objective of the given kind?
    pub fn satisfies(&self, kind: ObjectiveKind, objective: &VertexSet) -> bool {
        let inf = self.inf_set(objective.universe());
        match kind {
            ObjectiveKind::Buchi => inf.intersects(objective),
            ObjectiveKind::CoBuchi => !inf.intersects(objective),
        }
    }
}
