//! Instance generators: the fixture games that pin the theory down, plus
//! reductions producing labeled hard coverage/disruption instances from
//! vertex-cover, 3SAT, QBF and 2QBF inputs, with brute-force oracles for the
//! source problems.
//!
//! Vertex naming is fixed (`v_i`, `x_i`, `nx_i`, `C_i`, `l_i_j`, ...) so
//! generated instances are diff-stable test fixtures.

use std::collections::HashMap;

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::game::{CoverageGame, GameGraph, Objective, ObjectiveKind, Player};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("formula needs at least one variable")]
    NoVariables,
    #[error("construction needs at least one clause")]
    NoClauses,
    #[error("literal {0} names a variable outside 1..={1}")]
    BadLiteral(i32, usize),
    #[error("undirected edge ({0}, {1}) is invalid")]
    BadEdge(usize, usize),
    #[error("agent count must be at least 2")]
    TooFewAgents,
    #[error("group count must satisfy 1 <= groups < agents")]
    BadGroupCount,
    #[error("quantifier prefix must cover exactly the matrix variables, once each")]
    PrefixMismatch,
    #[error("construction needs a nonempty existential block")]
    EmptyExistentialBlock,
    #[error("construction needs a nonempty universal block")]
    EmptyUniversalBlock,
    #[error("expected a {0} matrix")]
    WrongMatrix(&'static str),
}

/// A 3CNF formula: clauses are literal triples over variables `1..=variables`
/// (negative literal = negated variable). Shorter clauses are padded by
/// repeating a literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    pub variables: usize,
    pub clauses: Vec<[i32; 3]>,
}

impl CnfFormula {
    pub fn new(variables: usize, clauses: Vec<[i32; 3]>) -> Result<Self, GeneratorError> {
        if variables == 0 {
            return Err(GeneratorError::NoVariables);
        }
        for clause in &clauses {
            for &lit in clause {
                let var = lit.unsigned_abs() as usize;
                if lit == 0 || var > variables {
                    return Err(GeneratorError::BadLiteral(lit, variables));
                }
            }
        }
        Ok(CnfFormula { variables, clauses })
    }

    /// Pads clauses with fewer than three literals by repetition.
    pub fn from_clauses(variables: usize, clauses: &[Vec<i32>]) -> Result<Self, GeneratorError> {
        let mut out = Vec::with_capacity(clauses.len());
        for clause in clauses {
            let triple = match clause.as_slice() {
                [] => return Err(GeneratorError::NoClauses),
                &[a] => [a, a, a],
                &[a, b] => [a, b, b],
                &[a, b, c] => [a, b, c],
                more => {
                    return Err(GeneratorError::BadLiteral(more[3], variables));
                }
            };
            out.push(triple);
        }
        CnfFormula::new(variables, out)
    }

    pub fn eval(&self, assignment: u64) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let var = lit.unsigned_abs() as usize;
                let value = assignment >> (var - 1) & 1 == 1;
                (lit > 0) == value
            })
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantifier {
    Exists,
    ForAll,
}

/// Matrix of a quantified formula: 3CNF, or 3DNF (conjunctive triples) for
/// the disruption forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Matrix {
    Cnf(Vec<[i32; 3]>),
    Dnf(Vec<[i32; 3]>),
}

impl Matrix {
    pub fn triples(&self) -> &[[i32; 3]] {
        match self {
            Matrix::Cnf(t) | Matrix::Dnf(t) => t,
        }
    }

    pub fn eval(&self, assignment: u64) -> bool {
        let lit_true = |lit: i32| {
            let var = lit.unsigned_abs() as usize;
            let value = assignment >> (var - 1) & 1 == 1;
            (lit > 0) == value
        };
        match self {
            Matrix::Cnf(clauses) => clauses
                .iter()
                .all(|c| c.iter().any(|&l| lit_true(l))),
            Matrix::Dnf(cubes) => cubes
                .iter()
                .any(|c| c.iter().all(|&l| lit_true(l))),
        }
    }
}

/// A prenex quantified Boolean formula with a triple-clause matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QbfFormula {
    pub prefix: Vec<(Quantifier, usize)>,
    pub matrix: Matrix,
}

impl QbfFormula {
    pub fn new(prefix: Vec<(Quantifier, usize)>, matrix: Matrix) -> Result<Self, GeneratorError> {
        if prefix.is_empty() {
            return Err(GeneratorError::NoVariables);
        }
        let mut seen = vec![false; prefix.len() + 1];
        for &(_, var) in &prefix {
            if var == 0 || var > prefix.len() || seen[var] {
                return Err(GeneratorError::PrefixMismatch);
            }
            seen[var] = true;
        }
        let n = prefix.len();
        let mut used = vec![false; n + 1];
        for triple in matrix.triples() {
            for &lit in triple {
                let var = lit.unsigned_abs() as usize;
                if lit == 0 || var > n {
                    return Err(GeneratorError::BadLiteral(lit, n));
                }
                used[var] = true;
            }
        }
        if !matrix.triples().is_empty() && (1..=n).any(|v| !used[v]) {
            return Err(GeneratorError::PrefixMismatch);
        }
        Ok(QbfFormula { prefix, matrix })
    }
}

/// An undirected graph for the vertex-cover reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl UndirectedGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self, GeneratorError> {
        let mut normal = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == b || a >= vertices || b >= vertices {
                return Err(GeneratorError::BadEdge(a, b));
            }
            let e = (a.min(b), a.max(b));
            if !normal.contains(&e) {
                normal.push(e);
            }
        }
        Ok(UndirectedGraph { vertices, edges: normal })
    }

    pub fn complete(vertices: usize) -> Self {
        let mut edges = Vec::new();
        for a in 0..vertices {
            for b in a + 1..vertices {
                edges.push((a, b));
            }
        }
        UndirectedGraph { vertices, edges }
    }
}

// ---------------------------------------------------------------------------
// Assembly helpers
// ---------------------------------------------------------------------------

struct Assembler {
    vertices: Vec<(String, Player)>,
    edges: Vec<(usize, usize)>,
    index: HashMap<String, usize>,
}

impl Assembler {
    fn new() -> Self {
        Assembler { vertices: Vec::new(), edges: Vec::new(), index: HashMap::new() }
    }

    fn add(&mut self, id: impl Into<String>, owner: Player) -> usize {
        let id = id.into();
        let idx = self.vertices.len();
        assert!(
            self.index.insert(id.clone(), idx).is_none(),
            "duplicate vertex id {id:?}"
        );
        self.vertices.push((id, owner));
        idx
    }

    fn at(&self, id: &str) -> usize {
        self.index[id]
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    fn build(self, initial: usize) -> GameGraph {
        GameGraph::new(self.vertices, &self.edges, initial).expect("generator emits valid graphs")
    }
}

fn objective(graph: &GameGraph, label: impl Into<String>, members: &[usize]) -> Objective {
    Objective {
        label: label.into(),
        vertices: VertexSet::from_indices(graph.len(), members.iter().copied()),
    }
}

fn literal_id(lit: i32) -> String {
    if lit > 0 {
        format!("x{lit}")
    } else {
        format!("nx{}", -lit)
    }
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

/// The seven-vertex undetermined game: two agents, three objectives, and
/// neither player wins. Coverer chooses a side at `v0`; `v1` is her own
/// choice of sink pair, `v2` is Disruptor's.
pub fn fixture_undetermined(kind: ObjectiveKind) -> CoverageGame {
    let mut a = Assembler::new();
    let v0 = a.add("v0", Player::Coverer);
    let v1 = a.add("v1", Player::Coverer);
    let v2 = a.add("v2", Player::Disruptor);
    let u1 = a.add("u1", Player::Coverer);
    let d1 = a.add("d1", Player::Coverer);
    let u2 = a.add("u2", Player::Coverer);
    let d2 = a.add("d2", Player::Coverer);
    a.edge(v0, v1);
    a.edge(v0, v2);
    a.edge(v1, u1);
    a.edge(v1, d1);
    a.edge(v2, u2);
    a.edge(v2, d2);
    for s in [u1, d1, u2, d2] {
        a.edge(s, s);
    }
    let graph = a.build(v0);
    let third = match kind {
        ObjectiveKind::Buchi => [u2, d2],
        ObjectiveKind::CoBuchi => [u1, d1],
    };
    let objectives = vec![
        objective(&graph, "a1", &[u1, u2]),
        objective(&graph, "a2", &[d1, d2]),
        objective(&graph, "a3", &third),
    ];
    CoverageGame::new(graph, 2, kind, objectives)
}

/// Coverer wins with `k` agents against `k+1` objectives, but the objectives
/// admit no a-priori split: Disruptor's opening move decides which sink
/// covers what.
pub fn fixture_nondecomposable(
    agents: u32,
    kind: ObjectiveKind,
) -> Result<CoverageGame, GeneratorError> {
    if agents < 2 {
        return Err(GeneratorError::TooFewAgents);
    }
    let k = agents as usize;
    let mut a = Assembler::new();
    let v0 = a.add("v0", Player::Disruptor);
    for i in 1..=k + 1 {
        let vi = a.add(format!("v{i}"), Player::Coverer);
        a.edge(v0, vi);
    }
    for i in 1..=k + 1 {
        let vi = a.at(&format!("v{i}"));
        for j in 1..=k {
            let s = a.add(format!("s{i}_{j}"), Player::Coverer);
            a.edge(vi, s);
            a.edge(s, s);
        }
    }
    let graph = a.build(v0);
    let sink = |i: usize, j: usize| graph.index_of(&format!("s{i}_{j}")).unwrap();
    // Objective i lives on sink column i below, column i-1 above, and doubles
    // up on the first sink of its own row.
    let buchi_sets: Vec<Vec<usize>> = (1..=k + 1)
        .map(|i| {
            let mut members: Vec<usize> = (i + 1..=k + 1).map(|j| sink(j, i)).collect();
            members.extend((1..i).map(|j| sink(j, i - 1)));
            members.push(sink(i, 1));
            members.sort_unstable();
            members.dedup();
            members
        })
        .collect();
    let objectives = dualizable_objectives(&graph, &buchi_sets, kind);
    Ok(CoverageGame::new(graph, agents, kind, objectives))
}

/// Objectives are decomposable into `groups` groups but not `groups + 1`:
/// a Coverer-owned entry offers `groups - 1` private sinks next to an
/// embedded non-decomposable game for the remaining agents.
pub fn fixture_partial_decomposable(
    agents: u32,
    groups: u32,
    kind: ObjectiveKind,
) -> Result<CoverageGame, GeneratorError> {
    if agents < 2 {
        return Err(GeneratorError::TooFewAgents);
    }
    if groups == 0 || groups >= agents {
        return Err(GeneratorError::BadGroupCount);
    }
    let inner_agents = agents - (groups - 1);
    let inner = fixture_nondecomposable(inner_agents, ObjectiveKind::Buchi)?;
    let l = groups as usize;
    let mut a = Assembler::new();
    let w0 = a.add("w0", Player::Coverer);
    for i in 1..l {
        let wi = a.add(format!("w{i}"), Player::Coverer);
        a.edge(w0, wi);
        a.edge(wi, wi);
    }
    // Embed the inner game, then bridge into its initial vertex.
    let offset = a.vertices.len();
    for v in 0..inner.graph.len() {
        a.add(inner.graph.id(v).to_string(), inner.graph.owner(v));
    }
    for v in 0..inner.graph.len() {
        for &w in inner.graph.successors(v) {
            a.edge(offset + v, offset + w);
        }
    }
    a.edge(w0, offset + inner.graph.initial());
    let graph = a.build(w0);
    let mut buchi_sets: Vec<Vec<usize>> = (1..l)
        .map(|i| vec![graph.index_of(&format!("w{i}")).unwrap()])
        .collect();
    for obj in &inner.objectives {
        buchi_sets.push(obj.vertices.iter().map(|v| offset + v).collect());
    }
    let objectives = dualizable_objectives(&graph, &buchi_sets, kind);
    Ok(CoverageGame::new(graph, agents, kind, objectives))
}

/// For sink-trapped games, the co-Büchi variant of a Büchi objective list
/// complements each set within the sink universe: a play trapped at sink `s`
/// then satisfies the co-Büchi complement of a set exactly when it satisfies
/// the Büchi set itself, whatever the sets' overlaps.
fn dualizable_objectives(
    graph: &GameGraph,
    buchi_sets: &[Vec<usize>],
    kind: ObjectiveKind,
) -> Vec<Objective> {
    match kind {
        ObjectiveKind::Buchi => buchi_sets
            .iter()
            .enumerate()
            .map(|(i, m)| objective(graph, format!("a{}", i + 1), m))
            .collect(),
        ObjectiveKind::CoBuchi => {
            let sinks: Vec<usize> = (0..graph.len())
                .filter(|&v| graph.successors(v) == [v])
                .collect();
            buchi_sets
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    let members: Vec<usize> =
                        sinks.iter().copied().filter(|v| !m.contains(v)).collect();
                    objective(graph, format!("a{}", i + 1), &members)
                })
                .collect()
        }
    }
}

/// Illustrative two-agent patrol game: three colored stations that one agent
/// can only cover round-robin, and two exits where the agents must split
/// differently. Best-effort reconstruction shipped for demonstrations only.
pub fn fixture_round_robin() -> CoverageGame {
    let mut a = Assembler::new();
    let v0 = a.add("v0", Player::Coverer);
    let u1 = a.add("u1", Player::Disruptor);
    let m1 = a.add("m1", Player::Disruptor);
    let d1 = a.add("d1", Player::Disruptor);
    let v1 = a.add("v1", Player::Coverer);
    let v2 = a.add("v2", Player::Coverer);
    let u2 = a.add("u2", Player::Coverer);
    let d2 = a.add("d2", Player::Coverer);
    let u3 = a.add("u3", Player::Coverer);
    let d3 = a.add("d3", Player::Coverer);
    for station in [u1, m1, d1] {
        a.edge(v0, station);
        a.edge(station, v0);
        a.edge(station, v1);
        a.edge(station, v2);
    }
    a.edge(v1, u2);
    a.edge(v1, d2);
    a.edge(v2, u3);
    a.edge(v2, d3);
    for s in [u2, d2, u3, d3] {
        a.edge(s, s);
    }
    let graph = a.build(v0);
    let objectives = vec![
        objective(&graph, "red", &[u1, u2, u3]),
        objective(&graph, "green", &[m1, u2, d3]),
        objective(&graph, "yellow", &[d1, d2, d3]),
    ];
    CoverageGame::new(graph, 2, ObjectiveKind::Buchi, objectives)
}

// ---------------------------------------------------------------------------
// Vertex cover
// ---------------------------------------------------------------------------

/// Star of self-looped sinks, one per graph vertex: `k` agents pick `k`
/// sinks, and each edge demands one of its endpoints. Coverage holds iff the
/// graph has a vertex cover of size `k`.
pub fn from_vertex_cover(
    input: &UndirectedGraph,
    agents: u32,
    kind: ObjectiveKind,
) -> Result<CoverageGame, GeneratorError> {
    let mut a = Assembler::new();
    let v0 = a.add("v0", Player::Coverer);
    let sinks: Vec<usize> = (0..input.vertices)
        .map(|i| a.add(format!("n{i}"), Player::Coverer))
        .collect();
    for &s in &sinks {
        a.edge(v0, s);
        a.edge(s, s);
    }
    let graph = a.build(v0);
    let objectives = input
        .edges
        .iter()
        .map(|&(u, v)| {
            let label = format!("e{u}_{v}");
            match kind {
                ObjectiveKind::Buchi => objective(&graph, label, &[sinks[u], sinks[v]]),
                ObjectiveKind::CoBuchi => {
                    let rest: Vec<usize> = (0..input.vertices)
                        .filter(|&i| i != u && i != v)
                        .map(|i| sinks[i])
                        .collect();
                    objective(&graph, label, &rest)
                }
            }
        })
        .collect();
    Ok(CoverageGame::new(graph, agents, kind, objectives))
}

// ---------------------------------------------------------------------------
// 3SAT
// ---------------------------------------------------------------------------

/// Which coverage game a 3CNF formula is turned into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SatTarget {
    /// Coverer-owned co-Büchi game, two agents: satisfiability as one-player
    /// coverage.
    OnePlayerCoBuchi,
    /// Two-agent Büchi coverage: satisfiable iff Coverer wins.
    TwoAgentBuchiCoverage,
    /// Two-agent Büchi disruption: satisfiable iff Disruptor wins.
    TwoAgentBuchiDisruption,
}

pub fn from_3sat(formula: &CnfFormula, target: SatTarget) -> Result<CoverageGame, GeneratorError> {
    let n = formula.variables;
    let m = formula.clauses.len();
    if m == 0 {
        return Err(GeneratorError::NoClauses);
    }
    let (kind, variable_owner, literal_owner) = match target {
        SatTarget::OnePlayerCoBuchi => (ObjectiveKind::CoBuchi, Player::Coverer, Player::Coverer),
        SatTarget::TwoAgentBuchiCoverage => (ObjectiveKind::Buchi, Player::Coverer, Player::Disruptor),
        SatTarget::TwoAgentBuchiDisruption => (ObjectiveKind::Buchi, Player::Disruptor, Player::Coverer),
    };
    let v0_owner = match target {
        SatTarget::TwoAgentBuchiDisruption => Player::Coverer,
        _ => Player::Coverer,
    };
    let mut a = Assembler::new();
    let v0 = a.add("v0", v0_owner);
    // Assignment sub-graph: variable vertices alternating with literal
    // vertices.
    for i in 1..=n {
        a.add(format!("v{i}"), variable_owner);
    }
    for i in 1..=n {
        a.add(literal_id(i as i32), literal_owner);
        a.add(literal_id(-(i as i32)), literal_owner);
    }
    // Clause sub-graph: clause vertices and one vertex per literal slot.
    for i in 1..=m {
        a.add(format!("C{i}"), variable_owner);
        for j in 1..=3 {
            a.add(format!("l{i}_{j}"), literal_owner);
        }
    }
    a.edge(v0, a.at("v1"));
    a.edge(v0, a.at("C1"));
    for i in 1..=n {
        let vi = a.at(&format!("v{i}"));
        let pos = a.at(&literal_id(i as i32));
        let neg = a.at(&literal_id(-(i as i32)));
        a.edge(vi, pos);
        a.edge(vi, neg);
        match target {
            SatTarget::OnePlayerCoBuchi => {
                // Wrap back to the first variable so the agent re-affirms the
                // assignment forever.
                let next = a.at(&format!("v{}", i % n + 1));
                a.edge(pos, next);
                a.edge(neg, next);
            }
            _ => {
                // Literal vertices trap; moving on is the owner's choice.
                a.edge(pos, pos);
                a.edge(neg, neg);
                if i < n {
                    let next = a.at(&format!("v{}", i + 1));
                    a.edge(pos, next);
                    a.edge(neg, next);
                }
            }
        }
    }
    for i in 1..=m {
        let ci = a.at(&format!("C{i}"));
        for j in 1..=3 {
            let slot = a.at(&format!("l{i}_{j}"));
            a.edge(ci, slot);
            match target {
                SatTarget::OnePlayerCoBuchi => {
                    let next = a.at(&format!("C{}", i % m + 1));
                    a.edge(slot, next);
                }
                _ => {
                    a.edge(slot, slot);
                    if i < m {
                        let next = a.at(&format!("C{}", i + 1));
                        a.edge(slot, next);
                    }
                }
            }
        }
    }
    let graph = a.build(v0);
    let at = |id: &str| graph.index_of(id).unwrap();

    let assignment_literals: Vec<usize> = (1..=n)
        .flat_map(|i| [at(&literal_id(i as i32)), at(&literal_id(-(i as i32)))])
        .collect();
    let slot_vertices: Vec<usize> = (1..=m)
        .flat_map(|i| (1..=3).map(move |j| (i, j)))
        .map(|(i, j)| at(&format!("l{i}_{j}")))
        .collect();
    let mut objectives = vec![
        objective(&graph, "assign", &assignment_literals),
        objective(&graph, "clause", &slot_vertices),
    ];
    for i in 1..=n {
        for lit in [i as i32, -(i as i32)] {
            let mut members: Vec<usize> = match target {
                // Satisfied iff the assignment agent eventually avoids this
                // literal vertex.
                SatTarget::OnePlayerCoBuchi => vec![at(&literal_id(lit))],
                // Satisfied iff the assignment play traps in a different
                // literal vertex.
                _ => assignment_literals
                    .iter()
                    .copied()
                    .filter(|&v| v != at(&literal_id(lit)))
                    .collect(),
            };
            for (idx, clause) in formula.clauses.iter().enumerate() {
                for (j, &slot_lit) in clause.iter().enumerate() {
                    let slot = at(&format!("l{}_{}", idx + 1, j + 1));
                    let include = match target {
                        // Slots carrying the negated literal.
                        SatTarget::OnePlayerCoBuchi => slot_lit == -lit,
                        // Slots carrying anything but the negated literal.
                        SatTarget::TwoAgentBuchiCoverage => slot_lit != -lit,
                        // Slots carrying exactly the negated literal.
                        SatTarget::TwoAgentBuchiDisruption => slot_lit == -lit,
                    };
                    if include {
                        members.push(slot);
                    }
                }
            }
            objectives.push(objective(&graph, format!("lit_{}", literal_id(lit)), &members));
        }
    }
    Ok(CoverageGame::new(graph, 2, kind, objectives))
}

// ---------------------------------------------------------------------------
// QBF
// ---------------------------------------------------------------------------

/// Assignment game for a prenex 3CNF QBF: variables are assigned in prefix
/// order (owner by quantifier), literal vertices are self-looped, and one
/// agent must camp on each chosen literal while clause objectives demand a
/// true literal per clause. The formula is true iff Coverer covers with one
/// agent per variable.
pub fn from_qbf(formula: &QbfFormula, kind: ObjectiveKind) -> Result<CoverageGame, GeneratorError> {
    let Matrix::Cnf(clauses) = &formula.matrix else {
        return Err(GeneratorError::WrongMatrix("CNF"));
    };
    let n = formula.prefix.len();
    let mut a = Assembler::new();
    for (pos, &(q, _)) in formula.prefix.iter().enumerate() {
        let owner = match q {
            Quantifier::Exists => Player::Coverer,
            Quantifier::ForAll => Player::Disruptor,
        };
        a.add(format!("v{}", pos + 1), owner);
    }
    // Literal vertices are named after the prefix variable they assign.
    for &(_, var) in &formula.prefix {
        a.add(literal_id(var as i32), Player::Coverer);
        a.add(literal_id(-(var as i32)), Player::Coverer);
    }
    for (pos, &(q, var)) in formula.prefix.iter().enumerate() {
        let vi = a.at(&format!("v{}", pos + 1));
        let pos_lit = a.at(&literal_id(var as i32));
        let neg_lit = a.at(&literal_id(-(var as i32)));
        a.edge(vi, pos_lit);
        a.edge(vi, neg_lit);
        a.edge(pos_lit, pos_lit);
        a.edge(neg_lit, neg_lit);
        if pos + 1 < n {
            let next = a.at(&format!("v{}", pos + 2));
            match q {
                Quantifier::Exists => a.edge(vi, next),
                Quantifier::ForAll => {
                    a.edge(pos_lit, next);
                    a.edge(neg_lit, next);
                }
            }
        }
    }
    let graph = a.build(0);
    let at = |id: &str| graph.index_of(id).unwrap();
    let all_literals: Vec<usize> = formula
        .prefix
        .iter()
        .flat_map(|&(_, var)| [at(&literal_id(var as i32)), at(&literal_id(-(var as i32)))])
        .collect();
    let dualize = |members: Vec<usize>| -> Vec<usize> {
        match kind {
            ObjectiveKind::Buchi => members,
            ObjectiveKind::CoBuchi => all_literals
                .iter()
                .copied()
                .filter(|v| !members.contains(v))
                .collect(),
        }
    };
    let mut objectives = Vec::new();
    for &(_, var) in &formula.prefix {
        let members = vec![at(&literal_id(var as i32)), at(&literal_id(-(var as i32)))];
        objectives.push(objective(&graph, format!("var{var}"), &dualize(members)));
    }
    for (i, clause) in clauses.iter().enumerate() {
        let mut members: Vec<usize> = clause.iter().map(|&lit| at(&literal_id(lit))).collect();
        members.sort_unstable();
        members.dedup();
        objectives.push(objective(&graph, format!("C{}", i + 1), &dualize(members)));
    }
    Ok(CoverageGame::new(graph, n as u32, kind, objectives))
}

// ---------------------------------------------------------------------------
// 2QBF disruption
// ---------------------------------------------------------------------------

/// Which disruption game an `∃X ∀Y` 3DNF formula is turned into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoQbfTarget {
    /// Negate the matrix and reuse the assignment game for `∀X ∃Y`; the
    /// formula is true iff Disruptor disrupts (either objective kind).
    General(ObjectiveKind),
    /// The dedicated two-agent co-Büchi construction with assignment and
    /// refute sub-graphs.
    CoBuchiTwoAgent,
}

/// Splits an `∃X ∀Y` prefix into its blocks.
fn split_prefix(formula: &QbfFormula) -> Result<(Vec<usize>, Vec<usize>), GeneratorError> {
    let mut existential = Vec::new();
    let mut universal = Vec::new();
    for &(q, var) in &formula.prefix {
        match q {
            Quantifier::Exists => {
                if !universal.is_empty() {
                    return Err(GeneratorError::PrefixMismatch);
                }
                existential.push(var);
            }
            Quantifier::ForAll => universal.push(var),
        }
    }
    if existential.is_empty() {
        return Err(GeneratorError::EmptyExistentialBlock);
    }
    Ok((existential, universal))
}

pub fn from_2qbf_disruption(
    formula: &QbfFormula,
    target: TwoQbfTarget,
) -> Result<CoverageGame, GeneratorError> {
    let Matrix::Dnf(cubes) = &formula.matrix else {
        return Err(GeneratorError::WrongMatrix("DNF"));
    };
    let (existential, universal) = split_prefix(formula)?;
    match target {
        TwoQbfTarget::General(kind) => {
            // ∃X ∀Y (DNF) is true iff ∀X ∃Y (negated CNF) is false; Disruptor
            // wins the assignment game for the negation exactly then.
            let negated: Vec<[i32; 3]> =
                cubes.iter().map(|c| [-c[0], -c[1], -c[2]]).collect();
            let prefix: Vec<(Quantifier, usize)> = existential
                .iter()
                .map(|&v| (Quantifier::ForAll, v))
                .chain(universal.iter().map(|&v| (Quantifier::Exists, v)))
                .collect();
            let flipped = QbfFormula::new(prefix, Matrix::Cnf(negated))?;
            from_qbf(&flipped, kind)
        }
        TwoQbfTarget::CoBuchiTwoAgent => {
            two_agent_cobuchi_disruption(cubes, &existential, &universal)
        }
    }
}

/// The assignment/refute construction: Disruptor commits to an X-assignment
/// one variable per play, while the refute agent proposes Y-assignments and
/// must name a false literal in whichever cube Disruptor claims satisfied.
fn two_agent_cobuchi_disruption(
    cubes: &[[i32; 3]],
    existential: &[usize],
    universal: &[usize],
) -> Result<CoverageGame, GeneratorError> {
    if universal.is_empty() {
        return Err(GeneratorError::EmptyUniversalBlock);
    }
    if cubes.is_empty() {
        return Err(GeneratorError::NoClauses);
    }
    let m = universal.len();
    let x_literals: Vec<i32> = existential
        .iter()
        .flat_map(|&v| [v as i32, -(v as i32)])
        .collect();
    let mut a = Assembler::new();
    let v0 = a.add("v0", Player::Coverer);
    // Assignment sub-graph.
    for (i, &var) in existential.iter().enumerate() {
        let vi = a.add(format!("v{}", i + 1), Player::Disruptor);
        a.edge(v0, vi);
        let _ = var;
    }
    for &lit in &x_literals {
        a.add(literal_id(lit), Player::Coverer);
    }
    for (i, &var) in existential.iter().enumerate() {
        let vi = a.at(&format!("v{}", i + 1));
        a.edge(vi, a.at(&literal_id(var as i32)));
        a.edge(vi, a.at(&literal_id(-(var as i32))));
    }
    // One Y-assignment gadget per X-literal: the agent parked on an X-literal
    // keeps re-assigning Y, revisiting its literal vertex forever.
    for &lit in &x_literals {
        let lid = literal_id(lit);
        for (j, &yvar) in universal.iter().enumerate() {
            a.add(format!("u{}_{lid}", j + 1), Player::Coverer);
            a.add(format!("{}_{lid}", literal_id(yvar as i32)), Player::Coverer);
            a.add(format!("{}_{lid}", literal_id(-(yvar as i32))), Player::Coverer);
        }
        a.edge(a.at(&lid), a.at(&format!("u1_{lid}")));
        for (j, &yvar) in universal.iter().enumerate() {
            let uj = a.at(&format!("u{}_{lid}", j + 1));
            let yes = a.at(&format!("{}_{lid}", literal_id(yvar as i32)));
            let no = a.at(&format!("{}_{lid}", literal_id(-(yvar as i32))));
            a.edge(uj, yes);
            a.edge(uj, no);
            let back = if j + 1 < m {
                a.at(&format!("u{}_{lid}", j + 2))
            } else {
                a.at(&lid)
            };
            a.edge(yes, back);
            a.edge(no, back);
        }
    }
    // Refute sub-graph: propose a Y-assignment, hear Disruptor's cube pick,
    // name a false literal in it.
    for (j, &yvar) in universal.iter().enumerate() {
        a.add(format!("u{}", j + 1), Player::Coverer);
        a.add(literal_id(yvar as i32), Player::Coverer);
        a.add(literal_id(-(yvar as i32)), Player::Coverer);
        let _ = j;
    }
    let chooser = a.add("c", Player::Disruptor);
    a.edge(v0, a.at("u1"));
    for (j, &yvar) in universal.iter().enumerate() {
        let uj = a.at(&format!("u{}", j + 1));
        let yes = a.at(&literal_id(yvar as i32));
        let no = a.at(&literal_id(-(yvar as i32)));
        a.edge(uj, yes);
        a.edge(uj, no);
        let next = if j + 1 < m { a.at(&format!("u{}", j + 2)) } else { chooser };
        a.edge(yes, next);
        a.edge(no, next);
    }
    for (i, cube) in cubes.iter().enumerate() {
        let ci = a.add(format!("C{}", i + 1), Player::Coverer);
        a.edge(chooser, ci);
        for (j, &lit) in cube.iter().enumerate() {
            let r = a.add(format!("r{}_{}", i + 1, j + 1), Player::Coverer);
            a.edge(ci, r);
            if existential.contains(&(lit.unsigned_abs() as usize)) {
                a.edge(r, r);
            } else {
                a.edge(r, a.at("u1"));
            }
        }
    }
    let graph = a.build(v0);
    let at = |id: &str| graph.index_of(id).unwrap();

    // Refute vertices correspond to the negation of their slot literal.
    let refutes_of = |lit: i32| -> Vec<usize> {
        let mut out = Vec::new();
        for (i, cube) in cubes.iter().enumerate() {
            for (j, &slot) in cube.iter().enumerate() {
                if -slot == lit {
                    out.push(at(&format!("r{}_{}", i + 1, j + 1)));
                }
            }
        }
        out
    };
    let x_literal_vertices: Vec<usize> = x_literals.iter().map(|&l| at(&literal_id(l))).collect();
    let all_refutes: Vec<usize> = (1..=cubes.len())
        .flat_map(|i| (1..=3).map(move |j| (i, j)))
        .map(|(i, j)| at(&format!("r{i}_{j}")))
        .collect();
    let mut objectives = vec![
        objective(&graph, "assign", &x_literal_vertices),
        objective(&graph, "refute", &all_refutes),
    ];
    for &lit in &x_literals {
        let mut members: Vec<usize> = x_literal_vertices
            .iter()
            .copied()
            .filter(|&v| v != at(&literal_id(lit)))
            .collect();
        members.extend(refutes_of(lit));
        objectives.push(objective(&graph, format!("lit_{}", literal_id(lit)), &members));
    }
    for &yvar in universal {
        for lit in [yvar as i32, -(yvar as i32)] {
            let lid = literal_id(lit);
            let mut members = vec![at(&lid)];
            for &xlit in &x_literals {
                members.push(at(&format!("{}_{}", lid, literal_id(xlit))));
            }
            members.extend(refutes_of(lit));
            objectives.push(objective(&graph, format!("lit_{lid}"), &members));
        }
    }
    Ok(CoverageGame::new(graph, 2, ObjectiveKind::CoBuchi, objectives))
}

// ---------------------------------------------------------------------------
// Brute-force oracles
// ---------------------------------------------------------------------------

/// Satisfiability by exhaustive assignment enumeration.
pub fn sat_brute(formula: &CnfFormula) -> bool {
    assert!(formula.variables <= 20, "oracle is capped at 20 variables");
    (0u64..(1 << formula.variables)).any(|assignment| formula.eval(assignment))
}

/// QBF truth by recursion over the prefix.
pub fn qbf_brute(formula: &QbfFormula) -> bool {
    assert!(formula.prefix.len() <= 20, "oracle is capped at 20 variables");
    fn rec(formula: &QbfFormula, at: usize, assignment: u64) -> bool {
        if at == formula.prefix.len() {
            return formula.matrix.eval(assignment);
        }
        let (q, var) = formula.prefix[at];
        let bit = 1u64 << (var - 1);
        let with_true = rec(formula, at + 1, assignment | bit);
        match q {
            Quantifier::Exists => with_true || rec(formula, at + 1, assignment & !bit),
            Quantifier::ForAll => with_true && rec(formula, at + 1, assignment & !bit),
        }
    }
    rec(formula, 0, 0)
}

/// Is there a vertex cover of size at most `k`?
pub fn vertex_cover_brute(graph: &UndirectedGraph, k: u32) -> bool {
    assert!(graph.vertices <= 20, "oracle is capped at 20 vertices");
    (0u64..(1 << graph.vertices))
        .filter(|mask| mask.count_ones() <= k)
        .any(|mask| {
            graph
                .edges
                .iter()
                .all(|&(a, b)| mask >> a & 1 == 1 || mask >> b & 1 == 1)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coverage::{decide_coverage, is_decomposable};
    use crate::disruption::{solve_disruption_buchi, DisruptionConfig};
    use crate::game::validate;
    use crate::one_player::coverage_one_player_coverer;

    fn objective_ids(game: &CoverageGame, label: &str) -> Vec<String> {
        let obj = game.objectives.iter().find(|o| o.label == label).unwrap();
        obj.vertices.iter().map(|v| game.graph.id(v).to_string()).collect()
    }

    #[test]
    fn undetermined_fixture_validates() {
        for kind in [ObjectiveKind::Buchi, ObjectiveKind::CoBuchi] {
            let game = fixture_undetermined(kind);
            assert!(validate(&game).is_empty());
        }
    }

    #[test]
    fn nondecomposable_objective_sets_are_pinned() {
        let game = fixture_nondecomposable(2, ObjectiveKind::Buchi).unwrap();
        assert!(validate(&game).is_empty());
        assert_eq!(objective_ids(&game, "a1"), ["s1_1", "s2_1", "s3_1"]);
        assert_eq!(objective_ids(&game, "a2"), ["s1_1", "s2_1", "s3_2"]);
        assert_eq!(objective_ids(&game, "a3"), ["s1_2", "s2_2", "s3_1"]);
    }

    #[test]
    fn vertex_cover_reduction_labels() {
        let k3 = UndirectedGraph::complete(3);
        assert!(!vertex_cover_brute(&k3, 1));
        assert!(vertex_cover_brute(&k3, 2));
        for kind in [ObjectiveKind::Buchi, ObjectiveKind::CoBuchi] {
            let yes = from_vertex_cover(&k3, 2, kind).unwrap();
            assert!(validate(&yes).is_empty());
            assert!(coverage_one_player_coverer(&yes).unwrap(), "{kind:?}");
            let no = from_vertex_cover(&k3, 1, kind).unwrap();
            assert!(!coverage_one_player_coverer(&no).unwrap(), "{kind:?}");
        }
        let edgeless = UndirectedGraph::new(3, vec![]).unwrap();
        let game = from_vertex_cover(&edgeless, 1, ObjectiveKind::Buchi).unwrap();
        assert!(coverage_one_player_coverer(&game).unwrap());
    }

    #[test]
    fn sat_reduction_spot_checks() {
        let tauto = CnfFormula::new(1, vec![[1, 1, 1]]).unwrap();
        assert!(sat_brute(&tauto));
        let contra = CnfFormula::new(1, vec![[1, 1, 1], [-1, -1, -1]]).unwrap();
        assert!(!sat_brute(&contra));

        for formula in [&tauto, &contra] {
            let expected = sat_brute(formula);
            let cover = from_3sat(formula, SatTarget::TwoAgentBuchiCoverage).unwrap();
            assert!(validate(&cover).is_empty());
            assert_eq!(decide_coverage(&cover), expected);

            let one = from_3sat(formula, SatTarget::OnePlayerCoBuchi).unwrap();
            assert!(validate(&one).is_empty());
            assert_eq!(coverage_one_player_coverer(&one).unwrap(), expected);
        }

        let sat2 = CnfFormula::new(2, vec![[1, 2, 2], [-1, 2, 2]]).unwrap();
        assert!(sat_brute(&sat2));
        let disrupt = from_3sat(&sat2, SatTarget::TwoAgentBuchiDisruption).unwrap();
        assert!(validate(&disrupt).is_empty());
        let cfg = DisruptionConfig::default();
        assert!(solve_disruption_buchi(&disrupt, &cfg).unwrap().0);
    }

    #[test]
    fn qbf_reduction_spot_checks() {
        let exists = QbfFormula::new(
            vec![(Quantifier::Exists, 1)],
            Matrix::Cnf(vec![[1, 1, 1]]),
        )
        .unwrap();
        assert!(qbf_brute(&exists));
        let forall = QbfFormula::new(
            vec![(Quantifier::ForAll, 1)],
            Matrix::Cnf(vec![[1, 1, 1]]),
        )
        .unwrap();
        assert!(!qbf_brute(&forall));
        let mixed = QbfFormula::new(
            vec![(Quantifier::ForAll, 1), (Quantifier::Exists, 2)],
            Matrix::Cnf(vec![[1, 2, 2], [-1, 2, 2]]),
        )
        .unwrap();
        assert!(qbf_brute(&mixed));

        for (formula, expected) in [(&exists, true), (&forall, false), (&mixed, true)] {
            for kind in [ObjectiveKind::Buchi, ObjectiveKind::CoBuchi] {
                let game = from_qbf(formula, kind).unwrap();
                assert!(validate(&game).is_empty());
                assert_eq!(decide_coverage(&game), expected, "{kind:?}");
            }
        }
    }

    #[test]
    fn two_qbf_rejects_degenerate_prefixes() {
        let no_exists = QbfFormula::new(
            vec![(Quantifier::ForAll, 1)],
            Matrix::Dnf(vec![[1, 1, 1]]),
        )
        .unwrap();
        assert_eq!(
            from_2qbf_disruption(&no_exists, TwoQbfTarget::CoBuchiTwoAgent).unwrap_err(),
            GeneratorError::EmptyExistentialBlock
        );
        let no_forall = QbfFormula::new(
            vec![(Quantifier::Exists, 1)],
            Matrix::Dnf(vec![[1, 1, 1]]),
        )
        .unwrap();
        assert_eq!(
            from_2qbf_disruption(&no_forall, TwoQbfTarget::CoBuchiTwoAgent).unwrap_err(),
            GeneratorError::EmptyUniversalBlock
        );
    }

    #[test]
    fn partial_fixture_shape() {
        let game = fixture_partial_decomposable(3, 2, ObjectiveKind::Buchi).unwrap();
        assert!(validate(&game).is_empty());
        assert_eq!(game.objective_count(), 4);
        assert!(decide_coverage(&game));
        assert!(fixture_partial_decomposable(2, 2, ObjectiveKind::Buchi).is_err());

        // With a single group the fixture embeds the whole non-decomposable
        // game, and one-group decomposability is coverage itself.
        let flat = fixture_partial_decomposable(2, 1, ObjectiveKind::Buchi).unwrap();
        assert!(decide_coverage(&flat));
        assert!(crate::coverage::is_decomposable_into(&flat, flat.graph.initial(), 1));
    }

    #[test]
    fn two_qbf_witness_pair_round_trip() {
        // ∃x ∀y (x∧y∧y) ∨ (x∧¬y∧¬y) is true via x = 1, so the two-agent
        // co-Büchi game is disruptable and the scan locates a fairness pair
        // that the checker confirms.
        let formula = QbfFormula::new(
            vec![(Quantifier::Exists, 1), (Quantifier::ForAll, 2)],
            Matrix::Dnf(vec![[1, 2, 2], [1, -2, -2]]),
        )
        .unwrap();
        assert!(qbf_brute(&formula));
        let game = from_2qbf_disruption(&formula, TwoQbfTarget::CoBuchiTwoAgent).unwrap();
        assert!(validate(&game).is_empty());
        let cfg = DisruptionConfig::default();
        let (verdict, witness) =
            crate::disruption::solve_disruption_cobuchi(&game, &cfg).unwrap();
        assert!(verdict);
        let pair = witness.unwrap();
        pair.validate(&game.graph).unwrap();
        assert!(crate::disruption::fairness_pair_is_disrupting(&game, &pair));

        // Dropping the second cube makes every x refutable by y = 0.
        let refutable = QbfFormula::new(
            vec![(Quantifier::Exists, 1), (Quantifier::ForAll, 2)],
            Matrix::Dnf(vec![[1, 2, 2]]),
        )
        .unwrap();
        assert!(!qbf_brute(&refutable));
        let game = from_2qbf_disruption(&refutable, TwoQbfTarget::CoBuchiTwoAgent).unwrap();
        let (verdict, _) = crate::disruption::solve_disruption_cobuchi(&game, &cfg).unwrap();
        assert!(!verdict);
    }

    #[test]
    fn round_robin_fixture_is_coverable() {
        let game = fixture_round_robin();
        assert!(validate(&game).is_empty());
        let (covered, tree) = crate::coverage::solve_coverage(&game);
        assert!(covered);
        let outcome =
            crate::coverage::verify_covering_strategy(&game, &tree.unwrap()).unwrap();
        assert!(outcome.is_verified(), "{outcome:?}");
        let g = &game.graph;
        assert!(!is_decomposable(&game, g.initial()));
        assert!(is_decomposable(&game, g.index_of("v1").unwrap()));
        assert!(is_decomposable(&game, g.index_of("v2").unwrap()));
    }

    #[test]
    fn clause_padding() {
        let f = CnfFormula::from_clauses(2, &[vec![1], vec![-1, 2]]).unwrap();
        assert_eq!(f.clauses, vec![[1, 1, 1], [-1, 2, 2]]);
    }
}
