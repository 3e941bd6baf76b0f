//! External formats: the JSON game format, DOT export, witness and strategy
//! serialization, DIMACS/QDIMACS formula input, and the undirected-graph
//! input for the vertex-cover generator.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::{ObjectiveIndexSet, VertexSet};
use crate::coverage::{
    CoveringStrategyTree, LeafNode, LeafStrategy, MarchNode, SplitNode, SplitPart,
};
use crate::disruption::{DisruptionWitness, FairnessPair};
use crate::game::{
    CoverageGame, GameGraph, GraphError, LassoPath, Objective, ObjectiveKind, Player,
};
use crate::reductions::{CnfFormula, GeneratorError, Matrix, QbfFormula, Quantifier, UndirectedGraph};
use crate::solvers::MemorylessStrategy;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("owner must be 1 (Coverer) or 2 (Disruptor), got {0}")]
    BadOwner(u32),
    #[error("objective_kind must be \"buchi\" or \"cobuchi\", got {0:?}")]
    BadKind(String),
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Formula(#[from] GeneratorError),
    #[error("line {line}: {reason}")]
    Dimacs { line: usize, reason: String },
    #[error("strategy tree: {0}")]
    Tree(String),
}

// ---------------------------------------------------------------------------
// Game JSON
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct GameDoc {
    vertices: Vec<VertexDoc>,
    initial: String,
    edges: Vec<(String, String)>,
    objective_kind: String,
    objectives: Vec<ObjectiveDoc>,
    agents: u32,
}

#[derive(Serialize, Deserialize)]
struct VertexDoc {
    id: String,
    owner: u32,
}

#[derive(Serialize, Deserialize)]
struct ObjectiveDoc {
    label: String,
    vertices: Vec<String>,
}

/// Parses the JSON game format. Duplicate vertices and edges are rejected;
/// list order carries no meaning beyond fixing vertex indices.
pub fn parse_game(text: &str) -> Result<CoverageGame, ParseError> {
    let doc: GameDoc = serde_json::from_str(text)?;
    let mut vertices = Vec::with_capacity(doc.vertices.len());
    for v in &doc.vertices {
        let owner = match v.owner {
            1 => Player::Coverer,
            2 => Player::Disruptor,
            other => return Err(ParseError::BadOwner(other)),
        };
        vertices.push((v.id.clone(), owner));
    }
    let lookup = |id: &str| -> Result<usize, ParseError> {
        vertices
            .iter()
            .position(|(v, _)| v == id)
            .ok_or_else(|| ParseError::UnknownVertex(id.to_string()))
    };
    let initial = lookup(&doc.initial)?;
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (a, b) in &doc.edges {
        edges.push((lookup(a)?, lookup(b)?));
    }
    let kind = match doc.objective_kind.as_str() {
        "buchi" => ObjectiveKind::Buchi,
        "cobuchi" => ObjectiveKind::CoBuchi,
        other => return Err(ParseError::BadKind(other.to_string())),
    };
    let graph = GameGraph::new(vertices, &edges, initial)?;
    let mut objectives = Vec::with_capacity(doc.objectives.len());
    for o in &doc.objectives {
        let mut set = VertexSet::empty(graph.len());
        for id in &o.vertices {
            set.insert(graph.index_of(id).ok_or_else(|| ParseError::UnknownVertex(id.clone()))?);
        }
        objectives.push(Objective { label: o.label.clone(), vertices: set });
    }
    Ok(CoverageGame::new(graph, doc.agents, kind, objectives))
}

/// Serializes a game back to the JSON format, deterministically.
pub fn game_to_json(game: &CoverageGame) -> String {
    let graph = &game.graph;
    let doc = GameDoc {
        vertices: (0..graph.len())
            .map(|v| VertexDoc {
                id: graph.id(v).to_string(),
                owner: match graph.owner(v) {
                    Player::Coverer => 1,
                    Player::Disruptor => 2,
                },
            })
            .collect(),
        initial: graph.id(graph.initial()).to_string(),
        edges: (0..graph.len())
            .flat_map(|v| {
                graph
                    .successors(v)
                    .iter()
                    .map(move |&w| (graph.id(v).to_string(), graph.id(w).to_string()))
            })
            .collect(),
        objective_kind: match game.kind {
            ObjectiveKind::Buchi => "buchi".to_string(),
            ObjectiveKind::CoBuchi => "cobuchi".to_string(),
        },
        objectives: game
            .objectives
            .iter()
            .map(|o| ObjectiveDoc {
                label: o.label.clone(),
                vertices: o.vertices.iter().map(|v| graph.id(v).to_string()).collect(),
            })
            .collect(),
        agents: game.agents,
    };
    serde_json::to_string_pretty(&doc).expect("game serialization cannot fail")
}

// ---------------------------------------------------------------------------
// DOT export
// ---------------------------------------------------------------------------

fn dot_quoted(text: &str) -> String {
    format!("\"{}\"", text.replace('"', "\\\""))
}

/// Renders the game as GraphViz DOT: circles for Coverer vertices, boxes for
/// Disruptor vertices, the initial vertex double-bordered, and objective
/// membership as comma-joined labels.
pub fn game_to_dot(game: &CoverageGame) -> String {
    let graph = &game.graph;
    let mut out = String::from("digraph game {\n  rankdir=LR;\n");
    for v in 0..graph.len() {
        let shape = match graph.owner(v) {
            Player::Coverer => "circle",
            Player::Disruptor => "box",
        };
        let tags: Vec<&str> = game
            .objectives
            .iter()
            .filter(|o| o.vertices.contains(v))
            .map(|o| o.label.as_str())
            .collect();
        let label = if tags.is_empty() {
            graph.id(v).to_string()
        } else {
            format!("{}\\n{}", graph.id(v), tags.join(","))
        };
        let init = if v == graph.initial() { ", peripheries=2" } else { "" };
        writeln!(
            out,
            "  {} [shape={shape}{init}, label={}];",
            dot_quoted(graph.id(v)),
            dot_quoted(&label)
        )
        .unwrap();
    }
    for v in 0..graph.len() {
        for &w in graph.successors(v) {
            writeln!(out, "  {} -> {};", dot_quoted(graph.id(v)), dot_quoted(graph.id(w))).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

// ---------------------------------------------------------------------------
// Witness serialization
// ---------------------------------------------------------------------------

fn strategy_to_map(graph: &GameGraph, strategy: &MemorylessStrategy) -> BTreeMap<String, String> {
    strategy
        .domain()
        .map(|(v, t)| (graph.id(v).to_string(), graph.id(t).to_string()))
        .collect()
}

fn strategy_from_map(
    graph: &GameGraph,
    owner: Player,
    map: &BTreeMap<String, String>,
) -> Result<MemorylessStrategy, ParseError> {
    let mut s = MemorylessStrategy::new(owner, graph.len());
    for (v, t) in map {
        let vi = graph.index_of(v).ok_or_else(|| ParseError::UnknownVertex(v.clone()))?;
        let ti = graph.index_of(t).ok_or_else(|| ParseError::UnknownVertex(t.clone()))?;
        s.set(vi, ti);
    }
    Ok(s)
}

pub fn memoryless_to_json(graph: &GameGraph, strategy: &MemorylessStrategy) -> String {
    serde_json::to_string_pretty(&strategy_to_map(graph, strategy)).unwrap()
}

pub fn fairness_pair_to_json(graph: &GameGraph, pair: &FairnessPair) -> String {
    #[derive(Serialize)]
    struct PairDoc {
        #[serde(rename = "U")]
        region: Vec<String>,
        g: BTreeMap<String, Vec<String>>,
    }
    let doc = PairDoc {
        region: pair.region.iter().map(|v| graph.id(v).to_string()).collect(),
        g: pair
            .requirement_domain()
            .map(|(v, set)| {
                (
                    graph.id(v).to_string(),
                    set.iter().map(|w| graph.id(w).to_string()).collect(),
                )
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).unwrap()
}

pub fn lasso_to_json(graph: &GameGraph, lasso: &LassoPath) -> String {
    #[derive(Serialize)]
    struct LassoDoc {
        stem: Vec<String>,
        #[serde(rename = "loop")]
        cycle: Vec<String>,
    }
    let doc = LassoDoc {
        stem: lasso.stem.iter().map(|&v| graph.id(v).to_string()).collect(),
        cycle: lasso.cycle.iter().map(|&v| graph.id(v).to_string()).collect(),
    };
    serde_json::to_string_pretty(&doc).unwrap()
}

pub fn witness_to_json(graph: &GameGraph, witness: &DisruptionWitness) -> String {
    match witness {
        DisruptionWitness::Memoryless(s) => memoryless_to_json(graph, s),
        DisruptionWitness::Fairness(p) => fairness_pair_to_json(graph, p),
    }
}

// ---------------------------------------------------------------------------
// Covering strategy trees
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum TreeDoc {
    Leaf {
        region: Vec<String>,
        strategy: LeafStrategyDoc,
        #[serde(skip_serializing_if = "Option::is_none")]
        escape: Option<Box<MarchDoc>>,
    },
    March(MarchDoc),
    Split(SplitDoc),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
enum LeafStrategyDoc {
    Rotation { witnesses: Vec<BTreeMap<String, String>> },
    Avoidance { moves: BTreeMap<String, String> },
}

#[derive(Serialize, Deserialize)]
struct MarchDoc {
    attractor: BTreeMap<String, String>,
    splits: Vec<SplitDoc>,
}

#[derive(Serialize, Deserialize)]
struct SplitDoc {
    at: String,
    parts: Vec<PartDoc>,
}

#[derive(Serialize, Deserialize)]
struct PartDoc {
    agents: u32,
    objectives: Vec<usize>,
    child: TreeDoc,
}

fn tree_doc(game: &CoverageGame, tree: &CoveringStrategyTree) -> TreeDoc {
    let graph = &game.graph;
    match tree {
        CoveringStrategyTree::Leaf(leaf) => TreeDoc::Leaf {
            region: leaf.region.iter().map(|v| graph.id(v).to_string()).collect(),
            strategy: match &leaf.strategy {
                LeafStrategy::Rotation(w) => LeafStrategyDoc::Rotation {
                    witnesses: w.iter().map(|s| strategy_to_map(graph, s)).collect(),
                },
                LeafStrategy::Avoidance(s) => {
                    LeafStrategyDoc::Avoidance { moves: strategy_to_map(graph, s) }
                }
            },
            escape: leaf.escape.as_ref().map(|m| Box::new(march_doc(game, m))),
        },
        CoveringStrategyTree::March(m) => TreeDoc::March(march_doc(game, m)),
        CoveringStrategyTree::Split(s) => TreeDoc::Split(split_doc(game, s)),
    }
}

fn march_doc(game: &CoverageGame, march: &MarchNode) -> MarchDoc {
    MarchDoc {
        attractor: strategy_to_map(&game.graph, &march.attractor),
        splits: march.splits.iter().map(|s| split_doc(game, s)).collect(),
    }
}

fn split_doc(game: &CoverageGame, split: &SplitNode) -> SplitDoc {
    SplitDoc {
        at: game.graph.id(split.at).to_string(),
        parts: split
            .parts
            .iter()
            .map(|p| PartDoc {
                agents: p.agents,
                objectives: p.objectives.iter().collect(),
                child: tree_doc(game, &p.child),
            })
            .collect(),
    }
}

pub fn strategy_tree_to_json(game: &CoverageGame, tree: &CoveringStrategyTree) -> String {
    serde_json::to_string_pretty(&tree_doc(game, tree)).unwrap()
}

fn tree_from_doc(game: &CoverageGame, doc: &TreeDoc) -> Result<CoveringStrategyTree, ParseError> {
    let graph = &game.graph;
    Ok(match doc {
        TreeDoc::Leaf { region, strategy, escape } => {
            let mut set = VertexSet::empty(graph.len());
            for id in region {
                set.insert(
                    graph.index_of(id).ok_or_else(|| ParseError::UnknownVertex(id.clone()))?,
                );
            }
            let strategy = match strategy {
                LeafStrategyDoc::Rotation { witnesses } => LeafStrategy::Rotation(
                    witnesses
                        .iter()
                        .map(|m| strategy_from_map(graph, Player::Coverer, m))
                        .collect::<Result<_, _>>()?,
                ),
                LeafStrategyDoc::Avoidance { moves } => {
                    LeafStrategy::Avoidance(strategy_from_map(graph, Player::Coverer, moves)?)
                }
            };
            let escape = match escape {
                Some(m) => Some(Box::new(march_from_doc(game, m)?)),
                None => None,
            };
            CoveringStrategyTree::Leaf(LeafNode { region: set, strategy, escape })
        }
        TreeDoc::March(m) => CoveringStrategyTree::March(march_from_doc(game, m)?),
        TreeDoc::Split(s) => CoveringStrategyTree::Split(split_from_doc(game, s)?),
    })
}

fn march_from_doc(game: &CoverageGame, doc: &MarchDoc) -> Result<MarchNode, ParseError> {
    Ok(MarchNode {
        attractor: strategy_from_map(&game.graph, Player::Coverer, &doc.attractor)?,
        splits: doc
            .splits
            .iter()
            .map(|s| split_from_doc(game, s))
            .collect::<Result<_, _>>()?,
    })
}

fn split_from_doc(game: &CoverageGame, doc: &SplitDoc) -> Result<SplitNode, ParseError> {
    let at = game
        .graph
        .index_of(&doc.at)
        .ok_or_else(|| ParseError::UnknownVertex(doc.at.clone()))?;
    let m = game.objective_count();
    let mut parts = Vec::with_capacity(doc.parts.len());
    for p in &doc.parts {
        let mut mask = ObjectiveIndexSet::empty(m);
        for &i in &p.objectives {
            if i >= m {
                return Err(ParseError::Tree(format!("objective index {i} out of range")));
            }
            mask.insert(i);
        }
        parts.push(SplitPart {
            agents: p.agents,
            objectives: mask,
            child: tree_from_doc(game, &p.child)?,
        });
    }
    Ok(SplitNode { at, parts })
}

pub fn strategy_tree_from_json(
    game: &CoverageGame,
    text: &str,
) -> Result<CoveringStrategyTree, ParseError> {
    let doc: TreeDoc = serde_json::from_str(text)?;
    tree_from_doc(game, &doc)
}

// ---------------------------------------------------------------------------
// Formula and graph inputs
// ---------------------------------------------------------------------------

/// DIMACS CNF. Clauses with fewer than three literals are padded by
/// repetition; longer clauses are rejected (the constructions index exactly
/// three literal slots).
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, ParseError> {
    let (vars, _, clauses) = dimacs_body(text, false)?;
    Ok(CnfFormula::from_clauses(vars, &clauses)?)
}

/// QDIMACS subset: `p cnf` header, `a`/`e` quantifier lines covering every
/// variable, then clause lines. With `dnf_matrix` the clause lines are read
/// as conjunctive triples.
pub fn parse_qdimacs(text: &str, dnf_matrix: bool) -> Result<QbfFormula, ParseError> {
    let (vars, prefix, clauses) = dimacs_body(text, true)?;
    if prefix.len() != vars {
        return Err(ParseError::Formula(GeneratorError::PrefixMismatch));
    }
    let padded = CnfFormula::from_clauses(vars, &clauses)?;
    let matrix = if dnf_matrix {
        Matrix::Dnf(padded.clauses)
    } else {
        Matrix::Cnf(padded.clauses)
    };
    Ok(QbfFormula::new(prefix, matrix)?)
}

type DimacsBody = (usize, Vec<(Quantifier, usize)>, Vec<Vec<i32>>);

fn dimacs_body(text: &str, allow_prefix: bool) -> Result<DimacsBody, ParseError> {
    let mut vars = None;
    let mut prefix = Vec::new();
    let mut clauses = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let fail = |reason: &str| ParseError::Dimacs { line: ln + 1, reason: reason.to_string() };
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p ") {
            let mut parts = rest.split_whitespace();
            if parts.next() != Some("cnf") {
                return Err(fail("expected header `p cnf <vars> <clauses>`"));
            }
            let v = parts
                .next()
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| fail("bad variable count"))?;
            vars = Some(v);
            continue;
        }
        if vars.is_none() {
            return Err(fail("header `p cnf` must come first"));
        }
        if line.starts_with('a') || line.starts_with('e') {
            if !allow_prefix {
                return Err(fail("quantifier lines are not allowed in plain CNF input"));
            }
            if !clauses.is_empty() {
                return Err(fail("quantifier lines must precede the clauses"));
            }
            let q = if line.starts_with('a') { Quantifier::ForAll } else { Quantifier::Exists };
            for tok in line[1..].split_whitespace() {
                let n: i64 = tok.parse().map_err(|_| fail("bad quantifier literal"))?;
                if n == 0 {
                    break;
                }
                if n < 0 {
                    return Err(fail("quantifier lines list plain variables"));
                }
                prefix.push((q, n as usize));
            }
            continue;
        }
        let mut clause = Vec::new();
        for tok in line.split_whitespace() {
            let n: i32 = tok.parse().map_err(|_| fail("bad literal"))?;
            if n == 0 {
                break;
            }
            clause.push(n);
        }
        if clause.len() > 3 {
            return Err(fail("clauses are capped at three literals"));
        }
        if !clause.is_empty() {
            clauses.push(clause);
        }
    }
    let vars = vars.ok_or(ParseError::Dimacs {
        line: 0,
        reason: "missing `p cnf` header".to_string(),
    })?;
    Ok((vars, prefix, clauses))
}

/// Undirected graph input for the vertex-cover generator:
/// `{"vertices": n, "edges": [[a, b], ...]}` with 0-based endpoints.
pub fn parse_undirected_graph(text: &str) -> Result<UndirectedGraph, ParseError> {
    #[derive(Deserialize)]
    struct GraphDoc {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    }
    let doc: GraphDoc = serde_json::from_str(text)?;
    Ok(UndirectedGraph::new(doc.vertices, doc.edges)?)
}
