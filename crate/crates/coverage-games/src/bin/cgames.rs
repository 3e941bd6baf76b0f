//! Command-line front end: parse games, run the solvers, emit verdicts,
//! witnesses and DOT, and generate labeled reduction instances.
//!
//! Exit codes: 0 decided/verified, 2 parse or validation error, 3 enumeration
//! budget exceeded, 4 cross-check disagreement, 5 strategy refuted. Stdout
//! carries a single JSON document; everything else goes to stderr.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use coverage_games::coverage::{
    solve_coverage, verify_covering_strategy, CoverageSolver, VerifyOutcome,
};
use coverage_games::disruption::{
    solve_disruption_fixed_beta, solve_disruption_report, DisruptionConfig, DisruptionError,
};
use coverage_games::game::{validate, CoverageGame, ObjectiveKind, Player};
use coverage_games::io;
use coverage_games::reductions::{
    self, from_2qbf_disruption, from_3sat, from_qbf, from_vertex_cover, qbf_brute, sat_brute,
    vertex_cover_brute, SatTarget, TwoQbfTarget,
};
use coverage_games::solvers::{solve_all_buchi, solve_all_cobuchi, solve_buchi, solve_cobuchi};

#[derive(Parser)]
#[command(name = "cgames", version, about = "Coverage game solver and instance generator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide coverage or disruption for a game file.
    Solve(SolveArgs),
    /// Report decomposition points, the avoid sub-graph, SCCs, and the
    /// per-vertex coverage winning set.
    Analyze(AnalyzeArgs),
    /// Generate a fixture or reduction instance.
    Generate(GenerateArgs),
    /// Check a covering strategy file against a game.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Game JSON file.
    file: PathBuf,
    #[arg(long, value_enum)]
    problem: Problem,
    /// Write the covering strategy tree or disruption witness here.
    #[arg(long)]
    strategy_out: Option<PathBuf>,
    /// Re-decide with the independent second algorithm and fail loudly on
    /// disagreement.
    #[arg(long)]
    cross_check: bool,
    /// Worker threads for enumeration scans.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Cap on enumerated candidates (memoryless strategies / fairness work).
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Problem {
    Coverage,
    Disruption,
}

#[derive(Args)]
struct AnalyzeArgs {
    file: PathBuf,
    /// Also write the game as GraphViz DOT.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(subcommand)]
    kind: GenerateKind,
}

#[derive(Args)]
struct GenerateCommon {
    /// Output game JSON file.
    #[arg(long)]
    out: PathBuf,
    /// Also write the game as GraphViz DOT.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenerateKind {
    /// The two-agent, three-objective game that neither player wins.
    Undetermined {
        #[arg(long, value_enum, default_value_t = Kind::Buchi)]
        kind: Kind,
        #[command(flatten)]
        common: GenerateCommon,
    },
    /// Coverer wins with k agents but the objectives admit no a-priori split.
    Nondecomp {
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = Kind::Buchi)]
        kind: Kind,
        #[command(flatten)]
        common: GenerateCommon,
    },
    /// Vertex-cover reduction over an undirected graph file.
    Vc {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = Kind::Buchi)]
        kind: Kind,
        /// Print the brute-force oracle label.
        #[arg(long)]
        label: bool,
        #[command(flatten)]
        common: GenerateCommon,
    },
    /// 3SAT reduction over a DIMACS CNF file.
    Sat3 {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long, value_enum)]
        target: SatTargetArg,
        #[arg(long)]
        label: bool,
        #[command(flatten)]
        common: GenerateCommon,
    },
    /// QBF coverage reduction over a QDIMACS file.
    Qbf {
        #[arg(long)]
        qbf: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Buchi)]
        kind: Kind,
        #[arg(long)]
        label: bool,
        #[command(flatten)]
        common: GenerateCommon,
    },
    /// 2QBF disruption reduction over a QDIMACS file with a DNF matrix.
    Qbf2 {
        #[arg(long)]
        qbf: PathBuf,
        #[arg(long, value_enum)]
        target: TwoQbfTargetArg,
        #[arg(long)]
        label: bool,
        #[command(flatten)]
        common: GenerateCommon,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Kind {
    Buchi,
    Cobuchi,
}

impl From<Kind> for ObjectiveKind {
    fn from(k: Kind) -> ObjectiveKind {
        match k {
            Kind::Buchi => ObjectiveKind::Buchi,
            Kind::Cobuchi => ObjectiveKind::CoBuchi,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum SatTargetArg {
    /// One-player co-Büchi coverage.
    Oneplayer,
    /// Two-agent Büchi coverage.
    Cover2,
    /// Two-agent Büchi disruption.
    Disrupt2,
}

#[derive(Copy, Clone, ValueEnum)]
enum TwoQbfTargetArg {
    GeneralBuchi,
    GeneralCobuchi,
    TwoAgent,
}

#[derive(Args)]
struct VerifyArgs {
    /// Game JSON file.
    file: PathBuf,
    /// Strategy tree JSON file.
    #[arg(long)]
    strategy: PathBuf,
}

#[derive(Serialize)]
struct Verdict {
    problem: &'static str,
    answer: bool,
    #[serde(rename = "witnessPath", skip_serializing_if = "Option::is_none")]
    witness_path: Option<String>,
    stats: Stats,
}

#[derive(Serialize)]
struct Stats {
    #[serde(rename = "subproblemsSolved")]
    subproblems_solved: usize,
    #[serde(rename = "candidatesEnumerated")]
    candidates_enumerated: u64,
    #[serde(rename = "elapsedMillis")]
    elapsed_millis: u128,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Generate(args) => cmd_generate(args.kind),
        Command::Verify(args) => cmd_verify(args),
    };
    ExitCode::from(code)
}

fn fail(code: u8, message: impl std::fmt::Display) -> u8 {
    eprintln!("error: {message}");
    code
}

fn load_game(path: &PathBuf) -> Result<CoverageGame, u8> {
    let text = fs::read_to_string(path)
        .map_err(|e| fail(2, format!("cannot read {}: {e}", path.display())))?;
    let game = io::parse_game(&text).map_err(|e| fail(2, e))?;
    let violations = validate(&game);
    if !violations.is_empty() {
        for v in &violations {
            eprintln!("invalid game: {v}");
        }
        return Err(2);
    }
    Ok(game)
}

fn cmd_solve(args: SolveArgs) -> u8 {
    let game = match load_game(&args.file) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let mut config = DisruptionConfig { jobs: args.jobs.max(1), ..Default::default() };
    if let Some(b) = args.budget {
        config.memoryless_budget = b;
        config.fairness_budget = b;
    }
    let started = Instant::now();
    match args.problem {
        Problem::Coverage => {
            let mut solver = CoverageSolver::new(&game);
            let answer = solver.covered();
            if args.cross_check {
                if let Err(msg) = coverage_cross_check(&game, answer) {
                    return fail(4, msg);
                }
            }
            let mut witness_path = None;
            if answer {
                if let Some(out) = &args.strategy_out {
                    let (_, tree) = solve_coverage(&game);
                    let tree = tree.expect("winning game synthesizes a tree");
                    let text = io::strategy_tree_to_json(&game, &tree);
                    if let Err(e) = fs::write(out, text) {
                        return fail(2, format!("cannot write {}: {e}", out.display()));
                    }
                    witness_path = Some(out.display().to_string());
                }
            }
            let verdict = Verdict {
                problem: "coverage",
                answer,
                witness_path,
                stats: Stats {
                    subproblems_solved: solver.subproblems_solved(),
                    candidates_enumerated: 0,
                    elapsed_millis: started.elapsed().as_millis(),
                },
            };
            println!("{}", serde_json::to_string_pretty(&verdict).unwrap());
            0
        }
        Problem::Disruption => {
            let report = match solve_disruption_report(&game, &config) {
                Ok(r) => r,
                Err(e @ DisruptionError::BudgetExceeded { .. }) => return fail(3, e),
                Err(e) => return fail(2, e),
            };
            if args.cross_check {
                if game.objective_count() <= 5 {
                    let second = solve_disruption_fixed_beta(&game);
                    if second != report.disrupting {
                        return fail(
                            4,
                            format!(
                                "disruption cross-check disagreement: enumeration says {}, Δ-iteration says {second}",
                                report.disrupting
                            ),
                        );
                    }
                } else {
                    eprintln!(
                        "cross-check skipped: Δ-iteration needs few objectives, game has {}",
                        game.objective_count()
                    );
                }
            }
            let mut witness_path = None;
            if let (true, Some(w), Some(out)) =
                (report.disrupting, &report.witness, &args.strategy_out)
            {
                let text = io::witness_to_json(&game.graph, w);
                if let Err(e) = fs::write(out, text) {
                    return fail(2, format!("cannot write {}: {e}", out.display()));
                }
                witness_path = Some(out.display().to_string());
            }
            let verdict = Verdict {
                problem: "disruption",
                answer: report.disrupting,
                witness_path,
                stats: Stats {
                    subproblems_solved: 0,
                    candidates_enumerated: report.candidates,
                    elapsed_millis: started.elapsed().as_millis(),
                },
            };
            println!("{}", serde_json::to_string_pretty(&verdict).unwrap());
            0
        }
    }
}

/// Re-derive the coverage verdict along independent routes: the per-vertex
/// winning table at the initial vertex, and the closed-form reductions for
/// one agent and for at least as many agents as objectives.
fn coverage_cross_check(game: &CoverageGame, answer: bool) -> Result<(), String> {
    let graph = &game.graph;
    let v0 = graph.initial();
    let table = coverage_games::coverage::winning_coverage_set(game);
    if table.contains(v0) != answer {
        return Err("per-vertex winning table disagrees with the solver".into());
    }
    let sets: Vec<_> = game.objectives.iter().map(|o| o.vertices.clone()).collect();
    if game.agents == 1 {
        let direct = match game.kind {
            ObjectiveKind::Buchi => solve_all_buchi(graph, &sets, Player::Coverer).winning,
            ObjectiveKind::CoBuchi => solve_all_cobuchi(graph, &sets, Player::Coverer).winning,
        };
        if direct.contains(v0) != answer {
            return Err("single-agent All-game reduction disagrees".into());
        }
    }
    if game.agents as usize >= game.objective_count() {
        let direct = sets.iter().all(|alpha| {
            let win = match game.kind {
                ObjectiveKind::Buchi => solve_buchi(graph, alpha, Player::Coverer).winning,
                ObjectiveKind::CoBuchi => solve_cobuchi(graph, alpha, Player::Coverer).winning,
            };
            win.contains(v0)
        });
        if direct != answer {
            return Err("per-objective two-player reduction disagrees".into());
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct AnalyzeReport {
    decomposable: Vec<String>,
    v_avoid: Vec<String>,
    g_avoid: AvoidGraph,
    sccs: Vec<SccDoc>,
    winning: Vec<String>,
}

#[derive(Serialize)]
struct AvoidGraph {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

#[derive(Serialize)]
struct SccDoc {
    vertices: Vec<String>,
    trivial: bool,
}

fn cmd_analyze(args: AnalyzeArgs) -> u8 {
    let game = match load_game(&args.file) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let graph = &game.graph;
    let ids = |set: &coverage_games::VertexSet| -> Vec<String> {
        set.iter().map(|v| graph.id(v).to_string()).collect()
    };
    let mut solver = CoverageSolver::new(&game);
    let analysis = solver.top_analysis();
    let winning = solver.winning_set(game.agents, game.all_objectives());
    let avoid_edges = analysis
        .avoid
        .iter()
        .flat_map(|v| {
            graph
                .successors(v)
                .iter()
                .filter(|&&w| analysis.avoid.contains(w))
                .map(move |&w| (graph.id(v).to_string(), graph.id(w).to_string()))
        })
        .collect();
    let report = AnalyzeReport {
        decomposable: ids(&analysis.decomposable),
        v_avoid: ids(&analysis.avoid),
        g_avoid: AvoidGraph { vertices: ids(&analysis.avoid), edges: avoid_edges },
        sccs: graph
            .scc_decomposition()
            .into_iter()
            .map(|(set, trivial)| SccDoc { vertices: ids(&set), trivial })
            .collect(),
        winning: ids(&winning),
    };
    if let Some(dot) = &args.dot {
        if let Err(e) = fs::write(dot, io::game_to_dot(&game)) {
            return fail(2, format!("cannot write {}: {e}", dot.display()));
        }
    }
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    0
}

fn cmd_generate(kind: GenerateKind) -> u8 {
    let (game, label, common): (CoverageGame, Option<bool>, &GenerateCommon) = match &kind {
        GenerateKind::Undetermined { kind, common } => {
            (reductions::fixture_undetermined((*kind).into()), None, common)
        }
        GenerateKind::Nondecomp { k, kind, common } => {
            match reductions::fixture_nondecomposable(*k, (*kind).into()) {
                Ok(g) => (g, None, common),
                Err(e) => return fail(2, e),
            }
        }
        GenerateKind::Vc { graph, k, kind, label, common } => {
            let text = match fs::read_to_string(graph) {
                Ok(t) => t,
                Err(e) => return fail(2, format!("cannot read {}: {e}", graph.display())),
            };
            let input = match io::parse_undirected_graph(&text) {
                Ok(g) => g,
                Err(e) => return fail(2, e),
            };
            let game = match from_vertex_cover(&input, *k, (*kind).into()) {
                Ok(g) => g,
                Err(e) => return fail(2, e),
            };
            let oracle = label.then(|| vertex_cover_brute(&input, *k));
            (game, oracle, common)
        }
        GenerateKind::Sat3 { cnf, target, label, common } => {
            let text = match fs::read_to_string(cnf) {
                Ok(t) => t,
                Err(e) => return fail(2, format!("cannot read {}: {e}", cnf.display())),
            };
            let formula = match io::parse_dimacs(&text) {
                Ok(f) => f,
                Err(e) => return fail(2, e),
            };
            let target = match target {
                SatTargetArg::Oneplayer => SatTarget::OnePlayerCoBuchi,
                SatTargetArg::Cover2 => SatTarget::TwoAgentBuchiCoverage,
                SatTargetArg::Disrupt2 => SatTarget::TwoAgentBuchiDisruption,
            };
            let game = match from_3sat(&formula, target) {
                Ok(g) => g,
                Err(e) => return fail(2, e),
            };
            let oracle = label.then(|| sat_brute(&formula));
            (game, oracle, common)
        }
        GenerateKind::Qbf { qbf, kind, label, common } => {
            let text = match fs::read_to_string(qbf) {
                Ok(t) => t,
                Err(e) => return fail(2, format!("cannot read {}: {e}", qbf.display())),
            };
            let formula = match io::parse_qdimacs(&text, false) {
                Ok(f) => f,
                Err(e) => return fail(2, e),
            };
            let game = match from_qbf(&formula, (*kind).into()) {
                Ok(g) => g,
                Err(e) => return fail(2, e),
            };
            let oracle = label.then(|| qbf_brute(&formula));
            (game, oracle, common)
        }
        GenerateKind::Qbf2 { qbf, target, label, common } => {
            let text = match fs::read_to_string(qbf) {
                Ok(t) => t,
                Err(e) => return fail(2, format!("cannot read {}: {e}", qbf.display())),
            };
            let formula = match io::parse_qdimacs(&text, true) {
                Ok(f) => f,
                Err(e) => return fail(2, e),
            };
            let target = match target {
                TwoQbfTargetArg::GeneralBuchi => TwoQbfTarget::General(ObjectiveKind::Buchi),
                TwoQbfTargetArg::GeneralCobuchi => TwoQbfTarget::General(ObjectiveKind::CoBuchi),
                TwoQbfTargetArg::TwoAgent => TwoQbfTarget::CoBuchiTwoAgent,
            };
            let game = match from_2qbf_disruption(&formula, target) {
                Ok(g) => g,
                Err(e) => return fail(2, e),
            };
            let oracle = label.then(|| qbf_brute(&formula));
            (game, oracle, common)
        }
    };
    if let Err(e) = fs::write(&common.out, io::game_to_json(&game)) {
        return fail(2, format!("cannot write {}: {e}", common.out.display()));
    }
    if let Some(dot) = &common.dot {
        if let Err(e) = fs::write(dot, io::game_to_dot(&game)) {
            return fail(2, format!("cannot write {}: {e}", dot.display()));
        }
    }
    if let Some(oracle) = label {
        println!("{}", serde_json::json!({ "oracle": oracle }));
    }
    0
}

fn cmd_verify(args: VerifyArgs) -> u8 {
    let game = match load_game(&args.file) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let text = match fs::read_to_string(&args.strategy) {
        Ok(t) => t,
        Err(e) => return fail(2, format!("cannot read {}: {e}", args.strategy.display())),
    };
    let tree = match io::strategy_tree_from_json(&game, &text) {
        Ok(t) => t,
        Err(e) => return fail(2, e),
    };
    match verify_covering_strategy(&game, &tree) {
        Err(structural) => fail(2, structural),
        Ok(VerifyOutcome::Verified) => {
            println!("{}", serde_json::json!({ "verified": true }));
            0
        }
        Ok(VerifyOutcome::Refuted { path, reason }) => {
            eprintln!("refuted at {path}: {reason}");
            println!(
                "{}",
                serde_json::json!({ "verified": false, "path": path, "reason": reason })
            );
            5
        }
    }
}
