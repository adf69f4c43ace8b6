//! `leafage` command-line tool.
//!
//! Exit codes: 0 success, 1 negative answer (not chordal, no certificate
//! within the bound, reduction check failed), 2 usage, I/O or input error,
//! 3 oracle enumeration limit exceeded.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use leafage::export::{self, to_json};
use leafage::gadget::{self, build_gadget_unchecked};
use leafage::oracle::{self, OracleError};
use leafage::{
    build_gadget, check_chordal, epsilon_of_tree, example, is_realizable, minimize_leafage,
    model_from_clique_tree, parse_clauses, parse_graph, shortest_augmenting_path,
    simultaneous_optimum, vertex_leafage_bounded, BacktrackingRealizer, BudgetMode, CliqueGraph,
    GadgetError, Graph, GraphError, VlError,
};

#[derive(Parser)]
#[command(
    name = "leafage",
    version,
    about = "Leafage and vertex leafage of chordal graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chordality test: a perfect elimination order or a chordless cycle.
    Check {
        /// Edge-list file, or `-` for stdin.
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Minimum-leaf clique tree with the augmentation trace.
    Leafage {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Vertex leafage with a certificate clique tree.
    VertexLeafage {
        graph: PathBuf,
        /// Leaf bound on the clique trees searched; defaults to the leafage.
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long, value_enum, default_value_t = Budget::Safe)]
        budget_mode: Budget,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Tree model optimal for leafage and vertex leafage at once.
    Model {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// NAE-SAT reduction gadget.
    Gadget {
        #[command(subcommand)]
        action: GadgetAction,
    },
    /// Exhaustive leafage and vertex leafage over all clique trees.
    Oracle {
        graph: PathBuf,
        /// Enumeration cap; defaults to LEAFAGE_ORACLE_LIMIT or 1000000.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Replays the built-in worked example with a trace.
    ReproFigure1,
    /// Random connected chordal graph in edge-list format.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GadgetAction {
    /// Prints the split graph of a clause file as an edge list.
    Build {
        clauses: PathBuf,
        /// Skip the domination check.
        #[arg(long)]
        unchecked: bool,
    },
    /// Checks the reduction on one instance against brute force.
    Verify {
        clauses: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Budget {
    Paper,
    Safe,
}

impl From<Budget> for BudgetMode {
    fn from(b: Budget) -> Self {
        match b {
            Budget::Paper => BudgetMode::Paper,
            Budget::Safe => BudgetMode::Safe,
        }
    }
}

/// A finished run: text for stdout and the exit code.
struct Output {
    stdout: String,
    code: u8,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, code: 0 }
    }

    fn negative(stdout: String) -> Self {
        Output { stdout, code: 1 }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::input(e)
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = if matches!(e, OracleError::LimitExceeded { .. }) {
            3
        } else {
            2
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<GadgetError> for Failure {
    fn from(e: GadgetError) -> Self {
        match e {
            GadgetError::Oracle(o) => o.into(),
            other => Failure::input(other),
        }
    }
}

impl From<VlError> for Failure {
    fn from(e: VlError) -> Self {
        Failure::input(e)
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
    }
}

fn read_graph(path: &PathBuf) -> Result<Graph, Failure> {
    parse_graph(&read_input(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn unsupported(format: Format, command: &str) -> Failure {
    let name = match format {
        Format::Json => "json",
        Format::Dot => "dot",
        Format::Text => "text",
    };
    Failure::input(format!("`{command}` has no {name} output"))
}

fn names(vs: &[String]) -> String {
    vs.join(" ")
}

fn cmd_check(path: &PathBuf, format: Format) -> Result<Output, Failure> {
    let g = read_graph(path)?;
    let report = export::check_report(&g, &check_chordal(&g));
    let stdout = match format {
        Format::Json => to_json(&report),
        Format::Text => match (&report.peo, &report.cycle) {
            (Some(peo), _) => format!(
                "chordal\nperfect elimination order: {}\nmaximal cliques: {}\n",
                names(peo),
                report
                    .maximal_cliques
                    .iter()
                    .map(|c| format!("{{{c}}}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
            (_, Some(cycle)) => format!("not chordal\nchordless cycle: {}\n", names(cycle)),
            _ => unreachable!("report has an order or a cycle"),
        },
        Format::Dot => return Err(unsupported(format, "check")),
    };
    Ok(if report.chordal {
        Output::ok(stdout)
    } else {
        Output::negative(stdout)
    })
}

fn cmd_leafage(path: &PathBuf, format: Format) -> Result<Output, Failure> {
    let g = read_graph(path)?;
    let cg = CliqueGraph::from_graph(&g)?;
    let start = leafage::build_clique_tree(&cg).map_err(Failure::input)?;
    let run = minimize_leafage(&cg, &start).map_err(Failure::input)?;
    let view = export::leafage_view(&g, &cg, &run);
    match format {
        Format::Json => Ok(Output::ok(to_json(&view))),
        Format::Text => {
            let mut out = format!("leafage: {}\n", view.leafage);
            for (i, it) in view.iterations.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "iteration {}: {} -> {} leaves",
                    i + 1,
                    it.leaves_before,
                    it.leaves_after
                );
                for mv in &it.path {
                    let _ = writeln!(
                        out,
                        "  move {{{}}} from {{{}}} to {{{}}}",
                        mv.token, mv.from, mv.to
                    );
                }
            }
            out.push_str("tree edges:\n");
            for [a, b] in &view.tree_edges {
                let _ = writeln!(out, "  {{{a}}} -- {{{b}}}");
            }
            Ok(Output::ok(out))
        }
        Format::Dot => Ok(Output::ok(export::model_dot(
            &g,
            &model_from_clique_tree(&cg, &run.tree),
        ))),
    }
}

fn cmd_vertex_leafage(
    path: &PathBuf,
    ell: Option<usize>,
    budget: Budget,
    format: Format,
) -> Result<Output, Failure> {
    let g = read_graph(path)?;
    let cg = CliqueGraph::from_graph(&g)?;
    let cert = match vertex_leafage_bounded(&g, ell, budget.into()) {
        Ok(Some(cert)) => cert,
        Ok(None) => {
            return Ok(Output::negative(
                "no clique tree found within the branching-edge budget\n".into(),
            ))
        }
        Err(VlError::LeafageExceeds { leafage, ell }) => {
            return Ok(Output::negative(format!(
                "leafage {leafage} exceeds --ell {ell}\n"
            )))
        }
        Err(e) => return Err(e.into()),
    };
    let view = export::certificate_view(&g, &cg, &cert);
    match format {
        Format::Json => Ok(Output::ok(to_json(&view))),
        Format::Text => {
            let mut out = format!(
                "leafage: {}\nvertex leafage: {}\n",
                view.leafage, view.vertex_leafage
            );
            for (v, k) in &view.per_vertex_leaves {
                let _ = writeln!(out, "  {v}: {k}");
            }
            Ok(Output::ok(out))
        }
        Format::Dot => Ok(Output::ok(export::model_dot(
            &g,
            &model_from_clique_tree(&cg, &cert.tree),
        ))),
    }
}

fn cmd_model(path: &PathBuf, format: Format) -> Result<Output, Failure> {
    let g = read_graph(path)?;
    let cg = CliqueGraph::from_graph(&g)?;
    let opt = simultaneous_optimum(&g)?;
    Ok(Output::ok(match format {
        Format::Json => to_json(&export::optimum_view(&g, &cg, &opt)),
        Format::Dot => export::model_dot(&g, &opt.model),
        Format::Text => format!(
            "leafage: {}\nvertex leafage: {}\n{}",
            opt.leafage,
            opt.vertex_leafage,
            export::model_text(&g, &opt.model)
        ),
    }))
}

fn cmd_gadget(action: &GadgetAction) -> Result<Output, Failure> {
    match action {
        GadgetAction::Build { clauses, unchecked } => {
            let inst = parse_clauses(&read_input(clauses)?)?;
            let gg = if *unchecked {
                build_gadget_unchecked(&inst)?
            } else {
                build_gadget(&inst).map_err(|e| match e {
                    GadgetError::Dominated { .. } => {
                        Failure::input(format!("{e} (--unchecked builds it anyway)"))
                    }
                    other => other.into(),
                })?
            };
            let mut out = String::new();
            for (name, c) in gg.clique_names() {
                let _ = writeln!(
                    out,
                    "# {name} = {{{}}}",
                    gg.graph.set_label(gg.clique_graph.clique(c))
                );
            }
            out.push_str(&gg.graph.to_edge_list());
            Ok(Output::ok(out))
        }
        GadgetAction::Verify { clauses, limit } => {
            let inst = parse_clauses(&read_input(clauses)?)?;
            let report =
                gadget::verify_reduction(&inst, limit.unwrap_or_else(oracle::default_limit))?;
            let out = to_json(&export::reduction_view(&report));
            Ok(if report.holds() {
                Output::ok(out)
            } else {
                Output::negative(out)
            })
        }
    }
}

fn cmd_oracle(path: &PathBuf, limit: Option<usize>) -> Result<Output, Failure> {
    let g = read_graph(path)?;
    let cg = CliqueGraph::from_graph(&g)?;
    let r = oracle::oracle_optima_cg(&cg, limit.unwrap_or_else(oracle::default_limit))?;
    Ok(Output::ok(to_json(&export::oracle_view(&g, &cg, &r))))
}

fn cmd_repro() -> Result<Output, Failure> {
    let g = example::graph();
    let cg = CliqueGraph::from_graph(&g)?;
    let label = |c: usize| format!("{{{}}}", g.set_label(cg.clique(c)));
    let tokens_of = |ta: &leafage::TokenAssignment, c: usize| {
        ta.tokens(c)
            .iter()
            .map(|s| format!("{{{}}}", g.set_label(s)))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "graph: {} vertices, {} edges",
        g.vertex_count(),
        g.edge_count()
    );
    let _ = writeln!(out, "maximal cliques ({}):", cg.len());
    for c in 0..cg.len() {
        let _ = writeln!(out, "  {}", label(c));
    }

    let before = example::tree(&g, &cg, example::START_TREE);
    let eps = epsilon_of_tree(&cg, &before);
    let _ = writeln!(out, "starting clique tree: {} leaves", before.host_leaves());
    let _ = writeln!(out, "tokens:");
    for c in 0..cg.len() {
        let _ = writeln!(out, "  {}: {}", label(c), tokens_of(&eps, c));
    }
    let expected_tokens = example::tokens(&g, &cg, example::START_TOKENS);
    let _ = writeln!(
        out,
        "tokens match the reference assignment: {}",
        eps == expected_tokens
    );

    let reference = leafage::AugmentingPath {
        moves: example::AUGMENTING_PATH
            .iter()
            .map(|&(from, to, token)| {
                let id = |l: &str| {
                    g.parse_set(l)
                        .and_then(|s| cg.clique_id(&s))
                        .expect("example clique")
                };
                leafage::TokenMove {
                    from: id(from),
                    to: id(to),
                    token: g.parse_set(token).expect("example token"),
                }
            })
            .collect(),
    };
    let admissible = reference
        .is_admissible_for(&cg, &eps, &BacktrackingRealizer)
        .map_err(Failure::input)?;
    let _ = writeln!(out, "reference augmenting path:");
    for mv in &reference.moves {
        let _ = writeln!(
            out,
            "  move {{{}}} from {} to {}",
            g.set_label(&mv.token),
            label(mv.from),
            label(mv.to)
        );
    }
    let _ = writeln!(out, "  admissible: {admissible}");
    let after_eps = reference.apply(&eps).map_err(Failure::input)?;
    let after = is_realizable(&cg, &after_eps).map_err(Failure::input)?;
    let expected_after = example::tree(&g, &cg, example::AUGMENTED_TREE);
    let a = g.index_of("a").expect("vertex a");
    if let Some(t) = &after {
        let _ = writeln!(
            out,
            "  result: {} leaves, vertex a {} -> {} leaves, equals the reference tree: {}",
            t.host_leaves(),
            before.vertex_leaves(&cg, a),
            t.vertex_leaves(&cg, a),
            epsilon_of_tree(&cg, t) == epsilon_of_tree(&cg, &expected_after)
        );
    }

    let shortest = shortest_augmenting_path(&cg, &eps).map_err(Failure::input)?;
    let _ = writeln!(out, "shortest augmenting path:");
    if let Some(p) = &shortest {
        for mv in &p.moves {
            let _ = writeln!(
                out,
                "  move {{{}}} from {} to {}",
                g.set_label(&mv.token),
                label(mv.from),
                label(mv.to)
            );
        }
    }

    let run = minimize_leafage(&cg, &before).map_err(Failure::input)?;
    let _ = writeln!(out, "leaf minimization from the starting tree:");
    let mut per_vertex = before.per_vertex_leaves(&cg);
    let mut monotone = true;
    for (i, it) in run.iterations.iter().enumerate() {
        let next = it.tree.per_vertex_leaves(&cg);
        monotone &= next.iter().zip(&per_vertex).all(|(x, y)| x <= y);
        per_vertex = next;
        let _ = writeln!(
            out,
            "  iteration {}: {} -> {} leaves, path {}",
            i + 1,
            it.leaves_before,
            it.leaves_after,
            it.path
                .cliques()
                .into_iter()
                .map(label)
                .collect::<Vec<_>>()
                .join(" -> ")
        );
    }
    let _ = writeln!(out, "leafage: {}", run.leafage());
    let _ = writeln!(out, "no vertex subtree gained leaves: {monotone}");
    let _ = writeln!(out, "final tree edges:");
    for [x, y] in export::tree_edges(&g, &cg, &run.tree) {
        let _ = writeln!(out, "  {{{x}}} -- {{{y}}}");
    }
    Ok(Output::ok(out))
}

fn cmd_generate(n: usize, density: f64, seed: u64) -> Result<Output, Failure> {
    if n == 0 {
        return Err(Failure::input("--n must be at least 1"));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Failure::input("--density must lie in [0, 1]"));
    }
    Ok(Output::ok(
        oracle::random_chordal(n, density, seed).to_edge_list(),
    ))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Check { graph, format } => cmd_check(graph, *format),
        Command::Leafage { graph, format } => cmd_leafage(graph, *format),
        Command::VertexLeafage {
            graph,
            ell,
            budget_mode,
            format,
        } => cmd_vertex_leafage(graph, *ell, *budget_mode, *format),
        Command::Model { graph, format } => cmd_model(graph, *format),
        Command::Gadget { action } => cmd_gadget(action),
        Command::Oracle { graph, limit } => cmd_oracle(graph, *limit),
        Command::ReproFigure1 => cmd_repro(),
        Command::Generate { n, density, seed } => cmd_generate(*n, *density, *seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            let _ = io::stdout().write_all(out.stdout.as_bytes());
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
