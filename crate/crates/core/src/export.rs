//! Name-based views of results for JSON, DOT and plain-text output.
//!
//! Struct fields serialize in declaration order and maps are sorted by key,
//! so identical inputs always give byte-identical output. Cliques are
//! written as their sorted member names joined by commas.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::clique::CliqueTree;
use crate::gadget::ReductionReport;
use crate::graph::{Chordality, CliqueGraph, Graph};
use crate::model::{leaf_report, TreeModel};
use crate::oracle::{OracleResult, Scored};
use crate::tokens::{LeafageRun, TokenMove};
use crate::vertex_leafage::{SimultaneousOptimum, VlCertificate};

pub type NamedEdge = [String; 2];

fn clique_label(g: &Graph, cg: &CliqueGraph, c: usize) -> String {
    g.set_label(cg.clique(c))
}

pub fn tree_edges(g: &Graph, cg: &CliqueGraph, t: &CliqueTree) -> Vec<NamedEdge> {
    let mut edges: Vec<NamedEdge> = t
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (clique_label(g, cg, a), clique_label(g, cg, b));
            if x <= y {
                [x, y]
            } else {
                [y, x]
            }
        })
        .collect();
    edges.sort();
    edges
}

fn named_counts(g: &Graph, counts: &[usize]) -> BTreeMap<String, usize> {
    counts
        .iter()
        .enumerate()
        .map(|(v, &k)| (g.name(v).to_string(), k))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub chordal: bool,
    /// Perfect elimination order, when chordal.
    pub peo: Option<Vec<String>>,
    /// Chordless cycle, when not.
    pub cycle: Option<Vec<String>>,
    pub maximal_cliques: Vec<String>,
}

pub fn check_report(g: &Graph, c: &Chordality) -> CheckReport {
    let names = |vs: &[usize]| {
        vs.iter()
            .map(|&v| g.name(v).to_string())
            .collect::<Vec<_>>()
    };
    match c {
        Chordality::Chordal(peo) => {
            let cliques = crate::graph::maximal_cliques(g, peo).unwrap_or_default();
            let mut labels: Vec<String> = cliques.iter().map(|q| g.set_label(&q.members)).collect();
            labels.sort();
            CheckReport {
                chordal: true,
                peo: Some(names(peo.order())),
                cycle: None,
                maximal_cliques: labels,
            }
        }
        Chordality::NotChordal(cycle) => CheckReport {
            chordal: false,
            peo: None,
            cycle: Some(names(cycle)),
            maximal_cliques: Vec::new(),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveView {
    pub from: String,
    pub to: String,
    pub token: String,
}

fn move_view(g: &Graph, cg: &CliqueGraph, mv: &TokenMove) -> MoveView {
    MoveView {
        from: clique_label(g, cg, mv.from),
        to: clique_label(g, cg, mv.to),
        token: g.set_label(&mv.token),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IterationView {
    pub leaves_before: usize,
    pub leaves_after: usize,
    pub path: Vec<MoveView>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeafageReportView {
    pub leafage: usize,
    pub tree_edges: Vec<NamedEdge>,
    pub iterations: Vec<IterationView>,
}

pub fn leafage_view(g: &Graph, cg: &CliqueGraph, run: &LeafageRun) -> LeafageReportView {
    LeafageReportView {
        leafage: run.leafage(),
        tree_edges: tree_edges(g, cg, &run.tree),
        iterations: run
            .iterations
            .iter()
            .map(|it| IterationView {
                leaves_before: it.leaves_before,
                leaves_after: it.leaves_after,
                path: it
                    .path
                    .moves
                    .iter()
                    .map(|mv| move_view(g, cg, mv))
                    .collect(),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateView {
    pub leafage: usize,
    pub vertex_leafage: usize,
    pub tree_edges: Vec<NamedEdge>,
    pub per_vertex_leaves: BTreeMap<String, usize>,
    pub branch_edge_set: Vec<NamedEdge>,
}

pub fn certificate_view(g: &Graph, cg: &CliqueGraph, cert: &VlCertificate) -> CertificateView {
    CertificateView {
        leafage: cert.leafage,
        vertex_leafage: cert.vertex_leafage,
        tree_edges: tree_edges(g, cg, &cert.tree),
        per_vertex_leaves: named_counts(g, &cert.per_vertex_leaves),
        branch_edge_set: tree_edges(
            g,
            cg,
            &CliqueTree::new(cg.len(), cert.branch_edge_set.edges().iter().copied()),
        ),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeafReportView {
    pub host_leaves: usize,
    pub per_vertex_leaves: BTreeMap<String, usize>,
    pub max_vertex_leaves: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelView {
    /// Host node `i` is `host_nodes[i]`, labelled by the vertices it carries.
    pub host_nodes: Vec<String>,
    pub host_edges: Vec<(usize, usize)>,
    pub subtrees: BTreeMap<String, Vec<usize>>,
    pub leaf_report: LeafReportView,
}

pub fn model_view(g: &Graph, m: &TreeModel) -> ModelView {
    let report = leaf_report(m);
    ModelView {
        host_nodes: m.node_bags().iter().map(|b| g.set_label(b)).collect(),
        host_edges: m.host_edges().to_vec(),
        subtrees: m
            .subtrees()
            .iter()
            .enumerate()
            .map(|(v, s)| (g.name(v).to_string(), s.iter().copied().collect()))
            .collect(),
        leaf_report: LeafReportView {
            host_leaves: report.host_leaves,
            per_vertex_leaves: named_counts(g, &report.per_vertex_leaves),
            max_vertex_leaves: report.max_vertex_leaves,
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptimumView {
    pub leafage: usize,
    pub vertex_leafage: usize,
    pub tree_edges: Vec<NamedEdge>,
    pub model: ModelView,
}

pub fn optimum_view(g: &Graph, cg: &CliqueGraph, opt: &SimultaneousOptimum) -> OptimumView {
    OptimumView {
        leafage: opt.leafage,
        vertex_leafage: opt.vertex_leafage,
        tree_edges: tree_edges(g, cg, &opt.tree),
        model: model_view(g, &opt.model),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScoredView {
    pub host_leaves: usize,
    pub max_vertex_leaves: usize,
    pub tree_edges: Vec<NamedEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleView {
    pub leafage: usize,
    pub vertex_leafage: usize,
    pub tree_count: usize,
    pub leafage_witness: ScoredView,
    pub vertex_leafage_witness: ScoredView,
    pub joint_witness: ScoredView,
}

pub fn oracle_view(g: &Graph, cg: &CliqueGraph, r: &OracleResult) -> OracleView {
    let scored = |s: &Scored| ScoredView {
        host_leaves: s.host_leaves,
        max_vertex_leaves: s.max_vertex_leaves,
        tree_edges: tree_edges(g, cg, &s.tree),
    };
    OracleView {
        leafage: r.leafage,
        vertex_leafage: r.vertex_leafage,
        tree_count: r.tree_count,
        leafage_witness: scored(&r.leafage_witness),
        vertex_leafage_witness: scored(&r.vertex_leafage_witness),
        joint_witness: scored(&r.joint_witness),
    }
}

/// Report plus its overall verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionView<'a> {
    pub holds: bool,
    #[serde(flatten)]
    pub report: &'a ReductionReport,
}

pub fn reduction_view(r: &ReductionReport) -> ReductionView<'_> {
    ReductionView {
        holds: r.holds(),
        report: r,
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("views serialize");
    s.push('\n');
    s
}

/// Host tree of a model in DOT; node labels are the sorted members of the
/// clique each node carries.
pub fn model_dot(g: &Graph, m: &TreeModel) -> String {
    let mut out = String::from("graph model {\n");
    for (i, bag) in m.node_bags().iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", g.set_label(bag));
    }
    for &(a, b) in m.host_edges() {
        let _ = writeln!(out, "  n{a} -- n{b};");
    }
    out.push_str("}\n");
    out
}

pub fn model_text(g: &Graph, m: &TreeModel) -> String {
    let view = model_view(g, m);
    let mut out = String::new();
    let _ = writeln!(out, "host nodes: {}", view.host_nodes.len());
    for (i, label) in view.host_nodes.iter().enumerate() {
        let _ = writeln!(out, "  {i}: {label}");
    }
    let _ = writeln!(out, "host edges:");
    for (a, b) in &view.host_edges {
        let _ = writeln!(out, "  {a} -- {b}");
    }
    let _ = writeln!(out, "host leaves: {}", view.leaf_report.host_leaves);
    let _ = writeln!(
        out,
        "max vertex leaves: {}",
        view.leaf_report.max_vertex_leaves
    );
    for (v, k) in &view.leaf_report.per_vertex_leaves {
        let _ = writeln!(out, "  {v}: {k}");
    }
    out
}
