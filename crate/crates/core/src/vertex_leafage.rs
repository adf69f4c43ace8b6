//! Vertex leafage for graphs of bounded leafage.
//!
//! A clique tree's per-vertex subtree leaf counts depend only on its
//! branching edge set `Ee(T)` (the edges touching nodes of degree at least
//! three). The search enumerates candidate sets `F`, asks
//! [`clique_tree_with_branching`] for a clique tree with exactly that
//! branching set and keeps the best one.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::clique::{self, CliqueError, CliqueTree};
use crate::graph::{CliqueGraph, Graph, GraphError};
use crate::model::{model_from_clique_tree, TreeModel};
use crate::tokens::{self, LeafageRun, TokenError};
use crate::tree::{self, DisjointSets};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VlError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Clique(#[from] CliqueError),
    #[error(transparent)]
    Token(#[from] TokenError),
    #[error("leafage {leafage} exceeds the bound {ell}")]
    LeafageExceeds { leafage: usize, ell: usize },
    #[error("edge ({0}, {1}) is not an edge of the clique graph")]
    NotACliqueGraphEdge(usize, usize),
    #[error("{edges} branching edges cannot fit in a tree on {cliques} cliques")]
    TooManyEdges { edges: usize, cliques: usize },
    #[error("no candidate branching set produced a clique tree")]
    NoCandidate,
}

/// Candidate `Ee(T)`: normalized clique-id pairs in canonical order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BranchEdgeSet {
    edges: Vec<(usize, usize)>,
}

impl BranchEdgeSet {
    pub fn new(edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let set: BTreeSet<(usize, usize)> =
            edges.into_iter().map(|(a, b)| tree::edge(a, b)).collect();
        BranchEdgeSet {
            edges: set.into_iter().collect(),
        }
    }

    pub fn of_tree(t: &CliqueTree) -> Self {
        BranchEdgeSet::new(t.branching().incident_edges)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Name of the auxiliary vertex standing for clique-graph edge `(a, b)`.
pub fn edge_vertex_name(a: usize, b: usize) -> String {
    format!("edge:{a}-{b}")
}

/// The auxiliary graph `G'`: `G` plus one vertex per edge `CC'` of `F`,
/// adjacent to all of `C ∪ C'` and to the vertices of edges sharing an
/// endpoint with `CC'`.
pub fn auxiliary_graph(g: &Graph, cg: &CliqueGraph, f: &BranchEdgeSet) -> Graph {
    let mut edges: Vec<(String, String)> = g
        .edge_names()
        .map(|(u, v)| (u.to_string(), v.to_string()))
        .collect();
    for (i, &(a, b)) in f.edges().iter().enumerate() {
        let ve = edge_vertex_name(a, b);
        for &u in cg.clique(a).union(cg.clique(b)) {
            edges.push((g.name(u).to_string(), ve.clone()));
        }
        for &(c, d) in &f.edges()[i + 1..] {
            if a == c || a == d || b == c || b == d {
                edges.push((ve.clone(), edge_vertex_name(c, d)));
            }
        }
    }
    Graph::new(g.names().iter().cloned(), edges)
        .expect("auxiliary edges are distinct and loop-free")
}

fn validate(cg: &CliqueGraph, f: &BranchEdgeSet) -> Result<(), VlError> {
    for &(a, b) in f.edges() {
        if b >= cg.len() || !cg.has_edge(a, b) {
            return Err(VlError::NotACliqueGraphEdge(a, b));
        }
    }
    if !f.is_empty() && f.len() >= cg.len() {
        return Err(VlError::TooManyEdges {
            edges: f.len(),
            cliques: cg.len(),
        });
    }
    Ok(())
}

/// A clique tree `T` of `g` with `Ee(T) = F`, if one exists.
///
/// Builds `G'`, takes a minimum-leaf clique tree of it, drops the auxiliary
/// vertices from every node and keeps the result only if it is a clique
/// tree of `g` with the requested branching set.
pub fn clique_tree_with_branching(
    g: &Graph,
    cg: &CliqueGraph,
    f: &BranchEdgeSet,
) -> Result<Option<CliqueTree>, VlError> {
    validate(cg, f)?;
    let aux = auxiliary_graph(g, cg, f);
    let aux_cg = match CliqueGraph::from_graph(&aux) {
        Ok(cg) => cg,
        Err(GraphError::NotChordal) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    if aux_cg.len() != cg.len() {
        return Ok(None);
    }
    let start = clique::build_clique_tree(&aux_cg)?;
    let best = tokens::minimize_leafage(&aux_cg, &start)?.tree;

    // rename C' to C' ∩ V(G)
    let to_original: Vec<Option<usize>> = (0..aux.vertex_count())
        .map(|v| g.index_of(aux.name(v)))
        .collect();
    let mut rename = Vec::with_capacity(aux_cg.len());
    for members in aux_cg.cliques() {
        let restricted = members.iter().filter_map(|&v| to_original[v]).collect();
        match cg.clique_id(&restricted) {
            Some(id) => rename.push(id),
            None => return Ok(None),
        }
    }
    if rename.iter().collect::<BTreeSet<_>>().len() != rename.len() {
        return Ok(None);
    }
    let t = CliqueTree::new(
        cg.len(),
        best.edges().iter().map(|&(a, b)| (rename[a], rename[b])),
    );
    if clique::is_clique_tree(cg, &t) && BranchEdgeSet::of_tree(&t) == *f {
        Ok(Some(t))
    } else {
        Ok(None)
    }
}

/// How many branching edges to enumerate for a leaf bound `ell`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BudgetMode {
    /// `|F| ≤ ell − 2`.
    Paper,
    /// `|F| ≤ 3(ell − 2)`; every node of degree `d ≥ 3` has `d ≤ 3(d − 2)`,
    /// so this always covers `Ee` of a tree with `ell` leaves.
    #[default]
    Safe,
}

impl BudgetMode {
    pub fn budget(self, ell: usize) -> usize {
        let excess = ell.saturating_sub(2);
        match self {
            BudgetMode::Paper => excess,
            BudgetMode::Safe => 3 * excess,
        }
    }
}

impl std::str::FromStr for BudgetMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" => Ok(BudgetMode::Paper),
            "safe" => Ok(BudgetMode::Safe),
            other => Err(format!(
                "unknown budget mode {other:?} (expected paper or safe)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VlCertificate {
    pub leafage: usize,
    pub vertex_leafage: usize,
    pub tree: CliqueTree,
    /// Indexed by vertex.
    pub per_vertex_leaves: Vec<usize>,
    pub branch_edge_set: BranchEdgeSet,
    /// Candidate sets handed to [`clique_tree_with_branching`].
    pub candidates: usize,
}

impl VlCertificate {
    pub fn named_per_vertex(&self, g: &Graph) -> BTreeMap<String, usize> {
        self.per_vertex_leaves
            .iter()
            .enumerate()
            .map(|(v, &k)| (g.name(v).to_string(), k))
            .collect()
    }
}

/// Candidate branching sets with `|F| ≤ budget` that could be `Ee(T)` for
/// a clique tree `T` with at most `ell` leaves.
///
/// Every candidate is a union of stars of size at least three around its
/// centres `H`, with no other node reaching degree three, total excess
/// `Σ (deg − 2) ≤ ell − 2`, and contained in some clique tree. Sets failing
/// these checks have no clique tree with that branching set and at most
/// `ell` leaves, so dropping them never changes the minimum.
pub fn candidate_sets(cg: &CliqueGraph, ell: usize, budget: usize) -> Vec<BranchEdgeSet> {
    let n = cg.len();
    let excess = ell.saturating_sub(2);
    let neighbours: Vec<Vec<usize>> = (0..n)
        .map(|c| (0..n).filter(|&d| cg.has_edge(c, d)).collect())
        .collect();
    let target = clique::max_spanning_weight(cg);
    let mut out = BTreeSet::from([BranchEdgeSet::default()]);

    // stars per centre, each with excess ≤ the allowance
    let stars: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|c| {
            let mut all = Vec::new();
            for size in 3..=(excess + 2).min(neighbours[c].len()) {
                combinations(&neighbours[c], size, &mut |s| all.push(s.to_vec()));
            }
            all
        })
        .collect();

    fn extend(
        from: usize,
        left: usize,
        chosen: &mut Vec<(usize, Vec<usize>)>,
        stars: &[Vec<Vec<usize>>],
        emit: &mut dyn FnMut(&[(usize, Vec<usize>)]),
    ) {
        if !chosen.is_empty() {
            emit(chosen);
        }
        for c in from..stars.len() {
            for star in &stars[c] {
                let cost = star.len() - 2;
                if cost <= left {
                    chosen.push((c, star.clone()));
                    extend(c + 1, left - cost, chosen, stars, emit);
                    chosen.pop();
                }
            }
        }
    }

    let mut chosen = Vec::new();
    extend(0, excess, &mut chosen, &stars, &mut |centres| {
        let hub: BTreeMap<usize, &Vec<usize>> = centres.iter().map(|(c, s)| (*c, s)).collect();
        let mut f = BTreeSet::new();
        for (&c, star) in &hub {
            for &d in star.iter() {
                // an edge between two centres must be in both stars
                if let Some(other) = hub.get(&d) {
                    if !other.contains(&c) {
                        return;
                    }
                }
                f.insert(tree::edge(c, d));
            }
        }
        if f.len() > budget || f.len() >= n {
            return;
        }
        let mut degree = vec![0usize; n];
        for &(a, b) in &f {
            degree[a] += 1;
            degree[b] += 1;
        }
        if (0..n).any(|v| !hub.contains_key(&v) && degree[v] >= 3) {
            return;
        }
        if !fits_some_clique_tree(cg, &f, target) {
            return;
        }
        out.insert(BranchEdgeSet {
            edges: f.into_iter().collect(),
        });
    });
    out.into_iter().collect()
}

fn combinations(items: &[usize], k: usize, emit: &mut dyn FnMut(&[usize])) {
    fn go(
        items: &[usize],
        k: usize,
        start: usize,
        buf: &mut Vec<usize>,
        emit: &mut dyn FnMut(&[usize]),
    ) {
        if buf.len() == k {
            emit(buf);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - buf.len() {
                break;
            }
            buf.push(items[i]);
            go(items, k, i + 1, buf, emit);
            buf.pop();
        }
    }
    go(items, k, 0, &mut Vec::with_capacity(k), emit);
}

/// Clique trees are exactly the maximum-weight spanning trees, so `F` lies
/// in one iff it is a forest and Kruskal seeded with `F` still reaches the
/// maximum weight.
fn fits_some_clique_tree(cg: &CliqueGraph, f: &BTreeSet<(usize, usize)>, target: usize) -> bool {
    let mut dsu = DisjointSets::new(cg.len());
    let mut weight = 0;
    for &(a, b) in f {
        if !dsu.union(a, b) {
            return false;
        }
        weight += cg.weight(a, b);
    }
    let mut rest: Vec<(usize, usize, usize)> = cg.edges().to_vec();
    rest.sort_by(|x, y| y.2.cmp(&x.2).then((x.0, x.1).cmp(&(y.0, y.1))));
    for (a, b, w) in rest {
        if dsu.union(a, b) {
            weight += w;
        }
    }
    weight == target
}

/// Minimum-leaf clique tree of `g`, starting from the canonical one.
pub fn leafage_run(cg: &CliqueGraph) -> Result<LeafageRun, VlError> {
    let start = clique::build_clique_tree(cg)?;
    Ok(tokens::minimize_leafage(cg, &start)?)
}

/// Vertex leafage of `g`, assuming its leafage is at most `ell`
/// (`None`: use the leafage itself).
///
/// Returns `Ok(None)` when no enumerated candidate yields a clique tree,
/// which can happen only when the budget is too small to reach `Ee` of an
/// optimal tree.
pub fn vertex_leafage_bounded(
    g: &Graph,
    ell: Option<usize>,
    mode: BudgetMode,
) -> Result<Option<VlCertificate>, VlError> {
    let cg = CliqueGraph::from_graph(g)?;
    let leafage = leafage_run(&cg)?.leafage();
    let ell = ell.unwrap_or(leafage);
    if leafage > ell {
        return Err(VlError::LeafageExceeds { leafage, ell });
    }
    let candidates = candidate_sets(&cg, ell, mode.budget(ell));
    let found: Vec<(usize, BranchEdgeSet, CliqueTree)> = candidates
        .par_iter()
        .map(|f| {
            Ok(clique_tree_with_branching(g, &cg, f)?
                .map(|t| (t.max_vertex_leaves(&cg), f.clone(), t)))
        })
        .collect::<Result<Vec<_>, VlError>>()?
        .into_iter()
        .flatten()
        .collect();
    let Some((value, f, t)) = found
        .into_iter()
        .min_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)))
    else {
        return Ok(None);
    };
    Ok(Some(VlCertificate {
        leafage,
        vertex_leafage: value,
        per_vertex_leaves: t.per_vertex_leaves(&cg),
        tree: t,
        branch_edge_set: f,
        candidates: candidates.len(),
    }))
}

/// Clique tree and model that minimize leafage and vertex leafage at once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimultaneousOptimum {
    pub leafage: usize,
    pub vertex_leafage: usize,
    pub tree: CliqueTree,
    pub model: TreeModel,
    pub per_vertex_leaves: Vec<usize>,
    pub certificate: VlCertificate,
    pub run: LeafageRun,
}

/// Starts from a vertex-leafage optimal clique tree and minimizes its
/// leaves; subtree leaf counts never grow along the way.
pub fn simultaneous_optimum(g: &Graph) -> Result<SimultaneousOptimum, VlError> {
    let cg = CliqueGraph::from_graph(g)?;
    let certificate =
        vertex_leafage_bounded(g, None, BudgetMode::Safe)?.ok_or(VlError::NoCandidate)?;
    let run = tokens::minimize_leafage(&cg, &certificate.tree)?;
    let per_vertex_leaves = run.tree.per_vertex_leaves(&cg);
    if per_vertex_leaves
        .iter()
        .zip(&certificate.per_vertex_leaves)
        .any(|(after, before)| after > before)
    {
        return Err(TokenError::InvariantViolated("a vertex subtree gained leaves".into()).into());
    }
    Ok(SimultaneousOptimum {
        leafage: run.leafage(),
        vertex_leafage: per_vertex_leaves.iter().copied().max().unwrap_or(0),
        model: model_from_clique_tree(&cg, &run.tree),
        tree: run.tree.clone(),
        per_vertex_leaves,
        certificate,
        run,
    })
}
