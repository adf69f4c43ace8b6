//! Clique trees: construction as a maximum-weight spanning tree of the
//! clique graph, and the path-containment check.

use serde::Serialize;
use thiserror::Error;

use crate::graph::CliqueGraph;
use crate::tree::{self, BranchingSets, DisjointSets};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliqueError {
    #[error("clique graph is disconnected")]
    Disconnected,
    #[error("tree has {found} nodes but the graph has {expected} maximal cliques")]
    NodeSetMismatch { expected: usize, found: usize },
    #[error("constructed tree failed validation: {0:?}")]
    Invalid(Violation),
}

/// Tree on the maximal cliques; nodes are clique ids of a [`CliqueGraph`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CliqueTree {
    node_count: usize,
    edges: Vec<(usize, usize)>,
}

impl CliqueTree {
    /// Normalizes and sorts the edge list. Does not validate.
    pub fn new(node_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<(usize, usize)> =
            edges.into_iter().map(|(a, b)| tree::edge(a, b)).collect();
        edges.sort_unstable();
        CliqueTree { node_count, edges }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&tree::edge(a, b)).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        tree::degrees(self.node_count, &self.edges)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        tree::adjacency(self.node_count, &self.edges)
    }

    pub fn host_leaves(&self) -> usize {
        tree::leaf_count(self.node_count, &self.edges)
    }

    pub fn branching(&self) -> BranchingSets {
        tree::branching_sets(self.node_count, &self.edges)
    }

    /// Leaf count of `T_u`, the subtree induced by cliques containing `u`.
    pub fn vertex_leaves(&self, cg: &CliqueGraph, u: usize) -> usize {
        let nodes = (0..self.node_count)
            .filter(|&c| cg.clique(c).contains(&u))
            .collect();
        tree::induced_leaves(&nodes, &self.edges).len()
    }

    /// Leaf counts of every vertex subtree, indexed by vertex.
    pub fn per_vertex_leaves(&self, cg: &CliqueGraph) -> Vec<usize> {
        (0..cg.vertex_count())
            .map(|u| self.vertex_leaves(cg, u))
            .collect()
    }

    pub fn max_vertex_leaves(&self, cg: &CliqueGraph) -> usize {
        self.per_vertex_leaves(cg).into_iter().max().unwrap_or(0)
    }
}

/// Why a tree on the maximal cliques is not a clique tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// Edges do not form a spanning tree.
    NotATree,
    /// `middle` lies on the path between `ends` but misses part of their
    /// intersection.
    PathContainment { ends: (usize, usize), middle: usize },
}

/// Checks path containment for every pair of nodes. `Ok(None)` means valid.
pub fn verify_clique_tree(
    cg: &CliqueGraph,
    t: &CliqueTree,
) -> Result<Option<Violation>, CliqueError> {
    if t.node_count() != cg.len() || t.edges().iter().any(|&(_, b)| b >= cg.len()) {
        return Err(CliqueError::NodeSetMismatch {
            expected: cg.len(),
            found: t.node_count(),
        });
    }
    if !tree::is_spanning_tree(t.node_count(), t.edges()) {
        return Ok(Some(Violation::NotATree));
    }
    let adj = t.adjacency();
    for i in 0..cg.len() {
        for j in i + 1..cg.len() {
            let shared = cg.intersection(i, j);
            if shared.is_empty() {
                continue;
            }
            let path = tree::tree_path(&adj, i, j);
            if let Some(&middle) = path[1..path.len() - 1]
                .iter()
                .find(|&&m| !shared.is_subset(cg.clique(m)))
            {
                return Ok(Some(Violation::PathContainment {
                    ends: (i, j),
                    middle,
                }));
            }
        }
    }
    Ok(None)
}

pub fn is_clique_tree(cg: &CliqueGraph, t: &CliqueTree) -> bool {
    matches!(verify_clique_tree(cg, t), Ok(None))
}

/// Maximum spanning tree weight of the clique graph (Kruskal).
pub fn max_spanning_weight(cg: &CliqueGraph) -> usize {
    kruskal(cg).1
}

fn kruskal(cg: &CliqueGraph) -> (Vec<(usize, usize)>, usize) {
    let mut order: Vec<(usize, usize, usize)> = cg.edges().to_vec();
    order.sort_by(|a, b| b.2.cmp(&a.2).then((a.0, a.1).cmp(&(b.0, b.1))));
    let mut dsu = DisjointSets::new(cg.len());
    let mut chosen = Vec::new();
    let mut weight = 0;
    for (a, b, w) in order {
        if dsu.union(a, b) {
            chosen.push((a, b));
            weight += w;
        }
    }
    (chosen, weight)
}

/// Clique tree as a maximum-weight spanning tree, ties broken by clique
/// ids; validated before it is returned.
pub fn build_clique_tree(cg: &CliqueGraph) -> Result<CliqueTree, CliqueError> {
    if !cg.is_connected() {
        return Err(CliqueError::Disconnected);
    }
    let (edges, _) = kruskal(cg);
    let t = CliqueTree::new(cg.len(), edges);
    match verify_clique_tree(cg, &t)? {
        None => Ok(t),
        Some(v) => Err(CliqueError::Invalid(v)),
    }
}
