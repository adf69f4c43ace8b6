//! Tree models (host tree plus one subtree per vertex), contraction to a
//! minimal model, and leaf statistics.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::clique::CliqueTree;
use crate::graph::{CliqueGraph, Graph, Vertex, VertexSet};
use crate::tree;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("host is not a tree")]
    HostNotTree,
    #[error("subtree of vertex {0} is empty or disconnected")]
    BadSubtree(Vertex),
    #[error("subtree count {found} does not match vertex count {expected}")]
    VertexCountMismatch { expected: usize, found: usize },
    #[error("intersection graph of the model differs from the graph")]
    NotAModel,
}

/// Host tree over opaque node ids `0..node_count` and one node set per
/// graph vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeModel {
    node_count: usize,
    host_edges: Vec<(usize, usize)>,
    subtrees: Vec<BTreeSet<usize>>,
}

impl TreeModel {
    /// Checks the host is a tree and every subtree is nonempty and connected.
    pub fn new(
        node_count: usize,
        host_edges: impl IntoIterator<Item = (usize, usize)>,
        subtrees: Vec<BTreeSet<usize>>,
    ) -> Result<Self, ModelError> {
        let mut host_edges: Vec<(usize, usize)> = host_edges
            .into_iter()
            .map(|(a, b)| tree::edge(a, b))
            .collect();
        host_edges.sort_unstable();
        if !tree::is_spanning_tree(node_count, &host_edges) {
            return Err(ModelError::HostNotTree);
        }
        for (u, nodes) in subtrees.iter().enumerate() {
            if nodes.iter().any(|&x| x >= node_count)
                || !tree::induces_connected(nodes, &host_edges)
            {
                return Err(ModelError::BadSubtree(u));
            }
        }
        Ok(TreeModel {
            node_count,
            host_edges,
            subtrees,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn host_edges(&self) -> &[(usize, usize)] {
        &self.host_edges
    }

    pub fn subtree(&self, u: Vertex) -> &BTreeSet<usize> {
        &self.subtrees[u]
    }

    pub fn subtrees(&self) -> &[BTreeSet<usize>] {
        &self.subtrees
    }

    /// `ψ(X)`: for each host node, the vertices whose subtree contains it.
    pub fn node_bags(&self) -> Vec<VertexSet> {
        let mut bags = vec![VertexSet::new(); self.node_count];
        for (u, nodes) in self.subtrees.iter().enumerate() {
            for &x in nodes {
                bags[x].insert(u);
            }
        }
        bags
    }

    /// Vertex pairs whose subtrees share a node.
    fn intersection_edges(&self) -> BTreeSet<(Vertex, Vertex)> {
        let mut out = BTreeSet::new();
        for bag in self.node_bags() {
            let members: Vec<Vertex> = bag.into_iter().collect();
            for (i, &u) in members.iter().enumerate() {
                for &v in &members[i + 1..] {
                    out.insert((u, v));
                }
            }
        }
        out
    }

    /// True iff the intersection graph of the subtrees is exactly `g`.
    pub fn is_model_of(&self, g: &Graph) -> bool {
        self.subtrees.len() == g.vertex_count()
            && self.intersection_edges() == g.edges().collect::<BTreeSet<_>>()
    }

    /// Minimality test: the node bags are exactly the maximal cliques, each
    /// appearing once.
    pub fn is_minimal(&self, cg: &CliqueGraph) -> bool {
        let mut bags = self.node_bags();
        bags.sort();
        bags == cg.cliques()
    }

    /// For a minimal model, the clique tree it is isomorphic to.
    pub fn to_clique_tree(&self, cg: &CliqueGraph) -> Option<CliqueTree> {
        let ids: Option<Vec<usize>> = self.node_bags().iter().map(|b| cg.clique_id(b)).collect();
        let ids = ids?;
        let distinct: BTreeSet<usize> = ids.iter().copied().collect();
        if distinct.len() != cg.len() || ids.len() != cg.len() {
            return None;
        }
        Some(CliqueTree::new(
            cg.len(),
            self.host_edges.iter().map(|&(a, b)| (ids[a], ids[b])),
        ))
    }

    /// Contracts host edge `(keep, gone)`: `gone` is merged into `keep` in
    /// the host and in every subtree; node ids above `gone` shift down.
    fn contract(&self, keep: usize, gone: usize) -> TreeModel {
        let relabel = |x: usize| {
            let x = if x == gone { keep } else { x };
            if x > gone {
                x - 1
            } else {
                x
            }
        };
        let mut edges: Vec<(usize, usize)> = self
            .host_edges
            .iter()
            .filter(|&&e| e != tree::edge(keep, gone))
            .map(|&(a, b)| tree::edge(relabel(a), relabel(b)))
            .collect();
        edges.sort_unstable();
        let subtrees = self
            .subtrees
            .iter()
            .map(|s| s.iter().map(|&x| relabel(x)).collect())
            .collect();
        TreeModel {
            node_count: self.node_count - 1,
            host_edges: edges,
            subtrees,
        }
    }
}

/// The model defined by a clique tree: `T_u` is the set of cliques holding `u`.
pub fn model_from_clique_tree(cg: &CliqueGraph, t: &CliqueTree) -> TreeModel {
    let mut subtrees = vec![BTreeSet::new(); cg.vertex_count()];
    for (c, members) in cg.cliques().iter().enumerate() {
        for &u in members {
            subtrees[u].insert(c);
        }
    }
    TreeModel {
        node_count: t.node_count(),
        host_edges: t.edges().to_vec(),
        subtrees,
    }
}

/// Repeatedly contracts the first host edge (canonical order) whose
/// contraction keeps the intersection graph equal to `g`.
pub fn contract_to_minimal(g: &Graph, m: &TreeModel) -> Result<TreeModel, ModelError> {
    if m.subtrees.len() != g.vertex_count() {
        return Err(ModelError::VertexCountMismatch {
            expected: g.vertex_count(),
            found: m.subtrees.len(),
        });
    }
    if !m.is_model_of(g) {
        return Err(ModelError::NotAModel);
    }
    let mut current = m.clone();
    'scan: loop {
        for &(a, b) in current.host_edges.clone().iter() {
            let candidate = current.contract(a, b);
            if candidate.is_model_of(g) {
                current = candidate;
                continue 'scan;
            }
        }
        return Ok(current);
    }
}

/// Host and per-vertex leaf counts of a model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeafReport {
    pub host_leaves: usize,
    pub per_vertex_leaves: Vec<usize>,
    pub max_vertex_leaves: usize,
}

impl LeafReport {
    pub fn named(&self, g: &Graph) -> BTreeMap<String, usize> {
        self.per_vertex_leaves
            .iter()
            .enumerate()
            .map(|(u, &n)| (g.name(u).to_string(), n))
            .collect()
    }
}

pub fn leaf_report(m: &TreeModel) -> LeafReport {
    let per_vertex_leaves: Vec<usize> = m
        .subtrees
        .iter()
        .map(|s| tree::induced_leaves(s, &m.host_edges).len())
        .collect();
    LeafReport {
        host_leaves: tree::leaf_count(m.node_count, &m.host_edges),
        max_vertex_leaves: per_vertex_leaves.iter().copied().max().unwrap_or(0),
        per_vertex_leaves,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::example;
    use crate::graph::parse_graph;

    fn example_model(edges: &[(&str, &str)]) -> (Graph, CliqueGraph, TreeModel) {
        let g = example::graph();
        let cg = CliqueGraph::from_graph(&g).unwrap();
        let t = example::tree(&g, &cg, edges);
        let m = model_from_clique_tree(&cg, &t);
        (g, cg, m)
    }

    fn labels(g: &Graph, cg: &CliqueGraph, nodes: &BTreeSet<usize>) -> BTreeSet<String> {
        nodes.iter().map(|&c| g.set_label(cg.clique(c))).collect()
    }

    #[test]
    fn subtree_of_d() {
        let (g, cg, m) = example_model(example::START_TREE);
        let d = g.index_of("d").unwrap();
        let expected: BTreeSet<String> = ["d,e", "a,d,f", "a,c,d", "c,d,k"]
            .into_iter()
            .map(String::from)
            .collect();
        assert_eq!(labels(&g, &cg, m.subtree(d)), expected);
        assert!(m.is_model_of(&g));
        assert!(m.is_minimal(&cg));
    }

    #[test]
    fn subtree_of_a_after_augmentation_is_a_path() {
        let (g, cg, m) = example_model(example::AUGMENTED_TREE);
        let a = g.index_of("a").unwrap();
        let expected: BTreeSet<String> = ["a,d,f", "a,c,d", "a,g", "a,h", "a,b,c"]
            .into_iter()
            .map(String::from)
            .collect();
        assert_eq!(labels(&g, &cg, m.subtree(a)), expected);
        let nodes = m.subtree(a);
        let degs: Vec<usize> = nodes
            .iter()
            .map(|&x| {
                m.host_edges()
                    .iter()
                    .filter(|&&(p, q)| {
                        (p == x && nodes.contains(&q)) || (q == x && nodes.contains(&p))
                    })
                    .count()
            })
            .collect();
        assert!(degs.iter().all(|&d| d <= 2));
        assert_eq!(degs.iter().filter(|&&d| d == 1).count(), 2);
    }

    #[test]
    fn one_clique_model() {
        let g = parse_graph("e a b\ne b c\ne a c\n").unwrap();
        let cg = CliqueGraph::from_graph(&g).unwrap();
        let m = model_from_clique_tree(&cg, &CliqueTree::new(1, []));
        assert!(m.subtrees().iter().all(|s| s == &BTreeSet::from([0])));
        assert_eq!(leaf_report(&m).host_leaves, 0);
        assert_eq!(leaf_report(&m).max_vertex_leaves, 0);
    }

    #[test]
    fn leaf_report_of_example_trees() {
        let (g, _, m) = example_model(example::START_TREE);
        let r = leaf_report(&m);
        assert_eq!(r.host_leaves, 5);
        assert_eq!(r.per_vertex_leaves[g.index_of("a").unwrap()], 3);
        assert_eq!(r.max_vertex_leaves, 3);

        let (_, _, m) = example_model(example::AUGMENTED_TREE);
        let r = leaf_report(&m);
        assert_eq!(r.host_leaves, 4);
        assert!(r.per_vertex_leaves.iter().all(|&n| n <= 2));
    }

    #[test]
    fn minimal_model_is_a_fixed_point() {
        let (g, _, m) = example_model(example::START_TREE);
        assert_eq!(contract_to_minimal(&g, &m).unwrap(), m);
    }

    #[test]
    fn k2_on_three_node_path_collapses() {
        let g = parse_graph("e a b\n").unwrap();
        let all = BTreeSet::from([0, 1, 2]);
        let m = TreeModel::new(3, [(0, 1), (1, 2)], vec![all.clone(), all]).unwrap();
        let min = contract_to_minimal(&g, &m).unwrap();
        assert_eq!(min.node_count(), 1);
        assert_eq!(leaf_report(&min).host_leaves, 0);
    }

    #[test]
    fn subdivided_edge_contracts_back() {
        let (g, cg, m) = example_model(example::START_TREE);
        // subdivide host edge adf--acd with a new node 9 holding the
        // vertices the two cliques share
        let adf = cg.clique_id(&g.parse_set("a,d,f").unwrap()).unwrap();
        let acd = cg.clique_id(&g.parse_set("a,c,d").unwrap()).unwrap();
        let mut edges: Vec<(usize, usize)> = m
            .host_edges()
            .iter()
            .copied()
            .filter(|&e| e != tree::edge(adf, acd))
            .collect();
        edges.push((adf, 9));
        edges.push((9, acd));
        let mut subtrees = m.subtrees().to_vec();
        for u in cg.intersection(adf, acd) {
            subtrees[u].insert(9);
        }
        let bigger = TreeModel::new(10, edges, subtrees).unwrap();
        assert!(bigger.is_model_of(&g));
        assert!(!bigger.is_minimal(&cg));
        let before = leaf_report(&bigger);

        let min = contract_to_minimal(&g, &bigger).unwrap();
        assert!(min.is_minimal(&cg));
        let t = min.to_clique_tree(&cg).unwrap();
        assert_eq!(t, example::tree(&g, &cg, example::START_TREE));
        let after = leaf_report(&min);
        assert!(after.host_leaves <= before.host_leaves);
        assert!(after
            .per_vertex_leaves
            .iter()
            .zip(&before.per_vertex_leaves)
            .all(|(a, b)| a <= b));
        assert_eq!(contract_to_minimal(&g, &min).unwrap(), min);
    }

    #[test]
    fn wrong_model_rejected() {
        let g = parse_graph("e a b\ne b c\n").unwrap();
        let m = TreeModel::new(1, [], vec![BTreeSet::from([0]); 3]).unwrap();
        assert_eq!(contract_to_minimal(&g, &m), Err(ModelError::NotAModel));
        assert!(matches!(
            TreeModel::new(3, [(0, 1), (1, 2)], vec![BTreeSet::from([0, 2])]),
            Err(ModelError::BadSubtree(0))
        ));
    }
}
