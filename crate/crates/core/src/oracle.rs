//! Exhaustive ground truth for small graphs, plus a random chordal graph
//! generator to feed it.
//!
//! Clique trees are exactly the maximum-weight spanning trees of the clique
//! graph. They are enumerated weight class by weight class: within a class
//! every choice of edges that joins the same components as the whole class
//! extends to a maximum tree, and nothing else does.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::clique::{self, CliqueTree};
use crate::graph::{CliqueGraph, Graph, GraphError};
use crate::tree::DisjointSets;

pub const DEFAULT_LIMIT: usize = 1_000_000;

/// The enumeration cap: `LEAFAGE_ORACLE_LIMIT` if set, else [`DEFAULT_LIMIT`].
pub fn default_limit() -> usize {
    std::env::var("LEAFAGE_ORACLE_LIMIT")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_LIMIT)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("more than {limit} clique trees; instance too large for the oracle")]
    LimitExceeded { limit: usize },
    #[error("no clique tree attains both optima")]
    NoJointOptimum,
}

/// All clique trees in sorted order. Fails once more than `limit` exist.
pub fn enumerate_clique_trees(
    cg: &CliqueGraph,
    limit: usize,
) -> Result<Vec<CliqueTree>, OracleError> {
    let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut edges = cg.edges().to_vec();
    edges.sort_by(|a, b| b.2.cmp(&a.2).then((a.0, a.1).cmp(&(b.0, b.1))));
    let mut last = None;
    for (a, b, w) in edges {
        if last != Some(w) {
            classes.push(Vec::new());
            last = Some(w);
        }
        classes.last_mut().expect("pushed").push((a, b));
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let mut state = Enumeration {
        n: cg.len(),
        classes: &classes,
        limit,
        out: &mut out,
    };
    state.class(0, DisjointSets::new(cg.len()), &mut chosen)?;
    out.sort();
    Ok(out)
}

struct Enumeration<'a> {
    n: usize,
    classes: &'a [Vec<(usize, usize)>],
    limit: usize,
    out: &'a mut Vec<CliqueTree>,
}

impl Enumeration<'_> {
    fn class(
        &mut self,
        k: usize,
        dsu: DisjointSets,
        chosen: &mut Vec<(usize, usize)>,
    ) -> Result<(), OracleError> {
        if k == self.classes.len() {
            if chosen.len() + 1 == self.n || self.n <= 1 {
                if self.out.len() == self.limit {
                    return Err(OracleError::LimitExceeded { limit: self.limit });
                }
                self.out
                    .push(CliqueTree::new(self.n, chosen.iter().copied()));
            }
            return Ok(());
        }
        let mut full = dsu.clone();
        let mut rank = 0;
        for &(a, b) in &self.classes[k] {
            if full.union(a, b) {
                rank += 1;
            }
        }
        self.pick(k, 0, rank, dsu, chosen)
    }

    /// Chooses `need` more acyclic edges of class `k` from index `i` on.
    fn pick(
        &mut self,
        k: usize,
        i: usize,
        need: usize,
        dsu: DisjointSets,
        chosen: &mut Vec<(usize, usize)>,
    ) -> Result<(), OracleError> {
        if need == 0 {
            return self.class(k + 1, dsu, chosen);
        }
        let class = &self.classes[k];
        if class.len() - i < need {
            return Ok(());
        }
        let (a, b) = class[i];
        let mut with = dsu.clone();
        if with.union(a, b) {
            chosen.push((a, b));
            self.pick(k, i + 1, need - 1, with, chosen)?;
            chosen.pop();
        }
        self.pick(k, i + 1, need, dsu, chosen)
    }
}

/// Leaf counts of one clique tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Scored {
    pub tree: CliqueTree,
    pub host_leaves: usize,
    pub max_vertex_leaves: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub leafage: usize,
    pub vertex_leafage: usize,
    pub tree_count: usize,
    /// First tree (in enumeration order) with the fewest leaves.
    pub leafage_witness: Scored,
    /// First tree with the smallest maximum subtree leaf count.
    pub vertex_leafage_witness: Scored,
    /// Least `(host leaves, max subtree leaves)`; attains both minima.
    pub joint_witness: Scored,
}

/// Exact leafage and vertex leafage by full enumeration.
pub fn oracle_optima(g: &Graph, limit: usize) -> Result<OracleResult, OracleError> {
    let cg = CliqueGraph::from_graph(g)?;
    oracle_optima_cg(&cg, limit)
}

pub fn oracle_optima_cg(cg: &CliqueGraph, limit: usize) -> Result<OracleResult, OracleError> {
    let trees = enumerate_clique_trees(cg, limit)?;
    let scored: Vec<Scored> = trees
        .into_iter()
        .map(|t| Scored {
            host_leaves: t.host_leaves(),
            max_vertex_leaves: t.max_vertex_leaves(cg),
            tree: t,
        })
        .collect();
    let pick = |key: &dyn Fn(&Scored) -> (usize, usize)| {
        scored
            .iter()
            .min_by_key(|s| key(s))
            .cloned()
            .expect("a connected chordal graph has a clique tree")
    };
    let leafage_witness = pick(&|s| (s.host_leaves, 0));
    let vertex_leafage_witness = pick(&|s| (s.max_vertex_leaves, 0));
    let joint_witness = pick(&|s| (s.host_leaves, s.max_vertex_leaves));
    let (leafage, vertex_leafage) = (
        leafage_witness.host_leaves,
        vertex_leafage_witness.max_vertex_leaves,
    );
    if joint_witness.max_vertex_leaves != vertex_leafage {
        return Err(OracleError::NoJointOptimum);
    }
    Ok(OracleResult {
        leafage,
        vertex_leafage,
        tree_count: scored.len(),
        leafage_witness,
        vertex_leafage_witness,
        joint_witness,
    })
}

/// Every tree made of `|cliques| − 1` clique-graph edges that passes the
/// path-containment check. Exponential; a second route for small tests.
pub fn brute_force_clique_trees(cg: &CliqueGraph) -> Vec<CliqueTree> {
    let n = cg.len();
    if n == 1 {
        return vec![CliqueTree::new(1, [])];
    }
    let edges: Vec<(usize, usize)> = cg.edges().iter().map(|&(a, b, _)| (a, b)).collect();
    let mut out = Vec::new();
    let mut buf = Vec::new();
    fn go(
        edges: &[(usize, usize)],
        start: usize,
        n: usize,
        buf: &mut Vec<(usize, usize)>,
        cg: &CliqueGraph,
        out: &mut Vec<CliqueTree>,
    ) {
        if buf.len() + 1 == n {
            let t = CliqueTree::new(n, buf.iter().copied());
            if clique::is_clique_tree(cg, &t) {
                out.push(t);
            }
            return;
        }
        for i in start..edges.len() {
            buf.push(edges[i]);
            go(edges, i + 1, n, buf, cg, out);
            buf.pop();
        }
    }
    go(&edges, 0, n, &mut buf, cg, &mut out);
    out.sort();
    out
}

/// Random connected chordal graph on `n` vertices: the intersection graph
/// of random subtrees of a random host tree on `n` nodes.
///
/// Each subtree starts at a uniform node and grows by one neighbouring node
/// with probability `density` per step. A subtree missing all earlier ones
/// is extended along the host path to the nearest covered node, which keeps
/// the graph connected.
pub fn random_chordal(n: usize, density: f64, seed: u64) -> Graph {
    assert!(n >= 1, "need at least one vertex");
    let density = density.clamp(0.0, 0.95);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut host: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 1..n {
        let p = rng.random_range(0..v);
        host[v].push(p);
        host[p].push(v);
    }
    let mut subtrees: Vec<BTreeSet<usize>> = Vec::with_capacity(n);
    let mut covered = BTreeSet::new();
    for _ in 0..n {
        let mut nodes = BTreeSet::from([rng.random_range(0..n)]);
        while rng.random_bool(density) {
            let frontier: Vec<usize> = nodes
                .iter()
                .flat_map(|&x| host[x].iter().copied())
                .filter(|y| !nodes.contains(y))
                .collect();
            if frontier.is_empty() {
                break;
            }
            nodes.insert(frontier[rng.random_range(0..frontier.len())]);
        }
        if !covered.is_empty() && nodes.is_disjoint(&covered) {
            nodes.extend(path_to(&host, &nodes, &covered));
        }
        covered.extend(nodes.iter().copied());
        subtrees.push(nodes);
    }
    let width = (n - 1).to_string().len();
    let names: Vec<String> = (0..n).map(|i| format!("v{i:0width$}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !subtrees[i].is_disjoint(&subtrees[j]) {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    Graph::new(names, edges).expect("generated edges are simple")
}

/// Host nodes on a shortest path from `from` into `to`.
fn path_to(host: &[Vec<usize>], from: &BTreeSet<usize>, to: &BTreeSet<usize>) -> Vec<usize> {
    let mut parent = vec![usize::MAX; host.len()];
    let mut queue: std::collections::VecDeque<usize> = from.iter().copied().collect();
    for &x in from {
        parent[x] = x;
    }
    while let Some(x) = queue.pop_front() {
        if to.contains(&x) {
            let mut path = vec![x];
            let mut cur = x;
            while parent[cur] != cur {
                cur = parent[cur];
                path.push(cur);
            }
            return path;
        }
        for &y in &host[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    unreachable!("host tree is connected")
}

/// Seed stream behind [`corpus`]: `(n, density, seed)` for index `i`, with
/// 4 to 10 vertices and four densities.
pub fn corpus_params(i: usize) -> (usize, f64, u64) {
    const DENSITIES: [f64; 4] = [0.2, 0.4, 0.6, 0.75];
    (4 + i % 7, DENSITIES[(i / 7) % DENSITIES.len()], i as u64)
}

/// The first `size` graphs of the seed stream.
pub fn corpus(size: usize) -> Vec<Graph> {
    (0..size)
        .map(|i| {
            let (n, density, seed) = corpus_params(i);
            random_chordal(n, density, seed)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::example;
    use crate::graph::{check_chordal, parse_graph};

    #[test]
    fn two_cliques_one_tree() {
        let g = parse_graph("e a b\ne b c\n").unwrap();
        let cg = CliqueGraph::from_graph(&g).unwrap();
        assert_eq!(enumerate_clique_trees(&cg, 10).unwrap().len(), 1);
    }

    #[test]
    fn example_enumeration() {
        let g = example::graph();
        let cg = CliqueGraph::from_graph(&g).unwrap();
        let trees = enumerate_clique_trees(&cg, DEFAULT_LIMIT).unwrap();
        assert_eq!(trees.len(), 180);
        assert_eq!(trees, brute_force_clique_trees(&cg));
        for edges in [example::START_TREE, example::AUGMENTED_TREE] {
            assert!(trees.contains(&example::tree(&g, &cg, edges)));
        }
        let r = oracle_optima_cg(&cg, DEFAULT_LIMIT).unwrap();
        assert_eq!((r.leafage, r.vertex_leafage), (3, 2));
        assert_eq!(
            (
                r.joint_witness.host_leaves,
                r.joint_witness.max_vertex_leaves
            ),
            (3, 2)
        );
    }

    #[test]
    fn limit_is_enforced() {
        let cg = CliqueGraph::from_graph(&example::graph()).unwrap();
        assert_eq!(
            enumerate_clique_trees(&cg, 179),
            Err(OracleError::LimitExceeded { limit: 179 })
        );
    }

    #[test]
    fn cycle_is_rejected() {
        let g = parse_graph("e a b\ne b c\ne c d\ne d a\n").unwrap();
        assert_eq!(
            oracle_optima(&g, 10),
            Err(OracleError::Graph(GraphError::NotChordal))
        );
    }

    #[test]
    fn complete_graph_is_zero() {
        let g = parse_graph("e a b\ne b c\ne a c\ne a d\ne b d\ne c d\n").unwrap();
        let r = oracle_optima(&g, 10).unwrap();
        assert_eq!((r.leafage, r.vertex_leafage, r.tree_count), (0, 0, 1));
    }

    #[test]
    fn generator_is_deterministic_and_chordal() {
        assert_eq!(random_chordal(1, 0.5, 3).vertex_count(), 1);
        for seed in 0..50 {
            let g = random_chordal(8, 0.5, seed);
            assert_eq!(g, random_chordal(8, 0.5, seed));
            assert!(check_chordal(&g).is_chordal());
            assert!(g.is_connected());
        }
    }

    #[test]
    fn enumeration_matches_brute_force_on_small_graphs() {
        for g in corpus(60) {
            let cg = CliqueGraph::from_graph(&g).unwrap();
            if cg.edges().len() > 14 {
                continue;
            }
            assert_eq!(
                enumerate_clique_trees(&cg, DEFAULT_LIMIT).unwrap(),
                brute_force_clique_trees(&cg),
                "{g:?}"
            );
        }
    }
}
