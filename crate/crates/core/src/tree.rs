//! Small tree utilities shared by the clique-tree, model and oracle code.

use std::collections::BTreeSet;

use serde::Serialize;

/// Union-find with path halving; cheap to clone for backtracking.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    sets: usize,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; false if already merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        self.sets -= 1;
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }
}

/// Normalized undirected edge `(min, max)`.
pub fn edge(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for ns in &mut adj {
        ns.sort_unstable();
    }
    adj
}

pub fn degrees(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut deg = vec![0; n];
    for &(a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    deg
}

/// True iff the edges form a spanning tree on `n` nodes.
pub fn is_spanning_tree(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 || edges.len() + 1 != n {
        return false;
    }
    let mut dsu = DisjointSets::new(n);
    edges
        .iter()
        .all(|&(a, b)| a < n && b < n && dsu.union(a, b))
}

/// Leaf count of a tree; a single node counts as having no leaves.
pub fn leaf_count(n: usize, edges: &[(usize, usize)]) -> usize {
    if n <= 1 {
        return 0;
    }
    degrees(n, edges).into_iter().filter(|&d| d == 1).count()
}

/// Leaves of the subgraph induced by `nodes` (assumed connected).
pub fn induced_leaves(nodes: &BTreeSet<usize>, edges: &[(usize, usize)]) -> BTreeSet<usize> {
    if nodes.len() <= 1 {
        return BTreeSet::new();
    }
    let mut deg = std::collections::BTreeMap::new();
    for &(a, b) in edges {
        if nodes.contains(&a) && nodes.contains(&b) {
            *deg.entry(a).or_insert(0usize) += 1;
            *deg.entry(b).or_insert(0usize) += 1;
        }
    }
    nodes
        .iter()
        .copied()
        .filter(|v| deg.get(v) == Some(&1))
        .collect()
}

/// True iff `nodes` is nonempty and induces a connected subgraph.
pub fn induces_connected(nodes: &BTreeSet<usize>, edges: &[(usize, usize)]) -> bool {
    let Some(&first) = nodes.iter().next() else {
        return false;
    };
    let mut reached = BTreeSet::from([first]);
    let mut stack = vec![first];
    while let Some(u) = stack.pop() {
        for &(a, b) in edges {
            let other = if a == u {
                b
            } else if b == u {
                a
            } else {
                continue;
            };
            if nodes.contains(&other) && reached.insert(other) {
                stack.push(other);
            }
        }
    }
    reached.len() == nodes.len()
}

/// Nodes on the unique path between `from` and `to` (inclusive).
pub fn tree_path(adj: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; adj.len()];
    parent[from] = from;
    let mut stack = vec![from];
    while let Some(u) = stack.pop() {
        if u == to {
            break;
        }
        for &w in &adj[u] {
            if parent[w] == usize::MAX {
                parent[w] = u;
                stack.push(w);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// High-degree nodes `H(T)` and the edges touching them `Ee(T)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchingSets {
    pub high_nodes: BTreeSet<usize>,
    pub incident_edges: BTreeSet<(usize, usize)>,
    pub host_leaves: usize,
}

impl BranchingSets {
    /// `Σ_{deg ≥ 3} (deg − 2)`, which equals `host_leaves − 2` on trees
    /// with at least two nodes.
    pub fn excess(&self, n: usize, edges: &[(usize, usize)]) -> usize {
        degrees(n, edges)
            .into_iter()
            .filter(|&d| d >= 3)
            .map(|d| d - 2)
            .sum()
    }
}

pub fn branching_sets(n: usize, edges: &[(usize, usize)]) -> BranchingSets {
    let deg = degrees(n, edges);
    let high_nodes: BTreeSet<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();
    let incident_edges = edges
        .iter()
        .map(|&(a, b)| edge(a, b))
        .filter(|(a, b)| high_nodes.contains(a) || high_nodes.contains(b))
        .collect();
    let sets = BranchingSets {
        high_nodes,
        incident_edges,
        host_leaves: leaf_count(n, edges),
    };
    if n >= 2 {
        assert!(
            sets.high_nodes.len() + 2 <= sets.host_leaves,
            "|H(T)| <= leaves - 2 violated"
        );
    }
    sets
}
