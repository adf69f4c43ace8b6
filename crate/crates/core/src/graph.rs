//! Simple undirected graphs with string-named vertices, chordality
//! recognition by maximum-cardinality search, maximal cliques and the
//! weighted clique graph.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Index of a vertex in [`Graph`]'s canonical (lexicographic) order.
pub type Vertex = usize;

/// A set of vertices; ordered, so sets compare lexicographically by member.
pub type VertexSet = BTreeSet<Vertex>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: self-loop on `{vertex}`")]
    SelfLoop { line: usize, vertex: String },
    #[error("line {line}: duplicate edge {u} -- {v}")]
    DuplicateEdge { line: usize, u: String, v: String },
    #[error("ordering is not a perfect elimination order")]
    InvalidPeo,
    #[error("graph is not chordal")]
    NotChordal,
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
}

/// Finite simple undirected graph.
///
/// Vertices are kept sorted by name; every downstream tie-break uses this
/// order.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    adj: Vec<BTreeSet<Vertex>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.names)
            .field("edges", &self.edge_names().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from vertex names and named edges. Endpoints that are
    /// not listed in `vertices` are added. Self-loops and repeated edges are
    /// rejected (reported with line 0).
    pub fn new<V, E, S, T>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (T, T)>,
        S: Into<String>,
        T: Into<String>,
    {
        let mut names: BTreeSet<String> = vertices.into_iter().map(Into::into).collect();
        let mut pairs = Vec::new();
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            let (u, v): (String, String) = (u.into(), v.into());
            if u == v {
                return Err(GraphError::SelfLoop { line: 0, vertex: u });
            }
            let key = if u < v {
                (u.clone(), v.clone())
            } else {
                (v.clone(), u.clone())
            };
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge { line: 0, u, v });
            }
            names.insert(u.clone());
            names.insert(v.clone());
            pairs.push((u, v));
        }
        let names: Vec<String> = names.into_iter().collect();
        let index: BTreeMap<&str, Vertex> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let mut adj = vec![BTreeSet::new(); names.len()];
        for (u, v) in &pairs {
            let (a, b) = (index[u.as_str()], index[v.as_str()]);
            adj[a].insert(b);
            adj[b].insert(a);
        }
        Ok(Graph { names, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<Vertex> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    pub fn neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(&v)
    }

    /// Edges as `(u, v)` with `u < v`, in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn edge_names(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges().map(|(u, v)| (self.name(u), self.name(v)))
    }

    pub fn is_clique<'a>(&self, set: impl IntoIterator<Item = &'a Vertex>) -> bool {
        let members: Vec<Vertex> = set.into_iter().copied().collect();
        members
            .iter()
            .enumerate()
            .all(|(i, &u)| members[i + 1..].iter().all(|&v| self.adjacent(u, v)))
    }

    pub fn is_complete(&self) -> bool {
        self.adj.iter().all(|ns| ns.len() + 1 == self.names.len())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Comma-joined sorted member names, e.g. `a,c,d`.
    pub fn set_label(&self, set: &VertexSet) -> String {
        set.iter()
            .map(|&v| self.name(v))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses a comma-joined label back into a vertex set.
    pub fn parse_set(&self, label: &str) -> Option<VertexSet> {
        label
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|s| self.index_of(s.trim()))
            .collect()
    }

    /// Serializes to the edge-list format; isolated vertices get `v` lines.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for v in self.vertices() {
            if self.adj[v].is_empty() {
                out.push_str(&format!("v {}\n", self.name(v)));
            }
        }
        for (u, v) in self.edge_names() {
            out.push_str(&format!("e {u} {v}\n"));
        }
        out
    }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses the edge-list format: `#` comments, `v <name>` and `e <name> <name>`.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut vertices = BTreeSet::new();
    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        let malformed = |message: &str| GraphError::Malformed {
            line,
            message: message.to_string(),
        };
        match fields.as_slice() {
            [] => {}
            ["v", name] => {
                if !valid_name(name) {
                    return Err(malformed(&format!("invalid vertex name `{name}`")));
                }
                vertices.insert(name.to_string());
            }
            ["e", u, v] => {
                for name in [u, v] {
                    if !valid_name(name) {
                        return Err(malformed(&format!("invalid vertex name `{name}`")));
                    }
                }
                if u == v {
                    return Err(GraphError::SelfLoop {
                        line,
                        vertex: u.to_string(),
                    });
                }
                let key = if u < v { (*u, *v) } else { (*v, *u) };
                if !seen.insert(key) {
                    return Err(GraphError::DuplicateEdge {
                        line,
                        u: u.to_string(),
                        v: v.to_string(),
                    });
                }
                edges.push((u.to_string(), v.to_string()));
            }
            ["v", ..] => return Err(malformed("`v` takes exactly one name")),
            ["e", ..] => return Err(malformed("`e` takes exactly two names")),
            [other, ..] => return Err(malformed(&format!("unknown directive `{other}`"))),
        }
    }
    Graph::new(vertices, edges)
}

impl FromStr for Graph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_graph(s)
    }
}

/// Ordering in which each vertex's later neighbours form a clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectEliminationOrder {
    order: Vec<Vertex>,
}

impl PerfectEliminationOrder {
    /// Wraps `order` after checking it is a permutation and a valid PEO of `g`.
    pub fn new(g: &Graph, order: Vec<Vertex>) -> Result<Self, GraphError> {
        let peo = PerfectEliminationOrder { order };
        if peo.is_valid_for(g) {
            Ok(peo)
        } else {
            Err(GraphError::InvalidPeo)
        }
    }

    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    fn positions(&self, n: usize) -> Option<Vec<usize>> {
        if self.order.len() != n {
            return None;
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in self.order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return None;
            }
            pos[v] = i;
        }
        Some(pos)
    }

    /// Neighbours of `v` that come after it in the order.
    fn later_neighbors(&self, g: &Graph, pos: &[usize], v: Vertex) -> VertexSet {
        g.neighbors(v)
            .iter()
            .copied()
            .filter(|&w| pos[w] > pos[v])
            .collect()
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let Some(pos) = self.positions(g.vertex_count()) else {
            return false;
        };
        self.order
            .iter()
            .all(|&v| g.is_clique(&self.later_neighbors(g, &pos, v)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chordality {
    Chordal(PerfectEliminationOrder),
    /// Induced cycle of length at least four, as a vertex sequence.
    NotChordal(Vec<Vertex>),
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal(_))
    }
}

/// Maximum-cardinality search; ties go to the smallest vertex index.
/// Returns the visit order (its reverse is a PEO when `g` is chordal).
fn maximum_cardinality_search(g: &Graph) -> Vec<Vertex> {
    let n = g.vertex_count();
    let mut label = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by(|&a, &b| label[a].cmp(&label[b]).then(b.cmp(&a)))
            .expect("unvisited vertex remains");
        visited[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !visited[w] {
                label[w] += 1;
            }
        }
    }
    order
}

/// Chordality test with a certificate either way.
pub fn check_chordal(g: &Graph) -> Chordality {
    let mut order = maximum_cardinality_search(g);
    order.reverse();
    let peo = PerfectEliminationOrder { order };
    let pos = peo
        .positions(g.vertex_count())
        .expect("MCS yields a permutation");
    let mut failing = None;
    for &v in peo.order() {
        let later = peo.later_neighbors(g, &pos, v);
        if !g.is_clique(&later) {
            failing = Some(v);
            break;
        }
    }
    match failing {
        None => Chordality::Chordal(peo),
        Some(v) => {
            let first = std::iter::once(v);
            let cycle = first
                .chain(g.vertices().filter(|&u| u != v))
                .find_map(|centre| chordless_cycle_through(g, centre))
                .expect("a non-chordal graph has a chordless cycle");
            Chordality::NotChordal(cycle)
        }
    }
}

/// Looks for a chordless cycle of length >= 4 through `centre`: two
/// non-adjacent neighbours `x`, `y` joined by a shortest path avoiding the
/// rest of `centre`'s closed neighbourhood.
fn chordless_cycle_through(g: &Graph, centre: Vertex) -> Option<Vec<Vertex>> {
    let ns: Vec<Vertex> = g.neighbors(centre).iter().copied().collect();
    for (i, &x) in ns.iter().enumerate() {
        for &y in &ns[i + 1..] {
            if g.adjacent(x, y) {
                continue;
            }
            let blocked = |w: Vertex| w == centre || (w != x && w != y && g.adjacent(centre, w));
            if let Some(path) = shortest_path_avoiding(g, x, y, blocked) {
                let mut cycle = vec![centre];
                cycle.extend(path);
                return Some(normalize_cycle(cycle));
            }
        }
    }
    None
}

fn shortest_path_avoiding(
    g: &Graph,
    from: Vertex,
    to: Vertex,
    blocked: impl Fn(Vertex) -> bool,
) -> Option<Vec<Vertex>> {
    let mut parent = vec![usize::MAX; g.vertex_count()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &w in g.neighbors(u) {
            if parent[w] == usize::MAX && !blocked(w) {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Rotates a cycle to start at its smallest vertex, heading toward the
/// smaller of that vertex's two cycle neighbours.
fn normalize_cycle(mut cycle: Vec<Vertex>) -> Vec<Vertex> {
    let start = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap_or(0);
    cycle.rotate_left(start);
    if cycle.len() > 2 && cycle[cycle.len() - 1] < cycle[1] {
        cycle[1..].reverse();
    }
    cycle
}

/// A maximal clique with its position in the canonical clique order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalClique {
    pub id: usize,
    pub members: VertexSet,
}

/// Maximal cliques of a chordal graph from a PEO, sorted by member list.
pub fn maximal_cliques(
    g: &Graph,
    peo: &PerfectEliminationOrder,
) -> Result<Vec<MaximalClique>, GraphError> {
    let Some(pos) = peo.positions(g.vertex_count()) else {
        return Err(GraphError::InvalidPeo);
    };
    let mut candidates: Vec<VertexSet> = Vec::with_capacity(g.vertex_count());
    for &v in peo.order() {
        let mut set = peo.later_neighbors(g, &pos, v);
        if !g.is_clique(&set) {
            return Err(GraphError::InvalidPeo);
        }
        set.insert(v);
        candidates.push(set);
    }
    candidates.sort();
    candidates.dedup();
    let maximal: Vec<VertexSet> = candidates
        .iter()
        .filter(|c| {
            !candidates
                .iter()
                .any(|d| d.len() > c.len() && c.is_subset(d))
        })
        .cloned()
        .collect();
    Ok(maximal
        .into_iter()
        .enumerate()
        .map(|(id, members)| MaximalClique { id, members })
        .collect())
}

/// Intersection graph of the maximal cliques, weighted by intersection size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueGraph {
    vertex_count: usize,
    cliques: Vec<VertexSet>,
    /// `(i, j, |C_i ∩ C_j|)` with `i < j`, canonical order.
    edges: Vec<(usize, usize, usize)>,
}

impl CliqueGraph {
    pub fn new(vertex_count: usize, cliques: &[MaximalClique]) -> Self {
        let sets: Vec<VertexSet> = cliques.iter().map(|c| c.members.clone()).collect();
        let mut edges = Vec::new();
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                let w = sets[i].intersection(&sets[j]).count();
                if w > 0 {
                    edges.push((i, j, w));
                }
            }
        }
        CliqueGraph {
            vertex_count,
            cliques: sets,
            edges,
        }
    }

    /// Chordality, connectivity and clique extraction in one step.
    pub fn from_graph(g: &Graph) -> Result<Self, GraphError> {
        if g.vertex_count() == 0 {
            return Err(GraphError::Empty);
        }
        let Chordality::Chordal(peo) = check_chordal(g) else {
            return Err(GraphError::NotChordal);
        };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let cliques = maximal_cliques(g, &peo)?;
        Ok(CliqueGraph::new(g.vertex_count(), &cliques))
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn cliques(&self) -> &[VertexSet] {
        &self.cliques
    }

    pub fn clique(&self, id: usize) -> &VertexSet {
        &self.cliques[id]
    }

    pub fn clique_id(&self, members: &VertexSet) -> Option<usize> {
        self.cliques.binary_search(members).ok()
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn intersection(&self, i: usize, j: usize) -> VertexSet {
        self.cliques[i]
            .intersection(&self.cliques[j])
            .copied()
            .collect()
    }

    pub fn weight(&self, i: usize, j: usize) -> usize {
        self.cliques[i].intersection(&self.cliques[j]).count()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.weight(i, j) > 0
    }

    pub fn is_connected(&self) -> bool {
        if self.cliques.len() <= 1 {
            return true;
        }
        let mut dsu = crate::tree::DisjointSets::new(self.cliques.len());
        for &(i, j, _) in &self.edges {
            dsu.union(i, j);
        }
        dsu.set_count() == 1
    }
}

/// Clique graph of `cliques`, built on `g`'s vertex count.
pub fn clique_graph(g: &Graph, cliques: &[MaximalClique]) -> CliqueGraph {
    CliqueGraph::new(g.vertex_count(), cliques)
}
