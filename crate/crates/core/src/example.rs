//! The worked example: an 11-vertex chordal graph, two of its clique
//! trees (before and after one leaf-reducing augmentation), and the
//! augmenting path between them.

use crate::clique::CliqueTree;
use crate::graph::{CliqueGraph, Graph, VertexSet};
use crate::tokens::TokenAssignment;

pub const EDGES: [(&str, &str); 15] = [
    ("e", "d"),
    ("f", "d"),
    ("d", "k"),
    ("f", "a"),
    ("d", "a"),
    ("d", "c"),
    ("k", "c"),
    ("a", "c"),
    ("a", "h"),
    ("a", "g"),
    ("a", "b"),
    ("c", "b"),
    ("c", "i"),
    ("c", "j"),
    ("b", "i"),
];

/// Clique tree with five leaves, as comma-joined clique labels.
pub const START_TREE: &[(&str, &str)] = &[
    ("d,e", "a,d,f"),
    ("a,d,f", "a,c,d"),
    ("a,c,d", "c,d,k"),
    ("a,b,c", "a,g"),
    ("a,b,c", "a,h"),
    ("a,c,d", "a,b,c"),
    ("b,c,i", "c,j"),
    ("a,b,c", "b,c,i"),
];

/// Clique tree with four leaves, reached from [`START_TREE`] by the path
/// [`AUGMENTING_PATH`].
pub const AUGMENTED_TREE: &[(&str, &str)] = &[
    ("d,e", "c,d,k"),
    ("a,d,f", "a,c,d"),
    ("a,c,d", "c,d,k"),
    ("a,d,f", "a,g"),
    ("a,b,c", "a,h"),
    ("a,c,d", "a,b,c"),
    ("b,c,i", "c,j"),
    ("a,b,c", "b,c,i"),
];

/// Token assignment of [`START_TREE`]: clique label, then its tokens with
/// members run together.
pub const START_TOKENS: &[(&str, &[&str])] = &[
    ("d,e", &["d"]),
    ("a,d,f", &["d", "ad"]),
    ("a,c,d", &["cd", "ac", "ad"]),
    ("c,d,k", &["cd"]),
    ("a,h", &["a"]),
    ("a,g", &["a"]),
    ("a,b,c", &["ac", "a", "a", "bc"]),
    ("c,j", &["c"]),
    ("b,c,i", &["bc", "c"]),
];

/// `(from, to, token)` moves, labels comma-joined.
pub const AUGMENTING_PATH: [(&str, &str, &str); 2] =
    [("a,b,c", "a,d,f", "a"), ("a,d,f", "c,d,k", "d")];

pub fn graph() -> Graph {
    Graph::new(std::iter::empty::<&str>(), EDGES).expect("embedded example graph is simple")
}

pub fn edge_list() -> String {
    graph().to_edge_list()
}

/// Resolves labelled edges to a [`CliqueTree`] over `cg`'s clique ids.
///
/// Panics if a label is not a maximal clique of `g`.
pub fn tree(g: &Graph, cg: &CliqueGraph, edges: &[(&str, &str)]) -> CliqueTree {
    let id = |label: &str| {
        let set = g
            .parse_set(label)
            .unwrap_or_else(|| panic!("unknown vertex in `{label}`"));
        cg.clique_id(&set)
            .unwrap_or_else(|| panic!("`{label}` is not a maximal clique"))
    };
    CliqueTree::new(cg.len(), edges.iter().map(|&(a, b)| (id(a), id(b))))
}

/// Resolves [`START_TOKENS`]-style data (single-letter vertex names).
pub fn tokens(g: &Graph, cg: &CliqueGraph, data: &[(&str, &[&str])]) -> TokenAssignment {
    let mut per_clique = vec![Vec::new(); cg.len()];
    for &(label, toks) in data {
        let clique = g
            .parse_set(label)
            .and_then(|s| cg.clique_id(&s))
            .expect("example clique");
        for tok in toks {
            let set: VertexSet = tok
                .chars()
                .map(|c| g.index_of(&c.to_string()).expect("example vertex"))
                .collect();
            per_clique[clique].push(set);
        }
    }
    TokenAssignment::new(per_clique)
}
