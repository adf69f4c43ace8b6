//! Leafage and vertex leafage of chordal graphs.
//!
//! Graphs are parsed from a small edge-list format, checked for chordality,
//! and turned into clique trees. [`tokens::minimize_leafage`] finds a clique
//! tree with the fewest leaves, [`vertex_leafage`] bounds the leaves of the
//! vertex subtrees, [`gadget`] holds the NAE-3-SAT reduction and [`oracle`]
//! is an exhaustive cross-check for small inputs.

pub mod clique;
pub mod example;
pub mod export;
pub mod gadget;
pub mod graph;
pub mod model;
pub mod oracle;
pub mod tokens;
pub mod tree;
pub mod vertex_leafage;

pub use clique::{build_clique_tree, verify_clique_tree, CliqueError, CliqueTree, Violation};
pub use gadget::{
    build_gadget, normalize_star, parse_clauses, solution_to_tree, tree_to_solution,
    verify_reduction, GadgetError, GadgetGraph, NaeInstance, ReductionReport,
};
pub use graph::{
    check_chordal, clique_graph, maximal_cliques, parse_graph, Chordality, CliqueGraph, Graph,
    GraphError, MaximalClique, PerfectEliminationOrder, Vertex, VertexSet,
};
pub use model::{
    contract_to_minimal, leaf_report, model_from_clique_tree, LeafReport, ModelError, TreeModel,
};
pub use oracle::{
    enumerate_clique_trees, oracle_optima, random_chordal, OracleError, OracleResult,
};
pub use tokens::{
    apply_move, epsilon_of_tree, is_realizable, minimize_leafage, shortest_augmenting_path,
    token_degrees, AugmentingPath, BacktrackingRealizer, LeafageRun, Realizability,
    TokenAssignment, TokenError, TokenMove,
};
pub use vertex_leafage::{
    clique_tree_with_branching, simultaneous_optimum, vertex_leafage_bounded, BranchEdgeSet,
    BudgetMode, SimultaneousOptimum, VlCertificate, VlError,
};
