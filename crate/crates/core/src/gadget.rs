//! Reduction from positive NOT-ALL-EQUAL-k-SAT to vertex leafage of split
//! graphs.
//!
//! Each clause `C_j` becomes a clique vertex `y_j`, each variable `v_i` an
//! independent vertex adjacent to the `y_j` of its clauses, and two extra
//! independent vertices `z1`, `z2` see every `y_j`. The graph has vertex
//! leafage at most `k + 1`, and at most `k` exactly when the instance has a
//! not-all-equal solution.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::clique::{self, CliqueTree};
use crate::graph::{CliqueGraph, Graph, GraphError};
use crate::oracle::{self, OracleError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("clause {clause} has {found} variables, expected {expected}")]
    WrongWidth {
        clause: usize,
        expected: usize,
        found: usize,
    },
    #[error("clause {clause} repeats a variable")]
    RepeatedVariable { clause: usize },
    #[error("variable {0} appears in no clause")]
    UnusedVariable(String),
    #[error("clause width {0} is below 3")]
    WidthTooSmall(usize),
    #[error("every clause containing {dominated} also contains {dominating}")]
    Dominated {
        dominated: String,
        dominating: String,
    },
    #[error("not a not-all-equal solution: clause {clause} is monochromatic")]
    NotASolution { clause: usize },
    #[error("tree is not a clique tree of the gadget graph")]
    NotACliqueTree,
    #[error("a vertex subtree has {found} leaves, more than {k}")]
    TooManyLeaves { k: usize, found: usize },
    #[error("unexpected maximal cliques in the gadget graph")]
    CliqueMismatch,
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Positive, `k`-uniform clause set. Clauses are sorted variable indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NaeInstance {
    k: usize,
    variables: Vec<String>,
    clauses: Vec<Vec<usize>>,
}

impl NaeInstance {
    pub fn new(
        k: usize,
        variables: Vec<String>,
        clauses: Vec<Vec<usize>>,
    ) -> Result<Self, GadgetError> {
        let mut sorted = Vec::with_capacity(clauses.len());
        for (j, clause) in clauses.into_iter().enumerate() {
            if clause.len() != k {
                return Err(GadgetError::WrongWidth {
                    clause: j,
                    expected: k,
                    found: clause.len(),
                });
            }
            let set: BTreeSet<usize> = clause.into_iter().collect();
            if set.len() != k {
                return Err(GadgetError::RepeatedVariable { clause: j });
            }
            if set.iter().any(|&i| i >= variables.len()) {
                return Err(GadgetError::Malformed {
                    line: 0,
                    message: format!("clause {j} names an unknown variable"),
                });
            }
            sorted.push(set.into_iter().collect());
        }
        Ok(NaeInstance {
            k,
            variables,
            clauses: sorted,
        })
    }

    /// Variables are numbered by first appearance.
    pub fn from_clauses<S: AsRef<str>>(clauses: &[Vec<S>]) -> Result<Self, GadgetError> {
        let k = clauses.first().map_or(3, Vec::len);
        let mut variables: Vec<String> = Vec::new();
        let mut index = BTreeMap::new();
        let mut out = Vec::new();
        for clause in clauses {
            let mut ids = Vec::new();
            for name in clause {
                let name = name.as_ref();
                let id = *index.entry(name.to_string()).or_insert_with(|| {
                    variables.push(name.to_string());
                    variables.len() - 1
                });
                ids.push(id);
            }
            out.push(ids);
        }
        NaeInstance::new(k, variables, out)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn clauses(&self) -> &[Vec<usize>] {
        &self.clauses
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty() && self.clauses.is_empty()
    }

    /// Indices of the clauses containing variable `i`.
    pub fn occurrences(&self, i: usize) -> BTreeSet<usize> {
        (0..self.clauses.len())
            .filter(|&j| self.clauses[j].contains(&i))
            .collect()
    }

    /// First ordered pair `(i, i⁺)` where every clause holding `v_i` also
    /// holds `v_{i⁺}`.
    pub fn domination(&self) -> Option<(usize, usize)> {
        let occ: Vec<BTreeSet<usize>> = (0..self.variables.len())
            .map(|i| self.occurrences(i))
            .collect();
        (0..occ.len())
            .flat_map(|i| (0..occ.len()).map(move |p| (i, p)))
            .find(|&(i, p)| i != p && occ[i].is_subset(&occ[p]))
    }

    pub fn satisfies_star(&self) -> bool {
        self.domination().is_none()
    }

    /// Every clause meets `s` and leaves something outside it.
    pub fn is_solution(&self, s: &BTreeSet<usize>) -> bool {
        self.first_violation(s).is_none()
    }

    fn first_violation(&self, s: &BTreeSet<usize>) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| c.iter().all(|i| s.contains(i)) || c.iter().all(|i| !s.contains(i)))
    }

    /// Least solution by bitmask over variable indices.
    pub fn brute_force_solution(&self) -> Option<BTreeSet<usize>> {
        let n = self.variables.len();
        assert!(n < 64, "brute force is for small instances");
        (0u64..1 << n)
            .map(|mask| {
                (0..n)
                    .filter(|&i| mask >> i & 1 == 1)
                    .collect::<BTreeSet<usize>>()
            })
            .find(|s| self.is_solution(s))
    }

    pub fn solution_names(&self, s: &BTreeSet<usize>) -> Vec<String> {
        s.iter().map(|&i| self.variables[i].clone()).collect()
    }

    fn without(&self, i: usize) -> NaeInstance {
        let clauses: Vec<Vec<usize>> = self
            .clauses
            .iter()
            .filter(|c| !c.contains(&i))
            .map(|c| c.iter().map(|&x| if x > i { x - 1 } else { x }).collect())
            .collect();
        let mut variables = self.variables.clone();
        variables.remove(i);
        NaeInstance {
            k: self.k,
            variables,
            clauses,
        }
    }

    /// Plain text form: `k` header and one clause per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("k {}\n", self.k);
        for c in &self.clauses {
            let names: Vec<&str> = c.iter().map(|&i| self.variables[i].as_str()).collect();
            out.push_str(&names.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Parses a clause file: optional `k <int>` header, `#` comments, one
/// clause of whitespace-separated variable names per line.
pub fn parse_clauses(text: &str) -> Result<NaeInstance, GadgetError> {
    let mut k = None;
    let mut clauses: Vec<Vec<String>> = Vec::new();
    let mut lines = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        // `k <int>` before any clause is the width header
        if let (["k", width], true) = (words.as_slice(), clauses.is_empty() && k.is_none()) {
            match width.parse::<usize>() {
                Ok(v) => k = Some(v),
                Err(_) => {
                    return Err(GadgetError::Malformed {
                        line: n + 1,
                        message: "bad `k` header".into(),
                    })
                }
            }
            continue;
        }
        if let Some(bad) = words
            .iter()
            .find(|w| !w.chars().all(|c| c.is_ascii_alphanumeric() || c == '_'))
        {
            return Err(GadgetError::Malformed {
                line: n + 1,
                message: format!("bad variable name {bad:?}"),
            });
        }
        clauses.push(words.iter().map(|w| w.to_string()).collect());
        lines.push(n + 1);
    }
    let k = k.or_else(|| clauses.first().map(Vec::len)).unwrap_or(3);
    if let Some(j) = clauses.iter().position(|c| c.len() != k) {
        return Err(GadgetError::Malformed {
            line: lines[j],
            message: format!("clause has {} variables, expected {k}", clauses[j].len()),
        });
    }
    let mut inst = NaeInstance::from_clauses(&clauses)?;
    inst.k = k;
    Ok(inst)
}

/// Removes dominated variables together with their clauses until none is
/// left, scanning ordered pairs canonically and restarting after each
/// removal; variables left in no clause are dropped at the end.
pub fn normalize_star(inst: &NaeInstance) -> NaeInstance {
    let mut cur = inst.clone();
    while let Some((i, _)) = cur.domination() {
        cur = cur.without(i);
    }
    while let Some(i) = (0..cur.variables.len()).find(|&i| cur.occurrences(i).is_empty()) {
        cur = cur.without(i);
    }
    cur
}

/// The split graph of an instance together with its named cliques.
#[derive(Debug, Clone)]
pub struct GadgetGraph {
    pub instance: NaeInstance,
    pub graph: Graph,
    pub clique_graph: CliqueGraph,
    /// Clique ids of `A`, `B` and `Q_1 … Q_n`.
    pub a: usize,
    pub b: usize,
    pub q: Vec<usize>,
}

impl GadgetGraph {
    /// `"A"`, `"B"`, `"Q1"`, … keyed to clique ids.
    pub fn clique_names(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::from([("A".to_string(), self.a), ("B".to_string(), self.b)]);
        for (i, &c) in self.q.iter().enumerate() {
            out.insert(format!("Q{}", i + 1), c);
        }
        out
    }

    pub fn variable_vertex(&self, i: usize) -> usize {
        self.graph
            .index_of(&variable_name(&self.instance.variables[i]))
            .expect("variable vertex")
    }
}

pub fn variable_name(v: &str) -> String {
    format!("v_{v}")
}

pub fn clause_name(j: usize) -> String {
    format!("y{}", j + 1)
}

/// Checked construction: `k ≥ 3`, every variable used, no domination.
pub fn build_gadget(inst: &NaeInstance) -> Result<GadgetGraph, GadgetError> {
    if inst.k < 3 {
        return Err(GadgetError::WidthTooSmall(inst.k));
    }
    if let Some(i) = (0..inst.variables.len()).find(|&i| inst.occurrences(i).is_empty()) {
        return Err(GadgetError::UnusedVariable(inst.variables[i].clone()));
    }
    if let Some((i, p)) = inst.domination() {
        return Err(GadgetError::Dominated {
            dominated: inst.variables[i].clone(),
            dominating: inst.variables[p].clone(),
        });
    }
    build_gadget_unchecked(inst)
}

/// Construction without the domination check; only requires every
/// variable to occur (otherwise the graph is disconnected).
pub fn build_gadget_unchecked(inst: &NaeInstance) -> Result<GadgetGraph, GadgetError> {
    if let Some(i) = (0..inst.variables.len()).find(|&i| inst.occurrences(i).is_empty()) {
        return Err(GadgetError::UnusedVariable(inst.variables[i].clone()));
    }
    let m = inst.clauses.len();
    let ys: Vec<String> = (0..m).map(clause_name).collect();
    let mut edges: Vec<(String, String)> = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            edges.push((ys[a].clone(), ys[b].clone()));
        }
        for z in ["z1", "z2"] {
            edges.push((z.to_string(), ys[a].clone()));
        }
        for &i in &inst.clauses[a] {
            edges.push((variable_name(&inst.variables[i]), ys[a].clone()));
        }
    }
    let mut names: Vec<String> = inst.variables.iter().map(|v| variable_name(v)).collect();
    names.extend(ys.iter().cloned());
    names.extend(["z1".to_string(), "z2".to_string()]);
    let graph = Graph::new(names, edges)?;
    let clique_graph = CliqueGraph::from_graph(&graph)?;

    let idx = |name: &str| graph.index_of(name).expect("gadget vertex");
    let y_set: BTreeSet<usize> = ys.iter().map(|y| idx(y)).collect();
    let with = |extra: usize, ys: BTreeSet<usize>| {
        let mut s = ys;
        s.insert(extra);
        clique_graph.clique_id(&s)
    };
    let a = with(idx("z1"), y_set.clone());
    let b = with(idx("z2"), y_set.clone());
    let q: Option<Vec<usize>> = (0..inst.variables.len())
        .map(|i| {
            let ys = inst
                .occurrences(i)
                .into_iter()
                .map(|j| idx(&ys[j]))
                .collect();
            with(idx(&variable_name(&inst.variables[i])), ys)
        })
        .collect();
    match (a, b, q) {
        (Some(a), Some(b), Some(q)) if clique_graph.len() == inst.variables.len() + 2 => {
            Ok(GadgetGraph {
                instance: inst.clone(),
                graph,
                clique_graph,
                a,
                b,
                q,
            })
        }
        _ => Err(GadgetError::CliqueMismatch),
    }
}

/// Tree with edges `AB`, `AQ_i` for `v_i ∈ S` and `BQ_i` otherwise.
pub fn solution_to_tree(gg: &GadgetGraph, s: &BTreeSet<usize>) -> Result<CliqueTree, GadgetError> {
    if let Some(clause) = gg.instance.first_violation(s) {
        return Err(GadgetError::NotASolution { clause });
    }
    let mut edges = vec![(gg.a, gg.b)];
    for (i, &q) in gg.q.iter().enumerate() {
        edges.push((if s.contains(&i) { gg.a } else { gg.b }, q));
    }
    let t = CliqueTree::new(gg.clique_graph.len(), edges);
    if !clique::is_clique_tree(&gg.clique_graph, &t) {
        return Err(GadgetError::InvariantViolated(
            "solution tree is not a clique tree".into(),
        ));
    }
    Ok(t)
}

/// `S = {v_i : AQ_i ∈ E(T)}` for a clique tree whose subtrees all have at
/// most `k` leaves.
pub fn tree_to_solution(gg: &GadgetGraph, t: &CliqueTree) -> Result<BTreeSet<usize>, GadgetError> {
    if !matches!(clique::verify_clique_tree(&gg.clique_graph, t), Ok(None)) {
        return Err(GadgetError::NotACliqueTree);
    }
    let worst = t.max_vertex_leaves(&gg.clique_graph);
    if worst > gg.instance.k {
        return Err(GadgetError::TooManyLeaves {
            k: gg.instance.k,
            found: worst,
        });
    }
    let s: BTreeSet<usize> = (0..gg.q.len())
        .filter(|&i| t.has_edge(gg.a, gg.q[i]))
        .collect();
    if let Some(clause) = gg.instance.first_violation(&s) {
        return Err(GadgetError::InvariantViolated(format!(
            "recovered set fails clause {clause}"
        )));
    }
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub k: usize,
    pub variables: usize,
    pub clauses: usize,
    pub normalized_variables: usize,
    pub normalized_clauses: usize,
    /// Brute force on the input instance.
    pub solvable: bool,
    pub solution: Option<Vec<String>>,
    pub normalized_solvable: bool,
    /// `None` when normalization leaves nothing to build.
    pub vertex_leafage: Option<usize>,
    pub clique_trees: Option<usize>,
    /// `vl ≤ k + 1`.
    pub upper_bound_holds: bool,
    /// `vl ≤ k` iff solvable.
    pub equivalence_holds: bool,
    /// `solution_to_tree` then `tree_to_solution` returns the solution.
    pub round_trip_holds: bool,
}

impl ReductionReport {
    pub fn holds(&self) -> bool {
        self.upper_bound_holds
            && self.equivalence_holds
            && self.round_trip_holds
            && self.solvable == self.normalized_solvable
    }
}

/// Normalizes, builds the gadget and compares brute-force solvability with
/// the exact vertex leafage.
pub fn verify_reduction(inst: &NaeInstance, limit: usize) -> Result<ReductionReport, GadgetError> {
    let solution = inst.brute_force_solution();
    let normalized = normalize_star(inst);
    let normalized_solution = normalized.brute_force_solution();
    let mut report = ReductionReport {
        k: inst.k,
        variables: inst.variables.len(),
        clauses: inst.clauses.len(),
        normalized_variables: normalized.variables.len(),
        normalized_clauses: normalized.clauses.len(),
        solvable: solution.is_some(),
        solution: solution.as_ref().map(|s| inst.solution_names(s)),
        normalized_solvable: normalized_solution.is_some(),
        vertex_leafage: None,
        clique_trees: None,
        upper_bound_holds: true,
        equivalence_holds: normalized_solution.is_some(),
        round_trip_holds: true,
    };
    if normalized.clauses.is_empty() {
        return Ok(report);
    }
    let gg = build_gadget(&normalized)?;
    let result = oracle::oracle_optima_cg(&gg.clique_graph, limit)?;
    let vl = result.vertex_leafage;
    report.vertex_leafage = Some(vl);
    report.clique_trees = Some(result.tree_count);
    report.upper_bound_holds = vl <= inst.k + 1;
    report.equivalence_holds = (vl <= inst.k) == normalized_solution.is_some();
    if let Some(s) = &normalized_solution {
        let t = solution_to_tree(&gg, s)?;
        report.round_trip_holds = tree_to_solution(&gg, &t).as_ref() == Ok(s);
    }
    Ok(report)
}

/// All positive NAE-3-SAT instances on variables `x1 … xn` with `m`
/// distinct clauses (clause sets in lexicographic order) that use every
/// variable and satisfy the domination-free condition.
pub fn star_instances(n: usize, m: usize) -> Vec<NaeInstance> {
    let triples: Vec<Vec<usize>> = (0..n)
        .flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| vec![a, b, c])))
        .collect();
    let variables: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut out = Vec::new();
    let mut pick = Vec::new();
    fn go(
        triples: &[Vec<usize>],
        start: usize,
        m: usize,
        pick: &mut Vec<usize>,
        variables: &[String],
        out: &mut Vec<NaeInstance>,
    ) {
        if pick.len() == m {
            let clauses: Vec<Vec<usize>> = pick.iter().map(|&t| triples[t].clone()).collect();
            let inst = NaeInstance {
                k: 3,
                variables: variables.to_vec(),
                clauses,
            };
            let used = (0..variables.len()).all(|i| !inst.occurrences(i).is_empty());
            if used && inst.satisfies_star() {
                out.push(inst);
            }
            return;
        }
        for t in start..triples.len() {
            pick.push(t);
            go(triples, t + 1, m, pick, variables, out);
            pick.pop();
        }
    }
    go(&triples, 0, m, &mut pick, &variables, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(clauses: &[&[&str]]) -> NaeInstance {
        let owned: Vec<Vec<&str>> = clauses.iter().map(|c| c.to_vec()).collect();
        NaeInstance::from_clauses(&owned).unwrap()
    }

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    fn star_free() -> NaeInstance {
        inst(&[
            &["v1", "v2", "v3"],
            &["v1", "v4", "v5"],
            &["v2", "v4", "v6"],
            &["v3", "v5", "v6"],
        ])
    }

    #[test]
    fn star_free_instance_is_a_fixed_point() {
        let i = star_free();
        assert!(i.satisfies_star());
        assert_eq!(normalize_star(&i), i);
    }

    #[test]
    fn domination_empties_the_instance() {
        let i = inst(&[&["v1", "v2", "v3"], &["v1", "v2", "v4"]]);
        assert_eq!(i.domination(), Some((0, 1)));
        let n = normalize_star(&i);
        assert!(n.is_empty());
    }

    #[test]
    fn three_overlapping_clauses_are_not_star_free() {
        // v3 is in every clause, so it dominates v1
        let i = inst(&[
            &["v1", "v2", "v3"],
            &["v2", "v3", "v4"],
            &["v1", "v3", "v4"],
        ]);
        assert_eq!(i.domination(), Some((0, 2)));
        assert!(normalize_star(&i).is_empty());
    }

    #[test]
    fn single_clause_gadget() {
        let i = inst(&[&["v1", "v2", "v3"]]);
        assert!(matches!(
            build_gadget(&i),
            Err(GadgetError::Dominated { .. })
        ));
        let gg = build_gadget_unchecked(&i).unwrap();
        assert_eq!(gg.graph.vertex_count(), 6);
        let y1 = gg.graph.index_of("y1").unwrap();
        let nbrs: Vec<&str> = gg
            .graph
            .neighbors(y1)
            .iter()
            .map(|&v| gg.graph.name(v))
            .collect();
        assert_eq!(nbrs, ["v_v1", "v_v2", "v_v3", "z1", "z2"]);
    }

    #[test]
    fn membership_rule_for_q() {
        let i = inst(&[&["v1", "v2", "v3"], &["v2", "v3", "v4"]]);
        let gg = build_gadget_unchecked(&i).unwrap();
        assert_eq!(
            gg.graph.set_label(gg.clique_graph.clique(gg.q[1])),
            "v_v2,y1,y2"
        );
        assert!(crate::graph::check_chordal(&gg.graph).is_chordal());
    }

    #[test]
    fn split_structure() {
        let gg = build_gadget(&star_free()).unwrap();
        let g = &gg.graph;
        let ys: Vec<usize> = (0..4)
            .map(|j| g.index_of(&clause_name(j)).unwrap())
            .collect();
        assert!(g.is_clique(&ys));
        let independent: Vec<usize> = g.vertices().filter(|v| !ys.contains(v)).collect();
        for (x, &u) in independent.iter().enumerate() {
            assert!(independent[x + 1..].iter().all(|&w| !g.adjacent(u, w)));
        }
        assert_eq!(gg.clique_graph.len(), 6 + 2);
        assert_eq!(gg.clique_names().len(), 8);
    }

    #[test]
    fn solution_tree_from_two_clauses() {
        let i = inst(&[&["v1", "v2", "v3"], &["v2", "v3", "v4"]]);
        let gg = build_gadget_unchecked(&i).unwrap();
        let s = set(&[1]);
        assert!(i.is_solution(&s));
        let t = solution_to_tree(&gg, &s).unwrap();
        let mut expected = vec![
            (gg.a, gg.b),
            (gg.a, gg.q[1]),
            (gg.b, gg.q[0]),
            (gg.b, gg.q[2]),
            (gg.b, gg.q[3]),
        ];
        expected
            .iter_mut()
            .for_each(|e| *e = crate::tree::edge(e.0, e.1));
        expected.sort();
        assert_eq!(t.edges(), expected);
        assert!(t.max_vertex_leaves(&gg.clique_graph) <= 3);
        for v in 0..4 {
            assert_eq!(t.vertex_leaves(&gg.clique_graph, gg.variable_vertex(v)), 0);
        }
    }

    #[test]
    fn monochromatic_clause_is_rejected() {
        let i = star_free();
        let gg = build_gadget(&i).unwrap();
        assert_eq!(
            solution_to_tree(&gg, &set(&[0, 1, 2])),
            Err(GadgetError::NotASolution { clause: 0 })
        );
    }

    #[test]
    fn round_trip_on_every_solution() {
        let i = star_free();
        let gg = build_gadget(&i).unwrap();
        let mut seen = 0;
        for mask in 0u32..64 {
            let s: BTreeSet<usize> = (0..6).filter(|b| mask >> b & 1 == 1).collect();
            if i.is_solution(&s) {
                seen += 1;
                let t = solution_to_tree(&gg, &s).unwrap();
                assert_eq!(tree_to_solution(&gg, &t).unwrap(), s);
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn oversized_subtree_is_rejected() {
        let i = star_free();
        let gg = build_gadget(&i).unwrap();
        // hang every Q on A: each y subtree gets k Q leaves plus B
        let mut edges = vec![(gg.a, gg.b)];
        edges.extend(gg.q.iter().map(|&q| (gg.a, q)));
        let t = CliqueTree::new(gg.clique_graph.len(), edges);
        assert_eq!(
            tree_to_solution(&gg, &t),
            Err(GadgetError::TooManyLeaves { k: 3, found: 4 })
        );
    }

    #[test]
    fn reduction_on_dominated_instance() {
        let i = inst(&[&["v1", "v2", "v3"], &["v2", "v3", "v4"]]);
        let r = verify_reduction(&i, oracle::DEFAULT_LIMIT).unwrap();
        assert!(r.solvable);
        assert_eq!(r.vertex_leafage, None);
        assert!(r.holds());
    }

    #[test]
    fn reduction_on_star_free_instance() {
        let r = verify_reduction(&star_free(), oracle::DEFAULT_LIMIT).unwrap();
        assert!(r.holds());
        let vl = r.vertex_leafage.unwrap();
        assert!(vl == 3 || vl == 4);
        assert_eq!(vl <= 3, r.solvable);
    }

    #[test]
    fn clause_file_parsing() {
        let i = parse_clauses("# demo\nk 3\na b c\nb c d  # trailing\n").unwrap();
        assert_eq!(i.k(), 3);
        assert_eq!(i.variables(), ["a", "b", "c", "d"]);
        assert_eq!(i.clauses(), [vec![0, 1, 2], vec![1, 2, 3]]);
        assert_eq!(parse_clauses(&i.to_text()).unwrap(), i);
        assert!(matches!(
            parse_clauses("a b c\nd e\n"),
            Err(GadgetError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_clauses("a a b\n"),
            Err(GadgetError::RepeatedVariable { clause: 0 })
        ));
    }

    #[test]
    fn sweep_instances_are_star_free() {
        let all = star_instances(6, 4);
        assert!(!all.is_empty());
        assert!(all.iter().all(NaeInstance::satisfies_star));
        assert!(star_instances(4, 1).is_empty());
    }

    #[test]
    fn fano_plane_is_unsolvable_and_reaches_the_bound() {
        let fano = inst(&[
            &["x1", "x2", "x3"],
            &["x1", "x4", "x5"],
            &["x1", "x6", "x7"],
            &["x2", "x4", "x6"],
            &["x2", "x5", "x7"],
            &["x3", "x4", "x7"],
            &["x3", "x5", "x6"],
        ]);
        assert!(fano.satisfies_star());
        let r = verify_reduction(&fano, oracle::DEFAULT_LIMIT).unwrap();
        assert!(!r.solvable);
        assert_eq!(r.vertex_leafage, Some(4));
        assert!(r.holds());
    }
}
