//! Token assignments and leafage minimization by augmenting paths.
//!
//! A clique tree `T` induces the token assignment `ε_T`: every clique holds
//! one token per tree neighbour, namely the intersection with that
//! neighbour. Tokens alone determine the leaves of `T` and of every vertex
//! subtree, so the minimization works on assignments and only turns them
//! back into trees at the end. Moves are admitted when the single-move
//! result is still realizable by some clique tree.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::clique::{self, CliqueError, CliqueTree};
use crate::graph::{CliqueGraph, Vertex, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TokenError {
    #[error("assignment covers {found} cliques, graph has {expected}")]
    CliqueCountMismatch { expected: usize, found: usize },
    #[error("token at clique {clique} is empty or not a subset of the clique")]
    TokenNotSubset { clique: usize },
    #[error("token is not present at clique {clique}")]
    TokenAbsent { clique: usize },
    #[error("clique id {0} out of range")]
    CliqueOutOfRange(usize),
    #[error("token assignment is not realizable")]
    Unrealizable,
    #[error("input is not a clique tree")]
    NotACliqueTree,
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error(transparent)]
    Clique(#[from] CliqueError),
}

/// Per-clique multiset of vertex sets, each multiset kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TokenAssignment {
    tokens: Vec<Vec<VertexSet>>,
}

impl TokenAssignment {
    pub fn new(mut tokens: Vec<Vec<VertexSet>>) -> Self {
        for multiset in &mut tokens {
            multiset.sort();
        }
        TokenAssignment { tokens }
    }

    pub fn clique_count(&self) -> usize {
        self.tokens.len()
    }

    pub fn tokens(&self, clique: usize) -> &[VertexSet] {
        &self.tokens[clique]
    }

    /// `|τ(C)|`.
    pub fn size(&self, clique: usize) -> usize {
        self.tokens[clique].len()
    }

    pub fn total(&self) -> usize {
        self.tokens.iter().map(Vec::len).sum()
    }

    /// Cliques holding exactly one token; these are the leaves of every
    /// tree realizing the assignment.
    pub fn leaves(&self) -> usize {
        self.tokens.iter().filter(|t| t.len() == 1).count()
    }

    /// `|τ_u(C)|`: tokens at `clique` containing `u`.
    pub fn vertex_size(&self, clique: usize, u: Vertex) -> usize {
        self.tokens[clique]
            .iter()
            .filter(|s| s.contains(&u))
            .count()
    }

    /// Leaf count of `T_u` for any realizing tree: cliques containing `u`
    /// with exactly one token containing `u`.
    pub fn vertex_leaves(&self, cg: &CliqueGraph, u: Vertex) -> usize {
        (0..self.clique_count())
            .filter(|&c| cg.clique(c).contains(&u) && self.vertex_size(c, u) == 1)
            .count()
    }

    fn validate(&self, cg: &CliqueGraph) -> Result<(), TokenError> {
        if self.tokens.len() != cg.len() {
            return Err(TokenError::CliqueCountMismatch {
                expected: cg.len(),
                found: self.tokens.len(),
            });
        }
        for (c, multiset) in self.tokens.iter().enumerate() {
            if multiset
                .iter()
                .any(|s| s.is_empty() || !s.is_subset(cg.clique(c)))
            {
                return Err(TokenError::TokenNotSubset { clique: c });
            }
        }
        Ok(())
    }
}

/// `ε_T(C) = {C ∩ C' : CC' ∈ E(T)}`.
pub fn epsilon_of_tree(cg: &CliqueGraph, t: &CliqueTree) -> TokenAssignment {
    let mut tokens = vec![Vec::new(); cg.len()];
    for &(a, b) in t.edges() {
        let shared = cg.intersection(a, b);
        tokens[a].push(shared.clone());
        tokens[b].push(shared);
    }
    TokenAssignment::new(tokens)
}

/// Token counts per clique; restricted to `τ_u` and to cliques holding `u`
/// when `u` is given.
pub fn token_degrees(
    cg: &CliqueGraph,
    ta: &TokenAssignment,
    u: Option<Vertex>,
) -> BTreeMap<usize, usize> {
    match u {
        None => (0..ta.clique_count()).map(|c| (c, ta.size(c))).collect(),
        Some(u) => (0..ta.clique_count())
            .filter(|&c| cg.clique(c).contains(&u))
            .map(|c| (c, ta.vertex_size(c, u)))
            .collect(),
    }
}

/// Ordered triple `(from, to, token)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TokenMove {
    pub from: usize,
    pub to: usize,
    pub token: VertexSet,
}

/// Moves one instance of the token from `from` to `to`.
pub fn apply_move(ta: &TokenAssignment, mv: &TokenMove) -> Result<TokenAssignment, TokenError> {
    for c in [mv.from, mv.to] {
        if c >= ta.clique_count() {
            return Err(TokenError::CliqueOutOfRange(c));
        }
    }
    let Some(pos) = ta.tokens[mv.from].iter().position(|s| s == &mv.token) else {
        return Err(TokenError::TokenAbsent { clique: mv.from });
    };
    let mut tokens = ta.tokens.clone();
    let moved = tokens[mv.from].remove(pos);
    let target = &mut tokens[mv.to];
    let at = target.partition_point(|s| s < &moved);
    target.insert(at, moved);
    Ok(TokenAssignment { tokens })
}

/// Decides realizability of a token assignment and produces a witness.
pub trait Realizability: Sync {
    fn realize(
        &self,
        cg: &CliqueGraph,
        ta: &TokenAssignment,
    ) -> Result<Option<CliqueTree>, TokenError>;
}

/// Exact search: pairs tokens into tree edges, where edge `CC'` consumes one
/// token equal to `C ∩ C'` at each endpoint.
///
/// Any spanning tree built this way has weight `Σ|S| / 2`; requiring that to
/// be the maximum spanning weight of the clique graph makes every
/// completed pairing a clique tree.
#[derive(Debug, Default, Clone, Copy)]
pub struct BacktrackingRealizer;

struct Search<'a> {
    n: usize,
    /// `inter[c][d]`: interned id of `C_c ∩ C_d` when it is a token value.
    inter: Vec<Vec<Option<usize>>>,
    remaining: Vec<Vec<u32>>,
    comp: Vec<usize>,
    edges: Vec<(usize, usize)>,
    cg: &'a CliqueGraph,
}

impl Search<'_> {
    fn viable(&self, c: usize, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&d| {
            d != c
                && self.inter[c][d] == Some(v)
                && self.remaining[d][v] > 0
                && self.comp[d] != self.comp[c]
        })
    }

    fn run(&mut self) -> Option<CliqueTree> {
        if self.edges.len() + 1 == self.n {
            let t = CliqueTree::new(self.n, self.edges.iter().copied());
            return clique::is_clique_tree(self.cg, &t).then_some(t);
        }
        // most constrained pending token first
        let mut best: Option<(usize, usize, usize)> = None;
        for c in 0..self.n {
            for v in 0..self.remaining[c].len() {
                if self.remaining[c][v] == 0 {
                    continue;
                }
                let options = self.viable(c, v).count();
                if options == 0 {
                    return None;
                }
                if best.is_none_or(|(_, _, k)| options < k) {
                    best = Some((c, v, options));
                }
            }
        }
        let (c, v, _) = best?;
        let partners: Vec<usize> = self.viable(c, v).collect();
        for d in partners {
            let saved = self.comp.clone();
            let (from, to) = (self.comp[d], self.comp[c]);
            for label in &mut self.comp {
                if *label == from {
                    *label = to;
                }
            }
            self.remaining[c][v] -= 1;
            self.remaining[d][v] -= 1;
            self.edges.push((c, d));
            if let Some(t) = self.run() {
                return Some(t);
            }
            self.edges.pop();
            self.remaining[c][v] += 1;
            self.remaining[d][v] += 1;
            self.comp = saved;
        }
        None
    }
}

impl Realizability for BacktrackingRealizer {
    fn realize(
        &self,
        cg: &CliqueGraph,
        ta: &TokenAssignment,
    ) -> Result<Option<CliqueTree>, TokenError> {
        ta.validate(cg)?;
        let n = cg.len();
        if n == 1 {
            return Ok((ta.total() == 0).then(|| CliqueTree::new(1, [])));
        }
        if ta.total() != 2 * (n - 1) || ta.tokens.iter().any(Vec::is_empty) {
            return Ok(None);
        }
        let weight: usize = ta.tokens.iter().flatten().map(BTreeSet::len).sum();
        if weight != 2 * clique::max_spanning_weight(cg) {
            return Ok(None);
        }
        let values: Vec<VertexSet> = {
            let set: BTreeSet<&VertexSet> = ta.tokens.iter().flatten().collect();
            set.into_iter().cloned().collect()
        };
        let id = |s: &VertexSet| values.binary_search(s).ok();
        let mut remaining = vec![vec![0u32; values.len()]; n];
        for (c, multiset) in ta.tokens.iter().enumerate() {
            for s in multiset {
                remaining[c][id(s).expect("interned")] += 1;
            }
        }
        for v in 0..values.len() {
            if remaining.iter().map(|r| r[v]).sum::<u32>() % 2 == 1 {
                return Ok(None);
            }
        }
        let inter = (0..n)
            .map(|c| {
                (0..n)
                    .map(|d| {
                        if c == d {
                            None
                        } else {
                            id(&cg.intersection(c, d))
                        }
                    })
                    .collect()
            })
            .collect();
        let mut search = Search {
            n,
            inter,
            remaining,
            comp: (0..n).collect(),
            edges: Vec::new(),
            cg,
        };
        Ok(search.run())
    }
}

/// Realizability with the default exact search.
pub fn is_realizable(
    cg: &CliqueGraph,
    ta: &TokenAssignment,
) -> Result<Option<CliqueTree>, TokenError> {
    BacktrackingRealizer.realize(cg, ta)
}

/// Chained token moves from a clique with at least three tokens, through
/// cliques with exactly two, ending at a clique with one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AugmentingPath {
    pub moves: Vec<TokenMove>,
}

impl AugmentingPath {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// `C_1, …, C_k`.
    pub fn cliques(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.moves.iter().map(|m| m.from).collect();
        out.extend(self.moves.last().map(|m| m.to));
        out
    }

    pub fn apply(&self, ta: &TokenAssignment) -> Result<TokenAssignment, TokenError> {
        self.moves
            .iter()
            .try_fold(ta.clone(), |acc, mv| apply_move(&acc, mv))
    }

    /// Checks chaining, the size pattern and single-move realizability,
    /// all against `ta` itself.
    pub fn is_admissible_for<R: Realizability>(
        &self,
        cg: &CliqueGraph,
        ta: &TokenAssignment,
        oracle: &R,
    ) -> Result<bool, TokenError> {
        let Some(last) = self.moves.last() else {
            return Ok(false);
        };
        if self.moves.windows(2).any(|w| w[0].to != w[1].from) || ta.size(last.to) != 1 {
            return Ok(false);
        }
        for (j, mv) in self.moves.iter().enumerate() {
            let size = ta.size(mv.from);
            let shape_ok = if j == 0 { size >= 3 } else { size == 2 };
            if !shape_ok
                || !ta.tokens(mv.from).contains(&mv.token)
                || !mv.token.is_subset(cg.clique(mv.to))
            {
                return Ok(false);
            }
            if oracle.realize(cg, &apply_move(ta, mv)?)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Lazily probed single-move feasibility: for `(from, to)`, the least token
/// whose move keeps the assignment realizable.
struct MoveProbe<'a, R> {
    cg: &'a CliqueGraph,
    ta: &'a TokenAssignment,
    oracle: &'a R,
    cache: RefCell<HashMap<(usize, usize), Option<VertexSet>>>,
}

impl<R: Realizability> MoveProbe<'_, R> {
    fn feasible(&self, from: usize, to: usize) -> Result<Option<VertexSet>, TokenError> {
        if let Some(hit) = self.cache.borrow().get(&(from, to)) {
            return Ok(hit.clone());
        }
        let mut found = None;
        let mut tried: Option<&VertexSet> = None;
        for s in self.ta.tokens(from) {
            if tried == Some(s) || !s.is_subset(self.cg.clique(to)) {
                continue;
            }
            tried = Some(s);
            let mv = TokenMove {
                from,
                to,
                token: s.clone(),
            };
            if self
                .oracle
                .realize(self.cg, &apply_move(self.ta, &mv)?)?
                .is_some()
            {
                found = Some(s.clone());
                break;
            }
        }
        self.cache.borrow_mut().insert((from, to), found.clone());
        Ok(found)
    }
}

/// Shortest augmenting path with the lexicographically least clique
/// sequence, or `None` when the assignment admits none.
pub fn shortest_augmenting_path(
    cg: &CliqueGraph,
    ta: &TokenAssignment,
) -> Result<Option<AugmentingPath>, TokenError> {
    shortest_augmenting_path_with(cg, ta, &BacktrackingRealizer)
}

pub fn shortest_augmenting_path_with<R: Realizability>(
    cg: &CliqueGraph,
    ta: &TokenAssignment,
    oracle: &R,
) -> Result<Option<AugmentingPath>, TokenError> {
    if oracle.realize(cg, ta)?.is_none() {
        return Err(TokenError::Unrealizable);
    }
    let n = ta.clique_count();
    let starts: Vec<usize> = (0..n).filter(|&c| ta.size(c) >= 3).collect();
    if starts.is_empty() {
        return Ok(None);
    }
    let probe = MoveProbe {
        cg,
        ta,
        oracle,
        cache: RefCell::new(HashMap::new()),
    };

    // dist[c]: moves from c to the nearest terminal through two-token cliques
    let mut dist = vec![usize::MAX; n];
    let mut layer: Vec<usize> = (0..n).filter(|&c| ta.size(c) == 1).collect();
    for &c in &layer {
        dist[c] = 0;
    }
    let mut depth = 0;
    let mut interior: Vec<usize> = (0..n).filter(|&c| ta.size(c) == 2).collect();
    let length = loop {
        if layer.is_empty() {
            return Ok(None);
        }
        let mut reached_start = false;
        for &s in &starts {
            for &w in &layer {
                if probe.feasible(s, w)?.is_some() {
                    reached_start = true;
                    break;
                }
            }
            if reached_start {
                break;
            }
        }
        if reached_start {
            break depth + 1;
        }
        let mut next = Vec::new();
        for &c in &interior {
            for &w in &layer {
                if probe.feasible(c, w)?.is_some() {
                    next.push(c);
                    break;
                }
            }
        }
        for &c in &next {
            dist[c] = depth + 1;
        }
        interior.retain(|c| dist[*c] == usize::MAX);
        layer = next;
        depth += 1;
    };

    // greedy walk: least clique id at every step among shortest completions
    let mut moves = Vec::with_capacity(length);
    let mut current = None;
    for &s in &starts {
        for w in (0..n).filter(|&w| dist[w] == length - 1) {
            if probe.feasible(s, w)?.is_some() {
                current = Some(s);
                break;
            }
        }
        if current.is_some() {
            break;
        }
    }
    let mut current = current.expect("a start reaches the last layer");
    for remaining in (0..length).rev() {
        let mut chosen = None;
        for w in (0..n).filter(|&w| dist[w] == remaining && w != current) {
            if let Some(token) = probe.feasible(current, w)? {
                chosen = Some((w, token));
                break;
            }
        }
        let (w, token) = chosen.expect("distance labels guarantee a continuation");
        moves.push(TokenMove {
            from: current,
            to: w,
            token,
        });
        current = w;
    }
    Ok(Some(AugmentingPath { moves }))
}

/// One pass of the augmentation loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Iteration {
    pub path: AugmentingPath,
    pub leaves_before: usize,
    pub leaves_after: usize,
    /// A clique tree realizing the assignment after this pass.
    pub tree: CliqueTree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeafageRun {
    pub tree: CliqueTree,
    pub iterations: Vec<Iteration>,
}

impl LeafageRun {
    pub fn leafage(&self) -> usize {
        self.tree.host_leaves()
    }
}

/// Applies shortest augmenting paths until none is left. The result has
/// the minimum number of leaves over all clique trees, and no vertex
/// subtree gains leaves along the way.
pub fn minimize_leafage(cg: &CliqueGraph, t: &CliqueTree) -> Result<LeafageRun, TokenError> {
    minimize_leafage_with(cg, t, &BacktrackingRealizer)
}

pub fn minimize_leafage_with<R: Realizability>(
    cg: &CliqueGraph,
    t: &CliqueTree,
    oracle: &R,
) -> Result<LeafageRun, TokenError> {
    if clique::verify_clique_tree(cg, t)?.is_some() {
        return Err(TokenError::NotACliqueTree);
    }
    let initial_leaves = t.host_leaves();
    let mut ta = epsilon_of_tree(cg, t);
    let mut tree = t.clone();
    let mut iterations = Vec::new();
    while let Some(path) = shortest_augmenting_path_with(cg, &ta, oracle)? {
        let before = ta.leaves();
        let next = path.apply(&ta)?;
        let Some(realized) = oracle.realize(cg, &next)? else {
            return Err(TokenError::InvariantViolated(format!(
                "assignment after augmenting path {:?} is not realizable",
                path.cliques()
            )));
        };
        let after = next.leaves();
        if after + 1 != before {
            return Err(TokenError::InvariantViolated(format!(
                "leaf count went {before} -> {after}"
            )));
        }
        if iterations.len() + 3 > initial_leaves.max(2) {
            return Err(TokenError::InvariantViolated(
                "more iterations than leaves - 2".into(),
            ));
        }
        ta = next;
        tree = realized.clone();
        iterations.push(Iteration {
            path,
            leaves_before: before,
            leaves_after: after,
            tree: realized,
        });
    }
    Ok(LeafageRun { tree, iterations })
}
