//! Simple undirected graphs with 1-based vertex labels.
//!
//! Vertices are `1..=n`; edges are unordered pairs stored in normalized
//! `(min, max)` form. There are no self-loops and no parallel edges. All
//! mutating operations return a fresh graph; the label conventions after a
//! vertex deletion are captured by [`LabelMap`].

pub mod io;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("edge {{{i},{j}}} not present")]
    MissingEdge { i: usize, j: usize },
    #[error("edge {{{i},{j}}} already present")]
    DuplicateEdge { i: usize, j: usize },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Sorted set of vertex labels. Labels are validated against a particular
/// graph only at the point of use.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct VertexSet(BTreeSet<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        VertexSet(it.into_iter().collect())
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.0.insert(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn min(&self) -> Option<usize> {
        self.0.first().copied()
    }

    /// Members in ascending order.
    pub fn to_vec(&self) -> Vec<usize> {
        self.0.iter().copied().collect()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        VertexSet(it.into_iter().collect())
    }
}

/// Relabeling produced by a vertex deletion: new labels are `1..=n-1`, old
/// labels are the survivors in their original order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMap {
    old_of_new: Vec<usize>,
}

impl LabelMap {
    fn identity_without(n: usize, deleted: usize) -> Self {
        let old_of_new = (1..=n).filter(|&v| v != deleted).collect();
        LabelMap { old_of_new }
    }

    pub fn old_label(&self, new: usize) -> usize {
        self.old_of_new[new - 1]
    }

    pub fn new_label(&self, old: usize) -> Option<usize> {
        self.old_of_new.iter().position(|&v| v == old).map(|p| p + 1)
    }

    pub fn len(&self) -> usize {
        self.old_of_new.len()
    }

    pub fn is_empty(&self) -> bool {
        self.old_of_new.is_empty()
    }
}

/// Undirected graph on vertices `1..=n`.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adj: Vec<BTreeSet<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.edges.len(), self.edges)
    }
}

fn norm(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            edges: BTreeSet::new(),
            adj: vec![BTreeSet::new(); n + 1],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n);
        for &(i, j) in edges {
            g.check_vertex(i)?;
            g.check_vertex(j)?;
            if i == j {
                return Err(GraphError::SelfLoop { v: i });
            }
            g.insert_edge(i, j);
        }
        g.assert_invariants();
        Ok(g)
    }

    /// Cycle `1-2-...-n-1`. Requires `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
        edges.push((n, 1));
        Graph::from_edges(n, &edges).expect("cycle edges are valid")
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                edges.push((i, j));
            }
        }
        Graph::from_edges(n, &edges).expect("complete-graph edges are valid")
    }

    /// Path `1-2-...-n`.
    pub fn path(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).expect("path edges are valid")
    }

    /// Disjoint union; the vertices of `other` are shifted past `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut edges: Vec<(usize, usize)> = self.edges.iter().copied().collect();
        edges.extend(other.edges.iter().map(|&(i, j)| (i + self.n, j + self.n)));
        Graph::from_edges(n, &edges).expect("shifted edges are valid")
    }

    fn insert_edge(&mut self, i: usize, j: usize) {
        let (a, b) = norm(i, j);
        if self.edges.insert((a, b)) {
            self.adj[a].insert(b);
            self.adj[b].insert(a);
        }
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v == 0 || v > self.n {
            Err(GraphError::VertexOutOfRange { v, n: self.n })
        } else {
            Ok(())
        }
    }

    fn assert_invariants(&self) {
        debug_assert!(self.adj.len() == self.n + 1);
        debug_assert!(self.edges.iter().all(|&(i, j)| i < j && i >= 1 && j <= self.n));
        debug_assert!(self
            .edges
            .iter()
            .all(|&(i, j)| self.adj[i].contains(&j) && self.adj[j].contains(&i)));
        debug_assert_eq!(
            self.adj.iter().map(|s| s.len()).sum::<usize>(),
            2 * self.edges.len()
        );
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let (a, b) = norm(i, j);
        self.edges.contains(&(a, b))
    }

    /// Edges in normalized `(min,max)` form, lexicographically sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    pub fn add_edge(&self, i: usize, j: usize) -> Result<Graph, GraphError> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(GraphError::SelfLoop { v: i });
        }
        if self.has_edge(i, j) {
            return Err(GraphError::DuplicateEdge { i: i.min(j), j: i.max(j) });
        }
        let mut g = self.clone();
        g.insert_edge(i, j);
        g.assert_invariants();
        Ok(g)
    }

    pub fn delete_edge(&self, i: usize, j: usize) -> Result<Graph, GraphError> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if !self.has_edge(i, j) {
            return Err(GraphError::MissingEdge { i: i.min(j), j: i.max(j) });
        }
        let (a, b) = norm(i, j);
        let mut g = self.clone();
        g.edges.remove(&(a, b));
        g.adj[a].remove(&b);
        g.adj[b].remove(&a);
        g.assert_invariants();
        Ok(g)
    }

    /// Removes vertex `v`; survivors are renumbered to `1..=n-1` preserving
    /// their relative order, as described by the returned [`LabelMap`].
    pub fn delete_vertex(&self, v: usize) -> Result<(Graph, LabelMap), GraphError> {
        self.check_vertex(v)?;
        let map = LabelMap::identity_without(self.n, v);
        let relabel = |u: usize| if u < v { u } else { u - 1 };
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(i, j)| i != v && j != v)
            .map(|&(i, j)| (relabel(i), relabel(j)))
            .collect();
        let g = Graph::from_edges(self.n - 1, &edges).expect("relabeled edges are valid");
        Ok((g, map))
    }

    /// Subgraph induced by `s`; vertices are renumbered `1..=|s|` in ascending
    /// label order.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<Graph, GraphError> {
        let verts = s.to_vec();
        for &v in &verts {
            self.check_vertex(v)?;
        }
        let mut new_label = vec![0usize; self.n + 1];
        for (k, &v) in verts.iter().enumerate() {
            new_label[v] = k + 1;
        }
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(i, j)| new_label[i] != 0 && new_label[j] != 0)
            .map(|&(i, j)| (new_label[i], new_label[j]))
            .collect();
        Ok(Graph::from_edges(verts.len(), &edges).expect("induced edges are valid"))
    }

    /// Connected components, sorted by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n + 1];
        let mut comps = Vec::new();
        for start in 1..=self.n {
            if seen[start] {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// Does `s` induce a complete subgraph? Empty and singleton sets count.
    pub fn is_clique(&self, s: &VertexSet) -> Result<bool, GraphError> {
        let verts = s.to_vec();
        for &v in &verts {
            self.check_vertex(v)?;
        }
        for (a, &i) in verts.iter().enumerate() {
            for &j in verts.iter().skip(a + 1) {
                if !self.has_edge(i, j) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
