//! Stability numbers and the edge/twin structure built on top of them.
//!
//! `alpha` is exact branch-and-bound with a greedy clique-cover bound; it is
//! meant for desk-scale graphs (tens of vertices), not for benchmarks. The
//! derived notions:
//!
//! * an edge `e` is *critical* when deleting it raises the stability number
//!   (the increase is always 0 or 1);
//! * adjacent vertices `i`, `j` are *twins* when `N(i) \ {j} = N(j) \ {i}`;
//!   deleting one of a twin pair preserves the stability number;
//! * `alpha_via_critical_oracle` recovers the stability number from
//!   criticality answers alone, by interleaving twin contraction with edge
//!   deletion and counting the critical deletions.

use serde::Serialize;
use smallvec::SmallVec;
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};

#[derive(Debug, Error)]
pub enum StabilityError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("oracle disagreed with exact criticality on edge {{{i},{j}}} of a {n}-vertex graph")]
    OracleInconsistency { i: usize, j: usize, n: usize },
}

/// No two members adjacent. The empty set is stable.
pub fn is_stable(g: &Graph, s: &VertexSet) -> Result<bool, GraphError> {
    let verts = s.to_vec();
    for &v in &verts {
        if v == 0 || v > g.n() {
            return Err(GraphError::VertexOutOfRange { v, n: g.n() });
        }
    }
    for (a, &i) in verts.iter().enumerate() {
        for &j in verts.iter().skip(a + 1) {
            if g.has_edge(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Branch-and-bound stability number over word-packed vertex sets.

#[derive(Clone, PartialEq, Eq)]
struct Bits {
    w: SmallVec<[u64; 2]>,
}

impl Bits {
    fn zeros(words: usize) -> Bits {
        Bits { w: smallvec::smallvec![0u64; words] }
    }

    fn set(&mut self, b: usize) {
        self.w[b / 64] |= 1u64 << (b % 64);
    }

    fn clear(&mut self, b: usize) {
        self.w[b / 64] &= !(1u64 << (b % 64));
    }

    fn count(&self) -> usize {
        self.w.iter().map(|x| x.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.w.iter().all(|&x| x == 0)
    }

    fn and_not_assign(&mut self, o: &Bits) {
        for (a, b) in self.w.iter_mut().zip(&o.w) {
            *a &= !b;
        }
    }

    fn count_and(&self, o: &Bits) -> usize {
        self.w
            .iter()
            .zip(&o.w)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn is_subset_of(&self, o: &Bits) -> bool {
        self.w.iter().zip(&o.w).all(|(a, b)| a & !b == 0)
    }

    fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.w.iter().enumerate().flat_map(|(wi, &word)| {
            let mut rem = word;
            std::iter::from_fn(move || {
                if rem == 0 {
                    None
                } else {
                    let b = rem.trailing_zeros() as usize;
                    rem &= rem - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

struct BnB {
    /// Open neighborhoods, bit `v-1` for vertex `v`.
    adj: Vec<Bits>,
    best: usize,
}

impl BnB {
    /// Greedy clique cover of `p`; the number of cliques bounds any stable
    /// subset of `p` from above.
    fn cover_bound(&self, p: &Bits) -> usize {
        let mut cliques: Vec<Bits> = Vec::new();
        'next: for v in p.iter_ones() {
            for c in cliques.iter_mut() {
                if c.is_subset_of(&self.adj[v]) {
                    c.set(v);
                    continue 'next;
                }
            }
            let mut c = Bits::zeros(self.adj[v].w.len());
            c.set(v);
            cliques.push(c);
        }
        cliques.len()
    }

    fn search(&mut self, p: Bits, current: usize) {
        if p.is_empty() {
            self.best = self.best.max(current);
            return;
        }
        if current + self.cover_bound(&p) <= self.best {
            return;
        }
        // Branch on a vertex of maximum degree within p; ties break toward
        // the smallest label so runs are reproducible.
        let (v, deg) = p
            .iter_ones()
            .map(|v| (v, self.adj[v].count_and(&p)))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("p nonempty");
        if deg == 0 {
            self.best = self.best.max(current + p.count());
            return;
        }
        let mut with_v = p.clone();
        with_v.and_not_assign(&self.adj[v]);
        with_v.clear(v);
        self.search(with_v, current + 1);
        let mut without_v = p;
        without_v.clear(v);
        self.search(without_v, current);
    }
}

/// Exact stability number.
pub fn alpha(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let words = n.div_ceil(64);
    let mut adj = Vec::with_capacity(n);
    for v in 1..=n {
        let mut b = Bits::zeros(words);
        for &w in g.neighbors(v) {
            b.set(w - 1);
        }
        adj.push(b);
    }
    let mut all = Bits::zeros(words);
    for v in 0..n {
        all.set(v);
    }

    // Greedy minimum-degree stable set seeds the incumbent.
    let mut seed = 0usize;
    let mut p = all.clone();
    while let Some((v, _)) = p
        .iter_ones()
        .map(|v| (v, adj[v].count_and(&p)))
        .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
    {
        seed += 1;
        p.and_not_assign(&adj[v]);
        p.clear(v);
    }

    let mut bnb = BnB { adj, best: seed };
    bnb.search(all, 0);
    bnb.best
}

/// Does deleting `e` raise the stability number? The raise is 0 or 1, never
/// more.
pub fn is_critical_edge(g: &Graph, e: (usize, usize)) -> Result<bool, GraphError> {
    let deleted = g.delete_edge(e.0, e.1)?;
    let a = alpha(g);
    let b = alpha(&deleted);
    debug_assert!(b == a || b == a + 1);
    Ok(b == a + 1)
}

/// All critical edges, lexicographically sorted.
pub fn critical_edges(g: &Graph) -> Vec<(usize, usize)> {
    let a = alpha(g);
    g.edges()
        .filter(|&(i, j)| {
            let deleted = g.delete_edge(i, j).expect("edge exists");
            alpha(&deleted) == a + 1
        })
        .collect()
}

pub fn is_twin_pair(g: &Graph, i: usize, j: usize) -> bool {
    if !g.has_edge(i, j) {
        return false;
    }
    let ni = g.neighbors(i);
    let nj = g.neighbors(j);
    if ni.len() != nj.len() {
        return false;
    }
    ni.iter().filter(|&&v| v != j).eq(nj.iter().filter(|&&v| v != i))
}

/// All twin pairs, lexicographically sorted.
pub fn twin_pairs(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().filter(|&(i, j)| is_twin_pair(g, i, j)).collect()
}

#[derive(Debug, Clone)]
pub struct Contraction {
    /// Twin-free result.
    pub graph: Graph,
    pub deletions: usize,
    /// Twin pair merged at each step, in the labels current at that step; the
    /// lower label of the pair is the vertex deleted.
    pub trace: Vec<(usize, usize)>,
}

/// Repeatedly merges the lexicographically first twin pair (deleting its
/// lower label) until none remains. Each step preserves the stability number.
pub fn contract_all_twins(g: &Graph) -> Contraction {
    let mut cur = g.clone();
    let mut trace = Vec::new();
    loop {
        let Some(pair) = cur.edges().find(|&(i, j)| is_twin_pair(&cur, i, j)) else {
            break;
        };
        trace.push(pair);
        let (next, _) = cur.delete_vertex(pair.0).expect("twin vertex exists");
        cur = next;
    }
    debug_assert!(twin_pairs(&cur).is_empty());
    Contraction { deletions: trace.len(), trace, graph: cur }
}

/// Recovers the stability number using only criticality answers.
///
/// The loop contracts all twins, asks the oracle about the lexicographically
/// first edge of the (twin-free) graph, deletes that edge, and counts the
/// critical answers `c`; when no edges remain the stability number of the
/// original graph is the surviving vertex count minus `c`.
pub fn alpha_via_critical_oracle<F>(g: &Graph, mut oracle: F) -> usize
where
    F: FnMut(&Graph, (usize, usize)) -> bool,
{
    let mut cur = g.clone();
    let mut critical_count = 0usize;
    loop {
        cur = contract_all_twins(&cur).graph;
        let Some(e) = cur.edges().next() else { break };
        if oracle(&cur, e) {
            critical_count += 1;
        }
        cur = cur.delete_edge(e.0, e.1).expect("edge exists");
    }
    cur.n() - critical_count
}

/// Same loop, but every oracle answer is checked against exact criticality;
/// the first disagreement aborts with a diagnostic.
pub fn alpha_via_critical_oracle_checked<F>(
    g: &Graph,
    mut oracle: F,
) -> Result<usize, StabilityError>
where
    F: FnMut(&Graph, (usize, usize)) -> bool,
{
    let mut cur = g.clone();
    let mut critical_count = 0usize;
    loop {
        cur = contract_all_twins(&cur).graph;
        let Some(e) = cur.edges().next() else { break };
        let claimed = oracle(&cur, e);
        if claimed != is_critical_edge(&cur, e)? {
            return Err(StabilityError::OracleInconsistency { i: e.0, j: e.1, n: cur.n() });
        }
        if claimed {
            critical_count += 1;
        }
        cur = cur.delete_edge(e.0, e.1).expect("edge exists");
    }
    Ok(cur.n() - critical_count)
}

/// Everything the stability layer knows about a graph, in one report.
#[derive(Debug, Clone, Serialize)]
pub struct CriticalReport {
    pub graph: Graph,
    pub alpha: usize,
    pub critical_edges: Vec<(usize, usize)>,
    pub twin_pairs: Vec<(usize, usize)>,
    pub contracted_n: usize,
    pub contraction_trace: Vec<(usize, usize)>,
}

pub fn critical_report(g: &Graph) -> CriticalReport {
    let contraction = contract_all_twins(g);
    CriticalReport {
        graph: g.clone(),
        alpha: alpha(g),
        critical_edges: critical_edges(g),
        twin_pairs: twin_pairs(g),
        contracted_n: contraction.graph.n(),
        contraction_trace: contraction.trace,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        Graph::from_edges(
            10,
            &[
                (1, 2), (2, 3), (3, 4), (4, 5), (5, 1),
                (6, 8), (8, 10), (10, 7), (7, 9), (9, 6),
                (1, 6), (2, 7), (3, 8), (4, 9), (5, 10),
            ],
        )
        .unwrap()
    }

    #[test]
    fn alpha_known_values() {
        assert_eq!(alpha(&Graph::cycle(5)), 2);
        assert_eq!(alpha(&Graph::cycle(6)), 3);
        assert_eq!(alpha(&Graph::cycle(7)), 3);
        assert_eq!(alpha(&Graph::complete(1)), 1);
        assert_eq!(alpha(&Graph::complete(8)), 1);
        assert_eq!(alpha(&Graph::path(4)), 2);
        assert_eq!(alpha(&Graph::empty(6)), 6);
        assert_eq!(alpha(&Graph::empty(0)), 0);
        assert_eq!(alpha(&petersen()), 4);
    }

    #[test]
    fn odd_cycles_are_fully_critical_even_cycles_not_at_all() {
        assert_eq!(
            critical_edges(&Graph::cycle(5)),
            vec![(1, 2), (1, 5), (2, 3), (3, 4), (4, 5)]
        );
        assert_eq!(critical_edges(&Graph::cycle(6)), vec![]);
        assert_eq!(critical_edges(&Graph::cycle(4)), vec![]);
        assert_eq!(
            critical_edges(&Graph::complete(3)),
            vec![(1, 2), (1, 3), (2, 3)]
        );
    }

    #[test]
    fn is_critical_edge_matches_list() {
        let g = Graph::cycle(5);
        for e in g.edges() {
            assert!(is_critical_edge(&g, e).unwrap());
        }
        assert!(is_critical_edge(&g, (1, 3)).is_err());
    }

    #[test]
    fn twin_pairs_known_values() {
        assert_eq!(
            twin_pairs(&Graph::complete(3)),
            vec![(1, 2), (1, 3), (2, 3)]
        );
        assert_eq!(twin_pairs(&Graph::cycle(5)), vec![]);
        assert_eq!(twin_pairs(&Graph::complete(2)), vec![(1, 2)]);
        // Non-adjacent vertices with equal neighborhoods are not twins here.
        let g = Graph::from_edges(4, &[(1, 3), (2, 3), (1, 4), (2, 4)]).unwrap();
        assert_eq!(twin_pairs(&g), vec![]);
    }

    #[test]
    fn contraction_known_results() {
        let kn = Graph::complete(7);
        let c = contract_all_twins(&kn);
        assert_eq!(c.graph, Graph::complete(1));
        assert_eq!(c.deletions, 6);

        let c5 = Graph::cycle(5);
        let c = contract_all_twins(&c5);
        assert_eq!(c.graph, c5);
        assert_eq!(c.deletions, 0);
        assert!(c.trace.is_empty());

        let two_triangles = Graph::complete(3).disjoint_union(&Graph::complete(3));
        let c = contract_all_twins(&two_triangles);
        assert_eq!(c.graph, Graph::empty(2));
        assert_eq!(c.deletions, 4);
    }

    #[test]
    fn contraction_preserves_alpha_stepwise() {
        let g = petersen();
        assert_eq!(alpha(&contract_all_twins(&g).graph), alpha(&g));
        let h = Graph::complete(4).disjoint_union(&Graph::cycle(5));
        let strong = contract_all_twins(&h);
        assert_eq!(alpha(&strong.graph), alpha(&h));
    }

    #[test]
    fn oracle_loop_recovers_alpha() {
        for g in [
            Graph::cycle(5),
            Graph::cycle(6),
            Graph::complete(4),
            Graph::path(6),
            petersen(),
        ] {
            let expected = alpha(&g);
            let got = alpha_via_critical_oracle(&g, |h, e| {
                is_critical_edge(h, e).expect("edge exists")
            });
            assert_eq!(got, expected);
            let checked = alpha_via_critical_oracle_checked(&g, |h, e| {
                is_critical_edge(h, e).expect("edge exists")
            })
            .unwrap();
            assert_eq!(checked, expected);
        }
    }

    #[test]
    fn lying_oracle_is_caught() {
        let g = Graph::cycle(5);
        let r = alpha_via_critical_oracle_checked(&g, |_, _| false);
        assert!(matches!(r, Err(StabilityError::OracleInconsistency { .. })));
    }

    #[test]
    fn stability_check() {
        let g = Graph::cycle(5);
        assert!(is_stable(&g, &VertexSet::from_iter([1, 3])).unwrap());
        assert!(!is_stable(&g, &VertexSet::from_iter([1, 2])).unwrap());
        assert!(is_stable(&g, &VertexSet::new()).unwrap());
        assert!(is_stable(&g, &VertexSet::from_iter([7])).is_err());
    }
}
