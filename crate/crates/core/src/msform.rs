//! Standard quadratic programs `min x^T B x` over the probability simplex,
//! for matrices shaped by a graph: unit diagonal, zero off-edge entries, and
//! entries `>= 1` on edges. The minimum value is `1/alpha(G)` for every such
//! `B`; what varies with the edge values is the *structure* of the minimizer
//! set, which this module characterizes, enumerates, and tests optimality
//! conditions at.
//!
//! Minimizers are exactly the simplex points whose support induces a disjoint
//! union of cliques, one per unit of `1/alpha` mass, with all internal edge
//! values equal to 1 (see [`is_minimizer`] for the three conditions). Edge
//! values are exact rationals throughout; points may be exact or floating,
//! and every check states which comparisons are exact.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};
use crate::poly::Poly;
use crate::scalar::{brat, bratio, Coeff, SymMat};
use crate::stability::{alpha, is_stable};

/// Below this, a float coordinate counts as zero (active constraint).
pub const ACTIVITY_TOL: f64 = 1e-10;
/// Strict-complementarity threshold for float multipliers.
pub const MULTIPLIER_TOL: f64 = 1e-8;
/// Positive-definiteness threshold for the projected Hessian spectrum.
pub const EIGENVALUE_TOL: f64 = 1e-8;
/// Float simplex points may miss unit mass by this much.
pub const SUM_TOL: f64 = 1e-12;
/// Component-mass matching tolerance for float minimizer checks.
const COMPONENT_SUM_TOL: f64 = 1e-9;
/// Hard ceiling on enumerated cliques and minimizer families.
pub const ENUMERATION_CAP: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum MsformError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("edge {{{i},{j}}} has value {v}, below the unit floor")]
    EdgeValueBelowOne { i: usize, j: usize, v: BigRational },
    #[error("value assigned to non-edge {{{i},{j}}}")]
    ValueOnNonEdge { i: usize, j: usize },
    #[error("coordinate {i} is negative ({x})")]
    NegativeCoordinate { i: usize, x: f64 },
    #[error("coordinates sum to {sum}, not 1")]
    BadSum { sum: f64 },
    #[error("point has {got} coordinates, form has {want} variables")]
    DimensionMismatch { got: usize, want: usize },
    #[error("{s} is not a stable set")]
    NotStable { s: String },
    #[error("{s} has {got} vertices but the stability number is {want}")]
    NotMaximum { s: String, got: usize, want: usize },
    #[error("enumeration exceeded the cap of {cap}")]
    EnumerationCap { cap: usize },
    #[error("enumeration supports at most 128 vertices, got {n}")]
    TooManyVertices { n: usize },
}

/// Graph-shaped symmetric matrix: `B_ii = 1`, `B_ij >= 1` on edges, `B_ij = 0`
/// otherwise. Entries are exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadForm {
    graph: Graph,
    values: BTreeMap<(usize, usize), BigRational>,
}

impl QuadForm {
    /// `B = A_G + I`: every edge entry 1.
    pub fn ms_matrix(g: &Graph) -> QuadForm {
        let values = g.edges().map(|e| (e, brat(1))).collect();
        QuadForm { graph: g.clone(), values }
    }

    /// The distinguished edge gets 1, every other edge gets 2.
    pub fn ms_e_matrix(g: &Graph, e: (usize, usize)) -> Result<QuadForm, MsformError> {
        let (a, b) = (e.0.min(e.1), e.0.max(e.1));
        if !g.has_edge(a, b) {
            return Err(GraphError::MissingEdge { i: a, j: b }.into());
        }
        let values = g
            .edges()
            .map(|f| {
                let v = if f == (a, b) { brat(1) } else { brat(2) };
                (f, v)
            })
            .collect();
        Ok(QuadForm { graph: g.clone(), values })
    }

    /// General member of the family: one rational per edge, each `>= 1`.
    /// Every edge must be covered and nothing else.
    pub fn make_b<I>(g: &Graph, values: I) -> Result<QuadForm, MsformError>
    where
        I: IntoIterator<Item = ((usize, usize), BigRational)>,
    {
        let mut map = BTreeMap::new();
        for ((i, j), v) in values {
            let (a, b) = (i.min(j), i.max(j));
            if !g.has_edge(a, b) {
                return Err(MsformError::ValueOnNonEdge { i: a, j: b });
            }
            if v < brat(1) {
                return Err(MsformError::EdgeValueBelowOne { i: a, j: b, v });
            }
            map.insert((a, b), v);
        }
        for e in g.edges() {
            map.entry(e).or_insert_with(|| brat(1));
        }
        Ok(QuadForm { graph: g.clone(), values: map })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// `B_ij` for any pair: 1 on the diagonal, the stored value on edges,
    /// 0 elsewhere.
    pub fn entry(&self, i: usize, j: usize) -> BigRational {
        if i == j {
            return brat(1);
        }
        let key = (i.min(j), i.max(j));
        self.values.get(&key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn edge_values(&self) -> impl Iterator<Item = ((usize, usize), &BigRational)> {
        self.values.iter().map(|(&e, v)| (e, v))
    }

    /// Is this exactly `A_G + I`?
    pub fn is_unit(&self) -> bool {
        self.values.values().all(|v| *v == brat(1))
    }

    pub fn to_dense_f64(&self) -> DMatrix<f64> {
        let n = self.n();
        DMatrix::from_fn(n, n, |i, j| self.entry(i + 1, j + 1).to_f64())
    }

    /// `x^T B x` as a polynomial.
    pub fn objective_poly<C: Coeff>(&self) -> Poly<C> {
        let n = self.n();
        let mut p = Poly::zero(n);
        for i in 1..=n {
            p.add_term(
                crate::poly::Monomial::var(n, i).mul(&crate::poly::Monomial::var(n, i)),
                C::one(),
            );
        }
        for (&(i, j), v) in &self.values {
            let c = C::from_rational(v) * C::from_int(2);
            p.add_term(
                crate::poly::Monomial::var(n, i).mul(&crate::poly::Monomial::var(n, j)),
                c,
            );
        }
        p
    }

    /// `B x`, exact.
    fn apply_exact(&self, x: &[BigRational]) -> Vec<BigRational> {
        debug_assert_eq!(x.len(), self.n());
        let mut out = x.to_vec();
        for (&(i, j), v) in &self.values {
            let (xi, xj) = (x[i - 1].clone(), x[j - 1].clone());
            out[i - 1] += v * xj;
            out[j - 1] += v * xi;
        }
        out
    }

    fn apply_f64(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.n());
        let mut out = x.to_vec();
        for (&(i, j), v) in &self.values {
            let vf = v.to_f64();
            out[i - 1] += vf * x[j - 1];
            out[j - 1] += vf * x[i - 1];
        }
        out
    }
}

impl Serialize for QuadForm {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            graph: &'a Graph,
            edge_values: Vec<(usize, usize, f64)>,
        }
        Repr {
            graph: &self.graph,
            edge_values: self
                .values
                .iter()
                .map(|(&(i, j), v)| (i, j, v.to_f64()))
                .collect(),
        }
        .serialize(ser)
    }
}

#[derive(Debug, Clone)]
enum Coords {
    Exact(Vec<BigRational>),
    Float(Vec<f64>),
}

/// Point of the probability simplex. Exact points satisfy the constraints
/// exactly; float points up to [`SUM_TOL`].
#[derive(Debug, Clone)]
pub struct SimplexPoint {
    coords: Coords,
}

impl SimplexPoint {
    pub fn from_rationals(x: Vec<BigRational>) -> Result<SimplexPoint, MsformError> {
        let mut sum = BigRational::zero();
        for (i, v) in x.iter().enumerate() {
            if v.is_negative() {
                return Err(MsformError::NegativeCoordinate { i: i + 1, x: v.to_f64() });
            }
            sum += v;
        }
        if sum != brat(1) {
            return Err(MsformError::BadSum { sum: sum.to_f64() });
        }
        Ok(SimplexPoint { coords: Coords::Exact(x) })
    }

    pub fn from_floats(x: Vec<f64>) -> Result<SimplexPoint, MsformError> {
        let mut sum = 0.0;
        for (i, &v) in x.iter().enumerate() {
            if v < -SUM_TOL || !v.is_finite() {
                return Err(MsformError::NegativeCoordinate { i: i + 1, x: v });
            }
            sum += v;
        }
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(MsformError::BadSum { sum });
        }
        Ok(SimplexPoint { coords: Coords::Float(x) })
    }

    /// Barycenter `(1/n, ..., 1/n)`, exact.
    pub fn uniform(n: usize) -> SimplexPoint {
        SimplexPoint {
            coords: Coords::Exact(vec![bratio(1, n as i64); n]),
        }
    }

    /// `(1/|S|) * indicator(S)`, exact.
    pub fn spread_on(s: &VertexSet, n: usize) -> SimplexPoint {
        let k = s.len() as i64;
        assert!(k > 0, "support must be nonempty");
        let mut x = vec![BigRational::zero(); n];
        for v in s.iter() {
            x[v - 1] = bratio(1, k);
        }
        SimplexPoint { coords: Coords::Exact(x) }
    }

    pub fn dim(&self) -> usize {
        match &self.coords {
            Coords::Exact(v) => v.len(),
            Coords::Float(v) => v.len(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.coords, Coords::Exact(_))
    }

    pub fn get_f64(&self, i: usize) -> f64 {
        match &self.coords {
            Coords::Exact(v) => v[i - 1].to_f64(),
            Coords::Float(v) => v[i - 1],
        }
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        (1..=self.dim()).map(|i| self.get_f64(i)).collect()
    }

    pub fn exact_coords(&self) -> Option<&[BigRational]> {
        match &self.coords {
            Coords::Exact(v) => Some(v),
            Coords::Float(_) => None,
        }
    }

    /// Vertices carrying mass: exactly nonzero coordinates for exact points,
    /// coordinates above [`ACTIVITY_TOL`] for float ones.
    pub fn support(&self) -> VertexSet {
        match &self.coords {
            Coords::Exact(v) => v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, _)| i + 1)
                .collect(),
            Coords::Float(v) => v
                .iter()
                .enumerate()
                .filter(|(_, x)| **x > ACTIVITY_TOL)
                .map(|(i, _)| i + 1)
                .collect(),
        }
    }
}

/// Exact when the point is exact.
#[derive(Debug, Clone, PartialEq)]
pub enum Objective {
    Exact(BigRational),
    Float(f64),
}

impl Objective {
    pub fn to_f64(&self) -> f64 {
        match self {
            Objective::Exact(v) => v.to_f64(),
            Objective::Float(v) => *v,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Objective::Exact(v) => Some(v),
            Objective::Float(_) => None,
        }
    }
}

/// `x^T B x`.
pub fn objective(q: &QuadForm, x: &SimplexPoint) -> Result<Objective, MsformError> {
    if x.dim() != q.n() {
        return Err(MsformError::DimensionMismatch { got: x.dim(), want: q.n() });
    }
    match &x.coords {
        Coords::Exact(v) => {
            let mut acc: BigRational = v.iter().map(|c| c * c).sum();
            for (&(i, j), w) in &q.values {
                acc += w * brat(2) * &v[i - 1] * &v[j - 1];
            }
            Ok(Objective::Exact(acc))
        }
        Coords::Float(v) => {
            let mut acc: f64 = v.iter().map(|c| c * c).sum();
            for (&(i, j), w) in &q.values {
                acc += 2.0 * w.to_f64() * v[i - 1] * v[j - 1];
            }
            Ok(Objective::Float(acc))
        }
    }
}

/// Uniform mass on a maximum stable set: the canonical global minimizer.
pub fn stable_set_minimizer(g: &Graph, s: &VertexSet) -> Result<SimplexPoint, MsformError> {
    if !is_stable(g, s)? {
        return Err(MsformError::NotStable { s: s.to_string() });
    }
    let a = alpha(g);
    if s.len() != a {
        return Err(MsformError::NotMaximum { s: s.to_string(), got: s.len(), want: a });
    }
    Ok(SimplexPoint::spread_on(s, g.n()))
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind")]
pub enum MinimizerViolation {
    /// An edge inside the support has value above 1.
    EdgeValueNotOne { edge: (usize, usize), value: f64 },
    /// A support component is not a clique of the graph.
    ComponentNotClique { component: Vec<usize> },
    /// A support component's mass differs from `1/alpha`.
    ComponentMass { component: Vec<usize>, mass: f64, expected: f64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimizerCheck {
    pub is_minimizer: bool,
    pub alpha: usize,
    /// Connected components of the support-induced subgraph, original labels.
    pub components: Vec<Vec<usize>>,
    pub violation: Option<MinimizerViolation>,
}

/// Support components of `x`, in original vertex labels, sorted by minimum.
fn support_components(g: &Graph, supp: &VertexSet) -> Result<Vec<VertexSet>, GraphError> {
    let verts = supp.to_vec();
    let induced = g.induced_subgraph(supp)?;
    Ok(induced
        .connected_components()
        .into_iter()
        .map(|c| c.iter().map(|v| verts[v - 1]).collect())
        .collect())
}

/// Global-minimizer test by support structure: `x` minimizes `x^T B x` over
/// the simplex exactly when (1) every support edge has `B`-value 1, (2) every
/// support component is a clique, and (3) every component carries mass
/// exactly `1/alpha`. For exact points all three are exact comparisons.
pub fn is_minimizer(q: &QuadForm, x: &SimplexPoint) -> Result<MinimizerCheck, MsformError> {
    if x.dim() != q.n() {
        return Err(MsformError::DimensionMismatch { got: x.dim(), want: q.n() });
    }
    let g = q.graph();
    let a = alpha(g);
    let supp = x.support();
    let comps = support_components(g, &supp)?;
    let mut report = MinimizerCheck {
        is_minimizer: false,
        alpha: a,
        components: comps.iter().map(|c| c.to_vec()).collect(),
        violation: None,
    };

    // (1) unit values on support edges
    for (i, j) in g.edges() {
        if supp.contains(i) && supp.contains(j) && q.entry(i, j) != brat(1) {
            report.violation = Some(MinimizerViolation::EdgeValueNotOne {
                edge: (i, j),
                value: q.entry(i, j).to_f64(),
            });
            return Ok(report);
        }
    }
    // (2) components are cliques
    for c in &comps {
        if !g.is_clique(c)? {
            report.violation =
                Some(MinimizerViolation::ComponentNotClique { component: c.to_vec() });
            return Ok(report);
        }
    }
    // (3) each component carries 1/alpha
    let expected = bratio(1, a as i64);
    for c in &comps {
        let ok = match &x.coords {
            Coords::Exact(v) => {
                let mass: BigRational = c.iter().map(|i| v[i - 1].clone()).sum();
                mass == expected
            }
            Coords::Float(v) => {
                let mass: f64 = c.iter().map(|i| v[i - 1]).sum();
                (mass - expected.to_f64()).abs() <= COMPONENT_SUM_TOL
            }
        };
        if !ok {
            let mass: f64 = c.iter().map(|i| x.get_f64(i)).sum();
            report.violation = Some(MinimizerViolation::ComponentMass {
                component: c.to_vec(),
                mass,
                expected: expected.to_f64(),
            });
            return Ok(report);
        }
    }
    report.is_minimizer = true;
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimizerFamily {
    /// Disjoint, pairwise non-adjacent cliques with unit internal values.
    pub cliques: Vec<Vec<usize>>,
    /// Dimension of the face of minimizers this family spans.
    pub face_dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimizerStructure {
    pub alpha: usize,
    pub families: Vec<MinimizerFamily>,
    /// True exactly when every family is a set of singletons, i.e. the
    /// minimizer set is finite.
    pub all_zero_dimensional: bool,
}

/// Enumerates the maximal support structures of minimizers: families of
/// `alpha` cliques, pairwise disjoint and non-adjacent, with every internal
/// edge value 1, such that no clique can absorb a further vertex. Each family
/// spans a closed face of minimizers (mass `1/alpha` per clique, arbitrary
/// distribution inside each clique); the union of these faces is exactly the
/// minimizer set, and no listed face contains another.
pub fn enumerate_minimizer_components(
    q: &QuadForm,
) -> Result<MinimizerStructure, MsformError> {
    let g = q.graph();
    let n = g.n();
    if n > 128 {
        return Err(MsformError::TooManyVertices { n });
    }
    let a = alpha(g);

    let mask_of = |v: usize| 1u128 << (v - 1);
    let mut adj = vec![0u128; n + 1];
    let mut unit_adj = vec![0u128; n + 1];
    for (i, j) in g.edges() {
        adj[i] |= mask_of(j);
        adj[j] |= mask_of(i);
        if q.entry(i, j) == brat(1) {
            unit_adj[i] |= mask_of(j);
            unit_adj[j] |= mask_of(i);
        }
    }

    // All cliques whose internal edges have value 1, lexicographic by vertex
    // list. Singletons count.
    let mut cliques: Vec<(Vec<usize>, u128)> = Vec::new();
    fn grow(
        v: usize,
        n: usize,
        cur: &mut Vec<usize>,
        cur_mask: u128,
        allowed: u128,
        unit_adj: &[u128],
        out: &mut Vec<(Vec<usize>, u128)>,
    ) -> Result<(), MsformError> {
        cur.push(v);
        let mask = cur_mask | (1u128 << (v - 1));
        if out.len() >= ENUMERATION_CAP {
            return Err(MsformError::EnumerationCap { cap: ENUMERATION_CAP });
        }
        out.push((cur.clone(), mask));
        let next_allowed = allowed & unit_adj[v];
        for w in (v + 1)..=n {
            if next_allowed & (1u128 << (w - 1)) != 0 {
                grow(w, n, cur, mask, next_allowed, unit_adj, out)?;
            }
        }
        cur.pop();
        Ok(())
    }
    for v in 1..=n {
        let mut cur = Vec::new();
        grow(v, n, &mut cur, 0, u128::MAX, &unit_adj, &mut cliques)?;
    }

    // Conflict footprint of each clique: its vertices plus all their
    // neighbors (any edge into the clique, regardless of value, merges
    // components).
    let footprints: Vec<u128> = cliques
        .iter()
        .map(|(vs, mask)| vs.iter().fold(*mask, |acc, &v| acc | adj[v]))
        .collect();

    let mut raw: Vec<Vec<usize>> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn pick(
        start: usize,
        need: usize,
        forbidden: u128,
        cliques: &[(Vec<usize>, u128)],
        footprints: &[u128],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<(), MsformError> {
        if need == 0 {
            if out.len() >= ENUMERATION_CAP {
                return Err(MsformError::EnumerationCap { cap: ENUMERATION_CAP });
            }
            out.push(chosen.clone());
            return Ok(());
        }
        if cliques.len() - start < need {
            return Ok(());
        }
        for k in start..cliques.len() {
            if cliques[k].1 & forbidden != 0 {
                continue;
            }
            chosen.push(k);
            pick(k + 1, need - 1, forbidden | footprints[k], cliques, footprints, chosen, out)?;
            chosen.pop();
        }
        Ok(())
    }
    pick(0, a, 0, &cliques, &footprints, &mut chosen, &mut raw)?;

    // Keep only maximal families: dropping one whenever some outside vertex
    // extends one of its cliques (unit-adjacent to all of it, non-adjacent to
    // the rest). Dominated families lie inside the face of the extension.
    let families: Vec<MinimizerFamily> = raw
        .into_iter()
        .filter(|idxs| {
            let union: u128 = idxs.iter().map(|&k| cliques[k].1).fold(0, |a, b| a | b);
            for v in 1..=n {
                let vm = mask_of(v);
                if union & vm != 0 {
                    continue;
                }
                for &k in idxs.iter() {
                    let cm = cliques[k].1;
                    if cm & unit_adj[v] == cm && adj[v] & (union & !cm) == 0 {
                        return false;
                    }
                }
            }
            true
        })
        .map(|idxs| {
            let picked: Vec<Vec<usize>> = idxs.iter().map(|&k| cliques[k].0.clone()).collect();
            let face_dim = picked.iter().map(|c| c.len() - 1).sum();
            MinimizerFamily { cliques: picked, face_dim }
        })
        .collect();

    let all_zero_dimensional = families.iter().all(|f| f.face_dim == 0);
    Ok(MinimizerStructure { alpha: a, families, all_zero_dimensional })
}

#[derive(Debug, Clone, Serialize)]
pub struct KktReport {
    /// Result of [`is_minimizer`] at this point.
    pub at_global_minimizer: bool,
    /// Comparisons done in rational arithmetic?
    pub exact: bool,
    /// 1-based coordinates at their bound (`x_j = 0`).
    pub active_set: Vec<usize>,
    /// Multiplier of the mass constraint.
    pub lambda: f64,
    /// Bound multipliers, one per coordinate, zero off the active set.
    pub mu: Vec<f64>,
    /// Worst inconsistency of the gradient across inactive coordinates; a KKT
    /// point has defect 0.
    pub multiplier_defect: f64,
    /// Constraint-qualification: active gradients plus the mass gradient have
    /// full rank.
    pub cqc: bool,
    /// Strict complementarity: all active multipliers strictly positive.
    pub scc: bool,
    /// Second-order condition: Hessian positive definite on the critical
    /// cone.
    pub sosc: bool,
    /// Eigenvalues of the Hessian projected onto the critical cone,
    /// ascending.
    pub projected_hessian_spectrum: Vec<f64>,
}

/// First- and second-order optimality conditions for `min x^T B x` on the
/// simplex at `x`. The active set is `J = {j : x_j = 0}`; multipliers solve
/// `2Bx = lambda * 1 + sum_{j in J} mu_j e_j` on the inactive coordinates.
pub fn kkt_check(q: &QuadForm, x: &SimplexPoint) -> Result<KktReport, MsformError> {
    let n = q.n();
    if x.dim() != n {
        return Err(MsformError::DimensionMismatch { got: x.dim(), want: n });
    }
    let exact = x.is_exact();
    let supp = x.support();
    let active: Vec<usize> = (1..=n).filter(|&i| !supp.contains(i)).collect();
    let inactive: Vec<usize> = supp.to_vec();
    assert!(!inactive.is_empty(), "simplex points carry positive mass");

    // Gradient 2Bx, multipliers, and the defect across inactive coordinates.
    let (lambda, mu, defect, scc) = match x.exact_coords() {
        Some(v) => {
            let g: Vec<BigRational> =
                q.apply_exact(v).into_iter().map(|t| t * brat(2)).collect();
            let lambda = g[inactive[0] - 1].clone();
            let defect = inactive
                .iter()
                .map(|&i| (&g[i - 1] - &lambda).to_f64().abs())
                .fold(0.0, f64::max);
            let mut mu = vec![0.0; n];
            let mut scc = true;
            for &j in &active {
                let m = &g[j - 1] - &lambda;
                if !m.is_positive() {
                    scc = false;
                }
                mu[j - 1] = m.to_f64();
            }
            (lambda.to_f64(), mu, defect, scc)
        }
        None => {
            let v = x.to_f64_vec();
            let g: Vec<f64> = q.apply_f64(&v).into_iter().map(|t| 2.0 * t).collect();
            let lambda = g[inactive[0] - 1];
            let defect = inactive
                .iter()
                .map(|&i| (g[i - 1] - lambda).abs())
                .fold(0.0, f64::max);
            let mut mu = vec![0.0; n];
            let mut scc = true;
            for &j in &active {
                let m = g[j - 1] - lambda;
                if m <= MULTIPLIER_TOL {
                    scc = false;
                }
                mu[j - 1] = m;
            }
            (lambda, mu, defect, scc)
        }
    };

    // Constraint qualification, literally as a rank computation on the
    // active gradients plus the all-ones mass gradient.
    let mut cq = DMatrix::<f64>::zeros(active.len() + 1, n);
    for (r, &j) in active.iter().enumerate() {
        cq[(r, j - 1)] = 1.0;
    }
    for c in 0..n {
        cq[(active.len(), c)] = 1.0;
    }
    let cqc = cq.rank(1e-10) == active.len() + 1;

    // Second-order condition on the critical cone {v : v_J = 0, sum v = 0}.
    let p = inactive.len();
    let (sosc, spectrum) = if p <= 1 {
        (true, Vec::new())
    } else {
        // Spectrum via an orthonormal (Helmert) basis of the cone.
        let bsub = DMatrix::<f64>::from_fn(p, p, |r, c| {
            2.0 * q.entry(inactive[r], inactive[c]).to_f64()
        });
        let mut vbasis = DMatrix::<f64>::zeros(p, p - 1);
        for k in 1..p {
            let norm = ((k * (k + 1)) as f64).sqrt();
            for r in 0..k {
                vbasis[(r, k - 1)] = 1.0 / norm;
            }
            vbasis[(k, k - 1)] = -(k as f64) / norm;
        }
        let h = vbasis.transpose() * &bsub * &vbasis;
        let mut eigs: Vec<f64> =
            nalgebra::SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
        eigs.sort_by(f64::total_cmp);

        let sosc = if exact {
            // Difference basis e_{p1} - e_{pk}: definiteness is basis-free.
            let mut hh = SymMat::<BigRational>::zeros(p - 1);
            let p1 = inactive[0];
            for k in 1..p {
                for l in k..p {
                    let (pk, pl) = (inactive[k], inactive[l]);
                    let v = brat(2)
                        * (q.entry(p1, p1) - q.entry(p1, pl) - q.entry(pk, p1)
                            + q.entry(pk, pl));
                    hh.set_sym(k - 1, l - 1, v);
                }
            }
            hh.is_pd_exact()
        } else {
            eigs[0] > EIGENVALUE_TOL
        };
        (sosc, eigs)
    };

    Ok(KktReport {
        at_global_minimizer: is_minimizer(q, x)?.is_minimizer,
        exact,
        active_set: active,
        lambda,
        mu,
        multiplier_defect: defect,
        cqc,
        scc,
        sosc,
        projected_hessian_spectrum: spectrum,
    })
}
