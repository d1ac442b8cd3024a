//! Dense semidefinite programming for the small structured instances the
//! certificate assembly produces.
//!
//! Standard form solved here:
//!
//! ```text
//! primal:  min  sum_j <C_j, X_j> + c_f' u
//!          s.t. sum_j <A_ij, X_j> + f_i' u = b_i   (i = 1..m)
//!               X_j psd,  u free
//!
//! dual:    max  b' y
//!          s.t. sum_i y_i A_ij + S_j = C_j,  S_j psd
//!               F' y = c_f          (F has rows f_i')
//! ```
//!
//! The algorithm is an infeasible-start primal-dual path-following method
//! with the dual-scaled Newton direction and a Mehrotra-style
//! predictor-corrector. Free variables stay free: the Schur complement is
//! solved by block elimination rather than splitting `u` into differences of
//! cone variables. Everything is dense, single-threaded, and deterministic —
//! the same instance and options always produce bit-identical output.

mod sdpa;

pub use sdpa::write_sdpa_sparse;

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SdpError {
    #[error("block {block} entry ({r},{c}) out of range for dimension {dim}")]
    EntryOutOfRange { block: usize, r: usize, c: usize, dim: usize },
    #[error("entry ({r},{c}) not upper-triangular (need r <= c)")]
    NotUpperTriangular { r: usize, c: usize },
    #[error("constraint {i} references block {block}, but there are {nblocks}")]
    BadBlockIndex { i: usize, block: usize, nblocks: usize },
    #[error("constraint {i} references free variable {k}, but free_dim = {free_dim}")]
    BadFreeIndex { i: usize, k: usize, free_dim: usize },
    #[error("non-finite value in instance data")]
    NonFinite,
    #[error("instance has no constraints")]
    NoConstraints,
    #[error("constraint operator Gram matrix could not be factored")]
    SingularConstraintGram,
}

/// Symmetric matrix stored as upper-triangle entries `(r, c, v)` with
/// `r <= c`; the mirrored entry is implied.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSym {
    dim: usize,
    entries: Vec<(usize, usize, f64)>,
}

impl SparseSym {
    pub fn zero(dim: usize) -> SparseSym {
        SparseSym { dim, entries: Vec::new() }
    }

    pub fn from_entries(
        dim: usize,
        entries: Vec<(usize, usize, f64)>,
    ) -> Result<SparseSym, SdpError> {
        for &(r, c, v) in &entries {
            if r > c {
                return Err(SdpError::NotUpperTriangular { r, c });
            }
            if c >= dim {
                return Err(SdpError::EntryOutOfRange { block: 0, r, c, dim });
            }
            if !v.is_finite() {
                return Err(SdpError::NonFinite);
            }
        }
        Ok(SparseSym { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `<A, U> = tr(A U)` for symmetric `A`; `U` need not be symmetric.
    fn dot(&self, u: &DMatrix<f64>) -> f64 {
        let mut acc = 0.0;
        for &(r, c, v) in &self.entries {
            if r == c {
                acc += v * u[(r, r)];
            } else {
                acc += v * (u[(r, c)] + u[(c, r)]);
            }
        }
        acc
    }

    /// `out += w * A` (both triangles).
    fn add_scaled_to(&self, w: f64, out: &mut DMatrix<f64>) {
        for &(r, c, v) in &self.entries {
            out[(r, c)] += w * v;
            if r != c {
                out[(c, r)] += w * v;
            }
        }
    }

    /// `A * D` for dense `D`, exploiting the sparsity of `A`.
    fn mul_dense(&self, d: &DMatrix<f64>) -> DMatrix<f64> {
        let n = self.dim;
        let mut out = DMatrix::zeros(n, d.ncols());
        for &(r, c, v) in &self.entries {
            for k in 0..d.ncols() {
                out[(r, k)] += v * d[(c, k)];
            }
            if r != c {
                for k in 0..d.ncols() {
                    out[(c, k)] += v * d[(r, k)];
                }
            }
        }
        out
    }

    fn max_abs(&self) -> f64 {
        self.entries.iter().map(|&(_, _, v)| v.abs()).fold(0.0, f64::max)
    }
}

/// One linear equality `sum_j <A_ij, X_j> + f_i' u = rhs`.
#[derive(Debug, Clone)]
pub struct Constraint {
    /// Per-block coefficient matrices, sparse over blocks: `(block, A)`.
    pub terms: Vec<(usize, SparseSym)>,
    /// Free-variable coefficients `(index, value)`.
    pub free: Vec<(usize, f64)>,
    pub rhs: f64,
}

#[derive(Debug, Clone)]
pub struct SdpInstance {
    pub block_dims: Vec<usize>,
    pub free_dim: usize,
    /// Cost matrix per block (aligned with `block_dims`).
    pub cost_blocks: Vec<SparseSym>,
    pub cost_free: Vec<f64>,
    pub constraints: Vec<Constraint>,
}

impl SdpInstance {
    pub fn validate(&self) -> Result<(), SdpError> {
        if self.constraints.is_empty() {
            return Err(SdpError::NoConstraints);
        }
        let nblocks = self.block_dims.len();
        assert_eq!(self.cost_blocks.len(), nblocks);
        assert_eq!(self.cost_free.len(), self.free_dim);
        for (j, c) in self.cost_blocks.iter().enumerate() {
            check_block(j, c, self.block_dims[j])?;
        }
        for (i, con) in self.constraints.iter().enumerate() {
            if !con.rhs.is_finite() {
                return Err(SdpError::NonFinite);
            }
            for (j, a) in &con.terms {
                if *j >= nblocks {
                    return Err(SdpError::BadBlockIndex { i, block: *j, nblocks });
                }
                check_block(*j, a, self.block_dims[*j])?;
            }
            for &(k, v) in &con.free {
                if k >= self.free_dim {
                    return Err(SdpError::BadFreeIndex { i, k, free_dim: self.free_dim });
                }
                if !v.is_finite() {
                    return Err(SdpError::NonFinite);
                }
            }
        }
        Ok(())
    }

    pub fn n_constraints(&self) -> usize {
        self.constraints.len()
    }

    /// Total dimension over the PSD blocks.
    pub fn total_block_dim(&self) -> usize {
        self.block_dims.iter().sum()
    }
}

fn check_block(block: usize, a: &SparseSym, dim: usize) -> Result<(), SdpError> {
    if a.dim != dim {
        return Err(SdpError::EntryOutOfRange { block, r: 0, c: 0, dim });
    }
    for &(r, c, v) in &a.entries {
        if r > c {
            return Err(SdpError::NotUpperTriangular { r, c });
        }
        if c >= dim {
            return Err(SdpError::EntryOutOfRange { block, r, c, dim });
        }
        if !v.is_finite() {
            return Err(SdpError::NonFinite);
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SdpStatus {
    /// Tolerances met; the invariant `check_solution` confirms is: relative
    /// gap and residuals at 1e-7, primal blocks PSD to -1e-9.
    Optimal,
    MaxIter,
    InfeasibleSuspect,
    NumericalFailure,
}

#[derive(Debug, Clone, Copy)]
pub struct SdpOptions {
    pub tol_gap: f64,
    pub tol_feas: f64,
    pub max_iter: usize,
    /// Fraction of the boundary step taken.
    pub step_frac: f64,
}

impl Default for SdpOptions {
    fn default() -> Self {
        SdpOptions { tol_gap: 1e-8, tol_feas: 1e-8, max_iter: 200, step_frac: 0.98 }
    }
}

#[derive(Debug, Clone)]
pub struct SdpSolution {
    pub status: SdpStatus,
    pub primal_blocks: Vec<DMatrix<f64>>,
    pub free_values: Vec<f64>,
    pub dual_y: Vec<f64>,
    pub dual_slacks: Vec<DMatrix<f64>>,
    pub primal_objective: f64,
    pub dual_objective: f64,
    /// `max(<X,S>, |pobj - dobj|) / (1 + |pobj| + |dobj|)`.
    pub rel_gap: f64,
    /// Scaled infinity norms of the equality and dual residuals.
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub iterations: usize,
}

struct Residuals {
    rp: DVector<f64>,
    rd: Vec<DMatrix<f64>>,
    rf: DVector<f64>,
    pobj: f64,
    dobj: f64,
    gap_inner: f64,
    pinf: f64,
    dinf: f64,
    relgap: f64,
}

fn inf_norm<R: nalgebra::Dim, C: nalgebra::Dim, S>(m: &nalgebra::Matrix<f64, R, C, S>) -> f64
where
    S: nalgebra::storage::Storage<f64, R, C>,
{
    m.iter().fold(0.0f64, |a, &v| a.max(v.abs()))
}

#[derive(Clone)]
struct Iterate {
    x: Vec<DMatrix<f64>>,
    u: DVector<f64>,
    y: DVector<f64>,
    s: Vec<DMatrix<f64>>,
}

/// Scale for the residual norms, fixed by the instance data.
struct Scales {
    b: f64,
    c: f64,
}

fn residuals(inst: &SdpInstance, it: &Iterate, sc: &Scales) -> Residuals {
    let m = inst.n_constraints();
    let mut rp = DVector::zeros(m);
    for (i, con) in inst.constraints.iter().enumerate() {
        let mut lhs = 0.0;
        for (j, a) in &con.terms {
            lhs += a.dot(&it.x[*j]);
        }
        for &(k, v) in &con.free {
            lhs += v * it.u[k];
        }
        rp[i] = con.rhs - lhs;
    }

    let mut rd = Vec::with_capacity(inst.block_dims.len());
    for (j, &dim) in inst.block_dims.iter().enumerate() {
        let mut r = DMatrix::zeros(dim, dim);
        inst.cost_blocks[j].add_scaled_to(1.0, &mut r);
        r -= &it.s[j];
        for (i, con) in inst.constraints.iter().enumerate() {
            for (jj, a) in &con.terms {
                if *jj == j {
                    a.add_scaled_to(-it.y[i], &mut r);
                }
            }
        }
        rd.push(r);
    }

    let mut rf = DVector::from_column_slice(&inst.cost_free);
    for (i, con) in inst.constraints.iter().enumerate() {
        for &(k, v) in &con.free {
            rf[k] -= v * it.y[i];
        }
    }

    let mut pobj = 0.0;
    for (j, c) in inst.cost_blocks.iter().enumerate() {
        pobj += c.dot(&it.x[j]);
    }
    for k in 0..inst.free_dim {
        pobj += inst.cost_free[k] * it.u[k];
    }
    let dobj: f64 = inst.constraints.iter().enumerate().map(|(i, c)| c.rhs * it.y[i]).sum();

    let gap_inner: f64 =
        (0..inst.block_dims.len()).map(|j| (&it.x[j] * &it.s[j]).trace()).sum();

    let pinf = inf_norm(&rp) / sc.b;
    let dinf = rd.iter().map(inf_norm).fold(inf_norm(&rf), f64::max) / sc.c;
    let relgap =
        f64::max(gap_inner, (pobj - dobj).abs()) / (1.0 + pobj.abs() + dobj.abs());

    Residuals { rp, rd, rf, pobj, dobj, gap_inner, pinf, dinf, relgap }
}

/// Cholesky with escalating diagonal regularization. Returns the factor and
/// the shift that was needed (0.0 in the healthy case).
fn chol_reg(mat: &DMatrix<f64>) -> Option<(Cholesky<f64, Dyn>, f64)> {
    if let Some(ch) = Cholesky::new(mat.clone()) {
        return Some((ch, 0.0));
    }
    let n = mat.nrows();
    let scale = inf_norm(&mat.diagonal()).max(1.0);
    let mut shift = 1e-12 * scale;
    for _ in 0..8 {
        let mut m = mat.clone();
        for i in 0..n {
            m[(i, i)] += shift;
        }
        if let Some(ch) = Cholesky::new(m) {
            return Some((ch, shift));
        }
        shift *= 100.0;
    }
    None
}

/// Largest step `alpha` keeping `P + alpha * D` positive semidefinite, where
/// `chol` factors the (positive definite) `P`. `None` means unbounded.
fn max_step(chol: &Cholesky<f64, Dyn>, d: &DMatrix<f64>) -> Option<f64> {
    let l = chol.l();
    // K = L^-1 D L^-T; P + aD psd  <=>  I + aK psd.
    let y = l.solve_lower_triangular(d)?;
    let k = l.solve_lower_triangular(&y.transpose())?;
    let ks = (&k + k.transpose()) * 0.5;
    let eig = ks.symmetric_eigenvalues();
    let lam_min = eig.iter().copied().fold(f64::INFINITY, f64::min);
    if lam_min >= -1e-14 {
        None
    } else {
        Some(-1.0 / lam_min)
    }
}

struct Factored {
    sinv: Vec<DMatrix<f64>>,
    x_chol: Vec<Cholesky<f64, Dyn>>,
    s_chol: Vec<Cholesky<f64, Dyn>>,
}

fn factor_iterate(it: &Iterate) -> Option<Factored> {
    let mut sinv = Vec::new();
    let mut x_chol = Vec::new();
    let mut s_chol = Vec::new();
    for j in 0..it.x.len() {
        let (cx, _) = chol_reg(&it.x[j])?;
        let (cs, _) = chol_reg(&it.s[j])?;
        sinv.push(cs.inverse());
        x_chol.push(cx);
        s_chol.push(cs);
    }
    Some(Factored { sinv, x_chol, s_chol })
}

/// Search direction for a given combined-system right-hand side.
struct Direction {
    dx: Vec<DMatrix<f64>>,
    du: DVector<f64>,
    dy: DVector<f64>,
    ds: Vec<DMatrix<f64>>,
}

struct SchurSystem {
    mmat: DMatrix<f64>,
    m_chol: Cholesky<f64, Dyn>,
    /// Dense free-coefficient matrix, m x f.
    fmat: DMatrix<f64>,
    /// M^-1 F.
    w: DMatrix<f64>,
    /// Cholesky of F' M^-1 F (only when free_dim > 0).
    g_chol: Option<Cholesky<f64, Dyn>>,
}

impl SchurSystem {
    /// Solves [M F; F' 0] [dy; du] = [h; rf] through the cached
    /// factorizations, then applies two rounds of iterative refinement.
    /// Near convergence M is severely ill-conditioned and the raw solve
    /// loses enough digits to stall the primal residual; refinement
    /// recovers them at the cost of a few matrix-vector products.
    fn solve_augmented(&self, h: &DVector<f64>, rf: &DVector<f64>) -> Option<(DVector<f64>, DVector<f64>)> {
        let free = self.fmat.ncols();
        let solve_once = |r1: &DVector<f64>, r2: &DVector<f64>| -> Option<(DVector<f64>, DVector<f64>)> {
            if free > 0 {
                let minv = self.m_chol.solve(r1);
                let rhs = self.fmat.transpose() * &minv - r2;
                let du = self.g_chol.as_ref()?.solve(&rhs);
                let dy = minv - &self.w * &du;
                Some((dy, du))
            } else {
                Some((self.m_chol.solve(r1), DVector::zeros(0)))
            }
        };
        let (mut dy, mut du) = solve_once(h, rf)?;
        let href = inf_norm(h).max(inf_norm(rf)).max(1.0);
        for _ in 0..4 {
            let r1 = h - &self.mmat * &dy - &self.fmat * &du;
            let r2 = rf - self.fmat.transpose() * &dy;
            if inf_norm(&r1).max(inf_norm(&r2)) <= 1e-13 * href {
                break;
            }
            let (cy, cu) = solve_once(&r1, &r2)?;
            dy += cy;
            du += cu;
        }
        Some((dy, du))
    }
}

/// Cholesky of the Gram matrix of the primal constraint operator
/// `[A F]`, iterate-independent and factored once per solve. Directions
/// recovered through `X (.) S^-1` lose feasibility digits as the iterate
/// approaches a degenerate optimum; projecting them back onto
/// `A(dX) + F du = rp` through this factorization restores them.
struct FeasFix {
    chol: Cholesky<f64, Dyn>,
}

fn sparse_dot(a: &SparseSym, b: &SparseSym) -> f64 {
    let (small, large) = if a.entries.len() <= b.entries.len() { (a, b) } else { (b, a) };
    let map: std::collections::HashMap<(usize, usize), f64> =
        large.entries.iter().map(|&(r, c, v)| ((r, c), v)).collect();
    let mut acc = 0.0;
    for &(r, c, v) in &small.entries {
        if let Some(&w) = map.get(&(r, c)) {
            acc += if r == c { v * w } else { 2.0 * v * w };
        }
    }
    acc
}

fn build_feas_fix(inst: &SdpInstance) -> Option<FeasFix> {
    let m = inst.n_constraints();
    let mut g = DMatrix::<f64>::zeros(m, m);
    for j in 0..inst.block_dims.len() {
        let touchers: Vec<(usize, &SparseSym)> = inst
            .constraints
            .iter()
            .enumerate()
            .flat_map(|(i, con)| {
                con.terms
                    .iter()
                    .filter(move |(jj, a)| *jj == j && !a.is_empty())
                    .map(move |(_, a)| (i, a))
            })
            .collect();
        for (pos, &(k, a_k)) in touchers.iter().enumerate() {
            for &(i, a_i) in touchers.iter().take(pos + 1) {
                let v = sparse_dot(a_i, a_k);
                g[(i, k)] += v;
                if i != k {
                    g[(k, i)] += v;
                }
            }
        }
    }
    for (i, ci) in inst.constraints.iter().enumerate() {
        for (k, ck) in inst.constraints.iter().enumerate().take(i + 1) {
            let mut v = 0.0;
            for &(li, vi) in &ci.free {
                for &(lk, vk) in &ck.free {
                    if li == lk {
                        v += vi * vk;
                    }
                }
            }
            if v != 0.0 {
                g[(i, k)] += v;
                if i != k {
                    g[(k, i)] += v;
                }
            }
        }
    }
    let (chol, _) = chol_reg(&g)?;
    Some(FeasFix { chol })
}

impl FeasFix {
    /// Two rounds of feasibility refinement on a computed direction.
    fn project(
        &self,
        inst: &SdpInstance,
        rp: &DVector<f64>,
        dx: &mut [DMatrix<f64>],
        du: &mut DVector<f64>,
    ) {
        let m = inst.n_constraints();
        for _ in 0..2 {
            let mut r = DVector::<f64>::zeros(m);
            let mut rmax = 0.0f64;
            for (i, con) in inst.constraints.iter().enumerate() {
                let mut acc = rp[i];
                for (j, a) in &con.terms {
                    acc -= a.dot(&dx[*j]);
                }
                for &(k, v) in &con.free {
                    acc -= v * du[k];
                }
                r[i] = acc;
                rmax = rmax.max(acc.abs());
            }
            if rmax <= 1e-14 * (1.0 + inf_norm(rp)) {
                break;
            }
            let z = self.chol.solve(&r);
            for (i, con) in inst.constraints.iter().enumerate() {
                for (j, a) in &con.terms {
                    a.add_scaled_to(z[i], &mut dx[*j]);
                }
                for &(k, v) in &con.free {
                    du[k] += v * z[i];
                }
            }
        }
    }
}

/// Finishing step for solves that stall just above tolerance. Near a
/// degenerate optimum the dual (y, S) often converges to machine precision
/// while the primal iterate drifts along null directions of the constraint
/// map, its norm inflating and the duality gap frozen slightly above the
/// target. The converged S still identifies the optimal face: a primal
/// optimizer must live in the span of the near-null eigenvectors of S.
/// Restrict the primal to that span and solve the equality constraints
/// there by damped least squares; the minimum-norm solution has no
/// component along the drift directions. The caller verifies the result
/// from scratch (feasibility, gap, eigenvalues) and discards it unless it
/// genuinely meets the tolerances, so a failed polish cannot corrupt the
/// answer.
fn polish_primal_on_face(
    inst: &SdpInstance,
    xbest: &[DMatrix<f64>],
    slacks: &[DMatrix<f64>],
    dobj: f64,
    rel_cutoff: f64,
) -> Option<(Vec<DMatrix<f64>>, DVector<f64>, Vec<DMatrix<f64>>)> {
    let m = inst.n_constraints();
    // The face is spanned by the significant eigenvectors of the primal
    // blocks: the iterate satisfies the constraints through exactly that
    // range, so restricting to it keeps the least-squares system consistent.
    let mut faces: Vec<DMatrix<f64>> = Vec::with_capacity(xbest.len());
    for xb in xbest {
        let es = xb.clone().symmetric_eigen();
        let lmax = es.eigenvalues.iter().fold(0.0f64, |a, &v| a.max(v));
        let keep: Vec<usize> = (0..es.eigenvalues.len())
            .filter(|&i| es.eigenvalues[i] >= rel_cutoff * (1.0 + lmax))
            .collect();
        let mut v = DMatrix::<f64>::zeros(xb.nrows(), keep.len());
        for (col, &i) in keep.iter().enumerate() {
            v.set_column(col, &es.eigenvectors.column(i));
        }
        faces.push(v);
    }
    // Complementarity made exact on the dual side: the slack loses its
    // near-null component, so <X, S> cannot re-open the gap.
    let mut cleaned: Vec<DMatrix<f64>> = Vec::with_capacity(slacks.len());
    for s in slacks {
        let es = s.clone().symmetric_eigen();
        let lmax = es.eigenvalues.iter().fold(0.0f64, |a, &v| a.max(v));
        let mut sc = DMatrix::<f64>::zeros(s.nrows(), s.nrows());
        for i in 0..es.eigenvalues.len() {
            if es.eigenvalues[i] > 1e-8 * (1.0 + lmax) {
                let q = es.eigenvectors.column(i);
                sc.ger(es.eigenvalues[i], &q, &q, 1.0);
            }
        }
        let sc = (&sc + sc.transpose()) * 0.5;
        cleaned.push(sc);
    }
    // One least-squares unknown per entry of each face-restricted block
    // (upper triangle), plus the free variables.
    let offsets: Vec<usize> = faces
        .iter()
        .scan(0usize, |acc, v| {
            let here = *acc;
            *acc += v.ncols() * (v.ncols() + 1) / 2;
            Some(here)
        })
        .collect();
    let psd_cols: usize =
        faces.iter().map(|v| v.ncols() * (v.ncols() + 1) / 2).sum();
    let ncols = psd_cols + inst.free_dim;
    if ncols == 0 || ncols > 800 {
        return None;
    }

    // One extra least-squares row pins the objective to the converged dual
    // value. Feasibility plus <C, X> = dobj plus PSD is exactly the primal
    // optimal face: the objective cannot wander along null directions of
    // the constraint map while the alternating projections run.
    let mut design = DMatrix::<f64>::zeros(m + 1, ncols);
    let mut rhs = DVector::<f64>::zeros(m + 1);
    for (i, con) in inst.constraints.iter().enumerate() {
        rhs[i] = con.rhs;
        for (j, a) in &con.terms {
            let v = &faces[*j];
            let r = v.ncols();
            if r == 0 || a.is_empty() {
                continue;
            }
            // mm = V' A V; column for (p, q) holds <A, v_p v_q' + v_q v_p'>.
            let mm = v.transpose() * a.mul_dense(v);
            let mut k = offsets[*j];
            for p in 0..r {
                for q in p..r {
                    design[(i, k)] =
                        if p == q { mm[(p, p)] } else { mm[(p, q)] + mm[(q, p)] };
                    k += 1;
                }
            }
        }
        for &(kf, v) in &con.free {
            design[(i, psd_cols + kf)] = v;
        }
    }
    rhs[m] = dobj;
    for (j, c) in inst.cost_blocks.iter().enumerate() {
        let v = &faces[j];
        let r = v.ncols();
        if r == 0 || c.is_empty() {
            continue;
        }
        let mm = v.transpose() * c.mul_dense(v);
        let mut k = offsets[j];
        for p in 0..r {
            for q in p..r {
                design[(m, k)] =
                    if p == q { mm[(p, p)] } else { mm[(p, q)] + mm[(q, p)] };
                k += 1;
            }
        }
    }
    for (kf, &v) in inst.cost_free.iter().enumerate() {
        design[(m, psd_cols + kf)] = v;
    }

    // Damped normal equations; iterated correction walks the damping bias
    // down toward the plain minimum-norm least-squares solution.
    let mut gram = design.transpose() * &design;
    let damp = 1e-13 * inf_norm(&gram.diagonal()).max(1e-300);
    for i in 0..ncols {
        gram[(i, i)] += damp;
    }
    let (chol, _) = chol_reg(&gram)?;
    let mut w = DVector::<f64>::zeros(ncols);
    for _ in 0..4 {
        let resid = &rhs - &design * &w;
        w += chol.solve(&(design.transpose() * resid));
    }

    // The least-squares solution can be indefinite: the constraint map may
    // have null directions on the face (the very directions the iterate
    // drifted along), and the damped solve leaves them at zero even when
    // positive semidefiniteness needs them. Douglas-Rachford splitting
    // between the least-squares manifold and the PSD cone finds a point in
    // the intersection; it tolerates the nearly-parallel geometry of a
    // degenerate face much better than plain alternating projections.
    let affine = |v: &DVector<f64>| -> DVector<f64> {
        let mut out = v.clone();
        for _ in 0..2 {
            let resid = &rhs - &design * &out;
            out += chol.solve(&(design.transpose() * resid));
        }
        out
    };
    let psd = |v: &DVector<f64>| -> (DVector<f64>, f64) {
        let mut out = v.clone();
        let mut worst = f64::INFINITY;
        for (j, face) in faces.iter().enumerate() {
            let r = face.ncols();
            if r == 0 {
                continue;
            }
            let mut wb = DMatrix::<f64>::zeros(r, r);
            let mut k = offsets[j];
            for p in 0..r {
                for q in p..r {
                    wb[(p, q)] = v[k];
                    wb[(q, p)] = v[k];
                    k += 1;
                }
            }
            let es = wb.symmetric_eigen();
            let lo = es.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
            worst = worst.min(lo);
            if lo >= 0.0 {
                continue;
            }
            let mut proj = DMatrix::<f64>::zeros(r, r);
            for i in 0..r {
                if es.eigenvalues[i] > 0.0 {
                    let q = es.eigenvectors.column(i);
                    proj.ger(es.eigenvalues[i], &q, &q, 1.0);
                }
            }
            let proj = (&proj + proj.transpose()) * 0.5;
            let mut k = offsets[j];
            for p in 0..r {
                for q in p..r {
                    out[k] = proj[(p, q)];
                    k += 1;
                }
            }
        }
        (out, worst)
    };
    let mut z = w.clone();
    let mut best_w: Option<(f64, DVector<f64>)> = None;
    let mut since_improve = 0usize;
    for _ in 0..5000 {
        let a = affine(&z);
        let (_, lo_a) = psd(&a);
        match &best_w {
            Some((lo, _)) if lo_a <= *lo => since_improve += 1,
            _ => {
                best_w = Some((lo_a, a.clone()));
                since_improve = 0;
            }
        }
        if lo_a >= -1e-10 || since_improve > 500 {
            break;
        }
        let reflected = &a * 2.0 - &z;
        let (p, _) = psd(&reflected);
        z += p - a;
    }
    if let Some((_, bw)) = best_w {
        w = bw;
    }

    let mut x: Vec<DMatrix<f64>> = Vec::with_capacity(faces.len());
    for (j, v) in faces.iter().enumerate() {
        let r = v.ncols();
        let mut wb = DMatrix::<f64>::zeros(r, r);
        let mut k = offsets[j];
        for p in 0..r {
            for q in p..r {
                wb[(p, q)] = w[k];
                wb[(q, p)] = w[k];
                k += 1;
            }
        }
        let xb = v * wb * v.transpose();
        x.push((&xb + xb.transpose()) * 0.5);
    }
    let u = DVector::from_fn(inst.free_dim, |k, _| w[psd_cols + k]);
    Some((x, u, cleaned))
}

fn build_schur(inst: &SdpInstance, it: &Iterate, fac: &Factored) -> Option<SchurSystem> {
    let m = inst.n_constraints();
    let f = inst.free_dim;
    let mut mmat = DMatrix::<f64>::zeros(m, m);

    // M_ik = sum_j tr(A_ij X_j A_kj S_j^-1), assembled block by block over
    // the constraints touching each block.
    for j in 0..inst.block_dims.len() {
        let touchers: Vec<(usize, &SparseSym)> = inst
            .constraints
            .iter()
            .enumerate()
            .flat_map(|(i, con)| {
                con.terms
                    .iter()
                    .filter(move |(jj, a)| *jj == j && !a.is_empty())
                    .map(move |(_, a)| (i, a))
            })
            .collect();
        for (kk, &(k, a_k)) in touchers.iter().enumerate() {
            // U = X_j A_kj S_j^-1
            let asinv = a_k.mul_dense(&fac.sinv[j]);
            let u = &it.x[j] * asinv;
            for &(i, a_i) in touchers.iter().take(kk + 1) {
                let v = a_i.dot(&u);
                mmat[(i, k)] += v;
                if i != k {
                    mmat[(k, i)] += v;
                }
            }
        }
    }

    let (m_chol, _) = chol_reg(&mmat)?;

    let mut fmat = DMatrix::<f64>::zeros(m, f);
    for (i, con) in inst.constraints.iter().enumerate() {
        for &(k, v) in &con.free {
            fmat[(i, k)] = v;
        }
    }

    let (w, g_chol) = if f > 0 {
        let w = m_chol.solve(&fmat);
        let g = fmat.transpose() * &w;
        let (gc, _) = chol_reg(&g)?;
        (w, Some(gc))
    } else {
        (DMatrix::zeros(m, 0), None)
    };

    Some(SchurSystem { mmat, m_chol, fmat, w, g_chol })
}

/// Re-factors an assembled Schur complement with an explicit diagonal
/// shift. Shifted systems yield damped (proximal) Newton directions that
/// remain exactly consistent with the residual equations — the primal part
/// is re-projected onto the constraint plane and the dual slack direction
/// is built from the shifted `dy` by definition — so only complementarity
/// progress slows. Used as a fallback when the unshifted factorization is
/// too ill-conditioned to produce a usable direction.
fn shift_schur(base: &SchurSystem, shift: f64) -> Option<SchurSystem> {
    let mut mmat = base.mmat.clone();
    for i in 0..mmat.nrows() {
        mmat[(i, i)] += shift;
    }
    let (m_chol, _) = chol_reg(&mmat)?;
    let fmat = base.fmat.clone();
    let (w, g_chol) = if fmat.ncols() > 0 {
        let w = m_chol.solve(&fmat);
        let g = fmat.transpose() * &w;
        let (gc, _) = chol_reg(&g)?;
        (w, Some(gc))
    } else {
        (DMatrix::zeros(mmat.nrows(), 0), None)
    };
    Some(SchurSystem { mmat, m_chol, fmat, w, g_chol })
}

/// Solves the Newton system for complementarity target
/// `X S + dX S + X dS = sigma*mu*I - corr`, with the current residuals on
/// the right-hand side.
fn solve_direction(
    inst: &SdpInstance,
    it: &Iterate,
    fac: &Factored,
    schur: &SchurSystem,
    fix: &FeasFix,
    res: &Residuals,
    sigma_mu: f64,
    corr: Option<&[DMatrix<f64>]>,
) -> Option<Direction> {
    let m = inst.n_constraints();
    let nb = inst.block_dims.len();

    // Per-block pieces of dX that do not depend on dy:
    //   E_j = sigma*mu*Sinv - corr*Sinv - X - X Rd Sinv
    let mut e = Vec::with_capacity(nb);
    for j in 0..nb {
        let mut ej = &fac.sinv[j] * sigma_mu;
        if let Some(c) = corr {
            ej -= &c[j] * &fac.sinv[j];
        }
        ej -= &it.x[j];
        ej -= &it.x[j] * &res.rd[j] * &fac.sinv[j];
        e.push(ej);
    }

    // h_i = rp_i + <A_i, X> + <A_i, X Rd Sinv + corr Sinv - sigma*mu*Sinv>
    //     = rp_i - <A_i, E>.
    let mut h = DVector::zeros(m);
    for (i, con) in inst.constraints.iter().enumerate() {
        let mut acc = res.rp[i];
        for (j, a) in &con.terms {
            acc -= a.dot(&e[*j]);
        }
        h[i] = acc;
    }

    // Augmented system: [M F; F' 0] [dy; du] = [h; rf].
    let (dy, du) = schur.solve_augmented(&h, &res.rf)?;

    // dS = Rd - A*(dy); dX = E + X dS' Sinv ... careful: dX = E + X (A*(dy)) Sinv.
    let mut ds = Vec::with_capacity(nb);
    let mut dx = Vec::with_capacity(nb);
    for (j, &dim) in inst.block_dims.iter().enumerate() {
        let mut astar = DMatrix::<f64>::zeros(dim, dim);
        for (i, con) in inst.constraints.iter().enumerate() {
            for (jj, a) in &con.terms {
                if *jj == j {
                    a.add_scaled_to(dy[i], &mut astar);
                }
            }
        }
        let dsj = &res.rd[j] - &astar;
        let dxj = &e[j] + &it.x[j] * &astar * &fac.sinv[j];
        let dxj = (&dxj + dxj.transpose()) * 0.5;
        ds.push(dsj);
        dx.push(dxj);
    }
    let mut du = du;
    fix.project(inst, &res.rp, &mut dx, &mut du);

    Some(Direction { dx, du, dy, ds })
}

fn step_lengths(it: &Iterate, fac: &Factored, dir: &Direction, frac: f64) -> (f64, f64) {
    let mut ap = 1.0f64;
    let mut ad = 1.0f64;
    for j in 0..it.x.len() {
        if let Some(a) = max_step(&fac.x_chol[j], &dir.dx[j]) {
            ap = ap.min(frac * a);
        }
        if let Some(a) = max_step(&fac.s_chol[j], &dir.ds[j]) {
            ad = ad.min(frac * a);
        }
    }
    (ap, ad)
}

/// Solve the instance. Deterministic: identical inputs and options yield
/// bit-identical solutions.
pub fn solve(inst: &SdpInstance, opts: &SdpOptions) -> Result<SdpSolution, SdpError> {
    inst.validate()?;
    let nb = inst.block_dims.len();
    let ntot: usize = inst.total_block_dim().max(1);

    let scales = {
        let b = 1.0
            + inst
                .constraints
                .iter()
                .map(|c| c.rhs.abs())
                .fold(0.0, f64::max);
        let c = 1.0
            + inst
                .cost_blocks
                .iter()
                .map(|cb| cb.max_abs())
                .fold(0.0, f64::max)
                .max(inst.cost_free.iter().fold(0.0f64, |a, &v| a.max(v.abs())));
        Scales { b, c }
    };

    // Identity start, scaled to the data.
    let init_scale = {
        let amax = inst
            .constraints
            .iter()
            .flat_map(|c| c.terms.iter().map(|(_, a)| a.max_abs()))
            .fold(0.0, f64::max);
        (scales.b.max(scales.c).max(amax)).max(10.0)
    };
    let mut it = Iterate {
        x: inst.block_dims.iter().map(|&d| DMatrix::identity(d, d) * init_scale).collect(),
        u: DVector::zeros(inst.free_dim),
        y: DVector::zeros(inst.n_constraints()),
        s: inst.block_dims.iter().map(|&d| DMatrix::identity(d, d) * init_scale).collect(),
    };

    let snapshot = |it: &Iterate, res: &Residuals, status: SdpStatus, iters: usize| {
        SdpSolution {
            status,
            primal_blocks: it.x.clone(),
            free_values: it.u.iter().copied().collect(),
            dual_y: it.y.iter().copied().collect(),
            dual_slacks: it.s.clone(),
            primal_objective: res.pobj,
            dual_objective: res.dobj,
            rel_gap: res.relgap,
            primal_residual: res.pinf,
            dual_residual: res.dinf,
            iterations: iters,
        }
    };

    let Some(fix) = build_feas_fix(inst) else {
        return Err(SdpError::SingularConstraintGram);
    };

    let mut best: Option<(f64, SdpSolution)> = None;
    let mut best_iter = 0usize;
    let mut anchor = 1.0 + init_scale;
    let mut converged: Option<(f64, SdpSolution)> = None;
    let mut extra = 0usize;
    let mut stall = 0usize;
    let mut iters = 0usize;

    for iter in 0..=opts.max_iter {
        iters = iter;
        let res = residuals(inst, &it, &scales);
        if !(res.pinf.is_finite() && res.dinf.is_finite() && res.relgap.is_finite()) {
            break;
        }
        let score = res.pinf.max(res.dinf).max(res.relgap);
        if std::env::var_os("SDP_TRACE").is_some() {
            let xm = it.x.iter().map(inf_norm).fold(0.0, f64::max);
            let ym = inf_norm(&it.y).max(inf_norm(&it.u));
            eprintln!(
                "it {iter:3} pobj {:+.8e} dobj {:+.8e} gap {:.3e} pinf {:.3e} dinf {:.3e} xmax {:.3e} ymax {:.3e}",
                res.pobj, res.dobj, res.relgap, res.pinf, res.dinf, xm, ym
            );
        }
        if best.as_ref().map_or(true, |(s, _)| score < 0.9 * *s) {
            best = Some((score, snapshot(&it, &res, SdpStatus::MaxIter, iter)));
            best_iter = iter;
            anchor = 1.0
                + it.x.iter().map(inf_norm).fold(0.0, f64::max)
                + inf_norm(&it.y).max(inf_norm(&it.u));
        }
        if res.pinf <= opts.tol_feas && res.dinf <= opts.tol_feas && res.relgap <= opts.tol_gap
        {
            // Tolerances met. A few extra improving steps tighten the gap
            // well below the exit threshold, so reported optimal values
            // carry far less noise than the tolerance itself.
            let improved = converged.as_ref().map_or(true, |(s, _)| score < 0.5 * *s);
            if improved {
                converged = Some((score, snapshot(&it, &res, SdpStatus::Optimal, iter)));
            }
            extra += 1;
            if !improved || extra > 12 || score <= 1e-12 {
                break;
            }
        } else if converged.is_some() {
            break;
        }
        if iter == opts.max_iter {
            break;
        }
        // A long stretch without a materially better iterate means the
        // method is wandering (degenerate optimal face, lost conditioning);
        // further iterations only risk corrupting the answer.
        if iter - best_iter > 25 {
            break;
        }
        // Divergence heuristic: infeasibility certified never, suspected only
        // on ray evidence. Primal infeasibility shows as a dual improving
        // ray: the dual variables explode, the objective explodes with them,
        // and the (scale-normalized) residual stays moderate — weak duality
        // rules this out for feasible instances. Symmetrically for a primal
        // ray. A blown-up iterate whose objectives stay ordinary is a
        // numerical breakdown, not evidence, and is left to the stall exits.
        let xmax = it.x.iter().map(inf_norm).fold(0.0, f64::max);
        let ymax = inf_norm(&it.y).max(inf_norm(&it.u));
        let dual_ray = res.dobj > 1e6 * (1.0 + res.pobj.abs())
            && res.dinf < 1e-2
            && ymax > 1e8 * init_scale;
        let primal_ray = res.pobj < -1e6 * (1.0 + res.dobj.abs())
            && res.pinf < 1e-2
            && xmax > 1e8 * init_scale;
        if dual_ray || primal_ray {
            let mut sol = best.map(|(_, s)| s).unwrap_or_else(|| {
                snapshot(&it, &res, SdpStatus::InfeasibleSuspect, iter)
            });
            sol.status = SdpStatus::InfeasibleSuspect;
            return Ok(sol);
        }

        let mu = res.gap_inner / ntot as f64;
        let Some(fac) = factor_iterate(&it) else { break };
        let Some(schur) = build_schur(inst, &it, &fac) else { break };

        // Predictor (affine scaling).
        let Some(aff) = solve_direction(inst, &it, &fac, &schur, &fix, &res, 0.0, None)
        else {
            break;
        };
        let (ap_a, ad_a) = step_lengths(&it, &fac, &aff, 1.0);
        let ap_a = ap_a.min(1.0);
        let ad_a = ad_a.min(1.0);
        let mut gap_aff = 0.0;
        for j in 0..nb {
            let xa = &it.x[j] + &aff.dx[j] * ap_a;
            let sa = &it.s[j] + &aff.ds[j] * ad_a;
            gap_aff += (xa * sa).trace();
        }
        let mu_aff = (gap_aff / ntot as f64).max(0.0);
        let sigma = if mu > 0.0 { ((mu_aff / mu).powi(3)).clamp(0.0, 1.0) } else { 0.0 };

        // Direction ladder: the Mehrotra corrector first; when the merit
        // test rejects it outright (a degenerate Schur system can emit a
        // wild direction), retry with progressively purer centering
        // directions, and finally with directions from a diagonally
        // shifted (proximal) Schur factorization, which are tamer still,
        // before declaring a stall. The shifted rungs skip the corrector:
        // it was built from the affine direction of the unshifted system,
        // which is exactly what is suspect at that point.
        //
        // Merit safeguard: accept a step only if the residual score does
        // not explode; otherwise halve the step lengths. Early iterations
        // may trade feasibility for centering, so the allowance is loose;
        // once nearly converged, a step that visibly degrades the iterate
        // is a symptom of a bad direction and gets cut hard. In the same
        // regime a step that balloons the iterate without paying for it in
        // score is junk drift along a null direction — the feasible set of
        // these problems is bounded, so late-stage norm growth never buys
        // anything. Large scores are exempt from the growth rule: a genuine
        // infeasibility ray must keep growing to produce its evidence.
        let corr: Vec<DMatrix<f64>> =
            (0..nb).map(|j| &aff.dx[j] * &aff.ds[j]).collect();
        let allowance = if score <= 1e-3 { 4.0 * score } else { 100.0 * score };
        let scale_now = 1.0 + xmax + ymax;
        let mut accepted = false;
        let mut bt_used = 1.0f64;
        let diag_max = schur.mmat.diagonal().amax().max(1e-300);
        let mut shifted: [Option<Option<SchurSystem>>; 2] = [None, None];
        'ladder: for (sig, with_corr, lvl) in [
            (sigma, true, 0usize),
            (0.5, false, 0),
            (1.0, false, 0),
            (0.5, false, 1),
            (0.5, false, 2),
            (1.0, false, 2),
        ] {
            let sys: &SchurSystem = if lvl == 0 {
                &schur
            } else {
                let slot = &mut shifted[lvl - 1];
                if slot.is_none() {
                    let shift = if lvl == 1 { 1e-10 } else { 1e-6 } * diag_max;
                    *slot = Some(shift_schur(&schur, shift));
                }
                match slot.as_ref().unwrap() {
                    Some(s) => s,
                    None => continue,
                }
            };
            let Some(dir) = solve_direction(
                inst,
                &it,
                &fac,
                sys,
                &fix,
                &res,
                sig * mu,
                if with_corr { Some(&corr) } else { None },
            ) else {
                if std::env::var_os("SDP_TRACE").is_some() {
                    eprintln!("  rung sig {sig:.2} lvl {lvl}: no direction");
                }
                continue;
            };
            let (ap, ad) = step_lengths(&it, &fac, &dir, opts.step_frac);
            let ap = ap.min(1.0);
            let ad = ad.min(1.0);
            if ap < 1e-12 && ad < 1e-12 {
                if std::env::var_os("SDP_TRACE").is_some() {
                    eprintln!("  rung sig {sig:.2} lvl {lvl}: zero step");
                }
                continue;
            }
            let apply = |scale: f64| -> Iterate {
                let mut next = it.clone();
                for j in 0..nb {
                    next.x[j] += &dir.dx[j] * (ap * scale);
                    next.s[j] += &dir.ds[j] * (ad * scale);
                    // Exact symmetry keeps the Cholesky-based steps meaningful.
                    next.x[j] = (&next.x[j] + next.x[j].transpose()) * 0.5;
                    next.s[j] = (&next.s[j] + next.s[j].transpose()) * 0.5;
                }
                next.u += &dir.du * (ap * scale);
                next.y += &dir.dy * (ad * scale);
                next
            };
            let mut bt = 1.0f64;
            for _ in 0..12 {
                let cand = apply(bt);
                let rn = residuals(inst, &cand, &scales);
                let score_new = rn.pinf.max(rn.dinf).max(rn.relgap);
                let scale_new = 1.0
                    + cand.x.iter().map(inf_norm).fold(0.0, f64::max)
                    + inf_norm(&cand.y).max(inf_norm(&cand.u));
                let bloat = score <= 1e-2
                    && (scale_new > 4.0 * scale_now || scale_new > 32.0 * anchor)
                    && score_new > 0.5 * score;
                if score_new.is_finite() && score_new <= allowance.max(1e-10) && !bloat
                {
                    it = cand;
                    accepted = true;
                    bt_used = bt;
                    break 'ladder;
                }
                if std::env::var_os("SDP_TRACE").is_some() {
                    eprintln!(
                        "  rung sig {sig:.2} lvl {lvl} bt {bt:.1e}: score {score_new:.3e} \
                         (allow {allowance:.3e}) scale {scale_new:.3e} bloat {bloat} \
                         ap {ap:.2e} ad {ad:.2e}"
                    );
                }
                bt *= 0.5;
            }
        }
        if !accepted {
            break;
        }
        // Heavily backtracked steps barely move the iterate; a run of them
        // is a stall, not progress.
        if bt_used < 1.0 / 256.0 {
            stall += 1;
            if stall >= 3 {
                break;
            }
        } else {
            stall = 0;
        }
    }

    if let Some((_, sol)) = converged {
        return Ok(sol);
    }

    // Never reached the tolerances; classify the best iterate seen.
    let mut sol = match best {
        Some((_, s)) => s,
        None => {
            let res = residuals(inst, &it, &scales);
            snapshot(&it, &res, SdpStatus::NumericalFailure, iters)
        }
    };
    // A converged dual paired with a drifting primal is the signature of a
    // degenerate optimal face; try to finish on the face the dual slack
    // identifies. Accept only a candidate that independently verifies.
    if sol.dual_residual <= 1e-9 {
        for cutoff in [1e-10, 1e-8, 1e-6] {
            let Some((px, pu, ps)) = polish_primal_on_face(
                inst,
                &sol.primal_blocks,
                &sol.dual_slacks,
                sol.dual_objective,
                cutoff,
            ) else {
                continue;
            };
            let cand = Iterate {
                x: px,
                u: pu,
                y: DVector::from_vec(sol.dual_y.clone()),
                s: ps,
            };
            let rn = residuals(inst, &cand, &scales);
            let min_eig = cand
                .x
                .iter()
                .flat_map(|xb| xb.symmetric_eigenvalues().iter().copied().collect::<Vec<_>>())
                .fold(f64::INFINITY, f64::min);
            if std::env::var_os("SDP_TRACE").is_some() {
                eprintln!(
                    "polish cutoff {cutoff:.0e}: pinf {:.3e} dinf {:.3e} gap {:.3e} mineig {:+.3e}",
                    rn.pinf, rn.dinf, rn.relgap, min_eig
                );
            }
            if min_eig >= -1e-9
                && rn.pinf <= opts.tol_feas
                && rn.dinf <= opts.tol_feas
                && rn.relgap <= opts.tol_gap
            {
                return Ok(snapshot(&cand, &rn, SdpStatus::Optimal, iters));
            }
        }
    }
    sol.status = if iters >= opts.max_iter {
        SdpStatus::MaxIter
    } else {
        // Left the loop early: factorization failure, stall, or non-finite
        // residuals.
        SdpStatus::NumericalFailure
    };
    sol.iterations = iters;
    Ok(sol)
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub primal_objective: f64,
    pub dual_objective: f64,
    pub rel_gap: f64,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub min_primal_eig: f64,
    pub min_dual_eig: f64,
    /// For Optimal solutions: the recomputed numbers actually meet the
    /// status contract (gap and residuals at 1e-7, PSD to -1e-9).
    pub status_confirmed: bool,
}

/// Recomputes objectives, residuals, and eigenvalue margins from the instance
/// data and the solution alone; trusts nothing the solver reported.
pub fn check_solution(inst: &SdpInstance, sol: &SdpSolution) -> Result<CheckReport, SdpError> {
    inst.validate()?;
    let scales = {
        let b = 1.0
            + inst.constraints.iter().map(|c| c.rhs.abs()).fold(0.0, f64::max);
        let c = 1.0
            + inst
                .cost_blocks
                .iter()
                .map(|cb| cb.max_abs())
                .fold(0.0, f64::max)
                .max(inst.cost_free.iter().fold(0.0f64, |a, &v| a.max(v.abs())));
        Scales { b, c }
    };
    let it = Iterate {
        x: sol.primal_blocks.clone(),
        u: DVector::from_column_slice(&sol.free_values),
        y: DVector::from_column_slice(&sol.dual_y),
        s: sol.dual_slacks.clone(),
    };
    let res = residuals(inst, &it, &scales);
    let min_eig = |ms: &[DMatrix<f64>]| {
        ms.iter()
            .map(|m| {
                m.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
            })
            .fold(f64::INFINITY, f64::min)
    };
    let min_primal_eig = min_eig(&sol.primal_blocks);
    let min_dual_eig = min_eig(&sol.dual_slacks);
    let status_confirmed = match sol.status {
        SdpStatus::Optimal => {
            res.pinf <= 1e-7
                && res.dinf <= 1e-7
                && res.relgap <= 1e-7
                && min_primal_eig >= -1e-9
        }
        _ => true,
    };
    Ok(CheckReport {
        primal_objective: res.pobj,
        dual_objective: res.dobj,
        rel_gap: res.relgap,
        primal_residual: res.pinf,
        dual_residual: res.dinf,
        min_primal_eig,
        min_dual_eig,
        status_confirmed,
    })
}
