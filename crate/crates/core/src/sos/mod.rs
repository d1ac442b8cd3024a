//! Sum-of-squares relaxation levels for quadratic minimization over the
//! standard simplex.
//!
//! Level `r` asks for the largest `lambda` such that `x'Bx - lambda` is a sum
//! `s0 + sum_i x_i s_i + q (sum_i x_i - 1)` with `s0, s_i` sums of squares of
//! degree fitting inside `r` and `deg q <= r - 1`. That search is a
//! semidefinite program ([`assemble_level`]); its optimum is a certified
//! lower bound for the form's minimum over the simplex, nondecreasing in `r`.
//!
//! Besides the numeric path ([`solve_level`], [`sweep_levels`]) there are
//! exact rational certificates built by hand: a decomposition of
//! `n - sum x_i^2` ([`archimedean_certificate`]), the spectral shift bound
//! ([`feasibility_bound`]), a twin-merge transport of certificates between
//! graphs ([`lift_certificate_through_twin`]), and the degree-1 analogue of
//! the hierarchy for linear programs ([`lp::lp_level_one`]).

use std::collections::BTreeMap;


use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::GraphError;
use crate::msform::QuadForm;
use crate::poly::{monomial_basis, Monomial, Poly};
use crate::scalar::SymMat;
use crate::sdp::{
    self, Constraint, SdpError, SdpInstance, SdpOptions, SdpSolution, SdpStatus,
    SparseSym,
};
use crate::stability;

mod analytic;
mod certificate;
mod lift;
pub mod lp;

pub use analytic::{archimedean_certificate, archimedean_target, feasibility_bound};
pub use certificate::{
    verify_certificate, verify_identity, CertificateReport, SosCertificate,
};
pub use lift::lift_certificate_through_twin;

/// Verification PASS requires the coefficient residual at or below this.
pub const RESIDUAL_TOL: f64 = 1e-6;
/// ... and every Gram eigenvalue at or above this.
pub const GRAM_EIG_FLOOR: f64 = -1e-8;
/// A level counts as attaining a target when it gets within this of it.
pub const ATTAINMENT_TOL: f64 = 1e-6;
/// Default upper end for level sweeps.
pub const DEFAULT_R_MAX: usize = 6;
/// Refuse assemblies whose leading Gram basis exceeds this many monomials.
pub const BASIS_CAP: usize = 500;

#[derive(Debug, Error)]
pub enum SosError {
    #[error("level must be at least 2, got {r}")]
    LevelTooLow { r: usize },
    #[error(
        "level {r} on {n} variables needs a {dim}x{dim} leading Gram block \
         and {constraints} equality rows; cap is {cap} basis monomials"
    )]
    TooLarge { r: usize, n: usize, dim: usize, constraints: usize, cap: usize },
    #[error("certificate mismatch: {what} should be {expected}, got {got}")]
    DimensionMismatch { what: &'static str, expected: usize, got: usize },
    #[error("vertices ({0}, {1}) are not a twin pair", pair.0, pair.1)]
    NotTwinPair { pair: (usize, usize) },
    #[error("input certificate fails verification (residual {residual:.3e})")]
    LiftInputInvalid { residual: f64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Sdp(#[from] SdpError),
}

/// Outcome of solving one hierarchy level.
#[derive(Debug, Clone, Serialize)]
pub struct HierarchyResult {
    pub r: usize,
    /// Certified lower bound `lambda` found by the solver.
    pub value: f64,
    /// `1 / alpha(G)`, the common minimum of every admissible form on `G`.
    pub target: f64,
    /// `target - value`; nonnegative up to solver tolerance.
    pub gap_to_target: f64,
    /// Value within [`ATTAINMENT_TOL`] of the target and certificate verified.
    pub attained: bool,
    pub status: SdpStatus,
    pub verification: Option<CertificateReport>,
    /// Present only when verification passed.
    pub certificate: Option<SosCertificate<f64>>,
}

struct Assembled {
    instance: SdpInstance,
    basq: Vec<Monomial>,
}

/// `C(n + d, d)` saturating at `usize::MAX`: the number of monomials in `n`
/// variables of degree at most `d`, computed without materializing them.
fn basis_size(n: usize, d: usize) -> usize {
    let short = d.min(n) as u128;
    let long = (d.max(n)) as u128;
    let mut acc: u128 = 1;
    for k in 1..=short {
        acc = match acc.checked_mul(long + k) {
            // Exact at every prefix: acc is the binomial C(long + k, k).
            Some(v) => v / k,
            None => return usize::MAX,
        };
    }
    usize::try_from(acc).unwrap_or(usize::MAX)
}

fn assemble(qf: &QuadForm, r: usize) -> Result<Assembled, SosError> {
    if r < 2 {
        return Err(SosError::LevelTooLow { r });
    }
    let n = qf.n();
    // Size gate before any basis is materialized; high levels explode
    // combinatorially and must refuse cheaply.
    let dim0 = basis_size(n, r / 2);
    if dim0 > BASIS_CAP {
        return Err(SosError::TooLarge {
            r,
            n,
            dim: dim0,
            constraints: basis_size(n, r),
            cap: BASIS_CAP,
        });
    }
    let bas0 = monomial_basis(n, r / 2);
    let basi = monomial_basis(n, (r - 1) / 2);
    let basq = monomial_basis(n, r - 1);
    let rows = monomial_basis(n, r);
    let row_of: BTreeMap<&Monomial, usize> =
        rows.iter().zip(0..).map(|(m, i)| (m, i)).collect();

    // One equality per monomial of degree <= r: Gram and free contributions
    // on the left, the target form's coefficient on the right.
    let mut block_entries: Vec<Vec<Vec<(usize, usize, f64)>>> =
        vec![vec![Vec::new(); n + 1]; rows.len()];
    for k in 0..bas0.len() {
        for l in k..bas0.len() {
            let m = bas0[k].mul(&bas0[l]);
            block_entries[row_of[&m]][0].push((k, l, 1.0));
        }
    }
    for i in 1..=n {
        let xi = Monomial::var(n, i);
        for k in 0..basi.len() {
            for l in k..basi.len() {
                let m = basi[k].mul(&basi[l]).mul(&xi);
                block_entries[row_of[&m]][i].push((k, l, 1.0));
            }
        }
    }

    // Free variables: index 0 is lambda, then one coefficient per monomial of
    // q. `q_w * (sum_i x_i - 1)` hits row `w` with -1 and each `w + e_i` with +1.
    let mut free_entries: Vec<Vec<(usize, f64)>> = vec![Vec::new(); rows.len()];
    free_entries[row_of[&Monomial::constant(n)]].push((0, 1.0));
    for (w_idx, w) in basq.iter().enumerate() {
        free_entries[row_of[w]].push((1 + w_idx, -1.0));
        for i in 1..=n {
            let m = w.mul(&Monomial::var(n, i));
            free_entries[row_of[&m]].push((1 + w_idx, 1.0));
        }
    }

    let f: Poly<f64> = qf.objective_poly();
    let mut rhs = vec![0.0; rows.len()];
    for (m, c) in f.terms() {
        rhs[row_of[m]] = *c;
    }

    let mut block_dims = vec![bas0.len()];
    block_dims.extend(std::iter::repeat(basi.len()).take(n));
    let constraints = block_entries
        .into_iter()
        .zip(free_entries)
        .zip(rhs)
        .map(|((blocks, free), b)| {
            let terms = blocks
                .into_iter()
                .enumerate()
                .filter(|(_, es)| !es.is_empty())
                .map(|(j, es)| Ok((j, SparseSym::from_entries(block_dims[j], es)?)))
                .collect::<Result<Vec<_>, SdpError>>()?;
            Ok(Constraint { terms, free, rhs: b })
        })
        .collect::<Result<Vec<_>, SdpError>>()?;

    let cost_blocks = block_dims.iter().map(|&d| SparseSym::zero(d)).collect();
    let mut cost_free = vec![0.0; 1 + basq.len()];
    cost_free[0] = -1.0; // maximize lambda
    let instance = SdpInstance {
        block_dims,
        free_dim: 1 + basq.len(),
        cost_blocks,
        cost_free,
        constraints,
    };
    instance.validate()?;
    Ok(Assembled { instance, basq })
}

/// Encodes level `r` for `qf` as a semidefinite program whose optimum is
/// `-f^(r)`: the feasible points are exactly the certificates at level `r`,
/// and the objective minimizes `-lambda`.
pub fn assemble_level(qf: &QuadForm, r: usize) -> Result<SdpInstance, SosError> {
    Ok(assemble(qf, r)?.instance)
}

fn dense_to_symmat(m: &nalgebra::DMatrix<f64>) -> SymMat<f64> {
    let d = m.nrows();
    let mut g = SymMat::zeros(d);
    for i in 0..d {
        for j in i..d {
            g.set_sym(i, j, 0.5 * (m[(i, j)] + m[(j, i)]));
        }
    }
    g
}

fn extract_certificate(
    asm: &Assembled,
    sol: &SdpSolution,
    r: usize,
    n: usize,
) -> SosCertificate<f64> {
    let gram0 = dense_to_symmat(&sol.primal_blocks[0]);
    let grams = (1..=n)
        .map(|i| dense_to_symmat(&sol.primal_blocks[i]))
        .collect();
    let mut q = Poly::zero(n);
    for (w, &c) in asm.basq.iter().zip(&sol.free_values[1..]) {
        q.add_term(w.clone(), c);
    }
    SosCertificate { r, lambda: sol.free_values[0], gram0, grams, q }
}

/// Solves level `r` and verifies the extracted certificate. The certificate
/// is attached only when verification passes; a non-optimal solver status
/// yields the best value found with no certificate.
/// Solver options used for hierarchy levels. The hierarchy programs are
/// degenerate (optimal Gram matrices are singular), so levels run at the
/// tolerance the Optimal status contract guarantees rather than the tighter
/// library default.
pub fn hierarchy_options() -> SdpOptions {
    SdpOptions { tol_gap: 1e-7, tol_feas: 1e-7, ..SdpOptions::default() }
}

pub fn solve_level(qf: &QuadForm, r: usize) -> Result<HierarchyResult, SosError> {
    let asm = assemble(qf, r)?;
    let sol = sdp::solve(&asm.instance, &hierarchy_options())?;
    let n = qf.n();
    let target = 1.0 / stability::alpha(qf.graph()) as f64;
    // Only a converged solve yields a meaningful bound. An infeasibility
    // suspect means the level admits no certificate at all, i.e. the level
    // value is -infinity (supremum over an empty set); low levels of graphs
    // whose quadratic form is indefinite on the simplex hyperplane behave
    // this way.
    let value = match sol.status {
        SdpStatus::InfeasibleSuspect => f64::NEG_INFINITY,
        _ => sol.free_values[0],
    };
    let mut out = HierarchyResult {
        r,
        value,
        target,
        gap_to_target: target - value,
        attained: false,
        status: sol.status,
        verification: None,
        certificate: None,
    };
    if sol.status == SdpStatus::Optimal {
        let cert = extract_certificate(&asm, &sol, r, n);
        let report = verify_certificate(qf, &cert)?;
        out.attained = report.pass && value >= target - ATTAINMENT_TOL;
        if report.pass {
            out.certificate = Some(cert);
        }
        out.verification = Some(report);
    }
    Ok(out)
}

/// Solves levels `2..=r_max` (in parallel) and returns them in level order.
pub fn sweep_levels(
    qf: &QuadForm,
    r_max: usize,
) -> Result<Vec<HierarchyResult>, SosError> {
    if r_max < 2 {
        return Err(SosError::LevelTooLow { r: r_max });
    }
    (2..=r_max)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|r| solve_level(qf, r))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn assembly_rejects_low_levels() {
        let qf = QuadForm::ms_matrix(&Graph::complete(2));
        assert!(matches!(
            assemble_level(&qf, 1),
            Err(SosError::LevelTooLow { r: 1 })
        ));
        assert!(matches!(
            assemble_level(&qf, 0),
            Err(SosError::LevelTooLow { r: 0 })
        ));
    }

    #[test]
    fn assembly_shape_k2_level2() {
        let qf = QuadForm::ms_matrix(&Graph::complete(2));
        let inst = assemble_level(&qf, 2).unwrap();
        // Leading Gram over {1, x1, x2}; per-variable Grams over {1};
        // free variables: lambda plus q over {1, x1, x2}.
        assert_eq!(inst.block_dims, vec![3, 1, 1]);
        assert_eq!(inst.free_dim, 4);
        assert_eq!(inst.n_constraints(), 6);
        assert_eq!(inst.cost_free[0], -1.0);
    }

    #[test]
    fn k2_level2_reaches_one_with_verified_certificate() {
        // Smallest instance where the optimal Gram is forced singular: the
        // solver has to cope without a strictly feasible primal point.
        let qf = QuadForm::ms_matrix(&Graph::complete(2));
        let res = solve_level(&qf, 2).unwrap();
        assert_eq!(res.status, SdpStatus::Optimal);
        assert!((res.value - 1.0).abs() <= 1e-6, "value {}", res.value);
        assert!(res.certificate.is_some());
        assert!(res.attained);
    }

    #[test]
    fn k3_level2_reaches_one_with_verified_certificate() {
        let qf = QuadForm::ms_matrix(&Graph::complete(3));
        let res = solve_level(&qf, 2).unwrap();
        assert_eq!(res.status, SdpStatus::Optimal);
        assert!((res.value - 1.0).abs() <= 1e-6, "value {}", res.value);
        let report = res.verification.as_ref().unwrap();
        assert!(report.pass, "residual {}", report.residual);
        assert!(res.attained);
    }

    #[test]
    fn c5_low_levels_stay_below_half_and_grow() {
        let qf = QuadForm::ms_matrix(&Graph::cycle(5));
        let sweep = sweep_levels(&qf, 4).unwrap();
        assert_eq!(sweep.len(), 3);
        // Level 2 admits no certificate at all: the odd-cycle form is
        // negative on a direction orthogonal to the all-ones vector, and at
        // degree 2 the multiplier structure cannot absorb that. The value is
        // the supremum over an empty set.
        assert_eq!(sweep[0].status, SdpStatus::InfeasibleSuspect);
        assert_eq!(sweep[0].value, f64::NEG_INFINITY);
        assert!(sweep[0].certificate.is_none());
        // Levels 3 and 4 converge to a value strictly below the 1/2 target.
        for res in &sweep[1..] {
            assert_eq!(res.status, SdpStatus::Optimal, "r={}", res.r);
            assert!(res.value <= 0.5 - 1e-3, "r={} value {}", res.r, res.value);
            assert!(!res.attained);
        }
        assert!(sweep[1].value <= sweep[2].value + 1e-7);
    }

    #[test]
    fn repeated_solves_are_bit_identical() {
        let qf = QuadForm::ms_matrix(&Graph::complete(3));
        let a = solve_level(&qf, 2).unwrap();
        let b = solve_level(&qf, 2).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(
            serde_json::to_string(&a.certificate).unwrap(),
            serde_json::to_string(&b.certificate).unwrap()
        );
    }
}
