//! Transporting certificates across a twin merge.
//!
//! When `a` and `b` are adjacent with the same closed neighborhood, the unit
//! form of `G` restricted to the simplex factors through the unit form of
//! `G` minus `a` by the substitution that sends the merged vertex's variable
//! to `x_a + x_b`. A certificate follows the same substitution: Grams map by
//! congruence with the substitution's action on the monomial basis, the
//! merged vertex's multiplier is reused for both `a` and `b` (splitting
//! `(x_a + x_b) s` into `x_a s + x_b s`), and the ideal multiplier is
//! substituted directly — the simplex generator is itself invariant.

use std::collections::BTreeMap;

use crate::graph::Graph;
use crate::msform::QuadForm;
use crate::poly::{monomial_basis, Poly};
use crate::scalar::{Coeff, SymMat};
use crate::stability;

use super::certificate::verify_identity;
use super::{SosCertificate, SosError};

/// Row-major matrix of the substitution's action between monomial bases of
/// degree `d`: row `k` holds the coefficients of `subs(old_basis[k])` in the
/// new basis. Substitutions here are sums of distinct variables, so degrees
/// are preserved exactly and the expansion always fits.
fn basis_action<C: Coeff>(
    subs: &[Poly<C>],
    old_vars: usize,
    new_vars: usize,
    d: usize,
) -> (Vec<C>, usize) {
    let old = monomial_basis(old_vars, d);
    let new = monomial_basis(new_vars, d);
    let col: BTreeMap<_, _> = new.iter().zip(0..).map(|(m, i)| (m.clone(), i)).collect();
    let mut t = vec![C::zero(); old.len() * new.len()];
    for (k, mo) in old.iter().enumerate() {
        let mut single = Poly::zero(old_vars);
        single.add_term(mo.clone(), C::one());
        for (mn, c) in single.substitute(subs).terms() {
            t[k * new.len() + col[mn]] = c.clone();
        }
    }
    (t, new.len())
}

/// Lifts a verified certificate for the unit form of `g` minus `min(pair)`
/// to one for the unit form of `g`, at the same level and with the same
/// bound. Exact inputs stay exact.
pub fn lift_certificate_through_twin<C: Coeff>(
    g: &Graph,
    pair: (usize, usize),
    cert: &SosCertificate<C>,
) -> Result<SosCertificate<C>, SosError> {
    let (a, b) = if pair.0 <= pair.1 { pair } else { (pair.1, pair.0) };
    if a == b || a < 1 || b > g.n() || !stability::is_twin_pair(g, a, b) {
        return Err(SosError::NotTwinPair { pair: (a, b) });
    }
    let (small, _) = g.delete_vertex(a)?;
    let report = verify_identity(
        &QuadForm::ms_matrix(&small).objective_poly::<C>(),
        cert,
    )?;
    if !report.pass {
        return Err(SosError::LiftInputInvalid { residual: report.residual });
    }

    let n = g.n();
    let m = n - 1;
    // In the reduced graph, labels above `a` shift down by one; the twin
    // partner `b` sits at `b - 1` and is the variable that fans back out.
    let merged = b - 1;
    let subs: Vec<Poly<C>> = (1..=m)
        .map(|k| {
            if k == merged {
                Poly::var(n, a).add(&Poly::var(n, b))
            } else {
                Poly::var(n, if k < a { k } else { k + 1 })
            }
        })
        .collect();

    let (t0, cols0) = basis_action(&subs, m, n, cert.r / 2);
    let (ti, colsi) = basis_action(&subs, m, n, (cert.r - 1) / 2);
    let gram0 = cert.gram0.congruence(&t0, cols0);
    let grams: Vec<SymMat<C>> = (1..=n)
        .map(|v| {
            let k = if v == a || v == b {
                merged
            } else if v < a {
                v
            } else {
                v - 1
            };
            cert.grams[k - 1].congruence(&ti, colsi)
        })
        .collect();
    let q = cert.q.substitute(&subs);
    Ok(SosCertificate {
        r: cert.r,
        lambda: cert.lambda.clone(),
        gram0,
        grams,
        q,
    })
}
