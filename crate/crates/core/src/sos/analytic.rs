//! Hand-built exact certificates: the simplex ball identity and the
//! smallest-eigenvalue shift bound.

use num_rational::BigRational;
use num_traits::Zero;

use crate::msform::QuadForm;
use crate::poly::{Monomial, Poly};
use crate::scalar::{brat, brat_from_f64, bratio, SymMat};

use super::SosCertificate;

/// `n - sum_i x_i^2`, the target certified by [`archimedean_certificate`].
pub fn archimedean_target(n: usize) -> Poly<BigRational> {
    let mut f = Poly::constant(n, brat(n as i64));
    for i in 1..=n {
        let mut e = vec![0u16; n];
        e[i - 1] = 2;
        f.add_term(Monomial::from_exponents(&e), brat(-1));
    }
    f
}

/// Exact level-3 decomposition of `n - sum x_i^2` over the simplex, from
/// `1 - x_i^2 = (1+x_i)^2/2 (1-x_i) + (1-x_i)^2/2 (1+x_i)` with the linear
/// factor `1 - x_i` rewritten as `(1 - sum_k x_k) + sum_{k != i} x_k`:
///
/// * `s0   = sum_i (1-x_i)^2 / 2`
/// * `s_k  = (1-x_k)^2 / 2 + sum_{i != k} (1+x_i)^2 / 2`
/// * `q    = -sum_i (1+x_i)^2 / 2`
pub fn archimedean_certificate(n: usize) -> SosCertificate<BigRational> {
    let half = bratio(1, 2);
    let nhalf = bratio(n as i64, 2);
    let d = n + 1; // Gram basis {1, x_1, .., x_n}

    let mut gram0 = SymMat::zeros(d);
    gram0.set_sym(0, 0, nhalf.clone());
    for i in 1..=n {
        gram0.set_sym(0, i, -half.clone());
        gram0.set_sym(i, i, half.clone());
    }

    let grams = (1..=n)
        .map(|k| {
            let mut g = SymMat::zeros(d);
            g.set_sym(0, 0, nhalf.clone());
            for i in 1..=n {
                let sign = if i == k { -half.clone() } else { half.clone() };
                g.set_sym(0, i, sign);
                g.set_sym(i, i, half.clone());
            }
            g
        })
        .collect();

    let mut q = Poly::constant(n, -nhalf);
    for i in 1..=n {
        q.add_term(Monomial::var(n, i), brat(-1));
        let mut e = vec![0u16; n];
        e[i - 1] = 2;
        q.add_term(Monomial::from_exponents(&e), -half.clone());
    }

    SosCertificate { r: 3, lambda: BigRational::zero(), gram0, grams, q }
}

fn exact_matrix(qf: &QuadForm) -> SymMat<BigRational> {
    let n = qf.n();
    let mut b = SymMat::zeros(n);
    for i in 1..=n {
        for j in i..=n {
            let v = qf.entry(i, j);
            if !v.is_zero() {
                b.set_sym(i - 1, j - 1, v);
            }
        }
    }
    b
}

/// Embeds an `n x n` quadratic-form Gram into the basis `{1, x_1, .., x_n}`.
fn embed_quadratic(b: &SymMat<BigRational>) -> SymMat<BigRational> {
    let n = b.dim();
    let mut g = SymMat::zeros(n + 1);
    for i in 0..n {
        for j in i..n {
            let v = b.get(i, j);
            if !v.is_zero() {
                g.set_sym(i + 1, j + 1, v);
            }
        }
    }
    g
}

/// Rational lower bound `n*mu` for the form over the simplex, with an exact
/// certificate: `x'Bx - n*mu = x'(B - mu I)x + (-mu)(n - sum x_i^2)` for any
/// `mu` keeping `B - mu I` PSD. `mu` is taken just below the smallest
/// eigenvalue (exactly 0 when `B` itself is PSD, where the identity
/// degenerates to the plain Gram).
pub fn feasibility_bound(qf: &QuadForm) -> (BigRational, SosCertificate<BigRational>) {
    let n = qf.n();
    let b = exact_matrix(qf);
    if b.is_psd_exact() {
        let cert = SosCertificate {
            r: 2,
            lambda: BigRational::zero(),
            gram0: embed_quadratic(&b),
            grams: vec![SymMat::zeros(1); n],
            q: Poly::zero(n),
        };
        return (BigRational::zero(), cert);
    }

    // Largest convenient rational mu with B - mu I exactly PSD: start at the
    // float eigenvalue estimate and back off geometrically until exact
    // elimination accepts the shift.
    let base = brat_from_f64(b.min_eigenvalue());
    let mut margin = bratio(1, 1_000_000_000_000);
    let mu = loop {
        let cand = &base - &margin;
        let mut shifted = b.clone();
        for i in 0..n {
            shifted.set_sym(i, i, shifted.get(i, i) - cand.clone());
        }
        if shifted.is_psd_exact() {
            break cand;
        }
        margin = margin * brat(2);
    };

    let mut shifted = b;
    for i in 0..n {
        shifted.set_sym(i, i, shifted.get(i, i) - mu.clone());
    }
    let arch = archimedean_certificate(n);
    let neg_mu = -mu.clone();
    let gram0 = embed_quadratic(&shifted).add(&arch.gram0.scale(&neg_mu));
    let grams = arch.grams.iter().map(|g| g.scale(&neg_mu)).collect();
    let q = arch.q.scale(&neg_mu);
    let bound = brat(n as i64) * mu;
    let cert = SosCertificate { r: 3, lambda: bound.clone(), gram0, grams, q };
    (bound, cert)
}
