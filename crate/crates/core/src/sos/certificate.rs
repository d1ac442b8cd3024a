//! Gram-matrix certificates and their verification.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::msform::QuadForm;
use crate::poly::{monomial_basis, Monomial, Poly};
use crate::scalar::{Coeff, SymMat};

use super::{SosError, GRAM_EIG_FLOOR, RESIDUAL_TOL};

/// Witness that `f - lambda` decomposes as
/// `s0 + sum_i x_i s_i + q * (sum_i x_i - 1)`
/// with `s0`, `s_i` sums of squares given by PSD Gram matrices.
///
/// Degree bookkeeping for level `r`: the Gram of `s0` is indexed by the
/// monomial basis of degree `r/2` (floor), each `s_i` by the basis of degree
/// `(r-1)/2`, and `deg q <= r-1`, so every summand has degree at most `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct SosCertificate<C> {
    pub r: usize,
    pub lambda: C,
    pub gram0: SymMat<C>,
    /// One Gram per variable, aligned with `x_1..x_n`.
    pub grams: Vec<SymMat<C>>,
    pub q: Poly<C>,
}

impl<C: Coeff> SosCertificate<C> {
    pub fn n_vars(&self) -> usize {
        self.grams.len()
    }

    /// The certified polynomial `lambda + s0 + sum_i x_i s_i + q (sum x - 1)`.
    pub fn reconstruct(&self) -> Poly<C> {
        let n = self.n_vars();
        let bas0 = monomial_basis(n, self.r / 2);
        let basi = monomial_basis(n, (self.r - 1) / 2);
        let mut out = Poly::constant(n, self.lambda.clone());
        out = out.add(&gram_poly(&self.gram0, &bas0, n));
        for (i, g) in self.grams.iter().enumerate() {
            out = out.add(&gram_poly(g, &basi, n).mul_var(i + 1));
        }
        out.add(&self.q.mul(&Poly::simplex_generator(n)))
    }

    pub fn to_f64(&self) -> SosCertificate<f64> {
        SosCertificate {
            r: self.r,
            lambda: self.lambda.to_f64(),
            gram0: self.gram0.map_to_f64(),
            grams: self.grams.iter().map(SymMat::map_to_f64).collect(),
            q: self.q.map_to_f64(),
        }
    }
}

/// `sum_{k,l} G_kl b_k b_l` over the given monomial basis.
fn gram_poly<C: Coeff>(g: &SymMat<C>, bas: &[Monomial], n: usize) -> Poly<C> {
    let mut p = Poly::zero(n);
    for k in 0..g.dim() {
        for l in k..g.dim() {
            let c = g.get(k, l);
            if c.is_zero() {
                continue;
            }
            let coeff = if k == l { c } else { c.clone() + c };
            p.add_term(bas[k].mul(&bas[l]), coeff);
        }
    }
    p
}

/// Residual report from checking a certificate against its target polynomial.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub pass: bool,
    /// Largest absolute coefficient of `f - (lambda + reconstruction)`.
    pub residual: f64,
    /// Exact-arithmetic runs only: the residual polynomial is identically zero.
    pub residual_exactly_zero: bool,
    pub min_gram_eigenvalue: f64,
    pub grams_psd: bool,
    pub exact_arithmetic: bool,
}

/// Checks `cert` against an arbitrary target polynomial `f`.
///
/// Exact coefficients: PASS means the residual is identically zero and every
/// Gram is PSD by exact elimination. Floats: PASS means the residual is at
/// most [`RESIDUAL_TOL`] and every Gram eigenvalue is at least
/// [`GRAM_EIG_FLOOR`].
pub fn verify_identity<C: Coeff>(
    f: &Poly<C>,
    cert: &SosCertificate<C>,
) -> Result<CertificateReport, SosError> {
    let n = f.n_vars();
    if cert.grams.len() != n {
        return Err(SosError::DimensionMismatch {
            what: "per-variable Gram count",
            expected: n,
            got: cert.grams.len(),
        });
    }
    if cert.q.n_vars() != n {
        return Err(SosError::DimensionMismatch {
            what: "ideal multiplier variable count",
            expected: n,
            got: cert.q.n_vars(),
        });
    }
    let d0 = monomial_basis(n, cert.r / 2).len();
    if cert.gram0.dim() != d0 {
        return Err(SosError::DimensionMismatch {
            what: "leading Gram dimension",
            expected: d0,
            got: cert.gram0.dim(),
        });
    }
    let di = monomial_basis(n, (cert.r - 1) / 2).len();
    if let Some(g) = cert.grams.iter().find(|g| g.dim() != di) {
        return Err(SosError::DimensionMismatch {
            what: "per-variable Gram dimension",
            expected: di,
            got: g.dim(),
        });
    }
    if !cert.q.is_zero() && cert.q.degree() + 1 > cert.r {
        return Err(SosError::DimensionMismatch {
            what: "ideal multiplier degree",
            expected: cert.r - 1,
            got: cert.q.degree(),
        });
    }

    let diff = f.sub(&cert.reconstruct());
    let residual = diff.max_abs_coeff();
    let residual_exactly_zero = C::EXACT && diff.is_zero();

    let all_grams = std::iter::once(&cert.gram0).chain(cert.grams.iter());
    let min_gram_eigenvalue = all_grams
        .clone()
        .map(SymMat::min_eigenvalue)
        .fold(f64::INFINITY, f64::min);
    let grams_psd = if C::EXACT {
        all_grams.clone().all(SymMat::is_psd_exact)
    } else {
        min_gram_eigenvalue >= GRAM_EIG_FLOOR
    };

    let pass = if C::EXACT {
        residual_exactly_zero && grams_psd
    } else {
        residual <= RESIDUAL_TOL && grams_psd
    };
    Ok(CertificateReport {
        pass,
        residual,
        residual_exactly_zero,
        min_gram_eigenvalue,
        grams_psd,
        exact_arithmetic: C::EXACT,
    })
}

/// Checks `cert` against the quadratic objective of `qf`.
pub fn verify_certificate<C: Coeff>(
    qf: &QuadForm,
    cert: &SosCertificate<C>,
) -> Result<CertificateReport, SosError> {
    verify_identity(&qf.objective_poly::<C>(), cert)
}

pub(crate) fn monomial_key(m: &Monomial) -> String {
    if m.is_constant() {
        return "1".to_owned();
    }
    let mut s = String::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        let _ = write!(s, "x{}", i + 1);
        if e > 1 {
            let _ = write!(s, "^{e}");
        }
    }
    s
}

fn parse_monomial_key(s: &str, n: usize) -> Result<Monomial, String> {
    if s == "1" {
        return Ok(Monomial::constant(n));
    }
    let mut e = vec![0u16; n];
    for part in s.split('*') {
        let rest = part
            .strip_prefix('x')
            .ok_or_else(|| format!("bad monomial factor `{part}`"))?;
        let (idx, pow) = match rest.split_once('^') {
            Some((i, p)) => {
                (i, p.parse::<u16>().map_err(|_| format!("bad exponent in `{part}`"))?)
            }
            None => (rest, 1),
        };
        let i: usize =
            idx.parse().map_err(|_| format!("bad variable in `{part}`"))?;
        if i < 1 || i > n {
            return Err(format!("variable x{i} out of range for {n} variables"));
        }
        e[i - 1] = e[i - 1]
            .checked_add(pow)
            .ok_or_else(|| format!("exponent overflow in `{s}`"))?;
    }
    Ok(Monomial::from_exponents(&e))
}

#[derive(Serialize, Deserialize)]
struct GramJson {
    dim: usize,
    /// Row-major, `dim * dim` values.
    data: Vec<f64>,
}

impl GramJson {
    fn of<C: Coeff>(g: &SymMat<C>) -> GramJson {
        let d = g.dim();
        let mut data = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                data.push(g.get(i, j).to_f64());
            }
        }
        GramJson { dim: d, data }
    }

    fn into_symmat(self) -> Result<SymMat<f64>, String> {
        let d = self.dim;
        if self.data.len() != d * d {
            return Err(format!(
                "Gram data length {} does not match dimension {d}",
                self.data.len()
            ));
        }
        let mut g = SymMat::zeros(d);
        for i in 0..d {
            for j in i..d {
                g.set_sym(i, j, 0.5 * (self.data[i * d + j] + self.data[j * d + i]));
            }
        }
        Ok(g)
    }
}

impl<C: Coeff> Serialize for SosCertificate<C> {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("SosCertificate", 5)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("lambda", &self.lambda.to_f64())?;
        st.serialize_field("gram0", &GramJson::of(&self.gram0))?;
        st.serialize_field(
            "grams",
            &self.grams.iter().map(GramJson::of).collect::<Vec<_>>(),
        )?;
        let q: BTreeMap<String, f64> = self
            .q
            .terms()
            .map(|(m, c)| (monomial_key(m), c.to_f64()))
            .collect();
        st.serialize_field("q", &q)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SosCertificate<f64> {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct CertJson {
            r: usize,
            lambda: f64,
            gram0: GramJson,
            grams: Vec<GramJson>,
            q: BTreeMap<String, f64>,
        }
        let raw = CertJson::deserialize(de)?;
        let n = raw.grams.len();
        let gram0 = raw.gram0.into_symmat().map_err(D::Error::custom)?;
        let grams = raw
            .grams
            .into_iter()
            .map(|g| g.into_symmat().map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        let mut q = Poly::zero(n);
        for (k, v) in raw.q {
            q.add_term(parse_monomial_key(&k, n).map_err(D::Error::custom)?, v);
        }
        Ok(SosCertificate { r: raw.r, lambda: raw.lambda, gram0, grams, q })
    }
}
