//! Coefficient arithmetic and small symmetric matrices for the symbolic
//! layer.
//!
//! Everything downstream of polynomial algebra is generic over [`Coeff`],
//! instantiated at `BigRational` (exact: residuals either vanish or they
//! don't) and at `f64` (what the SDP solver produces). `EXACT` distinguishes
//! which comparisons are trustworthy.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait Coeff:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    const EXACT: bool;

    fn from_int(v: i64) -> Self;
    fn ratio(num: i64, den: i64) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    fn to_f64(&self) -> f64;
    fn div_by(&self, other: &Self) -> Self;
    fn is_neg(&self) -> bool;
}

impl Coeff for f64 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(r: &BigRational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn div_by(&self, other: &Self) -> Self {
        self / other
    }

    fn is_neg(&self) -> bool {
        *self < 0.0
    }
}

impl Coeff for BigRational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn div_by(&self, other: &Self) -> Self {
        self / other
    }

    fn is_neg(&self) -> bool {
        self.is_negative()
    }
}

pub fn brat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn bratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact value of a finite `f64`.
pub fn brat_from_f64(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite float")
}

/// Dense symmetric matrix over a coefficient ring. Both triangles are stored
/// and kept equal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMat<C> {
    n: usize,
    a: Vec<C>,
}

impl<C: Coeff> SymMat<C> {
    pub fn zeros(n: usize) -> Self {
        SymMat { n, a: vec![C::zero(); n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> C {
        self.a[i * self.n + j].clone()
    }

    /// Sets `(i,j)` and `(j,i)`.
    pub fn set_sym(&mut self, i: usize, j: usize, v: C) {
        self.a[i * self.n + j] = v.clone();
        self.a[j * self.n + i] = v;
    }

    /// Adds to `(i,j)` and, when off-diagonal, to `(j,i)`.
    pub fn add_sym(&mut self, i: usize, j: usize, v: C) {
        let n = self.n;
        self.a[i * n + j] = self.a[i * n + j].clone() + v.clone();
        if i != j {
            self.a[j * n + i] = self.a[j * n + i].clone() + v;
        }
    }

    pub fn add(&self, other: &SymMat<C>) -> SymMat<C> {
        assert_eq!(self.n, other.n);
        let a = self
            .a
            .iter()
            .zip(&other.a)
            .map(|(x, y)| x.clone() + y.clone())
            .collect();
        SymMat { n: self.n, a }
    }

    pub fn scale(&self, c: &C) -> SymMat<C> {
        let a = self.a.iter().map(|x| x.clone() * c.clone()).collect();
        SymMat { n: self.n, a }
    }

    /// Congruence transform `T^t A T`, where `T` is `n x m` row-major.
    pub fn congruence(&self, t: &[C], m: usize) -> SymMat<C> {
        assert_eq!(t.len(), self.n * m);
        // u = A T   (n x m)
        let mut u = vec![C::zero(); self.n * m];
        for i in 0..self.n {
            for k in 0..self.n {
                let aik = &self.a[i * self.n + k];
                if aik.is_zero() {
                    continue;
                }
                for j in 0..m {
                    u[i * m + j] =
                        u[i * m + j].clone() + aik.clone() * t[k * m + j].clone();
                }
            }
        }
        let mut out = SymMat::zeros(m);
        for i in 0..m {
            for j in i..m {
                let mut s = C::zero();
                for k in 0..self.n {
                    if !t[k * m + i].is_zero() {
                        s = s + t[k * m + i].clone() * u[k * m + j].clone();
                    }
                }
                out.set_sym(i, j, s);
            }
        }
        out
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.a[i * self.n + j].to_f64())
    }

    pub fn map_to_f64(&self) -> SymMat<f64> {
        SymMat { n: self.n, a: self.a.iter().map(Coeff::to_f64).collect() }
    }

    /// Smallest eigenvalue of the `f64` image; 0 for the empty matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        let m = self.to_dmatrix();
        let sym = nalgebra::SymmetricEigen::new(m);
        sym.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Exact positive-semidefiniteness via fraction-free elimination: a zero
    /// pivot forces its whole row to vanish, a negative pivot refutes.
    /// Meaningful only for exact coefficients.
    pub fn is_psd_exact(&self) -> bool {
        debug_assert!(C::EXACT);
        let n = self.n;
        let mut a = self.a.clone();
        for k in 0..n {
            let d = a[k * n + k].clone();
            if d.is_neg() {
                return false;
            }
            if d.is_zero() {
                if (k + 1..n).any(|j| !a[k * n + j].is_zero()) {
                    return false;
                }
                continue;
            }
            for i in (k + 1)..n {
                let f = a[i * n + k].clone().div_by(&d);
                if f.is_zero() {
                    continue;
                }
                for j in (k + 1)..n {
                    a[i * n + j] =
                        a[i * n + j].clone() - f.clone() * a[k * n + j].clone();
                }
            }
        }
        true
    }

    /// Exact positive-definiteness: every pivot strictly positive.
    pub fn is_pd_exact(&self) -> bool {
        debug_assert!(C::EXACT);
        let n = self.n;
        let mut a = self.a.clone();
        for k in 0..n {
            let d = a[k * n + k].clone();
            if d.is_neg() || d.is_zero() {
                return false;
            }
            for i in (k + 1)..n {
                let f = a[i * n + k].clone().div_by(&d);
                for j in (k + 1)..n {
                    a[i * n + j] =
                        a[i * n + j].clone() - f.clone() * a[k * n + j].clone();
                }
            }
        }
        true
    }
}
