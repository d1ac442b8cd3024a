//! Sparse multivariate polynomials with a graded-lexicographic term order.
//!
//! Monomials are exponent vectors of fixed length (the ambient variable
//! count); terms live in a `BTreeMap` keyed by the order below, so iteration
//! is canonical and everything built from polynomials is deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use smallvec::SmallVec;

use crate::scalar::Coeff;

type Exponents = SmallVec<[u16; 8]>;

/// Exponent vector. Ordered by total degree, then lexicographically with the
/// earlier variable dominating, so for two variables the ascending order is
/// `1, x1, x2, x1^2, x1*x2, x2^2, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Exponents);

impl Monomial {
    pub fn constant(n_vars: usize) -> Monomial {
        Monomial(smallvec::smallvec![0u16; n_vars])
    }

    /// The monomial `x_i` (1-based `i`).
    pub fn var(n_vars: usize, i: usize) -> Monomial {
        assert!(1 <= i && i <= n_vars);
        let mut e: Exponents = smallvec::smallvec![0u16; n_vars];
        e[i - 1] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: &[u16]) -> Monomial {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Exponent of `x_i` (1-based).
    pub fn exponent_of(&self, i: usize) -> u16 {
        self.0[i - 1]
    }

    /// `self / x_i` if `x_i` divides, else `None`.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.0[i - 1] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i - 1] -= 1;
        Some(Monomial(e))
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `n_vars` variables of total degree at most `d`, in the
/// ascending graded-lex order above. Length is `C(n_vars + d, d)`.
pub fn monomial_basis(n_vars: usize, d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur: Vec<u16> = vec![0; n_vars];
    fn rec(out: &mut Vec<Monomial>, cur: &mut Vec<u16>, pos: usize, left: usize) {
        if pos == cur.len() {
            out.push(Monomial(SmallVec::from_slice(cur)));
            return;
        }
        for e in 0..=left {
            cur[pos] = e as u16;
            rec(out, cur, pos + 1, left - e);
        }
        cur[pos] = 0;
    }
    rec(&mut out, &mut cur, 0, d);
    out.sort();
    out
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<C> {
    n_vars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> Poly<C> {
    pub fn zero(n_vars: usize) -> Poly<C> {
        Poly { n_vars, terms: BTreeMap::new() }
    }

    pub fn constant(n_vars: usize, c: C) -> Poly<C> {
        let mut p = Poly::zero(n_vars);
        p.add_term(Monomial::constant(n_vars), c);
        p
    }

    /// The polynomial `x_i` (1-based).
    pub fn var(n_vars: usize, i: usize) -> Poly<C> {
        let mut p = Poly::zero(n_vars);
        p.add_term(Monomial::var(n_vars, i), C::one());
        p
    }

    /// `x_1 + ... + x_n - 1`, the simplex ideal generator.
    pub fn simplex_generator(n_vars: usize) -> Poly<C> {
        let mut p = Poly::constant(n_vars, -C::one());
        for i in 1..=n_vars {
            p.add_term(Monomial::var(n_vars, i), C::one());
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        debug_assert_eq!(m.n_vars(), self.n_vars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly<C>) -> Poly<C> {
        assert_eq!(self.n_vars, other.n_vars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly<C>) -> Poly<C> {
        assert_eq!(self.n_vars, other.n_vars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly<C> {
        let mut out = Poly::zero(self.n_vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, k: &C) -> Poly<C> {
        let mut out = Poly::zero(self.n_vars);
        if k.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * k.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly<C>) -> Poly<C> {
        assert_eq!(self.n_vars, other.n_vars);
        let mut out = Poly::zero(self.n_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Multiply by the single variable `x_i`.
    pub fn mul_var(&self, i: usize) -> Poly<C> {
        let xi = Monomial::var(self.n_vars, i);
        let mut out = Poly::zero(self.n_vars);
        for (m, c) in &self.terms {
            out.add_term(m.mul(&xi), c.clone());
        }
        out
    }

    pub fn eval(&self, x: &[C]) -> C {
        assert_eq!(x.len(), self.n_vars);
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = t * x[i].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Substitutes `x_i := subs[i-1]` for every variable simultaneously. All
    /// replacement polynomials must share a variable count, which becomes the
    /// result's.
    pub fn substitute(&self, subs: &[Poly<C>]) -> Poly<C> {
        assert_eq!(subs.len(), self.n_vars);
        let m_vars = subs.first().map_or(0, |p| p.n_vars);
        assert!(subs.iter().all(|p| p.n_vars == m_vars));
        let mut out = Poly::zero(m_vars);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(m_vars, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&subs[i]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    pub fn map_to_f64(&self) -> Poly<f64> {
        let mut out = Poly::zero(self.n_vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.to_f64());
        }
        out
    }
}
