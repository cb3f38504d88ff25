//! Sparse polynomials with coefficients in the field with two elements.

use alloc::vec::Vec;
use core::cmp::Ordering;

use super::monomial::Monomial;
use super::ring::Ring;

/// A set of monomials, kept sorted in descending ring order.
///
/// The polynomial does not own its ring; every operation that needs the
/// order takes it explicitly.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: Vec<Monomial>,
}

impl Poly {
    #[must_use]
    pub const fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    #[must_use]
    pub fn one() -> Self {
        Poly {
            terms: alloc::vec![Monomial::one()],
        }
    }

    #[must_use]
    pub fn monomial(m: Monomial) -> Self {
        Poly {
            terms: alloc::vec![m],
        }
    }

    #[must_use]
    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring.var(i))
    }

    /// Sorts and cancels repeated monomials in pairs.
    #[must_use]
    pub fn from_terms(ring: &Ring, mut terms: Vec<Monomial>) -> Self {
        terms.sort_unstable_by(|a, b| ring.cmp(b, a));
        let mut out: Vec<Monomial> = Vec::with_capacity(terms.len());
        for t in terms {
            if out.last() == Some(&t) {
                out.pop();
            } else {
                out.push(t);
            }
        }
        Poly { terms: out }
    }

    /// Trusts the caller that `terms` is strictly descending in `ring`.
    #[must_use]
    pub(crate) fn from_sorted(terms: Vec<Monomial>) -> Self {
        Poly { terms }
    }

    #[inline]
    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[must_use]
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].is_one()
    }

    #[inline]
    #[must_use]
    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    #[must_use]
    pub fn into_terms(self) -> Vec<Monomial> {
        self.terms
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    #[must_use]
    pub fn leading(&self) -> Option<&Monomial> {
        self.terms.first()
    }

    /// Degree shared by all terms; `None` for zero or mixed degrees.
    #[must_use]
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.degree();
        self.terms.iter().all(|t| t.degree() == d).then_some(d)
    }

    #[must_use]
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    #[must_use]
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.iter().map(Monomial::degree).max()
    }

    #[must_use]
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|t| t.degree() == d)
                .copied()
                .collect(),
        }
    }

    /// Bit mask of the variables that occur.
    #[must_use]
    pub fn support(&self) -> u64 {
        self.terms.iter().fold(0, |acc, t| acc | t.support())
    }

    #[must_use]
    pub fn contains_term(&self, ring: &Ring, m: &Monomial) -> bool {
        self.terms.binary_search_by(|t| ring.cmp(m, t)).is_ok()
    }

    #[must_use]
    pub fn add(&self, other: &Poly, ring: &Ring) -> Poly {
        Poly {
            terms: merge(&self.terms, &other.terms, ring),
        }
    }

    pub fn add_assign(&mut self, other: &Poly, ring: &Ring) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            self.terms = other.terms.clone();
            return;
        }
        self.terms = merge(&self.terms, &other.terms, ring);
    }

    /// Multiplication by a monomial keeps the order, so no re-sort happens.
    #[must_use]
    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|t| t.mul(m)).collect(),
        }
    }

    #[must_use]
    pub fn mul(&self, other: &Poly, ring: &Ring) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            return other.mul_monomial(&self.terms[0]);
        }
        if other.terms.len() == 1 {
            return self.mul_monomial(&other.terms[0]);
        }
        let mut all = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                all.push(a.mul(b));
            }
        }
        Poly::from_terms(ring, all)
    }

    /// Frobenius: squares every term.
    #[must_use]
    pub fn square(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(Monomial::square).collect(),
        }
    }

    #[must_use]
    pub fn pow(&self, mut e: u32, ring: &Ring) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ring);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Drops every term above degree `cap`.
    #[must_use]
    pub fn truncate(&self, cap: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|t| t.degree() <= cap)
                .copied()
                .collect(),
        }
    }

    /// Evaluates the ring map sending variable `i` of `src` to `images[i]`.
    #[must_use]
    pub fn substitute(&self, images: &[Poly], target: &Ring) -> Poly {
        let mut cache: Vec<Vec<Poly>> = alloc::vec![Vec::new(); images.len()];
        let mut acc: Vec<Monomial> = Vec::new();
        for t in &self.terms {
            let mut prod = Poly::one();
            for (i, e) in t.factors() {
                let powers = &mut cache[i];
                if powers.is_empty() {
                    powers.push(Poly::one());
                }
                while powers.len() <= usize::from(e) {
                    let next = powers.last().unwrap().mul(&images[i], target);
                    powers.push(next);
                }
                prod = prod.mul(&powers[usize::from(e)], target);
                if prod.is_zero() {
                    break;
                }
            }
            acc.extend_from_slice(&prod.terms);
        }
        Poly::from_terms(target, acc)
    }

    /// Renames variables through an index map into another ring.
    #[must_use]
    pub fn remap(&self, map: &[usize], target: &Ring) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|t| t.remap(map, target.weights()))
            .collect();
        Poly::from_terms(target, terms)
    }
}

/// Symmetric difference of two descending lists.
pub(crate) fn merge(a: &[Monomial], b: &[Monomial], ring: &Ring) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match ring.cmp(&a[i], &b[j]) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
