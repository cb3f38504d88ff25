//! Steenrod squares on polynomial rings, extended from generators by Cartan.

use alloc::format;
use alloc::vec::Vec;

use super::monomial::Monomial;
use super::poly::Poly;
use super::ring::Ring;
use crate::error::{Error, Result};

/// `binom(n, k) mod 2` by Lucas, with `binom(-1, 0) = 1`.
#[must_use]
pub fn binom_mod2(n: i64, k: i64) -> bool {
    if k < 0 {
        return false;
    }
    if k == 0 {
        return true;
    }
    if n < k {
        return false;
    }
    k & !n == 0
}

/// Values `Sq^k(g)` for every generator `g` and `0 <= k <= |g|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqTable {
    ring: Ring,
    entries: Vec<Option<Vec<Poly>>>,
}

impl SqTable {
    /// `entries[g]` holds `Sq^0 g, ..., Sq^|g| g`, or `None` when unknown.
    pub fn new(ring: &Ring, entries: Vec<Option<Vec<Poly>>>) -> Result<Self> {
        if entries.len() != ring.nvars() {
            return Err(Error::Contract("one Sq row per generator required".into()));
        }
        for (g, row) in entries.iter().enumerate() {
            let Some(row) = row else { continue };
            let d = ring.degree_of(g);
            if row.len() != d as usize + 1 {
                return Err(Error::Contract(format!(
                    "Sq row of {} must have {} entries",
                    ring.name(g),
                    d + 1
                )));
            }
            for (k, v) in row.iter().enumerate() {
                if !v.is_zero() && v.homogeneous_degree() != Some(d + k as u32) {
                    return Err(Error::Contract(format!(
                        "Sq^{k}({}) has the wrong degree",
                        ring.name(g)
                    )));
                }
            }
        }
        Ok(SqTable {
            ring: ring.clone(),
            entries,
        })
    }

    /// Table of a polynomial ring on degree-1 generators: `Sq^1 t = t^2`.
    #[must_use]
    pub fn degree_one(ring: &Ring) -> Self {
        let entries = (0..ring.nvars())
            .map(|g| {
                let v = Poly::var(ring, g);
                let mut row = Vec::new();
                for k in 0..=ring.degree_of(g) {
                    row.push(if k == 0 {
                        v.clone()
                    } else if k == ring.degree_of(g) {
                        v.square()
                    } else {
                        Poly::zero()
                    });
                }
                Some(row)
            })
            .collect();
        SqTable {
            ring: ring.clone(),
            entries,
        }
    }

    #[must_use]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    #[must_use]
    pub fn row(&self, g: usize) -> Option<&[Poly]> {
        self.entries[g].as_deref()
    }

    #[must_use]
    pub fn is_complete(&self) -> bool {
        self.entries.iter().all(Option::is_some)
    }

    /// `Sq^k(g)` on a generator.
    pub fn on_generator(&self, k: u32, g: usize) -> Result<Poly> {
        let d = self.ring.degree_of(g);
        if k > d {
            return Ok(Poly::zero());
        }
        match &self.entries[g] {
            Some(row) => Ok(row[k as usize].clone()),
            None => Err(Error::Contract(format!(
                "Sq action on {} is unknown",
                self.ring.name(g)
            ))),
        }
    }

    fn total(&self, g: usize, cap: u32) -> Result<Poly> {
        let d = self.ring.degree_of(g);
        let mut acc = Vec::new();
        for k in 0..=d {
            if d + k > cap {
                break;
            }
            acc.extend_from_slice(self.on_generator(k, g)?.terms());
        }
        Ok(Poly::from_terms(&self.ring, acc))
    }

    /// `Sq^k` of an arbitrary polynomial, without reduction.
    pub fn sq(&self, k: u32, p: &Poly) -> Result<Poly> {
        if k == 0 {
            return Ok(p.clone());
        }
        let mut acc = Vec::new();
        for m in p.terms() {
            acc.extend(self.sq_monomial(k, m)?.into_terms());
        }
        Ok(Poly::from_terms(&self.ring, acc))
    }

    fn sq_monomial(&self, k: u32, m: &Monomial) -> Result<Poly> {
        let target = m.degree() + k;
        if k > m.degree() {
            return Ok(Poly::zero());
        }
        let mut prod = Poly::one();
        for (g, e) in m.factors() {
            let t = self.total(g, target)?;
            let p = truncated_pow(&t, u32::from(e), target, &self.ring);
            prod = truncated_mul(&prod, &p, target, &self.ring);
            if prod.is_zero() {
                break;
            }
        }
        Ok(prod.homogeneous_part(target))
    }
}

fn truncated_mul(a: &Poly, b: &Poly, cap: u32, ring: &Ring) -> Poly {
    let mut all = Vec::new();
    for x in a.terms() {
        for y in b.terms() {
            if x.degree() + y.degree() <= cap {
                all.push(x.mul(y));
            }
        }
    }
    Poly::from_terms(ring, all)
}

fn truncated_pow(p: &Poly, mut e: u32, cap: u32, ring: &Ring) -> Poly {
    let mut base = p.truncate(cap);
    let mut acc = Poly::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = truncated_mul(&acc, &base, cap, ring);
        }
        e >>= 1;
        if e > 0 {
            base = base.square().truncate(cap);
        }
    }
    acc
}
