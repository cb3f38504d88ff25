//! Brute-force linear algebra used as a reference for the ideal code.

use std::collections::BTreeMap;

use proptest::prelude::*;
use swcore::f2algebra::{Poly, Ring, TermOrder, Variable};

/// Exponent vectors of weighted degree `d`.
pub fn exponents(weights: &[u32], d: u32) -> Vec<Vec<u8>> {
    fn go(w: &[u32], left: u32, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == w.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let wi = w[cur.len()];
        let mut e = 0;
        while e * wi <= left {
            cur.push(e as u8);
            go(w, left - e * wi, cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    go(weights, d, &mut Vec::new(), &mut out);
    out
}

pub fn weights(ring: &Ring) -> Vec<u32> {
    (0..ring.nvars()).map(|v| ring.degree_of(v)).collect()
}

pub fn exps_of(ring: &Ring, p: &Poly) -> Vec<Vec<u8>> {
    p.terms()
        .iter()
        .map(|m| (0..ring.nvars()).map(|v| m.exponent(v)).collect())
        .collect()
}

pub fn poly_of(ring: &Ring, exps: &[Vec<u8>]) -> Poly {
    let mut p = Poly::zero();
    for e in exps {
        p.add_assign(&Poly::monomial(ring.monomial(e)), ring);
    }
    p
}

/// Row space over F2 with canonical residues.
#[derive(Clone, Debug, Default)]
pub struct Span {
    rows: BTreeMap<usize, Vec<bool>>,
}

impl Span {
    pub fn reduce(&self, v: &[bool]) -> Vec<bool> {
        let mut v = v.to_vec();
        for (&p, row) in &self.rows {
            if v[p] {
                for (a, b) in v.iter_mut().zip(row) {
                    *a ^= *b;
                }
            }
        }
        v
    }

    /// Adds `v`; true when it was independent.
    pub fn add(&mut self, v: &[bool]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|&b| b) else {
            return false;
        };
        for row in self.rows.values_mut() {
            if row[p] {
                for (a, b) in row.iter_mut().zip(&r) {
                    *a ^= *b;
                }
            }
        }
        self.rows.insert(p, r);
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// One degree of a polynomial ring with an ideal spanned in it.
pub struct Degree {
    pub monomials: Vec<Vec<u8>>,
    pub ideal: Span,
}

impl Degree {
    /// `F2[ring]_d` with the degree-`d` part of the ideal generated by
    /// homogeneous `gens`.
    pub fn new(ring: &Ring, gens: &[Poly], d: u32) -> Self {
        let w = weights(ring);
        let monomials = exponents(&w, d);
        let mut ideal = Span::default();
        for g in gens {
            for part in homogeneous_pieces(ring, g) {
                let e = degree_of(&w, &part[0]);
                if e > d {
                    continue;
                }
                for m in exponents(&w, d - e) {
                    let shifted: Vec<Vec<u8>> = part
                        .iter()
                        .map(|t| t.iter().zip(&m).map(|(a, b)| a + b).collect())
                        .collect();
                    let v = vector(&monomials, &shifted);
                    ideal.add(&v);
                }
            }
        }
        Degree { monomials, ideal }
    }

    pub fn coords(&self, ring: &Ring, p: &Poly) -> Vec<bool> {
        vector(&self.monomials, &exps_of(ring, p))
    }

    /// Dimension of the quotient in this degree.
    pub fn quotient_dim(&self) -> usize {
        self.monomials.len() - self.ideal.rank()
    }

    pub fn residue(&self, ring: &Ring, p: &Poly) -> Vec<bool> {
        self.ideal.reduce(&self.coords(ring, p))
    }

    pub fn in_ideal(&self, ring: &Ring, p: &Poly) -> bool {
        self.residue(ring, p).iter().all(|b| !b)
    }
}

pub fn degree_of(w: &[u32], e: &[u8]) -> u32 {
    e.iter().zip(w).map(|(a, b)| u32::from(*a) * b).sum()
}

/// Terms of `p` grouped by degree.
pub fn homogeneous_pieces(ring: &Ring, p: &Poly) -> Vec<Vec<Vec<u8>>> {
    let w = weights(ring);
    let mut by: BTreeMap<u32, Vec<Vec<u8>>> = BTreeMap::new();
    for e in exps_of(ring, p) {
        by.entry(degree_of(&w, &e)).or_default().push(e);
    }
    by.into_values().collect()
}

pub fn vector(monomials: &[Vec<u8>], terms: &[Vec<u8>]) -> Vec<bool> {
    let mut v = vec![false; monomials.len()];
    for t in terms {
        let i = monomials
            .iter()
            .position(|m| m == t)
            .expect("term of the right degree");
        v[i] ^= true;
    }
    v
}

/// Rank of the span of `polys` modulo the ideal part of `deg`.
pub fn rank_mod(ring: &Ring, deg: &Degree, polys: &[Poly]) -> usize {
    let mut s = deg.ideal.clone();
    let base = s.rank();
    for p in polys {
        s.add(&deg.coords(ring, p));
    }
    s.rank() - base
}

pub fn ring_with(degrees: &[u32]) -> Ring {
    Ring::new(
        degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| Variable::new(format!("x{i}"), d))
            .collect(),
        TermOrder::DegRevLex,
    )
    .unwrap()
}

/// A homogeneous polynomial of degree `d` choosing monomials by `mask`.
pub fn pick(ring: &Ring, d: u32, mask: u64) -> Poly {
    let all = exponents(&weights(ring), d);
    let chosen: Vec<Vec<u8>> = all
        .into_iter()
        .enumerate()
        .filter(|(i, _)| mask >> (i % 64) & 1 == 1)
        .map(|(_, e)| e)
        .collect();
    poly_of(ring, &chosen)
}

/// Variable degrees in `1..=2` for two to four variables.
pub fn degrees() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..=2, 2..=4)
}

/// Up to `n` homogeneous generators as `(degree, mask)` seeds.
pub fn seeds(n: usize, max_deg: u32) -> impl Strategy<Value = Vec<(u32, u64)>> {
    prop::collection::vec((1..=max_deg, any::<u64>()), 1..=n)
}

pub fn build(ring: &Ring, seeds: &[(u32, u64)]) -> Vec<Poly> {
    seeds
        .iter()
        .map(|&(d, m)| pick(ring, d, m))
        .filter(|p| !p.is_zero())
        .collect()
}
