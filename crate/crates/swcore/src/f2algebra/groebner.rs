//! Buchberger's algorithm with the Gebauer-Moeller criteria and sugar selection.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::monomial::Monomial;
use super::poly::{merge, Poly};
use super::ring::Ring;
use crate::error::{Error, Result};

/// Resource limits for ideal computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of elementary reduction steps per call.
    pub steps: u64,
    /// When set, S-pairs and inputs above this degree are discarded.
    pub degree_cap: Option<u32>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            steps: 200_000_000,
            degree_cap: None,
        }
    }
}

impl Limits {
    #[must_use]
    pub fn with_cap(self, cap: Option<u32>) -> Self {
        Limits {
            degree_cap: cap,
            ..self
        }
    }
}

pub(crate) struct Counter {
    left: u64,
    what: &'static str,
}

impl Counter {
    pub(crate) fn new(limits: &Limits, what: &'static str) -> Self {
        Counter {
            left: limits.steps,
            what,
        }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        if self.left == 0 {
            return Err(Error::Budget(format!(
                "{} abandoned after step budget",
                self.what
            )));
        }
        self.left -= 1;
        Ok(())
    }
}

/// Full reduction of `p` by polynomials with the given leading monomials.
pub(crate) fn reduce_with(
    p: &Poly,
    basis: &[&Poly],
    ring: &Ring,
    counter: &mut Counter,
) -> Result<Poly> {
    let lms: Vec<Monomial> = basis.iter().map(|g| *g.leading().unwrap()).collect();
    let mut rest: Vec<Monomial> = p.terms().to_vec();
    let mut head = 0;
    let mut out: Vec<Monomial> = Vec::new();
    while head < rest.len() {
        let t = rest[head];
        match lms.iter().position(|l| l.divides(&t)) {
            Some(k) => {
                counter.tick()?;
                let q = t.div(&lms[k]).unwrap();
                let g = basis[k].mul_monomial(&q);
                rest = merge(&rest[head..], g.terms(), ring);
                head = 0;
            }
            None => {
                out.push(t);
                head += 1;
            }
        }
    }
    Ok(Poly::from_sorted(out))
}

/// A reduced Groebner basis, sorted by ascending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    polys: Vec<Poly>,
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Builder<'a> {
    ring: &'a Ring,
    polys: Vec<Poly>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Builder<'_> {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading().unwrap()
    }

    fn active_refs(&self) -> Vec<&Poly> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
            .collect()
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let si = self.sugar[i] + lcm.degree() - self.lm(i).degree();
        let sj = self.sugar[j] + lcm.degree() - self.lm(j).degree();
        si.max(sj)
    }

    /// Gebauer-Moeller installation of a new element.
    fn update(&mut self, h: Poly, sugar: u32) {
        let k = self.polys.len();
        self.polys.push(h);
        self.sugar.push(sugar);
        self.active.push(true);
        let lh = *self.lm(k);
        let mut c: Vec<Pair> = Vec::new();
        for i in 0..k {
            if self.active[i] {
                let lcm = self.ring.lcm(self.lm(i), &lh);
                let s = self.pair_sugar(i, k, &lcm);
                c.push(Pair {
                    i,
                    j: k,
                    lcm,
                    sugar: s,
                });
            }
        }
        let mut d: Vec<Pair> = Vec::new();
        while let Some(p) = c.pop() {
            let disjoint = self.lm(p.i).coprime(&lh);
            if disjoint
                || (!c.iter().any(|q| q.lcm.divides(&p.lcm))
                    && !d.iter().any(|q| q.lcm.divides(&p.lcm)))
            {
                d.push(p);
            }
        }
        let e: Vec<Pair> = d
            .into_iter()
            .filter(|p| !self.lm(p.i).coprime(&lh))
            .collect();
        let ring = self.ring;
        let polys = &self.polys;
        let lmk = |i: usize| *polys[i].leading().unwrap();
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm)
                && ring.lcm(&lmk(p.i), &lh) != p.lcm
                && ring.lcm(&lmk(p.j), &lh) != p.lcm)
        });
        self.pairs.extend(e);
        for i in 0..k {
            if self.active[i] && lh.divides(&lmk(i)) {
                self.active[i] = false;
            }
        }
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ring = self.ring;
        let mut best = 0;
        for (n, p) in self.pairs.iter().enumerate().skip(1) {
            let b = &self.pairs[best];
            let ord = p
                .sugar
                .cmp(&b.sugar)
                .then_with(|| ring.cmp(&p.lcm, &b.lcm))
                .then_with(|| (p.i, p.j).cmp(&(b.i, b.j)));
            if ord == Ordering::Less {
                best = n;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Groebner basis of the ideal generated by `gens`.
pub fn buchberger(ring: &Ring, gens: &[Poly], limits: &Limits) -> Result<GroebnerBasis> {
    let mut counter = Counter::new(limits, "Buchberger");
    let mut input: Vec<Poly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .filter(|g| match (limits.degree_cap, g.homogeneous_degree()) {
            (Some(cap), Some(d)) => d <= cap,
            _ => true,
        })
        .cloned()
        .collect();
    input.sort_by(|a, b| {
        ring.cmp(a.leading().unwrap(), b.leading().unwrap())
            .then_with(|| a.len().cmp(&b.len()))
            .then_with(|| cmp_polys(ring, a, b))
    });
    input.dedup();
    let mut b = Builder {
        ring,
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in input {
        let h = reduce_with(&g, &b.active_refs(), ring, &mut counter)?;
        if h.is_zero() {
            continue;
        }
        if h.is_one() {
            return Ok(GroebnerBasis {
                ring: ring.clone(),
                polys: alloc::vec![Poly::one()],
            });
        }
        let s = g.max_degree().unwrap_or(0);
        b.update(h, s);
    }
    while let Some(p) = b.select() {
        if let Some(cap) = limits.degree_cap {
            if p.sugar > cap {
                continue;
            }
        }
        counter.tick()?;
        let qi = p.lcm.div(b.lm(p.i)).unwrap();
        let qj = p.lcm.div(b.lm(p.j)).unwrap();
        let s = b.polys[p.i]
            .mul_monomial(&qi)
            .add(&b.polys[p.j].mul_monomial(&qj), ring);
        let h = reduce_with(&s, &b.active_refs(), ring, &mut counter)?;
        if h.is_zero() {
            continue;
        }
        if h.is_one() {
            return Ok(GroebnerBasis {
                ring: ring.clone(),
                polys: alloc::vec![Poly::one()],
            });
        }
        b.update(h, p.sugar);
    }
    let mut kept: Vec<Poly> = b
        .polys
        .into_iter()
        .zip(b.active)
        .filter(|(_, a)| *a)
        .map(|(p, _)| p)
        .collect();
    kept.sort_by(|x, y| ring.cmp(x.leading().unwrap(), y.leading().unwrap()));
    let mut out = Vec::with_capacity(kept.len());
    for k in 0..kept.len() {
        let others: Vec<&Poly> = kept
            .iter()
            .enumerate()
            .filter(|&(n, _)| n != k)
            .map(|(_, p)| p)
            .collect();
        out.push(reduce_with(&kept[k], &others, ring, &mut counter)?);
    }
    Ok(GroebnerBasis {
        ring: ring.clone(),
        polys: out,
    })
}

fn cmp_polys(ring: &Ring, a: &Poly, b: &Poly) -> Ordering {
    for (x, y) in a.terms().iter().zip(b.terms()) {
        match ring.cmp(x, y) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

impl GroebnerBasis {
    /// The zero ideal.
    #[must_use]
    pub fn empty(ring: &Ring) -> Self {
        GroebnerBasis {
            ring: ring.clone(),
            polys: Vec::new(),
        }
    }

    #[must_use]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    #[must_use]
    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    #[must_use]
    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_one()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.polys.iter().map(|p| p.leading().unwrap())
    }

    /// Unique remainder modulo the ideal.
    #[must_use]
    pub fn normal_form(&self, p: &Poly) -> Poly {
        let refs: Vec<&Poly> = self.polys.iter().collect();
        let mut c = Counter {
            left: u64::MAX,
            what: "normal form",
        };
        reduce_with(p, &refs, &self.ring, &mut c).expect("unbounded reduction")
    }

    #[must_use]
    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }

    #[must_use]
    pub fn is_reducible(&self, m: &Monomial) -> bool {
        self.leading_monomials().any(|l| l.divides(m))
    }

    /// Checks the defining criterion: every S-polynomial reduces to zero.
    #[must_use]
    pub fn satisfies_s_pair_criterion(&self) -> bool {
        let n = self.polys.len();
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (&self.polys[i], &self.polys[j]);
                let (la, lb) = (a.leading().unwrap(), b.leading().unwrap());
                let l = self.ring.lcm(la, lb);
                let s = a
                    .mul_monomial(&l.div(la).unwrap())
                    .add(&b.mul_monomial(&l.div(lb).unwrap()), &self.ring);
                if !self.contains(&s) {
                    return false;
                }
            }
        }
        true
    }

    /// Variables occurring anywhere in the basis.
    #[must_use]
    pub fn support(&self) -> u64 {
        self.polys.iter().fold(0, |a, p| a | p.support())
    }

    /// Adds generators and recomputes.
    pub fn extend(&self, extra: &[Poly], limits: &Limits) -> Result<GroebnerBasis> {
        let mut all = self.polys.clone();
        all.extend_from_slice(extra);
        buchberger(&self.ring, &all, limits)
    }

    #[must_use]
    pub fn is_homogeneous(&self) -> bool {
        self.polys.iter().all(Poly::is_homogeneous)
    }
}

/// Equality of ideals through their reduced bases.
pub fn ideal_equal(a: &GroebnerBasis, b: &GroebnerBasis, limits: &Limits) -> Result<bool> {
    if a.ring == b.ring {
        return Ok(a.polys == b.polys);
    }
    if a.ring.vars() != b.ring.vars() {
        return Err(Error::Contract(
            "ideals live over different variables".into(),
        ));
    }
    let again = buchberger(&a.ring, &b.polys, limits)?;
    Ok(a.polys == again.polys)
}

/// A minimal homogeneous generating set chosen from the basis, by degree.
pub fn minimal_generators(gb: &GroebnerBasis, limits: &Limits) -> Result<Vec<Poly>> {
    if !gb.is_homogeneous() {
        return Err(Error::Contract(
            "minimal generators need a homogeneous ideal".into(),
        ));
    }
    let ring = &gb.ring;
    let mut cands: Vec<&Poly> = gb.polys.iter().collect();
    cands.sort_by(|x, y| {
        x.homogeneous_degree()
            .cmp(&y.homogeneous_degree())
            .then_with(|| ring.cmp(x.leading().unwrap(), y.leading().unwrap()))
    });
    let mut kept: Vec<Poly> = Vec::new();
    let mut current: Option<(u32, GroebnerBasis)> = None;
    for g in cands {
        let d = g.homogeneous_degree().unwrap_or(0);
        let stale = current.as_ref().is_none_or(|(cd, _)| *cd != d);
        if stale {
            let sub = buchberger(ring, &kept, &limits.with_cap(Some(d)))?;
            current = Some((d, sub));
        }
        let sub = &current.as_ref().unwrap().1;
        if !sub.contains(g) {
            kept.push(g.clone());
            let next = buchberger(ring, &kept, &limits.with_cap(Some(d)))?;
            current = Some((d, next));
        }
    }
    Ok(kept)
}
