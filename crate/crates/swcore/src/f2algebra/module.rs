//! Submodules of free modules over a polynomial ring, and syzygies.

use alloc::vec::Vec;
use core::cmp::Ordering;

use super::groebner::{Counter, Limits};
use super::monomial::Monomial;
use super::poly::Poly;
use super::ring::Ring;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Term {
    comp: usize,
    mono: Monomial,
}

/// Components below `front` dominate; then shifted degree, ring order,
/// and lower component index.
struct Layout<'a> {
    ring: &'a Ring,
    front: usize,
    shifts: Vec<u32>,
}

impl Layout<'_> {
    fn degree(&self, t: &Term) -> u32 {
        t.mono.degree() + self.shifts[t.comp]
    }

    fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        (a.comp < self.front)
            .cmp(&(b.comp < self.front))
            .then_with(|| self.degree(a).cmp(&self.degree(b)))
            .then_with(|| self.ring.cmp(&a.mono, &b.mono))
            .then_with(|| b.comp.cmp(&a.comp))
    }

    fn normalize(&self, mut terms: Vec<Term>) -> Vec<Term> {
        terms.sort_unstable_by(|a, b| self.cmp(b, a));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if out.last() == Some(&t) {
                out.pop();
            } else {
                out.push(t);
            }
        }
        out
    }

    fn merge(&self, a: &[Term], b: &[Term]) -> Vec<Term> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.cmp(&a[i], &b[j]) {
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

    fn reduce(&self, v: &[Term], basis: &[&[Term]], counter: &mut Counter) -> Result<Vec<Term>> {
        let mut rest: Vec<Term> = v.to_vec();
        let mut head = 0;
        let mut out = Vec::new();
        while head < rest.len() {
            let t = rest[head];
            let hit = basis
                .iter()
                .position(|g| g[0].comp == t.comp && g[0].mono.divides(&t.mono));
            match hit {
                Some(k) => {
                    counter.tick()?;
                    let q = t.mono.div(&basis[k][0].mono).unwrap();
                    let scaled = scale(basis[k], &q);
                    rest = self.merge(&rest[head..], &scaled);
                    head = 0;
                }
                None => {
                    out.push(t);
                    head += 1;
                }
            }
        }
        Ok(out)
    }
}

fn scale(v: &[Term], m: &Monomial) -> Vec<Term> {
    v.iter()
        .map(|t| Term {
            comp: t.comp,
            mono: t.mono.mul(m),
        })
        .collect()
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Builder<'a> {
    layout: &'a Layout<'a>,
    elems: Vec<Vec<Term>>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Builder<'_> {
    fn lead(&self, i: usize) -> &Term {
        &self.elems[i][0]
    }

    fn active_refs(&self) -> Vec<&[Term]> {
        self.elems
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(v, _)| v.as_slice())
            .collect()
    }

    fn update(&mut self, h: Vec<Term>, sugar: u32) {
        let ring = self.layout.ring;
        let k = self.elems.len();
        self.elems.push(h);
        self.sugar.push(sugar);
        self.active.push(true);
        let lh = *self.lead(k);
        let mut c: Vec<Pair> = Vec::new();
        for i in 0..k {
            let li = self.lead(i);
            if self.active[i] && li.comp == lh.comp {
                let lcm = ring.lcm(&li.mono, &lh.mono);
                let si = self.sugar[i] + lcm.degree() - li.mono.degree();
                let sk = sugar + lcm.degree() - lh.mono.degree();
                c.push(Pair {
                    i,
                    j: k,
                    lcm,
                    sugar: si.max(sk),
                });
            }
        }
        let mut d: Vec<Pair> = Vec::new();
        while let Some(p) = c.pop() {
            if !c.iter().any(|q| q.lcm.divides(&p.lcm)) && !d.iter().any(|q| q.lcm.divides(&p.lcm))
            {
                d.push(p);
            }
        }
        let elems = &self.elems;
        let lead = |i: usize| elems[i][0];
        self.pairs.retain(|p| {
            !(lead(p.i).comp == lh.comp
                && lh.mono.divides(&p.lcm)
                && ring.lcm(&lead(p.i).mono, &lh.mono) != p.lcm
                && ring.lcm(&lead(p.j).mono, &lh.mono) != p.lcm)
        });
        self.pairs.extend(d);
        for i in 0..k {
            let li = lead(i);
            if self.active[i] && li.comp == lh.comp && lh.mono.divides(&li.mono) {
                self.active[i] = false;
            }
        }
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let mut best = 0;
        for (n, p) in self.pairs.iter().enumerate().skip(1) {
            let b = &self.pairs[best];
            let ord = p
                .sugar
                .cmp(&b.sugar)
                .then_with(|| self.layout.ring.cmp(&p.lcm, &b.lcm))
                .then_with(|| (p.i, p.j).cmp(&(b.i, b.j)));
            if ord == Ordering::Less {
                best = n;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

fn to_terms(v: &[Poly], offset: usize) -> Vec<Term> {
    let mut out = Vec::new();
    for (c, p) in v.iter().enumerate() {
        for m in p.terms() {
            out.push(Term {
                comp: c + offset,
                mono: *m,
            });
        }
    }
    out
}

fn groebner(
    layout: &Layout<'_>,
    gens: Vec<Vec<Term>>,
    counter: &mut Counter,
) -> Result<Vec<Vec<Term>>> {
    let mut b = Builder {
        layout,
        elems: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in gens {
        let g = layout.normalize(g);
        let h = layout.reduce(&g, &b.active_refs(), counter)?;
        if h.is_empty() {
            continue;
        }
        let s = g.iter().map(|t| layout.degree(t)).max().unwrap_or(0);
        b.update(h, s);
    }
    while let Some(p) = b.select() {
        counter.tick()?;
        let qi = p.lcm.div(&b.lead(p.i).mono).unwrap();
        let qj = p.lcm.div(&b.lead(p.j).mono).unwrap();
        let s = layout.merge(&scale(&b.elems[p.i], &qi), &scale(&b.elems[p.j], &qj));
        let h = layout.reduce(&s, &b.active_refs(), counter)?;
        if h.is_empty() {
            continue;
        }
        b.update(h, p.sugar);
    }
    Ok(b.elems
        .into_iter()
        .zip(b.active)
        .filter(|(_, a)| *a)
        .map(|(v, _)| v)
        .collect())
}

/// Generators of the module of relations `sum c_i v_i = 0`.
///
/// `shifts` gives the degree of each basis vector of the ambient free
/// module; all vectors must share its rank. Each returned syzygy has one
/// coefficient per input vector.
pub fn syzygies(
    ring: &Ring,
    vectors: &[Vec<Poly>],
    shifts: Option<&[u32]>,
    limits: &Limits,
) -> Result<Vec<Vec<Poly>>> {
    let Some(first) = vectors.first() else {
        return Ok(Vec::new());
    };
    let n = first.len();
    if vectors.iter().any(|v| v.len() != n) {
        return Err(Error::Contract("syzygy inputs must share one rank".into()));
    }
    let base: Vec<u32> = match shifts {
        Some(s) if s.len() == n => s.to_vec(),
        Some(_) => return Err(Error::Contract("one shift per component required".into())),
        None => alloc::vec![0; n],
    };
    let k = vectors.len();
    let mut all_shifts = base.clone();
    for v in vectors {
        let d = v
            .iter()
            .enumerate()
            .filter_map(|(c, p)| p.max_degree().map(|d| d + base[c]))
            .max()
            .unwrap_or(0);
        all_shifts.push(d);
    }
    let layout = Layout {
        ring,
        front: n,
        shifts: all_shifts,
    };
    let gens: Vec<Vec<Term>> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut t = to_terms(v, 0);
            t.push(Term {
                comp: n + i,
                mono: Monomial::one(),
            });
            t
        })
        .collect();
    let mut counter = Counter::new(limits, "syzygy computation");
    let gb = groebner(&layout, gens, &mut counter)?;
    let mut out = Vec::new();
    for v in gb {
        if v[0].comp < n {
            continue;
        }
        let mut coords: Vec<Vec<Monomial>> = alloc::vec![Vec::new(); k];
        for t in v {
            coords[t.comp - n].push(t.mono);
        }
        out.push(
            coords
                .into_iter()
                .map(|ms| Poly::from_terms(ring, ms))
                .collect(),
        );
    }
    Ok(out)
}

/// `sum c_i v_i`, componentwise.
#[must_use]
pub fn combine(ring: &Ring, coeffs: &[Poly], vectors: &[Vec<Poly>]) -> Vec<Poly> {
    let n = vectors.first().map_or(0, Vec::len);
    let mut out = alloc::vec![Poly::zero(); n];
    for (c, v) in coeffs.iter().zip(vectors) {
        for (slot, p) in out.iter_mut().zip(v) {
            slot.add_assign(&c.mul(p, ring), ring);
        }
    }
    out
}
