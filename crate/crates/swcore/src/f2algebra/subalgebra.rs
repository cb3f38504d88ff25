//! Subalgebras generated by homogeneous elements, handled degree by degree.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::algebra::{DegreeBasis, PresentedAlgebra};
use super::linalg::Echelon;
use super::poly::Poly;

struct Slice {
    basis: DegreeBasis,
    echelon: Echelon,
    elements: Vec<Poly>,
}

/// Linear spans of the graded pieces of a subalgebra.
pub struct GradedSpan<'a> {
    alg: &'a PresentedAlgebra,
    gens: Vec<Poly>,
    slices: BTreeMap<u32, Slice>,
}

impl<'a> GradedSpan<'a> {
    #[must_use]
    pub fn new(alg: &'a PresentedAlgebra) -> Self {
        GradedSpan {
            alg,
            gens: Vec::new(),
            slices: BTreeMap::new(),
        }
    }

    #[must_use]
    pub fn with_generators(alg: &'a PresentedAlgebra, gens: &[Poly]) -> Self {
        let mut s = Self::new(alg);
        for g in gens {
            s.add_generator(g);
        }
        s
    }

    #[must_use]
    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    /// Ignores zero and degree-zero elements.
    pub fn add_generator(&mut self, g: &Poly) {
        let g = self.alg.reduce(g);
        let Some(d) = g.homogeneous_degree() else {
            return;
        };
        if d == 0 {
            return;
        }
        self.gens.push(g);
        self.slices.retain(|&k, _| k < d);
    }

    fn build(&mut self, d: u32) {
        if self.slices.contains_key(&d) {
            return;
        }
        let basis = self.alg.basis(d);
        let mut echelon = Echelon::new();
        let mut elements = Vec::new();
        if d == 0 {
            let one = Poly::one();
            let _ = echelon.insert(&basis.coords(&one));
            elements.push(one);
        } else {
            for gi in 0..self.gens.len() {
                let gd = self.gens[gi].homogeneous_degree().unwrap();
                if gd > d {
                    continue;
                }
                self.build(d - gd);
                let lower: Vec<Poly> = self.slices[&(d - gd)].elements.clone();
                for e in &lower {
                    let p = self.alg.reduce(&self.gens[gi].mul(e, self.alg.ring()));
                    if p.is_zero() {
                        continue;
                    }
                    if echelon.insert(&basis.coords(&p)).is_ok() {
                        elements.push(p);
                    }
                }
            }
        }
        self.slices.insert(
            d,
            Slice {
                basis,
                echelon,
                elements,
            },
        );
    }

    /// Dimension of the degree-`d` piece of the subalgebra.
    pub fn dimension(&mut self, d: u32) -> usize {
        self.build(d);
        self.slices[&d].elements.len()
    }

    /// A basis of the degree-`d` piece, as normal forms.
    pub fn elements(&mut self, d: u32) -> &[Poly] {
        self.build(d);
        &self.slices[&d].elements
    }

    pub fn contains(&mut self, p: &Poly) -> bool {
        let p = self.alg.reduce(p);
        let Some(d) = p.homogeneous_degree() else {
            return p.is_zero();
        };
        self.build(d);
        let s = &self.slices[&d];
        s.echelon.contains(&s.basis.coords(&p))
    }
}

/// Drops every candidate lying in the subalgebra generated by the ones
/// kept before it, scanning by degree.
#[must_use]
pub fn minimal_algebra_generators(alg: &PresentedAlgebra, candidates: &[Poly]) -> Vec<Poly> {
    let ring = alg.ring();
    let mut cands: Vec<Poly> = candidates
        .iter()
        .map(|c| alg.reduce(c))
        .filter(|c| matches!(c.homogeneous_degree(), Some(d) if d > 0))
        .collect();
    cands.sort_by(|a, b| {
        a.homogeneous_degree()
            .cmp(&b.homogeneous_degree())
            .then_with(|| a.len().cmp(&b.len()))
            .then_with(|| cmp_terms(ring, a, b))
    });
    cands.dedup();
    let mut span = GradedSpan::new(alg);
    for c in cands {
        if !span.contains(&c) {
            span.add_generator(&c);
        }
    }
    span.gens
}

fn cmp_terms(ring: &super::ring::Ring, a: &Poly, b: &Poly) -> core::cmp::Ordering {
    for (x, y) in a.terms().iter().zip(b.terms()) {
        match ring.cmp(x, y) {
            core::cmp::Ordering::Equal => {}
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2algebra::groebner::Limits;
    use crate::f2algebra::ring::{Ring, Variable};
    use crate::f2algebra::text::parse_poly;
    use alloc::vec;

    #[test]
    fn squares_span_even_degrees() {
        let r = Ring::graded(vec![Variable::new("x", 1), Variable::new("y", 1)]).unwrap();
        let a = PresentedAlgebra::free(&r);
        let gens = vec![
            parse_poly(&r, "x^2").unwrap(),
            parse_poly(&r, "y^2").unwrap(),
        ];
        let mut s = GradedSpan::with_generators(&a, &gens);
        assert_eq!(s.dimension(4), 3);
        assert_eq!(s.dimension(3), 0);
        assert!(s.contains(&parse_poly(&r, "x^2*y^2 + x^4").unwrap()));
        assert!(!s.contains(&parse_poly(&r, "x^3*y").unwrap()));
    }

    #[test]
    fn minimalization() {
        let r = Ring::graded(vec![Variable::new("x", 1)]).unwrap();
        let a = PresentedAlgebra::new(&r, &[parse_poly(&r, "x^9").unwrap()], &Limits::default())
            .unwrap();
        let c = vec![
            parse_poly(&r, "x^4").unwrap(),
            parse_poly(&r, "x^2").unwrap(),
            parse_poly(&r, "x^6").unwrap(),
            parse_poly(&r, "x^3").unwrap(),
            parse_poly(&r, "x^10").unwrap(),
        ];
        let m = minimal_algebra_generators(&a, &c);
        assert_eq!(
            m,
            vec![
                parse_poly(&r, "x^2").unwrap(),
                parse_poly(&r, "x^3").unwrap()
            ]
        );
    }
}
