//! Finitely presented graded algebras and the maps between them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::groebner::{buchberger, GroebnerBasis, Limits};
use super::linalg::BitVec;
use super::monomial::{Monomial, MAX_VARS};
use super::poly::Poly;
use super::ring::{Ring, TermOrder, Variable};
use crate::error::{Error, Result};

/// All monomials of weighted degree `d`, ascending in the ring order.
#[must_use]
pub fn monomials_of_degree(ring: &Ring, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = [0u8; MAX_VARS];
    fill(ring, 0, d, &mut exps, &mut out);
    out.sort_by(|a, b| ring.cmp(a, b));
    out
}

fn fill(ring: &Ring, i: usize, left: u32, exps: &mut [u8; MAX_VARS], out: &mut Vec<Monomial>) {
    let n = ring.nvars();
    if left == 0 {
        out.push(ring.monomial(&exps[..n]));
        return;
    }
    if i == n {
        return;
    }
    let w = ring.degree_of(i);
    let mut e = 0u32;
    loop {
        exps[i] = u8::try_from(e).expect("exponent overflow");
        fill(ring, i + 1, left - e * w, exps, out);
        if (e + 1) * w > left {
            break;
        }
        e += 1;
    }
    exps[i] = 0;
}

/// A basis of one graded piece with a lookup table.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

impl DegreeBasis {
    #[must_use]
    pub fn new(degree: u32, monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        DegreeBasis {
            degree,
            monomials,
            index,
        }
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Coordinates of a polynomial already in normal form.
    #[must_use]
    pub fn coords(&self, p: &Poly) -> BitVec {
        let mut v = BitVec::zeros(self.len());
        for t in p.terms() {
            let i = self.index[t];
            v.set(i, true);
        }
        v
    }

    #[must_use]
    pub fn poly(&self, ring: &Ring, v: &BitVec) -> Poly {
        Poly::from_terms(ring, v.ones().map(|i| self.monomials[i]).collect())
    }
}

/// Graded connected algebra `F2[vars] / ideal`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedAlgebra {
    gb: GroebnerBasis,
}

impl PresentedAlgebra {
    pub fn new(ring: &Ring, relations: &[Poly], limits: &Limits) -> Result<Self> {
        for r in relations {
            if !r.is_homogeneous() {
                return Err(Error::Contract("relation is not homogeneous".into()));
            }
            if r.homogeneous_degree() == Some(0) {
                return Err(Error::Contract("relation of degree 0".into()));
            }
        }
        Ok(PresentedAlgebra {
            gb: buchberger(ring, relations, limits)?,
        })
    }

    #[must_use]
    pub fn free(ring: &Ring) -> Self {
        PresentedAlgebra {
            gb: GroebnerBasis::empty(ring),
        }
    }

    #[must_use]
    pub fn from_basis(gb: GroebnerBasis) -> Self {
        PresentedAlgebra { gb }
    }

    #[must_use]
    pub fn ring(&self) -> &Ring {
        self.gb.ring()
    }

    #[must_use]
    pub fn relations(&self) -> &GroebnerBasis {
        &self.gb
    }

    #[must_use]
    pub fn reduce(&self, p: &Poly) -> Poly {
        self.gb.normal_form(p)
    }

    /// Standard monomials of degree `d`, ascending.
    #[must_use]
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        monomials_of_degree(self.ring(), d)
            .into_iter()
            .filter(|m| !self.gb.is_reducible(m))
            .collect()
    }

    #[must_use]
    pub fn basis(&self, d: u32) -> DegreeBasis {
        DegreeBasis::new(d, self.standard_monomials(d))
    }

    #[must_use]
    pub fn graded_dimension(&self, d: u32) -> usize {
        self.standard_monomials(d).len()
    }

    /// Every element of degree `d` exactly once, by increasing bit mask
    /// over the ascending standard monomials.
    ///
    /// # Panics
    /// When the piece has dimension 64 or more.
    pub fn enumerate_degree(&self, d: u32) -> impl Iterator<Item = Poly> + '_ {
        let basis = self.standard_monomials(d);
        assert!(basis.len() < 64, "degree piece too large to enumerate");
        let ring = self.ring().clone();
        (0u64..1 << basis.len()).map(move |mask| {
            let terms = (0..basis.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| basis[i])
                .collect();
            Poly::from_terms(&ring, terms)
        })
    }

    /// Total dimension when finite.
    #[must_use]
    pub fn is_finite_dimensional(&self) -> Option<u64> {
        if self.gb.is_unit() {
            return Some(0);
        }
        let ring = self.ring();
        let mut top = 0u32;
        for v in 0..ring.nvars() {
            let k = self
                .gb
                .leading_monomials()
                .filter(|m| m.support() == 1 << v)
                .map(|m| m.exponent(v))
                .min()?;
            top += u32::from(k - 1) * ring.degree_of(v);
        }
        Some((0..=top).map(|d| self.graded_dimension(d) as u64).sum())
    }

    /// `self / (extra)`.
    pub fn quotient(&self, extra: &[Poly], limits: &Limits) -> Result<PresentedAlgebra> {
        Ok(PresentedAlgebra {
            gb: self.gb.extend(extra, limits)?,
        })
    }

    /// Highest degree of a relation, 0 when free.
    #[must_use]
    pub fn max_relation_degree(&self) -> u32 {
        self.gb
            .polys()
            .iter()
            .filter_map(Poly::max_degree)
            .max()
            .unwrap_or(0)
    }
}

/// Kernel of `F2[source] / source_relations -> target` sending variable `i`
/// to `images[i]`, as a reduced basis over the source ring.
pub fn kernel_of_map(
    source: &Ring,
    source_relations: &[Poly],
    target: &PresentedAlgebra,
    images: &[Poly],
    limits: &Limits,
) -> Result<GroebnerBasis> {
    if images.len() != source.nvars() {
        return Err(Error::Contract(
            "one image per source variable required".into(),
        ));
    }
    for (i, img) in images.iter().enumerate() {
        if !img.is_zero() && img.homogeneous_degree() != Some(source.degree_of(i)) {
            return Err(Error::Contract(format!(
                "image of {} has the wrong degree",
                source.name(i)
            )));
        }
    }
    let t = target.ring();
    let m = t.nvars();
    let mut vars: Vec<Variable> = t
        .vars()
        .iter()
        .map(|v| Variable::new(format!("t:{}", v.name), v.degree))
        .collect();
    vars.extend(
        source
            .vars()
            .iter()
            .map(|v| Variable::new(format!("s:{}", v.name), v.degree)),
    );
    let both = Ring::new(vars, TermOrder::BlockElim { split: m })?;
    let tmap: Vec<usize> = (0..m).collect();
    let smap: Vec<usize> = (m..m + source.nvars()).collect();
    let mut gens: Vec<Poly> = target
        .relations()
        .polys()
        .iter()
        .map(|p| p.remap(&tmap, &both))
        .collect();
    gens.extend(source_relations.iter().map(|p| p.remap(&smap, &both)));
    for (i, img) in images.iter().enumerate() {
        let s = Poly::var(&both, m + i);
        gens.push(s.add(&img.remap(&tmap, &both), &both));
    }
    let gb = buchberger(&both, &gens, limits)?;
    let front: u64 = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let back: Vec<usize> = (0..m + source.nvars())
        .map(|i| i.saturating_sub(m))
        .collect();
    let kept: Vec<Poly> = gb
        .polys()
        .iter()
        .filter(|p| p.support() & front == 0)
        .map(|p| p.remap(&back, source))
        .collect();
    buchberger(source, &kept, limits)
}
