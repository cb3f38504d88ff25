//! Lower and upper bounds for the image of the cycle map: the Chern
//! subring, and the even part of the joint kernel of the Milnor
//! derivations.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::f2algebra::{
    kernel_of_map, minimal_algebra_generators, minimal_generators, syzygies, Echelon, GradedSpan,
    GroebnerBasis, Limits, Monomial, Poly, PresentedAlgebra, Ring, SqTable, Variable,
};
use crate::swsolver::FinalPresentation;

/// A presented algebra with a known action of every `Sq^k` on generators.
#[derive(Clone, Debug)]
pub struct UnstableAlgebra {
    alg: PresentedAlgebra,
    table: SqTable,
}

impl UnstableAlgebra {
    /// Checks `Sq^0`, the top square and that each relation is sent to zero.
    pub fn new(alg: PresentedAlgebra, table: SqTable) -> Result<Self> {
        if !table.is_complete() {
            return Err(Error::Contract(
                "the Sq action is unknown on some generator".into(),
            ));
        }
        let ring = alg.ring().clone();
        for g in 0..ring.nvars() {
            let x = Poly::var(&ring, g);
            let d = ring.degree_of(g);
            if alg
                .reduce(&table.on_generator(0, g)?.add(&x, &ring))
                .is_zero()
                && alg
                    .reduce(&table.on_generator(d, g)?.add(&x.square(), &ring))
                    .is_zero()
            {
                continue;
            }
            return Err(Error::Inconsistent(format!(
                "Sq action on {} violates instability",
                ring.name(g)
            )));
        }
        for r in alg.relations().polys() {
            let d = r.homogeneous_degree().unwrap_or(0);
            for k in 1..=d {
                if !alg.reduce(&table.sq(k, r)?).is_zero() {
                    return Err(Error::Inconsistent(format!(
                        "Sq^{k} does not preserve the relations"
                    )));
                }
            }
        }
        Ok(UnstableAlgebra { alg, table })
    }

    /// The cohomology presentation with its computed squares, when every
    /// generator is a Stiefel-Whitney class.
    pub fn from_presentation(fp: &FinalPresentation) -> Result<Self> {
        let table = SqTable::new(&fp.ring, fp.steenrod.clone())?;
        Self::new(fp.algebra(), table)
    }

    #[must_use]
    pub fn algebra(&self) -> &PresentedAlgebra {
        &self.alg
    }

    #[must_use]
    pub fn table(&self) -> &SqTable {
        &self.table
    }

    #[must_use]
    pub fn ring(&self) -> &Ring {
        self.alg.ring()
    }

    /// `Sq^k(p)`, reduced.
    pub fn sq(&self, k: u32, p: &Poly) -> Result<Poly> {
        Ok(self.alg.reduce(&self.table.sq(k, p)?))
    }
}

/// A derivation given by its values on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub values: Vec<Poly>,
    pub degree: u32,
}

impl Derivation {
    #[must_use]
    pub fn zero(ring: &Ring, degree: u32) -> Self {
        Derivation {
            values: alloc::vec![Poly::zero(); ring.nvars()],
            degree,
        }
    }

    /// Leibniz extension, reduced in `alg`.
    #[must_use]
    pub fn apply(&self, alg: &PresentedAlgebra, p: &Poly) -> Poly {
        let ring = alg.ring();
        let mut acc = Vec::new();
        for m in p.terms() {
            for (v, e) in m.factors() {
                if e % 2 == 0 || self.values[v].is_zero() {
                    continue;
                }
                let rest = m.div(&ring.var(v)).unwrap();
                acc.extend(self.values[v].mul_monomial(&rest).into_terms());
            }
        }
        alg.reduce(&Poly::from_terms(ring, acc))
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Poly::is_zero)
    }
}

/// `Q_0, ..., Q_upto` with `Q_0 = Sq^1` and
/// `Q_{n+1} = Sq^{2^{n+1}} Q_n + Q_n Sq^{2^{n+1}}`.
pub fn milnor_derivations(a: &UnstableAlgebra, upto: u32) -> Result<Vec<Derivation>> {
    let ring = a.ring();
    let alg = a.algebra();
    let mut out: Vec<Derivation> = Vec::new();
    let mut q = Derivation {
        values: (0..ring.nvars())
            .map(|g| a.sq(1, &Poly::var(ring, g)))
            .collect::<Result<_>>()?,
        degree: 1,
    };
    out.push(q.clone());
    for n in 0..upto {
        let s = 1u32 << (n + 1);
        let mut values = Vec::with_capacity(ring.nvars());
        for g in 0..ring.nvars() {
            let x = Poly::var(ring, g);
            let left = a.sq(s, &q.values[g])?;
            let right = q.apply(alg, &a.sq(s, &x)?);
            values.push(left.add(&right, ring));
        }
        q = Derivation {
            values,
            degree: (1 << (n + 2)) - 1,
        };
        out.push(q.clone());
    }
    Ok(out)
}

/// `Q_i` alone.
pub fn milnor_derivation(i: u32, a: &UnstableAlgebra) -> Result<Derivation> {
    Ok(milnor_derivations(a, i)?.pop().unwrap())
}

/// Generator expressions of a subalgebra and the relations among them.
#[derive(Clone, Debug)]
pub struct SubalgebraPresentation {
    pub generators: Vec<Poly>,
    /// One fresh variable per generator.
    pub ring: Ring,
    pub relations: GroebnerBasis,
    pub minimal_relations: Vec<Poly>,
}

/// Presents the subalgebra generated by `gens` (taken as given) with
/// variables `prefix1, prefix2, ...`.
pub fn present(
    alg: &PresentedAlgebra,
    gens: &[Poly],
    prefix: &str,
    limits: &Limits,
) -> Result<SubalgebraPresentation> {
    let ring = Ring::new(
        gens.iter()
            .enumerate()
            .map(|(i, g)| {
                Variable::new(
                    format!("{prefix}{}", i + 1),
                    g.homogeneous_degree().unwrap_or(0),
                )
            })
            .collect(),
        crate::f2algebra::TermOrder::DegRevLex,
    )?;
    let relations = kernel_of_map(&ring, &[], alg, gens, limits)?;
    let minimal_relations = minimal_generators(&relations, limits)?;
    Ok(SubalgebraPresentation {
        generators: gens.to_vec(),
        ring,
        relations,
        minimal_relations,
    })
}

/// Output of a kernel computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationKernel {
    /// Minimal algebra generators of the joint kernel.
    pub generators: Vec<Poly>,
    /// Generators of the subring `B` used as coefficients.
    pub base: Vec<Poly>,
    /// Rank of the algebra over `B`.
    pub rank: usize,
    pub syzygies: usize,
}

/// Joint kernel of derivations vanishing on squares, through syzygies of
/// their values over the subring generated by the unmoved generators and
/// the squares of the moved ones.
pub fn derivation_kernel(
    alg: &PresentedAlgebra,
    ds: &[Derivation],
    limits: &Limits,
) -> Result<DerivationKernel> {
    let ring = alg.ring();
    let nv = ring.nvars();
    let moved: Vec<usize> = (0..nv)
        .filter(|&v| ds.iter().any(|d| !d.values[v].is_zero()))
        .collect();
    if moved.len() > 16 {
        return Err(Error::Budget(format!(
            "{} moved generators make the module rank too large",
            moved.len()
        )));
    }
    let is_moved = |v: usize| moved.contains(&v);
    let bring = Ring::new(
        (0..nv)
            .map(|v| {
                let d = ring.degree_of(v);
                let name = ring.name(v);
                if is_moved(v) {
                    Variable::new(format!("{name}^2"), 2 * d)
                } else {
                    Variable::new(name, d)
                }
            })
            .collect(),
        ring.order(),
    )?;
    let base: Vec<Poly> = (0..nv)
        .map(|v| {
            let x = Poly::var(ring, v);
            if is_moved(v) {
                x.square()
            } else {
                x
            }
        })
        .collect();
    let n = 1usize << moved.len();
    let eps: Vec<Poly> = (0..n)
        .map(|s| {
            let mut exps = alloc::vec![0u8; nv];
            for (b, &v) in moved.iter().enumerate() {
                exps[v] = (s >> b & 1) as u8;
            }
            Poly::monomial(ring.monomial(&exps))
        })
        .collect();
    let eps_deg: Vec<u32> = eps
        .iter()
        .map(|e| e.homogeneous_degree().unwrap())
        .collect();
    let decompose = |p: &Poly| -> Vec<Poly> {
        let mut comps: Vec<Vec<Monomial>> = alloc::vec![Vec::new(); n];
        for m in p.terms() {
            let mut s = 0usize;
            let mut exps: Vec<u8> = (0..nv).map(|v| m.exponent(v)).collect();
            for (b, &v) in moved.iter().enumerate() {
                let e = exps[v];
                s |= usize::from(e & 1) << b;
                exps[v] = e / 2;
            }
            comps[s].push(bring.monomial(&exps));
        }
        comps
            .into_iter()
            .map(|ms| Poly::from_terms(&bring, ms))
            .collect()
    };
    let j = ds.len();
    let qmax = ds.iter().map(|d| d.degree).max().unwrap_or(0);
    let mut shifts = Vec::with_capacity(n * j);
    for d in ds {
        for &e in &eps_deg {
            shifts.push(e + qmax - d.degree);
        }
    }
    let mut vectors: Vec<Vec<Poly>> = Vec::new();
    for e in &eps {
        let mut v = Vec::with_capacity(n * j);
        for d in ds {
            v.extend(decompose(&d.apply(alg, e)));
        }
        vectors.push(v);
    }
    let rels = minimal_generators(alg.relations(), limits)?;
    for f in &rels {
        for e in &eps {
            let parts = decompose(&f.mul(e, ring));
            for block in 0..j {
                let mut v = alloc::vec![Poly::zero(); n * j];
                v[block * n..(block + 1) * n].clone_from_slice(&parts);
                vectors.push(v);
            }
        }
    }
    let syz = if j == 0 {
        Vec::new()
    } else {
        syzygies(&bring, &vectors, Some(&shifts), limits)?
    };
    let mut candidates: Vec<Poly> = base.clone();
    if j == 0 {
        candidates.extend(eps.iter().cloned());
    }
    for s in &syz {
        let mut x = Poly::zero();
        for (c, e) in s.iter().zip(&eps) {
            if !c.is_zero() {
                x.add_assign(&c.substitute(&base, ring).mul(e, ring), ring);
            }
        }
        let x = alg.reduce(&x);
        if !x.is_zero() {
            candidates.push(x);
        }
    }
    let base: Vec<Poly> = base
        .iter()
        .map(|b| alg.reduce(b))
        .filter(|b| !b.is_zero())
        .collect();
    Ok(DerivationKernel {
        generators: minimal_algebra_generators(alg, &candidates),
        base,
        rank: n,
        syzygies: syz.len(),
    })
}

/// Generators of the even-degree part of the subalgebra generated by
/// `gens`: even generators and products of two odd ones.
#[must_use]
pub fn even_part(alg: &PresentedAlgebra, gens: &[Poly]) -> Vec<Poly> {
    let ring = alg.ring();
    let odd: Vec<&Poly> = gens
        .iter()
        .filter(|g| g.homogeneous_degree().unwrap_or(0) % 2 == 1)
        .collect();
    let mut cands: Vec<Poly> = gens
        .iter()
        .filter(|g| g.homogeneous_degree().unwrap_or(1) % 2 == 0)
        .cloned()
        .collect();
    for (i, a) in odd.iter().enumerate() {
        for b in &odd[i..] {
            cands.push(alg.reduce(&a.mul(b, ring)));
        }
    }
    minimal_algebra_generators(alg, &cands)
}

/// One stage of the kernel iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeStage {
    pub n: u32,
    pub kernel: DerivationKernel,
    pub even: Vec<Poly>,
    /// First even generator and square found to leave the even part.
    pub unstable: Option<(Poly, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeResult {
    pub generators: Vec<Poly>,
    /// Index `N` at which the even part became Sq-stable.
    pub termination: Option<u32>,
    pub stages: Vec<TildeStage>,
}

/// Whether `Sq^k u` stays in the even part of the joint kernel of `ds`,
/// for every `1 <= k < |u|`; returns the first failing `k`.
fn first_unstable(a: &UnstableAlgebra, ds: &[Derivation], u: &Poly) -> Result<Option<u32>> {
    let d = u.homogeneous_degree().unwrap_or(0);
    for k in 1..d {
        let s = a.sq(k, u)?;
        if s.is_zero() {
            continue;
        }
        if k % 2 == 1 || ds.iter().any(|q| !q.apply(a.algebra(), &s).is_zero()) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Even part of `ker Q_0 ∩ ... ∩ ker Q_N` for the first `N <= max_n`
/// at which it is stable under the Steenrod algebra.
pub fn tilde_subring(a: &UnstableAlgebra, max_n: u32, limits: &Limits) -> Result<TildeResult> {
    let all = milnor_derivations(a, max_n)?;
    let mut stages = Vec::new();
    for n in 0..=max_n {
        let ds = &all[..=n as usize];
        let kernel = derivation_kernel(a.algebra(), ds, limits)?;
        let even = even_part(a.algebra(), &kernel.generators);
        let mut unstable = None;
        for u in &even {
            if let Some(k) = first_unstable(a, ds, u)? {
                unstable = Some((u.clone(), k));
                break;
            }
        }
        let done = unstable.is_none();
        stages.push(TildeStage {
            n,
            kernel,
            even: even.clone(),
            unstable,
        });
        if done {
            return Ok(TildeResult {
                generators: even,
                termination: Some(n),
                stages,
            });
        }
    }
    let generators = stages.last().map(|s| s.even.clone()).unwrap_or_default();
    Ok(TildeResult {
        generators,
        termination: None,
        stages,
    })
}

/// Subalgebra generated by the given Chern classes.
pub fn chern_subring(
    alg: &PresentedAlgebra,
    classes: &[Poly],
    limits: &Limits,
) -> Result<SubalgebraPresentation> {
    let gens = minimal_algebra_generators(alg, classes);
    present(alg, &gens, "c", limits)
}

/// Chern classes of a solved presentation.
#[must_use]
pub fn chern_classes(fp: &FinalPresentation) -> Vec<Poly> {
    fp.chern_dictionary.iter().map(|(_, p)| p.clone()).collect()
}

/// Basis of `{u : u^2 = 0}` in degree `d`, as normal forms.
#[must_use]
pub fn square_zero(alg: &PresentedAlgebra, d: u32) -> Vec<Poly> {
    let ring = alg.ring();
    let src = alg.basis(d);
    let dst = alg.basis(2 * d);
    let images: Vec<_> = src
        .monomials
        .iter()
        .map(|m| dst.coords(&alg.reduce(&Poly::monomial(m.square()))))
        .collect();
    crate::f2algebra::linalg::nullspace(&images)
        .iter()
        .map(|v| src.poly(ring, v))
        .collect()
}

#[derive(Clone, Debug)]
pub struct ChowReport {
    pub chern: SubalgebraPresentation,
    pub tilde: SubalgebraPresentation,
    pub equal: bool,
    pub equal_mod_sqrt0: bool,
    pub termination: Option<u32>,
    pub notes: Vec<String>,
}

fn contained(alg: &PresentedAlgebra, gens: &[Poly], other: &[Poly]) -> bool {
    let mut span = GradedSpan::with_generators(alg, other);
    gens.iter().all(|g| span.contains(g))
}

fn contained_mod_sqrt0(alg: &PresentedAlgebra, gens: &[Poly], other: &[Poly]) -> bool {
    let mut span = GradedSpan::with_generators(alg, other);
    for g in gens {
        let g = alg.reduce(g);
        let Some(d) = g.homogeneous_degree() else {
            continue;
        };
        let basis = alg.basis(d);
        let mut ech = Echelon::new();
        for e in span.elements(d).iter().chain(&square_zero(alg, d)) {
            let _ = ech.insert(&basis.coords(e));
        }
        if !ech.contains(&basis.coords(&g)) {
            return false;
        }
    }
    true
}

/// Compares the two bounds by generator membership, exactly and modulo
/// elements of square zero.
pub fn compare_bounds(
    alg: &PresentedAlgebra,
    chern: SubalgebraPresentation,
    tilde: SubalgebraPresentation,
    termination: Option<u32>,
) -> ChowReport {
    let (c, t) = (&chern.generators, &tilde.generators);
    let equal = contained(alg, c, t) && contained(alg, t, c);
    let equal_mod_sqrt0 =
        equal || (contained_mod_sqrt0(alg, c, t) && contained_mod_sqrt0(alg, t, c));
    let mut notes = Vec::new();
    if termination.is_none() {
        notes.push("kernel iteration stopped before the even part became stable".into());
    }
    ChowReport {
        chern,
        tilde,
        equal,
        equal_mod_sqrt0,
        termination,
        notes,
    }
}

/// Whether `u^(2^n)` lies in the subalgebra generated by `gens` for each
/// `u` in `targets`.
#[must_use]
pub fn frobenius_probe(alg: &PresentedAlgebra, gens: &[Poly], targets: &[Poly], n: u32) -> bool {
    let mut span = GradedSpan::with_generators(alg, gens);
    targets.iter().all(|u| {
        let mut p = alg.reduce(u);
        for _ in 0..n {
            p = alg.reduce(&p.square());
        }
        span.contains(&p)
    })
}

/// Both bounds, with the stages of the kernel iteration.
pub fn chow_pipeline(
    a: &UnstableAlgebra,
    chern: &[Poly],
    max_n: u32,
    limits: &Limits,
) -> Result<(ChowReport, TildeResult)> {
    let tilde = tilde_subring(a, max_n, limits)?;
    let c = chern_subring(a.algebra(), chern, limits)?;
    let t = present(a.algebra(), &tilde.generators, "h", limits)?;
    Ok((compare_bounds(a.algebra(), c, t, tilde.termination), tilde))
}
