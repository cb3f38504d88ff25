//! Search for the map from the formal ring onto a known cohomology ring,
//! and the presentation it yields.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::f2algebra::{
    ideal_equal, kernel_of_map, minimal_generators, BitVec, Echelon, GroebnerBasis, Limits,
    Monomial, Poly, PresentedAlgebra, Ring, SqTable,
};
use crate::formalring::{chern_name, sw_name, wu_table, FormalRing, VarKind};
use crate::repdata::RepTheoryData;

/// How images of polynomial variables are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LiftMode {
    /// Enumerate the quotient by the image of the other variables, then lift.
    #[default]
    QuotientLift,
    /// Enumerate the full graded pieces.
    Exhaustive,
}

impl LiftMode {
    #[must_use]
    pub fn code(self) -> &'static str {
        match self {
            LiftMode::QuotientLift => "quotient-lift",
            LiftMode::Exhaustive => "exhaustive",
        }
    }
}

/// Order in which relations are used to constrain the remaining variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RelationOrder {
    /// Smallest number of open choices first, recomputed after each choice.
    #[default]
    Weight,
    /// As listed.
    Listed,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub mode: LiftMode,
    pub order: RelationOrder,
    /// Ceiling on enumerated assignments at any stage.
    pub max_candidates: u64,
    pub limits: Limits,
    /// Degree through which the final presentation is compared with the
    /// input; defaults to twice the top relation degree plus two.
    pub verify_bound: Option<u32>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            mode: LiftMode::default(),
            order: RelationOrder::default(),
            max_candidates: 1_000_000,
            limits: Limits::default(),
            verify_bound: None,
        }
    }
}

/// Runs a closure over independent items, keeping input order.
pub trait Mapper {
    fn map<T: Sync, R: Send>(&self, items: &[T], f: &(dyn Fn(&T) -> R + Sync)) -> Vec<R>;
}

pub struct Sequential;

impl Mapper for Sequential {
    fn map<T: Sync, R: Send>(&self, items: &[T], f: &(dyn Fn(&T) -> R + Sync)) -> Vec<R> {
        items.iter().map(f).collect()
    }
}

/// Images of the formal ring variables, possibly partial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CandidateMap {
    pub images: Vec<Option<Poly>>,
}

impl CandidateMap {
    #[must_use]
    pub fn empty(n: usize) -> Self {
        CandidateMap {
            images: alloc::vec![None; n],
        }
    }

    #[must_use]
    pub fn is_complete(&self) -> bool {
        self.images.iter().all(Option::is_some)
    }

    /// Images with unset variables sent to zero.
    #[must_use]
    pub fn completed(&self) -> Vec<Poly> {
        self.images
            .iter()
            .map(|p| p.clone().unwrap_or_else(Poly::zero))
            .collect()
    }

    fn sends_to_zero(&self, rel: &Poly, h: &PresentedAlgebra) -> bool {
        h.reduce(&rel.substitute(&self.completed(), h.ring()))
            .is_zero()
    }
}

/// A graded piece of an algebra, enumerable by bit masks.
struct Piece {
    basis: Vec<Monomial>,
}

impl Piece {
    fn new(basis: Vec<Monomial>) -> Result<Self> {
        if basis.len() >= 63 {
            return Err(Error::Budget(format!(
                "graded piece of dimension {} is too large to enumerate",
                basis.len()
            )));
        }
        Ok(Piece { basis })
    }

    fn dim(&self) -> u32 {
        self.basis.len() as u32
    }

    fn element(&self, ring: &Ring, mask: u64) -> Poly {
        let terms = (0..self.basis.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.basis[i])
            .collect();
        Poly::from_terms(ring, terms)
    }
}

fn bits_of(mask: u64, n: usize) -> BitVec {
    let mut b = BitVec::zeros(n);
    for i in 0..n {
        b.set(i, mask >> i & 1 == 1);
    }
    b
}

fn var_mask(vars: &[usize]) -> u64 {
    vars.iter().fold(0, |m, &v| m | 1 << v)
}

fn ceiling(opts: &SolveOptions, bits: u32, what: &str) -> Result<u64> {
    if bits >= 63 || 1u64 << bits > opts.max_candidates {
        return Err(Error::Budget(format!(
            "{what}: 2^{bits} assignments exceed the candidate ceiling {}",
            opts.max_candidates
        )));
    }
    Ok(1u64 << bits)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Step1Outcome {
    pub maps: Vec<CandidateMap>,
    /// Ordered bases of the degree-one piece that were examined.
    pub bases: u64,
    /// Bases satisfying the degree-one relations, before merging.
    pub admissible: u64,
}

/// Whether the linear substitution `a_i -> b_i` on degree one, identity
/// elsewhere, preserves the relations of `h`.
fn bridged(h: &PresentedAlgebra, a: &[Poly], b: &[Poly]) -> bool {
    let ring = h.ring();
    let basis = h.basis(1);
    let mut ech = Echelon::new();
    for p in a {
        if ech.insert(&basis.coords(p)).is_err() {
            return false;
        }
    }
    let mut images = Vec::with_capacity(ring.nvars());
    for v in 0..ring.nvars() {
        let x = Poly::var(ring, v);
        if ring.degree_of(v) != 1 {
            images.push(x);
            continue;
        }
        let (rem, tag) = ech.reduce(&basis.coords(&h.reduce(&x)));
        if !rem.is_zero() {
            return false;
        }
        let mut img = Poly::zero();
        for i in tag.ones() {
            img.add_assign(&b[i], ring);
        }
        images.push(img);
    }
    h.relations()
        .polys()
        .iter()
        .all(|r| h.reduce(&r.substitute(&images, ring)).is_zero())
}

/// Degree-one assignments that are isomorphisms on degree one and kill
/// every relation among degree-one variables, merged up to the
/// automorphisms of `h` that move only degree-one generators.
pub fn step1_degree_one(
    w: &FormalRing,
    h: &PresentedAlgebra,
    opts: &SolveOptions,
) -> Result<Step1Outcome> {
    let t = w.variables_of(VarKind::T);
    let piece = Piece::new(h.standard_monomials(1))?;
    if piece.dim() as usize != t.len() {
        return Err(Error::Inconsistent(format!(
            "inconsistent input: {} degree-one classes but the cohomology has dimension {} in degree one",
            t.len(),
            piece.dim()
        )));
    }
    let tmask = var_mask(&t);
    let rels: Vec<&Poly> = w
        .minimal_relations
        .iter()
        .filter(|r| r.support() & !tmask == 0)
        .collect();
    let mut out = Step1Outcome::default();
    let mut kept: Vec<Vec<Poly>> = Vec::new();
    let n = t.len();
    let top = 1u64 << n;
    // odometer over nonzero masks, first variable outermost
    let mut choice = alloc::vec![1u64; n];
    loop {
        let imgs: Vec<Poly> = choice.iter().map(|&m| piece.element(h.ring(), m)).collect();
        let mut ech = Echelon::new();
        let independent = choice.iter().all(|&m| ech.insert(&bits_of(m, n)).is_ok());
        if independent {
            out.bases += 1;
            if out.bases > opts.max_candidates {
                return Err(Error::Budget(format!(
                    "step 1: more than {} degree-one bases",
                    opts.max_candidates
                )));
            }
            let mut cand = CandidateMap::empty(w.ring().nvars());
            for (k, &v) in t.iter().enumerate() {
                cand.images[v] = Some(imgs[k].clone());
            }
            if rels.iter().all(|r| cand.sends_to_zero(r, h)) {
                out.admissible += 1;
                if !kept.iter().any(|a| bridged(h, a, &imgs)) {
                    kept.push(imgs);
                    out.maps.push(cand);
                }
            }
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < top {
                break;
            }
            choice[k] = 1;
        }
    }
}

/// Values for the remaining non-polynomial variables, one relation at a
/// time.
pub fn step2_q_assignments(
    partials: &[CandidateMap],
    w: &FormalRing,
    h: &PresentedAlgebra,
    opts: &SolveOptions,
) -> Result<Vec<CandidateMap>> {
    let q = w.variables_of(VarKind::Q);
    let qmask = var_mask(&q);
    let rels: Vec<Poly> = w
        .minimal_relations
        .iter()
        .filter(|r| r.support() & qmask != 0)
        .cloned()
        .collect();
    let mut pieces = alloc::collections::BTreeMap::new();
    for &v in &q {
        let d = w.ring().degree_of(v);
        if let alloc::collections::btree_map::Entry::Vacant(e) = pieces.entry(d) {
            e.insert(Piece::new(h.standard_monomials(d))?);
        }
    }
    let ctx = Step2 {
        w,
        h,
        opts,
        q: &q,
        rels: &rels,
        pieces: &pieces,
    };
    let mut out = Vec::new();
    for p in partials {
        let remaining: Vec<usize> = (0..rels.len()).collect();
        ctx.extend(p.clone(), &remaining, &mut out)?;
    }
    Ok(out)
}

struct Step2<'a> {
    w: &'a FormalRing,
    h: &'a PresentedAlgebra,
    opts: &'a SolveOptions,
    q: &'a [usize],
    rels: &'a [Poly],
    pieces: &'a alloc::collections::BTreeMap<u32, Piece>,
}

impl Step2<'_> {
    fn piece(&self, v: usize) -> &Piece {
        &self.pieces[&self.w.ring().degree_of(v)]
    }

    fn unset(&self, map: &CandidateMap, support: u64) -> Vec<usize> {
        self.q
            .iter()
            .copied()
            .filter(|&v| support >> v & 1 == 1 && map.images[v].is_none())
            .collect()
    }

    fn assignments(
        &self,
        map: &CandidateMap,
        vars: &[usize],
        what: &str,
    ) -> Result<Vec<CandidateMap>> {
        let bits: u32 = vars.iter().map(|&v| self.piece(v).dim()).sum();
        let total = ceiling(self.opts, bits, what)?;
        let ring = self.h.ring();
        let mut out = Vec::with_capacity(total as usize);
        for joint in 0..total {
            let mut m = map.clone();
            let mut shift = bits;
            for &v in vars {
                let piece = self.piece(v);
                shift -= piece.dim();
                let mask = joint >> shift & ((1u64 << piece.dim()) - 1);
                m.images[v] = Some(piece.element(ring, mask));
            }
            out.push(m);
        }
        Ok(out)
    }

    fn extend(
        &self,
        map: CandidateMap,
        remaining: &[usize],
        out: &mut Vec<CandidateMap>,
    ) -> Result<()> {
        if remaining.is_empty() {
            let open = self.unset(&map, var_mask(self.q));
            for m in self.assignments(&map, &open, "step 2")? {
                out.push(m);
                if out.len() as u64 > self.opts.max_candidates {
                    return Err(Error::Budget(format!(
                        "step 2: more than {} partial maps",
                        self.opts.max_candidates
                    )));
                }
            }
            return Ok(());
        }
        let pick = match self.opts.order {
            RelationOrder::Listed => 0,
            RelationOrder::Weight => {
                let weight = |k: usize| -> u32 {
                    self.unset(&map, self.rels[remaining[k]].support())
                        .iter()
                        .map(|&v| self.piece(v).dim())
                        .sum()
                };
                (0..remaining.len()).min_by_key(|&k| weight(k)).unwrap()
            }
        };
        let rel = &self.rels[remaining[pick]];
        let rest: Vec<usize> = remaining
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != pick)
            .map(|(_, &r)| r)
            .collect();
        let open = self.unset(&map, rel.support());
        for m in self.assignments(&map, &open, "step 2")? {
            if m.sends_to_zero(rel, self.h) {
                self.extend(m, &rest, out)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Step3Outcome {
    pub maps: Vec<CandidateMap>,
    /// Choices over the full graded pieces, summed over partial maps.
    pub raw: u64,
}

/// Images of the polynomial variables.
pub fn step3_p_assignments(
    partials: &[CandidateMap],
    w: &FormalRing,
    h: &PresentedAlgebra,
    opts: &SolveOptions,
) -> Result<Step3Outcome> {
    let p = w.variables_of(VarKind::P);
    let ring = h.ring();
    let mut out = Step3Outcome::default();
    for partial in partials {
        let full_bits: u32 = p
            .iter()
            .map(|&v| h.graded_dimension(w.ring().degree_of(v)) as u32)
            .sum();
        out.raw = out.raw.saturating_add(if full_bits >= 64 {
            u64::MAX
        } else {
            1u64 << full_bits
        });
        let target = match opts.mode {
            LiftMode::Exhaustive => h.clone(),
            LiftMode::QuotientLift => {
                let omega: Vec<Poly> = partial.images.iter().flatten().cloned().collect();
                h.quotient(&omega, &opts.limits)?
            }
        };
        // standard monomials of the quotient are standard in `h`, so each
        // element below is its own minimal lift
        let mut pieces = Vec::with_capacity(p.len());
        for &v in &p {
            pieces.push(Piece::new(
                target.standard_monomials(w.ring().degree_of(v)),
            )?);
        }
        let bits: u32 = pieces.iter().map(Piece::dim).sum();
        let total = ceiling(opts, bits, "step 3")?;
        for joint in 0..total {
            let mut m = partial.clone();
            let mut shift = bits;
            for (k, &v) in p.iter().enumerate() {
                shift -= pieces[k].dim();
                let mask = joint >> shift & ((1u64 << pieces[k].dim()) - 1);
                m.images[v] = Some(pieces[k].element(ring, mask));
            }
            out.maps.push(m);
            if out.maps.len() as u64 > opts.max_candidates {
                return Err(Error::Budget(format!(
                    "step 3: more than {} candidates",
                    opts.max_candidates
                )));
            }
        }
    }
    Ok(out)
}

/// Basis of the ideal of `h` generated by the images of positive-degree
/// variables.
pub fn image_ideal(
    c: &CandidateMap,
    h: &PresentedAlgebra,
    limits: &Limits,
) -> Result<GroebnerBasis> {
    let imgs: Vec<Poly> = c.images.iter().flatten().cloned().collect();
    h.relations().extend(&imgs, limits)
}

/// Finite generation of `h` as a module over the image.
pub fn test1_admissible(c: &CandidateMap, h: &PresentedAlgebra, limits: &Limits) -> Result<bool> {
    let q = PresentedAlgebra::from_basis(image_ideal(c, h, limits)?);
    Ok(q.is_finite_dimensional().is_some())
}

/// The formal ring with the missing cohomology generators adjoined.
#[derive(Clone, Debug)]
pub struct Extension {
    /// Formal ring variables first, then adjoined ones.
    pub ring: Ring,
    pub sw_count: usize,
    /// Cohomology variable behind each adjoined variable.
    pub adjoined: Vec<usize>,
    pub images: Vec<Poly>,
    pub kernel: GroebnerBasis,
}

#[derive(Clone, Debug)]
pub enum Test2 {
    Pass(Extension),
    /// Polynomial variables occur in the kernel basis.
    Abort(Extension, Vec<usize>),
}

fn lift_relations(w: &FormalRing, ring: &Ring) -> Vec<Poly> {
    let ident: Vec<usize> = (0..w.ring().nvars()).collect();
    w.algebra
        .relations()
        .polys()
        .iter()
        .map(|r| r.remap(&ident, ring))
        .collect()
}

/// Extends the map surjectively and checks that polynomial variables stay
/// out of the kernel.
pub fn test2_polynomial_vars(
    c: &CandidateMap,
    w: &FormalRing,
    h: &PresentedAlgebra,
    limits: &Limits,
) -> Result<Test2> {
    let hr = h.ring();
    let quotient = PresentedAlgebra::from_basis(image_ideal(c, h, limits)?);
    let adjoined: Vec<usize> = (0..hr.nvars())
        .filter(|&v| !quotient.reduce(&Poly::var(hr, v)).is_zero())
        .collect();
    let mut vars = w.ring().vars().to_vec();
    for &g in &adjoined {
        if w.ring().index_of(hr.name(g)).is_some() {
            return Err(Error::Inconsistent(format!(
                "cohomology generator {} clashes with a formal ring variable",
                hr.name(g)
            )));
        }
        vars.push(hr.vars()[g].clone());
    }
    let ring = Ring::new(vars, w.ring().order())?;
    let mut images = c.completed();
    images.extend(adjoined.iter().map(|&g| Poly::var(hr, g)));
    let kernel = kernel_of_map(&ring, &lift_relations(w, &ring), h, &images, limits)?;
    let ext = Extension {
        sw_count: w.ring().nvars(),
        ring,
        adjoined,
        images,
        kernel,
    };
    let bad: Vec<usize> = w
        .variables_of(VarKind::P)
        .into_iter()
        .filter(|&v| ext.kernel.support() >> v & 1 == 1)
        .collect();
    Ok(if bad.is_empty() {
        Test2::Pass(ext)
    } else {
        Test2::Abort(ext, bad)
    })
}

/// Kernel of the candidate on the formal ring.
pub fn kernel_of_candidate(
    c: &CandidateMap,
    w: &FormalRing,
    h: &PresentedAlgebra,
    limits: &Limits,
) -> Result<GroebnerBasis> {
    kernel_of_map(
        w.ring(),
        w.algebra.relations().polys(),
        h,
        &c.completed(),
        limits,
    )
}

/// Steenrod stability of the kernel, tested in the ambient ring.
pub fn test3_steenrod(
    kernel: &GroebnerBasis,
    w: &FormalRing,
    table: &SqTable,
    limits: &Limits,
) -> Result<bool> {
    let gens = minimal_generators(kernel, limits)?;
    let lifted: Vec<Poly> = gens.iter().map(|r| w.to_ambient_poly(r)).collect();
    let closed = w.ideal.extend(&lifted, limits)?;
    for r in &lifted {
        let d = r.homogeneous_degree().unwrap_or(0);
        for k in 1..d {
            if !closed.normal_form(&table.sq(k, r)?).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Images of the ambient variables in the cohomology of each elementary
/// abelian subgroup listed in the data.
pub fn restriction_images(w: &FormalRing, rep: &RepTheoryData) -> Option<Vec<(Ring, Vec<Poly>)>> {
    let list = rep.restrictions.as_ref()?;
    let amb = &w.ambient;
    let mut out = Vec::new();
    for res in list {
        let ring = Ring::graded(
            (1..=res.rank)
                .map(|i| crate::f2algebra::Variable::new(format!("x{i}"), 1))
                .collect(),
        )
        .expect("rank fits");
        let mut images = alloc::vec![Poly::zero(); amb.ring.nvars()];
        for (i, forms) in res.forms.iter().enumerate() {
            if amb.index[i].is_empty() {
                continue;
            }
            let mut total = Poly::one();
            for &f in forms {
                let mut lin = Poly::one();
                for b in 0..res.rank as usize {
                    if f >> b & 1 == 1 {
                        lin.add_assign(
                            &Poly::var(&ring, ring.index_of(&format!("x{}", b + 1)).unwrap()),
                            &ring,
                        );
                    }
                }
                total = total.mul(&lin, &ring);
            }
            for (j, &v) in amb.index[i].iter().enumerate() {
                images[v] = total.homogeneous_part(j as u32 + 1);
            }
        }
        out.push((ring, images));
    }
    Some(out)
}

/// Vanishing of the kernel on every elementary abelian subgroup; `None`
/// when the data carries no restrictions.
pub fn test4_elementary_abelian(
    kernel: &GroebnerBasis,
    w: &FormalRing,
    rep: &RepTheoryData,
    limits: &Limits,
) -> Result<Option<bool>> {
    let Some(maps) = restriction_images(w, rep) else {
        return Ok(None);
    };
    let gens = minimal_generators(kernel, limits)?;
    for r in &gens {
        let lifted = w.to_ambient_poly(r);
        for (ring, images) in &maps {
            if !lifted.substitute(images, ring).is_zero() {
                return Ok(Some(false));
            }
        }
    }
    Ok(Some(true))
}

/// Cohomology generators in terms of formal and adjoined variables.
#[derive(Clone, Debug)]
pub struct FinalPresentation {
    pub ring: Ring,
    /// The first `sw_count` generators are Stiefel-Whitney classes.
    pub sw_count: usize,
    /// Image of each generator in the input cohomology presentation.
    pub images: Vec<Poly>,
    pub kernel: GroebnerBasis,
    pub relations: Vec<Poly>,
    pub sw_dictionary: Vec<(String, Poly)>,
    pub chern_dictionary: Vec<(String, Poly)>,
    /// `Sq^0 .. Sq^|g|` of each generator; `None` for adjoined ones.
    pub steenrod: Vec<Option<Vec<Poly>>>,
    pub verified_through: u32,
}

impl FinalPresentation {
    #[must_use]
    pub fn algebra(&self) -> PresentedAlgebra {
        PresentedAlgebra::from_basis(self.kernel.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Success,
    MultipleClasses,
    AbortedTest2,
    Exhausted,
}

impl SolveStatus {
    #[must_use]
    pub fn code(self) -> &'static str {
        match self {
            SolveStatus::Success => "success",
            SolveStatus::MultipleClasses => "multiple-classes",
            SolveStatus::AbortedTest2 => "aborted-test2",
            SolveStatus::Exhausted => "exhausted",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub step1_bases: u64,
    pub step1_admissible: u64,
    pub step1_survivors: usize,
    pub step2_survivors: usize,
    pub step3_raw: u64,
    pub step3_candidates: usize,
    pub test1_passed: usize,
    pub test2_passed: usize,
    pub test3_passed: usize,
    /// `None` when restriction data is absent.
    pub test4_passed: Option<usize>,
    pub classes: usize,
}

/// One equivalence class of surviving maps.
#[derive(Clone, Debug)]
pub struct ClassSummary {
    /// Indices into the Step-3 candidate list.
    pub members: Vec<usize>,
    pub images: Vec<Poly>,
    pub kernel: Vec<Poly>,
    pub ideal: Vec<Poly>,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub status: SolveStatus,
    pub stats: SolveStats,
    pub presentation: Option<FinalPresentation>,
    pub classes: Vec<ClassSummary>,
    /// Candidate index, its images and the polynomial variables caught in
    /// its kernel.
    pub abort: Option<(usize, Vec<Poly>, Vec<usize>)>,
    pub message: Option<String>,
    pub warnings: Vec<String>,
}

impl SolveReport {
    fn failed(
        status: SolveStatus,
        stats: SolveStats,
        message: impl Into<String>,
        warnings: Vec<String>,
    ) -> Self {
        SolveReport {
            status,
            stats,
            presentation: None,
            classes: Vec::new(),
            abort: None,
            message: Some(message.into()),
            warnings,
        }
    }
}

struct Survivor {
    index: usize,
    map: CandidateMap,
    ideal: GroebnerBasis,
    kernel: GroebnerBasis,
    ext: Extension,
}

/// Full search: Steps 1 to 3, Tests 1 to 4 and the conclusion.
pub fn solve<M: Mapper>(
    rep: &RepTheoryData,
    w: &FormalRing,
    h: &PresentedAlgebra,
    opts: &SolveOptions,
    mapper: &M,
) -> Result<SolveReport> {
    let limits = &opts.limits;
    let mut stats = SolveStats::default();
    let mut warnings = Vec::new();

    let s1 = step1_degree_one(w, h, opts)?;
    stats.step1_bases = s1.bases;
    stats.step1_admissible = s1.admissible;
    stats.step1_survivors = s1.maps.len();
    if s1.maps.is_empty() {
        return Ok(SolveReport::failed(
            SolveStatus::Exhausted,
            stats,
            "no admissible degree-1 assignment",
            warnings,
        ));
    }
    let s2 = step2_q_assignments(&s1.maps, w, h, opts)?;
    stats.step2_survivors = s2.len();
    if s2.is_empty() {
        return Ok(SolveReport::failed(
            SolveStatus::Exhausted,
            stats,
            "Step 2 exhausted",
            warnings,
        ));
    }
    let s3 = step3_p_assignments(&s2, w, h, opts)?;
    stats.step3_raw = s3.raw;
    stats.step3_candidates = s3.maps.len();

    let t1 = mapper.map(&s3.maps, &|c| test1_admissible(c, h, limits));
    let mut admissible = Vec::new();
    for (i, r) in t1.into_iter().enumerate() {
        if r? {
            admissible.push(i);
        }
    }
    stats.test1_passed = admissible.len();
    if admissible.is_empty() {
        return Ok(SolveReport::failed(
            SolveStatus::Exhausted,
            stats,
            "no candidate passes Test 1",
            warnings,
        ));
    }

    let t2 = mapper.map(&admissible, &|&i| {
        test2_polynomial_vars(&s3.maps[i], w, h, limits)
    });
    let mut exts = Vec::new();
    for (k, r) in t2.into_iter().enumerate() {
        match r? {
            Test2::Pass(e) => exts.push(e),
            Test2::Abort(e, bad) => {
                let i = admissible[k];
                let names: Vec<&str> = bad.iter().map(|&v| w.ring().name(v)).collect();
                let mut rep = SolveReport::failed(
                    SolveStatus::AbortedTest2,
                    stats,
                    format!(
                        "candidate {i} keeps {} in the kernel of its extension; rerun in exhaustive mode",
                        names.join(", ")
                    ),
                    warnings,
                );
                rep.abort = Some((i, e.images[..e.sw_count].to_vec(), bad));
                return Ok(rep);
            }
        }
    }
    stats.test2_passed = exts.len();

    let table = wu_table(rep, &w.ambient);
    let later = mapper.map(&admissible, &|&i| -> Result<(
        GroebnerBasis,
        GroebnerBasis,
        bool,
        Option<bool>,
    )> {
        let c = &s3.maps[i];
        let kernel = kernel_of_candidate(c, w, h, limits)?;
        let ideal = image_ideal(c, h, limits)?;
        let t3 = test3_steenrod(&kernel, w, &table, limits)?;
        let t4 = if t3 {
            test4_elementary_abelian(&kernel, w, rep, limits)?
        } else {
            None
        };
        Ok((kernel, ideal, t3, t4))
    });
    let mut survivors = Vec::new();
    let mut t3_count = 0;
    let mut t4_count = 0;
    for ((k, r), ext) in later.into_iter().enumerate().zip(exts) {
        let (kernel, ideal, t3, t4) = r?;
        if !t3 {
            continue;
        }
        t3_count += 1;
        match t4 {
            Some(false) => continue,
            Some(true) => t4_count += 1,
            None => {}
        }
        let index = admissible[k];
        survivors.push(Survivor {
            index,
            map: s3.maps[index].clone(),
            ideal,
            kernel,
            ext,
        });
    }
    stats.test3_passed = t3_count;
    if rep.restrictions.is_none() {
        warnings.push("no restriction data: Test 4 skipped".into());
    } else {
        stats.test4_passed = Some(t4_count);
    }
    if survivors.is_empty() {
        return Ok(SolveReport::failed(
            SolveStatus::Exhausted,
            stats,
            "no candidate passes Tests 3 and 4",
            warnings,
        ));
    }

    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (s, surv) in survivors.iter().enumerate() {
        let mut placed = false;
        for class in &mut classes {
            let head = &survivors[class[0]];
            if ideal_equal(&head.kernel, &surv.kernel, limits)?
                && ideal_equal(&head.ideal, &surv.ideal, limits)?
            {
                class.push(s);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(alloc::vec![s]);
        }
    }
    stats.classes = classes.len();
    let mut summaries = Vec::new();
    for class in &classes {
        let head = &survivors[class[0]];
        summaries.push(ClassSummary {
            members: class.iter().map(|&s| survivors[s].index).collect(),
            images: head.map.completed(),
            kernel: minimal_generators(&head.kernel, limits)?,
            ideal: head.ideal.polys().to_vec(),
        });
    }
    if classes.len() > 1 {
        let mut rep = SolveReport::failed(
            SolveStatus::MultipleClasses,
            stats,
            format!("{} inequivalent classes of maps survive", classes.len()),
            warnings,
        );
        rep.classes = summaries;
        return Ok(rep);
    }
    let head = &survivors[0];
    for other in &survivors[1..] {
        let same = other.ext.adjoined == head.ext.adjoined
            && ideal_equal(&head.ext.kernel, &other.ext.kernel, limits)?;
        if !same {
            let mut rep = SolveReport::failed(
                SolveStatus::MultipleClasses,
                stats,
                format!(
                    "extensions of candidates {} and {} are not equivalent",
                    head.index, other.index
                ),
                warnings,
            );
            rep.classes = summaries;
            return Ok(rep);
        }
    }
    let presentation = final_presentation(rep, w, h, &head.ext, &table, opts)?;
    Ok(SolveReport {
        status: SolveStatus::Success,
        stats,
        presentation: Some(presentation),
        classes: summaries,
        abort: None,
        message: None,
        warnings,
    })
}

/// Assembles the presentation and compares graded dimensions with `h`.
pub fn final_presentation(
    rep: &RepTheoryData,
    w: &FormalRing,
    h: &PresentedAlgebra,
    ext: &Extension,
    table: &SqTable,
    opts: &SolveOptions,
) -> Result<FinalPresentation> {
    let limits = &opts.limits;
    let ring = &ext.ring;
    let ident: Vec<usize> = (0..w.ring().nvars()).collect();
    let express = |p: &Poly| {
        ext.kernel
            .normal_form(&w.from_ambient(p).remap(&ident, ring))
    };
    let amb = &w.ambient;
    let mut sw_dictionary = Vec::new();
    for (i, r) in rep.reals.iter().enumerate() {
        for (j, &v) in amb.index[i].iter().enumerate() {
            sw_dictionary.push((
                sw_name(&r.name, j as u32 + 1),
                express(&Poly::var(&amb.ring, v)),
            ));
        }
    }
    let mut chern_dictionary = Vec::new();
    for (c, classes) in rep.complexes.iter().zip(&w.chern) {
        for (j, p) in classes.iter().enumerate() {
            chern_dictionary.push((chern_name(&c.name, j as u32 + 1), express(p)));
        }
    }
    let mut steenrod = Vec::new();
    for v in 0..ring.nvars() {
        if v >= ext.sw_count {
            steenrod.push(None);
            continue;
        }
        let a = Poly::var(&amb.ring, w.to_ambient[v]);
        let mut row = Vec::new();
        for k in 0..=ring.degree_of(v) {
            row.push(express(&table.sq(k, &a)?));
        }
        steenrod.push(Some(row));
    }
    let relations = minimal_generators(&ext.kernel, limits)?;
    let alg = PresentedAlgebra::from_basis(ext.kernel.clone());
    let top = alg.max_relation_degree().max(h.max_relation_degree());
    let bound = opts.verify_bound.unwrap_or(2 * top + 2);
    for d in 0..=bound {
        let (a, b) = (alg.graded_dimension(d), h.graded_dimension(d));
        if a != b {
            return Err(Error::Inconsistent(format!(
                "presentation has dimension {a} in degree {d}, the input has {b}"
            )));
        }
    }
    Ok(FinalPresentation {
        ring: ring.clone(),
        sw_count: ext.sw_count,
        images: ext.images.clone(),
        kernel: ext.kernel.clone(),
        relations,
        sw_dictionary,
        chern_dictionary,
        steenrod,
        verified_through: bound,
    })
}
