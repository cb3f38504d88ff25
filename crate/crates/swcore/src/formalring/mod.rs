//! The formal ring of Stiefel-Whitney classes attached to representation data.

mod symmetric;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

pub use symmetric::{total_of, Symmetric};

use crate::error::Result;
use crate::f2algebra::{
    binom_mod2, buchberger, minimal_generators, GroebnerBasis, Limits, Poly, PresentedAlgebra,
    Ring, SqTable, Variable,
};
use crate::repdata::{Decomposition, FsType, LinkKind, RepTheoryData};

/// Name of the class `w_j(r)`.
#[must_use]
pub fn sw_name(rep: &str, j: u32) -> String {
    format!("w{j}({rep})")
}

/// Name of the class `c_j(rho)`.
#[must_use]
pub fn chern_name(rep: &str, j: u32) -> String {
    format!("c{j}({rep})")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    /// Degree one.
    T,
    /// Absent from every relation.
    P,
    /// Everything else.
    Q,
}

impl VarKind {
    #[must_use]
    pub fn code(self) -> &'static str {
        match self {
            VarKind::T => "t",
            VarKind::P => "p",
            VarKind::Q => "q",
        }
    }
}

/// The polynomial ring on all `w_j(r_i)` with `r_i` nontrivial.
#[derive(Clone, Debug)]
pub struct Ambient {
    pub ring: Ring,
    /// `index[i][j - 1]` is the variable of `w_j(r_i)`; empty for the trivial rep.
    pub index: Vec<Vec<usize>>,
}

impl Ambient {
    pub fn new(rep: &RepTheoryData) -> Result<Self> {
        let mut vars = Vec::new();
        for r in &rep.reals {
            if r.trivial {
                continue;
            }
            for j in 1..=r.dim {
                vars.push(Variable::new(sw_name(&r.name, j), j));
            }
        }
        let ring = Ring::graded(vars)?;
        let index = rep
            .reals
            .iter()
            .map(|r| {
                if r.trivial {
                    Vec::new()
                } else {
                    (1..=r.dim)
                        .map(|j| ring.index_of(&sw_name(&r.name, j)).unwrap())
                        .collect()
                }
            })
            .collect();
        Ok(Ambient { ring, index })
    }

    /// `w_j(r_i)` as a polynomial, zero outside `1..=dim`.
    #[must_use]
    pub fn class(&self, i: usize, j: u32) -> Poly {
        if j == 0 {
            return Poly::one();
        }
        match self.index[i].get(j as usize - 1) {
            Some(&v) => Poly::var(&self.ring, v),
            None => Poly::zero(),
        }
    }
}

fn killed(fs: FsType, j: u32) -> bool {
    match fs {
        FsType::Real => false,
        FsType::Complex => j % 2 == 1,
        FsType::Quaternion => !j.is_multiple_of(4),
    }
}

/// Classes forced to vanish by the type of the representation.
#[must_use]
pub fn rationality_relations(rep: &RepTheoryData, amb: &Ambient) -> Vec<Poly> {
    let mut out = Vec::new();
    for (i, r) in rep.reals.iter().enumerate() {
        if r.trivial {
            continue;
        }
        for j in 1..=r.dim {
            if killed(r.fs, j) {
                out.push(amb.class(i, j));
            }
        }
    }
    out
}

/// `w_1, ..., w_n` of each real rep, with rationality zeros already applied.
#[must_use]
pub fn class_images(rep: &RepTheoryData, amb: &Ambient) -> Vec<Vec<Poly>> {
    rep.reals
        .iter()
        .enumerate()
        .map(|(i, r)| {
            (1..=r.dim)
                .map(|j| {
                    if r.trivial || killed(r.fs, j) {
                        Poly::zero()
                    } else {
                        amb.class(i, j)
                    }
                })
                .collect()
        })
        .collect()
}

/// Images of `c_1, ..., c_d` of each complex rep in the ambient ring.
#[must_use]
pub fn chern_images(rep: &RepTheoryData, amb: &Ambient) -> Vec<Vec<Poly>> {
    let w = class_images(rep, amb);
    rep.complexes
        .iter()
        .map(|c| {
            (1..=c.dim)
                .map(|j| match c.link {
                    LinkKind::Complexification => w[c.real][j as usize - 1].square(),
                    LinkKind::Realification => w[c.real][2 * j as usize - 1].clone(),
                })
                .collect()
        })
        .collect()
}

/// Total class of a decomposition, given the classes of each summand.
#[must_use]
pub fn total_sw(dec: &Decomposition, classes: &[Vec<Poly>], ring: &Ring, cap: Option<u32>) -> Poly {
    let mut acc = Poly::one();
    for &(i, m) in &dec.parts {
        let t = total_of(&classes[i], ring);
        for _ in 0..m {
            acc = acc.mul(&t, ring);
            if let Some(c) = cap {
                acc = acc.truncate(c);
            }
        }
    }
    acc
}

/// Homogeneous parts of positive degree, up to `cap`.
#[must_use]
pub fn homogeneous_parts(p: &Poly, cap: Option<u32>) -> Vec<Poly> {
    let Some(top) = p.max_degree() else {
        return Vec::new();
    };
    let top = cap.map_or(top, |c| top.min(c));
    (1..=top)
        .map(|d| p.homogeneous_part(d))
        .filter(|q| !q.is_zero())
        .collect()
}

fn entry_relations(
    sym: &mut Symmetric,
    classes: &[Vec<Poly>],
    tensors: &[crate::repdata::TensorEntry],
    lambdas: &[crate::repdata::LambdaEntry],
    ring: &Ring,
    cap: Option<u32>,
) -> Result<(Vec<Poly>, Vec<Poly>)> {
    let mut t_out = Vec::new();
    for e in tensors {
        let (a, b) = (&classes[e.left], &classes[e.right]);
        let (big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let tp = sym.tensor_total(big, small, ring)?;
        let tq = total_sw(&e.decomp, classes, ring, cap);
        t_out.extend(homogeneous_parts(&tp.add(&tq, ring), cap));
    }
    let mut l_out = Vec::new();
    for e in lambdas {
        let lp = sym.lambda_total(&classes[e.rep], e.p as usize, ring)?;
        let lq = total_sw(&e.decomp, classes, ring, cap);
        l_out.extend(homogeneous_parts(&lp.add(&lq, ring), cap));
    }
    Ok((t_out, l_out))
}

/// Relations from the tensor table.
pub fn tensor_relations(rep: &RepTheoryData, amb: &Ambient, cap: Option<u32>) -> Result<Vec<Poly>> {
    let classes = class_images(rep, amb);
    let mut sym = Symmetric::new();
    Ok(entry_relations(&mut sym, &classes, &rep.tensor_real, &[], &amb.ring, cap)?.0)
}

/// Relations from the exterior power table.
pub fn exterior_relations(
    rep: &RepTheoryData,
    amb: &Ambient,
    cap: Option<u32>,
) -> Result<Vec<Poly>> {
    let classes = class_images(rep, amb);
    let mut sym = Symmetric::new();
    Ok(entry_relations(&mut sym, &classes, &[], &rep.lambda_real, &amb.ring, cap)?.1)
}

/// Relations among Chern classes carried to Stiefel-Whitney classes.
pub fn chern_relations(rep: &RepTheoryData, amb: &Ambient, cap: Option<u32>) -> Result<Vec<Poly>> {
    let classes = chern_images(rep, amb);
    let mut sym = Symmetric::new();
    let (t, l) = entry_relations(
        &mut sym,
        &classes,
        &rep.tensor_complex,
        &rep.lambda_complex,
        &amb.ring,
        cap,
    )?;
    Ok(t.into_iter().chain(l).collect())
}

/// Wu's formula on every ambient generator.
#[must_use]
pub fn wu_table(rep: &RepTheoryData, amb: &Ambient) -> SqTable {
    let ring = &amb.ring;
    let mut entries: Vec<Option<Vec<Poly>>> = alloc::vec![None; ring.nvars()];
    for (i, r) in rep.reals.iter().enumerate() {
        for j in 1..=amb.index[i].len() as u32 {
            let mut row = Vec::new();
            for k in 0..=j {
                let mut acc = Poly::zero();
                for t in 0..=k {
                    if binom_mod2(i64::from(j) - i64::from(k) + i64::from(t) - 1, i64::from(t)) {
                        let hi = j + t;
                        if hi > r.dim {
                            continue;
                        }
                        let term = amb.class(i, k - t).mul(&amb.class(i, hi), ring);
                        acc.add_assign(&term, ring);
                    }
                }
                row.push(acc);
            }
            entries[amb.index[i][j as usize - 1]] = Some(row);
        }
    }
    SqTable::new(ring, entries).expect("Wu table is well formed")
}

/// `Sq^k` through Wu's formula and the Cartan formula, without reduction.
pub fn wu_sq(table: &SqTable, k: u32, p: &Poly) -> Result<Poly> {
    table.sq(k, p)
}

/// Smallest ideal containing `gens` and stable under every `Sq^k`.
pub fn steenrod_closure(table: &SqTable, gens: &[Poly], limits: &Limits) -> Result<GroebnerBasis> {
    let ring = table.ring();
    let mut gb = buchberger(ring, gens, limits)?;
    let mut done: BTreeMap<Poly, ()> = BTreeMap::new();
    loop {
        let mut fresh = Vec::new();
        for g in gb.polys() {
            if done.contains_key(g) {
                continue;
            }
            let d = g.homogeneous_degree().unwrap_or(0);
            for k in 1..d {
                let s = gb.normal_form(&table.sq(k, g)?);
                if !s.is_zero() && limits.degree_cap.is_none_or(|c| d + k <= c) {
                    fresh.push(s);
                }
            }
            done.insert(g.clone(), ());
        }
        if fresh.is_empty() {
            return Ok(gb);
        }
        gb = gb.extend(&fresh, limits)?;
    }
}

#[derive(Clone, Debug, Default)]
pub struct FormalOptions {
    pub cap: Option<u32>,
    pub limits: Limits,
}

/// Counts of relations by origin.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalStats {
    pub rationality: usize,
    pub tensor: usize,
    pub exterior: usize,
    pub chern: usize,
    pub closure_basis: usize,
}

#[derive(Clone, Debug)]
pub struct FormalRing {
    pub ambient: Ambient,
    /// The closed ideal in the ambient ring.
    pub ideal: GroebnerBasis,
    /// Quotient presented on the surviving variables.
    pub algebra: PresentedAlgebra,
    pub kinds: Vec<VarKind>,
    /// Surviving variable index to ambient variable index.
    pub to_ambient: Vec<usize>,
    /// Ambient variables expressed in surviving ones.
    pub eliminated: Vec<(usize, Poly)>,
    pub minimal_relations: Vec<Poly>,
    pub chern: Vec<Vec<Poly>>,
    pub stats: FormalStats,
}

impl FormalRing {
    /// Normal form of an ambient polynomial, written in surviving variables.
    #[must_use]
    pub fn from_ambient(&self, p: &Poly) -> Poly {
        let nf = self.ideal.normal_form(p);
        let mut map = alloc::vec![usize::MAX; self.ambient.ring.nvars()];
        for (s, &a) in self.to_ambient.iter().enumerate() {
            map[a] = s;
        }
        nf.remap(&map, self.algebra.ring())
    }

    /// Lift of a surviving polynomial into the ambient ring.
    #[must_use]
    pub fn to_ambient_poly(&self, p: &Poly) -> Poly {
        p.remap(&self.to_ambient, &self.ambient.ring)
    }

    #[must_use]
    pub fn ring(&self) -> &Ring {
        self.algebra.ring()
    }

    #[must_use]
    pub fn variables_of(&self, kind: VarKind) -> Vec<usize> {
        (0..self.kinds.len())
            .filter(|&i| self.kinds[i] == kind)
            .collect()
    }
}

/// Rationality, tensor, exterior and Chern relations, closed under `Sq`,
/// then single-variable leading terms eliminated.
pub fn build_formal_ring(rep: &RepTheoryData, opts: &FormalOptions) -> Result<FormalRing> {
    let amb = Ambient::new(rep)?;
    let ring = amb.ring.clone();
    let limits = opts.limits.with_cap(opts.cap);
    let rat = rationality_relations(rep, &amb);
    let ten = tensor_relations(rep, &amb, opts.cap)?;
    let ext = exterior_relations(rep, &amb, opts.cap)?;
    let che = chern_relations(rep, &amb, opts.cap)?;
    let mut gens: Vec<Poly> = Vec::new();
    gens.extend(rat.iter().cloned());
    gens.extend(ten.iter().cloned());
    gens.extend(ext.iter().cloned());
    gens.extend(che.iter().cloned());
    let table = wu_table(rep, &amb);
    let ideal = steenrod_closure(&table, &gens, &limits)?;
    let mut lead_var: BTreeMap<usize, Poly> = BTreeMap::new();
    for g in ideal.polys() {
        let lm = g.leading().unwrap();
        if lm.total_exponent() == 1 {
            let v = lm.support().trailing_zeros() as usize;
            lead_var.insert(v, g.add(&Poly::var(&ring, v), &ring));
        }
    }
    let to_ambient: Vec<usize> = (0..ring.nvars())
        .filter(|v| !lead_var.contains_key(v))
        .collect();
    let surv = Ring::new(
        to_ambient.iter().map(|&v| ring.vars()[v].clone()).collect(),
        ring.order(),
    )?;
    let mut map = alloc::vec![usize::MAX; ring.nvars()];
    for (s, &a) in to_ambient.iter().enumerate() {
        map[a] = s;
    }
    let rels: Vec<Poly> = ideal
        .polys()
        .iter()
        .filter(|g| g.leading().unwrap().total_exponent() != 1)
        .map(|g| g.remap(&map, &surv))
        .collect();
    let algebra = PresentedAlgebra::new(&surv, &rels, &limits)?;
    let support = algebra.relations().support();
    let kinds = (0..surv.nvars())
        .map(|v| {
            if surv.degree_of(v) == 1 {
                VarKind::T
            } else if support >> v & 1 == 0 {
                VarKind::P
            } else {
                VarKind::Q
            }
        })
        .collect();
    let eliminated = lead_var
        .into_iter()
        .map(|(v, e)| (v, e.remap(&map, &surv)))
        .collect();
    let minimal_relations = minimal_generators(algebra.relations(), &limits)?;
    Ok(FormalRing {
        chern: chern_images(rep, &amb),
        stats: FormalStats {
            rationality: rat.len(),
            tensor: ten.len(),
            exterior: ext.len(),
            chern: che.len(),
            closure_basis: ideal.len(),
        },
        ambient: amb,
        ideal,
        algebra,
        kinds,
        to_ambient,
        eliminated,
        minimal_relations,
    })
}
