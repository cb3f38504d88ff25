//! Representation data of a finite group and its consistency checks.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{schema, Error, Result};
use crate::f2algebra::linalg::{rank, BitVec};
use crate::f2algebra::PresentedAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FsType {
    Real,
    Complex,
    Quaternion,
}

impl FsType {
    #[must_use]
    pub fn code(self) -> &'static str {
        match self {
            FsType::Real => "R",
            FsType::Complex => "C",
            FsType::Quaternion => "H",
        }
    }

    #[must_use]
    pub fn from_code(s: &str) -> Option<Self> {
        match s {
            "R" => Some(FsType::Real),
            "C" => Some(FsType::Complex),
            "H" => Some(FsType::Quaternion),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealRep {
    pub name: String,
    pub dim: u32,
    pub fs: FsType,
    pub trivial: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkKind {
    Complexification,
    Realification,
}

impl LinkKind {
    #[must_use]
    pub fn code(self) -> &'static str {
        match self {
            LinkKind::Complexification => "complexification",
            LinkKind::Realification => "realification",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexRep {
    pub name: String,
    pub dim: u32,
    pub link: LinkKind,
    /// Index into the real representations.
    pub real: usize,
}

/// Nontrivial summands with multiplicities, plus copies of the trivial rep.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decomposition {
    pub parts: Vec<(usize, u32)>,
    pub trivial: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorEntry {
    pub left: usize,
    pub right: usize,
    pub decomp: Decomposition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaEntry {
    pub rep: usize,
    pub p: u32,
    pub decomp: Decomposition,
}

/// Restriction to an elementary abelian subgroup of the given rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub rank: u32,
    /// Per real representation, one linear form per real dimension;
    /// bit `t` is the coefficient of the `t`-th degree-one class.
    pub forms: Vec<Vec<u64>>,
}

/// Name-based input, before validation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawRepData {
    pub reals: Vec<RawReal>,
    pub complexes: Vec<RawComplex>,
    pub tensor_real: Vec<RawEntry>,
    pub lambda_real: Vec<RawEntry>,
    pub tensor_complex: Vec<RawEntry>,
    pub lambda_complex: Vec<RawEntry>,
    pub restrictions: Option<Vec<RawRestriction>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawReal {
    pub name: String,
    pub dim: u32,
    pub fs: String,
    pub trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawComplex {
    pub name: String,
    pub dim: u32,
    pub kind: String,
    pub real: String,
}

/// A tensor entry has `right`; a lambda entry has `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawEntry {
    pub left: String,
    pub right: Option<String>,
    pub p: Option<u32>,
    pub decomp: Vec<(String, u32)>,
    pub trivial_mult: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawRestriction {
    pub rank: u32,
    pub forms: Vec<(String, Vec<Vec<u8>>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepTheoryData {
    pub reals: Vec<RealRep>,
    pub complexes: Vec<ComplexRep>,
    pub tensor_real: Vec<TensorEntry>,
    pub lambda_real: Vec<LambdaEntry>,
    pub tensor_complex: Vec<TensorEntry>,
    pub lambda_complex: Vec<LambdaEntry>,
    pub restrictions: Option<Vec<Restriction>>,
}

fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * u64::from(n - i) / u64::from(i + 1);
    }
    acc
}

fn lookup(names: &BTreeMap<&str, usize>, name: &str, at: &str) -> Result<usize> {
    names
        .get(name)
        .copied()
        .ok_or_else(|| schema(at, format!("unknown representation {name:?}")))
}

fn decomposition(
    names: &BTreeMap<&str, usize>,
    trivial: usize,
    raw: &RawEntry,
    at: &str,
) -> Result<Decomposition> {
    let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
    let mut triv = raw.trivial_mult;
    for (k, (name, mult)) in raw.decomp.iter().enumerate() {
        let i = lookup(names, name, &format!("{at}.decomp[{k}]"))?;
        if i == trivial {
            triv += mult;
        } else if *mult > 0 {
            *acc.entry(i).or_default() += mult;
        }
    }
    Ok(Decomposition {
        parts: acc.into_iter().collect(),
        trivial: triv,
    })
}

impl Decomposition {
    #[must_use]
    pub fn dimension(&self, dims: &[u32]) -> u64 {
        self.parts
            .iter()
            .map(|&(i, m)| u64::from(m) * u64::from(dims[i]))
            .sum::<u64>()
            + u64::from(self.trivial)
    }
}

struct Side<'a> {
    what: &'static str,
    names: BTreeMap<&'a str, usize>,
    dims: Vec<u32>,
    trivial: usize,
}

impl Side<'_> {
    fn tensors(&self, raw: &[RawEntry]) -> Result<Vec<TensorEntry>> {
        let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut out = Vec::new();
        for (k, e) in raw.iter().enumerate() {
            let at = format!("tensor_{}[{k}]", self.what);
            let l = lookup(&self.names, &e.left, &format!("{at}.left"))?;
            let right = e
                .right
                .as_deref()
                .ok_or_else(|| schema(&at, "tensor entry without \"right\""))?;
            let r = lookup(&self.names, right, &format!("{at}.right"))?;
            let decomp = decomposition(&self.names, self.trivial, e, &at)?;
            let want = u64::from(self.dims[l]) * u64::from(self.dims[r]);
            let got = decomp.dimension(&self.dims);
            if want != got {
                return Err(schema(
                    at,
                    format!("dimension mismatch: {want} expected, decomposition has {got}"),
                ));
            }
            let key = (l.min(r), l.max(r));
            if let Some(prev) = seen.get(&key) {
                if out.get(*prev).map(|p: &TensorEntry| &p.decomp) != Some(&decomp) {
                    return Err(schema(at, "tensor table is not symmetric"));
                }
                continue;
            }
            seen.insert(key, out.len());
            out.push(TensorEntry {
                left: key.0,
                right: key.1,
                decomp,
            });
        }
        let n = self.dims.len();
        for i in 0..n {
            for j in i..n {
                if i != self.trivial && j != self.trivial && !seen.contains_key(&(i, j)) {
                    return Err(schema(
                        format!("tensor_{}", self.what),
                        format!("missing entry for a pair of representations ({i}, {j})"),
                    ));
                }
            }
        }
        Ok(out)
    }

    fn lambdas(&self, raw: &[RawEntry]) -> Result<Vec<LambdaEntry>> {
        let mut seen: BTreeMap<(usize, u32), ()> = BTreeMap::new();
        let mut out = Vec::new();
        for (k, e) in raw.iter().enumerate() {
            let at = format!("lambda_{}[{k}]", self.what);
            let i = lookup(&self.names, &e.left, &format!("{at}.left"))?;
            let p =
                e.p.ok_or_else(|| schema(&at, "lambda entry without \"p\""))?;
            if p == 0 || p > self.dims[i] {
                return Err(schema(at, format!("exterior power {p} out of range")));
            }
            let decomp = decomposition(&self.names, self.trivial, e, &at)?;
            let want = binomial(self.dims[i], p);
            let got = decomp.dimension(&self.dims);
            if want != got {
                return Err(schema(
                    at,
                    format!("dimension mismatch: {want} expected, decomposition has {got}"),
                ));
            }
            if seen.insert((i, p), ()).is_some() {
                return Err(schema(at, "duplicate exterior power entry"));
            }
            out.push(LambdaEntry { rep: i, p, decomp });
        }
        for (i, &d) in self.dims.iter().enumerate() {
            for p in 2..=d {
                if i != self.trivial && !seen.contains_key(&(i, p)) {
                    return Err(schema(
                        format!("lambda_{}", self.what),
                        format!("missing exterior power {p} of representation {i}"),
                    ));
                }
            }
        }
        Ok(out)
    }
}

impl RepTheoryData {
    /// Resolves names and enforces every structural invariant.
    pub fn from_raw(raw: &RawRepData) -> Result<Self> {
        let mut reals = Vec::new();
        let mut names: BTreeMap<&str, usize> = BTreeMap::new();
        for (k, r) in raw.reals.iter().enumerate() {
            let at = format!("reals[{k}]");
            if !crate::f2algebra::text::is_identifier(&r.name) {
                return Err(schema(at, format!("invalid name {:?}", r.name)));
            }
            let fs = FsType::from_code(&r.fs)
                .ok_or_else(|| schema(&at, format!("unknown type {:?}", r.fs)))?;
            if r.dim == 0 {
                return Err(schema(at, "dimension must be positive"));
            }
            if fs == FsType::Complex && r.dim % 2 != 0 {
                return Err(schema(at, "complex type needs even dimension"));
            }
            if fs == FsType::Quaternion && r.dim % 4 != 0 {
                return Err(schema(at, "quaternion type needs dimension divisible by 4"));
            }
            if r.trivial && (r.dim != 1 || fs != FsType::Real) {
                return Err(schema(
                    at,
                    "trivial representation must be real of dimension 1",
                ));
            }
            if names.insert(&r.name, k).is_some() {
                return Err(schema(at, format!("duplicate name {:?}", r.name)));
            }
            reals.push(RealRep {
                name: r.name.clone(),
                dim: r.dim,
                fs,
                trivial: r.trivial,
            });
        }
        let trivials: Vec<usize> = (0..reals.len()).filter(|&i| reals[i].trivial).collect();
        if trivials.len() != 1 {
            return Err(schema(
                "reals",
                "exactly one trivial representation required",
            ));
        }
        let trivial = trivials[0];
        let mut complexes = Vec::new();
        let mut cnames: BTreeMap<&str, usize> = BTreeMap::new();
        for (k, c) in raw.complexes.iter().enumerate() {
            let at = format!("complexes[{k}]");
            if !crate::f2algebra::text::is_identifier(&c.name) {
                return Err(schema(at, format!("invalid name {:?}", c.name)));
            }
            if c.dim == 0 {
                return Err(schema(at, "dimension must be positive"));
            }
            let real = lookup(&names, &c.real, &format!("{at}.link.real"))?;
            let link = match c.kind.as_str() {
                "complexification" => {
                    if reals[real].fs != FsType::Real || reals[real].dim != c.dim {
                        return Err(schema(
                            at,
                            "a complexification must come from a real-type rep of equal dimension",
                        ));
                    }
                    LinkKind::Complexification
                }
                "realification" => {
                    if reals[real].fs == FsType::Real || reals[real].dim != 2 * c.dim {
                        return Err(schema(
                            at,
                            "a realification must be complex or quaternion type of twice the dimension",
                        ));
                    }
                    LinkKind::Realification
                }
                other => return Err(schema(at, format!("unknown link kind {other:?}"))),
            };
            if cnames.insert(&c.name, k).is_some() || names.contains_key(c.name.as_str()) {
                return Err(schema(at, format!("duplicate name {:?}", c.name)));
            }
            complexes.push(ComplexRep {
                name: c.name.clone(),
                dim: c.dim,
                link,
                real,
            });
        }
        let ctrivial = complexes
            .iter()
            .position(|c| c.real == trivial && c.link == LinkKind::Complexification);
        let real_side = Side {
            what: "real",
            names: names.clone(),
            dims: reals.iter().map(|r| r.dim).collect(),
            trivial,
        };
        let tensor_real = real_side.tensors(&raw.tensor_real)?;
        let lambda_real = real_side.lambdas(&raw.lambda_real)?;
        let (tensor_complex, lambda_complex) = if complexes.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            let Some(ct) = ctrivial else {
                return Err(schema(
                    "complexes",
                    "the trivial complex representation is missing",
                ));
            };
            let side = Side {
                what: "complex",
                names: cnames,
                dims: complexes.iter().map(|c| c.dim).collect(),
                trivial: ct,
            };
            (
                side.tensors(&raw.tensor_complex)?,
                side.lambdas(&raw.lambda_complex)?,
            )
        };
        let restrictions = match &raw.restrictions {
            None => None,
            Some(list) => {
                let mut out = Vec::new();
                for (k, r) in list.iter().enumerate() {
                    out.push(restriction(&reals, &names, trivial, r, k)?);
                }
                Some(out)
            }
        };
        Ok(RepTheoryData {
            reals,
            complexes,
            tensor_real,
            lambda_real,
            tensor_complex,
            lambda_complex,
            restrictions,
        })
    }

    /// Name-based form, for serialization.
    #[must_use]
    pub fn to_raw(&self) -> RawRepData {
        let rn = |i: usize| self.reals[i].name.clone();
        let cn = |i: usize| self.complexes[i].name.clone();
        let entry = |left: String,
                     right: Option<String>,
                     p: Option<u32>,
                     d: &Decomposition,
                     name: &dyn Fn(usize) -> String| RawEntry {
            left,
            right,
            p,
            decomp: d.parts.iter().map(|&(i, m)| (name(i), m)).collect(),
            trivial_mult: d.trivial,
        };
        RawRepData {
            reals: self
                .reals
                .iter()
                .map(|r| RawReal {
                    name: r.name.clone(),
                    dim: r.dim,
                    fs: r.fs.code().to_string(),
                    trivial: r.trivial,
                })
                .collect(),
            complexes: self
                .complexes
                .iter()
                .map(|c| RawComplex {
                    name: c.name.clone(),
                    dim: c.dim,
                    kind: c.link.code().to_string(),
                    real: rn(c.real),
                })
                .collect(),
            tensor_real: self
                .tensor_real
                .iter()
                .map(|e| entry(rn(e.left), Some(rn(e.right)), None, &e.decomp, &rn))
                .collect(),
            lambda_real: self
                .lambda_real
                .iter()
                .map(|e| entry(rn(e.rep), None, Some(e.p), &e.decomp, &rn))
                .collect(),
            tensor_complex: self
                .tensor_complex
                .iter()
                .map(|e| entry(cn(e.left), Some(cn(e.right)), None, &e.decomp, &cn))
                .collect(),
            lambda_complex: self
                .lambda_complex
                .iter()
                .map(|e| entry(cn(e.rep), None, Some(e.p), &e.decomp, &cn))
                .collect(),
            restrictions: self.restrictions.as_ref().map(|list| {
                list.iter()
                    .map(|r| RawRestriction {
                        rank: r.rank,
                        forms: r
                            .forms
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| !self.reals[*i].trivial)
                            .map(|(i, fs)| {
                                let rows = fs
                                    .iter()
                                    .map(|&f| (0..r.rank).map(|t| (f >> t & 1) as u8).collect())
                                    .collect();
                                (rn(i), rows)
                            })
                            .collect(),
                    })
                    .collect()
            }),
        }
    }

    #[must_use]
    pub fn trivial(&self) -> usize {
        self.reals.iter().position(|r| r.trivial).unwrap()
    }

    #[must_use]
    pub fn real_index(&self, name: &str) -> Option<usize> {
        self.reals.iter().position(|r| r.name == name)
    }
}

fn restriction(
    reals: &[RealRep],
    names: &BTreeMap<&str, usize>,
    trivial: usize,
    raw: &RawRestriction,
    k: usize,
) -> Result<Restriction> {
    let at = format!("restrictions[{k}]");
    if raw.rank == 0 || raw.rank > 64 {
        return Err(schema(at, "rank must lie in 1..=64"));
    }
    let mut forms: Vec<Option<Vec<u64>>> = alloc::vec![None; reals.len()];
    forms[trivial] = Some(alloc::vec![0]);
    for (name, rows) in &raw.forms {
        let loc = format!("{at}.forms.{name}");
        let i = lookup(names, name, &loc)?;
        if rows.len() != reals[i].dim as usize {
            return Err(schema(loc, format!("{} forms expected", reals[i].dim)));
        }
        let mut list = Vec::new();
        for row in rows {
            if row.len() != raw.rank as usize || row.iter().any(|&b| b > 1) {
                return Err(schema(&loc, "each form needs one 0/1 entry per rank"));
            }
            list.push(
                row.iter()
                    .enumerate()
                    .fold(0u64, |a, (t, &b)| a | (u64::from(b) << t)),
            );
        }
        forms[i] = Some(list);
    }
    let mut out = Vec::new();
    for (i, f) in forms.into_iter().enumerate() {
        out.push(f.ok_or_else(|| schema(&at, format!("no forms for {}", reals[i].name)))?);
    }
    Ok(Restriction {
        rank: raw.rank,
        forms: out,
    })
}

/// Degree-one consistency between representation data and cohomology.
///
/// Returns warnings; a mismatch of first cohomology dimensions is an error.
pub fn validate_cross(rep: &RepTheoryData, coh: &PresentedAlgebra) -> Result<Vec<String>> {
    let ones: Vec<usize> = (0..rep.reals.len())
        .filter(|&i| !rep.reals[i].trivial && rep.reals[i].dim == 1)
        .collect();
    let pos: BTreeMap<usize, usize> = ones.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut rels = Vec::new();
    for e in &rep.tensor_real {
        let (Some(&a), Some(&b)) = (pos.get(&e.left), pos.get(&e.right)) else {
            continue;
        };
        let mut v = BitVec::zeros(ones.len());
        v.flip(a);
        v.flip(b);
        if let [(c, 1)] = e.decomp.parts.as_slice() {
            if e.decomp.trivial == 0 {
                if let Some(&c) = pos.get(c) {
                    v.flip(c);
                }
            }
        }
        rels.push(v);
    }
    let h1 = ones.len() - rank(&rels);
    let got = coh.graded_dimension(1);
    if h1 != got {
        return Err(Error::Inconsistent(format!(
            "representation data implies first cohomology of dimension {h1}, the presentation has {got}"
        )));
    }
    let mut warnings = Vec::new();
    if h1 < 64 && ones.len() as u64 != (1u64 << h1) - 1 {
        warnings.push(format!(
            "{} one-dimensional nontrivial real representations, expected {}",
            ones.len(),
            (1u64 << h1) - 1
        ));
    }
    Ok(warnings)
}
