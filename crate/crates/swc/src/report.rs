//! Structured output documents and the presentation input format.

use serde::{Deserialize, Serialize};
use serde_json::Map;

use swcore::chow::{ChowReport, SubalgebraPresentation, TildeResult, UnstableAlgebra};
use swcore::error::{Error, Result};
use swcore::f2algebra::{
    format_poly, parse_poly, Limits, Poly, PresentedAlgebra, Ring, SqTable, TermOrder, Variable,
};
use swcore::formalring::FormalRing;
use swcore::swsolver::{FinalPresentation, SolveReport, SolveStats};

use crate::repdoc::json_error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableDoc {
    pub name: String,
    pub degree: u32,
    pub kind: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalStatsDoc {
    pub rationality: usize,
    pub tensor: usize,
    pub exterior: usize,
    pub chern: usize,
    pub closure_basis: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormalRingDoc {
    pub variables: Vec<VariableDoc>,
    pub relations: Vec<String>,
    pub eliminated: Map<String, serde_json::Value>,
    pub stats: FormalStatsDoc,
}

impl FormalRingDoc {
    #[must_use]
    pub fn new(w: &FormalRing) -> Self {
        let ring = w.ring();
        FormalRingDoc {
            variables: (0..ring.nvars())
                .map(|v| VariableDoc {
                    name: ring.name(v).to_string(),
                    degree: ring.degree_of(v),
                    kind: w.kinds[v].code().to_string(),
                })
                .collect(),
            relations: w
                .minimal_relations
                .iter()
                .map(|p| format_poly(ring, p))
                .collect(),
            eliminated: w
                .eliminated
                .iter()
                .map(|(v, e)| {
                    (
                        w.ambient.ring.name(*v).to_string(),
                        serde_json::Value::String(format_poly(ring, e)),
                    )
                })
                .collect(),
            stats: FormalStatsDoc {
                rationality: w.stats.rationality,
                tensor: w.stats.tensor,
                exterior: w.stats.exterior,
                chern: w.stats.chern,
                closure_basis: w.stats.closure_basis,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: u32,
    #[serde(default = "sw_kind")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub image: Option<String>,
}

fn sw_kind() -> String {
    "sw".into()
}

/// A row of squares, or the marker `"unknown"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SqEntry {
    Known(Vec<String>),
    Unknown(String),
}

/// A presentation with squares; the output of `solve` and the input of
/// `chow`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDoc {
    pub generators: Vec<GeneratorEntry>,
    pub relations: Vec<String>,
    #[serde(default)]
    pub sw_dictionary: Map<String, serde_json::Value>,
    #[serde(default)]
    pub chern_dictionary: Map<String, serde_json::Value>,
    pub steenrod_table: Map<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified_through: Option<u32>,
}

fn poly_map(ring: &Ring, entries: &[(String, Poly)]) -> Map<String, serde_json::Value> {
    entries
        .iter()
        .map(|(n, p)| (n.clone(), serde_json::Value::String(format_poly(ring, p))))
        .collect()
}

impl PresentationDoc {
    #[must_use]
    pub fn new(fp: &FinalPresentation, target: &Ring) -> Self {
        let ring = &fp.ring;
        let generators = (0..ring.nvars())
            .map(|v| GeneratorEntry {
                name: ring.name(v).to_string(),
                degree: ring.degree_of(v),
                kind: if v < fp.sw_count { "sw" } else { "adjoined" }.into(),
                image: Some(format_poly(target, &fp.images[v])),
            })
            .collect();
        let steenrod_table = (0..ring.nvars())
            .map(|v| {
                let entry = match &fp.steenrod[v] {
                    Some(row) => SqEntry::Known(row.iter().map(|p| format_poly(ring, p)).collect()),
                    None => SqEntry::Unknown("unknown".into()),
                };
                (
                    ring.name(v).to_string(),
                    serde_json::to_value(entry).unwrap(),
                )
            })
            .collect();
        PresentationDoc {
            generators,
            relations: fp.relations.iter().map(|p| format_poly(ring, p)).collect(),
            sw_dictionary: poly_map(ring, &fp.sw_dictionary),
            chern_dictionary: poly_map(ring, &fp.chern_dictionary),
            steenrod_table,
            verified_through: Some(fp.verified_through),
        }
    }
}

fn field_error(location: String, e: impl std::fmt::Display) -> Error {
    Error::Schema {
        location,
        message: e.to_string(),
    }
}

/// An unstable algebra read from a presentation document, with its Chern
/// classes.
pub struct ParsedPresentation {
    pub algebra: UnstableAlgebra,
    pub chern: Vec<(String, Poly)>,
}

fn string_of(v: &serde_json::Value, location: &str) -> Result<String> {
    v.as_str()
        .map(str::to_string)
        .ok_or_else(|| field_error(location.to_string(), "expected a polynomial string"))
}

/// Rebuilds the algebra and its squares; fails on unknown entries.
pub fn presentation_from_doc(doc: &PresentationDoc, limits: &Limits) -> Result<ParsedPresentation> {
    let ring = Ring::new(
        doc.generators
            .iter()
            .map(|g| Variable::new(g.name.clone(), g.degree))
            .collect(),
        TermOrder::DegRevLex,
    )?;
    let mut rels = Vec::new();
    for (k, s) in doc.relations.iter().enumerate() {
        rels.push(parse_poly(&ring, s).map_err(|e| field_error(format!("relations[{k}]"), e))?);
    }
    let alg = PresentedAlgebra::new(&ring, &rels, limits)?;
    let mut entries = vec![None; ring.nvars()];
    for (name, v) in &doc.steenrod_table {
        let loc = format!("steenrod_table.{name}");
        let g = ring
            .index_of(name)
            .ok_or_else(|| field_error(loc.clone(), "not a generator"))?;
        let entry: SqEntry =
            serde_json::from_value(v.clone()).map_err(|e| field_error(loc.clone(), e))?;
        match entry {
            SqEntry::Known(row) => {
                let mut polys = Vec::new();
                for (k, s) in row.iter().enumerate() {
                    polys.push(
                        parse_poly(&ring, s).map_err(|e| field_error(format!("{loc}[{k}]"), e))?,
                    );
                }
                entries[g] = Some(polys);
            }
            SqEntry::Unknown(_) => {
                return Err(Error::Contract(format!(
                    "cannot run: the squares of {name} are unknown"
                )))
            }
        }
    }
    if let Some(g) = entries.iter().position(Option::is_none) {
        return Err(Error::Contract(format!(
            "cannot run: no Steenrod row for {}",
            ring.name(g)
        )));
    }
    let table = SqTable::new(&ring, entries)?;
    let algebra = UnstableAlgebra::new(alg, table)?;
    let mut chern = Vec::new();
    for (name, v) in &doc.chern_dictionary {
        let loc = format!("chern_dictionary.{name}");
        let s = string_of(v, &loc)?;
        chern.push((
            name.clone(),
            parse_poly(&ring, &s).map_err(|e| field_error(loc, e))?,
        ));
    }
    Ok(ParsedPresentation { algebra, chern })
}

/// Accepts a bare presentation or a `solve` report carrying one.
pub fn parse_presentation(text: &str, limits: &Limits) -> Result<ParsedPresentation> {
    let mut value: serde_json::Value = serde_json::from_str(text).map_err(|e| json_error(&e))?;
    if value.get("command").is_some() {
        value = value
            .pointer("/payload/presentation")
            .cloned()
            .ok_or_else(|| {
                field_error(
                    "payload.presentation".into(),
                    "report carries no presentation",
                )
            })?;
    }
    let doc: PresentationDoc =
        serde_json::from_value(value).map_err(|e| field_error("presentation".into(), e))?;
    presentation_from_doc(&doc, limits)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStatsDoc {
    pub step1_bases: u64,
    pub step1_admissible: u64,
    pub step1_survivors: usize,
    pub step2_survivors: usize,
    pub step3_raw: u64,
    pub step3_candidates: usize,
    pub test1_passed: usize,
    pub test2_passed: usize,
    pub test3_passed: usize,
    pub test4_passed: Option<usize>,
    pub classes: usize,
}

impl From<&SolveStats> for SolveStatsDoc {
    fn from(s: &SolveStats) -> Self {
        SolveStatsDoc {
            step1_bases: s.step1_bases,
            step1_admissible: s.step1_admissible,
            step1_survivors: s.step1_survivors,
            step2_survivors: s.step2_survivors,
            step3_raw: s.step3_raw,
            step3_candidates: s.step3_candidates,
            test1_passed: s.test1_passed,
            test2_passed: s.test2_passed,
            test3_passed: s.test3_passed,
            test4_passed: s.test4_passed,
            classes: s.classes,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDoc {
    pub members: Vec<usize>,
    pub images: Map<String, serde_json::Value>,
    pub kernel: Vec<String>,
    pub ideal: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbortDoc {
    pub candidate: usize,
    pub images: Map<String, serde_json::Value>,
    pub polynomial_variables: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveDoc {
    pub mode: String,
    pub stats: SolveStatsDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub presentation: Option<PresentationDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<ClassDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abort: Option<AbortDoc>,
}

fn images_map(w: &FormalRing, target: &Ring, images: &[Poly]) -> Map<String, serde_json::Value> {
    images
        .iter()
        .enumerate()
        .map(|(v, p)| {
            (
                w.ring().name(v).to_string(),
                serde_json::Value::String(format_poly(target, p)),
            )
        })
        .collect()
}

impl SolveDoc {
    #[must_use]
    pub fn new(r: &SolveReport, w: &FormalRing, h: &PresentedAlgebra, mode: &str) -> Self {
        let target = h.ring();
        SolveDoc {
            mode: mode.to_string(),
            stats: (&r.stats).into(),
            presentation: r
                .presentation
                .as_ref()
                .map(|fp| PresentationDoc::new(fp, target)),
            classes: r
                .classes
                .iter()
                .map(|c| ClassDoc {
                    members: c.members.clone(),
                    images: images_map(w, target, &c.images),
                    kernel: c.kernel.iter().map(|p| format_poly(w.ring(), p)).collect(),
                    ideal: c.ideal.iter().map(|p| format_poly(target, p)).collect(),
                })
                .collect(),
            abort: r.abort.as_ref().map(|(i, imgs, bad)| AbortDoc {
                candidate: *i,
                images: images_map(w, target, imgs),
                polynomial_variables: bad.iter().map(|&v| w.ring().name(v).to_string()).collect(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubGeneratorDoc {
    pub name: String,
    pub degree: u32,
    pub expression: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubalgebraDoc {
    pub generators: Vec<SubGeneratorDoc>,
    pub relations: Vec<String>,
}

impl SubalgebraDoc {
    #[must_use]
    pub fn new(s: &SubalgebraPresentation, ambient: &Ring) -> Self {
        SubalgebraDoc {
            generators: s
                .generators
                .iter()
                .enumerate()
                .map(|(i, g)| SubGeneratorDoc {
                    name: s.ring.name(i).to_string(),
                    degree: s.ring.degree_of(i),
                    expression: format_poly(ambient, g),
                })
                .collect(),
            relations: s
                .minimal_relations
                .iter()
                .map(|p| format_poly(&s.ring, p))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnstableDoc {
    pub element: String,
    pub square: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageDoc {
    pub n: u32,
    pub rank: usize,
    pub syzygies: usize,
    pub kernel_generators: Vec<String>,
    pub even_generators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unstable: Option<UnstableDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChowDoc {
    pub equal: bool,
    pub equal_mod_sqrt0: bool,
    pub termination: Option<u32>,
    pub chern: SubalgebraDoc,
    pub tilde: SubalgebraDoc,
    pub stages: Vec<StageDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frobenius_probe: Option<bool>,
}

impl ChowDoc {
    #[must_use]
    pub fn new(r: &ChowReport, t: &TildeResult, ring: &Ring, probe: Option<bool>) -> Self {
        let f = |ps: &[Poly]| ps.iter().map(|p| format_poly(ring, p)).collect::<Vec<_>>();
        ChowDoc {
            equal: r.equal,
            equal_mod_sqrt0: r.equal_mod_sqrt0,
            termination: r.termination,
            chern: SubalgebraDoc::new(&r.chern, ring),
            tilde: SubalgebraDoc::new(&r.tilde, ring),
            stages: t
                .stages
                .iter()
                .map(|s| StageDoc {
                    n: s.n,
                    rank: s.kernel.rank,
                    syzygies: s.kernel.syzygies,
                    kernel_generators: f(&s.kernel.generators),
                    even_generators: f(&s.even),
                    unstable: s.unstable.as_ref().map(|(u, k)| UnstableDoc {
                        element: format_poly(ring, u),
                        square: *k,
                    }),
                })
                .collect(),
            frobenius_probe: probe,
        }
    }
}

/// Envelope shared by every command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport<T> {
    pub command: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payload: Option<T>,
}

impl<T: Serialize> RunReport<T> {
    #[must_use]
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}
