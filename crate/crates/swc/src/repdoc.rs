//! JSON documents for representation data and cohomology presentations.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use swcore::error::{Error, Result};
use swcore::f2algebra::{parse_poly, Limits, Poly, PresentedAlgebra, Ring, Variable};
use swcore::repdata::{RawComplex, RawEntry, RawReal, RawRepData, RawRestriction, RepTheoryData};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealDoc {
    pub name: String,
    pub dim: u32,
    #[serde(rename = "type")]
    pub fs: String,
    #[serde(default)]
    pub trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkDoc {
    pub kind: String,
    pub real: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub name: String,
    pub dim: u32,
    pub link: LinkDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartDoc {
    pub rep: String,
    pub mult: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub left: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default)]
    pub decomp: Vec<PartDoc>,
    #[serde(default)]
    pub trivial_mult: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionDoc {
    pub rank: u32,
    pub forms: Map<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepDataDoc {
    pub reals: Vec<RealDoc>,
    #[serde(default)]
    pub complexes: Vec<ComplexDoc>,
    #[serde(default)]
    pub tensor_real: Vec<EntryDoc>,
    #[serde(default)]
    pub lambda_real: Vec<EntryDoc>,
    #[serde(default)]
    pub tensor_complex: Vec<EntryDoc>,
    #[serde(default)]
    pub lambda_complex: Vec<EntryDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restrictions: Option<Vec<RestrictionDoc>>,
}

pub(crate) fn json_error(e: &serde_json::Error) -> Error {
    Error::Schema {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    }
}

fn entry_to_raw(e: &EntryDoc) -> RawEntry {
    RawEntry {
        left: e.left.clone(),
        right: e.right.clone(),
        p: e.p,
        decomp: e.decomp.iter().map(|d| (d.rep.clone(), d.mult)).collect(),
        trivial_mult: e.trivial_mult,
    }
}

fn entry_from_raw(e: &RawEntry) -> EntryDoc {
    EntryDoc {
        left: e.left.clone(),
        right: e.right.clone(),
        p: e.p,
        decomp: e
            .decomp
            .iter()
            .map(|(rep, mult)| PartDoc {
                rep: rep.clone(),
                mult: *mult,
            })
            .collect(),
        trivial_mult: e.trivial_mult,
    }
}

impl RepDataDoc {
    pub fn to_raw(&self) -> Result<RawRepData> {
        let restrictions = match &self.restrictions {
            None => None,
            Some(list) => {
                let mut out = Vec::new();
                for (k, r) in list.iter().enumerate() {
                    let mut forms = Vec::new();
                    for (name, v) in &r.forms {
                        let rows: Vec<Vec<u8>> =
                            serde_json::from_value(v.clone()).map_err(|e| Error::Schema {
                                location: format!("restrictions[{k}].forms.{name}"),
                                message: e.to_string(),
                            })?;
                        forms.push((name.clone(), rows));
                    }
                    out.push(RawRestriction {
                        rank: r.rank,
                        forms,
                    });
                }
                Some(out)
            }
        };
        Ok(RawRepData {
            reals: self
                .reals
                .iter()
                .map(|r| RawReal {
                    name: r.name.clone(),
                    dim: r.dim,
                    fs: r.fs.clone(),
                    trivial: r.trivial,
                })
                .collect(),
            complexes: self
                .complexes
                .iter()
                .map(|c| RawComplex {
                    name: c.name.clone(),
                    dim: c.dim,
                    kind: c.link.kind.clone(),
                    real: c.link.real.clone(),
                })
                .collect(),
            tensor_real: self.tensor_real.iter().map(entry_to_raw).collect(),
            lambda_real: self.lambda_real.iter().map(entry_to_raw).collect(),
            tensor_complex: self.tensor_complex.iter().map(entry_to_raw).collect(),
            lambda_complex: self.lambda_complex.iter().map(entry_to_raw).collect(),
            restrictions,
        })
    }

    #[must_use]
    pub fn from_raw(raw: &RawRepData) -> Self {
        RepDataDoc {
            reals: raw
                .reals
                .iter()
                .map(|r| RealDoc {
                    name: r.name.clone(),
                    dim: r.dim,
                    fs: r.fs.clone(),
                    trivial: r.trivial,
                })
                .collect(),
            complexes: raw
                .complexes
                .iter()
                .map(|c| ComplexDoc {
                    name: c.name.clone(),
                    dim: c.dim,
                    link: LinkDoc {
                        kind: c.kind.clone(),
                        real: c.real.clone(),
                    },
                })
                .collect(),
            tensor_real: raw.tensor_real.iter().map(entry_from_raw).collect(),
            lambda_real: raw.lambda_real.iter().map(entry_from_raw).collect(),
            tensor_complex: raw.tensor_complex.iter().map(entry_from_raw).collect(),
            lambda_complex: raw.lambda_complex.iter().map(entry_from_raw).collect(),
            restrictions: raw.restrictions.as_ref().map(|list| {
                list.iter()
                    .map(|r| RestrictionDoc {
                        rank: r.rank,
                        forms: r
                            .forms
                            .iter()
                            .map(|(n, rows)| (n.clone(), serde_json::json!(rows)))
                            .collect(),
                    })
                    .collect()
            }),
        }
    }
}

/// Parses and validates a representation data document.
pub fn parse_repdata(text: &str) -> Result<RepTheoryData> {
    let doc: RepDataDoc = serde_json::from_str(text).map_err(|e| json_error(&e))?;
    RepTheoryData::from_raw(&doc.to_raw()?)
}

#[must_use]
pub fn serialize_repdata(rep: &RepTheoryData) -> String {
    let doc = RepDataDoc::from_raw(&rep.to_raw());
    serde_json::to_string_pretty(&doc).expect("documents serialize") + "\n"
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    pub name: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohomologyDoc {
    pub generators: Vec<GeneratorDoc>,
    #[serde(default)]
    pub relations: Vec<String>,
}

/// The generator ring of a cohomology document, in declaration order
/// refined by degree.
pub fn cohomology_ring(doc: &CohomologyDoc) -> Result<Ring> {
    for (k, g) in doc.generators.iter().enumerate() {
        if !swcore::f2algebra::text::is_identifier(&g.name) {
            return Err(Error::Schema {
                location: format!("generators[{k}]"),
                message: format!("invalid name {:?}", g.name),
            });
        }
    }
    Ring::graded(
        doc.generators
            .iter()
            .map(|g| Variable::new(g.name.clone(), g.degree))
            .collect(),
    )
}

pub fn cohomology_from_doc(doc: &CohomologyDoc, limits: &Limits) -> Result<PresentedAlgebra> {
    let ring = cohomology_ring(doc)?;
    let mut rels: Vec<Poly> = Vec::new();
    for (k, s) in doc.relations.iter().enumerate() {
        let p = parse_poly(&ring, s).map_err(|e| Error::Schema {
            location: format!("relations[{k}]"),
            message: e.to_string(),
        })?;
        if !p.is_homogeneous() {
            return Err(Error::Schema {
                location: format!("relations[{k}]"),
                message: "relation is not homogeneous".into(),
            });
        }
        rels.push(p);
    }
    PresentedAlgebra::new(&ring, &rels, limits)
}

/// Parses a cohomology presentation and computes its relation basis.
pub fn parse_cohomology(text: &str, limits: &Limits) -> Result<PresentedAlgebra> {
    let doc: CohomologyDoc = serde_json::from_str(text).map_err(|e| json_error(&e))?;
    cohomology_from_doc(&doc, limits)
}
