//! The input document format and its validation into engine objects.
//!
//! A document is a single JSON object: the active ring, a set of named
//! declarations (matrices, modules, module maps, complexes, chain maps,
//! localization specs), and one command. Every referenced name must be
//! declared, and every declared object is validated on load — differentials
//! must square to zero, matrix families must be square and nonsingular, and
//! homomorphisms must respect relations.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;
use weightkit::complex::{ChainComplex, ChainMap};
use weightkit::fpmod::{FpModule, ModuleHom};
use weightkit::hearts::LocalizationSpec;
use weightkit::matrix::Matrix;
use weightkit::ring::{RingElement, RingKind, RingSpec};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RawRing {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RawMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum RawDeclaration {
    Matrix {
        #[serde(flatten)]
        matrix: RawMatrix,
    },
    Module {
        generators: usize,
        relations: RawMatrix,
    },
    Map {
        source: String,
        target: String,
        matrix: RawMatrix,
    },
    Complex {
        support: [i64; 2],
        ranks: Vec<usize>,
        differentials: Vec<RawMatrix>,
    },
    Chainmap {
        source: String,
        target: String,
        components: BTreeMap<String, RawMatrix>,
    },
    Locspec {
        variant: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        mats: Vec<RawMatrix>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        gens: Vec<String>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RawCommand {
    pub verb: String,
    #[serde(default)]
    pub args: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RawDocument {
    pub ring: RawRing,
    #[serde(default)]
    pub declarations: BTreeMap<String, RawDeclaration>,
    pub command: RawCommand,
}

/// A fully validated document: every declaration resolved against the ring.
pub struct Document {
    pub raw: RawDocument,
    pub spec: RingSpec,
    pub matrices: BTreeMap<String, Matrix>,
    pub modules: BTreeMap<String, FpModule>,
    pub maps: BTreeMap<String, ModuleHom>,
    pub complexes: BTreeMap<String, ChainComplex>,
    pub chainmaps: BTreeMap<String, ChainMap>,
    pub locspecs: BTreeMap<String, LocalizationSpec>,
}

/// Input-document errors; rendered with the offending declaration or name.
#[derive(Debug)]
pub enum DocError {
    Syntax(String),
    Semantic(String),
}

impl std::fmt::Display for DocError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DocError::Syntax(m) => write!(f, "syntax error: {m}"),
            DocError::Semantic(m) => write!(f, "input error: {m}"),
        }
    }
}

pub fn parse_ring(raw: &RawRing) -> Result<RingSpec, DocError> {
    let need_p = || {
        raw.p.ok_or_else(|| {
            DocError::Semantic(format!("ring kind {} needs a field \"p\"", raw.kind))
        })
    };
    match raw.kind.as_str() {
        "Integers" => Ok(RingSpec::integers()),
        "Rationals" => Ok(RingSpec::rationals()),
        "PrimeField" => RingSpec::prime_field(need_p()?)
            .map_err(|e| DocError::Semantic(e.to_string())),
        "PolyOverPrimeField" => RingSpec::poly_over_prime_field(need_p()?)
            .map_err(|e| DocError::Semantic(e.to_string())),
        "PolyOverRationals" => Ok(RingSpec::poly_over_rationals()),
        other => Err(DocError::Semantic(format!(
            "unknown ring kind {other:?}; expected Integers, Rationals, PrimeField, PolyOverPrimeField, or PolyOverRationals"
        ))),
    }
}

pub fn render_ring(spec: RingSpec) -> RawRing {
    match spec.kind() {
        RingKind::Integers => RawRing { kind: "Integers".into(), p: None },
        RingKind::Rationals => RawRing { kind: "Rationals".into(), p: None },
        RingKind::PrimeField(p) => RawRing { kind: "PrimeField".into(), p: Some(p) },
        RingKind::PolyOverPrimeField(p) => {
            RawRing { kind: "PolyOverPrimeField".into(), p: Some(p) }
        }
        RingKind::PolyOverRationals => RawRing { kind: "PolyOverRationals".into(), p: None },
    }
}

pub fn parse_element(spec: RingSpec, text: &str, at: &str) -> Result<RingElement, DocError> {
    RingElement::parse(spec, text).map_err(|e| DocError::Semantic(format!("{at}: {e}")))
}

pub fn parse_matrix(spec: RingSpec, raw: &RawMatrix, at: &str) -> Result<Matrix, DocError> {
    if raw.entries.len() != raw.rows {
        return Err(DocError::Semantic(format!(
            "{at}: expected {} entry rows, found {}",
            raw.rows,
            raw.entries.len()
        )));
    }
    let mut entries = Vec::with_capacity(raw.rows * raw.cols);
    for (i, row) in raw.entries.iter().enumerate() {
        if row.len() != raw.cols {
            return Err(DocError::Semantic(format!(
                "{at}: row {i} has {} entries, expected {}",
                row.len(),
                raw.cols
            )));
        }
        for text in row {
            entries.push(parse_element(spec, text, at)?);
        }
    }
    Matrix::new(spec, raw.rows, raw.cols, entries)
        .map_err(|e| DocError::Semantic(format!("{at}: {e}")))
}

pub fn render_matrix(m: &Matrix) -> RawMatrix {
    RawMatrix {
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.get(i, j).canonical_string()).collect())
            .collect(),
    }
}

pub fn parse_document(text: &str) -> Result<Document, DocError> {
    let raw: RawDocument =
        serde_json::from_str(text).map_err(|e| DocError::Syntax(e.to_string()))?;
    build_document(raw)
}

pub fn build_document(raw: RawDocument) -> Result<Document, DocError> {
    let spec = parse_ring(&raw.ring)?;
    let mut doc = Document {
        raw: raw.clone(),
        spec,
        matrices: BTreeMap::new(),
        modules: BTreeMap::new(),
        maps: BTreeMap::new(),
        complexes: BTreeMap::new(),
        chainmaps: BTreeMap::new(),
        locspecs: BTreeMap::new(),
    };

    // two passes: value declarations first, then maps that reference them
    for (name, decl) in &raw.declarations {
        let at = format!("declaration {name:?}");
        match decl {
            RawDeclaration::Matrix { matrix } => {
                doc.matrices.insert(name.clone(), parse_matrix(spec, matrix, &at)?);
            }
            RawDeclaration::Module { generators, relations } => {
                let rel = parse_matrix(spec, relations, &at)?;
                let m = FpModule::new(spec, *generators, rel)
                    .map_err(|e| DocError::Semantic(format!("{at}: {e}")))?;
                doc.modules.insert(name.clone(), m);
            }
            RawDeclaration::Complex { support, ranks, differentials } => {
                let [a, b] = *support;
                if b < a || ranks.len() != (b - a + 1) as usize {
                    return Err(DocError::Semantic(format!(
                        "{at}: support [{a}, {b}] needs {} ranks, found {}",
                        if b >= a { b - a + 1 } else { 0 },
                        ranks.len()
                    )));
                }
                let diffs = differentials
                    .iter()
                    .map(|d| parse_matrix(spec, d, &at))
                    .collect::<Result<Vec<_>, _>>()?;
                let c = ChainComplex::new(spec, a, ranks.clone(), diffs)
                    .map_err(|e| DocError::Semantic(format!("{at}: {e}")))?;
                doc.complexes.insert(name.clone(), c);
            }
            RawDeclaration::Locspec { variant, mats, gens } => {
                let ls = match variant.as_str() {
                    "matrices" => LocalizationSpec::matrix_family(
                        mats.iter()
                            .map(|m| parse_matrix(spec, m, &at))
                            .collect::<Result<Vec<_>, _>>()?,
                    ),
                    "telescope" => LocalizationSpec::telescope(
                        gens.iter()
                            .map(|g| parse_element(spec, g, &at))
                            .collect::<Result<Vec<_>, _>>()?,
                    ),
                    other => {
                        return Err(DocError::Semantic(format!(
                            "{at}: unknown variant {other:?}; expected \"matrices\" or \"telescope\""
                        )))
                    }
                };
                doc.locspecs.insert(
                    name.clone(),
                    ls.map_err(|e| DocError::Semantic(format!("{at}: {e}")))?,
                );
            }
            RawDeclaration::Map { .. } | RawDeclaration::Chainmap { .. } => {}
        }
    }
    for (name, decl) in &raw.declarations {
        let at = format!("declaration {name:?}");
        match decl {
            RawDeclaration::Map { source, target, matrix } => {
                let src = doc.module(source).map_err(|e| prefix(&at, e))?.clone();
                let tgt = doc.module(target).map_err(|e| prefix(&at, e))?.clone();
                let m = parse_matrix(spec, matrix, &at)?;
                let hom = ModuleHom::new(src, tgt, m)
                    .map_err(|e| DocError::Semantic(format!("{at}: {e}")))?;
                doc.maps.insert(name.clone(), hom);
            }
            RawDeclaration::Chainmap { source, target, components } => {
                let src = doc.complex(source).map_err(|e| prefix(&at, e))?.clone();
                let tgt = doc.complex(target).map_err(|e| prefix(&at, e))?.clone();
                let mut comps = BTreeMap::new();
                for (deg, m) in components {
                    let d: i64 = deg.parse().map_err(|_| {
                        DocError::Semantic(format!("{at}: component degree {deg:?} is not an integer"))
                    })?;
                    comps.insert(d, parse_matrix(spec, m, &at)?);
                }
                let map = ChainMap::new(src, tgt, comps)
                    .map_err(|e| DocError::Semantic(format!("{at}: {e}")))?;
                doc.chainmaps.insert(name.clone(), map);
            }
            _ => {}
        }
    }
    Ok(doc)
}

fn prefix(at: &str, e: DocError) -> DocError {
    match e {
        DocError::Semantic(m) => DocError::Semantic(format!("{at}: {m}")),
        other => other,
    }
}

impl Document {
    pub fn matrix(&self, name: &str) -> Result<&Matrix, DocError> {
        self.matrices
            .get(name)
            .ok_or_else(|| DocError::Semantic(format!("unknown matrix {name:?}")))
    }

    pub fn module(&self, name: &str) -> Result<&FpModule, DocError> {
        self.modules
            .get(name)
            .ok_or_else(|| DocError::Semantic(format!("unknown module {name:?}")))
    }

    pub fn map(&self, name: &str) -> Result<&ModuleHom, DocError> {
        self.maps
            .get(name)
            .ok_or_else(|| DocError::Semantic(format!("unknown module map {name:?}")))
    }

    pub fn complex(&self, name: &str) -> Result<&ChainComplex, DocError> {
        self.complexes
            .get(name)
            .ok_or_else(|| DocError::Semantic(format!("unknown complex {name:?}")))
    }

    pub fn chainmap(&self, name: &str) -> Result<&ChainMap, DocError> {
        self.chainmaps
            .get(name)
            .ok_or_else(|| DocError::Semantic(format!("unknown chain map {name:?}")))
    }

    pub fn locspec(&self, name: &str) -> Result<&LocalizationSpec, DocError> {
        self.locspecs
            .get(name)
            .ok_or_else(|| DocError::Semantic(format!("unknown localization spec {name:?}")))
    }

    // --- typed command-argument accessors -------------------------------

    pub fn arg(&self, key: &str) -> Result<&Value, DocError> {
        self.raw
            .command
            .args
            .get(key)
            .ok_or_else(|| DocError::Semantic(format!("command needs an argument {key:?}")))
    }

    pub fn arg_name(&self, key: &str) -> Result<&str, DocError> {
        self.arg(key)?.as_str().ok_or_else(|| {
            DocError::Semantic(format!("argument {key:?} must be a declaration name"))
        })
    }

    pub fn arg_i64(&self, key: &str) -> Result<i64, DocError> {
        self.arg(key)?
            .as_i64()
            .ok_or_else(|| DocError::Semantic(format!("argument {key:?} must be an integer")))
    }

    pub fn arg_u32(&self, key: &str) -> Result<u32, DocError> {
        let v = self.arg_i64(key)?;
        u32::try_from(v)
            .map_err(|_| DocError::Semantic(format!("argument {key:?} must be nonnegative")))
    }

    pub fn arg_usize(&self, key: &str) -> Result<usize, DocError> {
        let v = self.arg_i64(key)?;
        usize::try_from(v)
            .map_err(|_| DocError::Semantic(format!("argument {key:?} must be nonnegative")))
    }

    pub fn arg_element(&self, key: &str) -> Result<RingElement, DocError> {
        let text = self.arg(key)?.as_str().ok_or_else(|| {
            DocError::Semantic(format!("argument {key:?} must be a ring element string"))
        })?;
        parse_element(self.spec, text, &format!("argument {key:?}"))
    }

    pub fn arg_str_list(&self, key: &str) -> Result<Vec<String>, DocError> {
        let arr = self.arg(key)?.as_array().ok_or_else(|| {
            DocError::Semantic(format!("argument {key:?} must be a list"))
        })?;
        arr.iter()
            .map(|v| {
                v.as_str().map(|s| s.to_string()).ok_or_else(|| {
                    DocError::Semantic(format!("argument {key:?} must be a list of strings"))
                })
            })
            .collect()
    }

    /// Optional integer argument with a default.
    pub fn arg_i64_or(&self, key: &str, default: i64) -> Result<i64, DocError> {
        match self.raw.command.args.get(key) {
            None => Ok(default),
            Some(v) => v.as_i64().ok_or_else(|| {
                DocError::Semantic(format!("argument {key:?} must be an integer"))
            }),
        }
    }
}
