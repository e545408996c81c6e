//! The report document: structured data first, with a short human rendering
//! on stderr. Identical input documents produce identical reports except for
//! the `timing_ms` field.

use crate::doc::{render_matrix, RawCommand, RawDocument, RawMatrix};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use weightkit::complex::ChainComplex;
use weightkit::contra::{ContraCertificate, ContraWitness};
use weightkit::fpmod::{BijectivityCertificate, FpModule, ModuleHom};
use weightkit::report::Check;
use weightkit::ring::RingElement;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Conventions {
    pub grading: String,
    pub shift: String,
    pub cone: String,
    pub weight: String,
    pub normalization: String,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            grading: "cohomological; differentials raise degree by one and compose to zero"
                .into(),
            shift: "(M[1])^i = M^(i+1); each shift step negates the differential".into(),
            cone: "cone(f)^i = target^i ⊕ source^(i+1) with differential [[d_target, f], [0, -d_source]]"
                .into(),
            weight: "weight ≤ n means homotopy equivalent to a complex supported in degrees ≥ -n; a minimal complex supported on [a, b] has weight range (-b, -a)"
                .into(),
            normalization: "canonical associates are nonnegative over the integers and monic for polynomials; fractions are reduced with positive denominator; residues lie in [0, p)"
                .into(),
        }
    }
}

/// A self-contained, re-verifiable certificate: the object data is embedded
/// so third parties (and the `check-certificate` verb) need nothing else.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertificateRecord {
    Contra {
        generators: usize,
        relations: RawMatrix,
        s: String,
        holds: bool,
        witness: RawContraWitness,
    },
    Bijectivity {
        source_generators: usize,
        source_relations: RawMatrix,
        target_generators: usize,
        target_relations: RawMatrix,
        matrix: RawMatrix,
        bijective: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        kernel_witness: Option<Vec<String>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        cokernel_witness: Option<Vec<String>>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "kebab-case")]
pub enum RawContraWitness {
    Nilpotency { exponent: u32 },
    ZeroInverted,
    HomSeed { chain: Vec<Vec<String>> },
    Ext1Tower { element: Vec<String>, depth: u32 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub engine_version: String,
    pub command: RawCommand,
    pub input: RawDocument,
    pub conventions: Conventions,
    pub verdicts: Vec<Check>,
    pub certificates: Vec<CertificateRecord>,
    pub result: Value,
    pub all_passed: bool,
    pub timing_ms: u64,
}

impl Report {
    pub fn render_summary(&self) -> String {
        let mut lines = Vec::new();
        lines.push(format!(
            "weightkit {} — verb {:?}: {}",
            self.engine_version,
            self.command.verb,
            if self.all_passed { "all checks passed" } else { "CHECKS FAILED" }
        ));
        for v in &self.verdicts {
            lines.push(format!(
                "  [{}] {} ({}){}",
                if v.passed { "ok" } else { "FAIL" },
                v.name,
                v.instance,
                if v.details.is_empty() || v.passed {
                    String::new()
                } else {
                    format!(": {}", v.details)
                }
            ));
        }
        lines.join("\n")
    }
}

pub fn elements_to_strings(v: &[RingElement]) -> Vec<String> {
    v.iter().map(|e| e.canonical_string()).collect()
}

pub fn module_json(m: &FpModule) -> Value {
    json!({
        "generators": m.generators(),
        "relations": render_matrix(m.relations()),
        "free_rank": m.free_rank(),
        "invariant_factors": elements_to_strings(m.invariant_factors()),
        "description": m.to_string(),
    })
}

pub fn chainmap_json(m: &weightkit::complex::ChainMap) -> Value {
    let comps: std::collections::BTreeMap<String, RawMatrix> = m
        .components()
        .iter()
        .map(|(deg, mat)| (deg.to_string(), render_matrix(mat)))
        .collect();
    json!({ "components": comps })
}

pub fn homotopy_json(h: &weightkit::complex::Homotopy) -> Value {
    let comps: std::collections::BTreeMap<String, RawMatrix> = h
        .components()
        .iter()
        .map(|(deg, mat)| (deg.to_string(), render_matrix(mat)))
        .collect();
    json!({ "components": comps })
}

pub fn complex_json(c: &ChainComplex) -> Value {
    match c.support() {
        None => json!({ "support": Value::Null, "ranks": [], "differentials": [] }),
        Some((a, b)) => {
            let ranks: Vec<usize> = (a..=b).map(|i| c.rank(i)).collect();
            let diffs: Vec<RawMatrix> = (a..b).map(|i| render_matrix(&c.diff(i))).collect();
            json!({ "support": [a, b], "ranks": ranks, "differentials": diffs })
        }
    }
}

pub fn contra_record(m: &FpModule, cert: &ContraCertificate) -> CertificateRecord {
    let witness = match &cert.witness {
        ContraWitness::Nilpotency { exponent } => {
            RawContraWitness::Nilpotency { exponent: *exponent }
        }
        ContraWitness::SInvertsToZero => RawContraWitness::ZeroInverted,
        ContraWitness::HomSeed { chain } => RawContraWitness::HomSeed {
            chain: chain.iter().map(|v| elements_to_strings(v)).collect(),
        },
        ContraWitness::Ext1Tower { element, depth } => RawContraWitness::Ext1Tower {
            element: elements_to_strings(element),
            depth: *depth,
        },
    };
    CertificateRecord::Contra {
        generators: m.generators(),
        relations: render_matrix(m.relations()),
        s: cert.s.canonical_string(),
        holds: cert.holds,
        witness,
    }
}

pub fn bijectivity_record(h: &ModuleHom, cert: &BijectivityCertificate) -> CertificateRecord {
    CertificateRecord::Bijectivity {
        source_generators: h.source().generators(),
        source_relations: render_matrix(h.source().relations()),
        target_generators: h.target().generators(),
        target_relations: render_matrix(h.target().relations()),
        matrix: render_matrix(h.matrix()),
        bijective: cert.bijective,
        kernel_witness: cert.kernel_witness.as_ref().map(|v| elements_to_strings(v)),
        cokernel_witness: cert.cokernel_witness.as_ref().map(|v| elements_to_strings(v)),
    }
}
