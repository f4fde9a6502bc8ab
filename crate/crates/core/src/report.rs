//! The analysis report, its canonical JSON form, and certificate checking.
//!
//! Reports serialize with sorted keys and rationals in lowest terms, so equal
//! analyses produce byte-identical output.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::analyzer::{Analysis, CLASSIFICATION_TAG};
use crate::certificate::{CheckContext, ConeSummary};
use crate::error::{Error, Result};
use crate::json::{matrix_from_value, matrix_to_value};
use crate::linalg::RationalMatrix;
use crate::spec::{Caps, ExponentialMapSpec};
use crate::verdict::{Classification, ConditionVerdict, Status};

pub const TOOL_NAME: &str = "expbij";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl Default for ToolInfo {
    fn default() -> Self {
        Self { name: TOOL_NAME.into(), version: env!("CARGO_PKG_VERSION").into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Digests {
    pub coefficient_matrix: String,
    pub exponent_matrix: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputSection {
    pub coefficient_matrix: Value,
    pub exponent_matrix: Value,
    pub digests: Digests,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dimensions {
    pub n: usize,
    pub d: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cones {
    pub coefficient: ConeSummary,
    pub exponent: ConeSummary,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationEntry {
    pub verdict: Classification,
    pub tag: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: ToolInfo,
    pub input: InputSection,
    pub caps: Caps,
    pub dimensions: Dimensions,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cones: Option<Cones>,
    pub conditions: Vec<ConditionVerdict>,
    pub classification: ClassificationEntry,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    /// Wall-clock time in milliseconds, present only when requested.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub runtime_ms: Option<f64>,
}

/// SHA-256 of the canonical JSON encoding of a matrix.
pub fn matrix_digest(m: &RationalMatrix) -> String {
    hex::encode(Sha256::digest(matrix_to_value(m).to_string().as_bytes()))
}

impl Report {
    pub fn new(spec: &ExponentialMapSpec, analysis: &Analysis) -> Self {
        let (w, wt) = (spec.coefficients(), spec.exponents());
        let cones = match (&analysis.coefficient_cone, &analysis.exponent_cone) {
            (Some(c), Some(e)) => Some(Cones { coefficient: c.clone(), exponent: e.clone() }),
            _ => None,
        };
        Self {
            tool: ToolInfo::default(),
            input: InputSection {
                coefficient_matrix: matrix_to_value(w),
                exponent_matrix: matrix_to_value(wt),
                digests: Digests { coefficient_matrix: matrix_digest(w), exponent_matrix: matrix_digest(wt) },
            },
            caps: analysis.caps,
            dimensions: Dimensions { n: analysis.n, d: analysis.d },
            cones,
            conditions: analysis.conditions.clone(),
            classification: ClassificationEntry {
                verdict: analysis.classification,
                tag: CLASSIFICATION_TAG.into(),
            },
            seed: None,
            runtime_ms: None,
        }
    }

    pub fn condition(&self, id: &str) -> Option<&ConditionVerdict> {
        self.conditions.iter().find(|c| c.id == id)
    }

    /// Whether any verdict that feeds the classification is undecided.
    pub fn is_inconclusive(&self) -> bool {
        self.classification.verdict == Classification::Inconclusive
            || self.conditions.iter().any(|c| c.status == Status::Inconclusive)
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    /// Canonical pretty-printed JSON with sorted keys.
    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid report: {e}")))
    }

    /// The input pair embedded in the report, after checking its digests.
    pub fn spec(&self) -> Result<ExponentialMapSpec> {
        let w = matrix_from_value(&self.input.coefficient_matrix)?;
        let wt = matrix_from_value(&self.input.exponent_matrix)?;
        if matrix_digest(&w) != self.input.digests.coefficient_matrix
            || matrix_digest(&wt) != self.input.digests.exponent_matrix
        {
            return Err(Error::Parse("input digests do not match the embedded matrices".into()));
        }
        ExponentialMapSpec::new(w, wt)
    }

    /// Canonical JSON without the input section, for comparing analyses of
    /// different bases of the same kernels.
    pub fn without_input(&self) -> Value {
        let mut v = self.to_value();
        v.as_object_mut().expect("object").remove("input");
        v
    }
}

/// Per-condition results of re-checking the certificates in a report.
pub fn check_report(report: &Report) -> Result<Vec<(String, std::result::Result<(), String>)>> {
    let ctx = CheckContext::new(report.spec()?, report.caps);
    Ok(report
        .conditions
        .iter()
        .map(|c| {
            let outcome = match (&c.certificate, c.status) {
                (Some(cert), status) => cert.check(&c.id, status, &ctx),
                (None, Status::Fails) => Err("failing verdict without a certificate".into()),
                (None, Status::Inconclusive) if c.reason.is_none() => Err("inconclusive verdict names no cap".into()),
                (None, _) => Ok(()),
            };
            (c.id.clone(), outcome)
        })
        .collect())
}

/// Re-checks every certificate by exact substitution; true iff all pass.
pub fn verify_certificate(report: &Report) -> bool {
    check_report(report).map(|r| r.iter().all(|(_, o)| o.is_ok())).unwrap_or(false)
}
