//! JSON instance files.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "A": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]],
//!   "B": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]],
//!   "phi": [[1, 0], [0, 0]],
//!   "normalize": false
//! }
//! ```
//!
//! Matrices are row-major with every complex number written as `[re, im]`.
//! Optional keys: `provenance` and `seed` for generated instances, and
//! `records`, a list of previously recorded `{relation, lhs, rhs}` results
//! that `verify` re-checks.

use std::fs;
use std::path::Path;

use revunc::linalg::{c64, CMatrix, CVector};
use revunc::{InstanceSpec, Observable, Provenance, Relation, State};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

pub type Complex = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimedRecord {
    pub relation: Relation,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub dim: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<Complex>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<Complex>>,
    pub phi: Vec<Complex>,
    #[serde(default)]
    pub normalize: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub records: Vec<ClaimedRecord>,
}

/// A validated instance plus any records it claims.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedInstance {
    pub spec: InstanceSpec,
    pub claims: Vec<ClaimedRecord>,
}

fn matrix_rows(m: &CMatrix) -> Vec<Vec<Complex>> {
    m.rows().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect()
}

impl InstanceFile {
    pub fn from_spec(spec: &InstanceSpec) -> Self {
        Self {
            dim: spec.dim(),
            a: matrix_rows(spec.a.matrix()),
            b: matrix_rows(spec.b.matrix()),
            phi: spec.phi.vector().entries().iter().map(|z| [z.re, z.im]).collect(),
            normalize: false,
            provenance: Some(spec.provenance),
            seed: spec.seed,
            records: Vec::new(),
        }
    }

    /// Check shapes, Hermiticity and normalization.
    pub fn validate(&self) -> Result<LoadedInstance> {
        let a = observable("A", &self.a, self.dim)?;
        let b = observable("B", &self.b, self.dim)?;
        if self.phi.len() != self.dim {
            return Err(HarnessError::Shape(format!(
                "phi has {} components, expected dim {}",
                self.phi.len(),
                self.dim
            )));
        }
        let vector = CVector::new(self.phi.iter().map(|&[re, im]| c64(re, im)).collect())
            .map_err(|source| HarnessError::Invalid { field: "phi", source })?;
        let phi = if self.normalize {
            State::normalize(vector)
        } else {
            State::new(vector)
        }
        .map_err(|source| HarnessError::Invalid { field: "phi", source })?;

        let mut spec = InstanceSpec::explicit(a, b, phi)?;
        if let Some(p) = self.provenance {
            spec.provenance = p;
        }
        spec.seed = match spec.provenance {
            Provenance::Explicit => None,
            _ => self.seed,
        };
        Ok(LoadedInstance {
            spec,
            claims: self.records.clone(),
        })
    }
}

fn observable(field: &'static str, rows: &[Vec<Complex>], dim: usize) -> Result<Observable> {
    if dim == 0 {
        return Err(HarnessError::Shape("dim must be positive".into()));
    }
    if rows.len() != dim {
        return Err(HarnessError::Shape(format!("{field} has {} rows, expected dim {dim}", rows.len())));
    }
    let mut entries = Vec::with_capacity(dim * dim);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(HarnessError::Shape(format!(
                "{field} row {i} has {} entries, expected dim {dim}",
                row.len()
            )));
        }
        entries.extend(row.iter().map(|&[re, im]| c64(re, im)));
    }
    let matrix = CMatrix::new(dim, entries).map_err(|source| HarnessError::Invalid { field, source })?;
    Observable::new(matrix, field).map_err(|source| HarnessError::Invalid { field, source })
}

pub fn parse_instance(text: &str, path: &Path) -> Result<LoadedInstance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|source| HarnessError::Parse {
        path: path.to_path_buf(),
        source,
    })?;
    file.validate()
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<LoadedInstance> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    parse_instance(&text, path)
}

pub fn instance_to_json(file: &InstanceFile) -> Result<String> {
    let mut text = serde_json::to_string_pretty(file)?;
    text.push('\n');
    Ok(text)
}

pub fn write_instance(path: impl AsRef<Path>, spec: &InstanceSpec) -> Result<()> {
    let path = path.as_ref();
    let text = instance_to_json(&InstanceFile::from_spec(spec))?;
    fs::write(path, text).map_err(|e| HarnessError::io(path, e))
}
