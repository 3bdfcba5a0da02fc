//! JSON form of a [`QueryAlgorithm`].
//!
//! Matrices are dense row-major arrays of `dim * dim` reals. Query
//! diagonals are arrays of `"fixed"` or `{"var": k}` with 1-based `k`.
//! Labels are 0/1. Reals are written in shortest round-trip form, so a
//! load of a dump reproduces every bit of every entry.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{SquareMatrix, StateVector};
use crate::query::{QueryAlgorithm, QueryEntry, QuerySpec, Stage};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageDocument {
    pub unitary: Vec<f64>,
    pub query_diagonal: Vec<QueryEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmDocument {
    pub schema_version: u32,
    pub n_vars: usize,
    pub t_queries: usize,
    pub dim: usize,
    pub start: Vec<f64>,
    pub stages: Vec<StageDocument>,
    pub final_unitary: Vec<f64>,
    pub labels: Vec<u8>,
}

impl AlgorithmDocument {
    pub fn from_algorithm(alg: &QueryAlgorithm) -> Self {
        AlgorithmDocument {
            schema_version: SCHEMA_VERSION,
            n_vars: alg.n_vars(),
            t_queries: alg.t_queries(),
            dim: alg.dim(),
            start: alg.start().amplitudes().to_vec(),
            stages: alg
                .stages()
                .iter()
                .map(|s| StageDocument {
                    unitary: s.unitary.to_row_major(),
                    query_diagonal: s.query.entries().to_vec(),
                })
                .collect(),
            final_unitary: alg.final_unitary().to_row_major(),
            labels: alg.labels().iter().map(|&l| u8::from(l)).collect(),
        }
    }

    /// Structural validation only; unitarity is left to the caller
    /// (see [`QueryAlgorithm::check_unitary`]).
    pub fn to_algorithm(&self) -> Result<QueryAlgorithm> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::UnsupportedSchema(self.schema_version));
        }
        if self.start.len() != self.dim {
            return Err(Error::Document(format!(
                "start has {} amplitudes but dim is {}",
                self.start.len(),
                self.dim
            )));
        }
        if self.stages.len() != self.t_queries {
            return Err(Error::Document(format!(
                "{} stages listed but t_queries is {}",
                self.stages.len(),
                self.t_queries
            )));
        }
        let labels = self
            .labels
            .iter()
            .map(|&l| match l {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(Error::Document(format!("label {other} is not a bit"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let stages = self
            .stages
            .iter()
            .map(|s| {
                Ok(Stage {
                    unitary: SquareMatrix::from_row_major(self.dim, s.unitary.clone())?,
                    query: QuerySpec::new(s.query_diagonal.clone()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        QueryAlgorithm::new_unverified(
            self.n_vars,
            StateVector::new(self.start.clone())?,
            stages,
            SquareMatrix::from_row_major(self.dim, self.final_unitary.clone())?,
            labels,
        )
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Serializes `alg` to the JSON document format.
pub fn dump(alg: &QueryAlgorithm) -> Result<String> {
    AlgorithmDocument::from_algorithm(alg).to_json()
}

/// Parses and structurally validates a JSON algorithm document.
pub fn load(text: &str) -> Result<QueryAlgorithm> {
    AlgorithmDocument::from_json(text)?.to_algorithm()
}
