//! Custom density matrices read from JSON: `{"dim": 4, "re": [[..]], "im": [[..]]}`.

use std::path::Path;

use qdiscord_core::linalg::validate_state;
use qdiscord_core::{ComplexMatrix, DensityMatrix};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// On-disk form of a state: row-major real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl StateFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let n = m.dim();
        let rows = |part: fn(&qdiscord_core::Complex64) -> f64| {
            (0..n).map(|i| (0..n).map(|j| part(&m[(i, j)])).collect()).collect()
        };
        StateFile { dim: n, re: rows(|z| z.re), im: rows(|z| z.im) }
    }

    pub fn to_state(&self) -> Result<DensityMatrix> {
        if self.re.len() != self.dim || self.im.len() != self.dim {
            return Err(CliError::Validation(format!(
                "state declares dim {} but has {} real and {} imaginary rows",
                self.dim,
                self.re.len(),
                self.im.len()
            )));
        }
        let m = ComplexMatrix::from_parts(&self.re, &self.im)?;
        Ok(validate_state(&m)?)
    }
}

pub fn parse_state(json: &str) -> Result<DensityMatrix> {
    let file: StateFile = serde_json::from_str(json).map_err(|e| CliError::Validation(format!("state JSON: {e}")))?;
    file.to_state()
}

pub fn read_state(path: &Path) -> Result<DensityMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_state(&text).map_err(|e| match e {
        CliError::Validation(msg) => CliError::Validation(format!("{}: {msg}", path.display())),
        other => other,
    })
}
