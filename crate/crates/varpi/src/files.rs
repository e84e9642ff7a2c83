//! On-disk formats: coefficient files and weighted-sum dumps.
//!
//! A coefficient file is a JSON object with exactly two keys:
//!
//! ```json
//! {"kind": "egf-b", "coeffs": ["0", "1", "2", "3"]}
//! ```
//!
//! * `"egf-b"` — entry `k` is the weight `b_k`; the series is
//!   `sum b_k x^k / k!`.
//! * `"series-c"` — entry `k` is the plain coefficient `c_k`; the series is
//!   `sum c_k x^k`.
//!
//! Unknown keys are rejected rather than ignored, so a typo like
//! `"coefs"` fails loudly instead of silently producing a zero series.
//!
//! A weighted-sum dump is a JSON array in canonical state order:
//!
//! ```json
//! [{"cols": [[1, 2]], "mult": "1"}]
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::matrix::{Column, MatrixState, WeightedSum};
use crate::rational::{factorial, Rational};
use crate::series::TruncatedSeries;

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("coefficient list is empty")]
    EmptyCoeffs,
    #[error("term {index} has invalid column ({s}, {k}): bottom entry must be at least 1")]
    InvalidColumn { index: usize, s: u32, k: u32 },
}

/// How the entries of a coefficient file are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoeffKind {
    /// Entries are weights `b_k`; coefficient of `x^k` is `b_k / k!`.
    #[serde(rename = "egf-b")]
    EgfB,
    /// Entries are the series coefficients themselves.
    #[serde(rename = "series-c")]
    SeriesC,
}

/// A parsed coefficient file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffFile {
    pub kind: CoeffKind,
    pub coeffs: Vec<Rational>,
}

impl CoeffFile {
    pub fn parse(json: &str) -> Result<Self, FileError> {
        let file: CoeffFile = serde_json::from_str(json)?;
        if file.coeffs.is_empty() {
            return Err(FileError::EmptyCoeffs);
        }
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self, FileError> {
        let text = std::fs::read_to_string(path).map_err(|source| FileError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Decodes the entries into a series of order `len - 1`.
    pub fn to_series(&self) -> TruncatedSeries {
        let coeffs = match self.kind {
            CoeffKind::SeriesC => self.coeffs.clone(),
            CoeffKind::EgfB => self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, b)| b / &factorial(k))
                .collect(),
        };
        TruncatedSeries::from_coeffs(coeffs)
    }

    /// Encodes plain series coefficients.
    pub fn from_series(series: &TruncatedSeries) -> Self {
        CoeffFile {
            kind: CoeffKind::SeriesC,
            coeffs: series.coeffs().to_vec(),
        }
    }

    /// Encodes a weight list.
    pub fn from_weights(weights: Vec<Rational>) -> Self {
        CoeffFile {
            kind: CoeffKind::EgfB,
            coeffs: weights,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("coefficient files always serialize")
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRecord {
    cols: Vec<[u32; 2]>,
    mult: Rational,
}

/// Serializes a weighted sum as a JSON array, one record per state, in
/// canonical state order.
pub fn dump_weighted_sum(sum: &WeightedSum) -> String {
    let records: Vec<TermRecord> = sum
        .terms()
        .map(|(state, mult)| TermRecord {
            cols: state.columns().iter().map(|c| [c.s, c.k]).collect(),
            mult: mult.clone(),
        })
        .collect();
    serde_json::to_string_pretty(&records).expect("term records always serialize")
}

/// Parses a weighted-sum dump back into an aggregated sum.
pub fn parse_weighted_sum(json: &str) -> Result<WeightedSum, FileError> {
    let records: Vec<TermRecord> = serde_json::from_str(json)?;
    let mut sum = WeightedSum::zero();
    for (index, record) in records.into_iter().enumerate() {
        let mut cols = Vec::with_capacity(record.cols.len());
        for [s, k] in record.cols {
            cols.push(
                Column::new(s, k).map_err(|_| FileError::InvalidColumn { index, s, k })?,
            );
        }
        sum.add_term(MatrixState::from_columns(cols), record.mult);
    }
    Ok(sum)
}
