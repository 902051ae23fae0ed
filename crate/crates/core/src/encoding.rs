//! The matrix JSON encoding shared by the CLI, reports and bindings:
//! `{"dim": n, "entries": [[[re, im], ...], ...]}`, row-major.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, HermitianMatrix, C64};

/// Readers reject Hermitian inputs whose defect exceeds this.
pub const HERMITIAN_READ_LIMIT: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixJson {
    /// Square matrices only; rectangular input is reported as a dimension error.
    pub fn from_matrix(m: &CMatrix) -> Self {
        let entries = m
            .row_iter()
            .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
            .collect();
        Self {
            dim: m.nrows(),
            entries,
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        let n = self.dim;
        if n == 0 || self.entries.len() != n {
            return Err(Error::dims(
                format!("{n} rows"),
                format!("{} rows", self.entries.len()),
            ));
        }
        if let Some(bad) = self.entries.iter().find(|row| row.len() != n) {
            return Err(Error::dims(
                format!("{n} columns"),
                format!("{} columns", bad.len()),
            ));
        }
        Ok(CMatrix::from_fn(n, n, |i, j| {
            let [re, im] = self.entries[i][j];
            C64::new(re, im)
        }))
    }

    pub fn to_hermitian(&self) -> Result<HermitianMatrix> {
        HermitianMatrix::new_checked(self.to_matrix()?, HERMITIAN_READ_LIMIT)
    }
}

impl From<HermitianMatrix> for MatrixJson {
    fn from(h: HermitianMatrix) -> Self {
        Self::from_matrix(h.matrix())
    }
}

impl TryFrom<MatrixJson> for HermitianMatrix {
    type Error = Error;

    fn try_from(m: MatrixJson) -> Result<Self> {
        m.to_hermitian()
    }
}

impl Serialize for HermitianMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson::from_matrix(self.matrix()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for HermitianMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        MatrixJson::deserialize(d)?
            .to_hermitian()
            .map_err(serde::de::Error::custom)
    }
}

pub fn read_hermitian(json: &str) -> Result<HermitianMatrix> {
    serde_json::from_str::<MatrixJson>(json)?.to_hermitian()
}

pub fn read_matrix(json: &str) -> Result<CMatrix> {
    serde_json::from_str::<MatrixJson>(json)?.to_matrix()
}

pub fn write_matrix(m: &CMatrix) -> String {
    serde_json::to_string(&MatrixJson::from_matrix(m)).expect("matrix JSON is always serializable")
}

/// `#[serde(with = "encoding::cmatrix")]` for general square complex matrices.
pub mod cmatrix {
    use super::*;

    pub fn serialize<S: serde::Serializer>(
        m: &CMatrix,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson::from_matrix(m).serialize(s)
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<CMatrix, D::Error> {
        MatrixJson::deserialize(d)?
            .to_matrix()
            .map_err(serde::de::Error::custom)
    }
}

/// Rectangular complex matrices (the `m x n` blocks of an isometry pair).
/// Encoded as `{"rows": r, "cols": c, "entries": ...}`.
pub mod rect {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct RectJson {
        rows: usize,
        cols: usize,
        entries: Vec<Vec<[f64; 2]>>,
    }

    pub fn serialize<S: serde::Serializer>(
        m: &CMatrix,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        RectJson {
            rows: m.nrows(),
            cols: m.ncols(),
            entries: m
                .row_iter()
                .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<CMatrix, D::Error> {
        let r = RectJson::deserialize(d)?;
        if r.entries.len() != r.rows || r.entries.iter().any(|row| row.len() != r.cols) {
            return Err(serde::de::Error::custom("entries do not match rows/cols"));
        }
        Ok(CMatrix::from_fn(r.rows, r.cols, |i, j| {
            C64::new(r.entries[i][j][0], r.entries[i][j][1])
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_layout() {
        let h = read_hermitian(r#"{"dim": 2, "entries": [[[1,0],[0,-1]],[[0,1],[2,0]]]}"#).unwrap();
        assert_eq!(h.get(0, 1), C64::new(0.0, -1.0));
        assert_eq!(h.get(1, 1), C64::new(2.0, 0.0));
    }

    #[test]
    fn rejects_non_hermitian() {
        let err =
            read_hermitian(r#"{"dim": 2, "entries": [[[1,0],[1,0]],[[0,0],[2,0]]]}"#).unwrap_err();
        assert!(matches!(err, Error::NotHermitian { defect, .. } if (defect - 1.0).abs() < 1e-15));
        // tiny defects are symmetrized away
        assert!(read_hermitian(r#"{"dim": 1, "entries": [[[1,1e-10]]]}"#).is_ok());
    }

    #[test]
    fn rejects_ragged() {
        assert!(read_matrix(r#"{"dim": 2, "entries": [[[1,0]],[[0,0],[2,0]]]}"#).is_err());
        assert!(read_matrix(r#"{"dim": 3, "entries": []}"#).is_err());
        assert!(read_matrix("not json").is_err());
    }
}
