//! On-disk JSON format for square complex matrices.
//!
//! A document records the order `n`, an optional block size `m` for the
//! 2x2 partition used downstream, the entries in row-major order as
//! `[re, im]` pairs, and free-form string metadata.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{BlockPartition, ComplexMatrix};

/// Serializable matrix container.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixDocument {
    /// Matrix order.
    pub n: usize,
    /// Leading block size of the 2x2 partition, when one is intended.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// Entries in row-major order, one `[re, im]` pair each.
    pub data: Vec<[f64; 2]>,
    /// Free-form annotations (generator name, seed, parameters, ...).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<BTreeMap<String, String>>,
}

impl MatrixDocument {
    /// Wraps a matrix, with an optional partition size.
    pub fn new(a: &ComplexMatrix, m: Option<usize>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "only square matrices serialize, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        if let Some(m) = m {
            BlockPartition::new(m, a.rows())?;
        }
        Ok(Self {
            n: a.rows(),
            m,
            data: a.data().iter().map(|z| [z.re, z.im]).collect(),
            meta: None,
        })
    }

    /// Attaches one metadata entry, creating the map on first use.
    pub fn with_meta(mut self, key: &str, value: &str) -> Self {
        self.meta
            .get_or_insert_with(BTreeMap::new)
            .insert(key.to_owned(), value.to_owned());
        self
    }

    /// Validates internal consistency and rebuilds the matrix.
    pub fn matrix(&self) -> Result<ComplexMatrix> {
        if self.n == 0 {
            return Err(Error::DimensionMismatch(
                "document order must be positive".into(),
            ));
        }
        let expected = self.n * self.n;
        if self.data.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "order {} needs {} entries, document has {}",
                self.n,
                expected,
                self.data.len()
            )));
        }
        if let Some(m) = self.m {
            BlockPartition::new(m, self.n)?;
        }
        let entries: Vec<Complex64> = self
            .data
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        ComplexMatrix::new(self.n, entries)
    }

    /// The partition recorded in the document, if any.
    pub fn partition(&self) -> Result<Option<BlockPartition>> {
        self.m
            .map(|m| BlockPartition::new(m, self.n))
            .transpose()
    }

    /// Parses a document from JSON text.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Domain(format!("matrix document parse error: {e}")))
    }

    /// Serializes the document as pretty JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn round_trips_bit_exactly() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(1.0, 2.0), c(-0.25, 1e-17)],
            vec![c(3.5, -4.0), c(0.1, 0.2)],
        ])
        .unwrap();
        let doc = MatrixDocument::new(&a, Some(1))
            .unwrap()
            .with_meta("origin", "test");
        let text = doc.to_json();
        let back = MatrixDocument::from_json(&text).unwrap();
        let b = back.matrix().unwrap();
        assert_eq!(a.checksum(), b.checksum());
        assert_eq!(back.m, Some(1));
        assert_eq!(back.meta.unwrap()["origin"], "test");
    }

    #[test]
    fn rejects_entry_count_mismatch() {
        let doc = MatrixDocument {
            n: 2,
            m: None,
            data: vec![[1.0, 0.0]; 3],
            meta: None,
        };
        assert!(matches!(doc.matrix(), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn rejects_bad_partition() {
        let doc = MatrixDocument {
            n: 3,
            m: Some(2),
            data: vec![[0.0, 0.0]; 9],
            meta: None,
        };
        assert!(doc.matrix().is_err());
        assert!(doc.partition().is_err());
    }

    #[test]
    fn rejects_nonfinite_entries() {
        let doc = MatrixDocument {
            n: 1,
            m: None,
            data: vec![[f64::NAN, 0.0]],
            meta: None,
        };
        assert!(doc.matrix().is_err());
    }

    #[test]
    fn rejects_malformed_json() {
        assert!(MatrixDocument::from_json("{ not json").is_err());
        assert!(MatrixDocument::from_json("{\"n\": 1}").is_err());
    }

    #[test]
    fn optional_fields_stay_off_the_wire() {
        let a = ComplexMatrix::identity(1);
        let doc = MatrixDocument::new(&a, None).unwrap();
        let text = doc.to_json();
        assert!(!text.contains("\"m\""));
        assert!(!text.contains("\"meta\""));
    }
}
