//! Quasi-cyclic code descriptions: an r x s grid of p x p circulant tiles.
//!
//! Each tile holds a set of cyclic shift values; the expanded tile is the
//! mod-2 sum of identity matrices shifted by those values, and an empty set
//! is the all-zeros tile.

use super::ParityCheckMatrix;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Proto-matrix of circulant shift sets with lifting size `p`.
///
/// Serialized as JSON with fields `p` and `shifts`, the latter an r x s array
/// of shift-value arrays (empty array = zero tile).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QcStructure {
    p: usize,
    shifts: Vec<Vec<Vec<usize>>>,
}

impl QcStructure {
    /// Validates and wraps a shift grid.
    pub fn new(p: usize, shifts: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if p == 0 {
            return Err(Error::Qc("circulant size p must be positive".into()));
        }
        if shifts.is_empty() || shifts[0].is_empty() {
            return Err(Error::Qc("shift grid must be non-empty".into()));
        }
        let s = shifts[0].len();
        for (a, row) in shifts.iter().enumerate() {
            if row.len() != s {
                return Err(Error::Qc(format!(
                    "proto-row {a} has {} tiles, expected {s}",
                    row.len()
                )));
            }
            for (b, tile) in row.iter().enumerate() {
                let mut sorted = tile.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::Qc(format!("tile ({a},{b}) repeats a shift value")));
                }
                if let Some(&bad) = tile.iter().find(|&&v| v >= p) {
                    return Err(Error::Qc(format!(
                        "tile ({a},{b}) shift {bad} out of range 0..{p}"
                    )));
                }
            }
        }
        let mut shifts = shifts;
        for row in &mut shifts {
            for tile in row {
                tile.sort_unstable();
            }
        }
        Ok(Self { p, shifts })
    }

    /// Parses the JSON form.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: QcStructure = serde_json::from_str(text)?;
        Self::new(raw.p, raw.shifts)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("qc structure serializes")
    }

    /// Circulant size.
    pub fn p(&self) -> usize {
        self.p
    }

    /// Number of proto-rows.
    pub fn proto_rows(&self) -> usize {
        self.shifts.len()
    }

    /// Number of proto-columns.
    pub fn proto_cols(&self) -> usize {
        self.shifts[0].len()
    }

    pub fn tile(&self, a: usize, b: usize) -> &[usize] {
        &self.shifts[a][b]
    }

    /// Expands the tile grid into the full parity-check matrix.
    ///
    /// Tile (a, b) with shift `s` contributes ones at
    /// `(a*p + (t+s) mod p, b*p + t)` for every `t`.
    pub fn expand(&self) -> Result<ParityCheckMatrix> {
        let p = self.p;
        let (r, s) = (self.proto_rows(), self.proto_cols());
        let mut checks = vec![Vec::new(); r * p];
        for (a, row) in self.shifts.iter().enumerate() {
            for (b, tile) in row.iter().enumerate() {
                for &shift in tile {
                    for t in 0..p {
                        checks[a * p + (t + shift) % p].push(b * p + t);
                    }
                }
            }
        }
        ParityCheckMatrix::from_checks(s * p, checks)
    }

    /// Recovers the tile grid of a matrix known to be quasi-cyclic with
    /// circulant size `p`. Returns `None` if the matrix is not.
    pub fn detect(h: &ParityCheckMatrix, p: usize) -> Option<Self> {
        if p == 0 || h.num_checks() % p != 0 || h.num_variables() % p != 0 {
            return None;
        }
        let (r, s) = (h.num_checks() / p, h.num_variables() / p);
        let mut shifts = vec![vec![Vec::new(); s]; r];
        for a in 0..r {
            for b in 0..s {
                // Column t = 0 of the tile reveals the shift set directly.
                let tile = &mut shifts[a][b];
                for row in 0..p {
                    let has = h.check_neighborhood(a * p + row).binary_search(&(b * p)).is_ok();
                    if has {
                        tile.push(row);
                    }
                }
            }
        }
        let candidate = Self::new(p, shifts).ok()?;
        (candidate.expand().ok()? == *h).then_some(candidate)
    }
}
