//! Binary linear codes given by sparse parity-check matrices.
//!
//! A code is held as the check/variable adjacency of its Tanner graph.
//! Matrices come from alist files ([`ParityCheckMatrix::from_alist`]), from
//! quasi-cyclic descriptions ([`QcStructure`]), or directly from check lists.

mod alist;
mod gf2;
mod qc;

pub use qc::QcStructure;

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sparse binary parity-check matrix with both Tanner-graph adjacencies.
///
/// Neighborhood lists are sorted ascending and duplicate-free; every check
/// and every variable has degree at least one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheckMatrix {
    m: usize,
    n: usize,
    check_neighborhoods: Vec<Vec<usize>>,
    variable_neighborhoods: Vec<Vec<usize>>,
}

impl ParityCheckMatrix {
    /// Builds a matrix from per-check variable lists over `n` variables.
    ///
    /// Lists may be unsorted; duplicates, empty checks, out-of-range indices
    /// and unused variables are rejected.
    pub fn from_checks(n: usize, checks: Vec<Vec<usize>>) -> Result<Self> {
        let m = checks.len();
        if m == 0 || n == 0 {
            return Err(Error::Code("matrix must have at least one check and one variable".into()));
        }
        let mut check_neighborhoods = checks;
        let mut variable_neighborhoods = vec![Vec::new(); n];
        for (j, nb) in check_neighborhoods.iter_mut().enumerate() {
            nb.sort_unstable();
            if nb.is_empty() {
                return Err(Error::Code(format!("check {j} has no variables")));
            }
            if nb.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Code(format!("check {j} lists a variable twice")));
            }
            if *nb.last().unwrap() >= n {
                return Err(Error::Code(format!(
                    "check {j} references variable {} but n = {n}",
                    nb.last().unwrap()
                )));
            }
            for &i in nb.iter() {
                variable_neighborhoods[i].push(j);
            }
        }
        if let Some(i) = variable_neighborhoods.iter().position(|nb| nb.is_empty()) {
            return Err(Error::Code(format!("variable {i} participates in no check")));
        }
        Ok(Self { m, n, check_neighborhoods, variable_neighborhoods })
    }

    /// Number of checks (rows).
    pub fn num_checks(&self) -> usize {
        self.m
    }

    /// Number of variables (columns).
    pub fn num_variables(&self) -> usize {
        self.n
    }

    /// Variables participating in check `j`, sorted ascending.
    pub fn check_neighborhood(&self, j: usize) -> &[usize] {
        &self.check_neighborhoods[j]
    }

    /// Checks that variable `i` participates in, sorted ascending.
    pub fn variable_neighborhood(&self, i: usize) -> &[usize] {
        &self.variable_neighborhoods[i]
    }

    /// Total number of Tanner-graph edges.
    pub fn edge_count(&self) -> usize {
        self.check_neighborhoods.iter().map(Vec::len).sum()
    }

    /// Rank of the matrix over GF(2).
    pub fn rank(&self) -> usize {
        gf2::rank(&self.check_neighborhoods, self.n)
    }

    /// Code dimension `k = n - rank(H)`.
    pub fn dimension(&self) -> usize {
        self.n - self.rank()
    }

    /// Code rate `k / n`.
    pub fn rate(&self) -> f64 {
        self.dimension() as f64 / self.n as f64
    }

    /// True iff every check's bits sum to zero mod 2.
    ///
    /// Panics if `bits.len() != n`.
    pub fn syndrome_ok(&self, bits: &[u8]) -> bool {
        assert_eq!(bits.len(), self.n, "codeword length must equal n");
        self.check_neighborhoods
            .iter()
            .all(|nb| nb.iter().map(|&i| bits[i] as u32).sum::<u32>() % 2 == 0)
    }

    /// Draws a uniformly random codeword from the code's null space.
    ///
    /// Same seed, same codeword.
    pub fn random_codeword(&self, seed: u64) -> Codeword {
        self.random_codeword_with(&mut ChaCha8Rng::seed_from_u64(seed))
    }

    /// [`Self::random_codeword`] driven by a caller-supplied generator.
    pub fn random_codeword_with<R: Rng>(&self, rng: &mut R) -> Codeword {
        let basis = gf2::null_space_basis(&self.check_neighborhoods, self.n);
        let mut bits = vec![0u8; self.n];
        for v in &basis {
            if rng.gen::<bool>() {
                for (b, &x) in bits.iter_mut().zip(v.iter()) {
                    *b ^= x;
                }
            }
        }
        debug_assert!(self.syndrome_ok(&bits));
        Codeword { bits }
    }
}

/// A vector in the code's null space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    bits: Vec<u8>,
}

impl Codeword {
    /// Wraps `bits` after verifying `H * bits = 0 (mod 2)`.
    pub fn new(h: &ParityCheckMatrix, bits: Vec<u8>) -> Result<Self> {
        if bits.len() != h.num_variables() {
            return Err(Error::Dimension { expected: h.num_variables(), got: bits.len() });
        }
        if !h.syndrome_ok(&bits) {
            return Err(Error::Code("bit vector is not a codeword".into()));
        }
        Ok(Self { bits })
    }

    /// All-zeros codeword of length `n`.
    pub fn zeros(n: usize) -> Self {
        Self { bits: vec![0; n] }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

/// The (7,4) Hamming code used throughout the tests and examples.
pub fn hamming_7_4() -> ParityCheckMatrix {
    ParityCheckMatrix::from_checks(7, vec![vec![0, 1, 2, 4], vec![0, 1, 3, 5], vec![0, 2, 3, 6]])
        .expect("hamming matrix is well formed")
}
