//! Linear-programming decoding of binary linear codes via ADMM.
//!
//! The decoding LP relaxes maximum-likelihood decoding by requiring the
//! bits touching each check to lie in the parity polytope, the convex hull
//! of the even-weight hypercube vertices. ADMM splits that program into
//! message-passing sweeps whose only nontrivial step is a Euclidean
//! projection onto the parity polytope. This crate provides:
//!
//! - [`code`]: parity-check matrices, alist and quasi-cyclic descriptions,
//!   syndrome checks, uniform codeword sampling over GF(2);
//! - [`polytope`]: the cut-search / mirror / simplex projection pipeline and
//!   an independent Dykstra reference oracle;
//! - [`admm`]: the double-precision decoder with LP/ML certificates;
//! - [`fixed`]: bit-accurate fixed-point formats and the quantized decoder;
//! - [`bp`]: a non-saturating sum-product baseline;
//! - [`channel`]: BPSK over AWGN with reproducible per-frame noise streams;
//! - [`fer`]: a Monte Carlo frame-error-rate harness with paired-noise
//!   decoder comparison and JSON/CSV persistence.
//!
//! The `lpdec` binary exposes projection, single-frame decoding, sweeps and
//! code inspection; the `examples/` directory has one runnable walkthrough
//! per capability.

pub mod admm;
pub mod bp;
pub mod channel;
pub mod code;
pub mod error;
pub mod fer;
pub mod fixed;
pub mod polytope;

pub use admm::{decode, DecoderConfig, Decoding};
pub use bp::{bp_decode, BpConfig};
pub use channel::ChannelConfig;
pub use code::{Codeword, ParityCheckMatrix, QcStructure};
pub use error::{Error, Result};
pub use fer::{run_point, run_sweep, FerPoint, SweepSpec};
pub use fixed::{decode_fixed, FixedPointFormat, FormatPlan, Rounding};
pub use polytope::{oracle_project_pp, project_pp, ProjectionResult};
