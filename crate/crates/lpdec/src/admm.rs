//! ADMM decomposition of the decoding linear program.
//!
//! Each iteration sweeps all variables, averaging incoming check messages
//! against the channel LLR and clipping to the unit interval, then sweeps
//! all checks, projecting the offset estimates onto the parity polytope and
//! updating the per-check dual state.

use crate::code::ParityCheckMatrix;
use crate::error::{Error, Result};
use crate::polytope::project_pp;
use serde::{Deserialize, Serialize};

/// Decoder iteration and termination settings.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DecoderConfig {
    /// Iteration cap B.
    pub max_iterations: usize,
    /// Stop as soon as the estimate is integral and satisfies every check.
    pub early_termination: bool,
    /// Distance from {0,1} below which an estimate counts as integral.
    pub integrality_tolerance: f64,
    /// Positive scale applied to the LLRs before decoding; the LP solution
    /// is scale-invariant but the ADMM trajectory is not.
    pub llr_scale: f64,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        Self {
            max_iterations: 500,
            early_termination: true,
            integrality_tolerance: 1e-5,
            llr_scale: 1.0,
        }
    }
}

impl DecoderConfig {
    fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::Config("max_iterations must be at least 1".into()));
        }
        if !(0.0..0.5).contains(&self.integrality_tolerance) || self.integrality_tolerance == 0.0 {
            return Err(Error::Config("integrality_tolerance must lie in (0, 0.5)".into()));
        }
        if !(self.llr_scale > 0.0 && self.llr_scale.is_finite()) {
            return Err(Error::Config("llr_scale must be positive and finite".into()));
        }
        Ok(())
    }
}

/// Result of a decoding attempt.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decoding {
    /// Final estimates in `[0,1]^n`.
    pub x: Vec<f64>,
    /// Hard decision: bit 1 iff the estimate exceeds 1/2 (ties to 0).
    pub hard: Vec<u8>,
    pub iterations_used: usize,
    /// True when early termination fired before the iteration cap.
    pub converged: bool,
    /// True when every estimate is within tolerance of a bit value.
    pub integral: bool,
    /// Integral and parity-valid: the output is the provable LP/ML optimum.
    pub ml_certificate: bool,
}

pub(crate) fn hard_decision(x: &[f64]) -> Vec<u8> {
    x.iter().map(|&xi| u8::from(xi > 0.5)).collect()
}

pub(crate) fn is_integral(x: &[f64], tol: f64) -> bool {
    x.iter().all(|&xi| xi.min(1.0 - xi).abs() <= tol)
}

/// One variable update: clipped average of incoming messages and the LLR.
pub fn variable_update(incoming: &[f64], gamma_i: f64) -> f64 {
    assert!(!incoming.is_empty(), "variable must have at least one neighbor");
    let sum: f64 = incoming.iter().sum();
    ((sum - gamma_i) / incoming.len() as f64).clamp(0.0, 1.0)
}

/// One check update from neighbor estimates and the stored dual vector.
///
/// Returns the projected replica `z`, the new dual `lambda`, and the
/// outgoing messages. The outgoing message is formed as `z - lambda` so the
/// identity `m = 2z - v` holds without rounding slack.
pub fn check_update(x_neigh: &[f64], lambda: &[f64]) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    assert_eq!(x_neigh.len(), lambda.len(), "estimate/dual dimension mismatch");
    let v: Vec<f64> = x_neigh.iter().zip(lambda).map(|(a, b)| a + b).collect();
    let z = project_pp(&v).z;
    let lambda_new: Vec<f64> = v.iter().zip(&z).map(|(vi, zi)| vi - zi).collect();
    let m_out: Vec<f64> = z.iter().zip(&lambda_new).map(|(zi, li)| zi - li).collect();
    (z, lambda_new, m_out)
}

/// Decodes an LLR vector against `h`.
///
/// Messages start at 1/2 and duals at zero; sweeps alternate until the cap
/// or, with early termination, until the estimate is integral and satisfies
/// every check. Output metadata reports integrality and the ML certificate.
pub fn decode(h: &ParityCheckMatrix, gamma: &[f64], cfg: &DecoderConfig) -> Result<Decoding> {
    cfg.validate()?;
    if gamma.len() != h.num_variables() {
        return Err(Error::Dimension { expected: h.num_variables(), got: gamma.len() });
    }
    if let Some(i) = gamma.iter().position(|g| !g.is_finite()) {
        return Err(Error::NonFiniteLlr(i));
    }
    for j in 0..h.num_checks() {
        let deg = h.check_neighborhood(j).len();
        if deg < 2 {
            return Err(Error::CheckDegree(j, deg));
        }
    }

    let n = h.num_variables();
    let m = h.num_checks();
    let gamma: Vec<f64> = gamma.iter().map(|g| g * cfg.llr_scale).collect();

    // Check-to-variable messages and duals, stored per check edge.
    let mut messages: Vec<Vec<f64>> =
        (0..m).map(|j| vec![0.5; h.check_neighborhood(j).len()]).collect();
    let mut lambda: Vec<Vec<f64>> =
        (0..m).map(|j| vec![0.0; h.check_neighborhood(j).len()]).collect();
    // Incoming message accumulator per variable, rebuilt each sweep.
    let mut x = vec![0.0f64; n];
    let mut sums = vec![0.0f64; n];

    let mut iterations_used = cfg.max_iterations;
    let mut converged = false;
    for iter in 1..=cfg.max_iterations {
        // Variable sweep.
        sums.fill(0.0);
        for j in 0..m {
            for (&i, &mji) in h.check_neighborhood(j).iter().zip(&messages[j]) {
                sums[i] += mji;
            }
        }
        for i in 0..n {
            let deg = h.variable_neighborhood(i).len() as f64;
            x[i] = ((sums[i] - gamma[i]) / deg).clamp(0.0, 1.0);
        }

        if cfg.early_termination
            && is_integral(&x, cfg.integrality_tolerance)
            && h.syndrome_ok(&hard_decision(&x))
        {
            iterations_used = iter;
            converged = true;
            break;
        }

        // Check sweep.
        for j in 0..m {
            let nb = h.check_neighborhood(j);
            let lam = &mut lambda[j];
            let msg = &mut messages[j];
            for (k, &i) in nb.iter().enumerate() {
                lam[k] += x[i]; // v = x_neigh + lambda, reusing the dual buffer
            }
            let z = project_pp(lam).z;
            for k in 0..nb.len() {
                let v = lam[k];
                lam[k] = v - z[k];
                msg[k] = z[k] - lam[k];
            }
        }
    }

    let hard = hard_decision(&x);
    let integral = is_integral(&x, cfg.integrality_tolerance);
    let ml_certificate = integral && h.syndrome_ok(&hard);
    Ok(Decoding { x, hard, iterations_used, converged, integral, ml_certificate })
}
