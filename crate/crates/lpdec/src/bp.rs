//! Non-saturating sum-product decoder used as the comparison baseline.
//!
//! Check messages use the pairwise box-plus recursion in the log-domain form
//! `sign(a)sign(b)min(|a|,|b|) + log1p(e^{-|a+b|}) - log1p(e^{-|a-b|})`,
//! which stays accurate for message magnitudes far beyond where the tanh
//! product form saturates; no artificial magnitude ceiling is applied unless
//! `llr_clamp` is set.

use crate::admm::{hard_decision, Decoding};
use crate::code::ParityCheckMatrix;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Sum-product settings.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BpConfig {
    pub max_iterations: usize,
    /// Optional symmetric clamp on check-to-variable messages; `None` keeps
    /// the decoder non-saturating.
    pub llr_clamp: Option<f64>,
}

impl Default for BpConfig {
    fn default() -> Self {
        Self { max_iterations: 500, llr_clamp: None }
    }
}

/// Log-domain box-plus of two LLRs, stable for large magnitudes.
pub fn box_plus(a: f64, b: f64) -> f64 {
    let sign = if (a < 0.0) ^ (b < 0.0) { -1.0 } else { 1.0 };
    let m = a.abs().min(b.abs());
    sign * m + (-(a + b).abs()).exp().ln_1p() - (-(a - b).abs()).exp().ln_1p()
}

/// Flooding-schedule sum-product decoding.
///
/// Terminates early as soon as the hard decision satisfies every check.
pub fn bp_decode(h: &ParityCheckMatrix, gamma: &[f64], cfg: &BpConfig) -> Result<Decoding> {
    if cfg.max_iterations == 0 {
        return Err(Error::Config("max_iterations must be at least 1".into()));
    }
    if gamma.len() != h.num_variables() {
        return Err(Error::Dimension { expected: h.num_variables(), got: gamma.len() });
    }
    if let Some(i) = gamma.iter().position(|g| !g.is_finite()) {
        return Err(Error::NonFiniteLlr(i));
    }

    let n = h.num_variables();
    let m = h.num_checks();
    // Per-check-edge message pairs: variable-to-check and check-to-variable.
    let mut var_to_check: Vec<Vec<f64>> =
        (0..m).map(|j| h.check_neighborhood(j).iter().map(|&i| gamma[i]).collect()).collect();
    let mut check_to_var: Vec<Vec<f64>> =
        (0..m).map(|j| vec![0.0; h.check_neighborhood(j).len()]).collect();
    let mut totals = vec![0.0f64; n];

    let mut iterations_used = cfg.max_iterations;
    let mut converged = false;
    for iter in 1..=cfg.max_iterations {
        // Check sweep: leave-one-out box-plus via prefix/suffix combines.
        for j in 0..m {
            let incoming = &var_to_check[j];
            let deg = incoming.len();
            let out = &mut check_to_var[j];
            if deg == 1 {
                out[0] = 0.0;
                continue;
            }
            let mut prefix = vec![0.0f64; deg];
            let mut suffix = vec![0.0f64; deg];
            prefix[0] = incoming[0];
            for k in 1..deg {
                prefix[k] = box_plus(prefix[k - 1], incoming[k]);
            }
            suffix[deg - 1] = incoming[deg - 1];
            for k in (0..deg - 1).rev() {
                suffix[k] = box_plus(suffix[k + 1], incoming[k]);
            }
            for k in 0..deg {
                let v = if k == 0 {
                    suffix[1]
                } else if k == deg - 1 {
                    prefix[deg - 2]
                } else {
                    box_plus(prefix[k - 1], suffix[k + 1])
                };
                out[k] = match cfg.llr_clamp {
                    Some(c) => v.clamp(-c, c),
                    None => v,
                };
            }
        }

        // Variable sweep: totals and extrinsic replies.
        totals.copy_from_slice(gamma);
        for j in 0..m {
            for (&i, &cji) in h.check_neighborhood(j).iter().zip(&check_to_var[j]) {
                totals[i] += cji;
            }
        }
        for j in 0..m {
            for (k, &i) in h.check_neighborhood(j).iter().enumerate() {
                var_to_check[j][k] = totals[i] - check_to_var[j][k];
            }
        }

        let hard: Vec<u8> = totals.iter().map(|&t| u8::from(t < 0.0)).collect();
        if h.syndrome_ok(&hard) {
            iterations_used = iter;
            converged = true;
            break;
        }
    }

    // Posterior probability of bit 1; hard decisions follow the x > 1/2 rule.
    let x: Vec<f64> = totals.iter().map(|&t| 1.0 / (1.0 + t.exp())).collect();
    let hard = hard_decision(&x);
    Ok(Decoding {
        integral: crate::admm::is_integral(&x, 1e-5),
        ml_certificate: false,
        converged,
        iterations_used,
        hard,
        x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::hamming_7_4;

    #[test]
    fn box_plus_matches_tanh_form() {
        // Direct numeric evaluation of 2 atanh(tanh(a/2) tanh(b/2)).
        let direct = |a: f64, b: f64| 2.0 * ((a / 2.0).tanh() * (b / 2.0).tanh()).atanh();
        for (a, b) in [(2.0, 2.0), (0.5, -1.5), (3.0, 0.1), (-2.0, -2.0)] {
            assert!((box_plus(a, b) - direct(a, b)).abs() < 1e-12);
        }
        // Degree-2 check with a = b = 2: 2 atanh(tanh(1)^2) = 1.32500274...
        assert!((box_plus(2.0, 2.0) - 1.325_002_747_357_864).abs() < 1e-12);
    }

    #[test]
    fn box_plus_stable_for_huge_llrs() {
        let v = box_plus(1e3, -1e3);
        assert!(v.is_finite());
        assert!(v <= 0.0 && v > -1000.0);
        // Weakest-input rule: magnitude never exceeds min(|a|, |b|).
        assert!(box_plus(1e3, 7.0).abs() <= 7.0 + 1e-9);
        assert!((box_plus(1e3, 7.0) - 7.0).abs() < 1e-3);
    }

    #[test]
    fn box_plus_associative_in_practice() {
        let xs = [1.3, -0.7, 2.9, 0.05, -4.0];
        let fold_left = xs.iter().skip(1).fold(xs[0], |acc, &x| box_plus(acc, x));
        let fold_right = xs.iter().rev().skip(1).fold(xs[4], |acc, &x| box_plus(acc, x));
        assert!((fold_left - fold_right).abs() < 1e-9);
    }

    #[test]
    fn strong_llrs_decode_in_one_iteration() {
        let h = hamming_7_4();
        let d = bp_decode(&h, &[10.0; 7], &BpConfig::default()).unwrap();
        assert_eq!(d.hard, vec![0; 7]);
        assert!(d.converged);
        assert_eq!(d.iterations_used, 1);
    }

    #[test]
    fn corrects_single_bit_error_at_high_snr() {
        let h = hamming_7_4();
        // ML oracle: exhaustive search over the 16 codewords.
        let ml = |gamma: &[f64]| -> Vec<u8> {
            let mut best = (f64::INFINITY, vec![]);
            for x in 0u32..128 {
                let bits: Vec<u8> = (0..7).map(|i| ((x >> i) & 1) as u8).collect();
                if h.syndrome_ok(&bits) {
                    let cost: f64 =
                        bits.iter().zip(gamma).map(|(&b, &g)| g * b as f64).sum();
                    if cost < best.0 {
                        best = (cost, bits);
                    }
                }
            }
            best.1
        };
        // Near-noiseless frame: one weakly wrong-sign symbol, the rest firm.
        for flip in 0..7 {
            let mut gamma = vec![8.0; 7];
            gamma[flip] = -1.5;
            let d = bp_decode(&h, &gamma, &BpConfig::default()).unwrap();
            assert_eq!(d.hard, ml(&gamma));
            assert_eq!(d.hard, vec![0; 7]);
        }
    }

    #[test]
    fn llr_negation_mirrors_decisions() {
        let h = hamming_7_4();
        let gamma = [1.2, -0.4, 0.8, -2.0, 0.3, 1.1, -0.6];
        let pos = bp_decode(&h, &gamma, &BpConfig::default()).unwrap();
        let neg_gamma: Vec<f64> = gamma.iter().map(|g| -g).collect();
        let neg = bp_decode(&h, &neg_gamma, &BpConfig::default()).unwrap();
        let complemented: Vec<u8> = pos.hard.iter().map(|&b| 1 - b).collect();
        assert_eq!(neg.hard, complemented);
    }

    #[test]
    fn early_termination_only_on_valid_words() {
        let h = hamming_7_4();
        let gamma = [0.9, -0.1, 0.2, -0.3, 0.15, 0.4, -0.2];
        let d = bp_decode(&h, &gamma, &BpConfig { max_iterations: 50, llr_clamp: None }).unwrap();
        if d.converged {
            assert!(h.syndrome_ok(&d.hard));
        }
    }
}
