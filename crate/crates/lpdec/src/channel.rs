//! Binary-input AWGN channel: BPSK mapping, seeded noise, LLR formation.
//!
//! Noise comes from counter-based ChaCha streams, one independent stream per
//! frame index, so frame k sees identical noise no matter how many workers
//! run or in which order frames complete.

use crate::error::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

/// AWGN channel operating point.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ChannelConfig {
    /// Eb/N0 in dB.
    pub ebn0_db: f64,
    /// Code rate k/n, in (0, 1).
    pub code_rate: f64,
    /// Clamp channel outputs to one noise standard deviation beyond the
    /// signal amplitude before LLR conversion.
    pub saturate: bool,
}

impl ChannelConfig {
    pub fn new(ebn0_db: f64, code_rate: f64, saturate: bool) -> Result<Self> {
        if !(code_rate > 0.0 && code_rate < 1.0) {
            return Err(Error::Config(format!("code rate {code_rate} must lie in (0,1)")));
        }
        if !ebn0_db.is_finite() {
            return Err(Error::Config("ebn0_db must be finite".into()));
        }
        Ok(Self { ebn0_db, code_rate, saturate })
    }

    /// Noise standard deviation for unit-energy BPSK,
    /// `sigma = sqrt(1 / (2 R 10^(EbN0/10)))`.
    pub fn sigma(&self) -> f64 {
        (1.0 / (2.0 * self.code_rate * 10f64.powf(self.ebn0_db / 10.0))).sqrt()
    }

    /// Clamp bound for saturated reception: signal amplitude plus one sigma.
    pub fn clamp_bound(&self) -> f64 {
        1.0 + self.sigma()
    }

    /// Scale mapping saturated LLRs into `[-1, 1]` for the fixed-point
    /// input format: `sigma^2 / (2 (1 + sigma))`.
    pub fn fixed_input_scale(&self) -> f64 {
        let s = self.sigma();
        s * s / (2.0 * (1.0 + s))
    }
}

/// Independent noise/source stream for one frame of one run.
///
/// The seed selects the key and the (kind, frame) pair selects the stream,
/// so all draws are independent across frames and across uses.
pub fn frame_stream(seed: u64, kind: StreamKind, frame: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((frame << 2) | kind as u64);
    rng
}

/// What a per-frame stream is used for.
#[derive(Debug, Clone, Copy)]
pub enum StreamKind {
    Noise = 0,
    Source = 1,
}

/// BPSK-modulates a codeword and adds seeded Gaussian noise.
///
/// Bit 0 maps to +1, bit 1 to -1.
pub fn transmit<R: rand::Rng>(bits: &[u8], cfg: &ChannelConfig, rng: &mut R) -> Vec<f64> {
    let sigma = cfg.sigma();
    bits.iter()
        .map(|&b| {
            let s = if b == 0 { 1.0 } else { -1.0 };
            let n: f64 = StandardNormal.sample(rng);
            s + sigma * n
        })
        .collect()
}

/// Converts received symbols to LLRs, `gamma = 2 y / sigma^2`, clamping `y`
/// first when the config saturates.
pub fn llr(y: &[f64], cfg: &ChannelConfig) -> Vec<f64> {
    let sigma = cfg.sigma();
    let bound = cfg.clamp_bound();
    let scale = 2.0 / (sigma * sigma);
    y.iter()
        .map(|&yi| {
            let yi = if cfg.saturate { yi.clamp(-bound, bound) } else { yi };
            scale * yi
        })
        .collect()
}

/// LLRs scaled into `[-1, 1]` for the fixed-point decoder's input format:
/// the saturated maximum lands exactly on the top code.
pub fn llr_for_fixed(y: &[f64], cfg: &ChannelConfig) -> Vec<f64> {
    let bound = cfg.clamp_bound();
    y.iter().map(|&yi| yi.clamp(-bound, bound) / bound).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_formula() {
        // R = 1/2, Eb/N0 = 0 dB: sigma = 1.
        let cfg = ChannelConfig::new(0.0, 0.5, true).unwrap();
        assert!((cfg.sigma() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn noiseless_limit_reproduces_signal() {
        let cfg = ChannelConfig::new(60.0, 0.5, false).unwrap();
        let mut rng = frame_stream(1, StreamKind::Noise, 0);
        let y = transmit(&[0, 1, 0, 1], &cfg, &mut rng);
        assert!((y[0] - 1.0).abs() < 0.01);
        assert!((y[1] + 1.0).abs() < 0.01);
    }

    #[test]
    fn transmit_deterministic_per_seed_and_frame() {
        let cfg = ChannelConfig::new(2.0, 0.5, true).unwrap();
        let a = transmit(&[0; 16], &cfg, &mut frame_stream(9, StreamKind::Noise, 3));
        let b = transmit(&[0; 16], &cfg, &mut frame_stream(9, StreamKind::Noise, 3));
        let c = transmit(&[0; 16], &cfg, &mut frame_stream(9, StreamKind::Noise, 4));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn llr_formula_and_sign() {
        // sigma = 1 at R = 1/2, 0 dB.
        let cfg = ChannelConfig::new(0.0, 0.5, false).unwrap();
        let g = llr(&[0.0, 0.5, -2.0], &cfg);
        assert_eq!(g[0], 0.0);
        assert!((g[1] - 1.0).abs() < 1e-12);
        assert!((g[2] + 4.0).abs() < 1e-12);
        for (yi, gi) in [0.3f64, -0.7, 1.9].iter().zip(llr(&[0.3, -0.7, 1.9], &cfg)) {
            assert_eq!(yi.signum(), gi.signum());
        }
    }

    #[test]
    fn saturation_clamps_then_scales() {
        // sigma = 1: bound = 2, so y = 3.7 clamps to 2 and gamma = 4.
        let cfg = ChannelConfig::new(0.0, 0.5, true).unwrap();
        let g = llr(&[3.7], &cfg);
        assert!((g[0] - 4.0).abs() < 1e-12);
        // Fixed-point path: scaled to exactly 1 at the clamp bound.
        let gf = llr_for_fixed(&[3.7], &cfg);
        assert!((gf[0] - 1.0).abs() < 1e-12);
        // The documented identity: fixed input = gamma * fixed_input_scale.
        assert!((g[0] * cfg.fixed_input_scale() - gf[0]).abs() < 1e-12);
        // Saturation never changes sign.
        assert_eq!(llr(&[-5.0], &cfg)[0].signum(), -1.0);
    }

    #[test]
    fn noise_moments_at_sigma_08() {
        // sigma = 0.8 via R = 1/2, Eb/N0 = 10 log10(1/(2 R sigma^2)).
        let ebn0 = 10.0 * (1.0f64 / (2.0 * 0.5 * 0.64)).log10();
        let cfg = ChannelConfig::new(ebn0, 0.5, false).unwrap();
        assert!((cfg.sigma() - 0.8).abs() < 1e-12);
        let mut sum = 0.0;
        let mut sum2 = 0.0;
        let total = 1_000_000usize;
        let per_frame = 1000;
        for frame in 0..(total / per_frame) as u64 {
            let mut rng = frame_stream(7, StreamKind::Noise, frame);
            let y = transmit(&vec![0u8; per_frame], &cfg, &mut rng);
            for yi in y {
                let n = yi - 1.0;
                sum += n;
                sum2 += n * n;
            }
        }
        let mean = sum / total as f64;
        let var = sum2 / total as f64 - mean * mean;
        assert!(mean.abs() < 0.008, "mean {mean}");
        assert!((var - 0.64).abs() < 0.0064, "var {var}");
    }
}
