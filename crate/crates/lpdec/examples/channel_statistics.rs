//! Channel sanity checks: noise moments and the LLR saturation scheme.
//!
//! Run with: `cargo run --release --example channel_statistics`

use lpdec::channel::{frame_stream, llr, llr_for_fixed, transmit, ChannelConfig, StreamKind};

fn main() {
    // sigma = 0.8 for a rate-1/2 code.
    let ebn0 = 10.0 * (1.0f64 / (2.0 * 0.5 * 0.64)).log10();
    let cfg = ChannelConfig::new(ebn0, 0.5, true).unwrap();
    println!("Eb/N0 = {ebn0:.4} dB, sigma = {:.4}", cfg.sigma());

    let total = 1_000_000usize;
    let per_frame = 1000;
    let mut m = [0.0f64; 4];
    for frame in 0..(total / per_frame) as u64 {
        let mut rng = frame_stream(123, StreamKind::Noise, frame);
        for yi in transmit(&vec![0u8; per_frame], &cfg, &mut rng) {
            let n = yi - 1.0;
            m[0] += n;
            m[1] += n * n;
            m[2] += n * n * n;
            m[3] += n * n * n * n;
        }
    }
    for mk in &mut m {
        *mk /= total as f64;
    }
    let var = m[1] - m[0] * m[0];
    let skew = (m[2] - 3.0 * m[0] * var - m[0].powi(3)) / var.powf(1.5);
    let kurt = m[3] / (var * var);
    println!("noise moments over {total} samples:");
    println!("  mean {:+.5}  (target 0)", m[0]);
    println!("  var   {:.5}  (target {:.5})", var, cfg.sigma().powi(2));
    println!("  skew {skew:+.5}  (target 0)");
    println!("  kurt  {kurt:.5}  (target 3)");

    // Saturation: outputs clamp to signal amplitude plus one sigma, and the
    // fixed-point path rescales so the clamp bound is exactly 1.
    let y = [0.3, 1.9, -2.6, cfg.clamp_bound()];
    println!("\nclamp bound = {:.4}", cfg.clamp_bound());
    println!("y               = {y:.4?}");
    println!("llr             = {:.4?}", llr(&y, &cfg));
    println!("fixed-point llr = {:.4?}", llr_for_fixed(&y, &cfg));
    println!("fixed input scale recorded in sweep metadata: {:.6}", cfg.fixed_input_scale());
}
