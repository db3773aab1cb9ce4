//! Codeword asymmetry of the truncating fixed-point decoder.
//!
//! Truncation rounds every stored value toward negative infinity, which in
//! the unit-interval estimate domain pushes decisions toward zero. The
//! all-zeros codeword therefore decodes with fewer errors than a
//! high-weight codeword on identical noise. Aggressively narrow formats
//! make the effect dramatic; round-to-nearest with centered estimates
//! removes it.
//!
//! Run with: `cargo run --release --example codeword_asymmetry`

use lpdec::channel::{frame_stream, llr_for_fixed, transmit, ChannelConfig, StreamKind};
use lpdec::fixed::Rounding;
use lpdec::{decode_fixed, DecoderConfig, FormatPlan, ParityCheckMatrix, QcStructure};
use rayon::prelude::*;
use std::path::Path;

fn frame_errors(
    h: &ParityCheckMatrix,
    bits: &[u8],
    ch: &ChannelConfig,
    plan: &FormatPlan,
    frames: u64,
) -> u64 {
    let cfg = DecoderConfig::default();
    (0..frames)
        .into_par_iter()
        .map(|f| {
            let y = transmit(bits, ch, &mut frame_stream(2, StreamKind::Noise, f));
            let gq = plan.quantize_llrs(&llr_for_fixed(&y, ch));
            u64::from(decode_fixed(h, &gq, &cfg, plan).unwrap().hard != bits)
        })
        .sum()
}

fn main() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/tanner155.json");
    let h = QcStructure::from_json(&std::fs::read_to_string(data).expect("data file"))
        .unwrap()
        .expand()
        .unwrap();
    let zeros = vec![0u8; h.num_variables()];
    let high = h.random_codeword(42);
    let ch = ChannelConfig::new(2.0, h.rate(), true).unwrap();
    let frames = 600;
    println!(
        "Tanner code at {} dB, {} frames per arm, high-weight codeword weight {}",
        ch.ebn0_db,
        frames,
        high.weight()
    );

    for (w_llr, w_msg) in [(5u32, 8u32), (6, 9), (8, 11)] {
        let trunc = FormatPlan::new(w_llr, w_msg).unwrap();
        let e0 = frame_errors(&h, &zeros, &ch, &trunc, frames);
        let e1 = frame_errors(&h, high.bits(), &ch, &trunc, frames);
        println!("({w_llr:>2},{w_msg:>2}) truncate:       zeros {e0:>4}  high-weight {e1:>4}");

        let remedy = FormatPlan::with_modes(w_llr, w_msg, Rounding::NearestEven, true).unwrap();
        let r0 = frame_errors(&h, &zeros, &ch, &remedy, frames);
        let r1 = frame_errors(&h, high.bits(), &ch, &remedy, frames);
        println!("        rne + centered: zeros {r0:>4}  high-weight {r1:>4}");
    }
}
