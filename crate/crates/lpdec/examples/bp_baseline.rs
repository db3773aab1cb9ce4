//! Sum-product baseline next to the ADMM-LP decoder.
//!
//! Decodes the same noisy frames with both and reports errors and speed in
//! iterations. The box-plus recursion runs in a non-saturating log-domain
//! form, so large message magnitudes never clip.
//!
//! Run with: `cargo run --release --example bp_baseline`

use lpdec::channel::{frame_stream, llr, transmit, ChannelConfig, StreamKind};
use lpdec::{bp_decode, decode, BpConfig, DecoderConfig, QcStructure};
use std::path::Path;

fn main() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/tanner155.json");
    let h = QcStructure::from_json(&std::fs::read_to_string(data).expect("data file"))
        .unwrap()
        .expand()
        .unwrap();

    let ch = ChannelConfig::new(2.5, h.rate(), true).unwrap();
    let admm_cfg = DecoderConfig::default();
    let bp_cfg = BpConfig::default();

    let frames = 300;
    let (mut admm_errs, mut bp_errs) = (0u32, 0u32);
    let (mut admm_iters, mut bp_iters) = (0u64, 0u64);
    for f in 0..frames {
        let cw = h.random_codeword_with(&mut frame_stream(11, StreamKind::Source, f));
        let y = transmit(cw.bits(), &ch, &mut frame_stream(11, StreamKind::Noise, f));
        let gamma = llr(&y, &ch);

        let a = decode(&h, &gamma, &admm_cfg).unwrap();
        let b = bp_decode(&h, &gamma, &bp_cfg).unwrap();
        admm_errs += u32::from(a.hard != cw.bits());
        bp_errs += u32::from(b.hard != cw.bits());
        admm_iters += a.iterations_used as u64;
        bp_iters += b.iterations_used as u64;
    }
    println!("{frames} frames, Tanner code, Eb/N0 = {} dB", ch.ebn0_db);
    println!(
        "  admm-lp: {admm_errs} frame errors, mean iterations {:.1}",
        admm_iters as f64 / frames as f64
    );
    println!(
        "  bp:      {bp_errs} frame errors, mean iterations {:.1}",
        bp_iters as f64 / frames as f64
    );
}
