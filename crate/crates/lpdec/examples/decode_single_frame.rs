//! Decode one noisy frame of the [155, 64] Tanner code.
//!
//! Draws a random codeword, sends it through the AWGN channel at 3 dB, and
//! decodes with the double-precision ADMM decoder. An integral output
//! carries an ML certificate: it is provably the maximum-likelihood word.
//!
//! Run with: `cargo run --release --example decode_single_frame`

use lpdec::channel::{frame_stream, llr, transmit, ChannelConfig, StreamKind};
use lpdec::{decode, DecoderConfig, QcStructure};
use std::path::Path;

fn main() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/tanner155.json");
    let qc = QcStructure::from_json(&std::fs::read_to_string(data).expect("data file")).unwrap();
    let h = qc.expand().unwrap();
    println!(
        "code: [{}, {}] quasi-cyclic, p = {}, rate {:.4}",
        h.num_variables(),
        h.dimension(),
        qc.p(),
        h.rate()
    );

    let seed = 7;
    let ch = ChannelConfig::new(3.0, h.rate(), true).unwrap();
    let cw = h.random_codeword_with(&mut frame_stream(seed, StreamKind::Source, 0));
    println!("transmitting weight-{} codeword at Eb/N0 = {} dB", cw.weight(), ch.ebn0_db);

    let y = transmit(cw.bits(), &ch, &mut frame_stream(seed, StreamKind::Noise, 0));
    let gamma = llr(&y, &ch);
    let flipped = y.iter().zip(cw.bits()).filter(|&(&yi, &b)| (yi < 0.0) != (b == 1)).count();
    println!("channel flipped {flipped} of {} hard decisions", y.len());

    let d = decode(&h, &gamma, &DecoderConfig::default()).unwrap();
    let errors = d.hard.iter().zip(cw.bits()).filter(|(a, b)| a != b).count();
    println!("decoded in {} iterations", d.iterations_used);
    println!("converged: {}, integral: {}, ml certificate: {}", d.converged, d.integral, d.ml_certificate);
    println!("bit errors vs transmitted: {errors}");
}
