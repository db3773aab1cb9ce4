//! Double-precision vs bit-accurate fixed-point decoding on shared noise.
//!
//! Uses the 8-bit LLR / 11-bit message plan. LLRs are clamped to one noise
//! standard deviation past the signal, scaled into [-1, 1], and quantized to
//! the sign + 7-fraction-bit input grid; everything the decoder stores is
//! snapped to its hardware format.
//!
//! Run with: `cargo run --release --example fixed_point_decode`

use lpdec::channel::{frame_stream, llr, llr_for_fixed, transmit, ChannelConfig, StreamKind};
use lpdec::{decode, decode_fixed, DecoderConfig, FormatPlan, QcStructure};
use std::path::Path;

fn main() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/tanner155.json");
    let h = QcStructure::from_json(&std::fs::read_to_string(data).expect("data file"))
        .unwrap()
        .expand()
        .unwrap();

    let plan = FormatPlan::new(8, 11).unwrap();
    let fmt = |f: lpdec::FixedPointFormat| format!("1/{}/{}", f.integer_bits, f.fraction_bits);
    println!("format plan (sign/integer/fraction):");
    println!("  llr        {}", fmt(plan.llr));
    println!("  estimate   {}", fmt(plan.estimate));
    println!("  cn-to-vn   {}", fmt(plan.cn_to_vn));
    println!("  state      {}\n", fmt(plan.check_state));

    let ch = ChannelConfig::new(3.0, h.rate(), true).unwrap();
    let cfg = DecoderConfig::default();
    let frames = 200;
    let mut agree = 0;
    let mut float_errs = 0;
    let mut fixed_errs = 0;
    for f in 0..frames {
        let cw = h.random_codeword_with(&mut frame_stream(3, StreamKind::Source, f));
        let y = transmit(cw.bits(), &ch, &mut frame_stream(3, StreamKind::Noise, f));

        let dd = decode(&h, &llr(&y, &ch), &cfg).unwrap();
        let gq = plan.quantize_llrs(&llr_for_fixed(&y, &ch));
        let df = decode_fixed(&h, &gq, &cfg, &plan).unwrap();

        agree += u32::from(dd.hard == df.hard);
        float_errs += u32::from(dd.hard != cw.bits());
        fixed_errs += u32::from(df.hard != cw.bits());
    }
    println!("{frames} paired frames at Eb/N0 = {} dB:", ch.ebn0_db);
    println!("  identical hard decisions: {agree}/{frames}");
    println!("  frame errors: double {float_errs}, fixed {fixed_errs}");
}
