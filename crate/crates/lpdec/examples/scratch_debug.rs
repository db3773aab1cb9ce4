use lpdec::channel::{frame_stream, llr_for_fixed, transmit, ChannelConfig, StreamKind};
use lpdec::*;
use rayon::prelude::*;

fn main() {
    let h = ParityCheckMatrix::from_checks(
        7,
        vec![vec![0, 1, 2, 4], vec![0, 1, 3, 5], vec![0, 2, 3, 6]],
    )
    .unwrap();
    let plan = FormatPlan::new(41, 50).unwrap();
    for ebn0 in [3.0f64, 5.0] {
        let ch = ChannelConfig::new(ebn0, h.rate(), true).unwrap();
        for cap in [500usize, 5000] {
            let cfg = DecoderConfig { max_iterations: cap, ..Default::default() };
            let (nc, disagree): (u64, u64) = (0..1000u64)
                .into_par_iter()
                .map(|f| {
                    let cw = h.random_codeword_with(&mut frame_stream(31, StreamKind::Source, f));
                    let y = transmit(cw.bits(), &ch, &mut frame_stream(31, StreamKind::Noise, f));
                    let gamma = llr_for_fixed(&y, &ch);
                    let dd = decode(&h, &gamma, &cfg).unwrap();
                    let df = decode_fixed(&h, &plan.quantize_llrs(&gamma), &cfg, &plan).unwrap();
                    (u64::from(!dd.converged), u64::from(dd.hard != df.hard))
                })
                .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
            println!("ebn0 {ebn0} cap {cap}: nonconverged {nc}/1000, disagreements {disagree}/1000");
        }
    }
}
