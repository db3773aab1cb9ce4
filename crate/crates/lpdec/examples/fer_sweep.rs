//! Programmatic frame-error-rate sweep.
//!
//! Builds a sweep spec in code (the CLI reads the same structure from
//! JSON), runs three decoders on paired noise across a small SNR range,
//! and prints the CSV that would be written next to the results JSON.
//!
//! Run with: `cargo run --release --example fer_sweep`

use lpdec::fer::{CodewordSource, DecoderKind, SweepSpec};
use lpdec::fixed::Rounding;
use lpdec::{run_sweep, QcStructure};
use std::path::Path;

fn main() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/tanner155.json");
    let h = QcStructure::from_json(&std::fs::read_to_string(data).expect("data file"))
        .unwrap()
        .expand()
        .unwrap();

    let spec = SweepSpec {
        code: "data/tanner155.json".into(),
        codeword_source: CodewordSource::RandomPerFrame,
        decoders: vec![
            DecoderKind::AdmmDouble,
            DecoderKind::AdmmFixed {
                w_llr: 8,
                w_msg: 11,
                rounding: Rounding::Truncate,
                centered: false,
            },
            DecoderKind::Bp,
        ],
        ebn0_db: vec![2.0, 2.5, 3.0],
        min_frame_errors: 30,
        max_frames: 30_000,
        max_iterations: 500,
        seed: Some(1),
        saturate: true,
    };

    let result = run_sweep(&h, &spec).expect("sweep runs");
    print!("{}", result.to_csv());
    let out = std::env::temp_dir().join("lpdec_example_sweep");
    if let Some((json_path, csv_path)) = result.write(&out, "tanner_demo").expect("writable") {
        eprintln!("\nwrote {}", json_path.display());
        eprintln!("wrote {}", csv_path.display());
    }
}
