//! Structural checks of the code files shipped under `data/`.

use lpdec::{ParityCheckMatrix, QcStructure};
use std::path::PathBuf;

fn data(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name);
    std::fs::read_to_string(path).expect("data file readable")
}

#[test]
fn tanner_qc_expands_to_155_64_regular_code() {
    let qc = QcStructure::from_json(&data("tanner155.json")).unwrap();
    assert_eq!(qc.p(), 31);
    assert_eq!(qc.proto_rows(), 3);
    assert_eq!(qc.proto_cols(), 5);
    let h = qc.expand().unwrap();
    assert_eq!(h.num_checks(), 93);
    assert_eq!(h.num_variables(), 155);
    assert!((0..93).all(|j| h.check_neighborhood(j).len() == 5));
    assert!((0..155).all(|i| h.variable_neighborhood(i).len() == 3));
    // The matrix loses two ranks over GF(2), giving dimension 64.
    assert_eq!(h.rank(), 91);
    assert_eq!(h.dimension(), 64);
}

#[test]
fn tanner_alist_matches_qc_expansion() {
    let from_alist = ParityCheckMatrix::from_alist(&data("tanner155.alist")).unwrap();
    let from_qc = QcStructure::from_json(&data("tanner155.json")).unwrap().expand().unwrap();
    assert_eq!(from_alist, from_qc);
    // Proto dimensions divide out under p = 31.
    assert_eq!(from_alist.num_checks() / 31, 3);
    assert_eq!(from_alist.num_variables() / 31, 5);
}

#[test]
fn tanner_qc_detection_round_trips() {
    let qc = QcStructure::from_json(&data("tanner155.json")).unwrap();
    let h = qc.expand().unwrap();
    assert_eq!(QcStructure::detect(&h, 31), Some(qc));
}

#[test]
fn wigig_code_is_rate_13_16_with_published_degree_profile() {
    let qc = QcStructure::from_json(&data("wigig_672_546.json")).unwrap();
    assert_eq!(qc.p(), 42);
    assert_eq!(qc.proto_rows(), 3);
    assert_eq!(qc.proto_cols(), 16);
    let h = qc.expand().unwrap();
    assert_eq!(h.num_checks(), 126);
    assert_eq!(h.num_variables(), 672);
    // Check degrees 16, 15 and 14, one proto-row each.
    let mut check_degs: Vec<usize> =
        (0..3).map(|a| h.check_neighborhood(a * 42).len()).collect();
    check_degs.sort_unstable();
    assert_eq!(check_degs, vec![14, 15, 16]);
    // Variable degrees: fourteen proto-columns of 3, one of 2, one of 1.
    let var_degs: Vec<usize> =
        (0..16).map(|b| h.variable_neighborhood(b * 42).len()).collect();
    let count = |d: usize| var_degs.iter().filter(|&&x| x == d).count();
    assert_eq!((count(3), count(2), count(1)), (14, 1, 1));
    // Full rank: dimension 546, rate exactly 13/16.
    assert_eq!(h.rank(), 126);
    assert_eq!(h.dimension(), 546);
    assert!((h.rate() - 13.0 / 16.0).abs() < 1e-12);
    assert_eq!(ParityCheckMatrix::from_alist(&data("wigig_672_546.alist")).unwrap(), h);
}

#[test]
fn random_codewords_of_shipped_codes_pass_syndrome() {
    for name in ["tanner155.json", "wigig_672_546.json"] {
        let h = QcStructure::from_json(&data(name)).unwrap().expand().unwrap();
        for seed in 0..5 {
            let cw = h.random_codeword(seed);
            assert!(h.syndrome_ok(cw.bits()));
        }
        // High-weight codewords exist: a random draw lands near n/2.
        let w = h.random_codeword(1).weight();
        assert!(w > h.num_variables() / 3, "weight {w}");
    }
}
