//! Parity polytope projection walkthrough.
//!
//! Projects a few hand-picked vectors and a batch of random ones, printing
//! the cut-search facet, the fast projection, and the Dykstra reference
//! value next to it.
//!
//! Run with: `cargo run --release --example project_polytope`

use lpdec::polytope::{cut_search, oracle_project_pp, project_pp};
use rand::{Rng, SeedableRng};

fn show(v: &[f64]) {
    let (facet, violated) = cut_search(v);
    let result = project_pp(v);
    let oracle = oracle_project_pp(v, 20_000).expect("oracle converged");
    let gap = result
        .z
        .iter()
        .zip(&oracle)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    let mask: String = facet.flags().iter().map(|&b| if b { '1' } else { '0' }).collect();
    println!("v = {v:>7.3?}");
    println!("  facet {mask}, violated: {violated}, simplex path: {}", result.used_simplex);
    println!("  projection {:>7.4?}", result.z);
    println!("  oracle gap {gap:.2e}\n");
}

fn main() {
    // The all-ones corner is the classic violated case: it projects to the
    // center of the nearest odd-set facet.
    show(&[1.0, 1.0, 1.0]);
    // Already a member: clipping is the whole projection.
    show(&[0.9, 0.8, 0.1]);
    // An even-weight vertex is a member and a fixed point.
    show(&[0.0, 0.0, 0.0]);
    // Outside the box on both sides.
    show(&[1.7, -0.4, 0.9, 1.2]);

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..2000 {
        let d = rng.gen_range(3..=8);
        let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..2.0)).collect();
        let fast = project_pp(&v).z;
        let slow = oracle_project_pp(&v, 20_000).expect("oracle converged");
        let gap = fast.iter().zip(&slow).map(|(a, b)| (a - b).abs()).fold(0.0f64, f64::max);
        worst = worst.max(gap);
    }
    println!("2000 random projections, d in 3..=8: worst oracle gap {worst:.2e}");
}
