//! Euclidean projection onto the parity polytope.
//!
//! The parity polytope in dimension `d` is the convex hull of the even-weight
//! vertices of the unit hypercube. The projection runs in three steps: a
//! cut search locates the single odd-set facet the box-clipped point can
//! violate, a mirror transform maps that facet region onto the probability
//! simplex, and a sort-based simplex projection finishes the job. A Dykstra
//! alternating-projection oracle over the full facet list provides an
//! independent reference for testing and the CLI.

use crate::error::{Error, Result};

/// Indicator of an odd-cardinality facet set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetIndicator {
    f: Vec<bool>,
}

impl FacetIndicator {
    fn new(f: Vec<bool>) -> Self {
        debug_assert_eq!(f.iter().filter(|&&b| b).count() % 2, 1, "facet weight must be odd");
        Self { f }
    }

    /// Membership flags, one per coordinate.
    pub fn flags(&self) -> &[bool] {
        &self.f
    }

    /// Indices of the facet set S.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.f.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn weight(&self) -> usize {
        self.f.iter().filter(|&&b| b).count()
    }
}

/// Projection output: the projected point and which path produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionResult {
    /// The Euclidean projection, inside `[0,1]^d`.
    pub z: Vec<f64>,
    /// True when the facet/simplex path ran; false when box clipping sufficed.
    pub used_simplex: bool,
}

/// Componentwise clip onto the unit hypercube.
pub fn clip_cube(v: &[f64]) -> Vec<f64> {
    debug_assert!(v.iter().all(|x| x.is_finite()));
    v.iter().map(|&x| x.clamp(0.0, 1.0)).collect()
}

/// Locates the odd-set facet nearest the box-clipped point and reports
/// whether that point violates the facet inequality.
///
/// The clipped point is rounded componentwise to {0,1} (ties at 0.5 round
/// down); an even-weight vertex has the coordinate with clipped value
/// nearest 0.5 flipped, lowest index winning ties.
///
/// Panics if `v.len() < 2`.
pub fn cut_search(v: &[f64]) -> (FacetIndicator, bool) {
    assert!(v.len() >= 2, "parity polytope needs dimension >= 2");
    let c = clip_cube(v);
    let mut f: Vec<bool> = c.iter().map(|&x| x > 0.5).collect();
    if f.iter().filter(|&&b| b).count() % 2 == 0 {
        let nearest = c
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let (da, db) = ((*a - 0.5).abs(), (*b - 0.5).abs());
                da.partial_cmp(&db).unwrap()
            })
            .map(|(i, _)| i)
            .unwrap();
        f[nearest] = !f[nearest];
    }
    let violated = facet_gap(&c, &f) > 0.0;
    (FacetIndicator::new(f), violated)
}

/// `sum_{i in S} x_i - sum_{i not in S} x_i - (|S| - 1)`; positive means the
/// facet inequality is violated.
fn facet_gap(x: &[f64], f: &[bool]) -> f64 {
    let mut acc = 0.0;
    let mut size = 0usize;
    for (&xi, &fi) in x.iter().zip(f.iter()) {
        if fi {
            acc += xi;
            size += 1;
        } else {
            acc -= xi;
        }
    }
    acc - (size as f64 - 1.0)
}

/// Euclidean projection onto the probability simplex `{w >= 0, 1'w = 1}`.
///
/// Sort-and-threshold method: with `u` sorted descending, find the largest
/// `j` with `u_(j) - (sum_{k<=j} u_(k) - 1)/j > 0` and subtract that
/// threshold from every coordinate, clipping at zero.
pub fn project_simplex(u: &[f64]) -> Vec<f64> {
    debug_assert!(u.iter().all(|x| x.is_finite()));
    let mut sorted = u.to_vec();
    sorted.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
    let mut theta = 0.0;
    let mut cumsum = 0.0;
    for (j, &uj) in sorted.iter().enumerate() {
        cumsum += uj;
        let candidate = (cumsum - 1.0) / (j + 1) as f64;
        if uj - candidate > 0.0 {
            theta = candidate;
        }
    }
    u.iter().map(|&ui| (ui - theta).max(0.0)).collect()
}

/// Exact Euclidean projection onto the parity polytope.
///
/// Panics if `v.len() < 2`.
pub fn project_pp(v: &[f64]) -> ProjectionResult {
    let (facet, violated) = cut_search(v);
    if !violated {
        return ProjectionResult { z: clip_cube(v), used_simplex: false };
    }
    // Mirror the facet coordinates; the violated facet becomes 1'w = 1 and
    // its region becomes the probability simplex.
    let t: Vec<f64> = v
        .iter()
        .zip(facet.flags())
        .map(|(&vi, &in_s)| if in_s { 1.0 - vi } else { vi })
        .collect();
    let w = project_simplex(&t);
    let z = w
        .iter()
        .zip(facet.flags())
        .map(|(&wi, &in_s)| if in_s { 1.0 - wi } else { wi })
        .collect();
    ProjectionResult { z, used_simplex: true }
}

/// Enumerates all odd-cardinality subsets of `0..d` as bitmasks.
fn odd_subsets(d: usize) -> impl Iterator<Item = u32> {
    assert!(d <= 12, "facet enumeration is limited to d <= 12");
    (1u32..(1 << d)).filter(|m| m.count_ones() % 2 == 1)
}

/// Reference projection via Dykstra's alternating projections over every
/// odd-set facet halfspace and both box faces of each coordinate.
///
/// Runs until successive cycles move less than 1e-10 or the cycle budget is
/// spent; the budget case is an error rather than a silent bad answer.
pub fn oracle_project_pp(v: &[f64], max_cycles: usize) -> Result<Vec<f64>> {
    let d = v.len();
    assert!(d >= 2, "parity polytope needs dimension >= 2");
    let facets: Vec<u32> = odd_subsets(d).collect();
    // Halfspaces a'x <= b: facet rows (a in {+-1}^d, b = |S|-1), then
    // x_i <= 1 and -x_i <= 0.
    let num_constraints = facets.len() + 2 * d;
    let mut x = v.to_vec();
    let mut y = vec![0.0f64; d];
    let mut before = vec![0.0f64; d];
    let mut corrections = vec![vec![0.0f64; d]; num_constraints];
    let mut last_change = f64::INFINITY;
    for _ in 0..max_cycles {
        before.copy_from_slice(&x);
        for (ci, corr) in corrections.iter_mut().enumerate() {
            for i in 0..d {
                y[i] = x[i] + corr[i];
            }
            if ci < facets.len() {
                let mask = facets[ci];
                let b = mask.count_ones() as f64 - 1.0;
                let mut dot = 0.0;
                for (i, &yi) in y.iter().enumerate() {
                    dot += if mask >> i & 1 == 1 { yi } else { -yi };
                }
                if dot > b {
                    let step = (dot - b) / d as f64;
                    for (i, yi) in y.iter_mut().enumerate() {
                        if mask >> i & 1 == 1 {
                            *yi -= step;
                        } else {
                            *yi += step;
                        }
                    }
                }
            } else {
                let i = (ci - facets.len()) / 2;
                if (ci - facets.len()) % 2 == 0 {
                    if y[i] > 1.0 {
                        y[i] = 1.0;
                    }
                } else if y[i] < 0.0 {
                    y[i] = 0.0;
                }
            }
            for i in 0..d {
                corr[i] = x[i] + corr[i] - y[i];
            }
            std::mem::swap(&mut x, &mut y);
        }
        last_change = x
            .iter()
            .zip(before.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if last_change < 1e-10 {
            return Ok(x);
        }
    }
    Err(Error::OracleNotConverged { last_change })
}

/// True when `x` satisfies every box and odd-set facet constraint to `tol`.
pub fn is_member(x: &[f64], tol: f64) -> bool {
    if x.iter().any(|&xi| !(-tol..=1.0 + tol).contains(&xi)) {
        return false;
    }
    let mut f = vec![false; x.len()];
    odd_subsets(x.len()).all(|mask| {
        for (i, fi) in f.iter_mut().enumerate() {
            *fi = mask >> i & 1 == 1;
        }
        facet_gap(x, &f) <= tol
    })
}
