//! Bit-accurate fixed-point model of the ADMM decoder.
//!
//! Values live on two's-complement grids described by [`FixedPointFormat`];
//! a [`FormatPlan`] assigns one format to each dataflow boundary (input
//! LLRs, variable estimates, check-to-variable messages, check state). The
//! quantized decoder [`decode_fixed`] reruns the ADMM sweeps with values
//! snapped to those grids exactly where a hardware pipeline would write them
//! to memory; everything in between is computed wide.
//!
//! All stored values are dyadic rationals representable exactly in `f64`,
//! so the decoder is a deterministic function of the input bit patterns.

use crate::admm::{hard_decision, is_integral, Decoding};
use crate::code::ParityCheckMatrix;
use crate::error::{Error, Result};
use crate::polytope::project_pp;
use serde::{Deserialize, Serialize};

/// Rounding applied when a wide value is written to a fixed-point grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rounding {
    /// Truncate toward negative infinity (drop fraction bits).
    Truncate,
    /// Round to nearest, ties to even.
    NearestEven,
}

/// Two's-complement format: one sign bit, `integer_bits`, `fraction_bits`.
///
/// Representable range is `[-2^I, 2^I - 2^-F]` with step `2^-F`; overflow
/// saturates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointFormat {
    pub integer_bits: u32,
    pub fraction_bits: u32,
    pub rounding: Rounding,
}

/// A fixed-point value: an integer code interpreted against its format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fixed {
    pub code: i64,
    pub format: FixedPointFormat,
}

impl Fixed {
    /// The real value `code * 2^-fraction_bits`.
    pub fn value(&self) -> f64 {
        self.code as f64 * self.format.resolution()
    }
}

impl FixedPointFormat {
    pub fn new(integer_bits: u32, fraction_bits: u32, rounding: Rounding) -> Self {
        assert!(
            1 + integer_bits + fraction_bits <= 62,
            "format too wide for i64 codes"
        );
        Self { integer_bits, fraction_bits, rounding }
    }

    /// Total width including the sign bit.
    pub fn total_bits(&self) -> u32 {
        1 + self.integer_bits + self.fraction_bits
    }

    pub fn max_code(&self) -> i64 {
        (1i64 << (self.integer_bits + self.fraction_bits)) - 1
    }

    pub fn min_code(&self) -> i64 {
        -(1i64 << (self.integer_bits + self.fraction_bits))
    }

    /// Largest representable value, `2^I - 2^-F`.
    pub fn max_value(&self) -> f64 {
        self.code_to_value(self.max_code())
    }

    /// Smallest representable value, `-2^I`.
    pub fn min_value(&self) -> f64 {
        self.code_to_value(self.min_code())
    }

    /// Grid step `2^-F`.
    pub fn resolution(&self) -> f64 {
        (-(self.fraction_bits as f64)).exp2()
    }

    pub fn code_to_value(&self, code: i64) -> f64 {
        code as f64 * self.resolution()
    }

    /// Quantizes a finite real to this format, saturating on overflow.
    ///
    /// Scaling by `2^F` is exact in IEEE arithmetic, so the selected code
    /// depends only on the input bit pattern and the rounding mode.
    pub fn quantize(&self, value: f64) -> Fixed {
        debug_assert!(value.is_finite());
        let scaled = value * (self.fraction_bits as f64).exp2();
        let code = match self.rounding {
            Rounding::Truncate => scaled.floor(),
            Rounding::NearestEven => scaled.round_ties_even(),
        };
        // f64 -> i64 casts saturate, then clamp to the format range.
        let code = (code as i64).clamp(self.min_code(), self.max_code());
        Fixed { code, format: *self }
    }

    /// Quantizes and returns the represented value.
    pub fn quantize_value(&self, value: f64) -> f64 {
        self.quantize(value).value()
    }
}

/// Fixed-point formats for each dataflow boundary of the decoder.
///
/// Built from the input width `w_llr` and internal message width `w_msg`:
/// LLRs get no integer bits (all channel information lands in the fraction),
/// estimates get one integer bit, check-to-variable messages keep the LLR's
/// fraction width and spend the rest on integer range, and the check state
/// mirrors the check-to-variable format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormatPlan {
    pub w_llr: u32,
    pub w_msg: u32,
    pub rounding: Rounding,
    /// Store estimates as offsets from 1/2 in a sign/0-integer format,
    /// which frees the integer bit for one extra fraction bit.
    pub centered_estimates: bool,
    pub llr: FixedPointFormat,
    pub estimate: FixedPointFormat,
    pub cn_to_vn: FixedPointFormat,
    pub check_state: FixedPointFormat,
}

impl FormatPlan {
    /// Builds the plan for the given widths with truncation rounding.
    pub fn new(w_llr: u32, w_msg: u32) -> Result<Self> {
        Self::with_modes(w_llr, w_msg, Rounding::Truncate, false)
    }

    /// Builds the plan with explicit rounding and estimate-centering modes.
    pub fn with_modes(
        w_llr: u32,
        w_msg: u32,
        rounding: Rounding,
        centered_estimates: bool,
    ) -> Result<Self> {
        if w_llr < 2 {
            return Err(Error::Format(format!(
                "w_llr = {w_llr}: need at least a sign and one fraction bit"
            )));
        }
        if w_msg < w_llr + 1 {
            return Err(Error::Format(format!(
                "w_msg = {w_msg} must exceed w_llr = {w_llr} to grant the message integer bit"
            )));
        }
        let llr = FixedPointFormat::new(0, w_llr - 1, rounding);
        let estimate = if centered_estimates {
            FixedPointFormat::new(0, w_msg - 1, rounding)
        } else {
            FixedPointFormat::new(1, w_msg - 2, rounding)
        };
        let cn_to_vn = FixedPointFormat::new(w_msg - w_llr, w_llr - 1, rounding);
        Ok(Self {
            w_llr,
            w_msg,
            rounding,
            centered_estimates,
            llr,
            estimate,
            cn_to_vn,
            check_state: cn_to_vn,
        })
    }

    /// Quantizes a real LLR vector (already scaled into `[-1, 1]`) to the
    /// input format.
    pub fn quantize_llrs(&self, gamma: &[f64]) -> Vec<Fixed> {
        gamma.iter().map(|&g| self.llr.quantize(g)).collect()
    }

    /// Snaps an estimate in `[0,1]` to its storage grid.
    fn store_estimate(&self, x: f64) -> f64 {
        if self.centered_estimates {
            0.5 + self.estimate.quantize_value(x - 0.5)
        } else {
            self.estimate.quantize_value(x)
        }
    }
}

/// Serialized form: the four knobs rather than the derived formats.
#[derive(Serialize, Deserialize)]
struct PlanConfig {
    w_llr: u32,
    w_msg: u32,
    rounding: Rounding,
    #[serde(default)]
    centered: bool,
}

impl Serialize for FormatPlan {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PlanConfig {
            w_llr: self.w_llr,
            w_msg: self.w_msg,
            rounding: self.rounding,
            centered: self.centered_estimates,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FormatPlan {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let cfg = PlanConfig::deserialize(d)?;
        FormatPlan::with_modes(cfg.w_llr, cfg.w_msg, cfg.rounding, cfg.centered)
            .map_err(serde::de::Error::custom)
    }
}

use crate::admm::DecoderConfig;

/// Runs the ADMM sweeps with values quantized at the storage boundaries.
///
/// `gamma_q` must already be in the plan's LLR format. Estimates are snapped
/// to the estimate grid after the reciprocal multiply, projection outputs
/// and outgoing messages to the message grid, and duals to the check-state
/// grid; the projection itself runs wide and is quantized once at output.
///
/// The integrality tolerance is widened to a few estimate-grid steps when
/// the configured tolerance is finer than the grid itself, since truncation
/// can pin estimates one step short of a bit value indefinitely.
pub fn decode_fixed(
    h: &ParityCheckMatrix,
    gamma_q: &[Fixed],
    cfg: &DecoderConfig,
    plan: &FormatPlan,
) -> Result<Decoding> {
    if gamma_q.len() != h.num_variables() {
        return Err(Error::Dimension { expected: h.num_variables(), got: gamma_q.len() });
    }
    if gamma_q.iter().any(|g| g.format != plan.llr) {
        return Err(Error::Format("LLR vector is not in the plan's input format".into()));
    }
    for j in 0..h.num_checks() {
        let deg = h.check_neighborhood(j).len();
        if deg < 2 {
            return Err(Error::CheckDegree(j, deg));
        }
    }
    if cfg.llr_scale != 1.0 {
        return Err(Error::Config(
            "llr_scale does not apply to quantized input; scale before quantizing".into(),
        ));
    }

    let n = h.num_variables();
    let m = h.num_checks();
    let gamma: Vec<f64> = gamma_q.iter().map(Fixed::value).collect();
    // Quantized sweeps stall a few grid steps short of the bit values, so
    // the integrality test widens to the scale of one message plus one
    // estimate step on each of two neighbors; see the termination test.
    let tol = cfg
        .integrality_tolerance
        .max(2.0 * (plan.cn_to_vn.resolution() + plan.estimate.resolution()));

    // Normalization by 1/deg uses a reciprocal table at the estimate's
    // fraction precision; this inexactness is part of the model. One integer
    // bit so the degree-1 reciprocal stays exact.
    let recip_fmt = FixedPointFormat::new(1, plan.estimate.fraction_bits, plan.rounding);
    let max_deg = (0..n).map(|i| h.variable_neighborhood(i).len()).max().unwrap();
    let recip: Vec<f64> = (0..=max_deg)
        .map(|d| if d == 0 { 0.0 } else { recip_fmt.quantize_value(1.0 / d as f64) })
        .collect();

    let mut messages: Vec<Vec<f64>> =
        (0..m).map(|j| vec![plan.cn_to_vn.quantize_value(0.5); h.check_neighborhood(j).len()]).collect();
    let mut lambda: Vec<Vec<f64>> =
        (0..m).map(|j| vec![0.0; h.check_neighborhood(j).len()]).collect();
    let mut x = vec![0.0f64; n];
    let mut sums = vec![0.0f64; n];

    let mut iterations_used = cfg.max_iterations;
    let mut converged = false;
    for iter in 1..=cfg.max_iterations {
        sums.fill(0.0);
        for j in 0..m {
            for (&i, &mji) in h.check_neighborhood(j).iter().zip(&messages[j]) {
                sums[i] += mji;
            }
        }
        for i in 0..n {
            let deg = h.variable_neighborhood(i).len();
            let wide = ((sums[i] - gamma[i]) * recip[deg]).clamp(0.0, 1.0);
            x[i] = plan.store_estimate(wide);
        }

        if cfg.early_termination
            && is_integral(&x, tol)
            && h.syndrome_ok(&hard_decision(&x))
        {
            iterations_used = iter;
            converged = true;
            break;
        }

        for j in 0..m {
            let nb = h.check_neighborhood(j);
            let lam = &mut lambda[j];
            let msg = &mut messages[j];
            let v: Vec<f64> = nb.iter().zip(lam.iter()).map(|(&i, &l)| x[i] + l).collect();
            let z = project_pp(&v).z;
            for k in 0..nb.len() {
                msg[k] = plan.cn_to_vn.quantize_value(2.0 * z[k] - v[k]);
                lam[k] = plan.check_state.quantize_value(v[k] - z[k]);
            }
        }
    }

    let hard = hard_decision(&x);
    let integral = is_integral(&x, tol);
    let ml_certificate = integral && h.syndrome_ok(&hard);
    Ok(Decoding { x, hard, iterations_used, converged, integral, ml_certificate })
}
