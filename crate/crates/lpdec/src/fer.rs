//! Monte Carlo frame-error-rate measurement.
//!
//! A sweep simulates frames at each Eb/N0 until every decoder in the spec
//! has accumulated the requested number of frame errors (or the frame cap
//! is hit, which flags the point as censored). All decoders in one spec see
//! identical noise per frame index, so comparisons are paired. Frames are
//! distributed over a rayon pool in fixed-size batches; per-frame RNG
//! streams and commutative accumulation make results identical for any
//! worker count.

use crate::admm::{decode, DecoderConfig, Decoding};
use crate::bp::{bp_decode, BpConfig};
use crate::channel::{frame_stream, llr, llr_for_fixed, transmit, ChannelConfig, StreamKind};
use crate::code::ParityCheckMatrix;
use crate::error::{Error, Result};
use crate::fixed::{decode_fixed, FormatPlan, Rounding};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Frames per scheduling batch. Stop rules are evaluated between batches,
/// so a point can overshoot its error target by at most one batch; the
/// batch size is fixed (not worker-dependent) to keep results reproducible.
const FRAME_BATCH: u64 = 256;

/// Where transmitted codewords come from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodewordSource {
    /// Every frame transmits the all-zeros codeword.
    AllZeros,
    /// Every frame draws a fresh uniform codeword from its own stream.
    RandomPerFrame,
    /// Every frame transmits the codeword read from this file
    /// (whitespace-separated or contiguous 0/1 text).
    FixedFile(PathBuf),
    /// Every frame transmits these bits (in-memory form of `FixedFile`).
    #[serde(skip)]
    FixedBits(Vec<u8>),
}

/// One decoder entry of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum DecoderKind {
    AdmmDouble,
    AdmmFixed {
        w_llr: u32,
        w_msg: u32,
        #[serde(default = "default_rounding")]
        rounding: Rounding,
        #[serde(default)]
        centered: bool,
    },
    Bp,
}

fn default_rounding() -> Rounding {
    Rounding::Truncate
}

impl DecoderKind {
    /// Stable identifier used in result rows.
    pub fn id(&self) -> String {
        match self {
            DecoderKind::AdmmDouble => "admm_double".into(),
            DecoderKind::Bp => "bp".into(),
            DecoderKind::AdmmFixed { w_llr, w_msg, rounding, centered } => {
                let mut s = format!("admm_fixed_{w_llr}_{w_msg}");
                if *rounding == Rounding::NearestEven {
                    s.push_str("_rne");
                }
                if *centered {
                    s.push_str("_centered");
                }
                s
            }
        }
    }
}

/// Full description of a sweep. Serializable as the CLI's spec JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepSpec {
    /// Code file path (alist or QC JSON); informational when the matrix is
    /// passed in directly.
    pub code: String,
    #[serde(default = "default_source")]
    pub codeword_source: CodewordSource,
    pub decoders: Vec<DecoderKind>,
    /// Eb/N0 points in dB; simulated in ascending order.
    pub ebn0_db: Vec<f64>,
    #[serde(default = "default_min_frame_errors")]
    pub min_frame_errors: u64,
    #[serde(default = "default_max_frames")]
    pub max_frames: u64,
    #[serde(default = "default_max_iterations")]
    pub max_iterations: usize,
    /// Defaults to the `LPDEC_SEED` environment variable, then 0.
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default = "default_true")]
    pub saturate: bool,
}

fn default_source() -> CodewordSource {
    CodewordSource::RandomPerFrame
}
fn default_min_frame_errors() -> u64 {
    100
}
fn default_max_frames() -> u64 {
    10_000_000
}
fn default_max_iterations() -> usize {
    500
}
fn default_true() -> bool {
    true
}

impl SweepSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: SweepSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.decoders.is_empty() {
            return Err(Error::Config("spec lists no decoders".into()));
        }
        if self.min_frame_errors == 0 {
            return Err(Error::Config("min_frame_errors must be at least 1".into()));
        }
        if self.max_frames == 0 {
            return Err(Error::Config("max_frames must be positive".into()));
        }
        if self.max_iterations == 0 {
            return Err(Error::Config("max_iterations must be at least 1".into()));
        }
        for kind in &self.decoders {
            if let DecoderKind::AdmmFixed { w_llr, w_msg, rounding, centered } = kind {
                FormatPlan::with_modes(*w_llr, *w_msg, *rounding, *centered)?;
            }
        }
        Ok(())
    }

    /// Seed actually used: explicit, else `LPDEC_SEED`, else 0.
    pub fn effective_seed(&self) -> u64 {
        self.seed
            .or_else(|| std::env::var("LPDEC_SEED").ok().and_then(|v| v.parse().ok()))
            .unwrap_or(0)
    }
}

/// Accumulated statistics for one decoder at one Eb/N0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FerPoint {
    pub ebn0_db: f64,
    pub decoder_id: String,
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    /// Frames whose decoder hit the iteration cap; their hard decisions
    /// still count toward `frame_errors` when wrong.
    pub nonconverged: u64,
    pub mean_iterations: f64,
    pub fer: f64,
    pub seed: u64,
    /// True when the frame cap ended the point before `min_frame_errors`.
    pub censored: bool,
    /// Scale applied to LLRs before quantization (fixed-point decoders).
    pub fixed_llr_scale: Option<f64>,
    pub wallclock_s: f64,
}

impl FerPoint {
    /// Equality over everything except the timing field.
    pub fn same_statistics(&self, other: &FerPoint) -> bool {
        self.ebn0_db == other.ebn0_db
            && self.decoder_id == other.decoder_id
            && self.frames == other.frames
            && self.frame_errors == other.frame_errors
            && self.bit_errors == other.bit_errors
            && self.nonconverged == other.nonconverged
            && self.mean_iterations == other.mean_iterations
            && self.fer == other.fer
            && self.seed == other.seed
            && self.censored == other.censored
            && self.fixed_llr_scale == other.fixed_llr_scale
    }
}

/// A finished sweep: the spec that produced it plus all points.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub points: Vec<FerPoint>,
}

impl SweepResult {
    /// Flat CSV for plotting tools.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("ebn0_db,decoder,frames,frame_errors,fer,mean_iters\n");
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                p.ebn0_db, p.decoder_id, p.frames, p.frame_errors, p.fer, p.mean_iterations
            ));
        }
        out
    }

    /// Writes `<stem>.json` and `<stem>.csv` under `dir`. Empty results
    /// write nothing and return `None`.
    pub fn write(&self, dir: &Path, stem: &str) -> Result<Option<(PathBuf, PathBuf)>> {
        if self.points.is_empty() {
            return Ok(None);
        }
        std::fs::create_dir_all(dir)?;
        let json_path = dir.join(format!("{stem}.json"));
        let csv_path = dir.join(format!("{stem}.csv"));
        std::fs::write(&json_path, serde_json::to_string_pretty(self)?)?;
        std::fs::write(&csv_path, self.to_csv())?;
        Ok(Some((json_path, csv_path)))
    }
}

/// Per-decoder outcome of a single frame.
#[derive(Clone, Copy, Default)]
struct FrameOutcome {
    error: bool,
    bit_errors: u64,
    iterations: u64,
    nonconverged: bool,
}

#[derive(Clone, Default)]
struct Tally {
    frames: u64,
    frame_errors: u64,
    bit_errors: u64,
    iterations: u64,
    nonconverged: u64,
}

impl Tally {
    fn absorb(&mut self, o: &FrameOutcome) {
        self.frames += 1;
        self.frame_errors += u64::from(o.error);
        self.bit_errors += o.bit_errors;
        self.iterations += o.iterations;
        self.nonconverged += u64::from(o.nonconverged);
    }
}

enum PreparedDecoder {
    AdmmDouble(DecoderConfig),
    AdmmFixed(DecoderConfig, FormatPlan),
    Bp(BpConfig),
}

impl PreparedDecoder {
    fn build(kind: &DecoderKind, max_iterations: usize) -> Result<Self> {
        let cfg = DecoderConfig { max_iterations, ..Default::default() };
        Ok(match kind {
            DecoderKind::AdmmDouble => PreparedDecoder::AdmmDouble(cfg),
            DecoderKind::Bp => {
                PreparedDecoder::Bp(BpConfig { max_iterations, llr_clamp: None })
            }
            DecoderKind::AdmmFixed { w_llr, w_msg, rounding, centered } => {
                let plan = FormatPlan::with_modes(*w_llr, *w_msg, *rounding, *centered)?;
                PreparedDecoder::AdmmFixed(cfg, plan)
            }
        })
    }

    fn run(&self, h: &ParityCheckMatrix, y: &[f64], ch: &ChannelConfig) -> Decoding {
        match self {
            PreparedDecoder::AdmmDouble(cfg) => {
                decode(h, &llr(y, ch), cfg).expect("inputs validated before the sweep")
            }
            PreparedDecoder::AdmmFixed(cfg, plan) => {
                let gq = plan.quantize_llrs(&llr_for_fixed(y, ch));
                decode_fixed(h, &gq, cfg, plan).expect("inputs validated before the sweep")
            }
            PreparedDecoder::Bp(cfg) => {
                bp_decode(h, &llr(y, ch), cfg).expect("inputs validated before the sweep")
            }
        }
    }
}

fn resolve_source(source: &CodewordSource, n: usize) -> Result<CodewordSource> {
    match source {
        CodewordSource::FixedFile(path) => {
            let text = std::fs::read_to_string(path)?;
            let bits: Vec<u8> = text
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| match c {
                    '0' => Ok(0u8),
                    '1' => Ok(1u8),
                    other => Err(Error::Config(format!(
                        "codeword file {}: unexpected character {other:?}",
                        path.display()
                    ))),
                })
                .collect::<Result<_>>()?;
            if bits.len() != n {
                return Err(Error::Dimension { expected: n, got: bits.len() });
            }
            Ok(CodewordSource::FixedBits(bits))
        }
        other => Ok(other.clone()),
    }
}

fn frame_codeword(
    source: &CodewordSource,
    h: &ParityCheckMatrix,
    seed: u64,
    frame: u64,
) -> Vec<u8> {
    match source {
        CodewordSource::AllZeros => vec![0; h.num_variables()],
        CodewordSource::FixedBits(bits) => bits.clone(),
        CodewordSource::RandomPerFrame => {
            let mut rng = frame_stream(seed, StreamKind::Source, frame);
            h.random_codeword_with(&mut rng).bits().to_vec()
        }
        CodewordSource::FixedFile(_) => unreachable!("resolved before the run"),
    }
}

/// Simulates one Eb/N0 point for every decoder in the spec, on shared noise.
///
/// Returns one point per decoder, in spec order. Deterministic given
/// (spec, ebn0, seed): frames use per-index RNG streams and the stop rule
/// advances in fixed-size batches.
pub fn run_point(
    h: &ParityCheckMatrix,
    spec: &SweepSpec,
    ebn0_db: f64,
) -> Result<Vec<FerPoint>> {
    spec.validate()?;
    let seed = spec.effective_seed();
    let ch = ChannelConfig::new(ebn0_db, h.rate(), spec.saturate)?;
    let decoders: Vec<PreparedDecoder> = spec
        .decoders
        .iter()
        .map(|k| PreparedDecoder::build(k, spec.max_iterations))
        .collect::<Result<_>>()?;
    if decoders.iter().any(|d| !matches!(d, PreparedDecoder::Bp(_))) {
        for j in 0..h.num_checks() {
            let deg = h.check_neighborhood(j).len();
            if deg < 2 {
                return Err(Error::CheckDegree(j, deg));
            }
        }
    }
    let source = resolve_source(&spec.codeword_source, h.num_variables())?;

    let start = Instant::now();
    let mut tallies: Vec<Tally> = vec![Tally::default(); decoders.len()];
    let mut next_frame: u64 = 0;
    while next_frame < spec.max_frames
        && tallies.iter().any(|t| t.frame_errors < spec.min_frame_errors)
    {
        let batch_end = (next_frame + FRAME_BATCH).min(spec.max_frames);
        let batch: Vec<Vec<FrameOutcome>> = (next_frame..batch_end)
            .into_par_iter()
            .map(|frame| {
                let bits = frame_codeword(&source, h, seed, frame);
                let mut noise_rng = frame_stream(seed, StreamKind::Noise, frame);
                let y = transmit(&bits, &ch, &mut noise_rng);
                decoders
                    .iter()
                    .map(|dec| {
                        let d = dec.run(h, &y, &ch);
                        let bit_errors = d
                            .hard
                            .iter()
                            .zip(&bits)
                            .filter(|(a, b)| a != b)
                            .count() as u64;
                        FrameOutcome {
                            error: bit_errors > 0,
                            bit_errors,
                            iterations: d.iterations_used as u64,
                            nonconverged: !d.converged,
                        }
                    })
                    .collect()
            })
            .collect();
        for outcomes in &batch {
            for (tally, outcome) in tallies.iter_mut().zip(outcomes) {
                tally.absorb(outcome);
            }
        }
        next_frame = batch_end;
    }

    let wallclock_s = start.elapsed().as_secs_f64();
    Ok(spec
        .decoders
        .iter()
        .zip(&tallies)
        .map(|(kind, t)| FerPoint {
            ebn0_db,
            decoder_id: kind.id(),
            frames: t.frames,
            frame_errors: t.frame_errors,
            bit_errors: t.bit_errors,
            nonconverged: t.nonconverged,
            mean_iterations: t.iterations as f64 / t.frames.max(1) as f64,
            fer: t.frame_errors as f64 / t.frames.max(1) as f64,
            seed,
            censored: t.frame_errors < spec.min_frame_errors,
            fixed_llr_scale: match kind {
                DecoderKind::AdmmFixed { .. } => Some(ch.fixed_input_scale()),
                _ => None,
            },
            wallclock_s,
        })
        .collect())
}

/// Runs every Eb/N0 point of the spec, ascending, against `h`.
pub fn run_sweep(h: &ParityCheckMatrix, spec: &SweepSpec) -> Result<SweepResult> {
    run_sweep_with_progress(h, spec, |_| {})
}

/// [`run_sweep`] with a callback invoked after each finished point.
pub fn run_sweep_with_progress(
    h: &ParityCheckMatrix,
    spec: &SweepSpec,
    mut on_point: impl FnMut(&FerPoint),
) -> Result<SweepResult> {
    spec.validate()?;
    let mut snrs = spec.ebn0_db.clone();
    snrs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut points = Vec::new();
    for ebn0 in snrs {
        for point in run_point(h, spec, ebn0)? {
            on_point(&point);
            points.push(point);
        }
    }
    Ok(SweepResult { spec: spec.clone(), points })
}
