//! Command-line front end: parity-polytope projection, single-frame
//! decoding, FER sweeps and code inspection.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 decoder emitted an
//! invalid codeword (non-convergence).

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use lpdec::channel::{frame_stream, llr, llr_for_fixed, transmit, ChannelConfig, StreamKind};
use lpdec::fer::{run_sweep_with_progress, SweepSpec};
use lpdec::fixed::Rounding;
use lpdec::{
    bp_decode, decode, decode_fixed, oracle_project_pp, project_pp, BpConfig, DecoderConfig,
    Decoding, FormatPlan, ParityCheckMatrix, QcStructure,
};
use rand::{Rng, SeedableRng};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "lpdec", version, about = "ADMM-LP decoding of binary linear codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Project vectors onto the parity polytope.
    Project(ProjectArgs),
    /// Decode one frame from an LLR file or a simulated channel.
    Decode(DecodeArgs),
    /// Run a frame-error-rate sweep from a spec JSON.
    Fer(FerArgs),
    /// Print structural information about a code file.
    Info(InfoArgs),
}

#[derive(Args)]
struct ProjectArgs {
    /// Projection dimension (at least 2).
    #[arg(long)]
    dim: usize,
    /// Comma-separated input vector of length `dim`.
    #[arg(long, conflicts_with = "random")]
    vector: Option<String>,
    /// Project this many random vectors drawn uniformly from [-1, 2]^dim.
    #[arg(long)]
    random: Option<usize>,
    /// Seed for --random.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also run the Dykstra oracle and print the L-infinity gap.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct DecodeArgs {
    /// Code file: .alist or QC .json.
    #[arg(long)]
    code: PathBuf,
    /// LLR file, one real per line.
    #[arg(long, conflicts_with = "channel")]
    llr: Option<PathBuf>,
    /// Simulate one frame at this Eb/N0 (dB) instead of reading LLRs.
    #[arg(long)]
    channel: Option<f64>,
    /// Seed for --channel (selects codeword and noise).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = DecoderChoice::Admm)]
    decoder: DecoderChoice,
    #[arg(long, default_value_t = 500)]
    max_iters: usize,
    /// LLR input width for --decoder admm-fixed.
    #[arg(long, default_value_t = 8)]
    w_llr: u32,
    /// Internal message width for --decoder admm-fixed.
    #[arg(long, default_value_t = 11)]
    w_msg: u32,
    /// Rounding mode for --decoder admm-fixed.
    #[arg(long, value_enum, default_value_t = RoundingChoice::Truncate)]
    rounding: RoundingChoice,
    /// Center estimates about zero (admm-fixed).
    #[arg(long)]
    centered: bool,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum DecoderChoice {
    Admm,
    AdmmFixed,
    Bp,
}

#[derive(Clone, Copy, ValueEnum)]
enum RoundingChoice {
    Truncate,
    NearestEven,
}

impl From<RoundingChoice> for Rounding {
    fn from(r: RoundingChoice) -> Self {
        match r {
            RoundingChoice::Truncate => Rounding::Truncate,
            RoundingChoice::NearestEven => Rounding::NearestEven,
        }
    }
}

#[derive(Args)]
struct FerArgs {
    /// Sweep spec JSON file.
    #[arg(long)]
    spec: PathBuf,
    /// Output directory for results JSON and CSV.
    #[arg(long, default_value = "results")]
    out: PathBuf,
    /// Worker threads (defaults to all cores).
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct InfoArgs {
    /// Code file: .alist or QC .json.
    #[arg(long)]
    code: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            _ => {
                eprint!("{e}");
                return ExitCode::from(1);
            }
        },
    };
    let outcome = match cli.command {
        Command::Project(args) => cmd_project(args),
        Command::Decode(args) => cmd_decode(args),
        Command::Fer(args) => cmd_fer(args),
        Command::Info(args) => cmd_info(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

type CmdResult = Result<ExitCode, Box<dyn std::error::Error>>;

fn cmd_project(args: ProjectArgs) -> CmdResult {
    if args.dim < 2 {
        return Err("--dim must be at least 2".into());
    }
    let vectors: Vec<Vec<f64>> = if let Some(text) = &args.vector {
        let v: Vec<f64> = text
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| format!("bad number {t:?}")))
            .collect::<Result<_, _>>()?;
        if v.len() != args.dim {
            return Err(format!("--vector has {} entries, --dim is {}", v.len(), args.dim).into());
        }
        vec![v]
    } else {
        let count = args.random.ok_or("provide --vector or --random")?;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
        (0..count)
            .map(|_| (0..args.dim).map(|_| rng.gen_range(-1.0..2.0)).collect())
            .collect()
    };

    for v in &vectors {
        let result = project_pp(v);
        let facet = lpdec::polytope::cut_search(v).0;
        println!("input      {}", fmt_vec(v));
        println!("projection {}", fmt_vec(&result.z));
        println!(
            "facet      [{}] (simplex path: {})",
            facet
                .flags()
                .iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect::<String>(),
            result.used_simplex
        );
        if args.oracle {
            let reference = oracle_project_pp(v, 20_000)?;
            let gap = result
                .z
                .iter()
                .zip(&reference)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            println!("oracle     {}", fmt_vec(&reference));
            println!("linf gap   {gap:.3e}");
        }
        println!();
    }
    Ok(ExitCode::SUCCESS)
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("({})", parts.join(", "))
}

fn load_code(path: &Path) -> Result<ParityCheckMatrix, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let matrix = if path.extension().is_some_and(|e| e == "json") {
        QcStructure::from_json(&text)?.expand()?
    } else {
        ParityCheckMatrix::from_alist(&text)?
    };
    Ok(matrix)
}

fn cmd_decode(args: DecodeArgs) -> CmdResult {
    let h = load_code(&args.code)?;
    let n = h.num_variables();

    // Raw inputs plus the transmitted word when simulating a channel frame.
    let (input, sent, channel_cfg): (Vec<f64>, Option<Vec<u8>>, Option<ChannelConfig>) =
        if let Some(path) = &args.llr {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let gamma: Vec<f64> = text
                .split_whitespace()
                .map(|t| t.parse::<f64>().map_err(|_| format!("bad LLR {t:?}")))
                .collect::<Result<_, _>>()?;
            if gamma.len() != n {
                return Err(
                    format!("LLR file has {} entries, code length is {n}", gamma.len()).into()
                );
            }
            (gamma, None, None)
        } else if let Some(ebn0) = args.channel {
            let cfg = ChannelConfig::new(ebn0, h.rate(), true)?;
            let cw = h.random_codeword_with(&mut frame_stream(args.seed, StreamKind::Source, 0));
            let y = transmit(cw.bits(), &cfg, &mut frame_stream(args.seed, StreamKind::Noise, 0));
            (y, Some(cw.bits().to_vec()), Some(cfg))
        } else {
            return Err("provide --llr FILE or --channel EBN0".into());
        };

    let cfg = DecoderConfig { max_iterations: args.max_iters, ..Default::default() };
    let decoding: Decoding = match args.decoder {
        DecoderChoice::Admm => {
            let g = match &channel_cfg {
                Some(ch) => llr(&input, ch),
                None => input.clone(),
            };
            decode(&h, &g, &cfg)?
        }
        DecoderChoice::Bp => {
            let g = match &channel_cfg {
                Some(ch) => llr(&input, ch),
                None => input.clone(),
            };
            bp_decode(&h, &g, &BpConfig { max_iterations: args.max_iters, llr_clamp: None })?
        }
        DecoderChoice::AdmmFixed => {
            let plan = FormatPlan::with_modes(
                args.w_llr,
                args.w_msg,
                args.rounding.into(),
                args.centered,
            )?;
            let scaled = match &channel_cfg {
                Some(ch) => llr_for_fixed(&input, ch),
                None => {
                    // File LLRs: scale so the largest magnitude maps to the top code.
                    let max = input.iter().fold(0.0f64, |m, g| m.max(g.abs())).max(1e-12);
                    input.iter().map(|g| g / max).collect()
                }
            };
            decode_fixed(&h, &plan.quantize_llrs(&scaled), &cfg, &plan)?
        }
    };

    let bits: String = decoding.hard.iter().map(|&b| char::from(b'0' + b)).collect();
    println!("hard       {bits}");
    println!("iterations {}", decoding.iterations_used);
    println!("converged  {}", decoding.converged);
    println!("integral   {}", decoding.integral);
    println!("ml_cert    {}", decoding.ml_certificate);
    let valid = h.syndrome_ok(&decoding.hard);
    println!("valid      {valid}");
    if let Some(sent) = sent {
        let errors = sent.iter().zip(&decoding.hard).filter(|(a, b)| a != b).count();
        println!("sent_weight {}", sent.iter().filter(|&&b| b == 1).count());
        println!("bit_errors {errors}");
    }
    Ok(if valid { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn cmd_fer(args: FerArgs) -> CmdResult {
    let text = std::fs::read_to_string(&args.spec)
        .map_err(|e| format!("cannot read {}: {e}", args.spec.display()))?;
    let spec = SweepSpec::from_json(&text)?;
    let code_path = resolve_code_path(&args.spec, &spec.code);
    let h = load_code(&code_path)?;

    let run = || {
        run_sweep_with_progress(&h, &spec, |p| {
            println!(
                "ebn0 {:>5.2} dB  {:<24} frames {:>9}  errors {:>6}  fer {:.3e}  mean_iters {:>7.2}{}",
                p.ebn0_db,
                p.decoder_id,
                p.frames,
                p.frame_errors,
                p.fer,
                p.mean_iterations,
                if p.censored { "  [censored]" } else { "" }
            );
        })
    };
    let result = match args.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| format!("thread pool: {e}"))?
            .install(run),
        None => run(),
    }?;

    let stem = args
        .spec
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("sweep")
        .to_string();
    match result.write(&args.out, &stem)? {
        Some((json_path, csv_path)) => {
            println!("wrote {}", json_path.display());
            println!("wrote {}", csv_path.display());
        }
        None => println!("no points simulated; nothing written"),
    }
    Ok(ExitCode::SUCCESS)
}

/// Spec `code` paths that are relative resolve against the working
/// directory first, then against the spec file's directory.
fn resolve_code_path(spec_path: &Path, code: &str) -> PathBuf {
    let direct = PathBuf::from(code);
    if direct.is_absolute() || direct.exists() {
        return direct;
    }
    match spec_path.parent() {
        Some(dir) => dir.join(code),
        None => direct,
    }
}

fn cmd_info(args: InfoArgs) -> CmdResult {
    let h = load_code(&args.code)?;
    println!("file        {}", args.code.display());
    println!("checks (m)  {}", h.num_checks());
    println!("variables   {}", h.num_variables());
    println!("rank        {}", h.rank());
    println!("dimension   {}", h.dimension());
    println!("rate        {:.6}", h.rate());
    println!("edges       {}", h.edge_count());
    let degree_set = |degs: Vec<usize>| {
        let mut d = degs;
        d.sort_unstable();
        d.dedup();
        d
    };
    let check_degs =
        degree_set((0..h.num_checks()).map(|j| h.check_neighborhood(j).len()).collect());
    let var_degs =
        degree_set((0..h.num_variables()).map(|i| h.variable_neighborhood(i).len()).collect());
    println!("check degrees    {check_degs:?}");
    println!("variable degrees {var_degs:?}");
    if args.code.extension().is_some_and(|e| e == "json") {
        let qc = QcStructure::from_json(&std::fs::read_to_string(&args.code)?)?;
        println!(
            "quasi-cyclic     p = {}, {} x {} proto-matrix",
            qc.p(),
            qc.proto_rows(),
            qc.proto_cols()
        );
    }
    Ok(ExitCode::SUCCESS)
}
