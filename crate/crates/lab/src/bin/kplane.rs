//! Command-line surface: exact exponent derivations, grid transforms, and
//! the verification experiments, all emitting replayable machine-readable
//! reports.
//!
//! Exit codes: 0 success (all budgets pass), 1 usage/config error or failed
//! budget, 2 mathematical precondition violation (the violated hypothesis is
//! named on stderr).

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use kplane_core::rat::{parse_rat, to_fraction_string, Rat};
use kplane_core::{
    closed_form, derive_pipeline, dimension, hausdorff_bound, interp_step, kcrit, l2_step,
    q_restrict, xray_step, BoundSpec, DimSeed, EngineError, KcritKind, PipelineName,
};
use kplane_lab::experiments::{
    graproduct_check, highpass_decay_experiment, holder_experiment,
    lp_maximal_decomposition_check, necessity_sweep, plancherel_experiment, GraProductConfig,
    HighpassConfig, HolderConfig, IndicatorFamily, LpCheckConfig, NecessitySweepConfig,
    PlancherelConfig,
};
use kplane_lab::budgets;
use kplane_lab::gridfile::{read_gridfunction, write_gridfunction};
use kplane_lab::grid::{ball_indicator, GridFunction, DEFAULT_HALF_WIDTH};
use kplane_lab::plates::{plate_indicator, PlateSpec};
use kplane_lab::report::{fmt_f64, fmt_root, trace_table, Report, Table};
use kplane_lab::spectral::{lp_band, sobolev_norm};
use kplane_lab::testfn;
use kplane_lab::xray::xray;
use kplane_lab::{Frame, HemisphereChart, LabError};

#[derive(Parser)]
#[command(name = "kplane", version, about = "k-plane maximal operator calculus and numerics")]
struct Cli {
    /// Worker thread cap (default: KPLANE_THREADS env var, then all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Exact exponent calculus.
    Exponents {
        #[command(subcommand)]
        sub: ExponentsCmd,
    },
    /// Numerical verification experiments with frozen budgets.
    Verify {
        #[command(subcommand)]
        sub: VerifyCmd,
    },
    /// Grid-function file operations.
    Transform {
        #[command(subcommand)]
        sub: TransformCmd,
    },
    /// Necessity sweeps: δ-exponent fits for indicator families.
    Scaling(ScalingArgs),
    /// Haar-sample a Grassmannian frame and print it at full precision.
    SampleFrame(SampleFrameArgs),
    /// Re-run a command from an emitted report; output is byte-identical.
    Replay { file: PathBuf },
}

#[derive(Args, Serialize, Deserialize, Clone)]
struct SampleFrameArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum ExponentsCmd {
    /// Run a named derivation pipeline and print its trace.
    Pipeline(PipelineArgs),
    /// Critical plane dimension root.
    Kcrit(KcritArgs),
    /// Hausdorff dimension lower bound for (d,k) sets.
    Dim(DimArgs),
    /// Apply a single recursion rule to a given bound.
    Step(StepArgs),
}

#[derive(Args, Serialize, Deserialize, Clone)]
struct PipelineArgs {
    /// sharpp | nonl2 | l2 | nak | dimkt | dimwolff
    #[arg(long)]
    name: String,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    j: Option<u32>,
}

#[derive(Args, Serialize, Deserialize, Clone)]
struct KcritArgs {
    #[arg(long)]
    d: u32,
    /// bourgain | katztao
    #[arg(long, default_value = "katztao")]
    seed: String,
}

#[derive(Args, Serialize, Deserialize, Clone)]
struct DimArgs {
    #[arg(long)]
    d: u32,
    #[arg(long)]
    k: u32,
    /// katztao | wolff
    #[arg(long, default_value = "katztao")]
    seed: String,
}

#[derive(Args, Serialize, Deserialize, Clone)]
struct StepArgs {
    /// xray | interp | l2 | qrestrict
    #[arg(long)]
    rule: String,
    /// plate | plane
    #[arg(long, default_value = "plate")]
    operator: String,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    k: u32,
    /// Rationals as "num/den" or integers.
    #[arg(long)]
    p: String,
    #[arg(long)]
    q: String,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long, default_value_t = false)]
    eps: bool,
    /// Target q for qrestrict.
    #[arg(long)]
    q_new: Option<String>,
}

#[derive(Subcommand)]
enum VerifyCmd {
    Plancherel(PlancherelArgs),
    Highpass(HighpassArgs),
    Lpcheck(LpcheckArgs),
    Holder(HolderArgs),
    Graproduct(GraproductArgs),
}

#[derive(Args, Clone)]
struct PlancherelArgs {
    #[arg(long, default_value_t = 3)]
    d: usize,
    #[arg(long, default_value_t = 64)]
    n: usize,
    #[arg(long, default_value_t = 8)]
    functions: usize,
    #[arg(long, default_value_t = 256)]
    directions: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Clone)]
struct HighpassArgs {
    #[arg(long, default_value_t = 3)]
    d: usize,
    #[arg(long, default_value_t = 128)]
    n: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [2.0, 4.0, 8.0, 16.0])]
    radii: Vec<f64>,
    #[arg(long, default_value_t = 2)]
    functions: usize,
    #[arg(long, default_value_t = 48)]
    directions: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Clone)]
struct LpcheckArgs {
    #[arg(long, default_value_t = 3)]
    d: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 128)]
    n: usize,
    #[arg(long, default_value_t = 0.03125)]
    delta: f64,
    #[arg(long, default_value_t = 20)]
    functions: usize,
    #[arg(long, default_value_t = 32)]
    directions: usize,
    #[arg(long, default_value_t = 1024)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Clone)]
struct HolderArgs {
    #[arg(long, default_value_t = 3)]
    d: usize,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 2.0)]
    r: f64,
    #[arg(long, default_value_t = 0.15)]
    delta: f64,
    #[arg(long, default_value_t = 500)]
    functions: usize,
    #[arg(long, default_value_t = 2)]
    trials: usize,
    #[arg(long, default_value_t = 64)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Clone)]
struct GraproductArgs {
    #[arg(long, default_value_t = 4)]
    d: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum TransformCmd {
    /// Write a synthetic grid function.
    Synth(SynthArgs),
    /// X-ray transform of a grid file along a direction.
    Xray(XrayArgs),
    /// One Littlewood–Paley band of a grid file.
    Lpband(LpbandArgs),
    /// Homogeneous Sobolev norm of a grid file.
    Sobolev(SobolevArgs),
    /// Echo a grid file's header.
    Info(InfoArgs),
}

#[derive(Args, Serialize, Deserialize, Clone)]
struct SynthArgs {
    /// ball | plate | bump | noise
    #[arg(long)]
    kind: String,
    #[arg(long, default_value_t = 3)]
    d: usize,
    #[arg(long, default_value_t = 64)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    radius: f64,
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out_file: PathBuf,
}

#[derive(Args, Serialize, Deserialize, Clone)]
struct XrayArgs {
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated direction components; normalized internally.
    #[arg(long, value_delimiter = ',')]
    direction: Vec<f64>,
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    out_file: PathBuf,
}

#[derive(Args, Serialize, Deserialize, Clone)]
struct LpbandArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    band: u32,
    #[arg(long)]
    out_file: PathBuf,
}

#[derive(Args, Serialize, Deserialize, Clone)]
struct SobolevArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = -0.5, allow_hyphen_values = true)]
    s: f64,
}

#[derive(Args, Serialize, Deserialize, Clone)]
struct InfoArgs {
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args, Clone)]
struct ScalingArgs {
    /// ball | plate
    #[arg(long)]
    family: String,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value = "2")]
    p: String,
    #[arg(long, default_value = "2")]
    q: String,
    #[arg(long, value_delimiter = ',')]
    deltas: Vec<f64>,
    #[arg(long, default_value_t = 512)]
    resolution: usize,
    #[arg(long, default_value_t = budgets::DEFAULT_FRAMES)]
    frames: usize,
    #[arg(long, default_value_t = budgets::DEFAULT_PLATE_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap's own exit code conventions differ; usage problems are 1
            // here (help/version requests stay 0).
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help { 0 } else { 1 };
        }
    };
    if let Some(n) = cli
        .threads
        .or_else(|| std::env::var("KPLANE_THREADS").ok().and_then(|s| s.parse().ok()))
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let outcome = dispatch(&cli.command);
    match outcome {
        Ok(report) => {
            let rendered = match cli.format {
                OutputFormat::Json => report.to_json(),
                OutputFormat::Csv => report.to_csv(),
            };
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, rendered) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 1;
                }
            } else {
                print!("{rendered}");
            }
            for check in &report.checks {
                eprintln!(
                    "{}: {} (budget {}) ... {}",
                    check.name,
                    check.value,
                    check.budget,
                    if check.pass { "pass" } else { "FAIL" }
                );
            }
            if report.all_pass() {
                0
            } else {
                1
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                LabError::Engine(EngineError::RuleInapplicable { .. }) => 2,
                _ => 1,
            }
        }
    }
}

fn dispatch(cmd: &Command) -> Result<Report, LabError> {
    match cmd {
        Command::Exponents { sub } => match sub {
            ExponentsCmd::Pipeline(args) => run_pipeline(args),
            ExponentsCmd::Kcrit(args) => run_kcrit(args),
            ExponentsCmd::Dim(args) => run_dim(args),
            ExponentsCmd::Step(args) => run_step(args),
        },
        Command::Verify { sub } => match sub {
            VerifyCmd::Plancherel(a) => run_plancherel(&PlancherelConfig {
                d: a.d,
                resolution: a.n,
                n_functions: a.functions,
                n_directions: a.directions,
                seed: a.seed,
            }),
            VerifyCmd::Highpass(a) => run_highpass(&HighpassConfig {
                d: a.d,
                resolution: a.n,
                radii: a.radii.clone(),
                n_functions: a.functions,
                n_directions: a.directions,
                seed: a.seed,
            }),
            VerifyCmd::Lpcheck(a) => run_lpcheck(&LpCheckConfig {
                d: a.d,
                k: a.k,
                delta: a.delta,
                resolution: a.n,
                n_functions: a.functions,
                n_directions: a.directions,
                samples: a.samples,
                seed: a.seed,
            }),
            VerifyCmd::Holder(a) => run_holder(&HolderConfig {
                d: a.d,
                k: a.k,
                r: a.r,
                delta: a.delta,
                n_functions: a.functions,
                trials_per_function: a.trials,
                resolution: a.n,
                seed: a.seed,
            }),
            VerifyCmd::Graproduct(a) => run_graproduct(&GraProductConfig {
                d: a.d,
                k: a.k,
                samples: a.samples,
                seed: a.seed,
            }),
        },
        Command::Transform { sub } => match sub {
            TransformCmd::Synth(a) => run_synth(a),
            TransformCmd::Xray(a) => run_xray(a),
            TransformCmd::Lpband(a) => run_lpband(a),
            TransformCmd::Sobolev(a) => run_sobolev(a),
            TransformCmd::Info(a) => run_info(a),
        },
        Command::Scaling(a) => {
            let family = match a.family.as_str() {
                "ball" => IndicatorFamily::SmallBall,
                "plate" => IndicatorFamily::Plate,
                other => {
                    return Err(LabError::domain(format!(
                        "unknown family {other:?} (expected ball or plate)"
                    )))
                }
            };
            run_scaling(&NecessitySweepConfig {
                family,
                d: a.d,
                k: a.k,
                p: a.p.clone(),
                q: a.q.clone(),
                deltas: a.deltas.clone(),
                resolution: a.resolution,
                frames: a.frames,
                samples: a.samples,
                seed: a.seed,
            })
        }
        Command::SampleFrame(a) => run_sample_frame(a),
        Command::Replay { file } => run_replay(file),
    }
}

fn run_sample_frame(args: &SampleFrameArgs) -> Result<Report, LabError> {
    let frame = kplane_lab::grassmann::haar_sample(args.d, args.k, args.seed)?;
    let mut report = Report::new("sample-frame", config_value(args));
    report.push_table(kplane_lab::report::frame_table(&frame));
    Ok(report)
}

fn config_value<T: Serialize>(cfg: &T) -> Value {
    serde_json::to_value(cfg).expect("config serializes")
}

// ---------------------------------------------------------------------------
// exponents
// ---------------------------------------------------------------------------

fn parse_pipeline_name(s: &str) -> Result<PipelineName, LabError> {
    PipelineName::from_name(s).ok_or_else(|| {
        LabError::domain(format!(
            "unknown pipeline {s:?} (expected sharpp|nonl2|l2|nak|dimkt|dimwolff)"
        ))
    })
}

fn run_pipeline(args: &PipelineArgs) -> Result<Report, LabError> {
    let name = parse_pipeline_name(&args.name)?;
    let trace = derive_pipeline(name, args.d, args.k, args.j)?;
    trace.validate()?;
    let mut report = Report::new("exponents pipeline", config_value(args));
    report.push_table(trace_table(&trace));
    if let Some(cf) = closed_form(name, args.d, args.k, args.j) {
        let fin = trace.final_bound().expect("nonempty trace");
        let matches = cf.matches(fin);
        report.push_check(
            "closed_form_match",
            if matches { "exact" } else { "mismatch" }.to_string(),
            format!(
                "p={} q={} alpha={}",
                to_fraction_string(&cf.p),
                cf.q,
                cf.alpha.as_ref().map(to_fraction_string).unwrap_or_else(|| "-".into())
            ),
            matches,
        );
    }
    Ok(report)
}

fn parse_kcrit_kind(s: &str) -> Result<KcritKind, LabError> {
    match s {
        "bourgain" => Ok(KcritKind::Bourgain),
        "katztao" => Ok(KcritKind::KatzTao),
        other => Err(LabError::domain(format!(
            "unknown kcrit relation {other:?} (expected bourgain or katztao)"
        ))),
    }
}

fn run_kcrit(args: &KcritArgs) -> Result<Report, LabError> {
    let kind = parse_kcrit_kind(&args.seed)?;
    let root = kcrit(args.d, kind)?;
    let mut report = Report::new("exponents kcrit", config_value(args));
    report.push_table(Table {
        name: "kcrit".into(),
        columns: vec!["d".into(), "relation".into(), "kcrit".into()],
        rows: vec![vec![args.d.to_string(), args.seed.clone(), fmt_root(root)]],
    });
    Ok(report)
}

fn parse_dim_seed(s: &str) -> Result<DimSeed, LabError> {
    match s {
        "katztao" => Ok(DimSeed::KatzTao),
        "wolff" => Ok(DimSeed::Wolff),
        other => Err(LabError::domain(format!(
            "unknown seed family {other:?} (expected katztao or wolff)"
        ))),
    }
}

fn run_dim(args: &DimArgs) -> Result<Report, LabError> {
    let seed = parse_dim_seed(&args.seed)?;
    let value = hausdorff_bound(args.d, args.k, seed)?;
    let (l2_arm, interp_arm) = dimension::dimension_arms(args.d, args.k, seed)?;
    let via_chains = dimension::hausdorff_bound_via_pipelines(args.d, args.k, seed)?;
    let name = if seed == DimSeed::KatzTao {
        PipelineName::DimKatzTao
    } else {
        PipelineName::DimWolff
    };
    let trace = derive_pipeline(name, args.d, args.k, None)?;
    let mut report = Report::new("exponents dim", config_value(args));
    report.push_table(Table {
        name: "dimension".into(),
        columns: vec![
            "d".into(),
            "k".into(),
            "seed".into(),
            "l2_arm".into(),
            "interp_arm".into(),
            "bound".into(),
        ],
        rows: vec![vec![
            args.d.to_string(),
            args.k.to_string(),
            args.seed.clone(),
            to_fraction_string(&l2_arm),
            to_fraction_string(&interp_arm),
            to_fraction_string(&value),
        ]],
    });
    report.push_table(trace_table(&trace));
    report.push_check(
        "formula_vs_chains",
        to_fraction_string(&via_chains),
        to_fraction_string(&value),
        via_chains == value,
    );
    Ok(report)
}

fn parse_rat_arg(s: &str, what: &str) -> Result<Rat, LabError> {
    parse_rat(s).ok_or_else(|| LabError::domain(format!("cannot parse {what} = {s:?} as num/den")))
}

fn run_step(args: &StepArgs) -> Result<Report, LabError> {
    let p = parse_rat_arg(&args.p, "p")?;
    let q = parse_rat_arg(&args.q, "q")?;
    let input = match args.operator.as_str() {
        "plate" => {
            let alpha = match &args.alpha {
                Some(a) => parse_rat_arg(a, "alpha")?,
                None => return Err(LabError::domain("plate bounds need --alpha")),
            };
            BoundSpec::plate(args.d, args.k, p, q, alpha, args.eps)?
        }
        "plane" => BoundSpec::plane(args.d, args.k, p, q, args.eps)?,
        other => {
            return Err(LabError::domain(format!(
                "unknown operator {other:?} (expected plate or plane)"
            )))
        }
    };
    let output = match args.rule.as_str() {
        "xray" => xray_step(&input)?,
        "interp" => interp_step(&input)?,
        "l2" => l2_step(&input)?,
        "qrestrict" => {
            let q_new = match &args.q_new {
                Some(s) => parse_rat_arg(s, "q_new")?,
                None => return Err(LabError::domain("qrestrict needs --q-new")),
            };
            q_restrict(&input, q_new)?
        }
        other => {
            return Err(LabError::domain(format!(
                "unknown rule {other:?} (expected xray|interp|l2|qrestrict)"
            )))
        }
    };
    let mut report = Report::new("exponents step", config_value(args));
    report.push_table(Table {
        name: "step".into(),
        columns: vec!["which".into(), "bound".into()],
        rows: vec![
            vec!["input".into(), input.summary()],
            vec!["output".into(), output.summary()],
        ],
    });
    Ok(report)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn run_plancherel(cfg: &PlancherelConfig) -> Result<Report, LabError> {
    let out = plancherel_experiment(cfg)?;
    let mut report = Report::new("verify plancherel", config_value(cfg));
    report.push_table(Table {
        name: "ratios".into(),
        columns: vec!["function".into(), "ratio".into()],
        rows: out
            .ratios
            .iter()
            .enumerate()
            .map(|(i, r)| vec![i.to_string(), fmt_f64(*r)])
            .collect(),
    });
    report.push_check(
        "relative_spread",
        fmt_f64(out.rel_spread),
        format!("<= {}", out.budget),
        out.rel_spread <= out.budget,
    );
    Ok(report)
}

fn run_highpass(cfg: &HighpassConfig) -> Result<Report, LabError> {
    let out = highpass_decay_experiment(cfg)?;
    let mut report = Report::new("verify highpass", config_value(cfg));
    report.push_table(Table {
        name: "decay".into(),
        columns: vec!["radius".into(), "ratio".into()],
        rows: out
            .points
            .iter()
            .map(|(r, v)| vec![fmt_f64(*r), fmt_f64(*v)])
            .collect(),
    });
    report.push_check(
        "slope",
        fmt_f64(out.slope),
        format!("in [{}, {}]", out.slope_min, out.slope_max),
        out.slope >= out.slope_min && out.slope <= out.slope_max,
    );
    report.push_check(
        "loglog_residual",
        fmt_f64(out.residual),
        format!("< {}", budgets::LOGLOG_RESIDUAL),
        out.residual < budgets::LOGLOG_RESIDUAL,
    );
    Ok(report)
}

fn run_lpcheck(cfg: &LpCheckConfig) -> Result<Report, LabError> {
    let out = lp_maximal_decomposition_check(cfg)?;
    let mut report = Report::new("verify lpcheck", config_value(cfg));
    report.push_table(Table {
        name: "band_decay".into(),
        columns: vec!["band_frequency".into(), "l2_ratio".into()],
        rows: out
            .band_points
            .iter()
            .map(|(x, y)| vec![fmt_f64(*x), fmt_f64(*y)])
            .collect(),
    });
    report.push_table(Table {
        name: "scale_comparison".into(),
        columns: vec!["band".into(), "ratio_delta_vs_coarse".into()],
        rows: out
            .scale_ratios
            .iter()
            .map(|(j, r)| vec![j.to_string(), fmt_f64(*r)])
            .collect(),
    });
    report.push_check(
        "split_constant",
        fmt_f64(out.max_split_constant),
        format!("<= {}", out.split_budget),
        out.max_split_constant <= out.split_budget,
    );
    report.push_check(
        "scale_ratio",
        fmt_f64(out.max_scale_ratio),
        format!("<= {}", out.scale_budget),
        out.max_scale_ratio <= out.scale_budget,
    );
    if out.band_points.len() >= 3 {
        report.push_check(
            "band_slope",
            fmt_f64(out.band_slope),
            format!("-1/2 +- {}", budgets::BAND_SLOPE_TOL),
            (out.band_slope + 0.5).abs() <= budgets::BAND_SLOPE_TOL,
        );
    }
    Ok(report)
}

fn run_holder(cfg: &HolderConfig) -> Result<Report, LabError> {
    let out = holder_experiment(cfg)?;
    let mut report = Report::new("verify holder", config_value(cfg));
    report.push_table(Table {
        name: "holder".into(),
        columns: vec!["n_ratios".into(), "mean_ratio".into(), "max_ratio".into()],
        rows: vec![vec![
            out.n_ratios.to_string(),
            fmt_f64(out.mean_ratio),
            fmt_f64(out.max_ratio),
        ]],
    });
    report.push_check(
        "max_ratio",
        fmt_f64(out.max_ratio),
        format!("<= {}", out.cap),
        out.max_ratio <= out.cap,
    );
    Ok(report)
}

fn run_graproduct(cfg: &GraProductConfig) -> Result<Report, LabError> {
    let out = graproduct_check(cfg)?;
    let mut report = Report::new("verify graproduct", config_value(cfg));
    report.push_table(Table {
        name: "moments".into(),
        columns: vec![
            "statistic".into(),
            "haar_mean".into(),
            "lift_mean".into(),
            "diff_in_se".into(),
        ],
        rows: out
            .comparisons
            .iter()
            .map(|c| {
                vec![
                    c.statistic.clone(),
                    fmt_f64(c.haar_mean),
                    fmt_f64(c.lift_mean),
                    fmt_f64(c.diff_in_se),
                ]
            })
            .collect(),
    });
    for c in &out.comparisons {
        report.push_check(
            format!("moment[{}]", c.statistic),
            fmt_f64(c.diff_in_se),
            format!("<= {} SE", out.se_budget),
            c.diff_in_se <= out.se_budget,
        );
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// transform / scaling / replay
// ---------------------------------------------------------------------------

fn run_synth(args: &SynthArgs) -> Result<Report, LabError> {
    let f = match args.kind.as_str() {
        "ball" => ball_indicator(
            args.d,
            args.n,
            DEFAULT_HALF_WIDTH,
            &vec![0.0; args.d],
            args.radius,
        ),
        "plate" => {
            let plate = PlateSpec::new(
                Frame::axis_aligned(args.d, args.k),
                vec![0.0; args.d],
                args.delta,
            )?;
            plate_indicator(&plate, args.n, DEFAULT_HALF_WIDTH)
        }
        "bump" => testfn::bump(args.d, args.n, DEFAULT_HALF_WIDTH, args.radius),
        "noise" => testfn::random_smooth_in_ball(
            args.d,
            args.n,
            DEFAULT_HALF_WIDTH,
            6.0,
            0.95,
            args.seed,
        ),
        other => {
            return Err(LabError::domain(format!(
                "unknown synth kind {other:?} (expected ball|plate|bump|noise)"
            )))
        }
    };
    write_gridfunction(&args.out_file, &f)?;
    let mut report = Report::new("transform synth", config_value(args));
    report.push_table(grid_info_table(&f, &args.out_file));
    Ok(report)
}

fn grid_info_table(f: &GridFunction, path: &Path) -> Table {
    Table {
        name: "grid".into(),
        columns: vec![
            "file".into(),
            "d".into(),
            "shape".into(),
            "h".into(),
            "l2_norm".into(),
        ],
        rows: vec![vec![
            path.display().to_string(),
            f.d().to_string(),
            format!("{:?}", f.shape()),
            fmt_f64(f.h()),
            fmt_f64(f.norm_l2()),
        ]],
    }
}

fn run_xray(args: &XrayArgs) -> Result<Report, LabError> {
    let f = read_gridfunction(&args.input)?;
    if args.direction.len() != f.d() {
        return Err(LabError::domain(format!(
            "direction has {} components but the grid is {}-dimensional",
            args.direction.len(),
            f.d()
        )));
    }
    let norm = args.direction.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(LabError::domain("direction must be nonzero"));
    }
    let xi: Vec<f64> = args.direction.iter().map(|x| x / norm).collect();
    let chart = HemisphereChart;
    let g = xray(&f, &xi, &chart, args.step.unwrap_or(f.h()))?;
    write_gridfunction(&args.out_file, &g)?;
    let mut report = Report::new("transform xray", config_value(args));
    report.push_table(grid_info_table(&g, &args.out_file));
    Ok(report)
}

fn run_lpband(args: &LpbandArgs) -> Result<Report, LabError> {
    let f = read_gridfunction(&args.input)?;
    let g = lp_band(&f, args.band);
    write_gridfunction(&args.out_file, &g)?;
    let mut report = Report::new("transform lpband", config_value(args));
    report.push_table(grid_info_table(&g, &args.out_file));
    Ok(report)
}

fn run_sobolev(args: &SobolevArgs) -> Result<Report, LabError> {
    let f = read_gridfunction(&args.input)?;
    let norm = sobolev_norm(&f, args.s)?;
    let mut report = Report::new("transform sobolev", config_value(args));
    report.push_table(Table {
        name: "sobolev".into(),
        columns: vec!["s".into(), "norm".into()],
        rows: vec![vec![fmt_f64(args.s), fmt_f64(norm)]],
    });
    Ok(report)
}

fn run_info(args: &InfoArgs) -> Result<Report, LabError> {
    let f = read_gridfunction(&args.input)?;
    let mut report = Report::new("transform info", config_value(args));
    report.push_table(grid_info_table(&f, &args.input));
    Ok(report)
}

fn run_scaling(cfg: &NecessitySweepConfig) -> Result<Report, LabError> {
    let out = necessity_sweep(cfg)?;
    let mut report = Report::new("scaling", config_value(cfg));
    report.push_table(Table {
        name: "sweep".into(),
        columns: vec![
            "delta".into(),
            "op_norm".into(),
            "f_norm".into(),
            "ratio".into(),
            "matching_frame".into(),
        ],
        rows: out
            .rows
            .iter()
            .map(|r| {
                vec![
                    fmt_f64(r.delta),
                    fmt_f64(r.op_norm),
                    fmt_f64(r.f_norm),
                    fmt_f64(r.ratio),
                    r.matching_frame_value
                        .map(fmt_f64)
                        .unwrap_or_else(|| "-".into()),
                ]
            })
            .collect(),
    });
    report.push_table(Table {
        name: "fit".into(),
        columns: vec!["parameter".into(), "slope".into(), "residual".into()],
        rows: vec![vec![
            out.sweep.parameter.clone(),
            fmt_f64(out.sweep.slope),
            fmt_f64(out.sweep.residual),
        ]],
    });
    if cfg.family == IndicatorFamily::Plate {
        let worst = out
            .rows
            .iter()
            .filter_map(|r| r.matching_frame_value)
            .fold(f64::INFINITY, f64::min);
        report.push_check(
            "plate_self_value",
            fmt_f64(worst),
            format!(">= {}", budgets::PLATE_SELF_MIN),
            worst >= budgets::PLATE_SELF_MIN,
        );
    }
    Ok(report)
}

fn run_replay(file: &Path) -> Result<Report, LabError> {
    let text = std::fs::read_to_string(file)?;
    let doc: Value = serde_json::from_str(&text)
        .map_err(|e| LabError::format(format!("replay file: {e}")))?;
    let command = doc
        .get("command")
        .and_then(|c| c.as_str())
        .ok_or_else(|| LabError::format("replay file: missing command"))?
        .to_string();
    let config = doc
        .get("config")
        .cloned()
        .ok_or_else(|| LabError::format("replay file: missing config"))?;
    fn cfg<T: for<'de> Deserialize<'de>>(v: Value) -> Result<T, LabError> {
        serde_json::from_value(v).map_err(|e| LabError::format(format!("replay config: {e}")))
    }
    match command.as_str() {
        "exponents pipeline" => run_pipeline(&cfg(config)?),
        "exponents kcrit" => run_kcrit(&cfg(config)?),
        "exponents dim" => run_dim(&cfg(config)?),
        "exponents step" => run_step(&cfg(config)?),
        "verify plancherel" => run_plancherel(&cfg(config)?),
        "verify highpass" => run_highpass(&cfg(config)?),
        "verify lpcheck" => run_lpcheck(&cfg(config)?),
        "verify holder" => run_holder(&cfg(config)?),
        "verify graproduct" => run_graproduct(&cfg(config)?),
        "transform synth" => run_synth(&cfg(config)?),
        "transform xray" => run_xray(&cfg(config)?),
        "transform lpband" => run_lpband(&cfg(config)?),
        "transform sobolev" => run_sobolev(&cfg(config)?),
        "transform info" => run_info(&cfg(config)?),
        "sample-frame" => run_sample_frame(&cfg(config)?),
        "scaling" => run_scaling(&cfg(config)?),
        other => Err(LabError::format(format!("replay: unknown command {other:?}"))),
    }
}
