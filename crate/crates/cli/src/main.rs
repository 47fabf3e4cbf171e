//! Command-line driver: circuit verification, gate-by-gate traces, cost
//! reports, Monte Carlo noise sweeps and the direction-transmission table.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 invalid
//! arguments, 3 resource guard tripped, 4 I/O failure.

use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng as _;
use symcomp::analysis::{self, SweepConfig};
use symcomp::circuit;
use symcomp::noise::{AxisPolicy, BlochAxis, Metric};
use symcomp::statevec::MAX_QUBITS;
use symcomp::trace::trace_compression;
use symcomp::verify::verify_range;

/// Largest register the CLI simulates without `--allow-large`. A 16-qubit
/// state keeps every command fast on one core; `--allow-large` raises the
/// ceiling to the library maximum.
const SIZE_GUARD: usize = 16;

#[derive(Parser)]
#[command(
    name = "symcomp",
    version,
    about = "Compress identically prepared qubits into a log-sized register"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check synthesized circuits against their defining properties
    Verify(VerifyArgs),
    /// Print the state after each compression gate for one basis input
    Trace(TraceArgs),
    /// Show gate totals and CNOT cost bounds for one circuit size
    Gatecount(GatecountArgs),
    /// Monte Carlo fidelity sweeps under rotation noise (CSV)
    #[command(subcommand)]
    Noise(NoiseCommand),
    /// Compare strategies for sending a spatial direction with n qubits
    Directions,
    /// Write a circuit's gate list in the text exchange format
    Export(ExportArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Check every circuit size from 1 up to this many qubits
    #[arg(long, default_value_t = 7)]
    n_max: usize,
    /// Seed for the random round-trip states (generated when omitted)
    #[arg(long)]
    seed: Option<u64>,
    /// Emit the report as JSON instead of text
    #[arg(long)]
    json: bool,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Raise the size guard to the library maximum
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args)]
struct TraceArgs {
    /// Number of qubits (at most 10; traces are meant to be read)
    n: usize,
    /// Excitation count of the input state
    k: usize,
    /// Write the trace here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GatecountArgs {
    /// Number of qubits
    n: usize,
}

#[derive(Subcommand)]
enum NoiseCommand {
    /// Full-state fidelity across ensemble sizes, stored plain vs compressed
    Global(GlobalArgs),
    /// Recovered single-qubit fidelity for one ensemble size
    Single(SingleArgs),
}

#[derive(Args)]
struct GlobalArgs {
    /// Ensemble sizes: a single count or an inclusive range like 3..15
    #[arg(long, default_value = "3..15")]
    n: String,
    /// Rotation angle in radians
    #[arg(long, default_value_t = 0.1)]
    phi: f64,
    /// Monte Carlo samples per (size, scenario) cell
    #[arg(long, default_value_t = 2000)]
    samples: usize,
    /// RNG seed (generated when omitted)
    #[arg(long)]
    seed: Option<u64>,
    /// Rotation axis: x, y, z, or averaged (fresh random axis per sample)
    #[arg(long, value_enum, default_value_t = Axis::Averaged)]
    axis: Axis,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Raise the size guard to the library maximum
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args)]
struct SingleArgs {
    /// Ensemble size
    #[arg(long, default_value_t = 7)]
    n: usize,
    /// Rotation angles in radians, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = [0.05, 0.1, 0.2])]
    phi: Vec<f64>,
    /// Rotation axes to sweep, comma separated
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_values_t = [Axis::X, Axis::Y, Axis::Z, Axis::Averaged]
    )]
    axes: Vec<Axis>,
    /// Monte Carlo samples per (angle, axis, scenario) cell
    #[arg(long, default_value_t = 2000)]
    samples: usize,
    /// RNG seed (generated when omitted)
    #[arg(long)]
    seed: Option<u64>,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Raise the size guard to the library maximum
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args)]
struct ExportArgs {
    /// Number of qubits
    n: usize,
    /// Write the gate list here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Raise the size guard to the library maximum
    #[arg(long)]
    allow_large: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Axis {
    X,
    Y,
    Z,
    Averaged,
}

impl From<Axis> for AxisPolicy {
    fn from(axis: Axis) -> Self {
        match axis {
            Axis::X => AxisPolicy::Fixed(BlochAxis::X),
            Axis::Y => AxisPolicy::Fixed(BlochAxis::Y),
            Axis::Z => AxisPolicy::Fixed(BlochAxis::Z),
            Axis::Averaged => AxisPolicy::Averaged,
        }
    }
}

/// Why a command failed, mapped onto the documented exit codes.
enum Failure {
    Check(String),
    Validation(String),
    Resources(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Validation(_) => 2,
            Failure::Resources(_) => 3,
            Failure::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Check(m)
            | Failure::Validation(m)
            | Failure::Resources(m)
            | Failure::Io(m) => m,
        }
    }
}

fn validation(err: symcomp::Error) -> Failure {
    Failure::Validation(err.to_string())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Trace(args) => cmd_trace(args),
        Command::Gatecount(args) => cmd_gatecount(args),
        Command::Noise(NoiseCommand::Global(args)) => cmd_noise_global(args),
        Command::Noise(NoiseCommand::Single(args)) => cmd_noise_single(args),
        Command::Directions => cmd_directions(),
        Command::Export(args) => cmd_export(args),
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    guard_size(args.n_max, args.allow_large)?;
    let seed = resolve_seed(args.seed);
    let report = verify_range(args.n_max, seed).map_err(validation)?;
    let rendered = if args.json {
        let mut text = serde_json::to_string_pretty(&report)
            .map_err(|err| Failure::Io(format!("cannot encode report: {err}")))?;
        text.push('\n');
        text
    } else {
        report.render()
    };
    write_output(args.out.as_deref(), &rendered)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check("verification failed".into()))
    }
}

fn cmd_trace(args: TraceArgs) -> Result<(), Failure> {
    let trace = trace_compression(args.n, args.k).map_err(validation)?;
    let mut text = format!(
        "compressing the {}-excitation symmetric state of {} qubits \
         (coefficients /√{})\n",
        trace.excitations, trace.n_qubits, trace.weight_denominator
    );
    for step in trace.steps.iter().chain([&trace.compressed]) {
        text.push_str(&format!("  {:<8} {}\n", step.label, step.rendered));
    }
    write_output(args.out.as_deref(), &text)
}

fn cmd_gatecount(args: GatecountArgs) -> Result<(), Failure> {
    let report = circuit::gate_count_report(args.n).map_err(validation)?;
    let n = report.n_qubits;
    let ratio = report.cnot_bound_stage1 as f64 / (n * n) as f64;
    let text = format!(
        "compression circuit for N = {n}\n\
         \x20 three-qubit rotations  {}\n\
         \x20 two-qubit gates        {}\n\
         \x20 multi-controlled X     {}\n\
         \x20 stage-1 CNOT bound     {}  ({:.2} per N²)\n\
         \x20 stage-2 CNOT bound     {}  (ceiling {})\n",
        report.three_qubit_ops,
        report.two_qubit_ops,
        report.mcx_count,
        report.cnot_bound_stage1,
        ratio,
        report.stage2_cnot_bound,
        report.stage2_asymptotic_bound(),
    );
    print!("{text}");
    Ok(())
}

fn cmd_noise_global(args: GlobalArgs) -> Result<(), Failure> {
    let sizes = parse_size_range(&args.n)?;
    guard_size(*sizes.end(), args.allow_large)?;
    let seed = resolve_seed(args.seed);
    let config = SweepConfig {
        samples: args.samples,
        rng_seed: seed,
        axis_policy: args.axis.into(),
    };
    let records = analysis::sweep_ensemble_sizes(sizes, Metric::Global, args.phi, config)
        .map_err(validation)?;
    write_output(args.out.as_deref(), &analysis::records_to_csv(&records))
}

fn cmd_noise_single(args: SingleArgs) -> Result<(), Failure> {
    guard_size(args.n, args.allow_large)?;
    let seed = resolve_seed(args.seed);
    let policies: Vec<AxisPolicy> = args.axes.iter().map(|&axis| axis.into()).collect();
    let records =
        analysis::sweep_single_qubit(args.n, &args.phi, &policies, args.samples, seed)
            .map_err(validation)?;
    write_output(args.out.as_deref(), &analysis::records_to_csv(&records))
}

fn cmd_directions() -> Result<(), Failure> {
    print!(
        "{}",
        analysis::render_direction_table(&analysis::direction_fidelity_table())
    );
    Ok(())
}

fn cmd_export(args: ExportArgs) -> Result<(), Failure> {
    guard_size(args.n, args.allow_large)?;
    let circuit = circuit::synthesize(args.n).map_err(validation)?;
    let text = circuit
        .export()
        .map_err(|err| Failure::Io(format!("cannot serialize circuit: {err}")))?;
    write_output(args.out.as_deref(), &text)
}

/// Inclusive "lo..hi" range or a bare count.
fn parse_size_range(text: &str) -> Result<RangeInclusive<usize>, Failure> {
    let number = |part: &str| {
        part.trim().parse::<usize>().map_err(|_| {
            Failure::Validation(format!("cannot read qubit count from '{part}'"))
        })
    };
    match text.split_once("..") {
        Some((lo, hi)) => {
            let (lo, hi) = (number(lo)?, number(hi)?);
            if lo > hi {
                return Err(Failure::Validation(format!("empty size range {lo}..{hi}")));
            }
            Ok(lo..=hi)
        }
        None => {
            let n = number(text)?;
            Ok(n..=n)
        }
    }
}

fn guard_size(n: usize, allow_large: bool) -> Result<(), Failure> {
    let ceiling = if allow_large { MAX_QUBITS } else { SIZE_GUARD };
    if n > ceiling {
        let hint = if allow_large {
            format!("the library caps states at {MAX_QUBITS} qubits")
        } else {
            format!("pass --allow-large to go up to {MAX_QUBITS}")
        };
        return Err(Failure::Resources(format!(
            "{n} qubits exceeds the {ceiling}-qubit limit; {hint}"
        )));
    }
    Ok(())
}

/// Fills in a missing seed and echoes the one used, so any randomized run
/// can be reproduced from its stderr.
fn resolve_seed(seed: Option<u64>) -> u64 {
    let seed = seed.unwrap_or_else(|| rand::rng().random());
    eprintln!("seed: {seed}");
    seed
}

fn write_output(out: Option<&Path>, contents: &str) -> Result<(), Failure> {
    match out {
        None => {
            print!("{contents}");
            Ok(())
        }
        Some(path) => {
            let path = resolve_out_path(path);
            std::fs::write(&path, contents).map_err(|err| {
                Failure::Io(format!("cannot write {}: {err}", path.display()))
            })?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
    }
}

/// Relative output paths land in $SYMCOMP_OUT_DIR when it is set.
fn resolve_out_path(path: &Path) -> PathBuf {
    if path.is_relative()
        && let Some(dir) = std::env::var_os("SYMCOMP_OUT_DIR")
    {
        return PathBuf::from(dir).join(path);
    }
    path.to_path_buf()
}
