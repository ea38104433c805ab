//! Workbench CLI for delta-winding circulating-current analysis.
//!
//! Subcommands: `waveform` (one-cycle current/torque, analytic vs
//! time-domain), `sweep` (per-speed harmonic metrics, CSV + JSON summary),
//! `bemf` (per-order winding vs star/delta terminal magnitudes) and
//! `verify` (built-in invariant checks with a JSON report).
//!
//! Exit codes: 0 ok, 1 verification failure, 2 input validation,
//! 3 degenerate operating point. `DELTA_LOOP_THREADS` caps sweep
//! parallelism; the output does not depend on it.

mod app_error;
mod commands;
mod machine_file;
mod sweep;
mod table;
mod verify;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use app_error::AppError;
use machine_file::{electrical_speed, load_machine};
use sweep::SweepSpec;

#[derive(Parser)]
#[command(
    name = "delta-loop",
    version,
    about = "Circulating currents and torque in delta-wound PM machines"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MachineArg {
    /// Machine description JSON.
    #[arg(long, value_name = "PATH")]
    machine: PathBuf,
    /// Interpret speeds as mechanical rpm instead of electrical rad/s.
    #[arg(long)]
    rpm: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// First sweep speed (electrical rad/s, or rpm with --rpm).
    #[arg(long)]
    omega_start: f64,
    /// Last sweep speed.
    #[arg(long)]
    omega_end: f64,
    /// Number of sweep points.
    #[arg(long, default_value_t = 40)]
    points: usize,
    /// Logarithmic speed spacing.
    #[arg(long)]
    log: bool,
}

#[derive(Subcommand)]
enum Command {
    /// One-cycle circulating current and torque waveforms, analytic and
    /// time-domain, as CSV.
    Waveform {
        #[command(flatten)]
        machine: MachineArg,
        /// Electrical speed (rad/s, or rpm with --rpm).
        #[arg(long)]
        omega: f64,
        /// Samples over one electrical cycle.
        #[arg(long, default_value_t = 512)]
        samples: usize,
        /// Output CSV path (stdout when omitted).
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Speed sweep of current and torque harmonic metrics; writes CSV plus
    /// a `.summary.json` next to it.
    Sweep {
        #[command(flatten)]
        machine: MachineArg,
        #[command(flatten)]
        sweep: SweepArgs,
        /// Samples per cycle for the time-domain cross-check.
        #[arg(long, default_value_t = 2048)]
        samples: usize,
        /// Add a per-speed analytic-vs-time-domain mismatch column.
        #[arg(long)]
        verify: bool,
        /// Output CSV path.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    /// Per-order BEMF magnitudes: individual winding vs star and delta
    /// line-to-line views.
    Bemf {
        #[command(flatten)]
        machine: MachineArg,
        /// Electrical speed (rad/s, or rpm with --rpm).
        #[arg(long)]
        omega: f64,
        /// Output CSV path (stdout when omitted).
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Run the built-in invariant checks and print a JSON report.
    Verify {
        #[command(flatten)]
        machine: MachineArg,
        /// First check speed (defaults to a machine-derived range).
        #[arg(long)]
        omega_start: Option<f64>,
        /// Last check speed.
        #[arg(long)]
        omega_end: Option<f64>,
        /// Number of check speeds.
        #[arg(long, default_value_t = 9)]
        points: usize,
        /// Linear instead of logarithmic check-speed spacing.
        #[arg(long)]
        linear: bool,
        /// Samples per cycle for time-domain checks.
        #[arg(long, default_value_t = 2048)]
        samples: usize,
        /// Also write the JSON report to this path.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}

/// Thread pool sized by DELTA_LOOP_THREADS (all cores when unset). Row
/// results are collected in grid order, so the pool size never changes the
/// output.
fn build_pool() -> Result<rayon::ThreadPool, AppError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var("DELTA_LOOP_THREADS") {
        let threads: usize = value.trim().parse().map_err(|_| {
            AppError::Validation(format!(
                "DELTA_LOOP_THREADS must be a positive integer, got {value:?}"
            ))
        })?;
        if threads == 0 {
            return Err(AppError::Validation(
                "DELTA_LOOP_THREADS must be at least 1".into(),
            ));
        }
        builder = builder.num_threads(threads);
    }
    builder
        .build()
        .map_err(|e| AppError::Validation(format!("cannot build thread pool: {e}")))
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Waveform {
            machine,
            omega,
            samples,
            out,
        } => {
            let params = load_machine(&machine.machine)?;
            let omega = electrical_speed(omega, machine.rpm, &params);
            commands::cmd_waveform(&params, omega, samples, out.as_deref())
        }
        Command::Sweep {
            machine,
            sweep,
            samples,
            verify,
            out,
        } => {
            let params = load_machine(&machine.machine)?;
            let spec = SweepSpec {
                omega_start: electrical_speed(sweep.omega_start, machine.rpm, &params),
                omega_end: electrical_speed(sweep.omega_end, machine.rpm, &params),
                points: sweep.points,
                log: sweep.log,
            };
            let label = machine.machine.display().to_string();
            let pool = build_pool()?;
            pool.install(|| sweep::run_sweep(&params, &label, &spec, samples, verify, &out))?;
            Ok(())
        }
        Command::Bemf {
            machine,
            omega,
            out,
        } => {
            let params = load_machine(&machine.machine)?;
            let omega = electrical_speed(omega, machine.rpm, &params);
            commands::cmd_bemf(&params, omega, out.as_deref())
        }
        Command::Verify {
            machine,
            omega_start,
            omega_end,
            points,
            linear,
            samples,
            out,
        } => {
            let params = load_machine(&machine.machine)?;
            let spec = verify_range(&params, omega_start, omega_end, points, linear, machine.rpm)?;
            let label = machine.machine.display().to_string();
            verify::cmd_verify(&params, &label, &spec, samples, out.as_deref())
        }
    }
}

/// Verify speeds: the user's range, or a machine-derived one spanning
/// reactance/resistance ratios 0.01..100 for the highest circulating order
/// (10..1000 rad/s when that ratio is undefined).
fn verify_range(
    params: &delta_loop_core::MachineParams,
    omega_start: Option<f64>,
    omega_end: Option<f64>,
    points: usize,
    linear: bool,
    rpm: bool,
) -> Result<SweepSpec, AppError> {
    let (start, end) = match (omega_start, omega_end) {
        (Some(a), Some(b)) => (
            electrical_speed(a, rpm, params),
            electrical_speed(b, rpm, params),
        ),
        (None, None) => {
            let orders = delta_loop_core::loop_analysis::circulating_orders(params);
            match orders.last() {
                Some(&h) if params.resistance() > 0.0 => {
                    let omega_star = params.resistance() / (h as f64 * params.loop_inductance());
                    (0.01 * omega_star, 100.0 * omega_star)
                }
                _ => (10.0, 1000.0),
            }
        }
        _ => {
            return Err(AppError::Validation(
                "give both --omega-start and --omega-end, or neither".into(),
            ))
        }
    };
    Ok(SweepSpec {
        omega_start: start,
        omega_end: end,
        points,
        log: !linear,
    })
}
