//! The `waveform` and `bemf` subcommands.

use std::path::Path;

use delta_loop_core::loop_analysis::{
    circulating_current_waveform, circulating_orders, torque_waveform,
};
use delta_loop_core::spectral::{decompose, SignalUnit};
use delta_loop_core::time_domain::{
    integrate_loop, recommended_steps_per_cycle, settle_cycles_default, SimSpec,
};
use delta_loop_core::{MachineParams, OperatingPoint, Waveform, WindingConfig};

use crate::app_error::AppError;
use crate::table::{float17, Table};

fn require_positive_speed(omega: f64) -> Result<(), AppError> {
    if omega > 0.0 && omega.is_finite() {
        Ok(())
    } else {
        Err(AppError::Degenerate(format!(
            "electrical speed must be positive and finite, got {omega}"
        )))
    }
}

/// One-cycle waveforms: analytic and time-domain circulating current and
/// torque, sampled on the same grid.
///
/// Star machines (or spectra without circulating orders) produce all-zero
/// columns. For R = 0 the time-domain columns are NaN: the loop has no
/// decaying transient, so the steady state is available analytically only.
pub fn cmd_waveform(
    params: &MachineParams,
    omega: f64,
    samples: usize,
    out: Option<&Path>,
) -> Result<(), AppError> {
    require_positive_speed(omega)?;
    let current_analytic = circulating_current_waveform(params, omega, samples)?;
    let torque_analytic = torque_waveform(params, omega, samples)?;

    let has_loop =
        params.config() == WindingConfig::Delta && !circulating_orders(params).is_empty();
    let (current_ode, torque_ode) = if !has_loop {
        let zeros = Waveform::from_fn(samples, SignalUnit::Ampere, |_| 0.0)?;
        let zeros_t = Waveform::from_fn(samples, SignalUnit::NewtonMeter, |_| 0.0)?;
        (zeros, zeros_t)
    } else if params.resistance() == 0.0 {
        let nan = Waveform::from_fn(samples, SignalUnit::Ampere, |_| f64::NAN)?;
        let nan_t = Waveform::from_fn(samples, SignalUnit::NewtonMeter, |_| f64::NAN)?;
        (nan, nan_t)
    } else {
        // Integrate on a refined multiple of the output grid (accuracy at
        // low speed), then take every stride-th sample.
        let steps = recommended_steps_per_cycle(params, omega, samples);
        let spec = SimSpec::new(steps, settle_cycles_default(params, omega)?, 0.0);
        let result = integrate_loop(params, omega, &spec)?;
        if !result.converged {
            eprintln!(
                "warning: time-domain settle residual {:.3e} above tolerance",
                result.residual_settle
            );
        }
        let stride = steps / samples;
        let pick = |w: &Waveform, unit| {
            Waveform::new(
                w.samples().iter().step_by(stride).copied().collect(),
                unit,
            )
        };
        (
            pick(&result.current, SignalUnit::Ampere)?,
            pick(&result.torque, SignalUnit::NewtonMeter)?,
        )
    };

    let mut table = Table::new(
        [
            "theta_e_rad",
            "i_circ_analytic_A",
            "i_circ_ode_A",
            "torque_analytic_N_m",
            "torque_ode_N_m",
        ]
        .map(String::from)
        .to_vec(),
    );
    for k in 0..samples {
        table.push_row(vec![
            float17(current_analytic.theta(k)),
            float17(current_analytic.samples()[k]),
            float17(current_ode.samples()[k]),
            float17(torque_analytic.samples()[k]),
            float17(torque_ode.samples()[k]),
        ]);
    }
    table.write(out)
}

/// Per-order BEMF magnitude table: individual winding vs star and delta
/// line-to-line views of the same machine. Multiple-of-n orders appear in
/// the winding and delta columns but vanish line-to-line in star.
pub fn cmd_bemf(params: &MachineParams, omega: f64, out: Option<&Path>) -> Result<(), AppError> {
    require_positive_speed(omega)?;
    let orders: Vec<u32> = params.spectrum().iter().map(|h| h.order).collect();
    let h_max = orders.iter().max().copied().unwrap_or(1);
    let samples = (8 * h_max as usize).max(64);

    let winding = Waveform::from_fn(samples, SignalUnit::Volt, |theta| {
        params
            .bemf_winding(0, OperatingPoint::new(omega, theta))
            .expect("winding 0 always exists")
    })?;
    let star_view = params.with_config(WindingConfig::Star);
    let delta_view = params.with_config(WindingConfig::Delta);
    let star_line = Waveform::from_fn(samples, SignalUnit::Volt, |theta| {
        star_view.terminal_bemf(OperatingPoint::new(omega, theta))[0]
    })?;
    let delta_line = Waveform::from_fn(samples, SignalUnit::Volt, |theta| {
        delta_view.terminal_bemf(OperatingPoint::new(omega, theta))[0]
    })?;

    let winding_spec = decompose(&winding, h_max)?;
    let star_spec = decompose(&star_line, h_max)?;
    let delta_spec = decompose(&delta_line, h_max)?;

    let mut table = Table::new(
        ["order", "winding_V", "star_line_line_V", "delta_line_line_V"]
            .map(String::from)
            .to_vec(),
    );
    for &h in &orders {
        table.push_row(vec![
            h.to_string(),
            float17(winding_spec.magnitude(h)),
            float17(star_spec.magnitude(h)),
            float17(delta_spec.magnitude(h)),
        ]);
    }
    table.write(out)
}
