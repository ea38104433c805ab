//! Independent time-domain oracle for the loop current.
//!
//! Integrates the loop KVL equation
//!
//! ```text
//! L' * dI/dt = -(R*I + sum_w E_w(theta_e))
//! ```
//!
//! with a classical fixed-step 4th-order scheme, in the position domain
//! (`dI/dtheta = dI/dt / omega_e`) so every step lands exactly on the
//! uniform grid used for spectral analysis. The forcing term is the literal
//! winding-by-winding BEMF sum, so the integration shares no code path with
//! the closed-form loop analysis it validates.
//!
//! The transient is discarded over `settle_cycles` electrical cycles; the
//! last cycle is returned together with the relative cycle-to-cycle RMS
//! change, which must fall below [`SETTLE_RESIDUAL_TOLERANCE`] for the
//! result to count as converged.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::machine::{MachineParams, WindingConfig};
use crate::math;
use crate::spectral::{SignalUnit, Waveform};

const TWO_PI: f64 = 2.0 * core::f64::consts::PI;

/// Converged when the RMS change between the last two cycles, relative to
/// the last cycle's RMS, is below this.
pub const SETTLE_RESIDUAL_TOLERANCE: f64 = 1e-6;

/// Fixed-step integration settings for one steady-state extraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimSpec {
    /// Samples per electrical cycle; must be at least 8x the highest
    /// circulating order (Nyquist with margin) and at least 4.
    pub steps_per_cycle: usize,
    /// Discarded transient cycles before the recorded cycle; at least 1.
    pub settle_cycles: usize,
    /// Loop current at theta = 0 of the first cycle, in ampere.
    pub initial_current: f64,
}

impl SimSpec {
    pub fn new(steps_per_cycle: usize, settle_cycles: usize, initial_current: f64) -> Self {
        Self {
            steps_per_cycle,
            settle_cycles,
            initial_current,
        }
    }

    fn validate(&self, params: &MachineParams) -> Result<()> {
        let h_max = crate::loop_analysis::circulating_orders(params)
            .last()
            .copied()
            .unwrap_or(0) as usize;
        if self.steps_per_cycle < (8 * h_max).max(4) {
            return Err(Error::InvalidParameter {
                field: "steps_per_cycle",
                message: "fewer than 8 samples per cycle of the highest circulating order",
            });
        }
        if self.settle_cycles < 1 {
            return Err(Error::InvalidParameter {
                field: "settle_cycles",
                message: "at least one transient cycle must be discarded",
            });
        }
        if !self.initial_current.is_finite() {
            return Err(Error::InvalidParameter {
                field: "initial_current",
                message: "initial current must be finite",
            });
        }
        Ok(())
    }
}

/// One extracted steady-state cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct SteadyStateResult {
    /// Loop current over the final cycle, ampere.
    pub current: Waveform,
    /// Torque over the final cycle from `p * I * sum_w d(lambda_w)/d(theta)`,
    /// newton-meter.
    pub torque: Waveform,
    /// RMS change between the last two cycles relative to the last cycle's
    /// RMS; 0 when both cycles are identically zero.
    pub residual_settle: f64,
    /// `residual_settle < SETTLE_RESIDUAL_TOLERANCE`.
    pub converged: bool,
}

/// Transient cycles to discard so the loop current decays to the periodic
/// steady state: at least 16 electrical time constants `tau = L'/R` (which
/// more than covers the 10-tau rule of thumb and pushes the settle residual
/// under [`SETTLE_RESIDUAL_TOLERANCE`]), never fewer than 5 cycles.
///
/// Fails for R = 0: the transient never decays and the caller must supply
/// the exact initial condition instead.
pub fn settle_cycles_default(params: &MachineParams, omega_e: f64) -> Result<usize> {
    if params.resistance() == 0.0 {
        return Err(Error::DegenerateOperatingPoint {
            reason: "R = 0 has no decaying transient; supply the exact initial current",
        });
    }
    let tau = params.loop_inductance() / params.resistance();
    let cycle = TWO_PI / omega_e;
    let cycles = math::ceil(16.0 * tau / cycle) + 2.0;
    Ok((cycles as usize).max(5))
}

/// Steps per cycle that keep the fixed-step scheme accurate at speed
/// `omega_e`, as a multiple of `base` (so the finer grid still contains the
/// `base` grid).
///
/// Two limits matter: the Nyquist margin for the circulating orders, and the
/// per-step decay `R*d_theta/(L'*omega_e)` of the position-domain equation,
/// which grows without bound at low speed and drives the scheme toward its
/// stability boundary near 2.8. The returned count keeps that decay below
/// 0.05 per step, where the truncation error is negligible.
pub fn recommended_steps_per_cycle(
    params: &MachineParams,
    omega_e: f64,
    base: usize,
) -> usize {
    const MAX_DECAY_PER_STEP: f64 = 0.05;
    let base = base.max(1);
    let h_max = crate::loop_analysis::circulating_orders(params)
        .last()
        .copied()
        .unwrap_or(0) as usize;
    let nyquist_floor = (8 * h_max).max(4);
    let decay_per_radian = params.resistance() / (params.loop_inductance() * omega_e);
    let stiffness_floor = TWO_PI * decay_per_radian / MAX_DECAY_PER_STEP;
    let mut needed = (nyquist_floor.max(base)) as f64;
    if stiffness_floor.is_finite() {
        needed = needed.max(stiffness_floor);
    }
    let multiplier = (math::ceil(needed / base as f64) as usize).max(1);
    base * multiplier
}

/// Integrate the loop equation over `settle_cycles + 1` cycles and return
/// the final cycle.
///
/// Requires a delta connection and `omega_e > 0` (zero speed has no
/// periodic cycle). The `spec` grid must satisfy the Nyquist margin for the
/// machine's circulating orders.
pub fn integrate_loop(
    params: &MachineParams,
    omega_e: f64,
    spec: &SimSpec,
) -> Result<SteadyStateResult> {
    if params.config() != WindingConfig::Delta {
        return Err(Error::NotDelta);
    }
    if omega_e <= 0.0 || !omega_e.is_finite() {
        return Err(Error::DegenerateOperatingPoint {
            reason: "steady-state extraction needs omega_e > 0",
        });
    }
    // Without resistance the transient never decays: any initial-current
    // offset survives every cycle and the residual check cannot see it.
    if params.resistance() == 0.0 {
        return Err(Error::DegenerateOperatingPoint {
            reason: "R = 0 has no decaying transient; the steady state is analytic only",
        });
    }
    spec.validate(params)?;

    let n = spec.steps_per_cycle;
    let d_theta = TWO_PI / n as f64;
    let inv = 1.0 / (params.loop_inductance() * omega_e);
    // dI/dtheta at (theta, I); forcing = literal winding-by-winding BEMF sum.
    let slope = |theta: f64, i: f64| -> f64 {
        -(params.resistance() * i + omega_e * params.loop_flux_derivative(theta)) * inv
    };

    let mut current = spec.initial_current;
    let mut last = vec![0.0f64; n];
    let mut prev = vec![0.0f64; n];
    for _cycle in 0..=spec.settle_cycles {
        core::mem::swap(&mut last, &mut prev);
        for (k, slot) in last.iter_mut().enumerate() {
            *slot = current;
            let theta = k as f64 * d_theta;
            let k1 = slope(theta, current);
            let k2 = slope(theta + 0.5 * d_theta, current + 0.5 * d_theta * k1);
            let k3 = slope(theta + 0.5 * d_theta, current + 0.5 * d_theta * k2);
            let k4 = slope(theta + d_theta, current + d_theta * k3);
            current += d_theta / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
    }

    let rms = |xs: &[f64]| {
        math::sqrt(xs.iter().map(|x| x * x).sum::<f64>() / xs.len() as f64)
    };
    let diff: Vec<f64> = last.iter().zip(&prev).map(|(a, b)| a - b).collect();
    let num = rms(&diff);
    let denom = rms(&last);
    let residual_settle = if num == 0.0 {
        0.0
    } else if denom == 0.0 {
        f64::INFINITY
    } else {
        num / denom
    };

    let p = params.pole_pairs() as f64;
    let torque: Vec<f64> = last
        .iter()
        .enumerate()
        .map(|(k, &i)| p * i * params.loop_flux_derivative(k as f64 * d_theta))
        .collect();

    Ok(SteadyStateResult {
        current: Waveform::new(last, SignalUnit::Ampere)?,
        torque: Waveform::new(torque, SignalUnit::NewtonMeter)?,
        residual_settle,
        converged: residual_settle < SETTLE_RESIDUAL_TOLERANCE,
    })
}
