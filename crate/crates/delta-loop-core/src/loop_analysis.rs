//! Closed-form steady-state analysis of the delta loop.
//!
//! Around the closed delta loop, winding BEMF harmonics whose order is a
//! multiple of the phase count n are in phase in every winding and add up;
//! all other orders cancel. The surviving loop BEMF for order h has
//! magnitude `n*h*omega_e*lambda_h` and drives a circulating current through
//! the loop impedance `R + j*h*omega_e*L'` with `L' = L - 2M`:
//!
//! ```text
//! i_h(theta) = -(n*h*omega_e*lambda_h / |Z_h|) * sin(h*theta - phi_h)
//! phi_h      = atan2(h*omega_e*L', R)
//! ```
//!
//! Acting on the flux derivative the current produces, per order, a mean
//! torque plus a ripple at order 2h:
//!
//! ```text
//! T_h(theta) = -(p*n^2*h^2*omega_e*lambda_h^2 / (2*|Z_h|))
//!              * (cos(phi_h) - cos(2*h*theta - phi_h))
//! ```
//!
//! The mean term decays at high speed (inverse dependency on omega through
//! |Z_h|) while the 2h ripple approaches the constant
//! `p*n^2*h*lambda_h^2 / (2*L')`; the current amplitude approaches
//! `n*lambda_h / L'`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::machine::{MachineParams, OperatingPoint, WindingConfig};
use crate::math;
use crate::spectral::{self, SignalUnit, Waveform};

const FRAC_PI_2: f64 = core::f64::consts::FRAC_PI_2;

/// Loop-sum BEMF magnitude for one circulating order: `n*h*omega_e*lambda_h`
/// volt, driving the loop as `magnitude * sin(h*theta_e)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopDrive {
    pub order: u32,
    pub magnitude: f64,
}

/// Steady-state circulating current of one order, as waveform
/// `-amplitude * sin(order*theta_e - phase_lag)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurrentPhasor {
    pub order: u32,
    /// Ampere.
    pub amplitude: f64,
    /// Impedance angle `phi_h` in rad; 0 at standstill (R > 0), pi/2 in the
    /// inductance-dominated limit.
    pub phase_lag: f64,
}

impl CurrentPhasor {
    /// Instantaneous current at electrical position `theta_e`.
    pub fn value_at(&self, theta_e: f64) -> f64 {
        -self.amplitude * math::sin(self.order as f64 * theta_e - self.phase_lag)
    }

    /// Instantaneous time derivative dI/dt at `theta_e` for speed `omega_e`.
    pub fn derivative_at(&self, theta_e: f64, omega_e: f64) -> f64 {
        -self.amplitude
            * self.order as f64
            * omega_e
            * math::cos(self.order as f64 * theta_e - self.phase_lag)
    }
}

/// Torque ripple component at order `2h`, as `amplitude * sin(order*theta + phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorqueRipple {
    pub order: u32,
    /// Newton-meter.
    pub amplitude: f64,
    /// Phase in (-pi, pi], same convention as [`spectral::decompose`].
    pub phase: f64,
}

/// Mean torque plus per-order ripple of the circulating-current torque.
#[derive(Debug, Clone, PartialEq)]
pub struct TorqueSummary {
    /// Speed-dependent mean torque in newton-meter.
    pub dc: f64,
    /// One entry per circulating order h, holding the decomposed content at
    /// order 2h.
    pub ripple: Vec<TorqueRipple>,
}

/// Closed-form torque contribution of a single circulating order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorqueOrderContribution {
    /// Mean torque in newton-meter.
    pub dc: f64,
    /// Ripple at order `2h`.
    pub ripple: TorqueRipple,
}

/// Spectrum orders that can circulate: multiples of the phase count, in
/// ascending order. Empty for a star connection (no loop path).
pub fn circulating_orders(params: &MachineParams) -> Vec<u32> {
    if params.config() == WindingConfig::Star {
        return Vec::new();
    }
    let n = params.phase_count() as u32;
    params
        .spectrum()
        .iter()
        .filter(|h| h.order.is_multiple_of(n))
        .map(|h| h.order)
        .collect()
}

/// Loop drives `n*h*omega_e*lambda_h` for every circulating order.
pub fn loop_drives(params: &MachineParams, omega_e: f64) -> Vec<LoopDrive> {
    let n = params.phase_count() as f64;
    params
        .spectrum()
        .iter()
        .filter(|h| h.order.is_multiple_of(params.phase_count() as u32))
        .map(|h| LoopDrive {
            order: h.order,
            magnitude: n * h.order as f64 * omega_e * h.magnitude,
        })
        .collect()
}

/// Sum of all winding BEMFs around the delta loop, in volt:
/// `sum over circulating orders of n*h*omega_e*lambda_h*sin(h*theta_e)`.
///
/// Equals the winding-by-winding sum to floating-point cancellation; the
/// non-circulating orders drop out exactly.
pub fn loop_bemf_sum(params: &MachineParams, op: OperatingPoint) -> Result<f64> {
    if params.config() != WindingConfig::Delta {
        return Err(Error::NotDelta);
    }
    Ok(loop_drives(params, op.omega_e)
        .iter()
        .map(|d| d.magnitude * math::sin(d.order as f64 * op.theta_e))
        .sum())
}

fn flux_magnitude(params: &MachineParams, order: u32) -> Result<f64> {
    if params.config() != WindingConfig::Delta {
        return Err(Error::NotDelta);
    }
    if !order.is_multiple_of(params.phase_count() as u32) {
        return Err(Error::NotCirculatingOrder { order });
    }
    params
        .spectrum()
        .iter()
        .find(|h| h.order == order)
        .map(|h| h.magnitude)
        .ok_or(Error::NotCirculatingOrder { order })
}

/// Steady-state circulating current phasor for one circulating order.
///
/// Amplitude `n*h*omega_e*lambda_h / sqrt(R^2 + (h*omega_e*L')^2)` and lag
/// `phi_h = atan2(h*omega_e*L', R)`. The corresponding waveform
/// `-amplitude*sin(h*theta - phi_h)` solves the loop equation
/// `R*i + L'*di/dt + E_c = 0` exactly.
///
/// Fails for a star machine, a non-circulating order, or the degenerate
/// point R = 0 at zero speed (the loop equation then has no unique steady
/// state).
pub fn circulating_current_phasor(
    params: &MachineParams,
    omega_e: f64,
    order: u32,
) -> Result<CurrentPhasor> {
    let lambda = flux_magnitude(params, order)?;
    if params.resistance() == 0.0 && omega_e == 0.0 {
        return Err(Error::DegenerateOperatingPoint {
            reason: "R = 0 at zero speed leaves the loop current undetermined",
        });
    }
    let h_omega_l = order as f64 * omega_e * params.loop_inductance();
    let z = math::hypot(params.resistance(), h_omega_l);
    let amplitude = params.phase_count() as f64 * order as f64 * omega_e * lambda / z;
    let phase_lag = math::atan2(h_omega_l, params.resistance());
    Ok(CurrentPhasor {
        order,
        amplitude,
        phase_lag,
    })
}

/// Total circulating current over one electrical cycle, sampled on a uniform
/// grid: the superposition of all per-order phasor waveforms. A star machine
/// yields the all-zero waveform (there is no loop path).
pub fn circulating_current_waveform(
    params: &MachineParams,
    omega_e: f64,
    samples: usize,
) -> Result<Waveform> {
    let phasors = all_phasors(params, omega_e)?;
    Waveform::from_fn(samples, SignalUnit::Ampere, |theta| {
        phasors.iter().map(|p| p.value_at(theta)).sum()
    })
}

fn all_phasors(params: &MachineParams, omega_e: f64) -> Result<Vec<CurrentPhasor>> {
    circulating_orders(params)
        .into_iter()
        .map(|h| circulating_current_phasor(params, omega_e, h))
        .collect()
}

/// Electromagnetic torque of the circulating current over one cycle, from
/// virtual work at constant current:
/// `T(theta) = p * i_c(theta) * sum_w d(lambda_w)/d(theta_e)`.
///
/// Zero everywhere when no order circulates (including star machines).
pub fn torque_waveform(params: &MachineParams, omega_e: f64, samples: usize) -> Result<Waveform> {
    let phasors = all_phasors(params, omega_e)?;
    let p = params.pole_pairs() as f64;
    Waveform::from_fn(samples, SignalUnit::NewtonMeter, |theta| {
        if phasors.is_empty() {
            return 0.0;
        }
        let current: f64 = phasors.iter().map(|ph| ph.value_at(theta)).sum();
        p * current * params.loop_flux_derivative(theta)
    })
}

/// Sample count that resolves all torque content (orders up to twice the
/// highest spectrum order) without aliasing.
fn torque_sample_count(params: &MachineParams) -> usize {
    let h_max = params.spectrum().iter().map(|h| h.order).max().unwrap_or(1);
    (8 * h_max as usize).max(64)
}

/// Mean torque and per-order 2h ripple, from spectral decomposition of
/// [`torque_waveform`].
pub fn torque_summary(params: &MachineParams, omega_e: f64) -> Result<TorqueSummary> {
    let orders = circulating_orders(params);
    let samples = torque_sample_count(params);
    let waveform = torque_waveform(params, omega_e, samples)?;
    let dc = waveform.mean();
    let ripple = if orders.is_empty() {
        Vec::new()
    } else {
        let m_max = 2 * orders.iter().max().copied().unwrap_or(0);
        let decomposition = spectral::decompose(&waveform, m_max)?;
        orders
            .iter()
            .map(|&h| {
                let c = decomposition
                    .component(2 * h)
                    .expect("2h is below the Nyquist limit by construction");
                TorqueRipple {
                    order: 2 * h,
                    amplitude: c.magnitude,
                    phase: c.phase,
                }
            })
            .collect()
    };
    Ok(TorqueSummary { dc, ripple })
}

/// Closed-form torque contribution of one circulating order:
///
/// ```text
/// T_h(theta) = -K*(cos(phi_h) - cos(2*h*theta - phi_h)),
/// K = p*n^2*h^2*omega_e*lambda_h^2 / (2*|Z_h|)
/// ```
///
/// so the mean is `-K*cos(phi_h)` and the ripple is `K` at order 2h with
/// phase `pi/2 - phi_h` in the sin convention. Matches the decomposed
/// [`torque_waveform`] for a single-order spectrum; with several circulating
/// orders the decomposed content at 2h additionally picks up cross terms.
pub fn torque_order_closed_form(
    params: &MachineParams,
    omega_e: f64,
    order: u32,
) -> Result<TorqueOrderContribution> {
    let phasor = circulating_current_phasor(params, omega_e, order)?;
    let n = params.phase_count() as f64;
    let p = params.pole_pairs() as f64;
    let lambda = flux_magnitude(params, order)?;
    // K = p*n*h*lambda * amplitude / 2, with amplitude = n*h*omega*lambda/|Z|.
    let k = 0.5 * p * n * order as f64 * lambda * phasor.amplitude;
    Ok(TorqueOrderContribution {
        dc: -k * math::cos(phasor.phase_lag),
        ripple: TorqueRipple {
            order: 2 * order,
            amplitude: k,
            phase: FRAC_PI_2 - phasor.phase_lag,
        },
    })
}

/// High-speed limit of the circulating current amplitude for order h:
/// `n*lambda_h / L'` ampere, independent of R and speed.
pub fn high_speed_current_limit(params: &MachineParams, order: u32) -> Result<f64> {
    let lambda = flux_magnitude(params, order)?;
    Ok(params.phase_count() as f64 * lambda / params.loop_inductance())
}

/// High-speed limit of the 2h torque ripple amplitude:
/// `p*n^2*h*lambda_h^2 / (2*L')` newton-meter, independent of R and speed.
pub fn high_speed_ripple_limit(params: &MachineParams, order: u32) -> Result<f64> {
    let lambda = flux_magnitude(params, order)?;
    let n = params.phase_count() as f64;
    Ok(params.pole_pairs() as f64 * n * n * order as f64 * lambda * lambda
        / (2.0 * params.loop_inductance()))
}
