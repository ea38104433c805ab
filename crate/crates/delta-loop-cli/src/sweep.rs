//! Speed sweeps: per-speed current/torque harmonic metrics, written as CSV
//! plus a JSON summary of asymptotes and the mean-torque peak.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use delta_loop_core::loop_analysis::{
    circulating_current_phasor, circulating_current_waveform, circulating_orders,
    high_speed_current_limit, high_speed_ripple_limit, torque_summary,
};
use delta_loop_core::time_domain::{
    integrate_loop, recommended_steps_per_cycle, settle_cycles_default, SimSpec,
};
use delta_loop_core::MachineParams;

use crate::app_error::{io_error, AppError};
use crate::table::{float17, Table};

/// Speed axis of a sweep, in electrical rad/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub omega_start: f64,
    pub omega_end: f64,
    pub points: usize,
    pub log: bool,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), AppError> {
        if !(self.omega_start > 0.0 && self.omega_start.is_finite()) {
            return Err(AppError::Validation(
                "field omega-start: sweep speeds must be positive".into(),
            ));
        }
        if !(self.omega_end >= self.omega_start && self.omega_end.is_finite()) {
            return Err(AppError::Validation(
                "field omega-end: sweep end must be at or above the start".into(),
            ));
        }
        if self.points < 2 && !(self.points == 1 && self.omega_start == self.omega_end) {
            return Err(AppError::Validation(
                "field points: at least 2 points (1 only when start equals end)".into(),
            ));
        }
        Ok(())
    }

    /// The speed grid, ascending; logarithmic or linear spacing.
    pub fn grid(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.omega_start];
        }
        let k = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                let t = i as f64 / k;
                if self.log {
                    (self.omega_start.ln() + t * (self.omega_end.ln() - self.omega_start.ln()))
                        .exp()
                } else {
                    self.omega_start + t * (self.omega_end - self.omega_start)
                }
            })
            .collect()
    }
}

/// Metrics at one sweep speed.
struct SweepRow {
    omega: f64,
    /// Per circulating order: (amplitude A, phase lag rad).
    currents: Vec<(f64, f64)>,
    torque_dc: f64,
    /// Per circulating order: (2h ripple amplitude N*m, phase rad).
    ripples: Vec<(f64, f64)>,
    /// RMS(analytic - integrated) / max |analytic|; NaN when the
    /// integration is unavailable (R = 0).
    mismatch: Option<f64>,
}

fn compute_row(
    params: &MachineParams,
    orders: &[u32],
    omega: f64,
    samples: usize,
    verify: bool,
) -> Result<SweepRow, AppError> {
    let mut currents = Vec::with_capacity(orders.len());
    for &h in orders {
        let ph = circulating_current_phasor(params, omega, h)?;
        currents.push((ph.amplitude, ph.phase_lag));
    }
    let summary = torque_summary(params, omega)?;
    let ripples = orders
        .iter()
        .map(|&h| {
            summary
                .ripple
                .iter()
                .find(|r| r.order == 2 * h)
                .map(|r| (r.amplitude, r.phase))
                .unwrap_or((0.0, 0.0))
        })
        .collect();

    let mismatch = if verify {
        Some(ode_mismatch(params, orders, omega, samples)?)
    } else {
        None
    };

    Ok(SweepRow {
        omega,
        currents,
        torque_dc: summary.dc,
        ripples,
        mismatch,
    })
}

fn ode_mismatch(
    params: &MachineParams,
    orders: &[u32],
    omega: f64,
    samples: usize,
) -> Result<f64, AppError> {
    if orders.is_empty() {
        return Ok(0.0); // nothing circulates; both waveforms are zero
    }
    if params.resistance() == 0.0 {
        return Ok(f64::NAN); // no decaying transient; integration skipped
    }
    let steps = recommended_steps_per_cycle(params, omega, samples);
    let analytic = circulating_current_waveform(params, omega, steps)?;
    let spec = SimSpec::new(steps, settle_cycles_default(params, omega)?, 0.0);
    let result = integrate_loop(params, omega, &spec)?;
    let mut sq = 0.0;
    let mut peak = 0.0f64;
    for k in 0..steps {
        let d = result.current.samples()[k] - analytic.samples()[k];
        sq += d * d;
        peak = peak.max(analytic.samples()[k].abs());
    }
    if peak == 0.0 {
        return Ok(0.0);
    }
    Ok((sq / steps as f64).sqrt() / peak)
}

/// Theoretical values reported next to the swept ones, per circulating order.
#[derive(Debug, Serialize)]
struct OrderSummary {
    order: u32,
    /// n*lambda_h/L', the high-speed current amplitude.
    current_limit_theory_a: f64,
    /// Current amplitude at the last sweep point.
    current_final_a: f64,
    /// p*n^2*h*lambda_h^2/(2L'), the high-speed 2h ripple amplitude.
    ripple_limit_theory_n_m: f64,
    /// 2h ripple amplitude at the last sweep point.
    ripple_final_n_m: f64,
    /// R/(h*L'), the speed of maximum mean-torque magnitude.
    dc_peak_speed_theory_rad_per_s: f64,
}

#[derive(Debug, Serialize)]
struct DcPeak {
    /// Grid speed with the largest mean-torque magnitude.
    omega_rad_per_s: f64,
    torque_dc_n_m: f64,
}

#[derive(Debug, Serialize)]
struct SweepSummary {
    machine: String,
    omega_start_rad_per_s: f64,
    omega_end_rad_per_s: f64,
    points: usize,
    scale: &'static str,
    per_order: Vec<OrderSummary>,
    dc_peak: Option<DcPeak>,
}

/// Run the sweep and write `<out>` (CSV) plus the summary JSON next to it
/// (`<out stem>.summary.json`). Returns the summary path.
pub fn run_sweep(
    params: &MachineParams,
    machine_label: &str,
    spec: &SweepSpec,
    samples: usize,
    verify: bool,
    out: &Path,
) -> Result<PathBuf, AppError> {
    spec.validate()?;
    let orders = circulating_orders(params);
    let grid = spec.grid();

    let rows: Vec<SweepRow> = grid
        .par_iter()
        .map(|&omega| compute_row(params, &orders, omega, samples, verify))
        .collect::<Result<_, _>>()?;

    let mut header = vec!["omega_e_rad_per_s".to_string()];
    for &h in &orders {
        header.push(format!("i_mag_h{h}_A"));
        header.push(format!("i_phase_lag_h{h}_rad"));
    }
    header.push("torque_dc_N_m".to_string());
    for &h in &orders {
        header.push(format!("ripple_mag_h{}_N_m", 2 * h));
        header.push(format!("ripple_phase_h{}_rad", 2 * h));
    }
    if verify {
        header.push("ode_mismatch_rel".to_string());
    }

    let mut table = Table::new(header);
    for row in &rows {
        let mut cells = vec![float17(row.omega)];
        for &(amp, lag) in &row.currents {
            cells.push(float17(amp));
            cells.push(float17(lag));
        }
        cells.push(float17(row.torque_dc));
        for &(amp, phase) in &row.ripples {
            cells.push(float17(amp));
            cells.push(float17(phase));
        }
        if let Some(m) = row.mismatch {
            cells.push(float17(m));
        }
        table.push_row(cells);
    }
    table.write(Some(out))?;

    let per_order = orders
        .iter()
        .enumerate()
        .map(|(i, &h)| {
            let last = rows.last().expect("at least one sweep point");
            Ok(OrderSummary {
                order: h,
                current_limit_theory_a: high_speed_current_limit(params, h)?,
                current_final_a: last.currents[i].0,
                ripple_limit_theory_n_m: high_speed_ripple_limit(params, h)?,
                ripple_final_n_m: last.ripples[i].0,
                dc_peak_speed_theory_rad_per_s: params.resistance()
                    / (h as f64 * params.loop_inductance()),
            })
        })
        .collect::<Result<Vec<_>, AppError>>()?;

    let dc_peak = rows
        .iter()
        .max_by(|a, b| {
            a.torque_dc
                .abs()
                .partial_cmp(&b.torque_dc.abs())
                .expect("mean torque is finite")
        })
        .filter(|r| r.torque_dc != 0.0)
        .map(|r| DcPeak {
            omega_rad_per_s: r.omega,
            torque_dc_n_m: r.torque_dc,
        });

    let summary = SweepSummary {
        machine: machine_label.to_string(),
        omega_start_rad_per_s: spec.omega_start,
        omega_end_rad_per_s: spec.omega_end,
        points: spec.points,
        scale: if spec.log { "log" } else { "linear" },
        per_order,
        dc_peak,
    };
    let summary_path = summary_path_for(out);
    let json = serde_json::to_string_pretty(&summary)
        .expect("summary serialization cannot fail")
        + "\n";
    std::fs::write(&summary_path, json)
        .map_err(|e| io_error(&format!("cannot write {}", summary_path.display()), e))?;
    Ok(summary_path)
}

/// `sweep.csv` -> `sweep.summary.json`.
pub fn summary_path_for(out: &Path) -> PathBuf {
    out.with_extension("summary.json")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_linear_and_log() {
        let lin = SweepSpec {
            omega_start: 10.0,
            omega_end: 50.0,
            points: 5,
            log: false,
        };
        assert_eq!(lin.grid(), vec![10.0, 20.0, 30.0, 40.0, 50.0]);

        let log = SweepSpec {
            omega_start: 1.0,
            omega_end: 100.0,
            points: 3,
            log: true,
        };
        let g = log.grid();
        assert!((g[0] - 1.0).abs() < 1e-12);
        assert!((g[1] - 10.0).abs() < 1e-12);
        assert!((g[2] - 100.0).abs() < 1e-12);
    }

    #[test]
    fn single_point_grid() {
        let s = SweepSpec {
            omega_start: 42.0,
            omega_end: 42.0,
            points: 1,
            log: false,
        };
        s.validate().unwrap();
        assert_eq!(s.grid(), vec![42.0]);
    }

    #[test]
    fn validation_rejects_bad_ranges() {
        let bad = |start: f64, end: f64, points: usize| {
            SweepSpec {
                omega_start: start,
                omega_end: end,
                points,
                log: false,
            }
            .validate()
            .unwrap_err()
        };
        assert_eq!(bad(0.0, 10.0, 5).exit_code(), 2);
        assert_eq!(bad(10.0, 5.0, 5).exit_code(), 2);
        assert_eq!(bad(10.0, 20.0, 1).exit_code(), 2);
    }

    #[test]
    fn summary_path_replaces_extension() {
        assert_eq!(
            summary_path_for(Path::new("runs/sweep.csv")),
            PathBuf::from("runs/sweep.summary.json")
        );
        assert_eq!(
            summary_path_for(Path::new("sweep")),
            PathBuf::from("sweep.summary.json")
        );
    }
}
