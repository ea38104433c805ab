//! Machine description and per-winding flux linkage / back-EMF evaluation.
//!
//! The rotor PM flux linking winding `w` is a sum of cosine harmonics,
//!
//! ```text
//! lambda_w(theta_e) = sum_h  -lambda_h * cos(h * (theta_e - w * beta)),    beta = 2*pi/n
//! ```
//!
//! and the back-EMF of that winding is its time derivative,
//! `E_w = omega_e * d(lambda_w)/d(theta_e)`. All windings share identical
//! parameters; winding `w` is shifted by `w * beta` electrical radians.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// One permanent-magnet flux-linkage harmonic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxHarmonic {
    /// Electrical harmonic order; 1 is the fundamental.
    pub order: u32,
    /// Flux-linkage magnitude in weber.
    pub magnitude: f64,
}

impl FluxHarmonic {
    pub fn new(order: u32, magnitude: f64) -> Self {
        Self { order, magnitude }
    }
}

/// Winding connection at the machine terminals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindingConfig {
    /// Windings share a neutral point; no loop exists.
    Star,
    /// Windings close into a loop; circulating currents can flow.
    Delta,
}

/// Instantaneous electrical operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    /// Electrical angular speed in rad/s.
    pub omega_e: f64,
    /// Electrical rotor position in rad, interpreted modulo 2*pi.
    pub theta_e: f64,
}

impl OperatingPoint {
    pub fn new(omega_e: f64, theta_e: f64) -> Self {
        Self { omega_e, theta_e }
    }
}

/// Electrical and magnetic description of one machine.
///
/// Immutable after construction; `new` enforces every invariant. Inductances
/// are constant (non-salient rotor) and all windings are identical.
#[derive(Debug, Clone, PartialEq)]
pub struct MachineParams {
    n: usize,
    p: u32,
    resistance: f64,
    self_inductance: f64,
    mutual_inductance: f64,
    spectrum: Vec<FluxHarmonic>,
    config: WindingConfig,
}

impl MachineParams {
    /// Build a machine description, validating all parameters.
    ///
    /// `resistance` (ohm), `self_inductance` and `mutual_inductance` (henry)
    /// describe the loop KVL; the effective loop inductance `L - 2M` must be
    /// positive. The spectrum is stored sorted by ascending order; orders
    /// must be distinct positive integers with non-negative magnitudes.
    pub fn new(
        n: usize,
        p: u32,
        resistance: f64,
        self_inductance: f64,
        mutual_inductance: f64,
        mut spectrum: Vec<FluxHarmonic>,
        config: WindingConfig,
    ) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter {
                field: "n",
                message: "phase count must be at least 3",
            });
        }
        if p < 1 {
            return Err(Error::InvalidParameter {
                field: "p",
                message: "pole-pair count must be at least 1",
            });
        }
        if !resistance.is_finite() || resistance < 0.0 {
            return Err(Error::InvalidParameter {
                field: "R",
                message: "winding resistance must be finite and non-negative",
            });
        }
        if !self_inductance.is_finite() {
            return Err(Error::InvalidParameter {
                field: "L",
                message: "self inductance must be finite",
            });
        }
        if !mutual_inductance.is_finite() {
            return Err(Error::InvalidParameter {
                field: "M",
                message: "mutual inductance must be finite",
            });
        }
        if self_inductance - 2.0 * mutual_inductance <= 0.0 {
            return Err(Error::InvalidParameter {
                field: "L - 2M",
                message: "effective loop inductance L - 2M must be positive",
            });
        }
        spectrum.sort_by_key(|h| h.order);
        for pair in spectrum.windows(2) {
            if pair[0].order == pair[1].order {
                return Err(Error::InvalidParameter {
                    field: "spectrum",
                    message: "harmonic orders must be distinct",
                });
            }
        }
        for h in &spectrum {
            if h.order < 1 {
                return Err(Error::InvalidParameter {
                    field: "spectrum",
                    message: "harmonic orders must be positive",
                });
            }
            if !h.magnitude.is_finite() || h.magnitude < 0.0 {
                return Err(Error::InvalidParameter {
                    field: "spectrum",
                    message: "harmonic magnitudes must be finite and non-negative",
                });
            }
        }
        Ok(Self {
            n,
            p,
            resistance,
            self_inductance,
            mutual_inductance,
            spectrum,
            config,
        })
    }

    /// Number of phase windings.
    pub fn phase_count(&self) -> usize {
        self.n
    }

    /// Number of magnetic pole pairs.
    pub fn pole_pairs(&self) -> u32 {
        self.p
    }

    /// Winding resistance in ohm.
    pub fn resistance(&self) -> f64 {
        self.resistance
    }

    /// Self inductance in henry.
    pub fn self_inductance(&self) -> f64 {
        self.self_inductance
    }

    /// Mutual inductance between windings in henry.
    pub fn mutual_inductance(&self) -> f64 {
        self.mutual_inductance
    }

    /// Effective loop inductance `L' = L - 2M` in henry, the inductance seen
    /// by the circulating current. Always positive.
    pub fn loop_inductance(&self) -> f64 {
        self.self_inductance - 2.0 * self.mutual_inductance
    }

    /// PM flux-linkage harmonics, sorted by ascending order.
    pub fn spectrum(&self) -> &[FluxHarmonic] {
        &self.spectrum
    }

    /// Terminal connection.
    pub fn config(&self) -> WindingConfig {
        self.config
    }

    /// Same machine with a different terminal connection.
    pub fn with_config(&self, config: WindingConfig) -> Self {
        Self {
            config,
            ..self.clone()
        }
    }

    /// Spatial displacement between adjacent windings, `beta = 2*pi/n`, in
    /// electrical rad.
    pub fn winding_pitch(&self) -> f64 {
        2.0 * core::f64::consts::PI / self.n as f64
    }

    fn check_winding(&self, w: usize) -> Result<()> {
        if w < self.n {
            Ok(())
        } else {
            Err(Error::WindingIndex {
                index: w,
                phase_count: self.n,
            })
        }
    }

    /// PM flux linkage of winding `w` at electrical position `theta_e`, in
    /// weber: `sum_h -lambda_h * cos(h*(theta_e - w*beta))`.
    pub fn flux_linkage_winding(&self, w: usize, theta_e: f64) -> Result<f64> {
        self.check_winding(w)?;
        Ok(self.flux_linkage_unchecked(w, theta_e))
    }

    /// Back-EMF of winding `w` in volt:
    /// `sum_h h*omega_e*lambda_h*sin(h*(theta_e - w*beta))`.
    ///
    /// Equals `omega_e` times [`Self::flux_derivative_winding`].
    pub fn bemf_winding(&self, w: usize, op: OperatingPoint) -> Result<f64> {
        self.check_winding(w)?;
        Ok(op.omega_e * self.flux_derivative_unchecked(w, op.theta_e))
    }

    /// Position derivative of the winding flux linkage,
    /// `d(lambda_w)/d(theta_e)` in weber per electrical rad. Speed
    /// independent.
    pub fn flux_derivative_winding(&self, w: usize, theta_e: f64) -> Result<f64> {
        self.check_winding(w)?;
        Ok(self.flux_derivative_unchecked(w, theta_e))
    }

    /// Line-to-line BEMF values seen at the terminals, one per line pair.
    ///
    /// Star: entry `w` is `E_w - E_(w+1 mod n)` (winding differences, so
    /// multiple-of-n orders cancel and are unobservable). Delta: the
    /// line-to-line voltage is the winding BEMF itself.
    pub fn terminal_bemf(&self, op: OperatingPoint) -> Vec<f64> {
        (0..self.n)
            .map(|w| {
                let e_w = op.omega_e * self.flux_derivative_unchecked(w, op.theta_e);
                match self.config {
                    WindingConfig::Delta => e_w,
                    WindingConfig::Star => {
                        let next = (w + 1) % self.n;
                        e_w - op.omega_e * self.flux_derivative_unchecked(next, op.theta_e)
                    }
                }
            })
            .collect()
    }

    pub(crate) fn flux_linkage_unchecked(&self, w: usize, theta_e: f64) -> f64 {
        let shifted = theta_e - w as f64 * self.winding_pitch();
        self.spectrum
            .iter()
            .map(|h| -h.magnitude * math::cos(h.order as f64 * shifted))
            .sum()
    }

    pub(crate) fn flux_derivative_unchecked(&self, w: usize, theta_e: f64) -> f64 {
        let shifted = theta_e - w as f64 * self.winding_pitch();
        self.spectrum
            .iter()
            .map(|h| h.order as f64 * h.magnitude * math::sin(h.order as f64 * shifted))
            .sum()
    }

    /// Sum of the flux-position derivatives of all windings, in weber per
    /// electrical rad. Only multiple-of-n orders survive the summation.
    pub fn loop_flux_derivative(&self, theta_e: f64) -> f64 {
        (0..self.n)
            .map(|w| self.flux_derivative_unchecked(w, theta_e))
            .sum()
    }

    /// Sum of all winding BEMFs in volt, evaluated winding by winding.
    pub fn bemf_sum(&self, op: OperatingPoint) -> f64 {
        op.omega_e * self.loop_flux_derivative(op.theta_e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn machine(n: usize, spectrum: Vec<FluxHarmonic>, config: WindingConfig) -> MachineParams {
        MachineParams::new(n, 3, 0.05, 2e-4, 5e-5, spectrum, config).unwrap()
    }

    #[test]
    fn flux_linkage_fundamental_convention() {
        // Single h=3 harmonic at theta 0: -lambda * cos(0) = -lambda.
        let m = machine(3, vec![FluxHarmonic::new(3, 0.01)], WindingConfig::Delta);
        assert_eq!(m.flux_linkage_winding(0, 0.0).unwrap(), -0.01);
    }

    #[test]
    fn triplen_shift_vanishes() {
        // h*beta = 3 * 2pi/3 = 2pi, so winding 1 sees the same triplen flux.
        let m = machine(3, vec![FluxHarmonic::new(3, 0.01)], WindingConfig::Delta);
        let a = m.flux_linkage_winding(0, 0.0).unwrap();
        let b = m.flux_linkage_winding(1, 0.0).unwrap();
        assert!((a - b).abs() < 1e-15);
        assert!((a + 0.01).abs() < 1e-15);
    }

    #[test]
    fn flux_linkage_two_term_value() {
        // Independently evaluated term by term:
        // -0.05*cos(0.7 - 2*(2pi/3)) - 0.002*cos(5*(0.7 - 2*(2pi/3)))
        let m = machine(
            3,
            vec![FluxHarmonic::new(1, 0.05), FluxHarmonic::new(5, 0.002)],
            WindingConfig::Delta,
        );
        let got = m.flux_linkage_winding(2, 0.7).unwrap();
        assert!((got - 0.046687616503377768).abs() < 1e-15);
    }

    #[test]
    fn bemf_zero_speed() {
        let m = machine(3, vec![FluxHarmonic::new(3, 0.01)], WindingConfig::Delta);
        for k in 0..8 {
            let theta = k as f64 * PI / 4.0;
            assert_eq!(m.bemf_winding(0, OperatingPoint::new(0.0, theta)).unwrap(), 0.0);
        }
    }

    #[test]
    fn bemf_direct_substitution() {
        // h=3, omega=100, lambda=0.01, theta=pi/6: 3*100*0.01*sin(pi/2) = 3 V.
        let m = machine(3, vec![FluxHarmonic::new(3, 0.01)], WindingConfig::Delta);
        let e = m
            .bemf_winding(0, OperatingPoint::new(100.0, PI / 6.0))
            .unwrap();
        assert!((e - 3.0).abs() < 1e-12);
    }

    #[test]
    fn bemf_shift_symmetry() {
        let m = machine(
            3,
            vec![FluxHarmonic::new(1, 0.05), FluxHarmonic::new(3, 0.01)],
            WindingConfig::Delta,
        );
        let beta = m.winding_pitch();
        for w in 0..3 {
            for k in 0..16 {
                let theta = k as f64 * PI / 8.0;
                let direct = m.bemf_winding(w, OperatingPoint::new(120.0, theta)).unwrap();
                let shifted = m
                    .bemf_winding(0, OperatingPoint::new(120.0, theta - w as f64 * beta))
                    .unwrap();
                assert!((direct - shifted).abs() <= 1e-12 * direct.abs().max(1.0));
            }
        }
    }

    #[test]
    fn flux_derivative_hand_value() {
        let m = machine(3, vec![FluxHarmonic::new(3, 0.01)], WindingConfig::Delta);
        let d = m.flux_derivative_winding(0, PI / 6.0).unwrap();
        assert!((d - 0.03).abs() < 1e-15);
    }

    #[test]
    fn flux_derivative_matches_finite_difference() {
        let m = machine(
            3,
            vec![
                FluxHarmonic::new(1, 0.05),
                FluxHarmonic::new(3, 0.01),
                FluxHarmonic::new(5, 0.002),
            ],
            WindingConfig::Delta,
        );
        let h = 1e-5;
        for w in 0..3 {
            for k in 0..32 {
                let theta = k as f64 * PI / 16.0;
                let fd = (m.flux_linkage_winding(w, theta + h).unwrap()
                    - m.flux_linkage_winding(w, theta - h).unwrap())
                    / (2.0 * h);
                let analytic = m.flux_derivative_winding(w, theta).unwrap();
                assert!(
                    (fd - analytic).abs() < 1e-8,
                    "w={w} theta={theta}: fd={fd} analytic={analytic}"
                );
            }
        }
    }

    #[test]
    fn bemf_equals_speed_times_flux_derivative() {
        let m = machine(
            3,
            vec![FluxHarmonic::new(1, 0.05), FluxHarmonic::new(3, 0.01)],
            WindingConfig::Delta,
        );
        for &omega in &[0.0, 10.0, 314.0] {
            let e = m.bemf_winding(1, OperatingPoint::new(omega, 0.37)).unwrap();
            let d = m.flux_derivative_winding(1, 0.37).unwrap();
            assert_eq!(e, omega * d);
        }
    }

    #[test]
    fn winding_index_out_of_range() {
        let m = machine(3, vec![FluxHarmonic::new(3, 0.01)], WindingConfig::Delta);
        assert_eq!(
            m.flux_linkage_winding(3, 0.0),
            Err(Error::WindingIndex {
                index: 3,
                phase_count: 3
            })
        );
        assert!(m.bemf_winding(7, OperatingPoint::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn star_terminal_cancels_triplen() {
        let m = machine(3, vec![FluxHarmonic::new(3, 0.01)], WindingConfig::Star);
        for k in 0..32 {
            let theta = k as f64 * PI / 16.0;
            for v in m.terminal_bemf(OperatingPoint::new(200.0, theta)) {
                assert!(v.abs() < 1e-12, "star triplen line-to-line {v} at {theta}");
            }
        }
    }

    #[test]
    fn delta_terminal_equals_winding() {
        let m = machine(
            3,
            vec![FluxHarmonic::new(1, 0.05), FluxHarmonic::new(3, 0.01)],
            WindingConfig::Delta,
        );
        let op = OperatingPoint::new(150.0, 0.9);
        let term = m.terminal_bemf(op);
        for (w, v) in term.iter().enumerate() {
            assert_eq!(*v, m.bemf_winding(w, op).unwrap());
        }
    }

    #[test]
    fn validation_names_offending_field() {
        let spec = vec![FluxHarmonic::new(1, 0.05)];
        let err = |f: core::result::Result<MachineParams, Error>| match f.unwrap_err() {
            Error::InvalidParameter { field, .. } => field,
            other => panic!("unexpected error {other:?}"),
        };
        assert_eq!(
            err(MachineParams::new(2, 3, 0.05, 2e-4, 5e-5, spec.clone(), WindingConfig::Delta)),
            "n"
        );
        assert_eq!(
            err(MachineParams::new(3, 0, 0.05, 2e-4, 5e-5, spec.clone(), WindingConfig::Delta)),
            "p"
        );
        assert_eq!(
            err(MachineParams::new(3, 3, -1.0, 2e-4, 5e-5, spec.clone(), WindingConfig::Delta)),
            "R"
        );
        // L - 2M <= 0 names the effective loop inductance.
        assert_eq!(
            err(MachineParams::new(3, 3, 0.05, 1e-4, 1e-4, spec.clone(), WindingConfig::Delta)),
            "L - 2M"
        );
        assert_eq!(
            err(MachineParams::new(
                3,
                3,
                0.05,
                2e-4,
                5e-5,
                vec![FluxHarmonic::new(3, 0.01), FluxHarmonic::new(3, 0.02)],
                WindingConfig::Delta
            )),
            "spectrum"
        );
        assert_eq!(
            err(MachineParams::new(
                3,
                3,
                0.05,
                2e-4,
                5e-5,
                vec![FluxHarmonic::new(1, -0.05)],
                WindingConfig::Delta
            )),
            "spectrum"
        );
    }

    #[test]
    fn spectrum_sorted_on_construction() {
        let m = machine(
            3,
            vec![FluxHarmonic::new(9, 1e-3), FluxHarmonic::new(1, 0.05)],
            WindingConfig::Delta,
        );
        let orders: Vec<u32> = m.spectrum().iter().map(|h| h.order).collect();
        assert_eq!(orders, vec![1, 9]);
    }
}
