//! Harmonic decomposition of uniformly sampled periodic waveforms.
//!
//! Decomposition is a direct Fourier projection on the uniform grid
//! `theta_k = 2*pi*k/N`, exact for band-limited signals. Phase convention:
//! component `m` reconstructs as `magnitude * sin(m*theta + phase)`, so
//! [`synthesize`] inverts [`decompose`] exactly for orders below N/2.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

const TWO_PI: f64 = 2.0 * core::f64::consts::PI;

/// Physical unit carried by a sampled waveform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalUnit {
    Ampere,
    NewtonMeter,
    Volt,
}

/// Uniformly sampled periodic signal over one electrical cycle.
///
/// Sample `k` is the value at `theta_e = 2*pi*k/N`; the grid has at least 4
/// points.
#[derive(Debug, Clone, PartialEq)]
pub struct Waveform {
    samples: Vec<f64>,
    unit: SignalUnit,
}

impl Waveform {
    /// Wrap pre-computed samples. Fails if fewer than 4 samples are given.
    pub fn new(samples: Vec<f64>, unit: SignalUnit) -> Result<Self> {
        if samples.len() < 4 {
            return Err(Error::InvalidParameter {
                field: "samples",
                message: "a waveform needs at least 4 samples",
            });
        }
        Ok(Self { samples, unit })
    }

    /// Sample `f(theta_k)` on the uniform grid with `n` points.
    pub fn from_fn(n: usize, unit: SignalUnit, f: impl Fn(f64) -> f64) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidParameter {
                field: "samples",
                message: "a waveform needs at least 4 samples",
            });
        }
        let samples = (0..n).map(|k| f(TWO_PI * k as f64 / n as f64)).collect();
        Ok(Self { samples, unit })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false // at least 4 samples by construction
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn unit(&self) -> SignalUnit {
        self.unit
    }

    /// Grid position of sample `k` in electrical rad.
    pub fn theta(&self, k: usize) -> f64 {
        TWO_PI * k as f64 / self.samples.len() as f64
    }

    /// Arithmetic mean of the samples (the DC value).
    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    /// Root-mean-square of the samples.
    pub fn rms(&self) -> f64 {
        math::sqrt(self.samples.iter().map(|x| x * x).sum::<f64>() / self.samples.len() as f64)
    }
}

/// One decomposed harmonic: contributes `magnitude * sin(order*theta + phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicComponent {
    pub order: u32,
    pub magnitude: f64,
    /// Phase in (-pi, pi].
    pub phase: f64,
}

/// DC value plus harmonic components of a decomposed waveform.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicDecomposition {
    pub dc: f64,
    components: Vec<HarmonicComponent>,
    unit: SignalUnit,
}

impl HarmonicDecomposition {
    /// Assemble a decomposition by hand, e.g. to synthesize a test signal.
    /// Component orders must be distinct and positive.
    pub fn from_components(
        dc: f64,
        components: Vec<HarmonicComponent>,
        unit: SignalUnit,
    ) -> Result<Self> {
        for c in &components {
            if c.order < 1 {
                return Err(Error::InvalidParameter {
                    field: "components",
                    message: "component orders must be positive",
                });
            }
        }
        let mut orders: Vec<u32> = components.iter().map(|c| c.order).collect();
        orders.sort_unstable();
        if orders.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter {
                field: "components",
                message: "component orders must be distinct",
            });
        }
        Ok(Self {
            dc,
            components,
            unit,
        })
    }

    pub fn components(&self) -> &[HarmonicComponent] {
        &self.components
    }

    pub fn unit(&self) -> SignalUnit {
        self.unit
    }

    /// Component at `order`, if present.
    pub fn component(&self, order: u32) -> Option<&HarmonicComponent> {
        self.components.iter().find(|c| c.order == order)
    }

    /// Magnitude at `order`; 0 when the order is absent.
    pub fn magnitude(&self, order: u32) -> f64 {
        self.component(order).map_or(0.0, |c| c.magnitude)
    }

    /// Largest component magnitude; 0 when there are no components.
    pub fn max_magnitude(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.magnitude)
            .fold(0.0, f64::max)
    }
}

/// Decompose a waveform into DC plus harmonics of order `1..=m_max`.
///
/// Fails when `m_max >= N/2` (aliasing).
pub fn decompose(w: &Waveform, m_max: u32) -> Result<HarmonicDecomposition> {
    let n = w.len();
    if 2 * m_max as usize >= n {
        return Err(Error::Aliasing {
            order: m_max,
            samples: n,
        });
    }
    let dc = w.mean();
    let mut components = Vec::with_capacity(m_max as usize);
    for m in 1..=m_max {
        let mut a = 0.0; // cos projection
        let mut b = 0.0; // sin projection
        for (k, x) in w.samples().iter().enumerate() {
            let arg = m as f64 * w.theta(k);
            a += x * math::cos(arg);
            b += x * math::sin(arg);
        }
        a *= 2.0 / n as f64;
        b *= 2.0 / n as f64;
        let magnitude = math::hypot(a, b);
        // a*cos + b*sin = magnitude * sin(m*theta + phase) with
        // b = magnitude*cos(phase), a = magnitude*sin(phase).
        let mut phase = math::atan2(a, b);
        if phase == -core::f64::consts::PI {
            phase = core::f64::consts::PI;
        }
        components.push(HarmonicComponent {
            order: m,
            magnitude,
            phase,
        });
    }
    Ok(HarmonicDecomposition {
        dc,
        components,
        unit: w.unit(),
    })
}

/// Sample a decomposition back onto a uniform grid with `samples` points.
///
/// Exact inverse of [`decompose`] for band-limited signals; fails when any
/// component order is at or beyond `samples/2`.
pub fn synthesize(d: &HarmonicDecomposition, samples: usize) -> Result<Waveform> {
    if let Some(max_order) = d.components.iter().map(|c| c.order).max() {
        if 2 * max_order as usize >= samples {
            return Err(Error::Aliasing {
                order: max_order,
                samples,
            });
        }
    }
    Waveform::from_fn(samples, d.unit, |theta| {
        d.dc + d
            .components
            .iter()
            .map(|c| c.magnitude * math::sin(c.order as f64 * theta + c.phase))
            .sum::<f64>()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use core::f64::consts::PI;
    use proptest::prelude::*;

    #[test]
    fn constant_waveform_is_pure_dc() {
        let w = Waveform::new(vec![2.5; 32], SignalUnit::Volt).unwrap();
        let d = decompose(&w, 10).unwrap();
        assert_eq!(d.dc, 2.5);
        for c in d.components() {
            assert!(c.magnitude < 1e-14);
        }
    }

    #[test]
    fn single_sine_recovered_exactly() {
        // x = 5*sin(3*theta - 0.4) at N = 64.
        let w = Waveform::from_fn(64, SignalUnit::Ampere, |t| 5.0 * (3.0 * t - 0.4).sin()).unwrap();
        let d = decompose(&w, 20).unwrap();
        let c3 = d.component(3).unwrap();
        assert!((c3.magnitude - 5.0).abs() < 1e-12);
        assert!((c3.phase + 0.4).abs() < 1e-12);
        for c in d.components() {
            if c.order != 3 {
                assert!(c.magnitude < 1e-12, "order {} leaked {}", c.order, c.magnitude);
            }
        }
        assert!(d.dc.abs() < 1e-13);
    }

    #[test]
    fn synthesize_dc_only() {
        let d = HarmonicDecomposition::from_components(1.0, vec![], SignalUnit::NewtonMeter)
            .unwrap();
        let w = synthesize(&d, 16).unwrap();
        assert!(w.samples().iter().all(|&x| x == 1.0));
    }

    #[test]
    fn synthesize_single_order_unit() {
        let d = HarmonicDecomposition::from_components(
            0.0,
            vec![HarmonicComponent {
                order: 6,
                magnitude: 1.0,
                phase: 0.0,
            }],
            SignalUnit::Volt,
        )
        .unwrap();
        let w = synthesize(&d, 64).unwrap();
        let back = decompose(&w, 12).unwrap();
        for c in back.components() {
            if c.order == 6 {
                assert!((c.magnitude - 1.0).abs() < 1e-12);
            } else {
                assert!(c.magnitude < 1e-12);
            }
        }
    }

    #[test]
    fn aliasing_rejected() {
        let w = Waveform::new(vec![0.0; 16], SignalUnit::Volt).unwrap();
        assert_eq!(
            decompose(&w, 8),
            Err(Error::Aliasing {
                order: 8,
                samples: 16
            })
        );
        let d = HarmonicDecomposition::from_components(
            0.0,
            vec![HarmonicComponent {
                order: 9,
                magnitude: 1.0,
                phase: 0.0,
            }],
            SignalUnit::Volt,
        )
        .unwrap();
        assert!(synthesize(&d, 16).is_err());
    }

    #[test]
    fn waveform_needs_four_samples() {
        assert!(Waveform::new(vec![0.0; 3], SignalUnit::Ampere).is_err());
    }

    fn arb_decomposition() -> impl Strategy<Value = HarmonicDecomposition> {
        // Up to 5 components drawn from orders 1..=10 with distinct orders.
        (
            -10.0f64..10.0,
            proptest::sample::subsequence((1u32..=10).collect::<Vec<_>>(), 0..=5),
        )
            .prop_flat_map(|(dc, orders)| {
                let k = orders.len();
                (
                    Just(dc),
                    Just(orders),
                    proptest::collection::vec(0.0f64..10.0, k),
                    proptest::collection::vec(-3.1f64..3.1, k),
                )
            })
            .prop_map(|(dc, orders, mags, phases)| {
                let components = orders
                    .into_iter()
                    .zip(mags)
                    .zip(phases)
                    .map(|((order, magnitude), phase)| HarmonicComponent {
                        order,
                        magnitude,
                        phase,
                    })
                    .collect();
                HarmonicDecomposition::from_components(dc, components, SignalUnit::Ampere).unwrap()
            })
    }

    proptest! {
        #[test]
        fn round_trip_band_limited(d in arb_decomposition()) {
            let w = synthesize(&d, 256).unwrap();
            let back = decompose(&w, 10).unwrap();
            prop_assert!((back.dc - d.dc).abs() < 1e-9);
            for m in 1..=10u32 {
                let want = d.component(m);
                let got = back.component(m).unwrap();
                match want {
                    Some(c) => {
                        prop_assert!((got.magnitude - c.magnitude).abs() < 1e-9);
                        if c.magnitude > 1e-6 {
                            // Compare phases via the reconstructed phasor to
                            // dodge wrap-around at +-pi.
                            let dre = got.magnitude * got.phase.cos() - c.magnitude * c.phase.cos();
                            let dim = got.magnitude * got.phase.sin() - c.magnitude * c.phase.sin();
                            prop_assert!(dre.hypot(dim) < 1e-9);
                        }
                    }
                    None => prop_assert!(got.magnitude < 1e-9),
                }
            }
        }

        #[test]
        fn parseval_holds(d in arb_decomposition()) {
            let w = synthesize(&d, 256).unwrap();
            let mean_sq = w.samples().iter().map(|x| x * x).sum::<f64>() / w.len() as f64;
            let back = decompose(&w, 10).unwrap();
            let spectral = back.dc * back.dc
                + back.components().iter().map(|c| 0.5 * c.magnitude * c.magnitude).sum::<f64>();
            let scale = mean_sq.max(1.0);
            prop_assert!((mean_sq - spectral).abs() < 1e-9 * scale);
        }

        #[test]
        fn linearity(
            a in arb_decomposition(),
            b in arb_decomposition(),
            alpha in -2.0f64..2.0,
            beta in -2.0f64..2.0,
        ) {
            let wa = synthesize(&a, 128).unwrap();
            let wb = synthesize(&b, 128).unwrap();
            let mixed: Vec<f64> = wa
                .samples()
                .iter()
                .zip(wb.samples())
                .map(|(x, y)| alpha * x + beta * y)
                .collect();
            let wm = Waveform::new(mixed, SignalUnit::Ampere).unwrap();
            let da = decompose(&wa, 10).unwrap();
            let db = decompose(&wb, 10).unwrap();
            let dm = decompose(&wm, 10).unwrap();
            prop_assert!((dm.dc - (alpha * da.dc + beta * db.dc)).abs() < 1e-9);
            for m in 1..=10u32 {
                let ca = da.component(m).unwrap();
                let cb = db.component(m).unwrap();
                let cm = dm.component(m).unwrap();
                // Compare in rectangular form; magnitudes alone are not linear.
                let re = alpha * ca.magnitude * ca.phase.sin() + beta * cb.magnitude * cb.phase.sin();
                let im = alpha * ca.magnitude * ca.phase.cos() + beta * cb.magnitude * cb.phase.cos();
                let got_re = cm.magnitude * cm.phase.sin();
                let got_im = cm.magnitude * cm.phase.cos();
                prop_assert!((re - got_re).abs() < 1e-9 && (im - got_im).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn phase_convention_documented() {
        // magnitude * sin(m*theta + phase) must reproduce the input.
        let w = Waveform::from_fn(128, SignalUnit::Volt, |t| 2.0 * (5.0 * t + 1.1).sin()).unwrap();
        let d = decompose(&w, 10).unwrap();
        let c = d.component(5).unwrap();
        for k in 0..w.len() {
            let theta = w.theta(k);
            let rebuilt = c.magnitude * (5.0 * theta + c.phase).sin();
            assert!((rebuilt - w.samples()[k]).abs() < 1e-12);
        }
        assert!(c.phase > -PI && c.phase <= PI);
    }
}
