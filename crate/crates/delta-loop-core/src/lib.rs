//! Circulating currents and electromagnetic torque in delta-wound PM machines.
//!
//! A delta winding closes the n phase windings into a loop. Back-EMF harmonics
//! whose order is a multiple of the phase count n are in phase in every
//! winding, so they do not cancel around the loop and drive a circulating
//! current that never appears at the machine terminals. That current, acting
//! on the same flux harmonics that created it, produces a mean (braking)
//! torque plus a torque ripple at twice the harmonic order.
//!
//! The crate has four parts:
//!
//! * [`machine`] — machine description ([`MachineParams`]) and per-winding
//!   flux-linkage / back-EMF evaluation, plus star/delta terminal views.
//! * [`loop_analysis`] — closed-form steady state of the delta loop:
//!   circulating orders, loop BEMF sum, current phasors, torque waveform and
//!   its DC / double-order decomposition, high-speed asymptotes.
//! * [`time_domain`] — an independent oracle: fixed-step 4th-order
//!   integration of the loop KVL equation with transient discard, used to
//!   validate the closed forms.
//! * [`spectral`] — harmonic decomposition and synthesis of sampled periodic
//!   waveforms.
//!
//! All computations are pure functions of their inputs and safe to call
//! concurrently.
//!
//! The crate is `no_std`-compatible: disable default features and enable
//! `libm` to build without the standard library (an allocator is required).

#![cfg_attr(not(feature = "std"), no_std)]

#[cfg(not(any(feature = "std", feature = "libm")))]
compile_error!("delta-loop-core needs either the `std` feature or the `libm` feature");

extern crate alloc;

pub mod error;
pub mod loop_analysis;
pub mod machine;
pub mod spectral;
pub mod time_domain;

mod math;

pub use error::{Error, Result};
pub use machine::{FluxHarmonic, MachineParams, OperatingPoint, WindingConfig};
pub use spectral::{HarmonicComponent, HarmonicDecomposition, SignalUnit, Waveform};
