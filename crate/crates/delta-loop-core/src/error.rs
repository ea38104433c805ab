//! Error type shared by all modules of the crate.

use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong when building a machine description or
/// running an analysis on it.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A machine or simulation parameter violates its constraint.
    /// `field` names the offending input.
    InvalidParameter {
        field: &'static str,
        message: &'static str,
    },
    /// Winding index outside `0..n`.
    WindingIndex { index: usize, phase_count: usize },
    /// The operation needs a delta-connected machine.
    NotDelta,
    /// The order is not a circulating (multiple-of-n) order of this machine.
    NotCirculatingOrder { order: u32 },
    /// Operating point at which the loop equation has no usable solution
    /// (e.g. zero speed for a periodic steady state, or R = 0 together with
    /// zero speed).
    DegenerateOperatingPoint { reason: &'static str },
    /// Requested harmonic order at or beyond the Nyquist limit of the
    /// sample grid.
    Aliasing { order: u32, samples: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter { field, message } => {
                write!(f, "invalid parameter: field {field}: {message}")
            }
            Error::WindingIndex { index, phase_count } => {
                write!(
                    f,
                    "winding index {index} out of range for {phase_count}-phase machine"
                )
            }
            Error::NotDelta => write!(f, "operation requires a delta-connected machine"),
            Error::NotCirculatingOrder { order } => {
                write!(f, "order {order} is not a circulating order of this machine")
            }
            Error::DegenerateOperatingPoint { reason } => {
                write!(f, "degenerate operating point: {reason}")
            }
            Error::Aliasing { order, samples } => {
                write!(
                    f,
                    "order {order} at or beyond the Nyquist limit of {samples} samples"
                )
            }
        }
    }
}

impl core::error::Error for Error {}
