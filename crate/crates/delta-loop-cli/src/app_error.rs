//! Error-to-exit-code mapping for the CLI.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 input validation,
//! 3 degenerate operating point. Every failure prints a single
//! machine-parsable line to stderr.

use std::fmt;

use delta_loop_core::Error as CoreError;

#[derive(Debug)]
pub enum AppError {
    /// Bad input: unreadable or invalid machine JSON, bad flag combination,
    /// bad environment variable. Exit 2.
    Validation(String),
    /// Operating point at which the requested analysis is undefined. Exit 3.
    Degenerate(String),
    /// One or more verification checks failed. Exit 1.
    CheckFailed(String),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::CheckFailed(_) => 1,
            AppError::Validation(_) => 2,
            AppError::Degenerate(_) => 3,
        }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Validation(msg) => write!(f, "error: input-validation: {msg}"),
            AppError::Degenerate(msg) => write!(f, "error: degenerate-operating-point: {msg}"),
            AppError::CheckFailed(msg) => write!(f, "error: verification-failed: {msg}"),
        }
    }
}

impl From<CoreError> for AppError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::DegenerateOperatingPoint { .. } => AppError::Degenerate(e.to_string()),
            other => AppError::Validation(other.to_string()),
        }
    }
}

pub fn io_error(context: &str, e: std::io::Error) -> AppError {
    AppError::Validation(format!("{context}: {e}"))
}
