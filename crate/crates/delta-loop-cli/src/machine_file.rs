//! Machine description files.
//!
//! A machine is a JSON document with SI units (ohm, henry, weber):
//!
//! ```json
//! {
//!   "n": 3, "p": 3,
//!   "R": 0.05, "L": 3.0e-4, "M": 1.0e-4,
//!   "config": "delta",
//!   "spectrum": [
//!     {"order": 1, "magnitude": 0.05},
//!     {"order": 3, "magnitude": 0.01}
//!   ]
//! }
//! ```
//!
//! An optional `"description"` string is carried along for labeling.
//! Validation failures name the offending field.

use std::path::Path;

use serde::Deserialize;

use delta_loop_core::{FluxHarmonic, MachineParams, WindingConfig};

use crate::app_error::AppError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MachineFile {
    n: usize,
    p: u32,
    #[serde(rename = "R")]
    resistance: f64,
    #[serde(rename = "L")]
    self_inductance: f64,
    #[serde(rename = "M")]
    mutual_inductance: f64,
    config: ConfigTag,
    spectrum: Vec<SpectrumEntry>,
    #[serde(default)]
    #[allow(dead_code)]
    description: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ConfigTag {
    Star,
    Delta,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpectrumEntry {
    order: u32,
    magnitude: f64,
}

/// Read and validate a machine description.
pub fn load_machine(path: &Path) -> Result<MachineParams, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::Validation(format!("cannot read {}: {e}", path.display())))?;
    let file: MachineFile = serde_json::from_str(&text)
        .map_err(|e| AppError::Validation(format!("{}: {e}", path.display())))?;
    let spectrum = file
        .spectrum
        .iter()
        .map(|s| FluxHarmonic::new(s.order, s.magnitude))
        .collect();
    let config = match file.config {
        ConfigTag::Star => WindingConfig::Star,
        ConfigTag::Delta => WindingConfig::Delta,
    };
    MachineParams::new(
        file.n,
        file.p,
        file.resistance,
        file.self_inductance,
        file.mutual_inductance,
        spectrum,
        config,
    )
    .map_err(|e| AppError::Validation(format!("{}: {e}", path.display())))
}

/// Electrical speed from a CLI value: rad/s directly, or mechanical rpm
/// converted through the pole-pair count when `rpm` is set.
pub fn electrical_speed(value: f64, rpm: bool, params: &MachineParams) -> f64 {
    if rpm {
        params.pole_pairs() as f64 * (2.0 * std::f64::consts::PI / 60.0) * value
    } else {
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_tmp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    const GOOD: &str = r#"{
        "n": 3, "p": 3, "R": 0.05, "L": 3.0e-4, "M": 1.0e-4,
        "config": "delta",
        "spectrum": [{"order": 1, "magnitude": 0.05}, {"order": 3, "magnitude": 0.01}]
    }"#;

    #[test]
    fn loads_valid_machine() {
        let f = write_tmp(GOOD);
        let m = load_machine(f.path()).unwrap();
        assert_eq!(m.phase_count(), 3);
        assert_eq!(m.config(), WindingConfig::Delta);
        assert_eq!(m.spectrum().len(), 2);
    }

    #[test]
    fn missing_field_is_named() {
        let f = write_tmp(r#"{"n": 3, "p": 3, "L": 3e-4, "M": 1e-4, "config": "delta", "spectrum": []}"#);
        let err = load_machine(f.path()).unwrap_err();
        assert!(err.to_string().contains("R"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn bad_loop_inductance_names_field() {
        let f = write_tmp(
            r#"{"n": 3, "p": 3, "R": 0.05, "L": 1e-4, "M": 1e-4,
                "config": "delta", "spectrum": [{"order": 3, "magnitude": 0.01}]}"#,
        );
        let err = load_machine(f.path()).unwrap_err();
        assert!(err.to_string().contains("L - 2M"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn unknown_field_rejected() {
        let f = write_tmp(
            r#"{"n": 3, "p": 3, "R": 0.05, "L": 3e-4, "M": 1e-4, "config": "delta",
                "spectrum": [], "resistannce": 1.0}"#,
        );
        assert!(load_machine(f.path()).is_err());
    }

    #[test]
    fn rpm_conversion() {
        let f = write_tmp(GOOD);
        let m = load_machine(f.path()).unwrap();
        // 1000 rpm at p=3: 3 * 2pi/60 * 1000.
        let omega = electrical_speed(1000.0, true, &m);
        assert!((omega - 3.0 * 2.0 * std::f64::consts::PI / 60.0 * 1000.0).abs() < 1e-9);
        assert_eq!(electrical_speed(123.0, false, &m), 123.0);
    }
}
