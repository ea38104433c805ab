//! CSV output with lossless float formatting.
//!
//! Floats are written in scientific notation with 17 significant digits so
//! the CSV round-trips f64 exactly and identical inputs produce byte
//! identical files.

use std::io::Write;
use std::path::Path;

use crate::app_error::{io_error, AppError};

/// 17 significant digits, scientific notation.
pub fn float17(x: f64) -> String {
    format!("{x:.16e}")
}

/// One CSV table: a header row and pre-formatted value rows.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<String>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Write to `out`, or to stdout when no path is given.
    pub fn write(&self, out: Option<&Path>) -> Result<(), AppError> {
        let csv = self.to_csv();
        match out {
            Some(path) => std::fs::write(path, csv)
                .map_err(|e| io_error(&format!("cannot write {}", path.display()), e)),
            None => std::io::stdout()
                .write_all(csv.as_bytes())
                .map_err(|e| io_error("cannot write to stdout", e)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float17_round_trips() {
        for &x in &[0.0, 1.0, -230.46638387921275, 3.0e-4, f64::MAX, 5e-324] {
            let s = float17(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, x, "{s}");
        }
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(vec!["a".into(), "b".into()]);
        t.push_row(vec!["1".into(), "2".into()]);
        assert_eq!(t.to_csv(), "a,b\n1,2\n");
    }
}
