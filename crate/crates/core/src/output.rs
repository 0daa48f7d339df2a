//! Tabular output: CSV with 12 significant digits, or an aligned table.

use crate::error::{Error, Result};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros
/// removed, exponent form outside [1e-5, 1e12).
pub fn fmt_sig(x: f64) -> String {
    fmt_digits(x, SIGNIFICANT_DIGITS)
}

pub fn fmt_digits(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// A header plus rows of already-formatted cells.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len(), "row width must match header");
        self.rows.push(row);
    }

    /// RFC 4180 CSV with LF line endings.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .quote_style(csv::QuoteStyle::Necessary)
            .from_writer(Vec::new());
        let io = |e: csv::Error| Error::Evaluation { message: "csv serialisation failed".into(), trace: e.to_string() };
        w.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            w.write_record(row).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Evaluation {
            message: "csv serialisation failed".into(),
            trace: e.to_string(),
        })?;
        Ok(String::from_utf8(bytes).expect("cells are UTF-8"))
    }

    /// Right-aligned fixed-width columns.
    pub fn to_pretty(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            parts.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(&self.header);
        out.push_str(&line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>()));
        for row in &self.rows {
            out.push_str(&line(row));
        }
        out
    }
}

pub const ENERGIES_SCHEMA: &[&str] =
    &["material", "D", "nr", "m", "parity", "delta", "char_value", "lambda_eff", "E_hw", "E_eV"];
pub const CORRECTIONS_SCHEMA: &[&str] =
    &["material", "D", "p", "m", "parity", "delta", "char_value", "lambda_eff", "correction"];
pub const TRANSITIONS_SCHEMA: &[&str] =
    &["material", "D", "nr", "m_hi", "m_lo", "parity", "dE_withD", "dE_noD", "rel_shift_pct"];
pub const AB_SWEEP_SCHEMA: &[&str] = &["material", "D", "m", "parity", "delta", "lambda_eff", "ab_correction"];
pub const RADIAL_PROFILE_SCHEMA: &[&str] = &["r", "density", "nodes"];
pub const ANGULAR_PROFILE_SCHEMA: &[&str] = &["theta", "abs2", "re", "im"];
pub const MATERIALS_SCHEMA: &[&str] = &["material", "m_star", "eps_r", "lambda", "hbar_omega0_eV", "p_per_D"];
pub const VERIFY_SCHEMA: &[&str] = &["suite", "check", "value", "reference", "error", "tolerance", "status"];
