//! Plain-text CSV for scan results: 17 significant digits, LF line endings,
//! no quoting (no field ever contains a comma).

use super::scan::{CellFlags, ScanResult};
use crate::error::{Error, Result};

pub const SCAN_CSV_HEADER: &str =
    "axis1,axis2,omega_est,amplitude,omega_rwa,omega_tm,slow_lhs,flags";

/// Scientific notation with 17 significant digits; parses back bit-exactly.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// One parsed line of a scan CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub axis1: f64,
    pub axis2: f64,
    pub omega_est: f64,
    pub amplitude: f64,
    pub omega_rwa: f64,
    pub omega_tm: f64,
    pub slow_lhs: f64,
    pub flags: String,
}

impl ScanRow {
    /// Field-wise equality that treats NaN as equal to NaN.
    pub fn same_bits(&self, other: &Self) -> bool {
        let a = [
            self.axis1,
            self.axis2,
            self.omega_est,
            self.amplitude,
            self.omega_rwa,
            self.omega_tm,
            self.slow_lhs,
        ];
        let b = [
            other.axis1,
            other.axis2,
            other.omega_est,
            other.amplitude,
            other.omega_rwa,
            other.omega_tm,
            other.slow_lhs,
        ];
        a.iter().zip(&b).all(|(x, y)| x.to_bits() == y.to_bits()) && self.flags == other.flags
    }
}

impl ScanResult {
    pub fn rows(&self) -> Vec<ScanRow> {
        self.cells
            .iter()
            .map(|c| ScanRow {
                axis1: c.axis1,
                axis2: c.axis2,
                omega_est: c.estimate.map_or(f64::NAN, |e| e.omega_est),
                amplitude: c.estimate.map_or(f64::NAN, |e| e.amplitude),
                omega_rwa: c.omega_rwa,
                omega_tm: c.omega_tm,
                slow_lhs: c.slow_lhs,
                flags: c.flags.to_string(),
            })
            .collect()
    }

    /// Long-format CSV, one row per cell in axis-1-major order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(SCAN_CSV_HEADER);
        out.push('\n');
        for r in self.rows() {
            let nums = [
                r.axis1,
                r.axis2,
                r.omega_est,
                r.amplitude,
                r.omega_rwa,
                r.omega_tm,
                r.slow_lhs,
            ];
            for x in nums {
                out.push_str(&format_float(x));
                out.push(',');
            }
            out.push_str(&r.flags);
            out.push('\n');
        }
        out
    }
}

pub fn parse_scan_csv(text: &str) -> Result<Vec<ScanRow>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == SCAN_CSV_HEADER => {}
        other => {
            return Err(Error::Config(format!(
                "unexpected scan CSV header {other:?}"
            )))
        }
    }
    lines
        .enumerate()
        .map(|(k, line)| {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 8 {
                return Err(Error::Config(format!(
                    "line {}: expected 8 fields, got {}",
                    k + 2,
                    fields.len()
                )));
            }
            let mut v = [0.0; 7];
            for (slot, f) in v.iter_mut().zip(&fields) {
                *slot = f
                    .parse()
                    .map_err(|_| Error::Config(format!("line {}: bad number {f:?}", k + 2)))?;
            }
            Ok(ScanRow {
                axis1: v[0],
                axis2: v[1],
                omega_est: v[2],
                amplitude: v[3],
                omega_rwa: v[4],
                omega_tm: v[5],
                slow_lhs: v[6],
                flags: fields[7].to_string(),
            })
        })
        .collect()
}

/// Parses a rendered flag column back into [`CellFlags`].
pub fn parse_flags(s: &str) -> Result<CellFlags> {
    let mut f = CellFlags::default();
    for part in s.split('|').filter(|p| !p.is_empty()) {
        match part {
            "suppressed" => f.suppressed = true,
            "ambiguous" => f.ambiguous = true,
            "below_resolution" => f.below_resolution = true,
            _ => match part.strip_prefix("error:") {
                Some(kind) => f.error = Some(kind.to_string()),
                None => return Err(Error::Config(format!("unknown flag {part:?}"))),
            },
        }
    }
    Ok(f)
}
