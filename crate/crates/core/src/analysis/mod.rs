//! Observables extracted from simulated traces, regime labels and parameter
//! scans.

mod csv;
mod regime;
mod scan;
mod spectrum;

pub use csv::{format_float, parse_flags, parse_scan_csv, ScanRow, SCAN_CSV_HEADER};
pub use regime::{classify_regime, classify_regime_with, Regime, RegimeLabel, RegimeThresholds};
pub use scan::{
    measure_resonance_width, scan_resonance_map, Axis, CellFlags, Grid, RunSizing, ScanCell,
    ScanConfig, ScanResult, WidthMeasurement, MAX_SCAN_CELLS,
};
pub use spectrum::{extract_frequency, FrequencyEstimate, FrequencyOptions, SUPPRESSED_AMPLITUDE};
