use std::f64::consts::TAU;

use rustfft::{num_complex::Complex64 as C64, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::dynamics::TimeSeries;
use crate::error::{Error, Result};

/// Peak-to-peak amplitude below which an oscillation counts as suppressed.
pub const SUPPRESSED_AMPLITUDE: f64 = 0.02;

const MIN_SAMPLES: usize = 16;
const ZERO_PAD: usize = 4;
/// Samples kept per smoothing window after coarse-graining.
const SAMPLES_PER_WINDOW: usize = 8;
/// Magnitude ratio of a 3 dB power difference.
const THREE_DB: f64 = std::f64::consts::FRAC_1_SQRT_2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FrequencyOptions {
    /// Boxcar window (time units) applied before the spectrum, normally one
    /// drive period. Zero disables smoothing.
    pub smoothing: f64,
    /// Restrict the peak search to this angular-frequency interval.
    pub band: Option<(f64, f64)>,
}

impl FrequencyOptions {
    pub fn coarse_grained(drive_period: f64) -> Self {
        Self {
            smoothing: drive_period,
            band: None,
        }
    }

    pub fn with_band(mut self, lo: f64, hi: f64) -> Self {
        self.band = Some((lo, hi));
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrequencyEstimate {
    /// Angular frequency of the dominant slow oscillation.
    pub omega_est: f64,
    /// Peak-to-peak of the coarse-grained trace.
    pub amplitude: f64,
    /// Spectral peak over the median spectral magnitude.
    pub confidence: f64,
    pub suppressed: bool,
    /// A second peak lies within 3 dB of the main one.
    pub ambiguous: bool,
    /// Fewer than three periods of `omega_est` fit in the trace.
    pub below_resolution: bool,
}

/// Moving average over `w` samples ("valid" part only).
fn boxcar(values: &[f64], w: usize) -> Vec<f64> {
    if w <= 1 {
        return values.to_vec();
    }
    let mut prefix = Vec::with_capacity(values.len() + 1);
    prefix.push(0.0);
    let mut acc = 0.0;
    for v in values {
        acc += v;
        prefix.push(acc);
    }
    (0..=values.len() - w)
        .map(|i| (prefix[i + w] - prefix[i]) / w as f64)
        .collect()
}

/// Dominant frequency of the coarse-grained trace: boxcar smoothing, mean
/// removal, Hann window, zero-padded FFT, parabolic interpolation of the log
/// magnitude around the highest non-DC bin.
pub fn extract_frequency(ts: &TimeSeries, opts: &FrequencyOptions) -> Result<FrequencyEstimate> {
    if ts.len() < MIN_SAMPLES {
        return Err(Error::InsufficientData(format!(
            "need at least {MIN_SAMPLES} samples, got {}",
            ts.len()
        )));
    }
    let window = if opts.smoothing > 0.0 {
        (opts.smoothing / ts.dt).round() as usize
    } else {
        1
    };
    if window >= ts.len() / 2 {
        return Err(Error::InsufficientData(format!(
            "trace of {} samples is too short for a {window}-sample smoothing window",
            ts.len()
        )));
    }
    let smooth = boxcar(&ts.values, window);
    let stride = (window / SAMPLES_PER_WINDOW).max(1);
    let samples: Vec<f64> = smooth.iter().step_by(stride).copied().collect();
    let dt = ts.dt * stride as f64;
    if samples.len() < MIN_SAMPLES {
        return Err(Error::InsufficientData(
            "too few samples after coarse-graining".into(),
        ));
    }

    let (lo, hi) = smooth
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let amplitude = (hi - lo).clamp(0.0, 1.0);

    let m = samples.len();
    let mean = samples.iter().sum::<f64>() / m as f64;
    let n_fft = (ZERO_PAD * m).next_power_of_two();
    let mut buf = vec![C64::new(0.0, 0.0); n_fft];
    for (i, v) in samples.iter().enumerate() {
        let hann = 0.5 - 0.5 * (TAU * i as f64 / (m - 1) as f64).cos();
        buf[i] = C64::new((v - mean) * hann, 0.0);
    }
    FftPlanner::new().plan_fft_forward(n_fft).process(&mut buf);
    let mags: Vec<f64> = buf[..=n_fft / 2].iter().map(|c| c.norm()).collect();

    let bin_omega = TAU / (n_fft as f64 * dt);
    // Skip the DC main lobe (one unpadded bin).
    let pad = n_fft as f64 / m as f64;
    let mut k_lo = pad.ceil() as usize;
    let mut k_hi = n_fft / 2 - 1;
    if let Some((b_lo, b_hi)) = opts.band {
        if !(b_lo >= 0.0 && b_hi > b_lo) {
            return Err(Error::Config(format!(
                "invalid frequency band [{b_lo}, {b_hi}]"
            )));
        }
        k_lo = k_lo.max((b_lo / bin_omega).ceil() as usize);
        k_hi = k_hi.min((b_hi / bin_omega).floor() as usize);
    }
    if k_lo + 2 > k_hi {
        return Err(Error::InsufficientData(
            "frequency band holds too few spectral bins".into(),
        ));
    }
    let band = &mags[k_lo..=k_hi];
    let (peak_rel, &peak) = band
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty band");
    let k = k_lo + peak_rel;

    let offset = if k > k_lo && k < k_hi && peak > 0.0 {
        let (a, b, c) = (
            mags[k - 1].max(1e-300).ln(),
            peak.ln(),
            mags[k + 1].max(1e-300).ln(),
        );
        let denom = a - 2.0 * b + c;
        if denom < 0.0 {
            (0.5 * (a - c) / denom).clamp(-0.5, 0.5)
        } else {
            0.0
        }
    } else {
        0.0
    };
    let omega_est = (k as f64 + offset) * bin_omega;

    let mut sorted = band.to_vec();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2];
    let confidence = if median > 0.0 {
        peak / median
    } else {
        f64::INFINITY
    };

    // Local maxima outside the main lobe of the peak (two unpadded bins).
    let lobe = (2.0 * pad).ceil() as usize;
    let ambiguous = (1..band.len() - 1).any(|i| {
        let j = k_lo + i;
        j.abs_diff(k) > lobe
            && band[i] >= band[i - 1]
            && band[i] >= band[i + 1]
            && band[i] >= THREE_DB * peak
    });

    let duration = dt * (m - 1) as f64;
    Ok(FrequencyEstimate {
        omega_est,
        amplitude,
        confidence,
        suppressed: amplitude < SUPPRESSED_AMPLITUDE,
        ambiguous,
        below_resolution: omega_est * duration < 3.0 * TAU,
    })
}
