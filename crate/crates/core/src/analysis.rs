//! Quantitative collapse/revival observables extracted from intensity traces,
//! plus deterministic trace comparison.

use std::collections::VecDeque;

use thiserror::Error;

use crate::closedform::{envelope_coherent, envelope_number};
use crate::model::{ModelParams, PolaritonBasis};
use crate::state::{InitialState, IntensityTrace};

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error("time grids do not match")]
    GridMismatch,
    #[error("insufficient resolution: {0}")]
    InsufficientResolution(String),
    #[error("trace carries no oscillating signal")]
    FlatTrace,
    #[error("no collapse: {0}")]
    NoCollapse(String),
}

/// Collapse/revival summary of one intensity trace.
///
/// Revival times are located on the dissipation-compensated oscillation
/// contrast (the known e^{−(γ1+γ2)t/2} factor divided out), so decay lowers
/// the reported amplitudes without shifting the reported times. Amplitudes
/// are the uncompensated contrast at those instants, clipped to [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct RevivalReport {
    pub center_level: f64,
    pub carrier_frequency: f64,
    pub collapse_time: Option<f64>,
    pub revival_times: Vec<f64>,
    pub revival_amplitudes: Vec<f64>,
    pub grid_resolution: f64,
}

/// Elementwise difference summary between two traces on one grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceComparison {
    pub max_abs: f64,
    pub rms: f64,
    pub argmax_t: f64,
}

pub const DEFAULT_CONTRAST_THRESHOLD: f64 = 0.05;
pub const DEFAULT_REVIVAL_THRESHOLD: f64 = 0.5;

struct OscillationScan {
    center: f64,
    dt: f64,
    crossings: Vec<f64>,
    contrast: Vec<f64>,
    /// Smoothed quadrature envelope of the compensated oscillation, ≈ |E(t)|.
    envelope: Vec<f64>,
    /// Centroid weight, the smoothed squared envelope before normalization.
    envelope_weight: Vec<f64>,
    first_window_index: usize,
}

/// Centered moving average with edge-clamped windows.
fn boxcar(x: &[f64], half: usize) -> Vec<f64> {
    let n = x.len();
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0.0);
    let mut acc = 0.0;
    for &v in x {
        acc += v;
        prefix.push(acc);
    }
    (0..n)
        .map(|k| {
            let lo = k.saturating_sub(half);
            let hi = (k + half).min(n - 1);
            (prefix[hi + 1] - prefix[lo]) / (hi + 1 - lo) as f64
        })
        .collect()
}

/// Zero crossings of the mean-subtracted intensity, linearly interpolated.
fn zero_crossings(times: &[f64], osc: &[f64]) -> Vec<f64> {
    let mut crossings = Vec::new();
    let mut last_sign = 0.0f64;
    let mut last_idx = 0usize;
    for (k, &x) in osc.iter().enumerate() {
        let s = if x > 0.0 {
            1.0
        } else if x < 0.0 {
            -1.0
        } else {
            continue;
        };
        if last_sign != 0.0 && s != last_sign {
            let x0 = osc[last_idx];
            let frac = x0 / (x0 - x);
            let t = times[last_idx] + frac * (times[k] - times[last_idx]);
            crossings.push(t);
        }
        last_sign = s;
        last_idx = k;
    }
    crossings
}

/// Sliding min/max over a centered window of half-width `half`.
fn sliding_extrema(x: &[f64], half: usize) -> (Vec<f64>, Vec<f64>) {
    let n = x.len();
    let mut maxs = vec![0.0; n];
    let mut mins = vec![0.0; n];
    let mut max_dq: VecDeque<usize> = VecDeque::new();
    let mut min_dq: VecDeque<usize> = VecDeque::new();
    let mut right = 0usize;
    for k in 0..n {
        let lo = k.saturating_sub(half);
        let hi = (k + half).min(n - 1);
        while right <= hi {
            while let Some(&b) = max_dq.back() {
                if x[b] <= x[right] {
                    max_dq.pop_back();
                } else {
                    break;
                }
            }
            max_dq.push_back(right);
            while let Some(&b) = min_dq.back() {
                if x[b] >= x[right] {
                    min_dq.pop_back();
                } else {
                    break;
                }
            }
            min_dq.push_back(right);
            right += 1;
        }
        while let Some(&f) = max_dq.front() {
            if f < lo {
                max_dq.pop_front();
            } else {
                break;
            }
        }
        while let Some(&f) = min_dq.front() {
            if f < lo {
                min_dq.pop_front();
            } else {
                break;
            }
        }
        maxs[k] = x[*max_dq.front().expect("window nonempty")];
        mins[k] = x[*min_dq.front().expect("window nonempty")];
    }
    (maxs, mins)
}

fn scan_trace(trace: &IntensityTrace) -> Result<OscillationScan, AnalysisError> {
    let n = trace.len();
    if n < 16 {
        return Err(AnalysisError::InsufficientResolution(format!(
            "need at least 16 samples, got {n}"
        )));
    }
    let dt = trace.spacing();
    let center = trace.intensity.iter().sum::<f64>() / n as f64;
    if center <= 1e-300 {
        return Err(AnalysisError::FlatTrace);
    }
    let osc: Vec<f64> = trace.intensity.iter().map(|&i| i - center).collect();
    let crossings = zero_crossings(&trace.times, &osc);
    if crossings.len() < 4 {
        return Err(AnalysisError::InsufficientResolution(
            "fewer than 4 zero crossings of the oscillation".into(),
        ));
    }
    let probe = crossings.len().min(65);
    let half_period = (crossings[probe - 1] - crossings[0]) / (probe - 1) as f64;
    let half_period_samples = half_period / dt;
    if 2.0 * half_period_samples < 10.0 {
        return Err(AnalysisError::InsufficientResolution(format!(
            "{:.1} samples per carrier period, need >= 10",
            2.0 * half_period_samples
        )));
    }

    // contrast of the decay-compensated oscillation, one carrier period window
    let gs = trace.params.gamma_sum();
    let compensated: Vec<f64> = osc
        .iter()
        .zip(&trace.times)
        .map(|(&x, &t)| x * (gs * t / 2.0).min(700.0).exp())
        .collect();
    let half = ((half_period_samples).round() as usize).max(2);
    let (maxs, mins) = sliding_extrema(&compensated, half);
    let contrast: Vec<f64> = maxs
        .iter()
        .zip(&mins)
        .map(|(hi, lo)| (hi - lo) / (2.0 * center))
        .collect();

    // quadrature-demodulated envelope: x^2 + (x'/omega)^2 is carrier-free up
    // to a small 2-omega ripple, which a half-period boxcar removes; the
    // window-dilated contrast above cannot place revival peaks to one grid
    // step because its plateau edges alias against the carrier sampling
    let omega = std::f64::consts::PI / half_period;
    let sinc = (omega * dt).sin() / (omega * dt);
    let scale = 1.0 / (omega * sinc);
    let mut weight = vec![0.0f64; n];
    for k in 1..n - 1 {
        let d = (compensated[k + 1] - compensated[k - 1]) / (2.0 * dt) * scale;
        weight[k] = compensated[k] * compensated[k] + d * d;
    }
    weight[0] = weight[1];
    weight[n - 1] = weight[n - 2];
    let half_box = (half_period_samples / 2.0).round().max(1.0) as usize;
    let weight = boxcar(&weight, half_box);
    let envelope: Vec<f64> = weight.iter().map(|&w| w.max(0.0).sqrt() / center).collect();

    Ok(OscillationScan {
        center,
        dt,
        crossings,
        contrast,
        envelope,
        envelope_weight: weight,
        first_window_index: half,
    })
}

/// Detect collapse and revivals by sliding-window oscillation contrast.
///
/// `contrast_threshold` is the absolute contrast below which the oscillation
/// counts as collapsed; `revival_threshold` (relative to the first-window
/// contrast) gates which later contrast maxima count as revivals. Linear
/// traces, whose contrast never collapses, report no collapse rather than
/// fabricated times, and a revival whose envelope run is cut off by the end
/// of the trace is not reported.
pub fn detect_revivals(
    trace: &IntensityTrace,
    contrast_threshold: f64,
    revival_threshold: f64,
) -> Result<RevivalReport, AnalysisError> {
    let scan = scan_trace(trace)?;
    let n = trace.len();
    let gs = trace.params.gamma_sum();
    let k0 = scan.first_window_index.min(n - 1);

    let collapse_idx = (k0..n).find(|&k| scan.contrast[k] < contrast_threshold);
    let collapse_time = collapse_idx.map(|k| trace.times[k]);

    let mut revival_times = Vec::new();
    let mut revival_amplitudes = Vec::new();
    if let Some(start) = collapse_idx {
        // gate revivals on the demodulated envelope and place each one at the
        // weight centroid of its above-gate run: the envelope peaks are
        // symmetric, so the centroid lands within a fraction of a sample
        let c0_env = scan.envelope[k0];
        let gate = revival_threshold * c0_env;
        let mut k = start;
        while k < n {
            if scan.envelope[k] >= gate {
                let mut peak = k;
                let mut kk = k;
                let mut weighted_t = 0.0f64;
                let mut weight = 0.0f64;
                while kk < n && scan.envelope[kk] >= gate {
                    if scan.envelope[kk] > scan.envelope[peak] {
                        peak = kk;
                    }
                    let w = scan.envelope_weight[kk];
                    weighted_t += trace.times[kk] * w;
                    weight += w;
                    kk += 1;
                }
                // a run cut off by the end of the trace is an incomplete
                // measurement; its centroid would be biased, so skip it
                if kk < n {
                    let t_rev = if weight > 0.0 {
                        weighted_t / weight
                    } else {
                        trace.times[peak]
                    };
                    revival_times.push(t_rev);
                    let raw = scan.envelope[peak] * (-gs * trace.times[peak] / 2.0).exp();
                    revival_amplitudes.push(raw.clamp(0.0, 1.0));
                }
                k = kk;
            } else {
                k += 1;
            }
        }
    }

    let carrier_frequency = carrier_from_scan(trace, &scan, contrast_threshold)?;
    Ok(RevivalReport {
        center_level: scan.center,
        carrier_frequency,
        collapse_time,
        revival_times,
        revival_amplitudes,
        grid_resolution: scan.dt,
    })
}

fn carrier_from_scan(
    trace: &IntensityTrace,
    scan: &OscillationScan,
    contrast_threshold: f64,
) -> Result<f64, AnalysisError> {
    // restrict to the pre-collapse window: before the contrast first drops
    // under half of its initial value (or under the collapse threshold)
    let k0 = scan.first_window_index.min(trace.len() - 1);
    let c0 = scan.contrast[k0];
    let gate = (0.5 * c0).max(contrast_threshold);
    let t_pc = (k0..trace.len())
        .find(|&k| scan.contrast[k] < gate)
        .map(|k| trace.times[k])
        .unwrap_or(trace.times[trace.len() - 1]);
    let pre: Vec<f64> = scan
        .crossings
        .iter()
        .copied()
        .filter(|&t| t <= t_pc)
        .collect();
    let use_slice: &[f64] = if pre.len() >= 3 {
        &pre
    } else {
        let m = scan.crossings.len().min(65);
        &scan.crossings[..m]
    };
    if use_slice.len() < 3 {
        return Err(AnalysisError::InsufficientResolution(
            "too few pre-collapse zero crossings for a carrier estimate".into(),
        ));
    }
    let spacing = (use_slice[use_slice.len() - 1] - use_slice[0]) / (use_slice.len() - 1) as f64;
    Ok(std::f64::consts::PI / spacing)
}

/// Carrier angular frequency from mean zero-crossing spacing over the
/// pre-collapse window.
pub fn carrier_frequency(trace: &IntensityTrace) -> Result<f64, AnalysisError> {
    let scan = scan_trace(trace)?;
    carrier_from_scan(trace, &scan, DEFAULT_CONTRAST_THRESHOLD)
}

/// Closed-form collapse-time estimate: the first time the slow envelope
/// drops to e^{−1}. Errors when the nonlinear rate vanishes or the envelope
/// floor stays above e^{−1} (no collapse to detect).
pub fn collapse_time_estimate(
    state: &InitialState,
    _params: &ModelParams,
    basis: &PolaritonBasis,
) -> Result<f64, AnalysisError> {
    let chi = basis.chi().abs();
    if chi <= 0.0 {
        return Err(AnalysisError::NoCollapse(
            "effective nonlinear rate 2|2A12-A11-A22| vanishes".into(),
        ));
    }
    match state {
        InitialState::Number { n } => {
            if *n <= 1 {
                return Err(AnalysisError::NoCollapse(format!(
                    "number state N = {n} carries no slow envelope"
                )));
            }
            let u2 = basis.u * basis.u;
            let v2 = basis.v * basis.v;
            // |envelope|^2 = (u^4 + v^4 + 2 u^2 v^2 cos 2chi t)^{N-1}
            let target = (-2.0 / (*n as f64 - 1.0)).exp();
            let cos_val = (target - u2 * u2 - v2 * v2) / (2.0 * u2 * v2);
            if cos_val < -1.0 {
                return Err(AnalysisError::NoCollapse(
                    "envelope floor stays above 1/e at this detuning".into(),
                ));
            }
            Ok(cos_val.clamp(-1.0, 1.0).acos() / (2.0 * chi))
        }
        InitialState::Coherent { nbar, .. } => {
            if *nbar < 0.5 {
                return Err(AnalysisError::NoCollapse(format!(
                    "envelope floor e^(-2 nbar) stays above 1/e for nbar = {nbar}"
                )));
            }
            let cos_val = 1.0 - 1.0 / *nbar;
            Ok(cos_val.clamp(-1.0, 1.0).acos() / chi)
        }
    }
}

/// Elementwise comparison of two traces on the same grid.
pub fn compare_traces(
    a: &IntensityTrace,
    b: &IntensityTrace,
) -> Result<TraceComparison, AnalysisError> {
    if a.len() != b.len() || a.times != b.times {
        return Err(AnalysisError::GridMismatch);
    }
    let mut max_abs = 0.0f64;
    let mut argmax_t = a.times.first().copied().unwrap_or(0.0);
    let mut sum_sq = 0.0f64;
    for ((&t, &x), &y) in a.times.iter().zip(&a.intensity).zip(&b.intensity) {
        let d = (x - y).abs();
        sum_sq += d * d;
        if d > max_abs {
            max_abs = d;
            argmax_t = t;
        }
    }
    let rms = (sum_sq / a.len() as f64).sqrt();
    Ok(TraceComparison {
        max_abs,
        rms,
        argmax_t,
    })
}

/// The nonlinear modulation envelope for any initial state, as emitted in the
/// optional CSV column.
pub fn envelope_for_state(state: &InitialState, basis: &PolaritonBasis, t: f64) -> f64 {
    match state {
        InitialState::Number { n } => envelope_number(*n, basis, t),
        InitialState::Coherent { nbar, .. } => envelope_coherent(*nbar, basis, t),
    }
}
