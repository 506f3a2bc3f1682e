//! Collapse and revival of the emission for an exciton number state.
//!
//! Reproduces the strong-coupling scenario g = 1000 (in linewidth units),
//! A = 0.01 g: the Rabi oscillation at 2g collapses once the exciton-exciton
//! interaction dephases the number components, then revives at t = 2pi/A.
//!
//! Run with: cargo run --example number_state_revivals

use polariton_revival::analysis::{
    detect_revivals, DEFAULT_CONTRAST_THRESHOLD, DEFAULT_REVIVAL_THRESHOLD,
};
use polariton_revival::{build_polariton_basis, intensity_number, ModelParams, TimeGrid};

fn main() {
    let params = ModelParams::new(0.0, 0.0, 1000.0, 10.0, 0.0, 1.0, 1.0).unwrap();
    let basis = build_polariton_basis(&params).unwrap();
    let grid = TimeGrid::new(2.1, 40_000).unwrap();
    let n = 11;

    let trace = intensity_number(&params, &basis, n, &grid);
    let report = detect_revivals(
        &trace,
        DEFAULT_CONTRAST_THRESHOLD,
        DEFAULT_REVIVAL_THRESHOLD,
    )
    .unwrap();

    println!(
        "exciton number state N = {n}, g = {}, A = {}, gamma = 1",
        params.g, params.a
    );
    println!(
        "center level <I>          : {:.4}  (expect N/2 = {})",
        report.center_level,
        n / 2
    );
    println!(
        "carrier frequency         : {:.1}  (expect 2g = {})",
        report.carrier_frequency,
        2.0 * params.g
    );
    println!(
        "collapse time             : {:.4}",
        report.collapse_time.expect("nonlinear trace collapses")
    );
    println!(
        "revival period (expected) : {:.4}",
        2.0 * std::f64::consts::PI / params.a
    );
    for (k, (t, amp)) in report
        .revival_times
        .iter()
        .zip(&report.revival_amplitudes)
        .enumerate()
    {
        println!("revival {k}                 : t = {t:.4}, amplitude = {amp:.3}");
    }
    println!();
    println!("start of the trace (t in 1/gamma, intensity):");
    for k in (0..400).step_by(80) {
        println!("  {:8.5}  {:8.5}", trace.times[k], trace.intensity[k]);
    }
}
