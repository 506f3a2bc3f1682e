//! At resonance, phase-space filling leaves the revival clock untouched and
//! only drags the fast carrier: the exciton-photon matrix element saturates
//! as g − B(n−1), so the oscillation frequency moves from 2g to 2g − B(N−1).
//!
//! Run with: cargo run --example phase_space_filling

use polariton_revival::analysis::{
    carrier_frequency, detect_revivals, DEFAULT_CONTRAST_THRESHOLD, DEFAULT_REVIVAL_THRESHOLD,
};
use polariton_revival::{intensity_number_resonant, ModelParams, TimeGrid};

fn main() {
    let g = 1000.0;
    let a = 10.0;
    let n = 10;
    let grid = TimeGrid::new(2.2 * 2.0 * std::f64::consts::PI / a, 40_000).unwrap();

    println!("resonant number state N = {n}, A = 0.01g");
    println!(
        "{:>8} {:>16} {:>18} {:>16}",
        "B/A", "carrier (meas.)", "2g - B(N-1)", "revival period"
    );
    for bfrac in [0.0, 0.15, 0.3] {
        let b = bfrac * a;
        let params = ModelParams::new(0.0, 0.0, g, a, b, 0.0, 0.0).unwrap();
        let trace = intensity_number_resonant(&params, n, &grid).unwrap();
        let carrier = carrier_frequency(&trace).unwrap();
        let report = detect_revivals(
            &trace,
            DEFAULT_CONTRAST_THRESHOLD,
            DEFAULT_REVIVAL_THRESHOLD,
        )
        .unwrap();
        let spacing = report.revival_times[1] - report.revival_times[0];
        println!(
            "{bfrac:>8.2} {carrier:>16.2} {:>18.2} {spacing:>16.5}",
            2.0 * g - b * (n as f64 - 1.0)
        );
    }
    println!();
    println!(
        "revival period stays 2pi/A = {:.5} for every B.",
        2.0 * std::f64::consts::PI / a
    );
}
