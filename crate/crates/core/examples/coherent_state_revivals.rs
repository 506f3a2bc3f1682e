//! An excitonic coherent state revives at t = 4pi/A, twice the number-state
//! period, because the Poisson spread over number components rephases only
//! after two number-state revival cycles.
//!
//! Run with: cargo run --example coherent_state_revivals

use polariton_revival::analysis::{
    detect_revivals, DEFAULT_CONTRAST_THRESHOLD, DEFAULT_REVIVAL_THRESHOLD,
};
use polariton_revival::{
    build_polariton_basis, intensity_coherent, intensity_number, ModelParams, TimeGrid,
};

fn main() {
    let params = ModelParams::new(0.0, 0.0, 1000.0, 10.0, 0.0, 0.0, 0.0).unwrap();
    let basis = build_polariton_basis(&params).unwrap();
    let pi = std::f64::consts::PI;

    let number_grid = TimeGrid::new(3.3 * 2.0 * pi / params.a, 40_000).unwrap();
    let number = intensity_number(&params, &basis, 11, &number_grid);
    let rep_n = detect_revivals(
        &number,
        DEFAULT_CONTRAST_THRESHOLD,
        DEFAULT_REVIVAL_THRESHOLD,
    )
    .unwrap();

    let coherent_grid = TimeGrid::new(2.3 * 4.0 * pi / params.a, 40_000).unwrap();
    let coherent = intensity_coherent(&params, &basis, 11.0, &coherent_grid);
    let rep_c = detect_revivals(
        &coherent,
        DEFAULT_CONTRAST_THRESHOLD,
        DEFAULT_REVIVAL_THRESHOLD,
    )
    .unwrap();

    let spacing_n = rep_n.revival_times[1] - rep_n.revival_times[0];
    let spacing_c = rep_c.revival_times[1] - rep_c.revival_times[0];
    println!("initial excitation 11, g = 1000, A = 0.01g, no dissipation");
    println!(
        "number state revival period   : {spacing_n:.5}  (2pi/A = {:.5})",
        2.0 * pi / params.a
    );
    println!(
        "coherent state revival period : {spacing_c:.5}  (4pi/A = {:.5})",
        4.0 * pi / params.a
    );
    println!(
        "ratio                         : {:.4}",
        spacing_c / spacing_n
    );
    println!();
    println!(
        "collapse times: coherent {:.4}, number {:.4}; the Poisson number spread",
        rep_c.collapse_time.unwrap(),
        rep_n.collapse_time.unwrap()
    );
    println!("keeps coherent-state contrast visible even below one excitation on average.");
}
