//! Estimate the nonlinear constants from quantum-well material data:
//! A = 3·Ry_ex·a_ex²/S from the exciton-exciton Coulomb interaction and
//! B = g/(n_sat·S) from phase-space filling, n_sat = 7/(16π·a_ex²).
//!
//! Numbers below sketch a GaAs-like quantum well with energies in meV and
//! lengths in nm; the ratio A/B is area-independent.
//!
//! Run with: cargo run --example material_constants

use polariton_revival::{material_coefficients, MaterialInputs, ModelParams};

fn main() {
    let ry_ex = 10.0; // exciton binding energy, meV
    let a_ex = 10.0; // 2-D Bohr radius, nm
    let g = 2.0; // half the Rabi splitting, meV

    println!("Ry_ex = {ry_ex} meV, a_ex = {a_ex} nm, g = {g} meV");
    println!(
        "{:>14} {:>12} {:>12} {:>10}",
        "S (nm^2)", "A (meV)", "B (meV)", "A/B"
    );
    for area in [1e4, 1e5, 1e6] {
        let inputs = MaterialInputs::new(ry_ex, a_ex, area, g).unwrap();
        let (a, b) = material_coefficients(&inputs);
        println!("{area:>14.0} {a:>12.5} {b:>12.5} {:>10.4}", a / b);
    }

    // how many excitations fit the weak-nonlinearity window at S = 1e5 nm^2
    let inputs = MaterialInputs::new(ry_ex, a_ex, 1e5, g).unwrap();
    let (a, b) = material_coefficients(&inputs);
    let params = ModelParams::new(0.0, 0.0, g, a, b, 0.0, 0.0).unwrap();
    let n_limit = (0.2 * g / a.max(b)).floor();
    println!();
    println!(
        "with S = 1e5 nm^2: A = {a:.4} meV, B = {b:.4} meV; the analytic formulas \
         stay inside the advisory up to ~{n_limit} excitations \
         (weakly_nonlinear(10) = {})",
        params.weakly_nonlinear(10.0)
    );
}
