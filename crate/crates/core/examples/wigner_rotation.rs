//! The polariton transformation is a rotation by 2θ generated by the
//! Schwinger J_y, so block propagation can run two independent ways: numeric
//! eigendecomposition of the block Hamiltonian, or Wigner-d rotation into the
//! polariton number basis plus analytic phases. This example shows the
//! top-row d elements, the ladder recursion, and the two paths agreeing.
//!
//! Run with: cargo run --example wigner_rotation

use num_complex::Complex64;
use polariton_revival::oracle::{build_block, evolve_block, BlockMode, PropagationPath};
use polariton_revival::wigner::{d_top_row, d_top_row_recursive};
use polariton_revival::{build_polariton_basis, ModelParams};

fn main() {
    // top-row elements for j = 2 at a representative angle
    let phi = 0.9;
    println!("d^2_(2,m)({phi}) closed form vs ladder recursion:");
    for two_m in [-4i64, -2, 0, 2, 4] {
        let closed = d_top_row(4, two_m, phi).unwrap();
        let ladder = d_top_row_recursive(4, two_m, phi).unwrap();
        println!(
            "  m = {:>4}: {closed:>12.8} {ladder:>12.8}",
            two_m as f64 / 2.0
        );
    }

    // both propagation paths on a detuned 8-excitation block
    let params = ModelParams::new(300.0, 0.0, 1000.0, 10.0, 3.0, 0.0, 0.0).unwrap();
    let basis = build_polariton_basis(&params).unwrap();
    let block = build_block(&params, &basis, 8, BlockMode::Secular);
    let mut amps = vec![Complex64::new(0.0, 0.0); 9];
    amps[8] = Complex64::new(1.0, 0.0); // all excitons, vacuum photons

    let t = 0.37;
    let spectral = evolve_block(&block, &amps, t, PropagationPath::MatrixSpectral).unwrap();
    let rotation = evolve_block(&block, &amps, t, PropagationPath::PolaritonRotation).unwrap();
    let worst = spectral
        .iter()
        .zip(&rotation)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max);

    println!();
    println!(
        "n_total = 8, theta = {:.4}: evolved amplitude magnitudes at t = {t}",
        basis.theta
    );
    println!(
        "{:>10} {:>18} {:>18}",
        "excitons", "matrix spectral", "wigner rotation"
    );
    for (k, (a, b)) in spectral.iter().zip(&rotation).enumerate() {
        println!("{k:>10} {:>18.12} {:>18.12}", a.norm(), b.norm());
    }
    println!("worst amplitude deviation between the paths: {worst:.2e}");
}
