//! Brute-force ground truth: exact state-vector propagation in the truncated
//! two-mode Fock space.
//!
//! Total excitation is conserved by both the full and the secular Hamiltonian,
//! so the space splits into blocks of fixed `n_total`. Within a block the
//! basis is ordered by exciton count: index k holds k excitons and
//! `n_total − k` photons. Blocks are propagated by exact eigendecomposition
//! (no time stepping), and the emission intensity is assembled as
//! u²⟨p2†p2⟩ + v²⟨p1†p1⟩ − 2uv·Re{e^{−(γ1+γ2)t/2}·⟨p1†p2⟩}, with the decay
//! factor on the cross-coherence only, mirroring the analytic treatment.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::model::{ModelParams, PolaritonBasis};
use crate::state::{InitialState, IntensityTrace, Method, TimeGrid, Truncation};
use crate::wigner;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("the full-Hamiltonian oracle has no decay channel; set gamma1 = gamma2 = 0")]
    DecayRequiresSecular,
    #[error("the polariton-rotation path is defined only for secular blocks")]
    RotationRequiresSecular,
}

/// Which Hamiltonian a block carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockMode {
    /// Number-conserving effective polariton Hamiltonian.
    Secular,
    /// The untruncated quartic model Hamiltonian.
    Full,
}

/// How to propagate a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropagationPath {
    /// Numeric eigendecomposition of the block Hamiltonian.
    MatrixSpectral,
    /// Rotate by the Wigner-d polariton rotation, apply the analytic secular
    /// spectrum, rotate back.
    PolaritonRotation,
}

/// One conserved-excitation block with its Hamiltonian and the operators
/// needed to assemble the intensity.
#[derive(Debug, Clone)]
pub struct FockBlock {
    pub n_total: u64,
    pub dim: usize,
    pub mode: BlockMode,
    pub params: ModelParams,
    pub basis: PolaritonBasis,
    pub hamiltonian: DMatrix<f64>,
    /// Set when n_total · max(A, B) exceeds the weak-nonlinearity advisory.
    pub weak_nonlinearity_flagged: bool,
}

/// Polariton spectrum of the secular Hamiltonian:
/// E(n1, n2) = ω1·n1 + ω2·n2 + A11·n1(n1−1) + A22·n2(n2−1) + 2A12·n1·n2.
pub fn secular_spectrum(basis: &PolaritonBasis, n1: u64, n2: u64) -> f64 {
    let (n1, n2) = (n1 as f64, n2 as f64);
    basis.omega1 * n1
        + basis.omega2 * n2
        + basis.a11 * n1 * (n1 - 1.0)
        + basis.a22 * n2 * (n2 - 1.0)
        + 2.0 * basis.a12 * n1 * n2
}

/// Build the block Hamiltonian for fixed total excitation.
pub fn build_block(
    params: &ModelParams,
    basis: &PolaritonBasis,
    n_total: u64,
    mode: BlockMode,
) -> FockBlock {
    let n = n_total as usize;
    let dim = n + 1;
    let hamiltonian = match mode {
        BlockMode::Full => {
            let mut h = DMatrix::zeros(dim, dim);
            for k in 0..dim {
                let kf = k as f64;
                let photons = (n - k) as f64;
                h[(k, k)] =
                    params.omega_c * photons + params.omega_ex * kf + params.a * kf * (kf - 1.0);
            }
            // g(a†b + b†a) − B(b†b†ba + a†b†bb): a saturating coupling whose
            // matrix element at k excitons is (g − B·k)·√((k+1)(n−k))
            for k in 0..n {
                let elem =
                    ((k + 1) as f64 * (n - k) as f64).sqrt() * (params.g - params.b * k as f64);
                h[(k + 1, k)] = elem;
                h[(k, k + 1)] = elem;
            }
            h
        }
        BlockMode::Secular => {
            let (n1, n2) = polariton_number_ops(basis, n_total);
            let mut h = &n1 * basis.omega1 + &n2 * basis.omega2;
            h += (&n1 * &n1 - &n1) * basis.a11;
            h += (&n2 * &n2 - &n2) * basis.a22;
            h += (&n1 * &n2) * (2.0 * basis.a12);
            h
        }
    };
    FockBlock {
        n_total,
        dim,
        mode,
        params: *params,
        basis: *basis,
        hamiltonian,
        weak_nonlinearity_flagged: !params.weakly_nonlinear(n_total as f64),
    }
}

/// Polariton number operators n1 = p1†p1 and n2 = p2†p2 restricted to the
/// block, from p1 = −v·a + u·b and p2 = u·a + v·b.
fn polariton_number_ops(basis: &PolaritonBasis, n_total: u64) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = n_total as usize;
    let dim = n + 1;
    let (u, v) = (basis.u, basis.v);
    let mut n1 = DMatrix::zeros(dim, dim);
    let mut n2 = DMatrix::zeros(dim, dim);
    for k in 0..dim {
        let excitons = k as f64;
        let photons = (n - k) as f64;
        n1[(k, k)] = v * v * photons + u * u * excitons;
        n2[(k, k)] = u * u * photons + v * v * excitons;
    }
    for k in 0..n {
        let x = ((k + 1) as f64 * (n - k) as f64).sqrt();
        n1[(k + 1, k)] = -u * v * x;
        n1[(k, k + 1)] = -u * v * x;
        n2[(k + 1, k)] = u * v * x;
        n2[(k, k + 1)] = u * v * x;
    }
    (n1, n2)
}

/// Cross operator p1†p2 = −uv·a†a + uv·b†b − v²·a†b + u²·b†a on the block.
fn cross_op(basis: &PolaritonBasis, n_total: u64) -> DMatrix<f64> {
    let n = n_total as usize;
    let dim = n + 1;
    let (u, v) = (basis.u, basis.v);
    let mut p = DMatrix::zeros(dim, dim);
    for k in 0..dim {
        p[(k, k)] = u * v * (k as f64 - (n - k) as f64);
    }
    for k in 0..n {
        let x = ((k + 1) as f64 * (n - k) as f64).sqrt();
        p[(k + 1, k)] = u * u * x; // b†a
        p[(k, k + 1)] = -v * v * x; // a†b
    }
    p
}

impl FockBlock {
    /// Schwinger J_y on the block, (b†a − a†b)/(2i). Its exponential
    /// exp(2iθ·J_y) is the polariton rotation; the n_total = 1 block then
    /// reproduces the 2×2 Hopfield rotation exactly, which pins the sign
    /// conventions of the Wigner-d route.
    pub fn jy_matrix(&self) -> DMatrix<Complex64> {
        let n = self.n_total as usize;
        let dim = n + 1;
        let mut jy = DMatrix::zeros(dim, dim);
        for k in 0..n {
            let x = ((k + 1) as f64 * (n - k) as f64).sqrt();
            jy[(k + 1, k)] = Complex64::new(0.0, -0.5 * x);
            jy[(k, k + 1)] = Complex64::new(0.0, 0.5 * x);
        }
        jy
    }

    /// Eigendecomposition, computed once per block when propagating traces.
    pub fn spectral(&self) -> BlockSpectral {
        let eig = self.hamiltonian.clone().symmetric_eigen();
        BlockSpectral {
            eigenvalues: eig.eigenvalues,
            eigenvectors: eig.eigenvectors,
        }
    }
}

/// Cached spectral decomposition of a block Hamiltonian.
pub struct BlockSpectral {
    pub eigenvalues: nalgebra::DVector<f64>,
    pub eigenvectors: DMatrix<f64>,
}

impl BlockSpectral {
    /// Coefficients of the amplitudes in the eigenbasis.
    pub fn project(&self, amplitudes: &[Complex64]) -> Vec<Complex64> {
        let dim = amplitudes.len();
        let v = &self.eigenvectors;
        (0..dim)
            .map(|p| {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..dim {
                    acc += v[(k, p)] * amplitudes[k];
                }
                acc
            })
            .collect()
    }

    /// e^{−iHt} applied to already-projected coefficients.
    pub fn evolve_projected(&self, projected: &[Complex64], t: f64) -> Vec<Complex64> {
        let dim = projected.len();
        let v = &self.eigenvectors;
        let phased: Vec<Complex64> = (0..dim)
            .map(|p| projected[p] * Complex64::from_polar(1.0, -self.eigenvalues[p] * t))
            .collect();
        (0..dim)
            .map(|k| {
                let mut acc = Complex64::new(0.0, 0.0);
                for p in 0..dim {
                    acc += v[(k, p)] * phased[p];
                }
                acc
            })
            .collect()
    }

    /// e^{−iHt} applied through the eigenbasis.
    pub fn evolve(&self, amplitudes: &[Complex64], t: f64) -> Vec<Complex64> {
        self.evolve_projected(&self.project(amplitudes), t)
    }
}

/// Propagate block amplitudes to time `t` along the requested path.
pub fn evolve_block(
    block: &FockBlock,
    amplitudes: &[Complex64],
    t: f64,
    path: PropagationPath,
) -> Result<Vec<Complex64>, OracleError> {
    assert_eq!(
        amplitudes.len(),
        block.dim,
        "amplitude length must match block dimension"
    );
    match path {
        PropagationPath::MatrixSpectral => Ok(block.spectral().evolve(amplitudes, t)),
        PropagationPath::PolaritonRotation => {
            if block.mode != BlockMode::Secular {
                return Err(OracleError::RotationRequiresSecular);
            }
            Ok(rotation_evolve(&block.basis, block.n_total, amplitudes, t))
        }
    }
}

/// The analytic secular propagator: rotate into the polariton number basis
/// with U = exp(2iθ·J_y) (Wigner d elements d^j_{m',m}(−2θ)), phase with the
/// spectrum at (n1, n2) = (n_total − k', k'), rotate back.
fn rotation_evolve(
    basis: &PolaritonBasis,
    n_total: u64,
    amplitudes: &[Complex64],
    t: f64,
) -> Vec<Complex64> {
    let dim = n_total as usize + 1;
    let rot = wigner::d_matrix(n_total as i64, -2.0 * basis.theta);
    let mut rotated = vec![Complex64::new(0.0, 0.0); dim];
    for kp in 0..dim {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..dim {
            acc += rot[(kp, k)] * amplitudes[k];
        }
        let n2 = kp as u64;
        let n1 = n_total - n2;
        rotated[kp] = acc * Complex64::from_polar(1.0, -secular_spectrum(basis, n1, n2) * t);
    }
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    for k in 0..dim {
        let mut acc = Complex64::new(0.0, 0.0);
        for kp in 0..dim {
            acc += rot[(kp, k)] * rotated[kp];
        }
        out[k] = acc;
    }
    out
}

/// Sparse multi-block state of the two-mode system.
#[derive(Debug, Clone)]
pub struct StateVector {
    /// Complex amplitudes per conserved total-excitation block, basis index
    /// counting excitons.
    pub blocks: BTreeMap<u64, Vec<Complex64>>,
    pub truncation: Option<Truncation>,
}

impl StateVector {
    /// Expand an initial state over number blocks. Coherent states are
    /// truncated at [`coherent_truncation`] and renormalized; the coherent
    /// phase multiplies each conserved block globally and is therefore
    /// unobservable under number-conserving dynamics, so amplitudes are kept
    /// real and the output is bit-identical for any `phi`.
    pub fn from_initial(state: &InitialState) -> StateVector {
        match state {
            InitialState::Number { n } => {
                let mut amps = vec![Complex64::new(0.0, 0.0); *n as usize + 1];
                amps[*n as usize] = Complex64::new(1.0, 0.0);
                let mut blocks = BTreeMap::new();
                blocks.insert(*n, amps);
                StateVector {
                    blocks,
                    truncation: None,
                }
            }
            InitialState::Coherent { nbar, .. } => {
                let n_max = coherent_truncation(*nbar);
                let weights = poisson_amplitudes(*nbar, n_max);
                let norm: f64 = weights.iter().map(|w| w * w).sum();
                let scale = 1.0 / norm.sqrt();
                let mut blocks = BTreeMap::new();
                for (n, w) in weights.iter().enumerate() {
                    if *w == 0.0 {
                        continue;
                    }
                    let mut amps = vec![Complex64::new(0.0, 0.0); n + 1];
                    amps[n] = Complex64::new(w * scale, 0.0);
                    blocks.insert(n as u64, amps);
                }
                StateVector {
                    blocks,
                    truncation: Some(Truncation {
                        n_max,
                        renormalized: true,
                    }),
                }
            }
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.blocks
            .values()
            .map(|amps| amps.iter().map(|c| c.norm_sqr()).sum::<f64>())
            .sum()
    }
}

/// Total-excitation expectation Σ n_total · (block probability).
pub fn expectation_total_number(state: &StateVector) -> f64 {
    state
        .blocks
        .iter()
        .map(|(n, amps)| *n as f64 * amps.iter().map(|c| c.norm_sqr()).sum::<f64>())
        .sum()
}

/// Smallest Fock cutoff whose Poisson tail mass is below 1e-12, floored at
/// nbar + 10·√nbar + 10 so the truncation error stays far below every
/// comparison tolerance.
pub fn coherent_truncation(nbar: f64) -> u64 {
    let floor = (nbar + 10.0 * nbar.sqrt() + 10.0).ceil() as u64;
    if nbar == 0.0 {
        return floor;
    }
    let mut pmf = (-nbar).exp();
    let mut cdf = pmf;
    let mut k: u64 = 0;
    // walk the pmf until the remaining tail is negligible
    while 1.0 - cdf >= 1e-12 && k < 100_000 {
        k += 1;
        pmf *= nbar / k as f64;
        cdf += pmf;
    }
    k.max(floor)
}

/// Number-basis amplitudes e^{−nbar/2}·nbar^{n/2}/√(n!) for n = 0..=n_max.
fn poisson_amplitudes(nbar: f64, n_max: u64) -> Vec<f64> {
    if nbar == 0.0 {
        let mut w = vec![0.0; n_max as usize + 1];
        w[0] = 1.0;
        return w;
    }
    let lnf = wigner::ln_factorials(n_max as usize);
    (0..=n_max)
        .map(|n| (-nbar / 2.0 + 0.5 * n as f64 * nbar.ln() - 0.5 * lnf[n as usize]).exp())
        .collect()
}

/// Exact intensity trace from blockwise propagation.
///
/// The γ-free evolved state supplies all expectations; dissipation enters
/// only as the e^{−(γ1+γ2)t/2} factor on the cross-coherence. The full-mode
/// oracle therefore rejects nonzero linewidths.
pub fn oracle_intensity(
    params: &ModelParams,
    basis: &PolaritonBasis,
    state: &InitialState,
    grid: &TimeGrid,
    mode: BlockMode,
) -> Result<IntensityTrace, OracleError> {
    if mode == BlockMode::Full && params.gamma_sum() != 0.0 {
        return Err(OracleError::DecayRequiresSecular);
    }
    let initial = StateVector::from_initial(state);
    let times = grid.times();
    let mut intensity = vec![0.0f64; times.len()];
    let (u, v) = (basis.u, basis.v);
    let gs = params.gamma_sum();

    for (&n_total, amps) in &initial.blocks {
        if n_total == 0 {
            continue;
        }
        let block = build_block(params, basis, n_total, mode);
        let spectral = block.spectral();
        let projected = spectral.project(amps);
        let (n1_op, n2_op) = polariton_number_ops(basis, n_total);
        let p12_op = cross_op(basis, n_total);

        // polariton populations are constants of motion under the secular
        // Hamiltonian; evaluate them once there
        let static_pops = if mode == BlockMode::Secular {
            Some((quadratic_form(&n1_op, amps), quadratic_form(&n2_op, amps)))
        } else {
            None
        };

        for (idx, &t) in times.iter().enumerate() {
            let c = spectral.evolve_projected(&projected, t);
            let (e1, e2) = match static_pops {
                Some(pops) => pops,
                None => (quadratic_form(&n1_op, &c), quadratic_form(&n2_op, &c)),
            };
            let z = bilinear_form(&p12_op, &c);
            let cross = 2.0 * (Complex64::new((-gs * t / 2.0).exp(), 0.0) * z).re;
            intensity[idx] += u * u * e2 + v * v * e1 - u * v * cross;
        }
    }

    let method = match mode {
        BlockMode::Secular => Method::OracleSecular,
        BlockMode::Full => Method::OracleFull,
    };
    let mut trace = IntensityTrace::new(times, intensity, method, *state, *params);
    trace.truncation = initial.truncation;
    Ok(trace)
}

/// ⟨c|M|c⟩ for real symmetric M; the imaginary residue is discarded.
fn quadratic_form(m: &DMatrix<f64>, c: &[Complex64]) -> f64 {
    let z = bilinear_form(m, c);
    debug_assert!(z.im.abs() <= 1e-12 * (1.0 + z.re.abs()));
    z.re
}

/// ⟨c|M|c⟩ for a real (not necessarily symmetric) matrix M.
fn bilinear_form(m: &DMatrix<f64>, c: &[Complex64]) -> Complex64 {
    let dim = c.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..dim {
        let mut row = Complex64::new(0.0, 0.0);
        for j in 0..dim {
            row += m[(i, j)] * c[j];
        }
        acc += c[i].conj() * row;
    }
    acc
}

/// Evolve every block of a state, mostly for conservation checks.
pub fn evolve_state(
    params: &ModelParams,
    basis: &PolaritonBasis,
    state: &StateVector,
    t: f64,
    mode: BlockMode,
    path: PropagationPath,
) -> Result<StateVector, OracleError> {
    let mut blocks = BTreeMap::new();
    for (&n_total, amps) in &state.blocks {
        let block = build_block(params, basis, n_total, mode);
        blocks.insert(n_total, evolve_block(&block, amps, t, path)?);
    }
    Ok(StateVector {
        blocks,
        truncation: state.truncation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_polariton_basis;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn setup(delta: f64, g: f64, a: f64, b: f64, gamma: f64) -> (ModelParams, PolaritonBasis) {
        let p = ModelParams::new(delta, 0.0, g, a, b, gamma, gamma).unwrap();
        let basis = build_polariton_basis(&p).unwrap();
        (p, basis)
    }

    #[test]
    fn vacuum_block_is_trivial() {
        let (p, basis) = setup(0.4, 1.0, 0.1, 0.05, 0.0);
        for mode in [BlockMode::Full, BlockMode::Secular] {
            let block = build_block(&p, &basis, 0, mode);
            assert_eq!(block.dim, 1);
            assert_abs_diff_eq!(block.hamiltonian[(0, 0)], 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn single_excitation_block_is_the_hopfield_matrix() {
        let (p, basis) = setup(0.7, 1.3, 0.2, 0.15, 0.0);
        for mode in [BlockMode::Full, BlockMode::Secular] {
            let block = build_block(&p, &basis, 1, mode);
            assert_abs_diff_eq!(block.hamiltonian[(0, 0)], p.omega_c, epsilon = 1e-12);
            assert_abs_diff_eq!(block.hamiltonian[(1, 1)], p.omega_ex, epsilon = 1e-12);
            assert_abs_diff_eq!(block.hamiltonian[(0, 1)], p.g, epsilon = 1e-12);
            assert_abs_diff_eq!(block.hamiltonian[(1, 0)], p.g, epsilon = 1e-12);
        }
    }

    #[test]
    fn two_excitation_secular_eigenvalues() {
        let (p, basis) = setup(0.0, 1.0, 0.04, 0.0, 0.0);
        let block = build_block(&p, &basis, 2, BlockMode::Secular);
        let mut eig: Vec<f64> = block.spectral().eigenvalues.iter().copied().collect();
        eig.sort_by(f64::total_cmp);
        let mut expected = vec![
            2.0 * basis.omega1 + 2.0 * basis.a11,
            basis.omega1 + basis.omega2 + 2.0 * basis.a12,
            2.0 * basis.omega2 + 2.0 * basis.a22,
        ];
        expected.sort_by(f64::total_cmp);
        for (a, b) in eig.iter().zip(&expected) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn secular_spectrum_small_values() {
        let (_, basis) = setup(0.3, 1.0, 0.05, 0.01, 0.0);
        assert_eq!(secular_spectrum(&basis, 0, 0), 0.0);
        assert_abs_diff_eq!(
            secular_spectrum(&basis, 1, 0),
            basis.omega1,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            secular_spectrum(&basis, 1, 1),
            basis.omega1 + basis.omega2 + 2.0 * basis.a12,
            epsilon = 1e-14
        );
    }

    #[test]
    fn blocks_are_hermitian() {
        let (p, basis) = setup(-0.8, 1.1, 0.07, 0.03, 0.0);
        for mode in [BlockMode::Full, BlockMode::Secular] {
            for n in [1u64, 3, 9, 16] {
                let block = build_block(&p, &basis, n, mode);
                let scale = block.hamiltonian.amax();
                let asym = (&block.hamiltonian - block.hamiltonian.transpose()).amax();
                assert!(asym <= 1e-12 * scale.max(1.0), "mode {mode:?} n {n}");
            }
        }
    }

    #[test]
    fn evolve_at_zero_is_identity() {
        let (p, basis) = setup(0.25, 1.0, 0.02, 0.01, 0.0);
        let block = build_block(&p, &basis, 5, BlockMode::Secular);
        let amps: Vec<Complex64> = (0..6)
            .map(|k| Complex64::new(0.1 * k as f64 + 0.05, -0.02 * k as f64))
            .collect();
        for path in [
            PropagationPath::MatrixSpectral,
            PropagationPath::PolaritonRotation,
        ] {
            let out = evolve_block(&block, &amps, 0.0, path).unwrap();
            for (a, b) in out.iter().zip(&amps) {
                assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-12);
                assert_abs_diff_eq!(a.im, b.im, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn single_excitation_rabi_amplitudes() {
        let (p, basis) = setup(0.0, 1.0, 0.0, 0.0, 0.0);
        let block = build_block(&p, &basis, 1, BlockMode::Full);
        let initial = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        for &t in &[0.3, 1.0, 2.4] {
            let out = evolve_block(&block, &initial, t, PropagationPath::MatrixSpectral).unwrap();
            assert_abs_diff_eq!(out[1].norm(), t.cos().abs(), epsilon = 1e-12);
            assert_abs_diff_eq!(out[0].norm(), t.sin().abs(), epsilon = 1e-12);
        }
    }

    #[test]
    fn rotation_path_rejected_for_full_blocks() {
        let (p, basis) = setup(0.0, 1.0, 0.01, 0.0, 0.0);
        let block = build_block(&p, &basis, 2, BlockMode::Full);
        let amps = vec![Complex64::new(1.0, 0.0); 3];
        assert_eq!(
            evolve_block(&block, &amps, 1.0, PropagationPath::PolaritonRotation),
            Err(OracleError::RotationRequiresSecular)
        );
    }

    #[test]
    fn propagation_paths_agree() {
        for &(delta, g) in &[(0.0, 1000.0), (-2923.6, 1000.0), (2183.4, 1000.0)] {
            let (p, basis) = setup(delta, g, 10.0, 3.0, 0.0);
            for n in [1u64, 2, 5, 12] {
                let block = build_block(&p, &basis, n, BlockMode::Secular);
                let dim = n as usize + 1;
                let amps: Vec<Complex64> = (0..dim)
                    .map(|k| {
                        let x = (k as f64 * 0.7311 + 0.2).sin();
                        let y = (k as f64 * 1.391 - 0.4).cos();
                        Complex64::new(x, 0.5 * y)
                    })
                    .collect();
                let norm: f64 = amps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
                let amps: Vec<Complex64> = amps.into_iter().map(|c| c / norm).collect();
                for &t in &[0.13, 0.61, 1.2566] {
                    let a =
                        evolve_block(&block, &amps, t, PropagationPath::MatrixSpectral).unwrap();
                    let b =
                        evolve_block(&block, &amps, t, PropagationPath::PolaritonRotation).unwrap();
                    for (x, y) in a.iter().zip(&b) {
                        assert!((x - y).norm() <= 1e-10, "delta={delta} n={n} t={t}");
                    }
                }
            }
        }
    }

    #[test]
    fn rotation_operator_matches_jy_exponential() {
        // exp(2i theta Jy) computed from the block Jy must equal the Wigner
        // rotation d(-2 theta); this pins every sign convention at once.
        let (_, basis) = setup(0.9, 1.0, 0.0, 0.0, 0.0);
        for n in [1u64, 2, 5, 8] {
            let (p, _) = setup(0.9, 1.0, 0.0, 0.0, 0.0);
            let block = build_block(&p, &basis, n, BlockMode::Secular);
            let jy = block.jy_matrix();
            let eig = jy.symmetric_eigen();
            let dim = n as usize + 1;
            let mut expm = DMatrix::<Complex64>::zeros(dim, dim);
            for p_idx in 0..dim {
                let phase = Complex64::from_polar(1.0, 2.0 * basis.theta * eig.eigenvalues[p_idx]);
                for i in 0..dim {
                    for j in 0..dim {
                        expm[(i, j)] += eig.eigenvectors[(i, p_idx)]
                            * phase
                            * eig.eigenvectors[(j, p_idx)].conj();
                    }
                }
            }
            let rot = wigner::d_matrix(n as i64, -2.0 * basis.theta);
            for i in 0..dim {
                for j in 0..dim {
                    assert!(
                        (expm[(i, j)] - Complex64::new(rot[(i, j)], 0.0)).norm() <= 1e-10,
                        "n={n} ({i},{j}): {} vs {}",
                        expm[(i, j)],
                        rot[(i, j)]
                    );
                }
            }
        }
    }

    #[test]
    fn conservation_under_gamma_free_evolution() {
        let (p, basis) = setup(0.2, 1.0, 0.03, 0.01, 0.0);
        let state = StateVector::from_initial(&InitialState::coherent(3.0, 0.0).unwrap());
        assert_abs_diff_eq!(state.norm_sqr(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(expectation_total_number(&state), 3.0, epsilon = 1e-11);
        for &t in &[1.0, 17.0] {
            let evolved = evolve_state(
                &p,
                &basis,
                &state,
                t,
                BlockMode::Secular,
                PropagationPath::MatrixSpectral,
            )
            .unwrap();
            assert_abs_diff_eq!(evolved.norm_sqr(), 1.0, epsilon = 1e-10);
            assert_abs_diff_eq!(expectation_total_number(&evolved), 3.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn number_state_expectation_is_exact() {
        let state = StateVector::from_initial(&InitialState::number(5));
        assert_abs_diff_eq!(expectation_total_number(&state), 5.0, epsilon = 1e-12);
        let vacuum = StateVector::from_initial(&InitialState::number(0));
        assert_eq!(expectation_total_number(&vacuum), 0.0);
    }

    #[test]
    fn truncation_obeys_floor_and_tail() {
        assert!(coherent_truncation(0.0) >= 10);
        let n3 = coherent_truncation(3.0);
        assert!(n3 >= (3.0 + 10.0 * 3.0f64.sqrt() + 10.0) as u64);
        // tail beyond the cutoff is below 1e-12
        let nbar = 3.0f64;
        let mut pmf = (-nbar).exp();
        let mut cdf = pmf;
        for k in 1..=n3 {
            pmf *= nbar / k as f64;
            cdf += pmf;
        }
        assert!(1.0 - cdf < 1e-12);
    }

    #[test]
    fn full_mode_rejects_decay() {
        let (p, basis) = setup(0.0, 1.0, 0.01, 0.0, 0.5);
        let grid = TimeGrid::new(1.0, 4).unwrap();
        let err = oracle_intensity(&p, &basis, &InitialState::number(2), &grid, BlockMode::Full);
        assert_eq!(err.unwrap_err(), OracleError::DecayRequiresSecular);
    }

    #[test]
    fn oracle_matches_closed_form_quickly() {
        let (p, basis) = setup(200.0, 1000.0, 10.0, 3.0, 1.0);
        let grid = TimeGrid::new(4.0 * PI / 10.0, 801).unwrap();
        let n = 3u64;
        let closed = crate::closedform::intensity_number(&p, &basis, n, &grid);
        let oracle = oracle_intensity(
            &p,
            &basis,
            &InitialState::number(n),
            &grid,
            BlockMode::Secular,
        )
        .unwrap();
        let worst = closed
            .intensity
            .iter()
            .zip(&oracle.intensity)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        assert!(worst <= 1e-10 * n as f64, "worst {worst:e}");
    }

    #[test]
    fn oracle_intensity_zero_at_time_zero() {
        let (p, basis) = setup(150.0, 1000.0, 10.0, 0.0, 0.0);
        let grid = TimeGrid::new(0.5, 16).unwrap();
        for state in [
            InitialState::number(4),
            InitialState::coherent(2.5, 0.0).unwrap(),
        ] {
            let trace = oracle_intensity(&p, &basis, &state, &grid, BlockMode::Secular).unwrap();
            assert!(trace.intensity[0].abs() < 1e-12);
        }
    }

    #[test]
    fn coherent_phase_never_reaches_the_output() {
        let (p, basis) = setup(120.0, 1000.0, 10.0, 3.0, 0.0);
        let grid = TimeGrid::new(0.4, 64).unwrap();
        let a = oracle_intensity(
            &p,
            &basis,
            &InitialState::coherent(1.5, 0.0).unwrap(),
            &grid,
            BlockMode::Secular,
        )
        .unwrap();
        let b = oracle_intensity(
            &p,
            &basis,
            &InitialState::coherent(1.5, 1.234).unwrap(),
            &grid,
            BlockMode::Secular,
        )
        .unwrap();
        assert_eq!(a.intensity, b.intensity);
    }
}
