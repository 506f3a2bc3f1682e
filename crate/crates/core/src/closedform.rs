//! Analytic light-intensity evaluators under the secular (number-conserving)
//! polariton Hamiltonian, their slow-modulation envelopes, and the
//! cross-coherence evaluated through the angular-momentum route.
//!
//! The dynamics is carried in full complex arithmetic and the real part taken
//! only at the end; there are no small-angle or envelope approximations inside
//! the evaluators. The slow bracket for a number state is
//! (u²·e^{2i(A11−A12)t} + v²·e^{2i(A12−A22)t})^{N−1}, the coherent-state
//! analogue exponentiates the same bracket with Poisson weights, and the fast
//! factor is e^{−iΔt}. Dissipation multiplies the oscillating cross term only.

use num_complex::Complex64;

use crate::model::{ModelError, ModelParams, PolaritonBasis};
use crate::state::{InitialState, IntensityTrace, Method, TimeGrid};

pub use crate::wigner::{d_top_row as wigner_d_top_row, d_top_row_recursive, WignerError};

/// Cavity photon number for an initial exciton number state |N⟩.
pub fn intensity_number(
    params: &ModelParams,
    basis: &PolaritonBasis,
    n: u64,
    grid: &TimeGrid,
) -> IntensityTrace {
    let times = grid.times();
    let intensity = times
        .iter()
        .map(|&t| intensity_number_at(params, basis, n, t))
        .collect();
    IntensityTrace::new(
        times,
        intensity,
        Method::ClosedGeneral,
        InitialState::number(n),
        *params,
    )
}

/// Single-sample evaluation of the number-state intensity.
pub fn intensity_number_at(params: &ModelParams, basis: &PolaritonBasis, n: u64, t: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let half = 0.5 * n as f64 * basis.sin2_two_theta();
    let bracket = slow_bracket(basis, t).powu(n as u32 - 1);
    let fast = Complex64::from_polar(1.0, -basis.splitting * t);
    let decay = (-(params.gamma_sum()) * t / 2.0).exp();
    half * (1.0 - (fast * bracket).re * decay)
}

/// Resonant (δ = 0) reduction of the number-state intensity:
/// I(t) = (N/2)·[1 − cos((2g − B(N−1))t)·cos^{N−1}(At/2)·e^{−(γ1+γ2)t/2}].
///
/// The carrier shift follows the saturating coupling of the model
/// Hamiltonian: the transition matrix element at n excitons is
/// g − B(n−1), so phase-space filling lowers the oscillation frequency.
pub fn intensity_number_resonant(
    params: &ModelParams,
    n: u64,
    grid: &TimeGrid,
) -> Result<IntensityTrace, ModelError> {
    require_resonant(params)?;
    let times = grid.times();
    let gs = params.gamma_sum();
    let nf = n as f64;
    let carrier = 2.0 * params.g - params.b * (nf - 1.0);
    let intensity = times
        .iter()
        .map(|&t| {
            if n == 0 {
                return 0.0;
            }
            let envelope = (params.a * t / 2.0).cos().powi(n as i32 - 1);
            0.5 * nf * (1.0 - (carrier * t).cos() * envelope * (-gs * t / 2.0).exp())
        })
        .collect();
    Ok(IntensityTrace::new(
        times,
        intensity,
        Method::ClosedResonant,
        InitialState::number(n),
        *params,
    ))
}

/// Cavity photon number for an initial excitonic coherent state with mean
/// occupation `nbar`. The initial phase of the coherent state never enters.
pub fn intensity_coherent(
    params: &ModelParams,
    basis: &PolaritonBasis,
    nbar: f64,
    grid: &TimeGrid,
) -> IntensityTrace {
    let times = grid.times();
    let intensity = times
        .iter()
        .map(|&t| intensity_coherent_at(params, basis, nbar, t))
        .collect();
    let state = InitialState::coherent(nbar, 0.0).expect("nonnegative nbar");
    IntensityTrace::new(times, intensity, Method::ClosedGeneral, state, *params)
}

/// Single-sample evaluation of the coherent-state intensity.
pub fn intensity_coherent_at(
    params: &ModelParams,
    basis: &PolaritonBasis,
    nbar: f64,
    t: f64,
) -> f64 {
    if nbar == 0.0 {
        return 0.0;
    }
    let half = 0.5 * nbar * basis.sin2_two_theta();
    // Poisson sum over number blocks collapses to exp(nbar·(bracket − 1)).
    let exponent = nbar * (slow_bracket(basis, t) - 1.0);
    let fast = Complex64::from_polar(1.0, -basis.splitting * t);
    let decay = (-(params.gamma_sum()) * t / 2.0).exp();
    half * (1.0 - (fast * exponent.exp()).re * decay)
}

/// Resonant (δ = 0) reduction of the coherent-state intensity. With B = 0
/// this is I(t) = (⟨N⟩/2)·[1 − cos(2gt)·e^{−2⟨N⟩sin²(At/4)}·e^{−(γ1+γ2)t/2}];
/// a nonzero B adds the phase-space-filling carrier modulation.
pub fn intensity_coherent_resonant(
    params: &ModelParams,
    nbar: f64,
    grid: &TimeGrid,
) -> Result<IntensityTrace, ModelError> {
    require_resonant(params)?;
    let times = grid.times();
    let gs = params.gamma_sum();
    let two_g = 2.0 * params.g;
    let intensity = times
        .iter()
        .map(|&t| {
            if nbar == 0.0 {
                return 0.0;
            }
            let slow = (params.a * t / 2.0).cos();
            let magnitude = (nbar * ((params.b * t).cos() * slow - 1.0)).exp();
            let phase = two_g * t - nbar * (params.b * t).sin() * slow;
            0.5 * nbar * (1.0 - magnitude * phase.cos() * (-gs * t / 2.0).exp())
        })
        .collect();
    let state = InitialState::coherent(nbar, 0.0).expect("nonnegative nbar");
    Ok(IntensityTrace::new(
        times,
        intensity,
        Method::ClosedResonant,
        state,
        *params,
    ))
}

/// The complex slow factor per excitation quantum,
/// u²·e^{2i(A11−A12)t} + v²·e^{2i(A12−A22)t}.
fn slow_bracket(basis: &PolaritonBasis, t: f64) -> Complex64 {
    let u2 = basis.u * basis.u;
    let v2 = basis.v * basis.v;
    let lower = Complex64::from_polar(1.0, 2.0 * (basis.a11 - basis.a12) * t);
    let upper = Complex64::from_polar(1.0, 2.0 * (basis.a12 - basis.a22) * t);
    u2 * lower + v2 * upper
}

fn require_resonant(params: &ModelParams) -> Result<(), ModelError> {
    let delta = params.detuning();
    if delta != 0.0 {
        return Err(ModelError::NotResonant(delta));
    }
    Ok(())
}

/// Cross-coherence ⟨p1†(t)p2(t)⟩ for the number state |N⟩, evaluated through
/// the angular-momentum route: top-row Wigner d elements of the rotated
/// stretched state and the ladder matrix elements, phased by the conserved
/// polariton numbers. Includes the e^{−(γ1+γ2)t/2} decay factor.
pub fn cross_coherence_number(
    params: &ModelParams,
    basis: &PolaritonBasis,
    n: u64,
    t: f64,
) -> Complex64 {
    if n == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let two_j = n as i64;
    let two_theta = 2.0 * basis.theta;
    let a1 = basis.a11 - basis.a12;
    let b1 = basis.a12 - basis.a22;
    let chi = basis.chi();
    let nf = n as f64;

    let mut sum = Complex64::new(0.0, 0.0);
    let mut two_m = -two_j + 2;
    while two_m <= two_j {
        let d_hi = crate::wigner::d_top_row(two_j, two_m, two_theta).expect("valid pair");
        let d_lo = crate::wigner::d_top_row(two_j, two_m - 2, two_theta).expect("valid pair");
        let jpm = (two_j + two_m) as f64 / 2.0;
        let jmm1 = (two_j - two_m) as f64 / 2.0 + 1.0;
        let ladder = (jpm * jmm1).sqrt();
        let m_minus_one = (two_m - 2) as f64 / 2.0;
        let phase = Complex64::from_polar(1.0, 2.0 * chi * m_minus_one * t);
        sum += d_lo * d_hi * ladder * phase;
        two_m += 2;
    }

    let prefactor_phase = (a1 * (nf - 2.0) + b1 * nf) * t;
    let fast = Complex64::from_polar(1.0, -basis.splitting * t + prefactor_phase);
    let decay = (-(params.gamma_sum()) * t / 2.0).exp();
    -fast * sum * decay
}

/// Magnitude of the slow modulation factor for a number state,
/// |sin²θ + cos²θ·e^{2iχt}|^{N−1} with χ = 2A12 − A11 − A22. Reduces to
/// |cos(At/2)|^{N−1} at resonance.
pub fn envelope_number(n: u64, basis: &PolaritonBasis, t: f64) -> f64 {
    if n <= 1 {
        return 1.0;
    }
    let u2 = basis.u * basis.u;
    let v2 = basis.v * basis.v;
    let bracket = Complex64::new(u2, 0.0) + v2 * Complex64::from_polar(1.0, 2.0 * basis.chi() * t);
    bracket.norm().powi(n as i32 - 1)
}

/// Slow modulation envelope for a coherent state,
/// exp[⟨N⟩·(cos(χt) − 1)] = exp[−2⟨N⟩·sin²(χt/2)]. Reduces to
/// exp[−2⟨N⟩·sin²(At/4)] at resonance.
pub fn envelope_coherent(nbar: f64, basis: &PolaritonBasis, t: f64) -> f64 {
    (nbar * ((basis.chi() * t).cos() - 1.0)).exp()
}
