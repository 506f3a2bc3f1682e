//! Physical parameters and the linear (Hopfield) diagonalization of the
//! exciton-photon system.
//!
//! All frequencies are angular frequencies in one caller-chosen unit with
//! ħ = 1. The figure presets elsewhere use the polariton linewidth γ as that
//! unit so time comes out in units of 1/γ.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("resonance required (delta = 0), got delta = {0}")]
    NotResonant(f64),
}

/// Bare-mode parameters of the coupled exciton-photon Hamiltonian plus
/// phenomenological polariton linewidths.
///
/// `a` is the exciton-exciton interaction strength, `b` the phase-space
/// filling (higher-order exciton-photon) coupling. Both enter the Hamiltonian
/// as `a b†b†bb − b(b†b†ba + a†b†bb)` and must be nonnegative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub omega_c: f64,
    pub omega_ex: f64,
    pub g: f64,
    pub a: f64,
    pub b: f64,
    pub gamma1: f64,
    pub gamma2: f64,
}

impl ModelParams {
    pub fn new(
        omega_c: f64,
        omega_ex: f64,
        g: f64,
        a: f64,
        b: f64,
        gamma1: f64,
        gamma2: f64,
    ) -> Result<Self, ModelError> {
        let fields = [
            ("omega_c", omega_c),
            ("omega_ex", omega_ex),
            ("g", g),
            ("A", a),
            ("B", b),
            ("gamma1", gamma1),
            ("gamma2", gamma2),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(ModelError::InvalidParameter(format!(
                    "{name} must be finite, got {value}"
                )));
            }
        }
        if g <= 0.0 {
            return Err(ModelError::InvalidParameter(format!(
                "g must be > 0 (the polariton transformation degenerates otherwise), got {g}"
            )));
        }
        for (name, value) in [("A", a), ("B", b), ("gamma1", gamma1), ("gamma2", gamma2)] {
            if value < 0.0 {
                return Err(ModelError::InvalidParameter(format!(
                    "{name} must be >= 0, got {value}"
                )));
            }
        }
        Ok(Self {
            omega_c,
            omega_ex,
            g,
            a,
            b,
            gamma1,
            gamma2,
        })
    }

    /// Cavity-exciton detuning δ = ω_c − ω_ex.
    pub fn detuning(&self) -> f64 {
        self.omega_c - self.omega_ex
    }

    /// Total linewidth γ1 + γ2 entering the cross-coherence decay.
    pub fn gamma_sum(&self) -> f64 {
        self.gamma1 + self.gamma2
    }

    /// Whether an excitation number sits inside the weak-nonlinearity regime
    /// the analytic formulas rest on (excitation · max(A,B) ≤ 0.2 g).
    ///
    /// Violations are advisory, not errors; the oracle stays exact there.
    pub fn weakly_nonlinear(&self, excitation: f64) -> bool {
        excitation * self.a.max(self.b) <= 0.2 * self.g
    }

    /// Canonical textual digest of the parameter set, used as trace provenance.
    pub fn digest(&self) -> String {
        format!(
            "omega_c={:e};omega_ex={:e};g={:e};A={:e};B={:e};gamma1={:e};gamma2={:e}",
            self.omega_c, self.omega_ex, self.g, self.a, self.b, self.gamma1, self.gamma2
        )
    }
}

/// Derived polariton basis: rotation angle, Hopfield coefficients, branch
/// energies and the effective polariton-polariton interaction coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolaritonBasis {
    /// δ = ω_c − ω_ex.
    pub delta: f64,
    /// Polariton splitting Δ = √(δ² + 4g²) = ω2 − ω1.
    pub splitting: f64,
    /// Rotation angle θ ∈ (0, π/2); tan 2θ = −2g/δ on the branch where
    /// 2θ is the polar angle of the vector (−δ, 2g).
    pub theta: f64,
    /// Exciton Hopfield coefficient u = sin θ.
    pub u: f64,
    /// Cavity Hopfield coefficient v = cos θ.
    pub v: f64,
    /// Lower branch energy.
    pub omega1: f64,
    /// Upper branch energy.
    pub omega2: f64,
    /// Lower-branch self-interaction u³(Au + 2Bv).
    pub a11: f64,
    /// Upper-branch self-interaction v³(Av − 2Bu).
    pub a22: f64,
    /// Cross-branch interaction 2uv[Auv − B(u² − v²)].
    pub a12: f64,
}

impl PolaritonBasis {
    /// sin²(2θ), the weight of the oscillating part of the emission.
    pub fn sin2_two_theta(&self) -> f64 {
        let s = 2.0 * self.u * self.v;
        s * s
    }

    /// Frequency χ = 2A12 − A11 − A22 of the slow modulating bracket.
    pub fn chi(&self) -> f64 {
        2.0 * self.a12 - self.a11 - self.a22
    }

    /// Effective collapse/revival rate, the quantity that reduces to the bare
    /// exciton-exciton constant A at resonance. Number-state revivals repeat
    /// every 2π divided by this; coherent-state revivals every 4π.
    pub fn a_eff(&self) -> f64 {
        2.0 * self.chi().abs()
    }
}

/// Diagonalize the linear part of the Hamiltonian.
///
/// The angle branch is pinned by 2θ = atan2(2g, −δ) so that θ ∈ (0, π/2),
/// both Hopfield coefficients stay positive, δ = 0 gives θ = π/4, and
/// δ → ±∞ pushes θ to π/2 / 0 continuously through resonance.
pub fn build_polariton_basis(params: &ModelParams) -> Result<PolaritonBasis, ModelError> {
    if params.g <= 0.0 {
        return Err(ModelError::InvalidParameter(format!(
            "g must be > 0, got {}",
            params.g
        )));
    }
    let delta = params.detuning();
    let splitting = f64::hypot(delta, 2.0 * params.g);
    let theta = 0.5 * f64::atan2(2.0 * params.g, -delta);
    let (u, v) = (theta.sin(), theta.cos());
    let sum = params.omega_c + params.omega_ex;
    let omega1 = 0.5 * (sum - splitting);
    let omega2 = 0.5 * (sum + splitting);
    let (a, b) = (params.a, params.b);
    let a11 = u.powi(3) * (a * u + 2.0 * b * v);
    let a22 = v.powi(3) * (a * v - 2.0 * b * u);
    let a12 = 2.0 * u * v * (a * u * v - b * (u * u - v * v));
    Ok(PolaritonBasis {
        delta,
        splitting,
        theta,
        u,
        v,
        omega1,
        omega2,
        a11,
        a22,
        a12,
    })
}

/// Material inputs from which the nonlinear constants follow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialInputs {
    /// Exciton binding energy.
    pub ry_ex: f64,
    /// Two-dimensional exciton Bohr radius.
    pub a_ex: f64,
    /// Quantization area.
    pub area: f64,
    /// Linear exciton-photon coupling.
    pub g: f64,
}

impl MaterialInputs {
    pub fn new(ry_ex: f64, a_ex: f64, area: f64, g: f64) -> Result<Self, ModelError> {
        for (name, value) in [("Ry_ex", ry_ex), ("a_ex", a_ex), ("S", area), ("g", g)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(ModelError::InvalidParameter(format!(
                    "{name} must be finite and > 0, got {value}"
                )));
            }
        }
        Ok(Self {
            ry_ex,
            a_ex,
            area,
            g,
        })
    }
}

/// Nonlinear constants from material data: A = 3·Ry_ex·a_ex²/S and
/// B = g/(n_sat·S) with the saturation density n_sat = 7/(16π·a_ex²).
pub fn material_coefficients(m: &MaterialInputs) -> (f64, f64) {
    let a = 3.0 * m.ry_ex * m.a_ex * m.a_ex / m.area;
    let n_sat = 7.0 / (16.0 * std::f64::consts::PI * m.a_ex * m.a_ex);
    let b = m.g / (n_sat * m.area);
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn params(delta: f64, g: f64, a: f64, b: f64) -> ModelParams {
        ModelParams::new(delta, 0.0, g, a, b, 0.0, 0.0).unwrap()
    }

    #[test]
    fn resonance_gives_symmetric_rotation() {
        let basis =
            build_polariton_basis(&ModelParams::new(5.0, 5.0, 1.0, 0.0, 0.0, 0.0, 0.0).unwrap())
                .unwrap();
        assert_abs_diff_eq!(basis.theta, PI / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(basis.u, 0.5f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(basis.v, 0.5f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(basis.splitting, 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(basis.omega1, 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(basis.omega2, 6.0, epsilon = 1e-12);
    }

    /// Independent oracle for the splitting: numeric eigenvalues of the
    /// one-excitation matrix [[ω_c, g], [g, ω_ex]].
    fn eigensplit_2x2(omega_c: f64, omega_ex: f64, g: f64) -> f64 {
        let m = nalgebra::Matrix2::new(omega_c, g, g, omega_ex);
        let eig = m.symmetric_eigen();
        (eig.eigenvalues[0] - eig.eigenvalues[1]).abs()
    }

    #[test]
    fn splitting_matches_2x2_eigenvalue_oracle() {
        let basis = build_polariton_basis(&params(0.2, 1.0, 0.01, 0.0)).unwrap();
        let oracle = eigensplit_2x2(0.2, 0.0, 1.0);
        assert_abs_diff_eq!(basis.splitting, oracle, epsilon = 1e-12);
        // frozen value: sqrt(4.04)
        assert_abs_diff_eq!(basis.splitting, 2.009975124224178, epsilon = 1e-12);
    }

    #[test]
    fn resonant_coefficients_hand_values() {
        // u = v = 1/sqrt(2) substituted into the coefficient formulas by hand:
        // A11 = (A+2B)/4, A22 = (A-2B)/4, A12 = A/2.
        let (a, b) = (0.37, 0.11);
        let basis = build_polariton_basis(&params(0.0, 1.0, a, b)).unwrap();
        assert_abs_diff_eq!(basis.a11, (a + 2.0 * b) / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(basis.a22, (a - 2.0 * b) / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(basis.a12, a / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn resonant_b_zero_coefficients_exact() {
        let a = 0.123456;
        let basis = build_polariton_basis(&params(0.0, 1.0, a, 0.0)).unwrap();
        assert!((basis.a11 - a / 4.0).abs() <= 1e-14 * a);
        assert!((basis.a22 - a / 4.0).abs() <= 1e-14 * a);
        assert!((basis.a12 - a / 2.0).abs() <= 1e-14 * a);
    }

    #[test]
    fn detuning_limits_pin_the_angle_branch() {
        let far_positive = build_polariton_basis(&params(1e9, 1.0, 0.0, 0.0)).unwrap();
        assert!(far_positive.theta > PI / 2.0 - 1e-6);
        let far_negative = build_polariton_basis(&params(-1e9, 1.0, 0.0, 0.0)).unwrap();
        assert!(far_negative.theta < 1e-6);
    }

    #[test]
    fn rejects_nonpositive_g() {
        assert!(ModelParams::new(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0).is_err());
        assert!(ModelParams::new(0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn rejects_negative_nonlinearities_and_linewidths() {
        assert!(ModelParams::new(0.0, 0.0, 1.0, -0.1, 0.0, 0.0, 0.0).is_err());
        assert!(ModelParams::new(0.0, 0.0, 1.0, 0.0, -0.1, 0.0, 0.0).is_err());
        assert!(ModelParams::new(0.0, 0.0, 1.0, 0.0, 0.0, -0.1, 0.0).is_err());
        assert!(ModelParams::new(0.0, 0.0, 1.0, 0.0, 0.0, 0.0, f64::NAN).is_err());
    }

    #[test]
    fn weak_nonlinearity_advisory() {
        let p = params(0.0, 1000.0, 10.0, 0.0);
        assert!(p.weakly_nonlinear(11.0));
        assert!(!p.weakly_nonlinear(30.0));
    }

    #[test]
    fn material_coefficients_hand_values() {
        let m = MaterialInputs::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let (a, b) = material_coefficients(&m);
        assert_abs_diff_eq!(a, 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b, 16.0 * PI / 7.0, epsilon = 1e-12);
    }

    #[test]
    fn material_coefficients_scale_as_inverse_area() {
        let m1 = MaterialInputs::new(2.0, 0.7, 1.3, 0.4).unwrap();
        let m2 = MaterialInputs::new(2.0, 0.7, 2.6, 0.4).unwrap();
        let (a1, b1) = material_coefficients(&m1);
        let (a2, b2) = material_coefficients(&m2);
        assert_abs_diff_eq!(a1 / a2, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b1 / b2, 2.0, epsilon = 1e-12);
        // the ratio A/B is independent of S
        assert_abs_diff_eq!(a1 / b1, a2 / b2, epsilon = 1e-12);
    }

    #[test]
    fn material_inputs_rejects_nonpositive() {
        assert!(MaterialInputs::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(MaterialInputs::new(1.0, -1.0, 1.0, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn hopfield_invariants(
            delta in -5.0f64..5.0,
            g in 0.05f64..5.0,
            a in 0.0f64..0.5,
            b in 0.0f64..0.5,
        ) {
            let p = ModelParams::new(delta, 0.0, g, a, b, 0.0, 0.0).unwrap();
            let basis = build_polariton_basis(&p).unwrap();
            // canonical transformation
            prop_assert!((basis.u * basis.u + basis.v * basis.v - 1.0).abs() <= 1e-12);
            // off-diagonal cancellation condition
            let lhs = delta * basis.u * basis.v;
            let rhs = g * (basis.u * basis.u - basis.v * basis.v);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * g.max(delta.abs()).max(1.0));
            // splitting
            prop_assert!((basis.splitting - (delta * delta + 4.0 * g * g).sqrt()).abs() <= 1e-12 * g);
            prop_assert!((basis.omega2 - basis.omega1 - basis.splitting).abs() <= 1e-12 * g);
            // Hopfield coefficients strictly inside (0, 1) for g > 0
            prop_assert!(basis.u > 0.0 && basis.u < 1.0);
            prop_assert!(basis.v > 0.0 && basis.v < 1.0);
            // level repulsion
            let lo = p.omega_c.min(p.omega_ex);
            let hi = p.omega_c.max(p.omega_ex);
            prop_assert!(basis.omega1 < lo + 1e-12 && basis.omega1 <= lo);
            prop_assert!(basis.omega2 > hi - 1e-12 && basis.omega2 >= hi);
            // coefficients reproducible from u, v, A, B
            let scale = a.max(b).max(f64::EPSILON);
            let (u, v) = (basis.u, basis.v);
            prop_assert!((basis.a11 - u.powi(3) * (a * u + 2.0 * b * v)).abs() <= 1e-12 * scale);
            prop_assert!((basis.a22 - v.powi(3) * (a * v - 2.0 * b * u)).abs() <= 1e-12 * scale);
            prop_assert!(
                (basis.a12 - 2.0 * u * v * (a * u * v - b * (u * u - v * v))).abs() <= 1e-12 * scale
            );
        }

        #[test]
        fn theta_is_antisymmetric_about_resonance(delta in 0.0f64..8.0, g in 0.05f64..5.0) {
            let plus = build_polariton_basis(
                &ModelParams::new(delta, 0.0, g, 0.0, 0.0, 0.0, 0.0).unwrap()).unwrap();
            let minus = build_polariton_basis(
                &ModelParams::new(-delta, 0.0, g, 0.0, 0.0, 0.0, 0.0).unwrap()).unwrap();
            prop_assert!((plus.theta + minus.theta - PI / 2.0).abs() <= 1e-10);
        }
    }
}
