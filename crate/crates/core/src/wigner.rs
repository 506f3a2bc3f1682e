//! Wigner small-d rotation matrix elements for integer and half-integer
//! angular momentum, in the convention d^j_{m',m}(φ) = ⟨j,m'|e^{−iφJy}|j,m⟩.
//!
//! Half-integer quantum numbers are passed as doubled integers (`two_j`,
//! `two_m`), so j = 3/2 is `two_j = 3`.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum WignerError {
    #[error("invalid (j, m) pair: two_j = {two_j}, two_m = {two_m}")]
    InvalidPair { two_j: i64, two_m: i64 },
}

fn validate(two_j: i64, two_m: i64) -> Result<(), WignerError> {
    if two_j < 0 || two_m.abs() > two_j || (two_j - two_m).rem_euclid(2) != 0 {
        return Err(WignerError::InvalidPair { two_j, two_m });
    }
    Ok(())
}

/// ln(n!) table up to `n` inclusive.
pub(crate) fn ln_factorials(n: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(n + 1);
    table.push(0.0);
    let mut acc = 0.0;
    for k in 1..=n {
        acc += (k as f64).ln();
        table.push(acc);
    }
    table
}

/// Top-row element d^j_{j,m}(φ) in closed form:
/// (−1)^{j−m} · C(2j, j+m)^{1/2} · cos^{j+m}(φ/2) · sin^{j−m}(φ/2).
pub fn d_top_row(two_j: i64, two_m: i64, phi: f64) -> Result<f64, WignerError> {
    validate(two_j, two_m)?;
    let jpm = ((two_j + two_m) / 2) as usize;
    let jmm = ((two_j - two_m) / 2) as usize;
    let lnf = ln_factorials(two_j as usize);
    let ln_binom_sqrt = 0.5 * (lnf[two_j as usize] - lnf[jpm] - lnf[jmm]);
    let sign = if jmm.is_multiple_of(2) { 1.0 } else { -1.0 };
    let c = (phi / 2.0).cos();
    let s = (phi / 2.0).sin();
    Ok(sign * ln_binom_sqrt.exp() * c.powi(jpm as i32) * s.powi(jmm as i32))
}

/// Top-row element computed by descending the printed ladder recursion
/// d^j_{j,m}(φ) = −tan(φ/2)·[(j+m+1)/(j−m)]^{1/2}·d^j_{j,m+1}(φ)
/// from the seed d^j_{j,j}(φ) = cos^{2j}(φ/2).
///
/// Intended as an algebraic cross-check on [`d_top_row`]; it inherits the
/// usual tan(φ/2) blow-up near φ = π.
pub fn d_top_row_recursive(two_j: i64, two_m: i64, phi: f64) -> Result<f64, WignerError> {
    validate(two_j, two_m)?;
    let mut value = (phi / 2.0).cos().powi(two_j as i32);
    let t = (phi / 2.0).tan();
    let mut two_mu = two_j;
    while two_mu > two_m {
        // step m+1 -> m with m = two_mu - 2
        let jpm1 = (two_j + two_mu) as f64 / 2.0; // j + m + 1
        let jmm = (two_j - two_mu) as f64 / 2.0 + 1.0; // j - m
        value *= -t * (jpm1 / jmm).sqrt();
        two_mu -= 2;
    }
    Ok(value)
}

/// Full rotation matrix with entries R[(k', k)] = d^j_{m',m}(φ) where
/// m = k − j, m' = k' − j, indices ascending in m.
///
/// Uses the explicit alternating sum with log-factorials; accurate to better
/// than ~1e-12 absolute for the block sizes used here (2j ≲ 30).
pub fn d_matrix(two_j: i64, phi: f64) -> nalgebra::DMatrix<f64> {
    assert!(two_j >= 0, "two_j must be nonnegative");
    let dim = two_j as usize + 1;
    let lnf = ln_factorials(two_j as usize);
    let c = (phi / 2.0).cos();
    let s = (phi / 2.0).sin();
    let mut out = nalgebra::DMatrix::zeros(dim, dim);
    for kp in 0..dim {
        for k in 0..dim {
            // m' = kp - j, m = k - j; all of j±m, j±m' are integers
            let jpm = k; // j + m
            let jmm = dim - 1 - k; // j - m
            let jpmp = kp; // j + m'
            let jmmp = dim - 1 - kp; // j - m'
            let ln_prefactor = 0.5 * (lnf[jpm] + lnf[jmm] + lnf[jpmp] + lnf[jmmp]);
            let mp_minus_m = kp as i64 - k as i64; // m' - m
            let lo = 0.max(-mp_minus_m) as usize;
            let hi = jpm.min(jmmp);
            let mut acc = 0.0;
            for q in lo..=hi {
                // denominator factorials: (j+m-q)!, q!, (j-m'-q)!, (q+m'-m)!
                let d4 = q as i64 + mp_minus_m;
                if d4 < 0 {
                    continue;
                }
                let ln_term =
                    ln_prefactor - lnf[jpm - q] - lnf[q] - lnf[jmmp - q] - lnf[d4 as usize];
                let cos_pow = (two_j - 2 * q as i64 - mp_minus_m) as i32;
                let sin_pow = (2 * q as i64 + mp_minus_m) as i32;
                let sign = if (q as i64 + mp_minus_m).rem_euclid(2) == 0 {
                    1.0
                } else {
                    -1.0
                };
                acc += sign * ln_term.exp() * c.powi(cos_pow) * s.powi(sin_pow);
            }
            out[(kp, k)] = acc;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn stretched_element_is_cosine_power() {
        for &phi in &[0.3, PI / 2.0, 2.0] {
            for two_j in 0..=9 {
                let d = d_top_row(two_j, two_j, phi).unwrap();
                assert_abs_diff_eq!(d, (phi / 2.0).cos().powi(two_j as i32), epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn half_spin_lower_element() {
        for &phi in &[0.1, 0.9, 2.5] {
            let d = d_top_row(1, -1, phi).unwrap();
            assert_abs_diff_eq!(d, -(phi / 2.0).sin(), epsilon = 1e-15);
        }
    }

    #[test]
    fn closed_form_matches_recursion() {
        for &phi in &[0.3, PI / 2.0, 2.0] {
            for two_j in 0..=20 {
                let mut two_m = -two_j;
                while two_m <= two_j {
                    let a = d_top_row(two_j, two_m, phi).unwrap();
                    let b = d_top_row_recursive(two_j, two_m, phi).unwrap();
                    assert!(
                        (a - b).abs() <= 1e-12,
                        "two_j={two_j} two_m={two_m} phi={phi}: {a} vs {b}"
                    );
                    two_m += 2;
                }
            }
        }
    }

    #[test]
    fn top_row_is_normalized() {
        for &phi in &[0.3, PI / 2.0, 2.0] {
            for two_j in 0..=20 {
                let mut sum = 0.0;
                let mut two_m = -two_j;
                while two_m <= two_j {
                    let d = d_top_row(two_j, two_m, phi).unwrap();
                    sum += d * d;
                    two_m += 2;
                }
                assert_abs_diff_eq!(sum, 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn rejects_invalid_pairs() {
        assert!(d_top_row(2, 3, 0.5).is_err());
        assert!(d_top_row(2, 1, 0.5).is_err());
        assert!(d_top_row(-1, 0, 0.5).is_err());
        assert!(d_top_row(3, 1, 0.5).is_ok());
    }

    #[test]
    fn matrix_top_row_matches_closed_form() {
        for &phi in &[0.4, -1.3, 2.2] {
            for two_j in [1, 2, 5, 12] {
                let m = d_matrix(two_j, phi);
                let dim = two_j as usize + 1;
                for k in 0..dim {
                    let two_m = 2 * k as i64 - two_j;
                    let expected = d_top_row(two_j, two_m, phi).unwrap();
                    assert_abs_diff_eq!(m[(dim - 1, k)], expected, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn matrix_is_orthogonal_and_inverts_by_angle_flip() {
        for two_j in [1, 2, 7, 24] {
            let phi = 0.77;
            let m = d_matrix(two_j, phi);
            let id = &m * m.transpose();
            let back = &m * d_matrix(two_j, -phi);
            let dim = two_j as usize + 1;
            for i in 0..dim {
                for j in 0..dim {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert_abs_diff_eq!(id[(i, j)], expect, epsilon = 1e-11);
                    assert_abs_diff_eq!(back[(i, j)], expect, epsilon = 1e-11);
                }
            }
        }
    }

    #[test]
    fn spin_half_matrix_is_the_plane_rotation() {
        let phi = 0.6;
        let m = d_matrix(1, phi);
        let (c, s) = ((phi / 2.0).cos(), (phi / 2.0).sin());
        // ascending m ordering: [[cos, sin], [-sin, cos]]
        assert_abs_diff_eq!(m[(0, 0)], c, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(0, 1)], s, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(1, 0)], -s, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(1, 1)], c, epsilon = 1e-15);
    }
}
