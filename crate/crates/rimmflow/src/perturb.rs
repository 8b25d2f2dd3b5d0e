//! Closed-form second-order perturbation data for the leading eigenvalue:
//! Taylor coefficients, the real-part quadratic form, its Hessian, the
//! tangent directions of the two critical branches, and the linearized
//! slope of the first-quadrant critical curve.
//!
//! Derivation sketch (test-function reduction of `A psi = lambda psi` with
//! `A = -d/dtheta (flux derivative)` around the constant profile): testing
//! against `e^{-i theta}` gives `-i lambda` as an expansion whose
//! second-order coefficients involve only `m1 = (d psi / d eps1 | e^{-2 i theta})
//! = (1 - 12 i b) / (1 + 144 b^2)` and its `eps2` companion `-m1`:
//!
//! ```text
//! c20 = (-3b - i/2) m1 - i/3,   c11 = (3b - i/2) m1 - i/2,   c02 = i m1,
//! ```
//!
//! so `(1 + 144 b^2) Re lambda+ = -9 b e1^2 - 3 b e1 e2 + 12 b e2^2 + O(|eps|^3)`.
//! Every coefficient here is cross-checked against finite differences of the
//! tracked eigenvalue of the assembled Galerkin matrix.

use num_complex::Complex;
use serde::Serialize;

use crate::field::{C64, C_I};

/// Second-order Taylor coefficients of the tracked eigenvalue
/// `lambda+(eps) = i + c20 eps1^2 + c11 eps1 eps2 + c02 eps2^2 + O(|eps|^3)`
/// (both first-order coefficients vanish).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EigenvalueCoeffs {
    pub c20: C64,
    pub c11: C64,
    pub c02: C64,
}

/// `d/d eps1` at 0 of the `e^{-2 i theta}` component of the normalized
/// eigenvector: `(1 - 12 i b) / (1 + 144 b^2)`. The `eps2` companion
/// derivative is its negative.
pub fn eigvec_mode2_sensitivity(b: f64) -> C64 {
    Complex::new(1.0, -12.0 * b) / (1.0 + 144.0 * b * b)
}

pub fn eigenvalue_coeffs(b: f64) -> EigenvalueCoeffs {
    assert!(b > 0.0);
    let s = 1.0 + 144.0 * b * b;
    let c20 = Complex::new(-18.0 * b, 72.0 * b * b - 1.0) / (2.0 * s) - C_I / 3.0;
    let c11 = Complex::new(-6.0 * b, -(1.0 + 72.0 * b * b)) / (2.0 * s) - C_I / 2.0;
    let c02 = Complex::new(12.0 * b, 1.0) / s;
    EigenvalueCoeffs { c20, c11, c02 }
}

/// Quadratic model of the tracked eigenvalue.
pub fn lambda_quadratic(b: f64, eps1: f64, eps2: f64) -> C64 {
    let c = eigenvalue_coeffs(b);
    C_I + c.c20 * (eps1 * eps1) + c.c11 * (eps1 * eps2) + c.c02 * (eps2 * eps2)
}

/// Quadratic model of `Re lambda+`:
/// `(-9 b eps1^2 - 3 b eps1 eps2 + 12 b eps2^2) / (1 + 144 b^2)`.
pub fn re_lambda_quadratic(b: f64, eps1: f64, eps2: f64) -> f64 {
    (-9.0 * b * eps1 * eps1 - 3.0 * b * eps1 * eps2 + 12.0 * b * eps2 * eps2)
        / (1.0 + 144.0 * b * b)
}

/// Slope of the first-quadrant critical curve at the origin: the positive
/// root of `12 m^2 - 3 m - 9 = 0`, which is 1 for every `b > 0` (the
/// coefficient `3 b / (1 + 144 b^2)` of the quadratic form cancels).
pub fn critical_slope(b: f64) -> f64 {
    assert!(b > 0.0);
    let s = 1.0 + 144.0 * b * b;
    let (r20, r11, r02) = (-9.0 * b / s, -3.0 * b / s, 12.0 * b / s);
    (-r11 + (r11 * r11 - 4.0 * r02 * r20).sqrt()) / (2.0 * r02)
}

/// Linearized critical curve: `eps2 = critical_slope(b) * eps1`.
pub fn critical_eps2_linear(b: f64, eps1: f64) -> f64 {
    critical_slope(b) * eps1
}

/// Quadratic-form data of `Re lambda+` at the origin: coefficients, Hessian
/// determinant, and the tangent vectors of the two zero-locus branches.
#[derive(Debug, Clone, Serialize)]
pub struct QuadraticModel {
    pub b: f64,
    /// Coefficient of `eps1^2` in `Re lambda+`.
    pub r20: f64,
    /// Coefficient of `eps1 eps2`.
    pub r11: f64,
    /// Coefficient of `eps2^2`.
    pub r02: f64,
    /// `4 r20 r02 - r11^2 = -(21 b)^2 / (1 + 144 b^2)^2`; negative for every
    /// `b > 0` (saddle).
    pub hessian_det: f64,
    /// Tangent of the branch with positive slope (the first-quadrant curve),
    /// proportional to `(1, 1)`.
    pub tangent_minus: [f64; 2],
    /// Tangent of the branch with negative slope, proportional to `(-4, 3)`.
    pub tangent_plus: [f64; 2],
    pub e2_slope: f64,
}

pub fn quadratic_model(b: f64) -> QuadraticModel {
    assert!(b > 0.0);
    let s = 1.0 + 144.0 * b * b;
    let r20 = -9.0 * b / s;
    let r11 = -3.0 * b / s;
    let r02 = 12.0 * b / s;
    let hessian_det = 4.0 * r20 * r02 - r11 * r11;
    // r11 < 0 for every b > 0, so sign(r11) never hits the zero convention.
    assert!(r11 < 0.0);
    let root = (-hessian_det).sqrt();
    let shifted = r11 + r11.signum() * root;
    QuadraticModel {
        b,
        r20,
        r11,
        r02,
        hessian_det,
        tangent_minus: [-2.0 * r02, shifted],
        tangent_plus: [shifted, -2.0 * r20],
        e2_slope: critical_slope(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficients_at_b_one() {
        let c = eigenvalue_coeffs(1.0);
        assert!((c.c20 - Complex::new(-18.0 / 290.0, 71.0 / 290.0 - 1.0 / 3.0)).norm() < 1e-15);
        assert!((c.c20.re + 0.0620690).abs() < 1e-7);
        assert!((c.c20.im + 0.0885057).abs() < 1e-7);
        assert!((c.c02 - Complex::new(12.0, 1.0) / 145.0).norm() < 1e-16);
        assert!((c.c11 - Complex::new(-6.0 / 290.0, -73.0 / 290.0 - 0.5)).norm() < 1e-15);
    }

    #[test]
    fn real_parts_match_quadratic_form() {
        for b in [0.5, 1.0, 2.0] {
            let s = 1.0 + 144.0 * b * b;
            let c = eigenvalue_coeffs(b);
            assert!((c.c20.re * s + 9.0 * b).abs() < 8.0 * f64::EPSILON * 9.0 * b);
            assert!((c.c11.re * s + 3.0 * b).abs() < 8.0 * f64::EPSILON * 3.0 * b);
            assert!((c.c02.re * s - 12.0 * b).abs() < 8.0 * f64::EPSILON * 12.0 * b);
        }
    }

    #[test]
    fn coefficients_from_eigvec_sensitivities() {
        // Two routes to the same numbers: the expanded closed forms and the
        // inner-product reduction in terms of m1.
        for b in [0.3, 0.5, 1.0, 2.0, 5.0] {
            let m1 = eigvec_mode2_sensitivity(b);
            let c = eigenvalue_coeffs(b);
            let c20 = Complex::new(-3.0 * b, -0.5) * m1 - C_I / 3.0;
            let c11 = Complex::new(3.0 * b, -0.5) * m1 - C_I / 2.0;
            let c02 = C_I * m1;
            assert!((c.c20 - c20).norm() < 1e-15);
            assert!((c.c11 - c11).norm() < 1e-15);
            assert!((c.c02 - c02).norm() < 1e-16);
        }
    }

    #[test]
    fn sensitivity_vanishes_for_large_b() {
        assert!(eigvec_mode2_sensitivity(1e12).norm() < 1e-11);
        let m = eigvec_mode2_sensitivity(1.0);
        assert!((m - Complex::new(1.0, -12.0) / 145.0).norm() < 1e-16);
    }

    #[test]
    fn quadratic_form_values() {
        assert_eq!(re_lambda_quadratic(1.0, 0.0, 0.0), 0.0);
        assert!((re_lambda_quadratic(1.0, 0.01, 0.10) - 0.1161 / 145.0).abs() < 1e-18);
        assert!((re_lambda_quadratic(1.0, 0.01, 0.02) - 0.0033 / 145.0).abs() < 1e-18);
        // stable side sits below the slope-1 curve
        assert!((re_lambda_quadratic(1.0, 0.01, 0.005) + 0.00075 / 145.0).abs() < 1e-18);
        assert!(re_lambda_quadratic(1.0, 0.01, 0.005) < 0.0);
        // the (1,1) direction is tangent to the critical curve: the quadratic
        // form vanishes identically along it
        for b in [0.5, 1.0, 2.0] {
            assert!(re_lambda_quadratic(b, 0.03, 0.03).abs() < 1e-18);
        }
    }

    #[test]
    fn lambda_quadratic_examples() {
        assert_eq!(lambda_quadratic(1.0, 0.0, 0.0), C_I);
        for (e1, e2) in [(0.1, 0.0), (0.05, 0.03), (0.0, 0.2)] {
            let l = lambda_quadratic(1.0, e1, e2);
            assert!((l.re - re_lambda_quadratic(1.0, e1, e2)).abs() < 1e-17);
        }
        let l = lambda_quadratic(1.0, 0.1, 0.0);
        let c = eigenvalue_coeffs(1.0);
        assert!((l - (C_I + c.c20 * 0.01)).norm() < 1e-17);
    }

    #[test]
    fn hessian_model_at_b_one() {
        let q = quadratic_model(1.0);
        assert!((q.hessian_det + 441.0 / 21025.0).abs() < 1e-16);
        // first-quadrant tangent (1, 1); other branch (-4, 3)
        let slope = q.tangent_minus[1] / q.tangent_minus[0];
        assert!((slope - 1.0).abs() < 1e-13);
        let slope_plus = q.tangent_plus[1] / q.tangent_plus[0];
        assert!((slope_plus + 0.75).abs() < 1e-13);
        assert!((q.e2_slope - 1.0).abs() < 1e-14);
    }

    #[test]
    fn tangent_minus_slope_equals_critical_slope() {
        for b in [0.25, 0.5, 1.0, 2.0, 4.0] {
            let q = quadratic_model(b);
            let slope = q.tangent_minus[1] / q.tangent_minus[0];
            assert!(
                (slope / q.e2_slope - 1.0).abs() < 1e-12,
                "b={b}: {slope} vs {}",
                q.e2_slope
            );
        }
    }

    #[test]
    fn tangents_are_transversal() {
        for b in [0.1, 0.5, 1.0, 3.0, 10.0] {
            let q = quadratic_model(b);
            let cross =
                q.tangent_minus[0] * q.tangent_plus[1] - q.tangent_minus[1] * q.tangent_plus[0];
            let scale = (q.tangent_minus[0].hypot(q.tangent_minus[1]))
                * (q.tangent_plus[0].hypot(q.tangent_plus[1]));
            assert!(cross.abs() > 1e-6 * scale, "b={b}");
        }
    }

    #[test]
    fn critical_curve_values_and_root_property() {
        assert!((critical_eps2_linear(1.0, 0.01) - 0.01).abs() < 1e-16);
        assert_eq!(critical_eps2_linear(7.0, 0.0), 0.0);
        for b in [0.25, 1.0, 2.0, 8.0] {
            assert!((critical_slope(b) - 1.0).abs() < 1e-13, "b={b}");
            for e1 in [1e-3, 0.01, 0.1] {
                let r = re_lambda_quadratic(b, e1, critical_eps2_linear(b, e1));
                assert!(r.abs() < 1e-15, "b={b} e1={e1}: {r:e}");
            }
        }
    }
}
