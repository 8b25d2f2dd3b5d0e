//! Property tests for the spectral field algebra.

use num_complex::Complex;
use proptest::prelude::*;
use rimmflow::field::{C64, SpectralField};

const N: usize = 10;

fn real_field() -> impl Strategy<Value = SpectralField> {
    // c_0 real, c_n arbitrary for n > 0, c_{-n} = conj(c_n)
    (
        -1.0..1.0f64,
        proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), N),
    )
        .prop_map(|(c0, tail)| {
            let mut f = SpectralField::zero(N);
            f.set_coeff(0, Complex::new(c0, 0.0));
            for (k, (re, im)) in tail.into_iter().enumerate() {
                let n = (k + 1) as i64;
                let c = Complex::new(re, im);
                f.set_coeff(n, c);
                f.set_coeff(-n, c.conj());
            }
            f
        })
}

fn complex_field() -> impl Strategy<Value = SpectralField> {
    proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 2 * N + 1).prop_map(|coeffs| {
        SpectralField::from_coeffs(
            N,
            coeffs.into_iter().map(|(re, im)| Complex::new(re, im)).collect(),
        )
    })
}

/// Quadrature oracle for the inner product (direct evaluation, no FFT).
fn quadrature_inner(f: &SpectralField, g: &SpectralField, points: usize) -> C64 {
    let mut acc = Complex::new(0.0, 0.0);
    for j in 0..points {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / points as f64;
        acc += f.eval(theta) * g.eval(theta).conj();
    }
    acc / points as f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugate_symmetry_is_exact_under_the_algebra(f in real_field(), g in real_field()) {
        prop_assert_eq!(f.product_full(&g).conjugate_symmetry_error(), 0.0);
        prop_assert_eq!(f.product(&g).conjugate_symmetry_error(), 0.0);
        prop_assert_eq!(f.derivative(1).conjugate_symmetry_error(), 0.0);
        prop_assert_eq!(f.derivative(3).conjugate_symmetry_error(), 0.0);
        prop_assert_eq!(f.capillary(1.7).conjugate_symmetry_error(), 0.0);
        prop_assert_eq!(f.capillary_resolvent(0.4).conjugate_symmetry_error(), 0.0);
        prop_assert_eq!(f.mul_sin().conjugate_symmetry_error(), 0.0);
        prop_assert_eq!(f.mul_cos().conjugate_symmetry_error(), 0.0);
        prop_assert_eq!(f.plus(&g).conjugate_symmetry_error(), 0.0);
        prop_assert_eq!(f.project_mean_zero().conjugate_symmetry_error(), 0.0);
    }

    #[test]
    fn parseval_matches_quadrature(f in complex_field(), g in complex_field()) {
        let quad = quadrature_inner(&f, &g, 4 * N + 1);
        prop_assert!((f.inner(&g) - quad).norm() < 1e-12);
    }

    #[test]
    fn inner_is_conjugate_symmetric(f in complex_field(), g in complex_field()) {
        prop_assert!((f.inner(&g) - g.inner(&f).conj()).norm() < 1e-15);
    }

    #[test]
    fn resolvent_inverts_per_mode(f in complex_field(), b in 0.05..8.0f64) {
        let inv = f.capillary_resolvent(b);
        let back = inv.capillary(b).plus(&inv);
        for n in -(N as i64)..=(N as i64) {
            let err = (back.coeff(n) - f.coeff(n)).norm();
            prop_assert!(err <= 10.0 * f64::EPSILON * f.coeff(n).norm().max(1.0));
        }
    }

    #[test]
    fn product_is_commutative_and_one_is_identity(f in complex_field(), g in complex_field()) {
        let fg = f.product_full(&g);
        let gf = g.product_full(&f);
        prop_assert!(fg.minus(&gf).l2_norm() < 1e-13);
        let one = SpectralField::one(N);
        prop_assert!(f.product(&one).minus(&f).l2_norm() < 1e-15);
    }

    #[test]
    fn derivative_satisfies_product_rule(f in complex_field(), g in complex_field()) {
        let lhs = f.product_full(&g).derivative(1);
        let rhs = f.derivative(1).product_full(&g).plus(&f.product_full(&g.derivative(1)));
        prop_assert!(lhs.minus(&rhs).l2_norm() < 1e-12 * (1.0 + lhs.l2_norm()));
    }

    #[test]
    fn mean_zero_projection_is_idempotent(f in complex_field()) {
        let p = f.project_mean_zero();
        prop_assert!(p.mean_zero());
        prop_assert_eq!(p.project_mean_zero(), p.clone());
        prop_assert_eq!(p.inner(&SpectralField::one(N)), Complex::new(0.0, 0.0));
    }

    #[test]
    fn json_round_trip(f in complex_field()) {
        let text = serde_json::to_string(&f).unwrap();
        let back: SpectralField = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn sin_cos_multiplication_agrees_with_products(f in complex_field()) {
        // mul_sin/mul_cos are shift shortcuts for product with sin/cos
        let sin = SpectralField::sin_theta(N + 1);
        let cos = SpectralField::cos_theta(N + 1);
        prop_assert!(f.mul_sin().minus(&f.product_full(&sin).with_n_max(N + 1)).l2_norm() < 1e-14);
        prop_assert!(f.mul_cos().minus(&f.product_full(&cos).with_n_max(N + 1)).l2_norm() < 1e-14);
    }
}
