//! Invariants that tie the closed-form perturbation data to the assembled
//! numerics across module boundaries.

use num_complex::Complex;
use rimmflow::evolve::Stepper;
use rimmflow::field::SpectralField;
use rimmflow::hopf::{HopfOptions, lambda_plus_tracked, trace_critical_curve};
use rimmflow::linop::{eigenvector_normalized, leading_pair, linearized_matrix};
use rimmflow::params::Params;
use rimmflow::perturb::{critical_slope, lambda_quadratic};
use rimmflow::steady::{SteadyOptions, solve_steady};

#[test]
fn quadratic_model_matches_tracked_eigenvalue_to_third_order() {
    // |lambda_numeric - lambda_quadratic| along eps = t (1,1) shrinks by 8x
    // per halving when the remainder is cubic and 16x when the cubic term
    // happens to vanish along the diagonal; a wrong quadratic coefficient
    // would cap the ratio at 4.
    let opts = HopfOptions::with_n_max(32);
    for b in [0.5, 1.0, 2.0] {
        let mut errs = Vec::new();
        for t in [0.08, 0.04, 0.02] {
            let p = Params::new(b, t, t).unwrap();
            let lam = lambda_plus_tracked(&p, &opts, None).unwrap();
            errs.push((lam - lambda_quadratic(b, t, t)).norm());
        }
        for w in errs.windows(2) {
            let ratio = w[0] / w[1];
            assert!((6.0..=20.0).contains(&ratio), "b={b}: remainder ratio {ratio}");
        }
    }
}

#[test]
fn critical_slope_is_one_for_every_b() {
    // The coefficient b cancels from the slope quadratic, so the curve
    // leaves the origin along (1, 1) regardless of surface tension.
    let opts = HopfOptions::with_n_max(24);
    for b in [0.5, 2.0] {
        let samples = trace_critical_curve(b, &[0.004, 0.008], 1e-11, &opts).unwrap();
        for s in &samples {
            let ratio = s.e2_numeric / s.eps1;
            assert!((ratio - 1.0).abs() < 0.02, "b={b}: {ratio}");
        }
    }
}

#[test]
fn asymptote_discrepancy_shrinks_toward_origin() {
    let opts = HopfOptions::with_n_max(32);
    let grid = [0.02, 0.01, 0.005, 0.0025];
    let slope = critical_slope(1.0);
    let mut discrepancies = Vec::new();
    // trace from large to small so the eigenvalue seed chains inward
    let samples = trace_critical_curve(1.0, &grid, 1e-11, &opts).unwrap();
    for s in &samples {
        discrepancies.push((s.e2_numeric / s.eps1 - slope).abs());
    }
    for w in discrepancies.windows(2) {
        assert!(w[1] < w[0], "discrepancies not decreasing: {discrepancies:?}");
    }
}

#[test]
fn single_step_reproduces_eigenvalue_growth_factor() {
    let n_max = 32usize;
    let p = Params::new(1.0, 0.01, 0.005).unwrap();
    let s = solve_steady(&p, &SteadyOptions::with_n_max(n_max)).unwrap();
    let report = leading_pair(&s, &Default::default()).unwrap();
    let pair = eigenvector_normalized(&linearized_matrix(&s), report.lambda_plus).unwrap();

    // real perturbation along the critical eigenmode
    let amp = 1e-6;
    let mut u = SpectralField::zero(n_max);
    for n in -(n_max as i64)..=(n_max as i64) {
        let c = (pair.psi.coeff(n) + pair.psi.coeff(-n).conj()) * (amp / 2.0);
        u.set_coeff(n, c);
    }
    let h = s.h.plus(&u);

    let dt = 1e-3;
    let stepper = Stepper::new(&s, dt).unwrap();
    let (h_next, _) = stepper.step(&h).unwrap();
    let u_next = h_next.minus(&s.h);

    let ratio = u_next.coeff(-1) / u.coeff(-1);
    let expect = (report.lambda_plus * dt).exp();
    let err = (ratio - expect).norm();
    assert!(err < 1e-6, "growth factor off by {err:.3e}");
}

#[test]
fn eigenvector_tail_decays_spectrally() {
    // The tracked eigenvector is a perturbation series in eps: one extra
    // negative mode per order, so the tail falls off fast and truncation is
    // benign.
    let s = solve_steady(
        &Params::new(1.0, 0.05, 0.05).unwrap(),
        &SteadyOptions::with_n_max(32),
    )
    .unwrap();
    let report = leading_pair(&s, &Default::default()).unwrap();
    let pair = eigenvector_normalized(&linearized_matrix(&s), report.lambda_plus).unwrap();
    assert!((pair.psi.coeff(-1) - Complex::new(1.0, 0.0)).norm() < 1e-13);
    assert!(pair.psi.coeff(-2).norm() < 0.02);
    assert!(pair.psi.coeff(-5).norm() < 1e-7);
    assert!(pair.psi.coeff(5).norm() < 1e-7);
}
