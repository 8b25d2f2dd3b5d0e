//! Built-in verification suite: ten cross-route consistency checks runnable
//! at desk scale, each pinning closed-form references against the assembled
//! numerics at fixed tolerances, plus a golden-table regression.

use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::evolve::{EvolveOptions, evolve, fit_log_slope};
use crate::field::{C64, SpectralField};
use crate::hopf::{HopfOptions, Stability, classify, lambda_plus_tracked, trace_critical_curve};
use crate::linop::{field_to_vec_mean_zero, linearized_matrix, mean_zero_mode, vec_to_field_mean_zero};
use crate::params::Params;
use crate::perturb::{critical_slope, eigenvalue_coeffs, quadratic_model};
use crate::steady::{SteadyOptions, SteadyState, solve_steady, taylor_steady};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: &'static str,
    pub description: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

fn run(
    id: &'static str,
    description: &'static str,
    body: impl FnOnce() -> Result<(bool, String)>,
) -> CriterionResult {
    let start = Instant::now();
    let (pass, detail) = match body() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult {
        id,
        description,
        pass,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Matrix exponential by scaled Taylor series with repeated squaring.
/// Test oracle: independent of the time-stepping path it is used to check.
pub fn expm(a: &DMatrix<C64>) -> DMatrix<C64> {
    let n = a.nrows();
    let norm1: f64 = (0..n)
        .map(|j| (0..n).map(|i| a[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm1 > 0.25 {
        (norm1 / 0.25).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.map(|x| x / 2f64.powi(squarings as i32));
    let mut result = DMatrix::<C64>::identity(n, n);
    let mut term = DMatrix::<C64>::identity(n, n);
    for k in 1..=25 {
        term = (&term * &scaled).map(|x| x / k as f64);
        result += &term;
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

fn steady(b: f64, eps1: f64, eps2: f64, n_max: usize) -> Result<SteadyState> {
    solve_steady(&Params::new(b, eps1, eps2)?, &SteadyOptions::with_n_max(n_max))
}

fn omega(b: f64, n: f64) -> C64 {
    Complex::new(-b * (n.powi(4) - n.powi(2)), -n)
}

/// Perturbation `amp * cos(theta - phase)`, mean-zero.
fn cos_perturbation(n_max: usize, amp: f64, phase: f64) -> SpectralField {
    let mut u = SpectralField::zero(n_max);
    u.set_coeff(1, Complex::from_polar(amp / 2.0, -phase));
    u.set_coeff(-1, Complex::from_polar(amp / 2.0, phase));
    u
}

/// A1: the operator at eps = 0 is diagonal with entries
/// `omega_n = -b (n^4 - n^2) - i n`, and the leading pair is exactly +-i.
pub fn a1_unperturbed_spectrum() -> CriterionResult {
    run("A1", "unperturbed spectrum is diagonal with omega_n", || {
        let n_max = 32usize;
        let mut worst: f64 = 0.0;
        let mut lead: f64 = 0.0;
        for b in [0.5, 1.0, 2.0] {
            let s = steady(b, 0.0, 0.0, n_max)?;
            let a = linearized_matrix(&s);
            for i in 0..2 * n_max {
                for j in 0..2 * n_max {
                    let expect = if i == j {
                        omega(b, mean_zero_mode(i, n_max) as f64)
                    } else {
                        crate::field::C_ZERO
                    };
                    worst = worst.max((a[(i, j)] - expect).norm());
                }
            }
            let report = crate::linop::leading_pair(&s, &Default::default())?;
            lead = lead
                .max((report.lambda_plus - crate::field::C_I).norm())
                .max((report.lambda_minus + crate::field::C_I).norm());
        }
        Ok((
            worst <= 1e-12 && lead <= 1e-13,
            format!("max matrix deviation {worst:.2e} (<=1e-12), leading pair off by {lead:.2e}"),
        ))
    })
}

/// A2: Newton profile minus its second-order expansion scales like |eps|^3
/// along eps = t (1,1), and the mean mass follows `1 + t^2/3` the same way.
pub fn a2_steady_taylor_match() -> CriterionResult {
    run("A2", "steady profile matches second-order expansion to O(|eps|^3)", || {
        let n_max = 32usize;
        let mut errs = Vec::new();
        let mut mass_errs = Vec::new();
        for t in [0.08, 0.04, 0.02] {
            let p = Params::new(1.0, t, t)?;
            let s = solve_steady(&p, &SteadyOptions::with_n_max(n_max))?;
            errs.push(s.h.minus(&taylor_steady(&p, n_max)).l2_norm());
            mass_errs.push((s.mean_mass() - (1.0 + t * t / 6.0 + t * t / 6.0)).abs());
        }
        let mut pass = true;
        let mut notes = Vec::new();
        for w in errs.windows(2) {
            let ratio = w[0] / w[1];
            pass &= (6.0..=10.0).contains(&ratio);
            notes.push(format!("profile ratio {ratio:.2}"));
        }
        for w in mass_errs.windows(2) {
            let ratio = w[0] / w[1];
            // cubic or better (a vanishing cubic coefficient gives ~16)
            pass &= (6.0..=20.0).contains(&ratio);
            notes.push(format!("mass ratio {ratio:.2}"));
        }
        Ok((pass, notes.join(", ")))
    })
}

struct FdStencil {
    fd20: C64,
    fd11: C64,
    fd02: C64,
    first_max: f64,
}

fn lambda_fd_stencil(b: f64, step: f64, n_max: usize) -> Result<FdStencil> {
    let opts = HopfOptions::with_n_max(n_max);
    let lam = |e1: f64, e2: f64| -> Result<C64> {
        lambda_plus_tracked(&Params::new(b, e1, e2)?, &opts, None)
    };
    let l00 = lam(0.0, 0.0)?;
    let (lp0, lm0) = (lam(step, 0.0)?, lam(-step, 0.0)?);
    let (l0p, l0m) = (lam(0.0, step)?, lam(0.0, -step)?);
    let (lpp, lpm, lmp, lmm) = (
        lam(step, step)?,
        lam(step, -step)?,
        lam(-step, step)?,
        lam(-step, -step)?,
    );
    let s2 = step * step;
    Ok(FdStencil {
        fd20: (lp0 - l00 * 2.0 + lm0) / (2.0 * s2),
        fd02: (l0p - l00 * 2.0 + l0m) / (2.0 * s2),
        fd11: (lpp - lpm - lmp + lmm) / (4.0 * s2),
        first_max: ((lp0 - lm0) / (2.0 * step))
            .norm()
            .max(((l0p - l0m) / (2.0 * step)).norm()),
    })
}

/// A3: centered differences of the tracked eigenvalue reproduce the
/// second-order coefficients within 1% (both parts), and the first-order
/// coefficients vanish to O(step^2).
pub fn a3_eigenvalue_coefficients() -> CriterionResult {
    run("A3", "finite differences of lambda+ match closed-form coefficients", || {
        let step = 1e-3;
        let mut pass = true;
        let mut notes = Vec::new();
        for b in [0.5, 1.0, 2.0] {
            let st = lambda_fd_stencil(b, step, 32)?;
            let c = eigenvalue_coeffs(b);
            // fd20 approximates c20 etc. (stencils carry the 2!/1!1! factors)
            for (name, fd, expect) in [
                ("c20", st.fd20, c.c20),
                ("c11", st.fd11, c.c11),
                ("c02", st.fd02, c.c02),
            ] {
                let re_ok = (fd.re - expect.re).abs() <= 0.01 * expect.re.abs();
                let im_ok = (fd.im - expect.im).abs() <= 0.01 * expect.im.abs();
                pass &= re_ok && im_ok;
                if !(re_ok && im_ok) {
                    notes.push(format!("b={b} {name}: fd {fd} vs {expect}"));
                }
            }
            // first differences: O(step^2) with a modest constant
            pass &= st.first_max <= 100.0 * step * step;
            notes.push(format!("b={b} first-diff {:.2e}", st.first_max));
        }
        Ok((pass, notes.join("; ")))
    })
}

/// A4: the Hessian of `Re lambda+` at the origin matches
/// `(-18b, -3b, 24b)/(1+144 b^2)` within 1%, with negative determinant.
pub fn a4_quadratic_form_hessian() -> CriterionResult {
    run("A4", "Hessian of Re lambda+ matches the quadratic form", || {
        let step = 1e-3;
        let mut pass = true;
        let mut notes = Vec::new();
        for b in [0.5, 1.0, 2.0] {
            let st = lambda_fd_stencil(b, step, 32)?;
            let s = 1.0 + 144.0 * b * b;
            let (h20, h11, h02) = (st.fd20.re * 2.0, st.fd11.re, st.fd02.re * 2.0);
            for (name, got, expect) in [
                ("d11", h20, -18.0 * b / s),
                ("d12", h11, -3.0 * b / s),
                ("d22", h02, 24.0 * b / s),
            ] {
                let ok = (got - expect).abs() <= 0.01 * expect.abs();
                pass &= ok;
                if !ok {
                    notes.push(format!("b={b} {name}: {got:.6e} vs {expect:.6e}"));
                }
            }
            if b == 1.0 {
                let det = h20 * h02 - h11 * h11;
                let expect = -441.0 / 21025.0;
                let ok = det < 0.0 && (det - expect).abs() <= 0.10 * expect.abs();
                pass &= ok;
                notes.push(format!("det {det:.6e} vs {expect:.6e}"));
            }
        }
        Ok((pass, notes.join("; ")))
    })
}

/// A5: the traced critical curve is strictly increasing, its small-end slope
/// is 1 within 2%, and classification flips across every traced point.
pub fn a5_critical_curve() -> CriterionResult {
    run("A5", "traced critical curve: monotone, slope, classification flip", || {
        let opts = HopfOptions::with_n_max(32);
        let grid: Vec<f64> = (1..=8).map(|k| 0.0025 * k as f64).collect();
        let samples = trace_critical_curve(1.0, &grid, 1e-10, &opts)?;
        let mut pass = true;
        let mut notes = Vec::new();

        let increasing = samples.windows(2).all(|w| w[1].e2_numeric > w[0].e2_numeric);
        pass &= increasing;
        notes.push(format!("increasing: {increasing}"));

        let slope = (samples[1].e2_numeric - samples[0].e2_numeric) / 0.0025;
        let expect = critical_slope(1.0);
        let slope_ok = (slope - expect).abs() <= 0.02 * expect;
        pass &= slope_ok;
        notes.push(format!("small-end slope {slope:.5} vs {expect:.5}"));

        for s in &samples {
            let below = classify(&Params::new(1.0, s.eps1, s.e2_numeric - 1e-3)?, &opts)?;
            let above = classify(&Params::new(1.0, s.eps1, s.e2_numeric + 1e-3)?, &opts)?;
            let ok = below == Stability::Stable && above == Stability::Unstable;
            pass &= ok;
            if !ok {
                notes.push(format!("no flip at eps1={}: {below:?}/{above:?}", s.eps1));
            }
        }
        notes.push("classification flips across curve".into());
        Ok((pass, notes.join("; ")))
    })
}

/// A6: measured tangent directions of the two zero branches at the origin
/// agree with the model tangents within 2 degrees.
pub fn a6_branch_tangents() -> CriterionResult {
    run("A6", "zero-locus branch tangents match the saddle model", || {
        let radius = 0.01;
        let opts = HopfOptions::with_n_max(32);
        let mut pass = true;
        let mut notes = Vec::new();
        for b in [0.5, 1.0, 2.0] {
            let r_at = |phi: f64| -> Result<f64> {
                Ok(lambda_plus_tracked(
                    &Params::new(b, radius * phi.cos(), radius * phi.sin())?,
                    &opts,
                    None,
                )?
                .re)
            };
            let q = quadratic_model(b);
            for (tangent, label) in [(q.tangent_minus, "minus"), (q.tangent_plus, "plus")] {
                let model_phi = tangent[1].atan2(tangent[0]);
                // Localize both antipodal roots and average out curvature.
                let mut measured = Vec::new();
                for offset in [0.0, std::f64::consts::PI] {
                    let mut lo = model_phi + offset - 0.3;
                    let mut hi = model_phi + offset + 0.3;
                    let mut f_lo = r_at(lo)?;
                    let f_hi = r_at(hi)?;
                    if f_lo.signum() == f_hi.signum() {
                        pass = false;
                        notes.push(format!("b={b} {label}: no sign change near branch"));
                        continue;
                    }
                    for _ in 0..40 {
                        let mid = 0.5 * (lo + hi);
                        let f_mid = r_at(mid)?;
                        if f_mid.signum() == f_lo.signum() {
                            lo = mid;
                            f_lo = f_mid;
                        } else {
                            hi = mid;
                        }
                    }
                    measured.push(0.5 * (lo + hi) - offset);
                }
                if measured.len() == 2 {
                    let avg = 0.5 * (measured[0] + measured[1]);
                    let err_deg = (avg - model_phi).abs().to_degrees();
                    pass &= err_deg <= 2.0;
                    notes.push(format!("b={b} {label}: {err_deg:.3} deg"));
                }
            }
        }
        Ok((pass, notes.join("; ")))
    })
}

fn demo_run(
    eps2: f64,
    amp: f64,
    dt: f64,
    t_end: f64,
) -> Result<(SteadyState, crate::evolve::TrajectorySummary)> {
    let s = steady(1.0, 0.01, eps2, 32)?;
    let h0 = s.h.plus(&cos_perturbation(32, amp, 0.3));
    let traj = evolve(&h0, &s, &EvolveOptions::new(dt, t_end))?;
    Ok((s, traj))
}

/// A7: mass is conserved to 1e-10 over t in [0, 50] at dt = 1e-3 on both
/// demo runs (it is bitwise constant by construction).
pub fn a7_mass_conservation() -> CriterionResult {
    run("A7", "mass conserved on stable and unstable demo runs", || {
        let mut worst: f64 = 0.0;
        for (eps2, amp) in [(0.005, 1e-3), (0.02, 1e-5)] {
            let (_, traj) = demo_run(eps2, amp, 1e-3, 50.0)?;
            let m0 = traj.mass[0];
            for m in &traj.mass {
                worst = worst.max((m - m0).abs());
            }
        }
        Ok((worst < 1e-10, format!("max |mass(t) - mass(0)| = {worst:.2e}")))
    })
}

/// A8: on the stable side the fitted rate of ||h - H|| matches the tracked
/// eigenvalue's real part within 10%.
pub fn a8_stable_decay() -> CriterionResult {
    run("A8", "stable-side decay rate matches Re lambda+", || {
        let p = Params::new(1.0, 0.01, 0.005)?;
        let r = crate::hopf::re_lambda_numeric(&p, 32)?;
        let (_, traj) = demo_run(0.005, 1e-3, 1e-3, 100.0)?;
        let fitted = traj.measured_rate.unwrap_or(f64::NAN);
        let rel = (fitted - r) / r.abs();
        Ok((
            r < 0.0 && fitted < 0.0 && rel.abs() <= 0.10,
            format!("fitted {fitted:.4e} vs Re lambda+ {r:.4e} ({:+.2}%)", 100.0 * rel),
        ))
    })
}

/// A9: just above the critical curve a small perturbation grows at
/// `Re lambda+` within 10%, stays bounded to t = 400, and oscillates with
/// period `2 pi / Im lambda+` within 5% (jitter < 2% over the last 20
/// periods).
pub fn a9_unstable_cycle() -> CriterionResult {
    run("A9", "unstable-side growth rate, boundedness, and cycle period", || {
        let opts = HopfOptions::with_n_max(32);
        let (sample, _) = crate::hopf::trace_point(1.0, 0.01, 1e-10, &opts, None)?;
        let eps2 = sample.e2_numeric + 0.01;
        let p = Params::new(1.0, 0.01, eps2)?;
        let lambda = lambda_plus_tracked(&p, &opts, None)?;

        let mut pass = true;
        let mut notes = Vec::new();

        // growth-rate fit on the early (still linear) segment
        let (_, growth) = demo_run(eps2, 1e-5, 5e-4, 80.0)?;
        let fitted = fit_log_slope(&growth.times, &growth.dist).unwrap_or(f64::NAN);
        let rel = (fitted - lambda.re) / lambda.re.abs();
        pass &= lambda.re > 0.0 && rel.abs() <= 0.10;
        notes.push(format!(
            "growth {fitted:.4e} vs Re lambda+ {:.4e} ({:+.2}%)",
            lambda.re,
            100.0 * rel
        ));

        // long run: boundedness and cycle
        let (_, long) = demo_run(eps2, 1e-5, 1e-3, 400.0)?;
        let max_dist = long.dist.iter().cloned().fold(0.0, f64::max);
        pass &= max_dist < 0.2;
        notes.push(format!("max dist {max_dist:.3e}"));

        let period_expect = 2.0 * std::f64::consts::PI / lambda.im;
        let tail_start = 400.0 - 20.0 * period_expect;
        let idx = long.times.iter().position(|&t| t >= tail_start).unwrap();
        let times = &long.times[idx..];
        let signal = &long.signal[idx..];
        match crate::evolve::detect_cycle(times, signal) {
            Some(cycle) => {
                let rel_p = (cycle.period - period_expect) / period_expect;
                pass &= rel_p.abs() <= 0.05;
                notes.push(format!(
                    "period {:.5} vs {period_expect:.5} ({:+.2}%)",
                    cycle.period,
                    100.0 * rel_p
                ));
                // jitter over the final 20 periods
                let mean = signal.iter().sum::<f64>() / signal.len() as f64;
                let mut crossings = Vec::new();
                for k in 1..signal.len() {
                    let (a, b) = (signal[k - 1] - mean, signal[k] - mean);
                    if a < 0.0 && b >= 0.0 {
                        crossings.push(times[k - 1] + a / (a - b) * (times[k] - times[k - 1]));
                    }
                }
                let spacings: Vec<f64> = crossings.windows(2).map(|w| w[1] - w[0]).collect();
                let mean_p = spacings.iter().sum::<f64>() / spacings.len() as f64;
                let jitter = spacings
                    .iter()
                    .map(|d| (d - mean_p).abs())
                    .fold(0.0, f64::max)
                    / mean_p;
                pass &= jitter < 0.02;
                notes.push(format!("jitter {:.3}%", 100.0 * jitter));
            }
            None => {
                pass = false;
                notes.push("no cycle detected".into());
            }
        }
        Ok((pass, notes.join("; ")))
    })
}

/// A10: for a 1e-6 perturbation the nonlinear propagator over t = 1 matches
/// the matrix exponential of the Galerkin operator within 1e-6 relative
/// error.
pub fn a10_linear_propagator_oracle() -> CriterionResult {
    run("A10", "nonlinear step matches Galerkin matrix exponential", || {
        let n_max = 32usize;
        let s = steady(1.0, 0.01, 0.005, n_max)?;
        let u0 = cos_perturbation(n_max, 1e-6, 0.3);
        let h0 = s.h.plus(&u0);

        let dt = 1e-4;
        let stepper = crate::evolve::Stepper::new(&s, dt)?;
        let mut h = h0;
        for _ in 0..(1.0 / dt).round() as usize {
            h = stepper.step(&h)?.0;
        }
        let u_num = h.minus(&s.h);

        let a = linearized_matrix(&s);
        let propagator = expm(&a);
        let u_oracle = vec_to_field_mean_zero(&(&propagator * field_to_vec_mean_zero(&u0, n_max)), n_max);

        let rel = u_num.minus(&u_oracle).l2_norm() / u_oracle.l2_norm();
        Ok((rel <= 1e-6, format!("relative deviation {rel:.3e} (<= 1e-6)")))
    })
}

/// Reference table pinned against drift: quadratic-model data per `b` plus
/// the slowest unperturbed eigenvalues.
#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct GoldenTable {
    pub rows: Vec<GoldenRow>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct GoldenRow {
    pub b: f64,
    pub r20: f64,
    pub r11: f64,
    pub r02: f64,
    pub hessian_det: f64,
    pub e2_slope: f64,
    pub omega2_re: f64,
    pub omega2_im: f64,
}

pub fn golden_table() -> GoldenTable {
    let rows = [0.5, 1.0, 2.0]
        .iter()
        .map(|&b| {
            let q = quadratic_model(b);
            let w2 = omega(b, 2.0);
            GoldenRow {
                b,
                r20: q.r20,
                r11: q.r11,
                r02: q.r02,
                hessian_det: q.hessian_det,
                e2_slope: q.e2_slope,
                omega2_re: w2.re,
                omega2_im: w2.im,
            }
        })
        .collect();
    GoldenTable { rows }
}

/// Compare the computed golden table against a serialized reference.
/// Mismatch details name the offending source.
pub fn golden_check(reference_json: &str, source: &str) -> CriterionResult {
    run("G1", "golden reference table", || {
        let reference: GoldenTable = match serde_json::from_str(reference_json) {
            Ok(t) => t,
            Err(e) => return Ok((false, format!("unreadable golden file {source}: {e}"))),
        };
        let computed = golden_table();
        if reference.rows.len() != computed.rows.len() {
            return Ok((
                false,
                format!(
                    "golden {source}: row count {} vs computed {}",
                    reference.rows.len(),
                    computed.rows.len()
                ),
            ));
        }
        for (r, c) in reference.rows.iter().zip(computed.rows.iter()) {
            for (name, rv, cv) in [
                ("b", r.b, c.b),
                ("r20", r.r20, c.r20),
                ("r11", r.r11, c.r11),
                ("r02", r.r02, c.r02),
                ("hessian_det", r.hessian_det, c.hessian_det),
                ("e2_slope", r.e2_slope, c.e2_slope),
                ("omega2_re", r.omega2_re, c.omega2_re),
                ("omega2_im", r.omega2_im, c.omega2_im),
            ] {
                if (rv - cv).abs() > 1e-12 * cv.abs().max(1.0) {
                    return Ok((
                        false,
                        format!("golden {source}: b={} field {name}: {rv:e} vs computed {cv:e}", r.b),
                    ));
                }
            }
        }
        Ok((true, format!("matches {source}")))
    })
}

/// Run the verification suite. `quick` restricts to the closed-form checks
/// (no long time integrations).
pub fn run_all(quick: bool) -> Vec<CriterionResult> {
    let mut results = vec![
        a1_unperturbed_spectrum(),
        a2_steady_taylor_match(),
        a3_eigenvalue_coefficients(),
        a4_quadratic_form_hessian(),
        a5_critical_curve(),
        a6_branch_tangents(),
    ];
    if !quick {
        results.push(a7_mass_conservation());
        results.push(a8_stable_decay());
        results.push(a9_unstable_cycle());
        results.push(a10_linear_propagator_oracle());
    }
    results
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm_of_diagonal_matrix() {
        let d = DMatrix::from_fn(4, 4, |i, j| {
            if i == j {
                Complex::new(-(i as f64) * 3.0, 1.0 + i as f64)
            } else {
                crate::field::C_ZERO
            }
        });
        let e = expm(&d);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j {
                    d[(i, i)].exp()
                } else {
                    crate::field::C_ZERO
                };
                assert!((e[(i, j)] - expect).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn expm_matches_squared_half() {
        // exp(A) = exp(A/2)^2 for a small random-ish complex matrix
        let a = DMatrix::from_fn(5, 5, |i, j| {
            Complex::new(
                ((i * 7 + j * 3) % 5) as f64 * 0.1 - 0.2,
                ((i * 5 + j * 11) % 7) as f64 * 0.1 - 0.3,
            )
        });
        let whole = expm(&a);
        let half = expm(&a.map(|x| x * 0.5));
        let hh = &half * &half;
        let err = (&whole - &hh).norm();
        assert!(err < 1e-12, "{err:.3e}");
    }

    #[test]
    fn golden_round_trip_and_corruption() {
        let text = serde_json::to_string(&golden_table()).unwrap();
        let ok = golden_check(&text, "inline");
        assert!(ok.pass, "{}", ok.detail);

        let corrupted = text.replace("\"b\":0.5", "\"b\":0.51");
        let bad = golden_check(&corrupted, "corrupted.json");
        assert!(!bad.pass);
        assert!(bad.detail.contains("corrupted.json"));
    }
}
