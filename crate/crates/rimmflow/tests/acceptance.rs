//! Acceptance suite: one test per verification criterion, printing a
//! pass/fail line each. `cargo test --test acceptance -- --nocapture` shows
//! the per-criterion details; the same checks back `rimmflow verify`.

use rimmflow::verify::{self, CriterionResult};

fn check(r: CriterionResult) {
    println!(
        "{:4} {}  {:6.2}s  {} -- {}",
        r.id,
        if r.pass { "PASS" } else { "FAIL" },
        r.seconds,
        r.description,
        r.detail
    );
    assert!(r.pass, "{} failed: {}", r.id, r.detail);
}

#[test]
fn a1_unperturbed_spectrum() {
    let r = verify::a1_unperturbed_spectrum();
    assert!(r.seconds < 1.0, "runtime budget exceeded: {:.2}s", r.seconds);
    check(r);
}

#[test]
fn a2_steady_taylor_match() {
    check(verify::a2_steady_taylor_match());
}

#[test]
fn a3_eigenvalue_coefficients() {
    check(verify::a3_eigenvalue_coefficients());
}

#[test]
fn a4_quadratic_form_hessian() {
    check(verify::a4_quadratic_form_hessian());
}

#[test]
fn a5_critical_curve() {
    check(verify::a5_critical_curve());
}

#[test]
fn a6_branch_tangents() {
    check(verify::a6_branch_tangents());
}

#[test]
fn a7_mass_conservation() {
    check(verify::a7_mass_conservation());
}

#[test]
fn a8_stable_decay() {
    let r = verify::a8_stable_decay();
    assert!(r.seconds < 20.0, "runtime budget exceeded: {:.2}s", r.seconds);
    check(r);
}

#[test]
fn a9_unstable_cycle() {
    let r = verify::a9_unstable_cycle();
    assert!(r.seconds < 60.0, "runtime budget exceeded: {:.2}s", r.seconds);
    check(r);
}

#[test]
fn a10_linear_propagator_oracle() {
    check(verify::a10_linear_propagator_oracle());
}
