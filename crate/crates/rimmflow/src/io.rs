//! Plot-ready CSV renderings of the main result types.
//!
//! Every table starts with a `#`-comment line (callers put a config hash
//! there) followed by a header row naming the columns.

use std::fmt::Write as _;

use crate::evolve::TrajectorySummary;
use crate::field::SpectralField;
use crate::grid::PhysicalGrid;
use crate::hopf::HopfCurveSample;
use crate::linop::SpectrumReport;
use crate::perturb::quadratic_model;

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Grid samples `(theta_j, f(theta_j))` of a real-valued field.
pub fn field_csv(f: &SpectralField, comment: &str) -> String {
    let grid = PhysicalGrid::new(f.n_max());
    let values = grid.to_grid(f);
    let mut out = String::new();
    let _ = writeln!(out, "# {comment}");
    let _ = writeln!(out, "theta,value");
    for (theta, v) in grid.theta.iter().zip(values.iter()) {
        let _ = writeln!(out, "{},{}", num(*theta), num(v.re));
    }
    out
}

/// One `(Re, Im)` row per eigenvalue.
pub fn spectrum_csv(report: &SpectrumReport, comment: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {comment}");
    let _ = writeln!(out, "re,im");
    for e in &report.eigenvalues {
        let _ = writeln!(out, "{},{}", num(e.re), num(e.im));
    }
    out
}

pub fn curve_csv(samples: &[HopfCurveSample], comment: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {comment}");
    let _ = writeln!(out, "eps1,e2_numeric,e2_asymptotic,residual,gap_ok");
    for s in samples {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            num(s.eps1),
            num(s.e2_numeric),
            num(s.e2_asymptotic),
            num(s.r_at_root),
            s.gap_ok
        );
    }
    out
}

/// Quadratic-model table over a grid of `b` values, for documentation plots.
pub fn quadratic_table_csv(b_grid: &[f64], comment: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {comment}");
    let _ = writeln!(out, "b,r20,r11,r02,hessian_det,e2_slope");
    for &b in b_grid {
        let q = quadratic_model(b);
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            num(q.b),
            num(q.r20),
            num(q.r11),
            num(q.r02),
            num(q.hessian_det),
            num(q.e2_slope)
        );
    }
    out
}

pub fn timeseries_csv(traj: &TrajectorySummary, comment: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {comment}");
    let _ = writeln!(out, "t,mass,dist,signal");
    for i in 0..traj.times.len() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            num(traj.times[i]),
            num(traj.mass[i]),
            num(traj.dist[i]),
            num(traj.signal[i])
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_csv_layout() {
        let text = field_csv(&SpectralField::one(8), "hash");
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "# hash");
        assert_eq!(lines.next().unwrap(), "theta,value");
        let first = lines.next().unwrap();
        assert!(first.starts_with("0.0000000000000000e0,1.0000000000000000e0"));
        // comment + header + one row per grid point
        assert_eq!(text.lines().count(), 2 + crate::grid::dealias_points(8));
    }

    #[test]
    fn quadratic_table_layout() {
        let text = quadratic_table_csv(&[0.5, 1.0, 2.0], "hash");
        assert_eq!(text.lines().count(), 5);
        assert!(text.lines().nth(1).unwrap().starts_with("b,r20,"));
        let b1 = text.lines().nth(3).unwrap();
        assert!(b1.starts_with("1.0000000000000000e0,-6.20689655172413"));
    }
}
