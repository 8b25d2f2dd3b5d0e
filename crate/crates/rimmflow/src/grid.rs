//! Padded physical grid for pseudospectral evaluation.
//!
//! The point count is the next power of two at or above `5 n_max + 2`, which
//! keeps the wrap-around images of every product of up to four band-limited
//! factors (plus one `sin`/`cos` factor) outside the retained band, so grid
//! multiplication followed by truncation equals the exact projection.

use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use crate::field::{C64, C_ZERO, SpectralField};

pub struct PhysicalGrid {
    n_max: usize,
    m: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    pub theta: Vec<f64>,
    pub cos_theta: Vec<f64>,
    pub sin_theta: Vec<f64>,
}

pub fn dealias_points(n_max: usize) -> usize {
    (5 * n_max + 2).next_power_of_two()
}

impl PhysicalGrid {
    pub fn new(n_max: usize) -> Self {
        let m = dealias_points(n_max);
        let mut planner = FftPlanner::new();
        let theta: Vec<f64> = (0..m)
            .map(|j| 2.0 * std::f64::consts::PI * j as f64 / m as f64)
            .collect();
        Self {
            n_max,
            m,
            fwd: planner.plan_fft_forward(m),
            inv: planner.plan_fft_inverse(m),
            cos_theta: theta.iter().map(|t| t.cos()).collect(),
            sin_theta: theta.iter().map(|t| t.sin()).collect(),
            theta,
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    /// Values `f(theta_j)` on the grid.
    pub fn to_grid(&self, f: &SpectralField) -> Vec<C64> {
        assert!(f.n_max() <= self.n_max, "field exceeds grid band");
        let mut buf = vec![C_ZERO; self.m];
        for n in -(f.n_max() as i64)..=(f.n_max() as i64) {
            let k = n.rem_euclid(self.m as i64) as usize;
            buf[k] = f.coeff(n);
        }
        self.inv.process(&mut buf);
        buf
    }

    /// Coefficients of a grid function, truncated to `band` modes.
    pub fn from_grid(&self, mut values: Vec<C64>, band: usize) -> SpectralField {
        assert_eq!(values.len(), self.m);
        assert!(2 * band < self.m, "band exceeds grid resolution");
        self.fwd.process(&mut values);
        let scale = 1.0 / self.m as f64;
        let mut out = SpectralField::zero(band);
        for n in -(band as i64)..=(band as i64) {
            let k = n.rem_euclid(self.m as i64) as usize;
            out.set_coeff(n, values[k] * scale);
        }
        out
    }

    /// Minimum of the real part over the grid.
    pub fn min_real(values: &[C64]) -> f64 {
        values.iter().map(|v| v.re).fold(f64::INFINITY, f64::min)
    }
}

impl std::fmt::Debug for PhysicalGrid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PhysicalGrid")
            .field("n_max", &self.n_max)
            .field("m", &self.m)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::C_ONE;
    use num_complex::Complex;

    #[test]
    fn points_cover_quartic_products() {
        assert_eq!(dealias_points(32), 256);
        assert_eq!(dealias_points(64), 512);
        for n in 8..=128 {
            assert!(dealias_points(n) >= 5 * n + 2);
        }
    }

    #[test]
    fn round_trip_is_exact_for_band_limited() {
        let grid = PhysicalGrid::new(8);
        let mut f = SpectralField::zero(8);
        for n in -8..=8i64 {
            f.set_coeff(n, Complex::new(0.1 * n as f64, (n * n) as f64 * 0.01));
        }
        let back = grid.from_grid(grid.to_grid(&f), 8);
        assert!(back.minus(&f).l2_norm() < 1e-14);
    }

    #[test]
    fn grid_product_matches_convolution() {
        let grid = PhysicalGrid::new(6);
        let mut f = SpectralField::zero(6);
        let mut g = SpectralField::zero(6);
        for n in -6..=6i64 {
            f.set_coeff(n, Complex::new(1.0 / (1 + n * n) as f64, 0.05 * n as f64));
            g.set_coeff(n, Complex::new(0.2, -0.03 * n as f64));
        }
        let fg_conv = f.product(&g);
        let fv = grid.to_grid(&f);
        let gv = grid.to_grid(&g);
        let prod: Vec<C64> = fv.iter().zip(gv.iter()).map(|(a, b)| a * b).collect();
        let fg_grid = grid.from_grid(prod, 6);
        assert!(fg_grid.minus(&fg_conv).l2_norm() < 1e-13);
    }

    #[test]
    fn constant_transforms_exactly() {
        let grid = PhysicalGrid::new(4);
        let vals = grid.to_grid(&SpectralField::one(4));
        for v in &vals {
            assert_eq!(*v, C_ONE);
        }
        let back = grid.from_grid(vals, 4);
        assert_eq!(back.coeff(0), C_ONE);
        for n in 1..=4i64 {
            assert_eq!(back.coeff(n), crate::field::C_ZERO);
            assert_eq!(back.coeff(-n), crate::field::C_ZERO);
        }
    }
}
