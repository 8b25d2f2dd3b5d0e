//! Steady profiles: Newton solve of the stationary flux equation and the
//! closed-form second-order expansion used for cross-validation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::SpectralField;
use crate::grid::PhysicalGrid;
use crate::linop::{field_to_vec_full, flux_jacobian, vec_to_field_full};
use crate::params::Params;

/// Newton solve configuration.
#[derive(Debug, Clone)]
pub struct SteadyOptions {
    pub n_max: usize,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SteadyOptions {
    fn default() -> Self {
        Self {
            n_max: 32,
            tol: 1e-12,
            max_iter: 25,
        }
    }
}

impl SteadyOptions {
    pub fn with_n_max(n_max: usize) -> Self {
        Self {
            n_max,
            ..Self::default()
        }
    }
}

/// A converged steady profile together with solve diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct SteadyState {
    pub params: Params,
    pub h: SpectralField,
    pub residual_norm: f64,
    pub newton_iters: usize,
    pub min_height: f64,
    /// Residual L2 norms per Newton iterate, starting at the initial guess.
    pub residual_history: Vec<f64>,
}

impl SteadyState {
    /// Mean mass `(H|1)`; expands as `1 + eps1^2/6 + eps1 eps2/6 + o(|eps|^2)`.
    pub fn mean_mass(&self) -> f64 {
        self.h.coeff(0).re
    }
}

/// The stationary flux `f1(h) = (h - eps1 cos/3 h^3) + b h^3 (h' + h''')
/// + eps2 sin h^3 h'`, projected onto the band of `h`.
///
/// Products are exact coefficient convolutions at full bandwidth, truncated
/// only at the end, so the result is the exact projection (alias-free).
pub fn flux(h: &SpectralField, p: &Params) -> SpectralField {
    let h2 = h.product_full(h);
    let h3 = h2.product_full(h);
    let capillary_term = h3.product_full(&h.capillary(p.b));
    let gravity_term = h3.mul_cos().scaled(-p.eps1 / 3.0);
    let hydrostatic_term = h3.product_full(&h.derivative(1)).mul_sin().scaled(p.eps2);
    h.plus(&capillary_term)
        .plus(&gravity_term)
        .plus(&hydrostatic_term)
        .with_n_max(h.n_max())
}

/// Residual of the steady equation: `flux(h) - 1`.
pub fn residual(h: &SpectralField, p: &Params) -> SpectralField {
    flux(h, p).minus(&SpectralField::one(h.n_max()))
}

/// Second-order expansion of the steady profile around the constant state:
/// `1 + eps1 cos/3 + eps1^2/6 R[1 + cos 2t] + eps1 eps2/6 R[1 - cos 2t]`
/// with `R` the resolvent of `id + b (d + d^3)`. The pure-`eps2` terms vanish
/// at every order.
pub fn taylor_steady(p: &Params, n_max: usize) -> SpectralField {
    let one = SpectralField::one(n_max);
    let mut cos2 = SpectralField::zero(n_max);
    cos2.set_coeff(2, num_complex::Complex::new(0.5, 0.0));
    cos2.set_coeff(-2, num_complex::Complex::new(0.5, 0.0));

    let linear = SpectralField::cos_theta(n_max).scaled(p.eps1 / 3.0);
    let quad_gravity = one
        .plus(&cos2)
        .capillary_resolvent(p.b)
        .scaled(p.eps1 * p.eps1 / 6.0);
    let quad_mixed = one
        .minus(&cos2)
        .capillary_resolvent(p.b)
        .scaled(p.eps1 * p.eps2 / 6.0);
    one.plus(&linear).plus(&quad_gravity).plus(&quad_mixed)
}

/// Minimum of `h` on the dealiasing grid; a profile touching zero leaves the
/// uniformly parabolic regime.
fn require_positive(h: &SpectralField) -> Result<f64> {
    let grid = PhysicalGrid::new(h.n_max());
    let min_height = PhysicalGrid::min_real(&grid.to_grid(h));
    if min_height <= 0.0 {
        return Err(Error::LostPositivity { min_height });
    }
    Ok(min_height)
}

fn newton(
    start: SpectralField,
    p: &Params,
    opts: &SteadyOptions,
) -> Result<(SpectralField, usize, Vec<f64>)> {
    let mut h = start;
    let mut history = Vec::new();
    for iter in 0..=opts.max_iter {
        let r = residual(&h, p);
        let rn = r.l2_norm();
        history.push(rn);
        if !rn.is_finite() {
            return Err(Error::NoConvergence {
                iters: iter,
                residual: rn,
            });
        }
        if rn < opts.tol {
            return Ok((h, iter, history));
        }
        if iter == opts.max_iter {
            break;
        }
        let jac = flux_jacobian(&h, p);
        let rhs = field_to_vec_full(&r, opts.n_max).map(|c| -c);
        let delta = jac.lu().solve(&rhs).ok_or(Error::NoConvergence {
            iters: iter,
            residual: rn,
        })?;
        h = h.plus(&vec_to_field_full(&delta, opts.n_max));
        // The equation is real; keep the iterate exactly real-valued.
        h.symmetrize();
    }
    Err(Error::NoConvergence {
        iters: opts.max_iter,
        residual: *history.last().unwrap(),
    })
}

/// Solve the steady equation by Newton iteration from the constant state.
///
/// If the plain solve fails, a short continuation in `eps` (three intermediate
/// steps) retries from the last converged profile. `LostPositivity` signals
/// that the converged profile is not uniformly positive on the grid.
pub fn solve_steady(p: &Params, opts: &SteadyOptions) -> Result<SteadyState> {
    if p.b <= 0.0 || !p.b.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "b must be positive, got {}",
            p.b
        )));
    }
    let start = SpectralField::one(opts.n_max);
    let solved = newton(start.clone(), p, opts).or_else(|_| {
        let mut h = start;
        let mut last = Err(Error::NoConvergence {
            iters: 0,
            residual: f64::NAN,
        });
        for step in 1..=4 {
            let frac = step as f64 / 4.0;
            let p_step = Params {
                b: p.b,
                eps1: p.eps1 * frac,
                eps2: p.eps2 * frac,
            };
            match newton(h.clone(), &p_step, opts) {
                Ok((h_step, iters, hist)) => {
                    h = h_step.clone();
                    last = Ok((h_step, iters, hist));
                }
                Err(e) => return Err(e),
            }
        }
        last
    })?;
    let (h, newton_iters, residual_history) = solved;
    let min_height = require_positive(&h)?;
    Ok(SteadyState {
        params: *p,
        residual_norm: *residual_history.last().unwrap(),
        h,
        newton_iters,
        min_height,
        residual_history,
    })
}
