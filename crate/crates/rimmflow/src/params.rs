//! Equation parameters and the physical-to-scaled parameter map.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The parameter triple `(b, eps1, eps2)` of the scaled evolution equation.
///
/// `b > 0` is the surface-tension coefficient and is fixed throughout a run;
/// `eps1` (gravity) and `eps2` (hydrostatic pressure) are the small parameters
/// swept by the bifurcation analysis. The physically relevant quadrant is
/// `eps1 >= 0, eps2 >= 0`, but no sign restriction is imposed here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub b: f64,
    pub eps1: f64,
    pub eps2: f64,
}

impl Params {
    pub fn new(b: f64, eps1: f64, eps2: f64) -> Result<Self> {
        if b <= 0.0 || !b.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "surface-tension coefficient b must be positive and finite, got {b}"
            )));
        }
        if !eps1.is_finite() || !eps2.is_finite() {
            return Err(Error::InvalidParameter(
                "eps1 and eps2 must be finite".into(),
            ));
        }
        Ok(Self { b, eps1, eps2 })
    }

    /// Euclidean size of the perturbation parameter `(eps1, eps2)`.
    pub fn eps_norm(&self) -> f64 {
        self.eps1.hypot(self.eps2)
    }
}

/// Map the physical parameters `(beta, gamma, delta)` of the unscaled model
/// to the scaled triple `(b, eps1, eps2) = (beta delta^3 / 3, delta^2, gamma delta^3 / 3)`.
pub fn rescale_physical(beta: f64, gamma: f64, delta: f64) -> Result<Params> {
    if beta <= 0.0 || !beta.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "beta must be positive, got {beta}"
        )));
    }
    if delta <= 0.0 || !delta.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "delta must be positive, got {delta}"
        )));
    }
    if gamma < 0.0 || !gamma.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "gamma must be nonnegative, got {gamma}"
        )));
    }
    let d3 = delta * delta * delta;
    Params::new(beta * d3 / 3.0, delta * delta, gamma * d3 / 3.0)
}
