//! Error type shared by all solvers.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Newton iteration exhausted `max_iter` without reaching the residual
    /// tolerance; the parameter point is outside the tractable neighborhood.
    #[error("Newton did not converge after {iters} iterations (residual {residual:.3e})")]
    NoConvergence { iters: usize, residual: f64 },

    /// The converged profile dips to zero or below on the evaluation grid,
    /// i.e. the solve left the uniformly positive regime.
    #[error("steady state lost positivity (min height {min_height:.3e})")]
    LostPositivity { min_height: f64 },

    /// The leading conjugate pair is not separated from the rest of the
    /// spectrum by the configured gap.
    #[error(
        "spectral gap violated: second eigenvalue Re {second_re:.6} above threshold {threshold:.6}"
    )]
    GapViolation { second_re: f64, threshold: f64 },

    /// Eigenvector has (numerically) no component along the normalizing mode.
    #[error("eigenvector nearly orthogonal to the normalizing mode (|coeff| = {coeff_abs:.3e})")]
    DegenerateNormalization { coeff_abs: f64 },

    /// Root bracket for the bifurcation curve shows no sign change.
    #[error("no sign change of Re lambda+ in eps2 bracket [{lo:.6}, {hi:.6}] at eps1 = {eps1:.6}")]
    NoBracket { eps1: f64, lo: f64, hi: f64 },

    /// A parameter path does not cross the critical curve in the scanned range.
    #[error("path does not cross the critical curve in the scanned range")]
    NoCrossing,

    /// Time integration produced coefficients beyond the overflow guard.
    #[error("time integration blew up at t = {t:.6}")]
    BlowUp { t: f64 },

    /// Dense eigensolver failed to converge.
    #[error("dense eigensolver failed to converge")]
    Eigensolver,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
