//! Numerical laboratory for a thin liquid film coating the inside of a
//! rotating cylinder: steady profiles of the fourth-order lubrication
//! equation, the spectrum of the linearized operator, second-order
//! eigenvalue perturbation formulas, the critical curve in the
//! `(eps1, eps2)` parameter plane, and the stable-decay / limit-cycle
//! dynamics on either side of it.
//!
//! States are truncated Fourier series on the circle ([`field::SpectralField`]);
//! everything downstream is dense linear algebra at desk scale.
//!
//! ```no_run
//! use rimmflow::hopf::{HopfOptions, Stability, classify};
//! use rimmflow::linop::leading_pair;
//! use rimmflow::{Params, SteadyOptions, solve_steady};
//!
//! # fn main() -> rimmflow::Result<()> {
//! let p = Params::new(1.0, 0.01, 0.005)?;
//! let steady = solve_steady(&p, &SteadyOptions::default())?;
//! let report = leading_pair(&steady, &Default::default())?;
//! assert!(report.lambda_plus.re < 0.0);
//! assert_eq!(classify(&p, &HopfOptions::default())?, Stability::Stable);
//! # Ok(())
//! # }
//! ```

pub mod error;
pub mod evolve;
pub mod field;
pub mod grid;
pub mod hopf;
pub mod io;
pub mod linop;
pub mod params;
pub mod perturb;
pub mod steady;
pub mod verify;

pub use error::{Error, Result};
pub use field::{C64, SpectralField};
pub use params::{Params, rescale_physical};
pub use steady::{SteadyOptions, SteadyState, solve_steady, taylor_steady};
