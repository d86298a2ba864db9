//! Steady state of a driven optical cavity holding an atomic ensemble and a
//! vibrating end-mirror.
//!
//! The crate linearizes the atom-field-mirror dynamics around the
//! semiclassical working point, solves the Lyapunov equation for the 6×6
//! steady-state covariance matrix and measures Gaussian continuous-variable
//! entanglement on it: bipartite logarithmic negativities, the effective
//! phonon number of the mirror and the tripartite inseparability class.
//!
//! Quadratures are always ordered `(δq, δp, δX, δY, δx, δy)`: mirror,
//! cavity field, atomic polarization. The vacuum covariance is `I/2`.
//!
//! ```
//! use hybrid_cavity::{model, dynamics, entanglement};
//!
//! let lab = model::PhysicalParams::reference();
//! let working_point = model::solve_working_point(&lab).unwrap();
//! let params = model::effective_params(&lab, &working_point);
//! let dd = model::DriftDiffusion::new(&params);
//! let solution = dynamics::solve_lyapunov(&dd.drift, &dd.diffusion).unwrap();
//! let stability = dynamics::is_stable(&dd.drift).unwrap();
//! let report = entanglement::report(&solution.covariance, &stability).unwrap();
//! assert!(report.e_ma > report.e_mf);
//! ```

// `!(x > 0.0)` style checks are intentional: they reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod cubic;
pub mod dynamics;
pub mod entanglement;
mod error;
pub mod gaussian;
pub mod harness;
pub mod model;

pub use error::{Error, Result};
