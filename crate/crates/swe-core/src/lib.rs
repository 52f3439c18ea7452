//! Exact Riemann solver and well-balanced Godunov scheme for the
//! one-dimensional shallow water equations over discontinuous bottom
//! topography.
//!
//! The bottom level is carried as an extra conserved quantity with a zero
//! eigenvalue, so Riemann solutions combine classical shocks and rarefactions
//! with stationary contacts that jump the bottom. Near the resonance
//! hypersurfaces (flow speed equal to the gravity wave speed) up to three
//! distinct solutions exist; the solver enumerates the admissible
//! constructions and a configurable preference picks the one fed to the
//! finite-volume scheme.

pub mod error;
pub mod godunov;
pub mod numerics;
pub mod riemann;
pub mod state;
pub mod stationary_contact;
pub mod wave_curves;

pub use error::SweError;
pub use state::{Gravity, PhaseRegion, State};
