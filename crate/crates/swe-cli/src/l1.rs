//! Discrete L1 distance between a numeric profile and the exact profile.
//!
//! The reference error tables never state which solution components enter the
//! norm, so the composition is selectable; [`ErrorNorm::default`] is the
//! calibrated choice frozen in [`crate::fixtures`].

use serde::{Deserialize, Serialize};
use swe_core::{State, SweError};

/// Which components of the per-cell gap are summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Components {
    /// `|Δh| + |Δu|` per cell.
    #[default]
    HeightVelocity,
    /// `|Δh|` per cell.
    Height,
    /// `|Δh| + |Δ(hu)|` per cell.
    HeightDischarge,
}

impl Components {
    fn gap(self, numeric: &State, exact: &State) -> f64 {
        match self {
            Components::HeightVelocity => {
                (numeric.h - exact.h).abs() + (numeric.u - exact.u).abs()
            }
            Components::Height => (numeric.h - exact.h).abs(),
            Components::HeightDischarge => {
                (numeric.h - exact.h).abs() + (numeric.discharge() - exact.discharge()).abs()
            }
        }
    }
}

impl std::fmt::Display for Components {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Components::HeightVelocity => "height-velocity",
            Components::Height => "height",
            Components::HeightDischarge => "height-discharge",
        };
        f.write_str(s)
    }
}

/// A full norm choice: the component composition and whether each cell gap
/// is weighted by the mesh width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ErrorNorm {
    pub components: Components,
    pub weighted: bool,
}

impl Default for ErrorNorm {
    fn default() -> Self {
        ErrorNorm {
            components: Components::HeightVelocity,
            weighted: true,
        }
    }
}

impl std::fmt::Display for ErrorNorm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}{}",
            self.components,
            if self.weighted { " x dx" } else { "" }
        )
    }
}

/// Sum of per-cell gaps between the two profiles, optionally `dx`-weighted.
pub fn l1_error(
    numeric: &[State],
    exact: &[State],
    dx: f64,
    norm: &ErrorNorm,
) -> Result<f64, SweError> {
    if numeric.len() != exact.len() {
        return Err(SweError::LengthMismatch {
            left: numeric.len(),
            right: exact.len(),
        });
    }
    let weight = if norm.weighted { dx } else { 1.0 };
    let mut total = 0.0;
    for (n, e) in numeric.iter().zip(exact) {
        total += norm.components.gap(n, e) * weight;
    }
    Ok(total)
}
