//! Error type shared by all solver layers.

use crate::riemann::ConstructionTag;
use crate::state::PhaseRegion;

/// Everything that can go wrong between a raw state and a finished run.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SweError {
    /// Water height must be strictly positive for this operation.
    #[error("non-positive water height h = {h}")]
    NonPositiveHeight { h: f64 },

    /// A cell update drove the height below the dry-state tolerance.
    #[error("height became negative in cell {cell}: h = {h}")]
    NegativeHeight { cell: usize, h: f64 },

    /// Shock speed is undefined when both sides have the same height.
    #[error("degenerate jump: both states have height {h}")]
    DegenerateJump { h: f64 },

    /// The state is outside the phase region the operation is defined on.
    #[error("operation requires {required}, state is in {found:?}")]
    WrongRegion {
        required: &'static str,
        found: PhaseRegion,
    },

    /// Sampling speed lies outside the rarefaction fan.
    #[error("speed {xi} outside rarefaction fan [{head}, {tail}]")]
    OutOfFan { xi: f64, head: f64, tail: f64 },

    /// No stationary contact reaches the requested bottom level.
    #[error("no stationary contact from bottom level {a0} to {a} (a_max = {a_max})")]
    NoStationaryContact { a0: f64, a: f64, a_max: f64 },

    /// A bracketing root finder was handed an interval without a sign change.
    #[error("no sign change on bracket [{lo}, {hi}]")]
    BadBracket { lo: f64, hi: f64 },

    /// An iteration ran out of its budget before meeting the tolerances.
    #[error("{op} failed to converge after {iterations} iterations (x = {x}, residual = {residual})")]
    ConvergenceFailure {
        op: &'static str,
        iterations: usize,
        x: f64,
        residual: f64,
    },

    /// The two wave curves never meet; the solution opens a dry region.
    #[error("wave curves do not intersect; the solution contains a dry region")]
    NoIntersection,

    /// The requested construction's applicability condition fails here.
    #[error("construction {tag:?} does not apply to this Riemann data")]
    NotApplicable { tag: ConstructionTag },

    /// No construction applies; the Riemann problem has no solution.
    #[error("no admissible Riemann solution for this data")]
    NoSolution,

    /// All wave speeds vanish, so the CFL condition puts no bound on the step.
    #[error("all wave speeds are zero; time step is unbounded")]
    ZeroWaveSpeed,

    /// Paired arrays disagree in length.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A failure at a specific cell interface during a scheme step.
    #[error("at interface {index}: {source}")]
    Interface {
        index: usize,
        #[source]
        source: Box<SweError>,
    },
}
