//! Finite-volume evolution driven by the exact Riemann solutions.
//!
//! The water variables `(h, hu)` are updated in conservation form from the
//! interface states read off each local Riemann solution at `x/t = 0`, while
//! the bottom level of every cell is left untouched.  Because a stationary
//! contact straddles the interface, the two sides of one interface may carry
//! different states; each cell uses the state facing it.  Exact equilibrium
//! pairs are recognized before any root search runs, so data made of
//! stationary contacts reproduce themselves bit for bit.

use crate::error::SweError;
use crate::riemann::{sample, solve_with_branch_rule, trivial_tag, ConstructionTag};
use crate::state::{eigenvalues, flux, Gravity, State};
use crate::stationary_contact::admissible_contact;
use crate::wave_curves::{rarefaction_fan_state, WaveFamily};

/// Uniform one-dimensional grid of cell-averaged states.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub x0: f64,
    pub x1: f64,
    pub dx: f64,
    pub cells: Vec<State>,
}

impl Grid {
    pub fn n(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_center(&self, i: usize) -> f64 {
        self.x0 + (i as f64 + 0.5) * self.dx
    }
}

/// Boundary treatment; the only supported kind copies the edge cell into
/// the ghost cell, letting waves leave freely.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryCondition {
    #[default]
    Transmissive,
}

/// Tunable knobs of the scheme.
#[derive(Debug, Clone)]
pub struct SchemeConfig {
    pub g: Gravity,
    /// Courant number used by [`cfl_dt`].
    pub cfl: f64,
    /// Construction preferred at interfaces whose data admit several
    /// solutions; earlier entries win.
    pub preference: Vec<ConstructionTag>,
    pub boundary: BoundaryCondition,
    /// Select the solver branch by the literal sign of the fast
    /// characteristic speed instead of the flow regime.  Breaks subcritical
    /// forward flow; kept to demonstrate exactly that.
    pub literal_branch_sign: bool,
}

impl Default for SchemeConfig {
    fn default() -> Self {
        SchemeConfig {
            g: Gravity::default(),
            cfl: 0.75,
            preference: vec![ConstructionTag::A1, ConstructionTag::B3],
            boundary: BoundaryCondition::Transmissive,
            literal_branch_sign: false,
        }
    }
}

/// The two states flanking one interface, plus the construction that
/// produced them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceTrace {
    pub left: State,
    pub right: State,
    pub tag: ConstructionTag,
}

/// Per-step diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepReport {
    pub max_courant: f64,
    /// Set when the step ran above the provably safe Courant number 1/2.
    pub audit_warning: bool,
}

/// Whole-run diagnostics from [`advance`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdvanceReport {
    pub steps: usize,
    pub max_courant: f64,
    /// Number of steps that ran above Courant 1/2.
    pub cfl_warnings: usize,
}

/// Cell averages of a jump at `split_x`: cells cut by the jump average the
/// conserved variables (and the bottom) in proportion to the cut.
pub fn init_cell_averages(
    left: &State,
    right: &State,
    split_x: f64,
    x0: f64,
    x1: f64,
    n: usize,
) -> Grid {
    let dx = (x1 - x0) / n as f64;
    let cells = (0..n)
        .map(|i| {
            let xl = x0 + i as f64 * dx;
            let xr = xl + dx;
            if xr <= split_x {
                *left
            } else if xl >= split_x {
                *right
            } else {
                let theta = ((split_x - xl) / dx).clamp(0.0, 1.0);
                let h = theta * left.h + (1.0 - theta) * right.h;
                let q = theta * left.discharge() + (1.0 - theta) * right.discharge();
                let a = theta * left.a + (1.0 - theta) * right.a;
                State {
                    h,
                    u: if h > 0.0 { q / h } else { 0.0 },
                    a,
                }
            }
        })
        .collect();
    Grid { x0, x1, dx, cells }
}

/// Recognize a pair already joined by an exact stationary contact, so the
/// interface can be passed through untouched (no search noise).
fn snapped_equilibrium(left: &State, right: &State, g: Gravity) -> Option<ConstructionTag> {
    let contact = admissible_contact(left, right.a, g).ok()??;
    let h_close = (contact.h - right.h).abs() <= 1e-13 * 1.0_f64.max(contact.h).max(right.h);
    let u_close =
        (contact.u - right.u).abs() <= 1e-13 * 1.0_f64.max(contact.u.abs()).max(right.u.abs());
    if h_close && u_close {
        Some(trivial_tag(left, g))
    } else {
        None
    }
}

/// Interface states when one side is dry: only a single fan (or nothing)
/// separates the wet state from the vacuum.
fn one_sided_dry_trace(left: &State, right: &State, g: Gravity) -> InterfaceTrace {
    let tag = ConstructionTag::A1;
    if left.h <= 0.0 && right.h <= 0.0 {
        return InterfaceTrace {
            left: State::dry(left.a),
            right: State::dry(right.a),
            tag,
        };
    }
    if left.h <= 0.0 {
        let wet = right;
        let edge = wet.u - 2.0 * wet.celerity(g);
        let head = eigenvalues(wet, g)[1];
        let at_zero = if edge >= 0.0 {
            None
        } else if head <= 0.0 {
            Some(*wet)
        } else {
            Some(
                rarefaction_fan_state(WaveFamily::Two, wet, 0.0, g)
                    .expect("zero speed lies inside the fan"),
            )
        };
        return match at_zero {
            Some(s) => InterfaceTrace {
                left: s,
                right: s,
                tag,
            },
            None => InterfaceTrace {
                left: State::dry(left.a),
                right: State::dry(right.a),
                tag,
            },
        };
    }
    let wet = left;
    let edge = wet.u + 2.0 * wet.celerity(g);
    let tail = eigenvalues(wet, g)[0];
    let at_zero = if edge <= 0.0 {
        None
    } else if tail >= 0.0 {
        Some(*wet)
    } else {
        Some(
            rarefaction_fan_state(WaveFamily::One, wet, 0.0, g)
                .expect("zero speed lies inside the fan"),
        )
    };
    match at_zero {
        Some(s) => InterfaceTrace {
            left: s,
            right: s,
            tag,
        },
        None => InterfaceTrace {
            left: State::dry(left.a),
            right: State::dry(right.a),
            tag,
        },
    }
}

/// States flanking `x = 0` in the local Riemann solution of one interface.
pub fn interface_trace(
    left: &State,
    right: &State,
    cfg: &SchemeConfig,
) -> Result<InterfaceTrace, SweError> {
    if left == right {
        return Ok(InterfaceTrace {
            left: *left,
            right: *left,
            tag: trivial_tag(left, cfg.g),
        });
    }
    if left.h <= 0.0 || right.h <= 0.0 {
        return Ok(one_sided_dry_trace(left, right, cfg.g));
    }
    if let Some(tag) = snapped_equilibrium(left, right, cfg.g) {
        return Ok(InterfaceTrace {
            left: *left,
            right: *right,
            tag,
        });
    }
    let sol = solve_with_branch_rule(
        left,
        right,
        cfg.g,
        &cfg.preference,
        cfg.literal_branch_sign,
    )?;
    Ok(InterfaceTrace {
        left: sample(&sol, -0.0, cfg.g),
        right: sample(&sol, 0.0, cfg.g),
        tag: sol.tag,
    })
}

/// Construction an interface would use, after the equilibrium screen.
pub fn select_solver(
    left: &State,
    right: &State,
    cfg: &SchemeConfig,
) -> Result<ConstructionTag, SweError> {
    interface_trace(left, right, cfg).map(|t| t.tag)
}

/// Largest stable time step for the grid, capped by `remaining`.
pub fn cfl_dt(grid: &Grid, cfg: &SchemeConfig, remaining: f64) -> Result<f64, SweError> {
    let mut max_speed = 0.0_f64;
    for s in &grid.cells {
        if s.h > 0.0 {
            let ev = eigenvalues(s, cfg.g);
            max_speed = max_speed.max(ev[0].abs()).max(ev[1].abs());
        }
    }
    if max_speed == 0.0 {
        return Err(SweError::ZeroWaveSpeed);
    }
    Ok((cfg.cfl * grid.dx / max_speed).min(remaining))
}

/// Depth/discharge repair after an update: hairline negative depths dry
/// out, anything deeper is an error.
fn settle_depth(h: f64, q: f64) -> Option<(f64, f64)> {
    if h < -1e-12 {
        return None;
    }
    if h <= 0.0 {
        return Some((0.0, 0.0));
    }
    Some((h, q))
}

/// One conservative update of length `dt`; also reports the realized
/// Courant number.
pub fn step_with_report(
    grid: &Grid,
    dt: f64,
    cfg: &SchemeConfig,
) -> Result<(Grid, StepReport), SweError> {
    let n = grid.cells.len();
    if n == 0 {
        return Ok((
            grid.clone(),
            StepReport {
                max_courant: 0.0,
                audit_warning: false,
            },
        ));
    }
    let BoundaryCondition::Transmissive = cfg.boundary;
    let mut traces = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let l = if j == 0 { &grid.cells[0] } else { &grid.cells[j - 1] };
        let r = if j == n {
            &grid.cells[n - 1]
        } else {
            &grid.cells[j]
        };
        let trace = interface_trace(l, r, cfg).map_err(|e| SweError::Interface {
            index: j,
            source: Box::new(e),
        })?;
        traces.push(trace);
    }
    let mut max_speed = 0.0_f64;
    for t in &traces {
        for s in [&t.left, &t.right] {
            if s.h > 0.0 {
                let ev = eigenvalues(s, cfg.g);
                max_speed = max_speed.max(ev[0].abs()).max(ev[1].abs());
            }
        }
    }
    let lambda = dt / grid.dx;
    let mut cells = Vec::with_capacity(n);
    for (i, cell) in grid.cells.iter().enumerate() {
        let fl = flux(&traces[i].right, cfg.g);
        let fr = flux(&traces[i + 1].left, cfg.g);
        let h = cell.h - lambda * (fr[0] - fl[0]);
        let q = cell.discharge() - lambda * (fr[1] - fl[1]);
        let (h, q) = settle_depth(h, q).ok_or(SweError::NegativeHeight { cell: i, h })?;
        cells.push(State {
            h,
            u: if h > 0.0 { q / h } else { 0.0 },
            a: cell.a,
        });
    }
    let max_courant = lambda * max_speed;
    Ok((
        Grid {
            x0: grid.x0,
            x1: grid.x1,
            dx: grid.dx,
            cells,
        },
        StepReport {
            max_courant,
            audit_warning: max_courant > 0.5,
        },
    ))
}

/// One conservative update of length `dt`.
pub fn step(grid: &Grid, dt: f64, cfg: &SchemeConfig) -> Result<Grid, SweError> {
    step_with_report(grid, dt, cfg).map(|(g, _)| g)
}

/// March the grid to `t_end` with adaptive steps, truncating the last step
/// exactly.
pub fn advance(
    grid: &Grid,
    cfg: &SchemeConfig,
    t_end: f64,
) -> Result<(Grid, AdvanceReport), SweError> {
    const MAX_STEPS: usize = 2_000_000;
    let mut current = grid.clone();
    let mut t = 0.0_f64;
    let mut report = AdvanceReport {
        steps: 0,
        max_courant: 0.0,
        cfl_warnings: 0,
    };
    while t < t_end && report.steps < MAX_STEPS {
        let remaining = t_end - t;
        let dt = match cfl_dt(&current, cfg, remaining) {
            Ok(d) => d,
            Err(SweError::ZeroWaveSpeed) => break,
            Err(e) => return Err(e),
        };
        let (next, step_report) = step_with_report(&current, dt, cfg)?;
        current = next;
        report.steps += 1;
        report.max_courant = report.max_courant.max(step_report.max_courant);
        if step_report.audit_warning {
            report.cfl_warnings += 1;
        }
        if dt >= remaining {
            break;
        }
        t += dt;
    }
    Ok((current, report))
}
