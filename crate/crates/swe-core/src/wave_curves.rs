//! Shock and rarefaction curves of the two genuinely nonlinear families,
//! parameterized by height at a fixed bottom level.
//!
//! Forward curves collect right states reachable from a given left state;
//! backward curves collect left states that reach a given right state. Which
//! side of the base height carries the shock branch depends on the family and
//! orientation; at the base height both branches join with matching value and
//! slope, and the rarefaction branch is the one evaluated.

use crate::error::SweError;
use crate::state::{classify_region, resonance_tol, Gravity, PhaseRegion, State};

/// Characteristic families of the system.
///
/// `One` and `Two` are genuinely nonlinear and carry the height-parameterized
/// curves of this module; `Three` is the linearly degenerate stationary
/// family, whose jumps are handled by the stationary-contact module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveFamily {
    One,
    Two,
    Three,
}

/// Whether the curve is traced from a left state (Forward) or a right state
/// (Backward).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveOrientation {
    Forward,
    Backward,
}

fn assert_nonlinear(family: WaveFamily) {
    assert!(
        family != WaveFamily::Three,
        "the stationary family has no height-parameterized curve"
    );
}

/// True when height `h` falls on the shock branch of the curve through `h0`.
fn on_shock_branch(family: WaveFamily, orientation: CurveOrientation, h: f64, h0: f64) -> bool {
    match (family, orientation) {
        (WaveFamily::One, CurveOrientation::Forward) => h > h0,
        (WaveFamily::One, CurveOrientation::Backward) => h < h0,
        (WaveFamily::Two, CurveOrientation::Forward) => h < h0,
        (WaveFamily::Two, CurveOrientation::Backward) => h > h0,
        (WaveFamily::Three, _) => unreachable!(),
    }
}

/// Velocity offset |u - u0| with the sign carried by (h - h0), shock branch.
fn shock_term(h: f64, h0: f64, g: Gravity) -> f64 {
    (h - h0) * (0.5 * g.0 * (1.0 / h + 1.0 / h0)).sqrt()
}

fn shock_term_dh(h: f64, h0: f64, g: Gravity) -> f64 {
    let s = (0.5 * g.0 * (1.0 / h + 1.0 / h0)).sqrt();
    s - (h - h0) * g.0 / (4.0 * s * h * h)
}

/// Velocity offset along the rarefaction branch (Riemann invariant form).
fn raref_term(h: f64, h0: f64, g: Gravity) -> f64 {
    2.0 * g.0.sqrt() * (h.sqrt() - h0.sqrt())
}

fn raref_term_dh(h: f64, g: Gravity) -> f64 {
    (g.0 / h).sqrt()
}

fn check_heights(h: f64, h0: f64) -> Result<(), SweError> {
    if h0 <= 0.0 {
        return Err(SweError::NonPositiveHeight { h: h0 });
    }
    if h <= 0.0 {
        return Err(SweError::NonPositiveHeight { h });
    }
    Ok(())
}

/// Velocity on the curve of the family through `s0`, at height `h`.
///
/// Family One runs downward in u as h grows; family Two runs upward. The
/// bottom level of `s0` is carried through unchanged.
pub fn u_on_curve(
    family: WaveFamily,
    orientation: CurveOrientation,
    s0: &State,
    h: f64,
    g: Gravity,
) -> Result<f64, SweError> {
    assert_nonlinear(family);
    check_heights(h, s0.h)?;
    let term = if on_shock_branch(family, orientation, h, s0.h) {
        shock_term(h, s0.h, g)
    } else {
        raref_term(h, s0.h, g)
    };
    Ok(match family {
        WaveFamily::One => s0.u - term,
        WaveFamily::Two => s0.u + term,
        WaveFamily::Three => unreachable!(),
    })
}

/// Slope du/dh of the curve through `s0` at height `h`.
pub(crate) fn du_dh_on_curve(
    family: WaveFamily,
    orientation: CurveOrientation,
    s0: &State,
    h: f64,
    g: Gravity,
) -> Result<f64, SweError> {
    assert_nonlinear(family);
    check_heights(h, s0.h)?;
    let term = if on_shock_branch(family, orientation, h, s0.h) {
        shock_term_dh(h, s0.h, g)
    } else {
        raref_term_dh(h, g)
    };
    Ok(match family {
        WaveFamily::One => -term,
        WaveFamily::Two => term,
        WaveFamily::Three => unreachable!(),
    })
}

/// Signed distance of `s` from the curve of the family through `s0`:
/// zero exactly when `s` lies on the (shock or rarefaction) branch.
pub fn curve_residual(
    family: WaveFamily,
    orientation: CurveOrientation,
    s: &State,
    s0: &State,
    g: Gravity,
) -> Result<f64, SweError> {
    Ok(s.u - u_on_curve(family, orientation, s0, s.h, g)?)
}

/// Shock speed from the mass jump condition, sigma = [h u] / [h], for a
/// discontinuity between `s0` and `s` at equal bottom level.
pub fn shock_speed(s0: &State, s: &State, g: Gravity) -> Result<f64, SweError> {
    let _ = g;
    if (s.h - s0.h).abs() <= 1e-14 * 1.0_f64.max(s.h).max(s0.h) {
        return Err(SweError::DegenerateJump { h: s0.h });
    }
    Ok((s.discharge() - s0.discharge()) / (s.h - s0.h))
}

/// The state joined to `s` by a zero-speed shock of the first family.
///
/// Defined for states in G1 or on C+ (where it is the state itself); the
/// partner lies in G2+ and carries the same discharge.
pub fn zero_speed_state(s: &State, g: Gravity) -> Result<State, SweError> {
    let region = classify_region(s, g, resonance_tol(s, g));
    match region {
        PhaseRegion::G1 | PhaseRegion::CPlus => Ok(zero_speed_conjugate(s, g)),
        found => Err(SweError::WrongRegion {
            required: "G1 or C+",
            found,
        }),
    }
}

/// Quadratic conjugate of the zero-speed shock relation, without any region
/// check: callers on the G2 side get the partner below instead of above.
pub(crate) fn zero_speed_conjugate(s: &State, g: Gravity) -> State {
    let hs = 0.5 * (-s.h + (s.h * s.h + 8.0 * s.h * s.u * s.u / g.0).sqrt());
    State {
        h: hs,
        u: s.discharge() / hs,
        a: s.a,
    }
}

/// State inside a rarefaction fan of the given family at similarity speed
/// `xi`, anchored at `s0`.
///
/// For family One the fan extends from the 1-characteristic of `s0` toward
/// the vacuum edge u0 + 2 sqrt(g h0); for family Two from the vacuum edge
/// u0 - 2 sqrt(g h0) up to the 2-characteristic of `s0`.
pub fn rarefaction_fan_state(
    family: WaveFamily,
    s0: &State,
    xi: f64,
    g: Gravity,
) -> Result<State, SweError> {
    assert_nonlinear(family);
    if s0.h <= 0.0 {
        return Err(SweError::NonPositiveHeight { h: s0.h });
    }
    let c0 = s0.celerity(g);
    let slack = 1e-12 * 1.0_f64.max(s0.u.abs()).max(c0).max(xi.abs());
    let (head, tail, c) = match family {
        WaveFamily::One => {
            let head = s0.u - c0;
            let tail = s0.u + 2.0 * c0;
            (head, tail, (s0.u + 2.0 * c0 - xi) / 3.0)
        }
        WaveFamily::Two => {
            let head = s0.u - 2.0 * c0;
            let tail = s0.u + c0;
            (head, tail, (xi - s0.u + 2.0 * c0) / 3.0)
        }
        WaveFamily::Three => unreachable!(),
    };
    if xi < head - slack || xi > tail + slack {
        return Err(SweError::OutOfFan { xi, head, tail });
    }
    let c = c.max(0.0);
    let h = c * c / g.0;
    let u = match family {
        WaveFamily::One => xi + c,
        WaveFamily::Two => xi - c,
        WaveFamily::Three => unreachable!(),
    };
    Ok(State { h, u, a: s0.a })
}
