//! Exact Riemann solutions for shallow water flow over a bottom step.
//!
//! The initial data are two constant states separated at x = 0, each with its
//! own bottom level.  Because the bottom is stationary, every solution is a
//! fan of at most four elementary waves: shocks and rarefactions of the two
//! nonlinear families, plus a stationary contact pinned at x = 0 across which
//! the bottom level jumps.  Near the resonance curves (where a nonlinear
//! characteristic speed vanishes) up to three distinct admissible solutions
//! coexist; they are told apart by how their wave pattern threads the zero
//! speed, and [`construct`] builds each of the six patterns on demand while
//! [`classify`] reports which ones exist for given data.
//!
//! Pattern labels: the A family enters from a supercritical (fast) left
//! state, the B family from a subcritical (slow) one.
//!
//! * `A1` — stationary contact first, then both nonlinear waves on the right.
//! * `A2` — the contact splits at an intermediate bottom level found by a
//!   scalar search, with a zero-speed shock wedged between its two halves.
//! * `A3` / `B3` — a nonlinear wave of nonpositive speed, the contact, then a
//!   wave of nonnegative speed; the middle state comes from a bisection along
//!   a curve segment bounded by the zero-speed partner (or sonic point) and
//!   the farthest state that still admits the contact.
//! * `B1` — a left wave up to the sonic state, the contact dropping to the
//!   right level, then a second same-family wave and the right wave.
//! * `B2` — like `A2` with the split contact entered from the sonic state.

use crate::error::SweError;
use crate::numerics::{bisect, newton_safeguarded, RootPolicy};
use crate::state::{classify_region, eigenvalues, resonance_tol, Gravity, PhaseRegion, State};
use crate::stationary_contact::{a_max, admissible_contact, contact_state, ContactSide};
use crate::wave_curves::{
    du_dh_on_curve, rarefaction_fan_state, shock_speed, u_on_curve, zero_speed_state,
    CurveOrientation, WaveFamily,
};

/// Convergence rules for the scalar searches behind `A2`, `B2`, `A3` and
/// `B3`: residual below 1e-12 or bracket width below 1e-13 relative.
pub(crate) const SEARCH_POLICY: RootPolicy = RootPolicy {
    residual_tol: 1e-12,
    step_tol: 1e-13,
    max_iter: 200,
};

/// Label of one of the six wave-pattern constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstructionTag {
    A1,
    A2,
    A3,
    B1,
    B2,
    B3,
}

impl std::fmt::Display for ConstructionTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ConstructionTag::A1 => "A1",
            ConstructionTag::A2 => "A2",
            ConstructionTag::A3 => "A3",
            ConstructionTag::B1 => "B1",
            ConstructionTag::B2 => "B2",
            ConstructionTag::B3 => "B3",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for ConstructionTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "a1" => Ok(ConstructionTag::A1),
            "a2" => Ok(ConstructionTag::A2),
            "a3" => Ok(ConstructionTag::A3),
            "b1" => Ok(ConstructionTag::B1),
            "b2" => Ok(ConstructionTag::B2),
            "b3" => Ok(ConstructionTag::B3),
            other => Err(format!("unknown construction tag `{other}`")),
        }
    }
}

/// How the `A3`/`B3` middle state is searched along the curve segment.
///
/// Both strategies bracket the same root; they are kept separate so either
/// can cross-check the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SegmentAlgorithm {
    /// Bisect the segment height directly, testing on which side of the
    /// backward two-curve the contact image lands.  Default.
    #[default]
    BisectOnCurve,
    /// Bisect on the bottom level instead: each probe intersects the
    /// constant-discharge curve with the backward two-curve and compares the
    /// level that would balance the contact against the right level.
    BisectOnLevel,
}

/// Kind and speed data of one elementary wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WaveKind {
    /// Discontinuity travelling at the given speed.
    Shock { speed: f64 },
    /// Self-similar fan spanning similarity speeds `head..tail`.
    Rarefaction {
        head: f64,
        tail: f64,
        family: WaveFamily,
    },
    /// Zero-speed wave carrying the bottom-level jump.
    StationaryContact,
    /// Vacuum stretch between two wet edges receding at the given speeds.
    ///
    /// When a dry bed opens directly over the bottom step, the level jump
    /// rides this front instead of a stationary contact (no water touches
    /// the step).
    DryFront { left_edge: f64, right_edge: f64 },
}

/// One wave together with the constant states on its two sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wave {
    pub kind: WaveKind,
    pub left: State,
    pub right: State,
}

impl Wave {
    /// Closed interval of similarity speeds occupied by the wave.
    pub fn speed_interval(&self) -> (f64, f64) {
        match self.kind {
            WaveKind::Shock { speed } => (speed, speed),
            WaveKind::Rarefaction { head, tail, .. } => (head, tail),
            WaveKind::StationaryContact => (0.0, 0.0),
            WaveKind::DryFront {
                left_edge,
                right_edge,
            } => (left_edge, right_edge),
        }
    }

    fn in_zero_cluster(&self) -> bool {
        let (lo, hi) = self.speed_interval();
        lo == 0.0 && hi == 0.0
    }
}

/// A complete solution: the constant states from left to right and the
/// waves separating them, ordered by nondecreasing speed.
///
/// The first and last states are bitwise the input data.  Jumps below the
/// resolution of the curve searches are dropped from `waves` while their
/// endpoint waypoints are kept, so `states` can hold more than
/// `waves.len() + 1` entries in near-degenerate problems; the kept
/// waypoints then differ only within that resolution.  [`sample`] follows
/// `waves`.
#[derive(Debug, Clone, PartialEq)]
pub struct RiemannSolution {
    pub tag: ConstructionTag,
    pub states: Vec<State>,
    pub waves: Vec<Wave>,
}

/// Verdict on how many admissible solutions the data supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Uniqueness {
    Unique,
    /// Three distinct constructions coexist (resonant data).
    MultipleThree,
    None,
}

/// A probe state together with its signed velocity gap to the backward
/// two-curve through the right state; positive means the probe lies above
/// that curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapProbe {
    pub state: State,
    pub gap: f64,
}

/// The probe values that decide existence and multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassificationEvidence {
    /// Left state supercritical: the deciding probes are the two orders of
    /// composing a stationary contact with a zero-speed partner.
    FastEntry {
        /// Contact to the right level first, partner second.
        contact_then_partner: Option<GapProbe>,
        /// Partner first, contact to the right level second.
        partner_then_contact: Option<GapProbe>,
        /// Whether the far end of the curve segment still admits a contact.
        far_contact_reachable: bool,
    },
    /// Left state subcritical: probes start from the sonic state on the
    /// left wave curve.
    SlowEntry {
        /// Sonic state taken through the slow-side contact.
        sonic_then_contact: Option<GapProbe>,
        /// Fast-side contact of the sonic state taken through its partner.
        drop_then_partner: Option<GapProbe>,
        /// Whether the far end of the curve segment still admits a contact.
        far_contact_reachable: bool,
    },
    /// The data were solved mirrored; the inner evidence describes the
    /// reflected problem.
    Reflected(Box<ClassificationEvidence>),
}

/// Everything [`classify`] learned about one set of Riemann data.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub exists: bool,
    pub solutions: Vec<RiemannSolution>,
    pub uniqueness: Uniqueness,
    pub evidence: ClassificationEvidence,
}

/// The two contact-partner composition orders from a supercritical state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FastEntryCompositions {
    /// Stationary contact to `a_right`, then the zero-speed partner.
    pub contact_then_partner: Option<State>,
    /// Zero-speed partner, then a stationary contact to `a_right`.
    pub partner_then_contact: Option<State>,
}

/// The sonic-state compositions from a subcritical state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlowEntryCompositions {
    /// Sonic state on the left wave curve (critical crossing).
    pub sonic: Option<State>,
    /// Its slow-side stationary contact at `a_right`.
    pub sonic_then_contact: Option<State>,
    /// Its fast-side stationary contact at `a_right`.
    pub drop: Option<State>,
    /// Zero-speed partner of that fast-side contact.
    pub drop_then_partner: Option<State>,
}

// ---------------------------------------------------------------------------
// Small helpers
// ---------------------------------------------------------------------------

/// Signed velocity distance of `probe` above the backward two-curve through
/// `right`, evaluated at the probe's height.
pub fn backward_two_gap(probe: &State, right: &State, g: Gravity) -> Result<f64, SweError> {
    Ok(probe.u - u_on_curve(WaveFamily::Two, CurveOrientation::Backward, right, probe.h, g)?)
}

fn region_of(s: &State, g: Gravity) -> PhaseRegion {
    classify_region(s, g, resonance_tol(s, g))
}

fn is_fast_entry(region: PhaseRegion) -> bool {
    matches!(region, PhaseRegion::G1 | PhaseRegion::CPlus)
}

fn is_slow_entry(region: PhaseRegion) -> bool {
    matches!(region, PhaseRegion::G2Plus | PhaseRegion::G2Minus)
}

/// Fastest left and slowest right wet edge speeds: a dry bed opens exactly
/// when the left edge does not outrun the right one.
fn vacuum_edges(left: &State, right: &State, g: Gravity) -> (f64, f64) {
    (
        left.u + 2.0 * left.celerity(g),
        right.u - 2.0 * right.celerity(g),
    )
}

/// Point of the forward one-curve through `left` at height `h`.
fn curve_point(left: &State, h: f64, g: Gravity) -> Result<State, SweError> {
    Ok(State {
        h,
        u: u_on_curve(WaveFamily::One, CurveOrientation::Forward, left, h, g)?,
        a: left.a,
    })
}

/// Where the one-curve through `left` crosses the critical line u = c, or
/// `None` when the curve stays below it (deep backward flow).
fn sonic_crossing(left: &State, g: Gravity) -> Option<State> {
    let w = left.u + 2.0 * left.celerity(g);
    if w <= 0.0 {
        return None;
    }
    let c = w / 3.0;
    Some(State {
        h: c * c / g.0,
        u: c,
        a: left.a,
    })
}

/// Stationary contact of `s` to level `a`, accepting a hair's-width
/// overshoot of the reachability limit as the tangent (double-root) state.
fn contact_with_reach_fallback(
    s: &State,
    a: f64,
    side: ContactSide,
    g: Gravity,
) -> Result<Option<State>, SweError> {
    match contact_state(s, a, side, g) {
        Ok(c) => Ok(Some(c)),
        Err(SweError::NoStationaryContact { a_max: am, .. }) => {
            if (am - a).abs() <= 1e-9 * 1.0_f64.max(a.abs()) {
                let q = s.discharge();
                let hc = (q * q / g.0).cbrt();
                if hc <= 0.0 {
                    return Ok(None);
                }
                Ok(Some(State { h: hc, u: q / hc, a }))
            } else {
                Ok(None)
            }
        }
        Err(e) => Err(e),
    }
}

/// Highest bottom level reachable by a contact from the curve point at `h`.
fn reach_along_curve(left: &State, h: f64, g: Gravity) -> Result<f64, SweError> {
    Ok(a_max(&curve_point(left, h, g)?, g))
}

/// Height where the one-curve through `left` crosses u = 0.
fn still_crossing_height(left: &State, g: Gravity) -> Result<f64, SweError> {
    if left.u <= 0.0 {
        let root = left.h.sqrt() + left.u / (2.0 * g.0.sqrt());
        return Ok((root * root).max(f64::MIN_POSITIVE));
    }
    // Positive velocity: the crossing sits on the rising (shock) branch.
    let f = |h: f64| u_on_curve(WaveFamily::One, CurveOrientation::Forward, left, h, g);
    let mut hi = left.h;
    for _ in 0..200 {
        let trial = hi * 2.0;
        if f(trial)? < 0.0 {
            return bisect_res(|h| f(h), hi, trial, &SEARCH_POLICY);
        }
        hi = trial;
    }
    Err(SweError::ConvergenceFailure {
        op: "still_crossing_bracket",
        iterations: 200,
        x: hi,
        residual: f(hi)?,
    })
}

/// Height where the one-curve through `left` crosses u = -c, searched
/// upward from `start_h`.
fn backward_sonic_crossing_height(
    left: &State,
    start_h: f64,
    g: Gravity,
) -> Result<f64, SweError> {
    let f = |h: f64| -> Result<f64, SweError> {
        Ok(u_on_curve(WaveFamily::One, CurveOrientation::Forward, left, h, g)? + (g.0 * h).sqrt())
    };
    let mut lo = start_h;
    if f(lo)? <= 0.0 {
        return Ok(lo);
    }
    for _ in 0..200 {
        let trial = lo * 2.0;
        if f(trial)? < 0.0 {
            return bisect_res(f, lo, trial, &SEARCH_POLICY);
        }
        lo = trial;
    }
    Err(SweError::ConvergenceFailure {
        op: "backward_sonic_bracket",
        iterations: 200,
        x: lo,
        residual: f(lo)?,
    })
}

/// Bisection over a fallible function: any probe error aborts the search.
fn bisect_res(
    mut f: impl FnMut(f64) -> Result<f64, SweError>,
    lo: f64,
    hi: f64,
    policy: &RootPolicy,
) -> Result<f64, SweError> {
    let mut err: Option<SweError> = None;
    let root = bisect(
        |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                0.0
            }
        },
        lo,
        hi,
        policy,
    );
    match err {
        Some(e) => Err(e),
        None => root,
    }
}

/// Coarse maximizer of a fallible unimodal function on `[lo, hi]`.
fn ternary_max(
    mut f: impl FnMut(f64) -> Result<f64, SweError>,
    lo: f64,
    hi: f64,
) -> Result<(f64, f64), SweError> {
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..150 {
        let third = (hi - lo) / 3.0;
        let m1 = lo + third;
        let m2 = hi - third;
        if f(m1)? < f(m2)? {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    let x = 0.5 * (lo + hi);
    Ok((x, f(x)?))
}

/// First and last heights in `[lo_h, hi_h]` where the contact reach along
/// the one-curve equals `a_right`; `(None, None)` when the reach never
/// attains that level.
fn reach_crossings(
    left: &State,
    lo_h: f64,
    hi_h: f64,
    a_right: f64,
    g: Gravity,
) -> Result<(Option<f64>, Option<f64>), SweError> {
    let psi = |h: f64| -> Result<f64, SweError> { Ok(reach_along_curve(left, h, g)? - a_right) };
    let p_lo = psi(lo_h)?;
    let p_hi = psi(hi_h)?;
    // The reach rises from the sonic end, peaks near the u = 0 crossing and
    // falls toward the backward-sonic end, so it has at most two crossings.
    let hz = still_crossing_height(left, g)?.clamp(lo_h, hi_h);
    let p_hz = psi(hz)?;
    let (peak_h, peak_v) = if p_hz >= 0.0 {
        (hz, p_hz)
    } else {
        ternary_max(psi, lo_h, hi_h)?
    };
    if peak_v < 0.0 {
        return Ok((None, None));
    }
    let first = if p_lo >= 0.0 {
        Some(lo_h)
    } else {
        Some(bisect_res(psi, lo_h, peak_h, &SEARCH_POLICY)?)
    };
    let last = if p_hi >= 0.0 {
        Some(hi_h)
    } else {
        Some(bisect_res(psi, peak_h, hi_h, &SEARCH_POLICY)?)
    };
    Ok((first, last))
}

// ---------------------------------------------------------------------------
// Curve intersections
// ---------------------------------------------------------------------------

/// State on the backward two-curve through `right` that carries the given
/// (nonnegative) discharge.
///
/// The residual `discharge / h - u(h)` is strictly decreasing in `h`, so the
/// intersection is unique; data whose curves never meet report
/// [`SweError::NoIntersection`].
pub fn intersect_constant_discharge(
    right: &State,
    discharge: f64,
    g: Gravity,
) -> Result<State, SweError> {
    if discharge < 0.0 {
        return Err(SweError::NoIntersection);
    }
    let w2b = |h: f64| u_on_curve(WaveFamily::Two, CurveOrientation::Backward, right, h, g);
    let d = |h: f64| -> Result<f64, SweError> { Ok(discharge / h - w2b(h)?) };
    let x0 = right.h;
    let d0 = d(x0)?;
    if d0 == 0.0 {
        return Ok(State {
            h: x0,
            u: w2b(x0)?,
            a: right.a,
        });
    }
    let mut lo = x0;
    let mut hi = x0;
    if d0 > 0.0 {
        for _ in 0..2200 {
            let trial = hi * 2.0;
            if d(trial)? < 0.0 {
                hi = trial;
                break;
            }
            hi = trial;
        }
    } else {
        let mut found = false;
        for _ in 0..2200 {
            let trial = lo * 0.5;
            if d(trial)? > 0.0 {
                lo = trial;
                found = true;
                break;
            }
            lo = trial;
        }
        if !found {
            return Err(SweError::NoIntersection);
        }
    }
    let policy = RootPolicy::default().scaled(1.0_f64.max(right.u.abs()).max(discharge));
    let mut err: Option<SweError> = None;
    let mut wrap = |h: f64| match d(h) {
        Ok(v) => v,
        Err(e) => {
            err = Some(e);
            0.0
        }
    };
    let dd = |h: f64| -> f64 {
        let slope = du_dh_on_curve(WaveFamily::Two, CurveOrientation::Backward, right, h, g)
            .unwrap_or(f64::INFINITY);
        -discharge / (h * h) - slope
    };
    let h = newton_safeguarded(&mut wrap, dd, x0.clamp(lo, hi), lo, hi, &policy)?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(State {
        h,
        u: discharge / h,
        a: right.a,
    })
}

/// Intersection of the forward one-curve through `anchor` with the backward
/// two-curve through `right`; `NoIntersection` when the curves miss (a dry
/// bed opens instead).
fn intersect_one_backward_two(
    anchor: &State,
    right: &State,
    g: Gravity,
) -> Result<State, SweError> {
    let u1 = |h: f64| u_on_curve(WaveFamily::One, CurveOrientation::Forward, anchor, h, g);
    let w2b = |h: f64| u_on_curve(WaveFamily::Two, CurveOrientation::Backward, right, h, g);
    let d = |h: f64| -> Result<f64, SweError> { Ok(u1(h)? - w2b(h)?) };
    let x0 = anchor.h.max(right.h);
    let d0 = d(x0)?;
    if d0 == 0.0 {
        return Ok(State {
            h: x0,
            u: u1(x0)?,
            a: anchor.a,
        });
    }
    let (ui, uj) = vacuum_edges(anchor, right, g);
    if ui <= uj {
        return Err(SweError::NoIntersection);
    }
    let mut lo = x0;
    let mut hi = x0;
    if d0 > 0.0 {
        for _ in 0..2200 {
            let trial = hi * 2.0;
            if d(trial)? < 0.0 {
                hi = trial;
                break;
            }
            hi = trial;
        }
    } else {
        for _ in 0..2200 {
            let trial = lo * 0.5;
            if d(trial)? > 0.0 {
                lo = trial;
                break;
            }
            lo = trial;
        }
    }
    let policy = RootPolicy::default().scaled(1.0_f64.max(anchor.u.abs()).max(right.u.abs()));
    let mut err: Option<SweError> = None;
    let mut wrap = |h: f64| match d(h) {
        Ok(v) => v,
        Err(e) => {
            err = Some(e);
            0.0
        }
    };
    let dd = |h: f64| -> f64 {
        let a = du_dh_on_curve(WaveFamily::One, CurveOrientation::Forward, anchor, h, g)
            .unwrap_or(f64::NEG_INFINITY);
        let b = du_dh_on_curve(WaveFamily::Two, CurveOrientation::Backward, right, h, g)
            .unwrap_or(f64::INFINITY);
        a - b
    };
    let h = newton_safeguarded(&mut wrap, dd, x0.clamp(lo, hi), lo, hi, &policy)?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(State {
        h,
        u: u1(h)?,
        a: anchor.a,
    })
}

// ---------------------------------------------------------------------------
// Wave assembly
// ---------------------------------------------------------------------------

/// Two states equal to within the resolution of the curve searches.
///
/// The tolerance must sit above the residual the root brackets can leave
/// (a few 1e-13 relative) or pure-noise jumps survive to the wave
/// builders, where the Rankine-Hugoniot speed of a sub-resolution jump is
/// rounding amplified to an arbitrary value.  It must also stay far below
/// any wave a construction can genuinely carry.
fn nearly_same(x: &State, y: &State) -> bool {
    (x.h - y.h).abs() <= 1e-11 * 1.0_f64.max(x.h).max(y.h)
        && (x.u - y.u).abs() <= 1e-11 * 1.0_f64.max(x.u.abs()).max(y.u.abs())
}

/// Snap a speed that is negative only by search noise up to exactly zero.
fn raised(x: f64) -> f64 {
    if x < 0.0 && x > -1e-9 {
        0.0
    } else {
        x
    }
}

/// Snap a speed that is positive only by search noise down to exactly zero.
fn lowered(x: f64) -> f64 {
    if x > 0.0 && x < 1e-9 {
        0.0
    } else {
        x
    }
}

#[derive(Clone, Copy)]
enum SpeedSide {
    NonNegative,
    NonPositive,
}

/// Wave of the first family from `left` to `right` (shock above, fan
/// below), or `None` for a jump too small to carry.
fn one_wave(
    left: &State,
    right: &State,
    side: SpeedSide,
    g: Gravity,
) -> Result<Option<Wave>, SweError> {
    if nearly_same(left, right) {
        return Ok(None);
    }
    let kind = if right.h > left.h {
        // A jump too weak for a shock speed (heights equal to rounding, the
        // velocity gap being search noise) has zero strength; drop it.
        let s = match shock_speed(left, right, g) {
            Ok(s) => s,
            Err(SweError::DegenerateJump { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        let speed = match side {
            SpeedSide::NonNegative => raised(s),
            SpeedSide::NonPositive => lowered(s),
        };
        WaveKind::Shock { speed }
    } else {
        let mut head = eigenvalues(left, g)[0];
        let mut tail = eigenvalues(right, g)[0];
        match side {
            SpeedSide::NonNegative => head = raised(head),
            SpeedSide::NonPositive => tail = lowered(tail),
        }
        WaveKind::Rarefaction {
            head,
            tail,
            family: WaveFamily::One,
        }
    };
    Ok(Some(Wave {
        kind,
        left: *left,
        right: *right,
    }))
}

/// Wave of the second family from `left` to `right` (shock when the height
/// drops rightward, fan otherwise).
fn two_wave(
    left: &State,
    right: &State,
    side: SpeedSide,
    g: Gravity,
) -> Result<Option<Wave>, SweError> {
    if nearly_same(left, right) {
        return Ok(None);
    }
    let kind = if left.h > right.h {
        let s = match shock_speed(left, right, g) {
            Ok(s) => s,
            Err(SweError::DegenerateJump { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        let speed = match side {
            SpeedSide::NonNegative => raised(s),
            SpeedSide::NonPositive => lowered(s),
        };
        WaveKind::Shock { speed }
    } else {
        let mut head = eigenvalues(left, g)[1];
        let tail = eigenvalues(right, g)[1];
        if matches!(side, SpeedSide::NonNegative) {
            head = raised(head);
        }
        WaveKind::Rarefaction {
            head,
            tail,
            family: WaveFamily::Two,
        }
    };
    Ok(Some(Wave {
        kind,
        left: *left,
        right: *right,
    }))
}

/// Stationary contact between two states; identity contacts, and same-level
/// pairs differing only by search noise, are dropped.
fn contact_wave(left: &State, right: &State) -> Option<Wave> {
    if left == right || (left.a == right.a && nearly_same(left, right)) {
        return None;
    }
    Some(Wave {
        kind: WaveKind::StationaryContact,
        left: *left,
        right: *right,
    })
}

fn speeds_ordered(waves: &[Wave]) -> bool {
    let mut prev = f64::NEG_INFINITY;
    for w in waves {
        let (lo, hi) = w.speed_interval();
        let scale = 1.0_f64.max(lo.abs()).max(hi.abs());
        if hi < lo - 1e-9 * scale || lo < prev - 1e-9 * scale {
            return false;
        }
        prev = prev.max(hi);
    }
    true
}

fn collect_states(chain: &[State]) -> Vec<State> {
    let mut out: Vec<State> = Vec::with_capacity(chain.len());
    for s in chain {
        if out.last() != Some(s) {
            out.push(*s);
        }
    }
    out
}

/// Final admissibility screen: a misordered pattern is not a solution.
fn assemble(tag: ConstructionTag, chain: &[State], waves: Vec<Wave>) -> Option<RiemannSolution> {
    if !speeds_ordered(&waves) {
        return None;
    }
    Some(RiemannSolution {
        tag,
        states: collect_states(chain),
        waves,
    })
}

fn trivial_solution(tag: ConstructionTag, s: &State) -> RiemannSolution {
    RiemannSolution {
        tag,
        states: vec![*s],
        waves: Vec::new(),
    }
}

fn mirrored_family(f: WaveFamily) -> WaveFamily {
    match f {
        WaveFamily::One => WaveFamily::Two,
        WaveFamily::Two => WaveFamily::One,
        WaveFamily::Three => WaveFamily::Three,
    }
}

fn flip(x: f64) -> f64 {
    let y = -x;
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

/// Image of a solution under the symmetry x -> -x, u -> -u.
fn mirrored_solution(sol: RiemannSolution) -> RiemannSolution {
    let states = sol.states.iter().rev().map(State::reflected).collect();
    let waves = sol
        .waves
        .iter()
        .rev()
        .map(|w| {
            let kind = match w.kind {
                WaveKind::Shock { speed } => WaveKind::Shock { speed: flip(speed) },
                WaveKind::Rarefaction { head, tail, family } => WaveKind::Rarefaction {
                    head: flip(tail),
                    tail: flip(head),
                    family: mirrored_family(family),
                },
                WaveKind::StationaryContact => WaveKind::StationaryContact,
                WaveKind::DryFront {
                    left_edge,
                    right_edge,
                } => WaveKind::DryFront {
                    left_edge: flip(right_edge),
                    right_edge: flip(left_edge),
                },
            };
            Wave {
                kind,
                left: w.right.reflected(),
                right: w.left.reflected(),
            }
        })
        .collect();
    RiemannSolution {
        tag: sol.tag,
        states,
        waves,
    }
}

// ---------------------------------------------------------------------------
// The six constructions
// ---------------------------------------------------------------------------

/// `A1`: contact from the left state, then both nonlinear waves at
/// nonnegative speed (dry tail if the wet curves miss).
fn construct_fast_direct(
    left: &State,
    right: &State,
    g: Gravity,
) -> Result<Option<RiemannSolution>, SweError> {
    if !is_fast_entry(region_of(left, g)) {
        return Ok(None);
    }
    // The defining contact is mandatory; an unreachable level is an error,
    // not mere inapplicability.
    let l_o = contact_state(left, right.a, ContactSide::SupercriticalSide, g)?;
    let o_sharp = zero_speed_state(&l_o, g)?;
    if backward_two_gap(&o_sharp, right, g)? > 0.0 {
        return Ok(None);
    }
    let (ui, uj) = vacuum_edges(&l_o, right, g);
    if ui <= uj {
        let edge_l = State {
            h: 0.0,
            u: ui,
            a: l_o.a,
        };
        let edge_r = State {
            h: 0.0,
            u: uj,
            a: right.a,
        };
        let mut waves = Vec::new();
        waves.extend(contact_wave(left, &l_o));
        waves.push(Wave {
            kind: WaveKind::Rarefaction {
                head: raised(eigenvalues(&l_o, g)[0]),
                tail: ui,
                family: WaveFamily::One,
            },
            left: l_o,
            right: edge_l,
        });
        waves.push(Wave {
            kind: WaveKind::DryFront {
                left_edge: ui,
                right_edge: uj,
            },
            left: edge_l,
            right: edge_r,
        });
        waves.push(Wave {
            kind: WaveKind::Rarefaction {
                head: uj,
                tail: eigenvalues(right, g)[1],
                family: WaveFamily::Two,
            },
            left: edge_r,
            right: *right,
        });
        return Ok(assemble(
            ConstructionTag::A1,
            &[*left, l_o, edge_l, edge_r, *right],
            waves,
        ));
    }
    let middle = intersect_one_backward_two(&l_o, right, g)?;
    let mut waves = Vec::new();
    waves.extend(contact_wave(left, &l_o));
    waves.extend(one_wave(&l_o, &middle, SpeedSide::NonNegative, g)?);
    waves.extend(two_wave(&middle, right, SpeedSide::NonNegative, g)?);
    Ok(assemble(
        ConstructionTag::A1,
        &[*left, l_o, middle, *right],
        waves,
    ))
}

/// `A2`: the contact splits at an intermediate level `a*` with a zero-speed
/// shock between the two halves; `a*` is found by bisection between the two
/// bottom levels.
fn construct_fast_level_search(
    left: &State,
    right: &State,
    g: Gravity,
) -> Result<Option<RiemannSolution>, SweError> {
    if !is_fast_entry(region_of(left, g)) {
        return Ok(None);
    }
    let (a_lo, a_hi) = (left.a.min(right.a), left.a.max(right.a));
    if a_lo == a_hi {
        return Ok(None);
    }
    let chain = |a: f64| -> Result<Option<State>, SweError> {
        let first = match contact_state(left, a, ContactSide::SupercriticalSide, g) {
            Ok(s) => s,
            Err(SweError::NoStationaryContact { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        let partner = zero_speed_state(&first, g)?;
        match contact_state(&partner, right.a, ContactSide::SubcriticalSide, g) {
            Ok(s) => Ok(Some(s)),
            Err(SweError::NoStationaryContact { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let gap_of = |s: &State| backward_two_gap(s, right, g);
    let end_lo = match chain(a_lo)? {
        Some(s) => gap_of(&s)?,
        None => return Ok(None),
    };
    let end_hi = match chain(a_hi)? {
        Some(s) => gap_of(&s)?,
        None => return Ok(None),
    };
    if end_lo * end_hi >= 0.0 {
        return Ok(None);
    }
    // A probe level whose chain breaks off is pushed toward the right
    // bottom level by reporting the sign the left level carries.
    let left_level_sign = if left.a <= right.a { end_lo } else { end_hi };
    let sentinel = left_level_sign.signum() * 1e30;
    let a_star = bisect_res(
        |a| match chain(a)? {
            Some(s) => gap_of(&s),
            None => Ok(sentinel),
        },
        a_lo,
        a_hi,
        &SEARCH_POLICY,
    )?;
    let first = match contact_state(left, a_star, ContactSide::SupercriticalSide, g) {
        Ok(s) => s,
        Err(e) => return Err(e),
    };
    let partner = zero_speed_state(&first, g)?;
    // The whole zero-speed cluster shares the left discharge, so the state
    // after the second contact is fixed independently of `a*`.
    let middle = intersect_constant_discharge(right, left.discharge(), g)?;
    let mut waves = Vec::new();
    waves.extend(contact_wave(left, &first));
    waves.push(Wave {
        kind: WaveKind::Shock { speed: 0.0 },
        left: first,
        right: partner,
    });
    waves.extend(contact_wave(&partner, &middle));
    waves.extend(two_wave(&middle, right, SpeedSide::NonNegative, g)?);
    Ok(assemble(
        ConstructionTag::A2,
        &[*left, first, partner, middle, *right],
        waves,
    ))
}

/// Segment of the one-curve eligible to host the stationary contact in the
/// `A3`/`B3` pattern.
#[derive(Debug)]
struct CurveSegment {
    anchor_h: f64,
    far_h: f64,
}

fn resolve_segment(
    left: &State,
    a_right: f64,
    g: Gravity,
) -> Result<Option<CurveSegment>, SweError> {
    match region_of(left, g) {
        PhaseRegion::G1 | PhaseRegion::CPlus => {
            let anchor = zero_speed_state(left, g)?;
            let far_limit = backward_sonic_crossing_height(left, anchor.h, g)?;
            let far_h = if left.a >= a_right {
                far_limit
            } else {
                match reach_crossings(left, anchor.h, far_limit, a_right, g)?.1 {
                    Some(h) => h,
                    None => return Ok(None),
                }
            };
            Ok(Some(CurveSegment {
                anchor_h: anchor.h,
                far_h,
            }))
        }
        PhaseRegion::G2Plus | PhaseRegion::G2Minus => {
            let sonic = match sonic_crossing(left, g) {
                Some(s) => s,
                None => return Ok(None),
            };
            let far_limit = backward_sonic_crossing_height(left, sonic.h, g)?;
            if left.a >= a_right {
                Ok(Some(CurveSegment {
                    anchor_h: sonic.h,
                    far_h: far_limit,
                }))
            } else {
                match reach_crossings(left, sonic.h, far_limit, a_right, g)? {
                    (Some(first), Some(last)) => Ok(Some(CurveSegment {
                        anchor_h: first,
                        far_h: last,
                    })),
                    _ => Ok(None),
                }
            }
        }
        PhaseRegion::G3 | PhaseRegion::CMinus => Ok(None),
    }
}

/// Slow-side contact image of the curve point at `h`, with the tangency
/// fallback for reach-limit rounding.
fn contact_from_curve_point(
    left: &State,
    h: f64,
    a_right: f64,
    g: Gravity,
) -> Result<Option<State>, SweError> {
    let v = curve_point(left, h, g)?;
    contact_with_reach_fallback(&v, a_right, ContactSide::SubcriticalSide, g)
}

/// `A3`/`B3`: nonpositive-speed wave to a state on the curve segment, the
/// contact, then a nonnegative-speed wave to the right state.
fn construct_segment(
    tag: ConstructionTag,
    left: &State,
    right: &State,
    g: Gravity,
    algorithm: SegmentAlgorithm,
) -> Result<Option<RiemannSolution>, SweError> {
    let seg = match resolve_segment(left, right.a, g)? {
        Some(s) => s,
        None => return Ok(None),
    };
    let anchor_o = match contact_from_curve_point(left, seg.anchor_h, right.a, g)? {
        Some(s) => s,
        None => return Ok(None),
    };
    let far_o = match contact_from_curve_point(left, seg.far_h, right.a, g)? {
        Some(s) => s,
        None => return Ok(None),
    };
    let gap_anchor = backward_two_gap(&anchor_o, right, g)?;
    let gap_far = backward_two_gap(&far_o, right, g)?;
    if gap_anchor < 0.0 || gap_far > 0.0 {
        return Ok(None);
    }
    let h_m = match algorithm {
        SegmentAlgorithm::BisectOnCurve => {
            let blocked = if gap_far < 0.0 { -1e30 } else { 1e30 };
            bisect_res(
                |h| match contact_from_curve_point(left, h, right.a, g)? {
                    Some(o) => backward_two_gap(&o, right, g),
                    None => Ok(blocked),
                },
                seg.anchor_h,
                seg.far_h,
                &SEARCH_POLICY,
            )?
        }
        SegmentAlgorithm::BisectOnLevel => {
            // Each probe balances the contact relations against the level it
            // would need, then compares that level with the right one.  The
            // constant-discharge intersection only makes sense for forward
            // discharge, so the bracket stops at the stagnation height.
            let mismatch = |h: f64| -> Result<f64, SweError> {
                let v = curve_point(left, h, g)?;
                // The probe at the stagnation height itself may round to a
                // hair-negative discharge; treat it as exactly stagnant.
                let y = intersect_constant_discharge(right, v.discharge().max(0.0), g)?;
                let level = left.a + (v.u * v.u - y.u * y.u) / (2.0 * g.0) + v.h - y.h;
                Ok(level - right.a)
            };
            let far_h = if curve_point(left, seg.far_h, g)?.discharge() < 0.0 {
                still_crossing_height(left, g)?.clamp(seg.anchor_h, seg.far_h)
            } else {
                seg.far_h
            };
            bisect_res(mismatch, seg.anchor_h, far_h, &SEARCH_POLICY)?
        }
    };
    let middle = curve_point(left, h_m, g)?;
    let middle_o = match contact_from_curve_point(left, h_m, right.a, g)? {
        Some(s) => s,
        None => {
            return Err(SweError::ConvergenceFailure {
                op: "segment_contact",
                iterations: SEARCH_POLICY.max_iter,
                x: h_m,
                residual: f64::NAN,
            })
        }
    };
    // The trailing wave may not run backward once the contact image falls
    // into the backward-flowing subcritical region.
    if region_of(&middle_o, g) == PhaseRegion::G2Minus && !nearly_same(&middle_o, right) {
        let two_speed = if middle_o.h > right.h {
            shock_speed(&middle_o, right, g)?
        } else {
            eigenvalues(&middle_o, g)[1]
        };
        let tol = 1e-9 * 1.0_f64.max(middle_o.u.abs()).max(middle_o.celerity(g));
        if two_speed < -tol {
            return Ok(None);
        }
    }
    let mut waves = Vec::new();
    waves.extend(one_wave(left, &middle, SpeedSide::NonPositive, g)?);
    waves.extend(contact_wave(&middle, &middle_o));
    waves.extend(two_wave(&middle_o, right, SpeedSide::NonNegative, g)?);
    Ok(assemble(tag, &[*left, middle, middle_o, *right], waves))
}

/// `B1`: left wave to the sonic state, contact dropping on the fast side,
/// second one-family wave, then the right wave (or a dry tail).
fn construct_slow_direct(
    left: &State,
    right: &State,
    g: Gravity,
) -> Result<Option<RiemannSolution>, SweError> {
    if !is_slow_entry(region_of(left, g)) {
        return Ok(None);
    }
    let first = match slow_entry_first_state(left, right.a, g)? {
        Some(s) => s,
        None => return Ok(None),
    };
    let dropped =
        match contact_with_reach_fallback(&first, right.a, ContactSide::SupercriticalSide, g)? {
            Some(s) => s,
            None => return Ok(None),
        };
    let partner = zero_speed_state(&dropped, g)?;
    if backward_two_gap(&partner, right, g)? > 0.0 {
        return Ok(None);
    }
    let (ui, uj) = vacuum_edges(&dropped, right, g);
    if ui <= uj {
        let edge_l = State {
            h: 0.0,
            u: ui,
            a: dropped.a,
        };
        let edge_r = State {
            h: 0.0,
            u: uj,
            a: right.a,
        };
        let mut waves = Vec::new();
        waves.extend(one_wave(left, &first, SpeedSide::NonPositive, g)?);
        waves.extend(contact_wave(&first, &dropped));
        waves.push(Wave {
            kind: WaveKind::Rarefaction {
                head: raised(eigenvalues(&dropped, g)[0]),
                tail: ui,
                family: WaveFamily::One,
            },
            left: dropped,
            right: edge_l,
        });
        waves.push(Wave {
            kind: WaveKind::DryFront {
                left_edge: ui,
                right_edge: uj,
            },
            left: edge_l,
            right: edge_r,
        });
        waves.push(Wave {
            kind: WaveKind::Rarefaction {
                head: uj,
                tail: eigenvalues(right, g)[1],
                family: WaveFamily::Two,
            },
            left: edge_r,
            right: *right,
        });
        return Ok(assemble(
            ConstructionTag::B1,
            &[*left, first, dropped, edge_l, edge_r, *right],
            waves,
        ));
    }
    let third = intersect_one_backward_two(&dropped, right, g)?;
    let mut waves = Vec::new();
    waves.extend(one_wave(left, &first, SpeedSide::NonPositive, g)?);
    waves.extend(contact_wave(&first, &dropped));
    waves.extend(one_wave(&dropped, &third, SpeedSide::NonNegative, g)?);
    waves.extend(two_wave(&third, right, SpeedSide::NonNegative, g)?);
    Ok(assemble(
        ConstructionTag::B1,
        &[*left, first, dropped, third, *right],
        waves,
    ))
}

/// Entry state of the slow-side patterns: the sonic crossing for a drop in
/// the bottom, or the first reach crossing when the bottom rises.
fn slow_entry_first_state(
    left: &State,
    a_right: f64,
    g: Gravity,
) -> Result<Option<State>, SweError> {
    let sonic = match sonic_crossing(left, g) {
        Some(s) => s,
        None => return Ok(None),
    };
    if left.a >= a_right {
        return Ok(Some(sonic));
    }
    let far_limit = backward_sonic_crossing_height(left, sonic.h, g)?;
    match reach_crossings(left, sonic.h, far_limit, a_right, g)?.0 {
        Some(h) => Ok(Some(curve_point(left, h, g)?)),
        None => Ok(None),
    }
}

/// `B2`: the split-contact pattern entered from the sonic state; only
/// meaningful when the bottom drops rightward.
fn construct_slow_level_search(
    left: &State,
    right: &State,
    g: Gravity,
) -> Result<Option<RiemannSolution>, SweError> {
    if !is_slow_entry(region_of(left, g)) || left.a <= right.a {
        return Ok(None);
    }
    let sonic = match sonic_crossing(left, g) {
        Some(s) => s,
        None => return Ok(None),
    };
    let chain = |a: f64| -> Result<Option<(State, State, State)>, SweError> {
        let m = match contact_with_reach_fallback(&sonic, a, ContactSide::SupercriticalSide, g)? {
            Some(s) => s,
            None => return Ok(None),
        };
        let n = zero_speed_state(&m, g)?;
        let p = match contact_with_reach_fallback(&n, right.a, ContactSide::SubcriticalSide, g)? {
            Some(s) => s,
            None => return Ok(None),
        };
        Ok(Some((m, n, p)))
    };
    let gap_of = |s: &State| backward_two_gap(s, right, g);
    let end_lo = match chain(right.a)? {
        Some((_, _, p)) => gap_of(&p)?,
        None => return Ok(None),
    };
    let end_hi = match chain(left.a)? {
        Some((_, _, p)) => gap_of(&p)?,
        None => return Ok(None),
    };
    if end_lo * end_hi >= 0.0 {
        return Ok(None);
    }
    let sentinel = end_hi.signum() * 1e30;
    let a_star = bisect_res(
        |a| match chain(a)? {
            Some((_, _, p)) => gap_of(&p),
            None => Ok(sentinel),
        },
        right.a,
        left.a,
        &SEARCH_POLICY,
    )?;
    let (m, n, _) = match chain(a_star)? {
        Some(t) => t,
        None => {
            return Err(SweError::ConvergenceFailure {
                op: "slow_level_search",
                iterations: SEARCH_POLICY.max_iter,
                x: a_star,
                residual: f64::NAN,
            })
        }
    };
    // The zero-speed cluster shares the sonic discharge.
    let p = intersect_constant_discharge(right, sonic.discharge(), g)?;
    let mut waves = Vec::new();
    waves.extend(one_wave(left, &sonic, SpeedSide::NonPositive, g)?);
    waves.extend(contact_wave(&sonic, &m));
    waves.push(Wave {
        kind: WaveKind::Shock { speed: 0.0 },
        left: m,
        right: n,
    });
    waves.extend(contact_wave(&n, &p));
    waves.extend(two_wave(&p, right, SpeedSide::NonNegative, g)?);
    Ok(assemble(
        ConstructionTag::B2,
        &[*left, sonic, m, n, p, *right],
        waves,
    ))
}

// ---------------------------------------------------------------------------
// Public construction entry points
// ---------------------------------------------------------------------------

fn check_wet(left: &State, right: &State) -> Result<(), SweError> {
    if left.h <= 0.0 {
        return Err(SweError::NonPositiveHeight { h: left.h });
    }
    if right.h <= 0.0 {
        return Err(SweError::NonPositiveHeight { h: right.h });
    }
    Ok(())
}

/// Build the wave pattern of the requested construction for the given data.
///
/// `Ok(None)` means the construction does not apply to these data;
/// [`SweError::NoStationaryContact`] means its defining contact cannot reach
/// the right bottom level.  Identical left and right data yield a single
/// constant state under every tag.
pub fn construct(
    tag: ConstructionTag,
    left: &State,
    right: &State,
    g: Gravity,
) -> Result<Option<RiemannSolution>, SweError> {
    construct_with_algorithm(tag, left, right, g, SegmentAlgorithm::default())
}

/// [`construct`] with an explicit search strategy for the `A3`/`B3`
/// segment; the other tags ignore the choice.
pub fn construct_with_algorithm(
    tag: ConstructionTag,
    left: &State,
    right: &State,
    g: Gravity,
    algorithm: SegmentAlgorithm,
) -> Result<Option<RiemannSolution>, SweError> {
    check_wet(left, right)?;
    if left == right {
        return Ok(Some(trivial_solution(tag, left)));
    }
    match tag {
        ConstructionTag::A1 => construct_fast_direct(left, right, g),
        ConstructionTag::A2 => construct_fast_level_search(left, right, g),
        // The three-wave pattern exists on both entry sides; the engine
        // dispatches on the regime and keeps the requested label.
        ConstructionTag::A3 | ConstructionTag::B3 => {
            construct_segment(tag, left, right, g, algorithm)
        }
        ConstructionTag::B1 => construct_slow_direct(left, right, g),
        ConstructionTag::B2 => construct_slow_level_search(left, right, g),
    }
}

// ---------------------------------------------------------------------------
// Probe compositions
// ---------------------------------------------------------------------------

/// The two contact/partner composition orders from a supercritical (or
/// critical) left state toward bottom level `a_right`.
pub fn fast_entry_compositions(
    left: &State,
    a_right: f64,
    g: Gravity,
) -> Result<FastEntryCompositions, SweError> {
    let region = region_of(left, g);
    if !is_fast_entry(region) {
        return Err(SweError::WrongRegion {
            required: "G1 or C+",
            found: region,
        });
    }
    let contact_then_partner = match admissible_contact(left, a_right, g)? {
        Some(o) => Some(zero_speed_state(&o, g)?),
        None => None,
    };
    let sharp = zero_speed_state(left, g)?;
    let partner_then_contact = admissible_contact(&sharp, a_right, g)?;
    Ok(FastEntryCompositions {
        contact_then_partner,
        partner_then_contact,
    })
}

/// The sonic-state compositions from a subcritical left state toward bottom
/// level `a_right`.
pub fn slow_entry_compositions(
    left: &State,
    a_right: f64,
    g: Gravity,
) -> Result<SlowEntryCompositions, SweError> {
    let region = region_of(left, g);
    if !is_slow_entry(region) {
        return Err(SweError::WrongRegion {
            required: "G2",
            found: region,
        });
    }
    let sonic = slow_entry_first_state(left, a_right, g)?;
    let (sonic_then_contact, drop, drop_then_partner) = match sonic.as_ref() {
        Some(s) => {
            let down = contact_with_reach_fallback(s, a_right, ContactSide::SubcriticalSide, g)?;
            let drop = contact_with_reach_fallback(s, a_right, ContactSide::SupercriticalSide, g)?;
            let partner = match drop.as_ref() {
                Some(d) => Some(zero_speed_state(d, g)?),
                None => None,
            };
            (down, drop, partner)
        }
        None => (None, None, None),
    };
    Ok(SlowEntryCompositions {
        sonic,
        sonic_then_contact,
        drop,
        drop_then_partner,
    })
}

// ---------------------------------------------------------------------------
// Solve and classify
// ---------------------------------------------------------------------------

fn probe(state: Option<State>, right: &State, g: Gravity) -> Result<Option<GapProbe>, SweError> {
    match state {
        Some(s) => Ok(Some(GapProbe {
            gap: backward_two_gap(&s, right, g)?,
            state: s,
        })),
        None => Ok(None),
    }
}

/// Candidate order for a fast (supercritical) entry, most plausible first.
fn fast_ladder(
    left: &State,
    right: &State,
    g: Gravity,
    preference: &[ConstructionTag],
) -> Result<Vec<ConstructionTag>, SweError> {
    use ConstructionTag::{A1, A2, A3};
    let comps = fast_entry_compositions(left, right.a, g)?;
    let o_sharp = probe(comps.contact_then_partner, right, g)?;
    let sharp_o = probe(comps.partner_then_contact, right, g)?;
    let gap_os = o_sharp.map(|p| p.gap);
    let gap_so = sharp_o.map(|p| p.gap);
    let multiple = gap_os.is_some_and(|v| v < 0.0) && gap_so.is_some_and(|v| v > 0.0);
    let base = if multiple {
        let mut order: Vec<ConstructionTag> = preference
            .iter()
            .copied()
            .filter(|t| matches!(t, A1 | A2 | A3))
            .collect();
        order.extend([A1, A2, A3]);
        order
    } else if gap_os.is_some_and(|v| v < 0.0) {
        vec![A1, A2, A3]
    } else if gap_so.is_some_and(|v| v < 0.0) {
        vec![A2, A3, A1]
    } else {
        vec![A3, A1, A2]
    };
    let mut seen = Vec::new();
    for t in base {
        if !seen.contains(&t) {
            seen.push(t);
        }
    }
    Ok(seen)
}

/// Candidate order for a slow (subcritical) entry, most plausible first.
fn slow_ladder(
    left: &State,
    right: &State,
    g: Gravity,
    preference: &[ConstructionTag],
) -> Result<Vec<ConstructionTag>, SweError> {
    use ConstructionTag::{B1, B2, B3};
    let comps = slow_entry_compositions(left, right.a, g)?;
    if comps.sonic.is_none() {
        return Ok(Vec::new());
    }
    let down = probe(comps.sonic_then_contact, right, g)?;
    let partner = probe(comps.drop_then_partner, right, g)?;
    let gap_down = down.map(|p| p.gap);
    let gap_partner = partner.map(|p| p.gap);
    let multiple = gap_partner.is_some_and(|v| v < 0.0) && gap_down.is_some_and(|v| v > 0.0);
    let base = if multiple {
        let mut order: Vec<ConstructionTag> = preference
            .iter()
            .copied()
            .filter(|t| matches!(t, B1 | B2 | B3))
            .collect();
        order.extend([B3, B1, B2]);
        order
    } else if gap_down.is_some_and(|v| v > 0.0) {
        vec![B3, B2, B1]
    } else if gap_partner.is_some_and(|v| v > 0.0) {
        vec![B2, B3, B1]
    } else {
        vec![B1, B3, B2]
    };
    let mut seen = Vec::new();
    for t in base {
        if !seen.contains(&t) {
            seen.push(t);
        }
    }
    Ok(seen)
}

pub(crate) fn trivial_tag(left: &State, g: Gravity) -> ConstructionTag {
    if is_fast_entry(region_of(left, g)) {
        ConstructionTag::A1
    } else {
        ConstructionTag::B1
    }
}

/// Vacuum split: both streams recede and a dry bed opens with no stationary
/// contact (any bottom jump sits under the vacuum).
fn vacuum_split(left: &State, right: &State, g: Gravity) -> RiemannSolution {
    let (ui, uj) = vacuum_edges(left, right, g);
    let edge_l = State {
        h: 0.0,
        u: ui,
        a: left.a,
    };
    let edge_r = State {
        h: 0.0,
        u: uj,
        a: right.a,
    };
    let waves = vec![
        Wave {
            kind: WaveKind::Rarefaction {
                head: eigenvalues(left, g)[0],
                tail: ui,
                family: WaveFamily::One,
            },
            left: *left,
            right: edge_l,
        },
        Wave {
            kind: WaveKind::DryFront {
                left_edge: ui,
                right_edge: uj,
            },
            left: edge_l,
            right: edge_r,
        },
        Wave {
            kind: WaveKind::Rarefaction {
                head: uj,
                tail: eigenvalues(right, g)[1],
                family: WaveFamily::Two,
            },
            left: edge_r,
            right: *right,
        },
    ];
    RiemannSolution {
        tag: ConstructionTag::A1,
        states: vec![*left, edge_l, edge_r, *right],
        waves,
    }
}

/// One admissible solution, chosen by regime, candidate ladder and the
/// caller's preference among coexisting constructions.
pub fn solve(
    left: &State,
    right: &State,
    g: Gravity,
    preference: &[ConstructionTag],
) -> Result<RiemannSolution, SweError> {
    solve_inner(left, right, g, preference, false, false)
}

/// [`solve`] with the branch rule taken literally as "nonpositive fast
/// characteristic speed selects the fast-entry ladder" — kept only to
/// demonstrate that the literal sign reading breaks down.
pub(crate) fn solve_with_branch_rule(
    left: &State,
    right: &State,
    g: Gravity,
    preference: &[ConstructionTag],
    literal_branch_sign: bool,
) -> Result<RiemannSolution, SweError> {
    solve_inner(left, right, g, preference, literal_branch_sign, false)
}

fn solve_inner(
    left: &State,
    right: &State,
    g: Gravity,
    preference: &[ConstructionTag],
    literal_branch_sign: bool,
    reflected: bool,
) -> Result<RiemannSolution, SweError> {
    check_wet(left, right)?;
    if left == right {
        return Ok(trivial_solution(trivial_tag(left, g), left));
    }
    let region = region_of(left, g);
    let (fast, slow) = if literal_branch_sign {
        let lambda1 = eigenvalues(left, g)[0];
        (lambda1 <= 0.0, lambda1 > 0.0)
    } else {
        (is_fast_entry(region), is_slow_entry(region))
    };
    let candidates = if fast {
        fast_ladder(left, right, g, preference).unwrap_or_default()
    } else if slow {
        slow_ladder(left, right, g, preference).unwrap_or_default()
    } else {
        Vec::new()
    };
    for tag in candidates {
        match construct(tag, left, right, g) {
            Ok(Some(sol)) => return Ok(sol),
            Ok(None) | Err(SweError::NoStationaryContact { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    if !reflected {
        match solve_inner(
            &right.reflected(),
            &left.reflected(),
            g,
            preference,
            literal_branch_sign,
            true,
        ) {
            Ok(sol) => return Ok(mirrored_solution(sol)),
            Err(SweError::NoSolution) | Err(SweError::NoStationaryContact { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let (ui, uj) = vacuum_edges(left, right, g);
    if ui <= uj {
        return Ok(vacuum_split(left, right, g));
    }
    Err(SweError::NoSolution)
}

fn far_contact_reachable(left: &State, a_right: f64, g: Gravity) -> bool {
    match resolve_segment(left, a_right, g) {
        Ok(Some(seg)) => matches!(
            contact_from_curve_point(left, seg.far_h, a_right, g),
            Ok(Some(_))
        ),
        _ => false,
    }
}

/// Existence, multiplicity and the probe evidence for one set of data.
pub fn classify(
    left: &State,
    right: &State,
    g: Gravity,
) -> Result<ClassificationReport, SweError> {
    classify_inner(left, right, g, false)
}

fn classify_inner(
    left: &State,
    right: &State,
    g: Gravity,
    reflected: bool,
) -> Result<ClassificationReport, SweError> {
    check_wet(left, right)?;
    let region = region_of(left, g);
    let empty_evidence = || ClassificationEvidence::FastEntry {
        contact_then_partner: None,
        partner_then_contact: None,
        far_contact_reachable: false,
    };
    if left == right {
        return Ok(ClassificationReport {
            exists: true,
            solutions: vec![trivial_solution(trivial_tag(left, g), left)],
            uniqueness: Uniqueness::Unique,
            evidence: empty_evidence(),
        });
    }
    let (tags, evidence): (&[ConstructionTag], ClassificationEvidence) = if is_fast_entry(region) {
        let comps = fast_entry_compositions(left, right.a, g)?;
        (
            &[ConstructionTag::A1, ConstructionTag::A2, ConstructionTag::A3],
            ClassificationEvidence::FastEntry {
                contact_then_partner: probe(comps.contact_then_partner, right, g)?,
                partner_then_contact: probe(comps.partner_then_contact, right, g)?,
                far_contact_reachable: far_contact_reachable(left, right.a, g),
            },
        )
    } else if is_slow_entry(region) {
        let comps = slow_entry_compositions(left, right.a, g)?;
        (
            &[ConstructionTag::B1, ConstructionTag::B2, ConstructionTag::B3],
            ClassificationEvidence::SlowEntry {
                sonic_then_contact: probe(comps.sonic_then_contact, right, g)?,
                drop_then_partner: probe(comps.drop_then_partner, right, g)?,
                far_contact_reachable: far_contact_reachable(left, right.a, g),
            },
        )
    } else {
        (&[], empty_evidence())
    };
    let mut solutions = Vec::new();
    for &tag in tags {
        match construct(tag, left, right, g) {
            Ok(Some(sol)) => solutions.push(sol),
            Ok(None) | Err(SweError::NoStationaryContact { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    if solutions.is_empty() && !reflected {
        let inner = classify_inner(&right.reflected(), &left.reflected(), g, true)?;
        if inner.exists {
            return Ok(ClassificationReport {
                exists: true,
                solutions: inner.solutions.into_iter().map(mirrored_solution).collect(),
                uniqueness: inner.uniqueness,
                evidence: ClassificationEvidence::Reflected(Box::new(inner.evidence)),
            });
        }
        // Fall through with the direct evidence; the mirrored attempt found
        // nothing either.
    }
    let uniqueness = match solutions.len() {
        0 => Uniqueness::None,
        1 => Uniqueness::Unique,
        _ => Uniqueness::MultipleThree,
    };
    Ok(ClassificationReport {
        exists: !solutions.is_empty(),
        solutions,
        uniqueness,
        evidence,
    })
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

/// State of the solution at similarity speed `xi = x / t`.
///
/// The profile is right-continuous at every discontinuity.  The zero-speed
/// cluster is two-sided: `-0.0` samples the state immediately left of the
/// first zero-speed wave, `+0.0` the state immediately right of the last.
pub fn sample(solution: &RiemannSolution, xi: f64, g: Gravity) -> State {
    let mut current = match solution.waves.first() {
        Some(w) => w.left,
        None => return solution.states[0],
    };
    let at_negative_zero = xi == 0.0 && xi.is_sign_negative();
    for w in &solution.waves {
        let (lo, hi) = w.speed_interval();
        if w.in_zero_cluster() {
            if xi < 0.0 || at_negative_zero {
                return w.left;
            }
            current = w.right;
            continue;
        }
        if xi < lo {
            return w.left;
        }
        if xi < hi {
            return match w.kind {
                WaveKind::Rarefaction { family, .. } => {
                    let anchor = match family {
                        WaveFamily::Two => &w.right,
                        _ => &w.left,
                    };
                    rarefaction_fan_state(family, anchor, xi, g)
                        .expect("similarity speed inside the fan interval")
                }
                WaveKind::DryFront { .. } => State {
                    h: 0.0,
                    u: 0.0,
                    a: if xi < 0.0 { w.left.a } else { w.right.a },
                },
                // A shock occupies a single speed, never an open interval.
                WaveKind::Shock { .. } | WaveKind::StationaryContact => w.right,
            };
        }
        current = w.right;
    }
    current
}
