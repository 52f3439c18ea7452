//! Stationary contacts: zero-speed waves that carry the bottom jump.
//!
//! Across such a wave the discharge h u and the head u^2/2 + g (h + a) are
//! both constant. Eliminating u turns the jump relations into a cubic in the
//! far-side height with at most two positive roots: a supercritical one below
//! the sonic height of the shared discharge and a subcritical one above it.
//! The roots merge when the bottom level reaches [`a_max`], and no contact
//! exists beyond it.

use crate::error::SweError;
use crate::numerics::{newton_safeguarded, regula_falsi, RootPolicy};
use crate::state::{Gravity, PhaseRegion, State};

/// Which root of the contact cubic to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContactSide {
    /// The smaller root; the far state runs faster than its celerity.
    SupercriticalSide,
    /// The larger root; the far state runs slower than its celerity.
    SubcriticalSide,
}

/// Positive roots of the contact cubic together with the heights that
/// separate and bound them.
///
/// Ordering: `h1 <= h_min <= h_star <= h2`, with all four equal exactly at
/// the maximal bottom level.
#[derive(Debug, Clone, Copy)]
pub struct ContactRoots {
    /// Smaller root: far-side height on the fast branch.
    pub h1: f64,
    /// Larger root: far-side height on the slow branch.
    pub h2: f64,
    /// Height of the cubic's local minimum; the roots straddle it.
    pub h_star: f64,
    /// Height at which the shared discharge runs exactly critical.
    pub h_min: f64,
}

/// Residual cubic whose positive roots are the admissible far-side heights
/// of a stationary contact from `s0` to bottom level `a`.
pub fn phi_cubic(s0: &State, a: f64, h: f64, g: Gravity) -> f64 {
    let b = 2.0 * g.0 * (a - s0.a - s0.h) - s0.u * s0.u;
    let c = s0.discharge() * s0.discharge();
    2.0 * g.0 * h * h * h + b * h * h + c
}

/// Derivative of [`phi_cubic`] in `h`.
pub fn phi_cubic_dh(s0: &State, a: f64, h: f64, g: Gravity) -> f64 {
    let b = 2.0 * g.0 * (a - s0.a - s0.h) - s0.u * s0.u;
    6.0 * g.0 * h * h + 2.0 * b * h
}

/// Highest bottom level a stationary contact from `s0` can reach.
///
/// Closed form of the level at which the two cubic roots collide; it equals
/// `s0.a` exactly when `s0` runs critical, and exceeds it otherwise.
pub fn a_max(s0: &State, g: Gravity) -> f64 {
    let p = (g.0 * s0.h).cbrt();
    let q = (s0.u * s0.u).cbrt();
    s0.a + (p - q) * (p - q) * (2.0 * p + q) / (2.0 * g.0)
}

fn sonic_height(s0: &State, g: Gravity) -> f64 {
    (s0.discharge() * s0.discharge() / g.0).cbrt()
}

fn trough_height(s0: &State, a: f64, g: Gravity) -> f64 {
    (s0.u * s0.u + 2.0 * g.0 * (s0.a + s0.h - a)) / (3.0 * g.0)
}

fn root_policy(s0: &State) -> RootPolicy {
    let q = s0.discharge();
    RootPolicy::default().scaled((q * q).max(1.0))
}

/// Both positive roots of the contact cubic, or `None` when the bottom level
/// `a` is out of reach (`a > a_max`).
pub fn contact_roots(s0: &State, a: f64, g: Gravity) -> Result<Option<ContactRoots>, SweError> {
    if s0.h <= 0.0 {
        return Err(SweError::NonPositiveHeight { h: s0.h });
    }
    let amax = a_max(s0, g);
    if a > amax {
        return Ok(None);
    }
    let h_min = sonic_height(s0, g);
    let h_star = trough_height(s0, a, g);
    if s0.u == 0.0 {
        // The cubic degenerates: h^2 (2 g h - 2 g (a0 + h0 - a)) with a
        // double root at zero and the surface-level-preserving root.
        return Ok(Some(ContactRoots {
            h1: 0.0,
            h2: s0.h + s0.a - a,
            h_star,
            h_min,
        }));
    }

    let pol = root_policy(s0);
    let f = |h: f64| phi_cubic(s0, a, h, g);

    // Small root: the cubic falls from phi(0) = (h0 u0)^2 > 0 to its minimum,
    // crossing once at or before the sonic height. Rounding near a_max can
    // push a grazing phi(h_min) above zero; retry on the wider bracket ending
    // at the trough, and failing that treat the contact as the tangent case.
    let h1 = if f(h_min) < 0.0 {
        regula_falsi(&f, 0.0, h_min, &pol)?
    } else if f(h_star) < 0.0 {
        regula_falsi(&f, 0.0, h_star, &pol)?
    } else {
        return Ok(Some(ContactRoots {
            h1: h_min,
            h2: h_min,
            h_star,
            h_min,
        }));
    };

    // Large root: the cubic rises monotonically beyond the trough, so Newton
    // from the right of it converges; a doubling bracket guards the start.
    // Grazing data can leave the trough value barely above zero even though
    // the sonic value sat barely below: the roots have merged there too.
    let lo = h_star.max(h_min);
    if f(lo) >= 0.0 {
        return Ok(Some(ContactRoots {
            h1,
            h2: lo.max(h1),
            h_star,
            h_min,
        }));
    }
    let x0 = lo + 1.0;
    let mut hi = x0;
    let mut grow = 0;
    while f(hi) <= 0.0 {
        hi *= 2.0;
        grow += 1;
        if grow > 200 {
            return Err(SweError::ConvergenceFailure {
                op: "contact_roots_bracket",
                iterations: grow,
                x: hi,
                residual: f(hi),
            });
        }
    }
    let h2 = newton_safeguarded(&f, |h| phi_cubic_dh(s0, a, h, g), x0.min(hi), lo, hi, &pol)?;

    Ok(Some(ContactRoots {
        h1,
        h2,
        h_star,
        h_min,
    }))
}

/// The far state of the stationary contact from `s0` to bottom level `a` on
/// the requested side.
///
/// When `a` equals the bottom level of `s0` and the requested side matches
/// its own regime, the state itself is returned unchanged, so equilibrium
/// data passes through bit for bit.
pub(crate) fn contact_state(
    s0: &State,
    a: f64,
    side: ContactSide,
    g: Gravity,
) -> Result<State, SweError> {
    if s0.h <= 0.0 {
        return Err(SweError::NonPositiveHeight { h: s0.h });
    }
    if a == s0.a {
        let fr = s0.froude(g);
        let matches = match side {
            ContactSide::SupercriticalSide => fr >= 1.0,
            ContactSide::SubcriticalSide => fr <= 1.0,
        };
        if matches {
            return Ok(*s0);
        }
    }
    let roots = contact_roots(s0, a, g)?.ok_or(SweError::NoStationaryContact {
        a0: s0.a,
        a,
        a_max: a_max(s0, g),
    })?;
    let h = match side {
        ContactSide::SupercriticalSide => roots.h1,
        ContactSide::SubcriticalSide => roots.h2,
    };
    if h <= 0.0 {
        // Only the degenerate zero root of a resting state lands here.
        return Ok(State { h: 0.0, u: 0.0, a });
    }
    Ok(State {
        h,
        u: s0.discharge() / h,
        a,
    })
}

/// The root side a contact from a state in `region` may use without the
/// far state crossing into the other regime.
pub(crate) fn admissible_side(region: PhaseRegion) -> ContactSide {
    match region {
        PhaseRegion::G1 | PhaseRegion::G3 | PhaseRegion::CPlus | PhaseRegion::CMinus => {
            ContactSide::SupercriticalSide
        }
        PhaseRegion::G2Plus | PhaseRegion::G2Minus => ContactSide::SubcriticalSide,
    }
}

/// Contact state on the side selected by the regime of `s0`, or `None` when
/// the level `a` is beyond reach.
pub fn admissible_contact(s0: &State, a: f64, g: Gravity) -> Result<Option<State>, SweError> {
    if s0.h <= 0.0 {
        return Err(SweError::NonPositiveHeight { h: s0.h });
    }
    if a > a_max(s0, g) && a != s0.a {
        return Ok(None);
    }
    let region = crate::state::classify_region(s0, g, crate::state::resonance_tol(s0, g));
    contact_state(s0, a, admissible_side(region), g).map(Some)
}
