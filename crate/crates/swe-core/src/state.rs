//! Flow state, gravity constant, and phase-plane classification.

/// Gravitational acceleration g.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gravity(pub f64);

impl Default for Gravity {
    fn default() -> Self {
        Gravity(9.8)
    }
}

/// Region of the phase plane relative to the resonance hypersurfaces
/// C+ = {u = +sqrt(g h)} and C- = {u = -sqrt(g h)}.
///
/// G1: both nonzero characteristic speeds positive (supercritical rightward).
/// G2: nonzero speeds straddle zero (subcritical); split by the sign of u.
/// G3: both nonzero speeds negative (supercritical leftward).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseRegion {
    G1,
    G2Plus,
    G2Minus,
    G3,
    CPlus,
    CMinus,
}

impl PhaseRegion {
    /// True on G2 or either resonance boundary.
    pub fn is_subcritical_or_resonant(self) -> bool {
        !matches!(self, PhaseRegion::G1 | PhaseRegion::G3)
    }
}

/// Water height `h`, velocity `u`, and bottom level `a` at a point.
///
/// A dry state stores `h = 0.0` and `u = 0.0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State {
    pub h: f64,
    pub u: f64,
    pub a: f64,
}

impl State {
    pub fn new(h: f64, u: f64, a: f64) -> Self {
        State { h, u, a }
    }

    /// Dry state on bottom level `a`.
    pub fn dry(a: f64) -> Self {
        State { h: 0.0, u: 0.0, a }
    }

    pub fn is_dry(&self) -> bool {
        self.h == 0.0
    }

    /// Discharge h·u, the conserved momentum density divided by density.
    pub fn discharge(&self) -> f64 {
        self.h * self.u
    }

    /// Gravity wave speed sqrt(g h).
    pub fn celerity(&self, g: Gravity) -> f64 {
        (g.0 * self.h).sqrt()
    }

    /// Froude number u / sqrt(g h); infinite on a dry state with u != 0.
    pub fn froude(&self, g: Gravity) -> f64 {
        self.u / self.celerity(g)
    }

    /// Total head u^2/2 + g (h + a), constant across stationary contacts.
    pub fn bernoulli(&self, g: Gravity) -> f64 {
        0.5 * self.u * self.u + g.0 * (self.h + self.a)
    }

    /// Mirror image under the symmetry (h, u, a) -> (h, -u, a).
    pub fn reflected(&self) -> Self {
        State {
            h: self.h,
            u: -self.u,
            a: self.a,
        }
    }
}

/// Characteristic speeds [u - sqrt(g h), u + sqrt(g h), 0].
pub fn eigenvalues(s: &State, g: Gravity) -> [f64; 3] {
    let c = s.celerity(g);
    [s.u - c, s.u + c, 0.0]
}

/// Flux of the conserved pair (h, h u): (h u, h u^2 + g h^2 / 2).
pub fn flux(s: &State, g: Gravity) -> [f64; 2] {
    [s.h * s.u, s.h * s.u * s.u + 0.5 * g.0 * s.h * s.h]
}

/// Default tolerance for deciding membership on C+/C-.
pub fn resonance_tol(s: &State, g: Gravity) -> f64 {
    1e-9 * 1.0_f64.max(s.u.abs()).max(s.celerity(g))
}

/// Classify a state against the resonance hypersurfaces.
///
/// `tol` is the absolute slack on |u -+ sqrt(g h)| for C+/C- membership;
/// use [`resonance_tol`] unless the caller knows its data's precision.
pub fn classify_region(s: &State, g: Gravity, tol: f64) -> PhaseRegion {
    let c = s.celerity(g);
    if (s.u - c).abs() <= tol {
        PhaseRegion::CPlus
    } else if (s.u + c).abs() <= tol {
        PhaseRegion::CMinus
    } else if s.u - c > 0.0 {
        PhaseRegion::G1
    } else if s.u + c < 0.0 {
        PhaseRegion::G3
    } else if s.u >= 0.0 {
        PhaseRegion::G2Plus
    } else {
        PhaseRegion::G2Minus
    }
}
