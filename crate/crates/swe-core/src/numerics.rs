//! Scalar root finders used by the contact and wave-curve solvers.
//!
//! All solvers stop when the residual or the step size falls below the
//! policy tolerances, and report [`SweError::ConvergenceFailure`] with the
//! last iterate otherwise. Brackets must show a sign change on entry.

use crate::error::SweError;

/// Stopping rules shared by the root finders.
///
/// `residual_tol` is absolute on |f(x)|; callers multiply in a problem scale
/// (see [`RootPolicy::scaled`]). `step_tol` is relative: a step counts as
/// converged when |dx| <= step_tol * max(1, |x|).
#[derive(Debug, Clone, Copy)]
pub struct RootPolicy {
    pub residual_tol: f64,
    pub step_tol: f64,
    pub max_iter: usize,
}

impl Default for RootPolicy {
    fn default() -> Self {
        RootPolicy {
            residual_tol: 1e-13,
            step_tol: 1e-14,
            max_iter: 200,
        }
    }
}

impl RootPolicy {
    /// Same rules with the residual tolerance multiplied by `scale`.
    pub fn scaled(&self, scale: f64) -> Self {
        RootPolicy {
            residual_tol: self.residual_tol * scale.max(1.0),
            ..*self
        }
    }

    fn step_converged(&self, dx: f64, x: f64) -> bool {
        dx.abs() <= self.step_tol * 1.0_f64.max(x.abs())
    }
}

/// Plain bisection on a sign-changing bracket.
pub fn bisect<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    policy: &RootPolicy,
) -> Result<f64, SweError> {
    let (mut lo, mut hi) = (lo, hi);
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(SweError::BadBracket { lo, hi });
    }
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..policy.max_iter {
        mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm.abs() <= policy.residual_tol || policy.step_converged(hi - lo, mid) {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Err(SweError::ConvergenceFailure {
        op: "bisect",
        iterations: policy.max_iter,
        x: mid,
        residual: f(mid),
    })
}

/// Regula falsi with the Illinois weighting, which prevents one endpoint
/// from going stale on convex functions.
pub fn regula_falsi<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    policy: &RootPolicy,
) -> Result<f64, SweError> {
    let (mut lo, mut hi) = (lo, hi);
    let mut flo = f(lo);
    let mut fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(SweError::BadBracket { lo, hi });
    }
    // Which endpoint the previous iterate replaced: -1 low side, +1 high side.
    let mut last_side = 0i8;
    let mut x = lo;
    for _ in 0..policy.max_iter {
        x = (lo * fhi - hi * flo) / (fhi - flo);
        if !x.is_finite() {
            x = 0.5 * (lo + hi);
        }
        let fx = f(x);
        if fx.abs() <= policy.residual_tol || policy.step_converged(hi - lo, x) {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
            if last_side == -1 {
                fhi *= 0.5;
            }
            last_side = -1;
        } else {
            hi = x;
            fhi = fx;
            if last_side == 1 {
                flo *= 0.5;
            }
            last_side = 1;
        }
    }
    Err(SweError::ConvergenceFailure {
        op: "regula_falsi",
        iterations: policy.max_iter,
        x,
        residual: f(x),
    })
}

/// Newton iteration confined to a sign-changing bracket.
///
/// Steps that leave the bracket, or follow a vanishing derivative, fall back
/// to bisection of the current bracket, so convergence never depends on the
/// starting point `x0` being close.
pub fn newton_safeguarded<F, D>(
    mut f: F,
    mut df: D,
    x0: f64,
    lo: f64,
    hi: f64,
    policy: &RootPolicy,
) -> Result<f64, SweError>
where
    F: FnMut(f64) -> f64,
    D: FnMut(f64) -> f64,
{
    let (mut lo, mut hi) = (lo, hi);
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(SweError::BadBracket { lo, hi });
    }
    let mut x = x0.clamp(lo, hi);
    let mut fx = f(x);
    for _ in 0..policy.max_iter {
        if fx.abs() <= policy.residual_tol {
            return Ok(x);
        }
        // Shrink the bracket around the current iterate first.
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        let d = df(x);
        let newton = x - fx / d;
        let next = if d != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let dx = next - x;
        x = next;
        fx = f(x);
        if policy.step_converged(dx, x) {
            return Ok(x);
        }
    }
    Err(SweError::ConvergenceFailure {
        op: "newton_safeguarded",
        iterations: policy.max_iter,
        x,
        residual: fx,
    })
}
