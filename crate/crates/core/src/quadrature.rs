//! Adaptive Simpson quadrature.
//!
//! The integrator keeps an explicit work stack instead of recursing, so the
//! subdivision cap is a hard bound on memory and evaluations. Each panel is
//! accepted once the Richardson estimate `|S(left) + S(right) - S(whole)| / 15`
//! falls under its share of the absolute tolerance, where the share is
//! proportional to the panel width.
//!
//! [`integrate_pieces`] splits the range at caller-supplied breakpoints first,
//! so kinks and jumps in the integrand never sit inside a panel.

/// Absolute tolerance used by every expectation in the crate.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Maximum number of accepted panels per call.
pub const MAX_INTERVALS: usize = 1 << 20;

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Sum of the per-panel Richardson error estimates.
    pub error_estimate: f64,
    pub intervals: usize,
    /// False when the subdivision cap was hit before every panel converged.
    pub converged: bool,
}

impl Quadrature {
    const ZERO: Quadrature = Quadrature {
        value: 0.0,
        error_estimate: 0.0,
        intervals: 0,
        converged: true,
    };

    fn merge(self, other: Quadrature) -> Quadrature {
        Quadrature {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            intervals: self.intervals + other.intervals,
            converged: self.converged && other.converged,
        }
    }
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Reversed bounds give the negated integral; `a == b` gives zero.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64) -> Quadrature
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Quadrature::ZERO;
    }
    if b < a {
        let mut q = adaptive_simpson(f, b, a, tol);
        q.value = -q.value;
        return q;
    }

    let width = b - a;
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let mut stack = vec![Panel {
        a,
        b,
        fa,
        fm,
        fb,
        whole: simpson(width, fa, fm, fb),
    }];

    let mut out = Quadrature::ZERO;
    // Panels still on the stack count against the cap too.
    while let Some(p) = stack.pop() {
        let m = 0.5 * (p.a + p.b);
        let lm = 0.5 * (p.a + m);
        let rm = 0.5 * (m + p.b);
        let (flm, frm) = (f(lm), f(rm));
        let half = 0.5 * (p.b - p.a);
        let left = simpson(half, p.fa, flm, p.fm);
        let right = simpson(half, p.fm, frm, p.fb);
        let delta = left + right - p.whole;
        let local_tol = tol * (p.b - p.a) / width;

        let at_cap = out.intervals + stack.len() + 2 > MAX_INTERVALS;
        let unsplittable = lm <= p.a || rm >= p.b || m <= p.a || m >= p.b;
        if delta.abs() <= 15.0 * local_tol || at_cap || unsplittable {
            out.value += left + right + delta / 15.0;
            out.error_estimate += delta.abs() / 15.0;
            out.intervals += 1;
            if delta.abs() > 15.0 * local_tol {
                out.converged = false;
            }
        } else {
            stack.push(Panel {
                a: m,
                b: p.b,
                fa: p.fm,
                fm: frm,
                fb: p.fb,
                whole: right,
            });
            stack.push(Panel {
                a: p.a,
                b: m,
                fa: p.fa,
                fm: flm,
                fb: p.fm,
                whole: left,
            });
        }
    }
    out
}

/// Integrates `f` over `[a, b]` piece by piece, splitting at every breakpoint
/// strictly inside the range. The tolerance is shared across pieces in
/// proportion to their width.
///
/// `f` is taken to be right-continuous: the right end of each piece is
/// evaluated one ulp to its left so the next piece's value never leaks in.
pub fn integrate_pieces<F>(f: F, a: f64, b: f64, breakpoints: &[f64], tol: f64) -> Quadrature
where
    F: Fn(f64) -> f64,
{
    if b <= a {
        return Quadrature::ZERO;
    }
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&x| x > a && x < b)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let width = b - a;
    let mut lo = a;
    let mut total = Quadrature::ZERO;
    for hi in cuts.into_iter().chain(std::iter::once(b)) {
        let piece_tol = tol * (hi - lo) / width;
        let left_limit = hi.next_down();
        let piece = |x: f64| f(if x >= hi { left_limit } else { x });
        total = total.merge(adaptive_simpson(piece, lo, hi, piece_tol));
        lo = hi;
    }
    total
}

fn simpson(h: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    h * (fa + 4.0 * fm + fb) / 6.0
}
