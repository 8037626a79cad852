//! Bracketing root search.

/// Bisects `f` on `[lo, hi]`, where `f(lo)` and `f(hi)` have opposite signs,
/// until the bracket is narrower than `width` and, beyond that, until the
/// midpoint hits an exact zero or the bracket collapses to adjacent floats.
///
/// Returns the bracket end with the smaller `|f|`.
pub(crate) fn bisect<F>(f: F, mut lo: f64, mut hi: f64, width: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    debug_assert!(f_lo.signum() != f_hi.signum() || f_lo == 0.0 || f_hi == 0.0);
    for _ in 0..2048 {
        if f_lo == 0.0 {
            return lo;
        }
        if f_hi == 0.0 {
            return hi;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
        // Once inside the requested width keep going only while it is cheap
        // to reach full precision.
        if hi - lo < width && f_mid.abs() < f64::EPSILON {
            break;
        }
    }
    if f_lo.abs() <= f_hi.abs() {
        lo
    } else {
        hi
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let r = bisect(|x| x * x - 2.0, 1.0, 2.0, 1e-10);
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn decreasing_function_and_exact_endpoint() {
        let r = bisect(|x| 3.0 - x, 0.0, 10.0, 1e-10);
        assert_eq!(r, 3.0);
        assert_eq!(bisect(|x| x - 1.0, 1.0, 4.0, 1e-10), 1.0);
    }

    #[test]
    fn jump_converges_to_the_jump() {
        let r = bisect(|x| if x < 0.3 { -1.0 } else { 1.0 }, 0.0, 1.0, 1e-10);
        assert!((r - 0.3).abs() < 1e-15);
    }
}
