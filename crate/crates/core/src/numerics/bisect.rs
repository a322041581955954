use crate::{Error, Result};

/// Locate the point in `[lo, hi]` where `predicate` changes value, to within
/// `tol`. The returned point is the midpoint of the final bracket.
pub fn bisect_boundary(predicate: impl Fn(f64) -> bool, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let at_lo = predicate(lo);
    if at_lo == predicate(hi) {
        return Err(Error::NoSignChange { lo, hi });
    }
    let (mut a, mut b) = (lo, hi);
    while (b - a).abs() > tol {
        let mid = 0.5 * (a + b);
        if mid == a || mid == b {
            break;
        }
        if predicate(mid) == at_lo {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}
