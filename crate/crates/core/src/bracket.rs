//! Sign-change scanning and bisection on a single real variable.

use crate::error::Result;

/// Bisection on `[lo, hi]` for a function with `f(lo)·f(hi) ≤ 0`.
///
/// Stops when the bracket is narrower than `xtol` or cannot be split further.
/// Returns the midpoint of the final bracket.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, xtol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut flo = f(lo)?;
    if flo == 0.0 {
        return Ok(lo);
    }
    let fhi = f(hi)?;
    if fhi == 0.0 {
        return Ok(hi);
    }
    debug_assert!(flo.signum() != fhi.signum(), "bisect needs a sign change");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() <= xtol || mid <= lo.min(hi) || mid >= hi.max(lo) {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Evaluates `f` on `n` uniformly spaced points of `[lo, hi]` and returns the
/// sub-brackets where the sign changes. Points where `f` fails are skipped.
pub fn sign_changes<F>(mut f: F, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)>
where
    F: FnMut(f64) -> Option<f64>,
{
    let n = n.max(2);
    let step = (hi - lo) / (n - 1) as f64;
    let mut out = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..n {
        let x = if i == n - 1 { hi } else { lo + step * i as f64 };
        let Some(fx) = f(x).filter(|v| v.is_finite()) else {
            prev = None;
            continue;
        };
        if let Some((px, pf)) = prev {
            if pf == 0.0 || (pf < 0.0) != (fx < 0.0) && fx != 0.0 {
                out.push((px, x));
            }
        }
        prev = Some((x, fx));
    }
    out
}
