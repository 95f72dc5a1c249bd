//! Bisection for monotone threshold crossings.

use crate::error::{Error, Result};

/// Root of `f` on `[lo, hi]` by bisection until the bracket is narrower than
/// `tol`. `f(lo)` and `f(hi)` must have opposite signs (a zero endpoint is
/// returned as is).
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo < hi) || !(tol > 0.0) {
        return Err(Error::invalid(format!("bad bisection bracket [{lo}, {hi}] / tolerance {tol}")));
    }
    let (mut a, mut b) = (lo, hi);
    let fa = f(a)?;
    let fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::precondition(format!(
            "no sign change on [{lo}, {hi}]: f = {fa:e}, {fb:e}"
        )));
    }
    let lo_sign = fa.signum();
    while b - a > tol {
        let mid = 0.5 * (a + b);
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == lo_sign {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let r = bisect(|x| Ok(x * x - 2.0), 0.0, 2.0, 1e-12).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
        let r = bisect(|x| Ok(2.0 - x * x), 0.0, 2.0, 1e-12).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_brackets() {
        assert!(bisect(|x| Ok(x * x + 1.0), -1.0, 1.0, 1e-8).is_err());
        assert!(bisect(Ok, 1.0, 0.0, 1e-8).is_err());
        assert!(bisect(Ok, -1.0, 1.0, 0.0).is_err());
    }
}
