//! Riemann zeta function for real arguments `s > 1`.

use crate::error::{Error, Result};

/// Terms summed explicitly before the tail correction.
const HEAD_TERMS: u32 = 2000;

/// `sum_{k >= 1} k^(-s)` for `s > 1`.
///
/// The first `N` terms are summed directly. The tail is the integral
/// `N^(1-s) / (s-1)` corrected by the Euler-Maclaurin terms
/// `-N^(-s)/2 + s N^(-s-1)/12 - s(s+1)(s+2) N^(-s-3)/720`; the next term is
/// below `1e-15` for `N = 2000` and any `s > 1`.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::Divergent(s));
    }
    // Sum small terms first to limit rounding.
    let head: f64 = (1..HEAD_TERMS).rev().map(|k| f64::from(k).powf(-s)).sum();
    let n = f64::from(HEAD_TERMS);
    let tail = n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s) + s * n.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * n.powf(-s - 3.0) / 720.0;
    Ok(head + tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    /// Independent bracket: partial sum plus the integral bounds
    /// `int_{M+1}^inf <= tail <= int_M^inf`.
    fn bracket(s: f64, m: u32) -> (f64, f64) {
        let partial: f64 = (1..=m).rev().map(|k| f64::from(k).powf(-s)).sum();
        let lo = f64::from(m + 1).powf(1.0 - s) / (s - 1.0);
        let hi = f64::from(m).powf(1.0 - s) / (s - 1.0);
        (partial + lo, partial + hi)
    }

    #[test]
    fn basel() {
        let pi2 = std::f64::consts::PI.powi(2) / 6.0;
        assert_abs_diff_eq!(riemann_zeta(2.0).unwrap(), pi2, epsilon = 1e-12);
    }

    #[test]
    fn known_values() {
        assert_abs_diff_eq!(riemann_zeta(1.5).unwrap(), 2.612_375_348_685_488, epsilon = 1e-10);
        assert_abs_diff_eq!(riemann_zeta(4.0).unwrap(), std::f64::consts::PI.powi(4) / 90.0, epsilon = 1e-12);
    }

    #[test]
    fn within_integral_bracket() {
        for s in [1.05, 1.2, 1.5, 2.0, 3.0] {
            let (lo, hi) = bracket(s, 200_000);
            let z = riemann_zeta(s).unwrap();
            assert!(lo <= z + 1e-12 && z <= hi + 1e-12, "s = {s}: {lo} {z} {hi}");
        }
    }

    #[test]
    fn pole() {
        assert!(riemann_zeta(1.0).is_err());
        assert!(riemann_zeta(0.5).is_err());
        assert!(riemann_zeta(1.001).unwrap() > 999.0);
    }
}
