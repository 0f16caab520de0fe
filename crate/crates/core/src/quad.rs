//! Adaptive Gauss–Kronrod quadrature.
//!
//! The 7/15-point pair from QUADPACK is applied on each subinterval; an
//! interval is bisected until the Kronrod/Gauss difference falls under its
//! share of the absolute tolerance.

use crate::error::{Error, Result};

/// Default absolute tolerance for λ-integrals and measures.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Default bisection depth limit.
pub const DEFAULT_MAX_DEPTH: u32 = 40;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

/// One Gauss–Kronrod 7/15 panel: returns (Kronrod estimate, |K − G|).
pub fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> (f64, f64) {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let sum = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Integration settings shared by the profile and measure routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub tol: f64,
    pub max_depth: u32,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature { tol: DEFAULT_TOL, max_depth: DEFAULT_MAX_DEPTH }
    }
}

impl Quadrature {
    pub fn new(tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
        }
        Ok(Quadrature { tol, max_depth: DEFAULT_MAX_DEPTH })
    }

    /// ∫_lo^hi f with absolute error at most `self.tol`. Reversed bounds flip the sign.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, lo: f64, hi: f64) -> Result<f64> {
        if lo == hi {
            return Ok(0.0);
        }
        if hi < lo {
            return self.integrate(f, hi, lo).map(|v| -v);
        }
        let (est, err) = gauss_kronrod_15(&f, lo, hi);
        self.refine(&f, lo, hi, est, err, self.tol, 0)
    }

    #[allow(clippy::too_many_arguments)]
    fn refine<F: Fn(f64) -> f64>(
        &self,
        f: &F,
        lo: f64,
        hi: f64,
        est: f64,
        err: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        if !est.is_finite() {
            return Err(Error::QuadratureNonConvergence { lo, hi, error: f64::INFINITY });
        }
        let mid = 0.5 * (lo + hi);
        // Accept when converged or when the interval can no longer be split.
        // The floor keeps deep panels from chasing roundoff.
        if err <= tol.max(1e-4 * self.tol) || mid <= lo || mid >= hi || (hi - lo) <= 4.0 * f64::EPSILON * mid.abs() {
            return Ok(est);
        }
        if depth >= self.max_depth {
            return Err(Error::QuadratureNonConvergence { lo, hi, error: err });
        }
        let (left, left_err) = gauss_kronrod_15(f, lo, mid);
        let (right, right_err) = gauss_kronrod_15(f, mid, hi);
        // A panel whose halves agree with it to roundoff is done.
        let total = left + right;
        if left_err + right_err <= tol {
            return Ok(total);
        }
        let l = self.refine(f, lo, mid, left, left_err, 0.5 * tol, depth + 1)?;
        let r = self.refine(f, mid, hi, right, right_err, 0.5 * tol, depth + 1)?;
        Ok(l + r)
    }
}

/// ∫_lo^hi f on a short interval using a single 15-point Kronrod panel.
///
/// Used where the integrand is smooth and the interval is small enough that
/// the panel is exact to roundoff (finite-difference stencils, polyline steps).
pub fn panel<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> f64 {
    gauss_kronrod_15(&f, lo, hi).0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let q = Quadrature::default();
        let v = q.integrate(|x| x.powi(5) - 3.0 * x * x, -1.0, 2.0).unwrap();
        let exact = (64.0 - 1.0) / 6.0 - (8.0 + 1.0);
        assert!((v - exact).abs() < 1e-13);
    }

    #[test]
    fn reversed_and_empty() {
        let q = Quadrature::default();
        assert_eq!(q.integrate(f64::cos, 1.0, 1.0).unwrap(), 0.0);
        let a = q.integrate(f64::cos, 0.0, 1.0).unwrap();
        let b = q.integrate(f64::cos, 1.0, 0.0).unwrap();
        assert!((a + b).abs() < 1e-15);
        assert!((a - 1f64.sin()).abs() < 1e-12);
    }

    #[test]
    fn kink_converges() {
        let q = Quadrature::default();
        let v = q.integrate(|x: f64| x.abs(), -0.3, 1.0).unwrap();
        assert!((v - (0.045 + 0.5)).abs() < 1e-10);
    }

    #[test]
    fn sqrt_endpoint_singularity() {
        let q = Quadrature::new(1e-9).unwrap();
        let v = q.integrate(|x: f64| x.sqrt(), 0.0, 1.0).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn depth_limit_reports_nonconvergence() {
        let q = Quadrature { tol: 1e-14, max_depth: 3 };
        let err = q.integrate(|x: f64| 1.0 / x.abs().sqrt(), -1.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::QuadratureNonConvergence { .. }));
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(Quadrature::new(0.0).is_err());
        assert!(Quadrature::new(f64::NAN).is_err());
    }
}
