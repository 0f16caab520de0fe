//! Profile curves of rotational constant-mean-curvature surfaces.
//!
//! A rotational H-surface is generated by a meridian curve written in the
//! natural parameter `s` (hyperbolic arc length) as `sinh²ρ(s) = U²(s)` and
//! `λ(s) = ∫₀ˢ λ̇`. In the model plane `y = 0` the curve is
//! `c₊(s) = e^{λ(s)} (tanh ρ(s), sech ρ(s))`.
//!
//! With `A = 1 + 2aH`, `B = √(1 + 4aH + 4a²)` and `α = √|1 − H²|`:
//!
//! | regime      | U²(s)                          |
//! |-------------|--------------------------------|
//! | `H = 1`     | `(a² + (1+2a)² s²) / (1+2a)`    |
//! | `0 ≤ H < 1` | `(−A + B cosh 2αs) / (2α²)`     |
//! | `H > 1`     | `(A + B sin 2αs) / (2α²)`       |
//!
//! The non-unit regimes are evaluated in rearranged forms that avoid the
//! cancellation in `±A + B(…)` as `α → 0`; the tests compare them with the
//! direct expressions.

use std::f64::consts::{FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::quad::Quadrature;

/// Distance from `H = 1` below which the regime must be declared explicitly.
pub const REGIME_GUARD: f64 = 1e-9;

/// Which closed-form parametrization applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Regime {
    /// `H = 1`.
    EqualOne,
    /// `0 ≤ H < 1`.
    SubOne,
    /// `H > 1`.
    SuperOne,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::EqualOne => "h1",
            Regime::SubOne => "sub",
            Regime::SuperOne => "super",
        }
    }
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "h1" | "one" | "equal-one" | "equalone" => Ok(Regime::EqualOne),
            "sub" | "sub-one" | "subone" | "equidistant" => Ok(Regime::SubOne),
            "super" | "super-one" | "superone" | "spherical" => Ok(Regime::SuperOne),
            other => Err(invalid(format!("unknown regime '{other}' (expected h1, sub or super)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
struct FamilySpec {
    regime: Regime,
    #[serde(rename = "H")]
    h: f64,
    a: f64,
}

/// A rotational H-surface family member: regime, mean curvature `H` and
/// integration constant `a`, with the derived constants cached.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FamilySpec", into = "FamilySpec")]
pub struct FamilyParams {
    regime: Regime,
    h: f64,
    a: f64,
    big_a: f64,
    big_b: f64,
    alpha: f64,
}

impl TryFrom<FamilySpec> for FamilyParams {
    type Error = Error;

    fn try_from(spec: FamilySpec) -> Result<Self> {
        FamilyParams::new(spec.regime, spec.h, spec.a)
    }
}

impl From<FamilyParams> for FamilySpec {
    fn from(fp: FamilyParams) -> Self {
        FamilySpec { regime: fp.regime, h: fp.h, a: fp.a }
    }
}

/// Smallest admissible `a` for `H > 1` (where `B` vanishes); excluded itself.
pub fn super_one_a_min(h: f64) -> f64 {
    // (−H + √(H²−1)) / 2 written without cancellation.
    -0.5 / (h + (h * h - 1.0).sqrt())
}

impl FamilyParams {
    /// Validates `(H, a)` against the declared regime.
    pub fn new(regime: Regime, h: f64, a: f64) -> Result<Self> {
        if !h.is_finite() || !a.is_finite() {
            return Err(invalid("H and a must be finite"));
        }
        let h = match regime {
            Regime::EqualOne => {
                if (h - 1.0).abs() > REGIME_GUARD {
                    return Err(invalid(format!("regime h1 requires H = 1, got H = {h}")));
                }
                if !(a > -0.5) {
                    return Err(invalid(format!("regime h1 requires a > -1/2, got a = {a}")));
                }
                1.0
            }
            Regime::SubOne => {
                if !(0.0..1.0 - REGIME_GUARD).contains(&h) {
                    return Err(invalid(format!("regime sub requires 0 <= H < 1, got H = {h}")));
                }
                h
            }
            Regime::SuperOne => {
                if !(h > 1.0 + REGIME_GUARD) {
                    return Err(invalid(format!("regime super requires H > 1, got H = {h}")));
                }
                let a_min = super_one_a_min(h);
                if !(a > a_min) {
                    return Err(invalid(format!(
                        "regime super with H = {h} requires a > {a_min} (B = 0 at the bound), got a = {a}"
                    )));
                }
                h
            }
        };
        let big_a = 1.0 + 2.0 * a * h;
        let b_sq = (2.0 * a + h).powi(2) + (1.0 - h * h);
        let big_b = b_sq.max(0.0).sqrt();
        let alpha = (1.0 - h * h).abs().sqrt();
        if regime != Regime::EqualOne && !(big_b > 0.0) {
            return Err(invalid(format!("B = 0 for H = {h}, a = {a}")));
        }
        Ok(FamilyParams { regime, h, a, big_a, big_b, alpha })
    }

    /// Picks the regime from `H`; values within `1e-9` of 1 are refused
    /// because the three parametrizations differ structurally there.
    pub fn from_curvature(h: f64, a: f64) -> Result<Self> {
        if (h - 1.0).abs() <= REGIME_GUARD {
            return Err(invalid(format!("H = {h} is within {REGIME_GUARD} of 1; declare the regime explicitly")));
        }
        let regime = if h < 1.0 { Regime::SubOne } else { Regime::SuperOne };
        FamilyParams::new(regime, h, a)
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// Mean curvature `H`.
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// `A = 1 + 2aH`.
    pub fn big_a(&self) -> f64 {
        self.big_a
    }

    /// `B = √(1 + 4aH + 4a²)`.
    pub fn big_b(&self) -> f64 {
        self.big_b
    }

    /// `α = √|1 − H²|`.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `1 + 4aH`, the sign-carrying factor of the tangency discriminants.
    pub fn disc_factor(&self) -> f64 {
        1.0 + 4.0 * self.a * self.h
    }

    /// `2a² / (A + B)`, equal to `(B − A)/(2α²)` below `H = 1` and
    /// `(A − B)/(2α²)` above.
    fn offset(&self) -> f64 {
        2.0 * self.a * self.a / (self.big_a + self.big_b)
    }

    /// `U²(s) = sinh² ρ(s)`.
    pub fn u_squared(&self, s: f64) -> f64 {
        let (a, al, b) = (self.a, self.alpha, self.big_b);
        let v = match self.regime {
            Regime::EqualOne => {
                let k = 1.0 + 2.0 * a;
                (a * a + k * k * s * s) / k
            }
            Regime::SubOne => {
                let sh = (al * s).sinh() / al;
                self.offset() + b * sh * sh
            }
            Regime::SuperOne => {
                let sn = (al * s + FRAC_PI_4).sin() / al;
                self.offset() + b * sn * sn
            }
        };
        v.max(0.0)
    }

    /// `d(U²)/ds`.
    pub fn u_squared_rate(&self, s: f64) -> f64 {
        let (a, al, b) = (self.a, self.alpha, self.big_b);
        match self.regime {
            Regime::EqualOne => 2.0 * (1.0 + 2.0 * a) * s,
            Regime::SubOne => 2.0 * b * (al * s).sinh() / al * (al * s).cosh(),
            Regime::SuperOne => b * (2.0 * al * s).cos() / al,
        }
    }

    /// `d²(U²)/ds²`.
    fn u_squared_curvature(&self, s: f64) -> f64 {
        let (a, al, b) = (self.a, self.alpha, self.big_b);
        match self.regime {
            Regime::EqualOne => 2.0 * (1.0 + 2.0 * a),
            Regime::SubOne => 2.0 * b * (2.0 * al * s).cosh(),
            Regime::SuperOne => -2.0 * b * (2.0 * al * s).sin(),
        }
    }

    /// `U̇²(s)`; undefined on the axis.
    pub fn u_dot_squared(&self, s: f64) -> Result<f64> {
        let u2 = self.u_squared(s);
        if !(u2 > 0.0) {
            return Err(Error::DegenerateAxis { s });
        }
        let r = self.u_squared_rate(s);
        Ok(r * r / (4.0 * u2))
    }

    /// `λ̇(s)`, the signed integrand of `λ`. Removable `0/0` points on the
    /// axis take their limit, which is 0 in every regime.
    pub fn lambda_dot(&self, s: f64) -> f64 {
        let (a, h, al, b) = (self.a, self.h, self.alpha, self.big_b);
        match self.regime {
            Regime::EqualOne => {
                let k = 1.0 + 2.0 * a;
                let k2s2 = k * k * s * s;
                let p = -a * (1.0 + a) + k2s2;
                let den = p * p + k2s2 * k * k;
                if den == 0.0 {
                    return 0.0;
                }
                k.sqrt() * p * (a * a + k2s2).sqrt() / den
            }
            Regime::SubOne => {
                let sh = (al * s).sinh() / al;
                let ch = (al * s).cosh();
                let q = -4.0 * a * (1.0 + self.offset()) / (b + 1.0) + 2.0 * h * b * sh * sh;
                let den = q * q + 4.0 * b * b * sh * sh * ch * ch;
                if den == 0.0 {
                    return 0.0;
                }
                2.0 * q * self.u_squared(s).sqrt() / den
            }
            Regime::SuperOne => {
                let (sn, cs) = (2.0 * al * s).sin_cos();
                let p = 2.0 * a + h * (1.0 + b * sn);
                let den = p * p + al * al * b * b * cs * cs;
                if den == 0.0 {
                    return 0.0;
                }
                2.0 * al * al * p * self.u_squared(s).sqrt() / den
            }
        }
    }

    /// λ-free local quantities at `s`.
    pub fn jet(&self, s: f64) -> ProfileJet {
        let u2 = self.u_squared(s);
        let u = u2.sqrt();
        let cosh_rho = (1.0 + u2).sqrt();
        let u_dot = if u > 0.0 {
            self.u_squared_rate(s) / (2.0 * u)
        } else {
            // One-sided limit s → s⁺ on the axis.
            (0.5 * self.u_squared_curvature(s)).max(0.0).sqrt()
        };
        ProfileJet {
            s,
            u,
            rho: u.asinh(),
            tanh_rho: u / cosh_rho,
            sech_rho: 1.0 / cosh_rho,
            rho_dot: u_dot / cosh_rho,
            lambda_dot: self.lambda_dot(s),
        }
    }

    /// Period `π/α` of the `H > 1` profiles; `None` otherwise.
    pub fn period(&self) -> Option<f64> {
        match self.regime {
            Regime::SuperOne => Some(PI / self.alpha),
            _ => None,
        }
    }
}

/// The λ-independent parts of a profile point: everything except the
/// homothety factor `e^λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileJet {
    pub s: f64,
    pub u: f64,
    pub rho: f64,
    pub tanh_rho: f64,
    pub sech_rho: f64,
    pub rho_dot: f64,
    pub lambda_dot: f64,
}

impl ProfileJet {
    /// `tanh ρ λ̇ + sech²ρ ρ̇`: `dx/ds` divided by `e^λ`.
    pub fn horizontal_rate(&self) -> f64 {
        self.tanh_rho * self.lambda_dot + self.sech_rho * self.sech_rho * self.rho_dot
    }

    /// `sech ρ (λ̇ − tanh ρ ρ̇)`: `dz/ds` divided by `e^λ`.
    pub fn vertical_rate(&self) -> f64 {
        self.sech_rho * (self.lambda_dot - self.tanh_rho * self.rho_dot)
    }

    pub fn at_lambda(&self, lambda: f64) -> ProfileSample {
        let scale = lambda.exp();
        ProfileSample {
            s: self.s,
            rho: self.rho,
            lambda,
            x: scale * self.tanh_rho,
            z: scale * self.sech_rho,
            dx_ds: scale * self.horizontal_rate(),
            dz_ds: scale * self.vertical_rate(),
        }
    }
}

/// A point of the profile curve in the model plane, with its tangent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    pub s: f64,
    pub rho: f64,
    pub lambda: f64,
    pub x: f64,
    pub z: f64,
    pub dx_ds: f64,
    pub dz_ds: f64,
}

pub fn u_squared(fp: &FamilyParams, s: f64) -> f64 {
    fp.u_squared(s)
}

pub fn u_dot_squared(fp: &FamilyParams, s: f64) -> Result<f64> {
    fp.u_dot_squared(s)
}

pub fn lambda_dot(fp: &FamilyParams, s: f64) -> f64 {
    fp.lambda_dot(s)
}

/// `λ(s) = ∫₀ˢ λ̇` by adaptive quadrature with absolute tolerance `tol`.
pub fn lambda_of_s(fp: &FamilyParams, s: f64, tol: f64) -> Result<f64> {
    lambda_between(fp, 0.0, s, &Quadrature::new(tol)?)
}

/// `λ(s1) − λ(s0)`.
pub fn lambda_between(fp: &FamilyParams, s0: f64, s1: f64, q: &Quadrature) -> Result<f64> {
    q.integrate(|t| fp.lambda_dot(t), s0, s1)
}

pub fn profile_point(fp: &FamilyParams, s: f64, tol: f64) -> Result<ProfileSample> {
    let lambda = lambda_of_s(fp, s, tol)?;
    Ok(fp.jet(s).at_lambda(lambda))
}

/// `n` samples at uniform `s` over `[s_min, s_max]`; λ is accumulated one
/// segment at a time so the total error stays within `n·tol`.
pub fn profile_polyline(fp: &FamilyParams, s_min: f64, s_max: f64, n: usize, tol: f64) -> Result<Vec<ProfileSample>> {
    if !(s_min < s_max) {
        return Err(invalid(format!("need s_min < s_max, got [{s_min}, {s_max}]")));
    }
    if n < 2 {
        return Err(invalid(format!("polyline needs at least 2 samples, got {n}")));
    }
    let q = Quadrature::new(tol)?;
    let step = (s_max - s_min) / (n - 1) as f64;
    let mut lambda = lambda_between(fp, 0.0, s_min, &q)?;
    let mut prev = s_min;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let s = if i == n - 1 { s_max } else { s_min + step * i as f64 };
        if i > 0 {
            lambda += lambda_between(fp, prev, s, &q)?;
        }
        out.push(fp.jet(s).at_lambda(lambda));
        prev = s;
    }
    Ok(out)
}

/// `|ż²/4 − ((1−H²)z² + (1+2aH)z − a²)|` with `z = U²(s)`.
pub fn ode_residual(fp: &FamilyParams, s: f64) -> f64 {
    let z = fp.u_squared(s);
    let zd = fp.u_squared_rate(s);
    let (h, a) = (fp.h, fp.a);
    (zd * zd / 4.0 - ((1.0 - h * h) * z * z + (1.0 + 2.0 * a * h) * z - a * a)).abs()
}

pub fn period(fp: &FamilyParams) -> Option<f64> {
    fp.period()
}
