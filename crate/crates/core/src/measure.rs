//! Free-boundary area, enclosed volume and mean curvature of regions of
//! revolution about the vertical geodesic through the origin.
//!
//! Regions are described by their meridian section in the half-plane
//! `{x ≥ 0, z > 0}`. The volume element of the model is `dx dy dz / z³`, so
//! for a rotationally symmetric region
//!
//! ```text
//! V = ∬ 2π x / z³ dx dz = π ∮ x² / z³ dz
//! ```
//!
//! around the counterclockwise boundary. Caps (`dz = 0`) and the axis
//! (`x = 0`) drop out of the line integral.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::profile::{lambda_between, FamilyParams};
use crate::quad::{panel, Quadrature};

/// Relative endpoint mismatch tolerated between consecutive arcs.
pub const CLOSURE_TOL: f64 = 1e-7;

/// Maximum disagreement between the `h` and `h/2` curvature estimates.
pub const RICHARDSON_TOL: f64 = 1e-6;

/// One piece of a meridian contour.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Arc {
    /// `c₊(s)` for `s` from `s_from` to `s_to`, scaled so that its point at
    /// `s_from` has `λ = lambda_from` (the homothety is folded into λ).
    Profile { fp: FamilyParams, s_from: f64, s_to: f64, lambda_from: f64 },
    /// Horizontal segment on the horosphere `z = height`.
    Cap { height: f64, x_from: f64, x_to: f64 },
    /// Segment of the rotation axis.
    Axis { z_from: f64, z_to: f64 },
    /// `(R cos θ, h + R sin θ)` for `θ` from `theta_from` to `theta_to`.
    Circle { center_height: f64, radius: f64, theta_from: f64, theta_to: f64 },
}

impl Arc {
    fn endpoints(&self, q: &Quadrature) -> Result<((f64, f64), (f64, f64))> {
        Ok(match *self {
            Arc::Profile { fp, s_from, s_to, lambda_from } => {
                let a = fp.jet(s_from).at_lambda(lambda_from);
                let lambda_to = lambda_from + lambda_between(&fp, s_from, s_to, q)?;
                let b = fp.jet(s_to).at_lambda(lambda_to);
                ((a.x, a.z), (b.x, b.z))
            }
            Arc::Cap { height, x_from, x_to } => ((x_from, height), (x_to, height)),
            Arc::Axis { z_from, z_to } => ((0.0, z_from), (0.0, z_to)),
            Arc::Circle { center_height: h, radius: r, theta_from, theta_to } => {
                ((r * theta_from.cos(), h + r * theta_from.sin()), (r * theta_to.cos(), h + r * theta_to.sin()))
            }
        })
    }

    fn scaled(&self, k: f64) -> Arc {
        match *self {
            Arc::Profile { fp, s_from, s_to, lambda_from } => {
                Arc::Profile { fp, s_from, s_to, lambda_from: lambda_from + k.ln() }
            }
            Arc::Cap { height, x_from, x_to } => Arc::Cap { height: k * height, x_from: k * x_from, x_to: k * x_to },
            Arc::Axis { z_from, z_to } => Arc::Axis { z_from: k * z_from, z_to: k * z_to },
            Arc::Circle { center_height, radius, theta_from, theta_to } => {
                Arc::Circle { center_height: k * center_height, radius: k * radius, theta_from, theta_to }
            }
        }
    }

    /// `π ∫ x²/z³ dz` along the arc.
    fn volume_term(&self, q: &Quadrature) -> Result<f64> {
        match *self {
            Arc::Profile { fp, s_from, s_to, .. } => {
                // x²/z³ dz = sinh²ρ cosh ρ · (dz/ds)/e^λ ds, free of λ
                let v = q.integrate(
                    |s| {
                        let j = fp.jet(s);
                        j.u * j.u / j.sech_rho * j.vertical_rate()
                    },
                    s_from,
                    s_to,
                )?;
                Ok(PI * v)
            }
            Arc::Cap { .. } | Arc::Axis { .. } => Ok(0.0),
            Arc::Circle { center_height: h, radius: r, theta_from, theta_to } => {
                let v = q.integrate(
                    |t| {
                        let (x, z) = (r * t.cos(), h + r * t.sin());
                        x * x / (z * z * z) * r * t.cos()
                    },
                    theta_from,
                    theta_to,
                )?;
                Ok(PI * v)
            }
        }
    }
}

/// Hyperbolic area of the surface swept by one arc: `2π ∫ x |dX| / z²`.
///
/// Caps are horosphere pieces and have area `π |x_to² − x_from²| / c²`; the
/// axis sweeps nothing.
pub fn area_cartesian(arc: &Arc, tol: f64) -> Result<f64> {
    let q = Quadrature::new(tol)?;
    match *arc {
        Arc::Profile { fp, s_from, s_to, .. } => {
            // x|dX|/z² = sinh ρ cosh ρ |(dx, dz)/ds| / e^λ
            let v = q.integrate(
                |s| {
                    let j = fp.jet(s);
                    j.tanh_rho / (j.sech_rho * j.sech_rho) * j.horizontal_rate().hypot(j.vertical_rate())
                },
                s_from,
                s_to,
            )?;
            Ok(2.0 * PI * v.abs())
        }
        Arc::Cap { height, x_from, x_to } => Ok(PI * (x_to * x_to - x_from * x_from).abs() / (height * height)),
        Arc::Axis { .. } => Ok(0.0),
        Arc::Circle { center_height: h, radius: r, theta_from, theta_to } => {
            let v = q.integrate(
                |t| {
                    let z = h + r * t.sin();
                    r * t.cos() * r / (z * z)
                },
                theta_from,
                theta_to,
            )?;
            Ok(2.0 * PI * v.abs())
        }
    }
}

/// `2π ∫ U(s) ds`: area swept by the profile arc in the natural metric
/// `ds² + U² dt²`.
pub fn area_natural(fp: &FamilyParams, s_lo: f64, s_hi: f64, tol: f64) -> Result<f64> {
    if s_lo > s_hi {
        return Err(invalid(format!("need s_lo <= s_hi, got [{s_lo}, {s_hi}]")));
    }
    let q = Quadrature::new(tol)?;
    Ok(2.0 * PI * q.integrate(|s| fp.u_squared(s).max(0.0).sqrt(), s_lo, s_hi)?)
}

/// A closed meridian section, counterclockwise in the `(x, z)` half-plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeridianContour {
    pub arcs: Vec<Arc>,
}

impl MeridianContour {
    pub fn new(arcs: Vec<Arc>) -> Self {
        MeridianContour { arcs }
    }

    /// Region between two points of a profile curve, closed by the two
    /// horosphere caps through them and the axis. `lambda_from` fixes the
    /// scale at `s_lo`; the profile must rise from `s_lo` to `s_hi`.
    pub fn tube(fp: FamilyParams, s_lo: f64, s_hi: f64, lambda_from: f64, q: &Quadrature) -> Result<Self> {
        let lo = fp.jet(s_lo).at_lambda(lambda_from);
        let hi = fp.jet(s_hi).at_lambda(lambda_from + lambda_between(&fp, s_lo, s_hi, q)?);
        Ok(MeridianContour::new(vec![
            Arc::Profile { fp, s_from: s_lo, s_to: s_hi, lambda_from },
            Arc::Cap { height: hi.z, x_from: hi.x, x_to: 0.0 },
            Arc::Axis { z_from: hi.z, z_to: lo.z },
            Arc::Cap { height: lo.z, x_from: 0.0, x_to: lo.x },
        ]))
    }

    /// Upper half of the Euclidean sphere of radius `r` centred at `(0, c)`.
    pub fn lower_dome(c: f64, r: f64) -> Self {
        MeridianContour::new(vec![
            Arc::Circle { center_height: c, radius: r, theta_from: 0.0, theta_to: PI / 2.0 },
            Arc::Axis { z_from: c + r, z_to: c },
            Arc::Cap { height: c, x_from: 0.0, x_to: r },
        ])
    }

    /// Lower half of the Euclidean sphere of radius `r < c` centred at `(0, c)`.
    pub fn upper_dome(c: f64, r: f64) -> Self {
        MeridianContour::new(vec![
            Arc::Circle { center_height: c, radius: r, theta_from: -PI / 2.0, theta_to: 0.0 },
            Arc::Cap { height: c, x_from: r, x_to: 0.0 },
            Arc::Axis { z_from: c, z_to: c - r },
        ])
    }

    /// Whole Euclidean sphere of radius `r < h` centred at `(0, h)`.
    pub fn sphere(h: f64, r: f64) -> Self {
        MeridianContour::new(vec![
            Arc::Circle { center_height: h, radius: r, theta_from: -PI / 2.0, theta_to: PI / 2.0 },
            Arc::Axis { z_from: h + r, z_to: h - r },
        ])
    }

    /// Image under the homothety of factor `k`.
    pub fn scaled(&self, k: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(invalid(format!("homothety factor must be positive, got {k}")));
        }
        Ok(MeridianContour::new(self.arcs.iter().map(|a| a.scaled(k)).collect()))
    }

    /// Checks that consecutive arcs (cyclically) share endpoints.
    pub fn check_closed(&self, q: &Quadrature) -> Result<()> {
        if self.arcs.is_empty() {
            return Err(invalid("empty contour"));
        }
        let ends = self.arcs.iter().map(|a| a.endpoints(q)).collect::<Result<Vec<_>>>()?;
        let size = ends.iter().flat_map(|(p, r)| [p.0.abs(), p.1.abs(), r.0.abs(), r.1.abs()]).fold(0.0, f64::max);
        for i in 0..ends.len() {
            let end = ends[i].1;
            let next = ends[(i + 1) % ends.len()].0;
            let gap = (end.0 - next.0).hypot(end.1 - next.1);
            if gap > CLOSURE_TOL * size.max(1e-300) {
                return Err(Error::OpenContour { arc: i, gap });
            }
        }
        Ok(())
    }

    /// Area of the part of the boundary off the horospheres.
    pub fn free_area(&self, tol: f64) -> Result<f64> {
        let mut total = 0.0;
        for arc in &self.arcs {
            if matches!(arc, Arc::Profile { .. } | Arc::Circle { .. }) {
                total += area_cartesian(arc, tol)?;
            }
        }
        Ok(total)
    }

    /// Area of the horosphere caps.
    pub fn cap_area(&self) -> f64 {
        self.arcs
            .iter()
            .map(|arc| match *arc {
                Arc::Cap { height, x_from, x_to } => PI * (x_to * x_to - x_from * x_from).abs() / (height * height),
                _ => 0.0,
            })
            .sum()
    }
}

/// Enclosed hyperbolic volume.
pub fn volume_contour(contour: &MeridianContour, tol: f64) -> Result<f64> {
    let q = Quadrature::new(tol)?;
    contour.check_closed(&q)?;
    let mut v = 0.0;
    for arc in &contour.arcs {
        v += arc.volume_term(&q)?;
    }
    if v < -tol {
        return Err(Error::Orientation { volume: v });
    }
    Ok(v.max(0.0))
}

/// A meridian whose surface of revolution has constant mean curvature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeridianCurve {
    Profile(FamilyParams),
    /// Euclidean circle of radius `radius` centred on the axis at height
    /// `center_height`, parametrized by angle.
    Circle {
        center_height: f64,
        radius: f64,
    },
}

/// Hyperbolic mean curvature of a surface of revolution from its meridian
/// by central differences with step `h`, oriented so that the result is
/// non-negative.
///
/// The Euclidean mean curvature `H_E` with respect to a unit normal `N` is
/// converted via the conformal factor `1/z`: `H = z H_E + N_z`. The estimate
/// at `h/2` is returned after checking it against the one at `h`.
pub fn mean_curvature_fd(curve: &MeridianCurve, t: f64, h: f64) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(invalid(format!("step must be positive, got {h}")));
    }
    match *curve {
        MeridianCurve::Profile(fp) => {
            if fp.u_squared(t).sqrt() < 10.0 * h {
                return Err(invalid(format!("sample s = {t} is within 10h of the axis")));
            }
        }
        MeridianCurve::Circle { center_height, radius } => {
            if !(radius > 0.0 && center_height.is_finite()) {
                return Err(invalid("circle needs a positive radius"));
            }
            if t.cos() < 10.0 * h || center_height + radius * t.sin() <= 0.0 {
                return Err(invalid(format!("sample θ = {t} is within 10h of the axis or outside z > 0")));
            }
        }
    }
    let coarse = curvature_at_step(curve, t, h);
    let fine = curvature_at_step(curve, t, 0.5 * h);
    let gap = (coarse - fine).abs();
    if gap > RICHARDSON_TOL * fine.abs().max(1.0) {
        return Err(Error::StepTooLarge { h, gap });
    }
    Ok(fine)
}

fn meridian_point(curve: &MeridianCurve, t0: f64, t: f64) -> (f64, f64) {
    match *curve {
        MeridianCurve::Profile(fp) => {
            // λ relative to t0; the curvature is homothety invariant
            let lambda = panel(|s| fp.lambda_dot(s), t0, t);
            let j = fp.jet(t);
            let k = lambda.exp();
            (k * j.tanh_rho, k * j.sech_rho)
        }
        MeridianCurve::Circle { center_height, radius } => (radius * t.cos(), center_height + radius * t.sin()),
    }
}

fn curvature_at_step(curve: &MeridianCurve, t: f64, h: f64) -> f64 {
    let (xm, zm) = meridian_point(curve, t, t - h);
    let (x0, z0) = meridian_point(curve, t, t);
    let (xp, zp) = meridian_point(curve, t, t + h);
    let (x1, z1) = ((xp - xm) / (2.0 * h), (zp - zm) / (2.0 * h));
    let (x2, z2) = ((xp - 2.0 * x0 + xm) / (h * h), (zp - 2.0 * z0 + zm) / (h * h));
    let speed = x1.hypot(z1);
    // left normal of the meridian in the (x, z) plane
    let (nx, nz) = (-z1 / speed, x1 / speed);
    let k_meridian = (x1 * z2 - z1 * x2) / speed.powi(3);
    let k_parallel = -nx / x0;
    let h_euclid = 0.5 * (k_meridian + k_parallel);
    (z0 * h_euclid + nz).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Regime;
    use crate::tangency::{admissible_tangencies, Window};

    fn fam(regime: Regime, h: f64, a: f64) -> FamilyParams {
        FamilyParams::new(regime, h, a).unwrap()
    }

    fn sphere_by_radius(rho: f64) -> MeridianContour {
        MeridianContour::sphere(rho.cosh(), rho.sinh())
    }

    #[test]
    fn geodesic_sphere_measures() {
        for rho in [0.1, 0.7, 1.5] {
            let c = sphere_by_radius(rho);
            let area = c.free_area(1e-12).unwrap();
            assert!((area - 4.0 * PI * rho.sinh().powi(2)).abs() < 1e-9 * area.max(1.0));
            let vol = volume_contour(&c, 1e-12).unwrap();
            let exact = PI * ((2.0 * rho).sinh() - 2.0 * rho);
            assert!((vol - exact).abs() < 1e-9 * exact.max(1.0), "{vol} vs {exact}");
        }
    }

    #[test]
    fn dome_areas_match_closed_form() {
        let (c, r) = (1.0, 0.6);
        let lower = MeridianContour::lower_dome(c, r).free_area(1e-12).unwrap();
        assert!((lower - 2.0 * PI * r * r / (c * (c + r))).abs() < 1e-10);
        let upper = MeridianContour::upper_dome(2.0, r).free_area(1e-12).unwrap();
        assert!((upper - 2.0 * PI * r * r / (2.0 * (2.0 - r))).abs() < 1e-10);
    }

    #[test]
    fn caps_are_reported_separately() {
        let c = MeridianContour::lower_dome(2.0, 1.0);
        assert!((c.cap_area() - PI / 4.0).abs() < 1e-15);
        let cap = Arc::Cap { height: 2.0, x_from: 0.0, x_to: 1.0 };
        assert!((area_cartesian(&cap, 1e-10).unwrap() - PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn zero_length_arcs() {
        let fp = fam(Regime::EqualOne, 1.0, -0.2);
        assert_eq!(area_natural(&fp, 0.3, 0.3, 1e-10).unwrap(), 0.0);
        let arc = Arc::Profile { fp, s_from: -0.4, s_to: -0.4, lambda_from: 0.0 };
        assert_eq!(area_cartesian(&arc, 1e-10).unwrap(), 0.0);
        let flat =
            MeridianContour::new(vec![Arc::Axis { z_from: 1.0, z_to: 2.0 }, Arc::Axis { z_from: 2.0, z_to: 1.0 }]);
        assert_eq!(volume_contour(&flat, 1e-10).unwrap(), 0.0);
    }

    #[test]
    fn natural_and_cartesian_areas_agree() {
        let fp = fam(Regime::EqualOne, 1.0, -0.2);
        let t = admissible_tangencies(&fp, Window::all()).unwrap();
        let (lo, hi) = (t[0].s, t[1].s);
        let nat = area_natural(&fp, lo, hi, 1e-12).unwrap();
        let cart = area_cartesian(&Arc::Profile { fp, s_from: lo, s_to: hi, lambda_from: 0.0 }, 1e-12).unwrap();
        assert!((nat - cart).abs() < 1e-6 * nat);
    }

    #[test]
    fn onduloid_period_area_is_shift_invariant() {
        let fp = fam(Regime::SuperOne, 3.0, -0.05);
        let p = fp.period().unwrap();
        let a0 = area_natural(&fp, 0.0, p, 1e-12).unwrap();
        let a1 = area_natural(&fp, 0.37, 0.37 + p, 1e-12).unwrap();
        assert!((a0 - a1).abs() < 1e-9 * a0);
    }

    #[test]
    fn open_and_clockwise_contours_are_rejected() {
        let open = MeridianContour::new(vec![
            Arc::Circle { center_height: 2.0, radius: 1.0, theta_from: 0.0, theta_to: PI / 2.0 },
            Arc::Axis { z_from: 3.0, z_to: 2.0 },
        ]);
        assert!(matches!(volume_contour(&open, 1e-10), Err(Error::OpenContour { .. })));
        let cw = MeridianContour::new(vec![
            Arc::Cap { height: 2.0, x_from: 1.0, x_to: 0.0 },
            Arc::Axis { z_from: 2.0, z_to: 3.0 },
            Arc::Circle { center_height: 2.0, radius: 1.0, theta_from: PI / 2.0, theta_to: 0.0 },
        ]);
        assert!(matches!(volume_contour(&cw, 1e-10), Err(Error::Orientation { .. })));
    }

    #[test]
    fn tube_contour_is_closed_and_scales() {
        let fp = fam(Regime::EqualOne, 1.0, -0.2);
        let t = admissible_tangencies(&fp, Window::all()).unwrap();
        let q = Quadrature::default();
        let lam = crate::profile::lambda_of_s(&fp, t[0].s, 1e-12).unwrap();
        let c = MeridianContour::tube(fp, t[0].s, t[1].s, lam, &q).unwrap();
        let v = volume_contour(&c, 1e-11).unwrap();
        assert!(v > 0.0);
        let v3 = volume_contour(&c.scaled(3.0).unwrap(), 1e-11).unwrap();
        assert!((v - v3).abs() < 1e-8 * v);
        let a3 = c.scaled(3.0).unwrap().free_area(1e-11).unwrap();
        assert!((c.free_area(1e-11).unwrap() - a3).abs() < 1e-8 * a3);
    }

    #[test]
    fn curvature_of_profiles() {
        let fp = fam(Regime::SubOne, 0.5, -0.25);
        let h = mean_curvature_fd(&MeridianCurve::Profile(fp), 0.4, 1e-4).unwrap();
        assert!((h - 0.5).abs() < 1e-5, "{h}");
        for (regime, hh, a, s) in [(Regime::EqualOne, 1.0, -0.2, -0.5), (Regime::SuperOne, 3.0, -0.05, 0.2)] {
            let v = mean_curvature_fd(&MeridianCurve::Profile(fam(regime, hh, a)), s, 1e-4).unwrap();
            assert!((v - hh).abs() < 1e-5, "{v} vs {hh}");
        }
    }

    #[test]
    fn curvature_of_domes() {
        // H = c / R for a Euclidean sphere of radius R centred at height c
        for (c, r) in [(1.0, 0.5), (1.0, 1.0), (1.0, 1.8)] {
            let v = mean_curvature_fd(&MeridianCurve::Circle { center_height: c, radius: r }, 0.3, 1e-4).unwrap();
            assert!((v - c / r).abs() < 1e-5, "{v} vs {}", c / r);
        }
        let rho: f64 = 0.8;
        let v = mean_curvature_fd(&MeridianCurve::Circle { center_height: rho.cosh(), radius: rho.sinh() }, -0.4, 1e-4)
            .unwrap();
        assert!((v - 1.0 / rho.tanh()).abs() < 1e-5);
    }

    #[test]
    fn curvature_rejects_axis_samples_and_large_steps() {
        let c = MeridianCurve::Circle { center_height: 1.0, radius: 0.5 };
        assert!(mean_curvature_fd(&c, PI / 2.0, 1e-4).is_err());
        assert!(matches!(mean_curvature_fd(&c, 0.0, 0.05), Err(Error::StepTooLarge { .. })));
    }
}
