//! The upper half-space model of hyperbolic 3-space.
//!
//! Points are `(x, y, z)` with `z > 0` and metric `(dx² + dy² + dz²) / z²`.
//! Horizontal planes `z = c` are horospheres; Euclidean homotheties centred
//! at the origin and inversion in the unit hemisphere are isometries.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A point of the upper half-space model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfSpacePoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl HalfSpacePoint {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(z > 0.0) || !x.is_finite() || !y.is_finite() || !z.is_finite() {
            return Err(invalid(format!("half-space point needs finite coordinates and z > 0, got ({x}, {y}, {z})")));
        }
        Ok(HalfSpacePoint { x, y, z })
    }

    fn euclidean_norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }
}

/// Cylindrical coordinates about the vertical geodesic through the origin.
///
/// `rho` is the hyperbolic distance to the axis, `z` the signed arc length
/// along it measured from `(0, 0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylCoords {
    pub rho: f64,
    pub theta: f64,
    pub z: f64,
}

impl CylCoords {
    pub fn new(rho: f64, theta: f64, z: f64) -> Result<Self> {
        if !(rho >= 0.0) || !theta.is_finite() || !z.is_finite() || !rho.is_finite() {
            return Err(invalid(format!("cylindrical coordinates need rho >= 0, got rho = {rho}")));
        }
        Ok(CylCoords { rho, theta, z })
    }
}

/// The closed region between the horospheres `z = c1` and `z = c2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlabSpec {
    pub c1: f64,
    pub c2: f64,
}

impl SlabSpec {
    pub fn new(c1: f64, c2: f64) -> Result<Self> {
        if !(c1 > 0.0 && c2 > c1 && c2.is_finite()) {
            return Err(invalid(format!("slab needs 0 < c1 < c2, got c1 = {c1}, c2 = {c2}")));
        }
        Ok(SlabSpec { c1, c2 })
    }

    /// Height ratio `c2 / c1`, the only homothety invariant of a slab.
    pub fn ratio(&self) -> f64 {
        self.c2 / self.c1
    }

    /// Hyperbolic distance between the two horospheres, `ln(c2 / c1)`.
    pub fn width(&self) -> f64 {
        self.ratio().ln()
    }

    pub fn scaled(&self, k: f64) -> Result<Self> {
        if !(k > 0.0) {
            return Err(invalid(format!("slab scale must be positive, got {k}")));
        }
        SlabSpec::new(k * self.c1, k * self.c2)
    }
}

/// `e^z (tanh ρ cos θ, tanh ρ sin θ, sech ρ)`.
pub fn cyl_to_cartesian(c: CylCoords) -> HalfSpacePoint {
    let scale = c.z.exp();
    let t = c.rho.tanh();
    HalfSpacePoint { x: scale * t * c.theta.cos(), y: scale * t * c.theta.sin(), z: scale / c.rho.cosh() }
}

/// Euclidean homothety of factor `r` centred at the origin.
pub fn apply_homothety(p: HalfSpacePoint, r: f64) -> Result<HalfSpacePoint> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(invalid(format!("homothety factor must be positive, got {r}")));
    }
    Ok(HalfSpacePoint { x: r * p.x, y: r * p.y, z: r * p.z })
}

/// Horizontal Euclidean translation, an isometry of the model.
pub fn translate_horizontal(p: HalfSpacePoint, dx: f64, dy: f64) -> HalfSpacePoint {
    HalfSpacePoint { x: p.x + dx, y: p.y + dy, z: p.z }
}

/// Hyperbolic distance `arccosh(1 + |p − q|² / (2 z_p z_q))`.
pub fn hyperbolic_distance(p: HalfSpacePoint, q: HalfSpacePoint) -> f64 {
    let dx = p.x - q.x;
    let dy = p.y - q.y;
    let dz = p.z - q.z;
    let d2 = dx * dx + dy * dy + dz * dz;
    if d2 == 0.0 {
        return 0.0;
    }
    // arccosh(1 + u) = ln(1 + u + sqrt(u (2 + u))) keeps precision for small u.
    let u = (d2 / (2.0 * p.z * q.z)).max(0.0);
    (u + (u * (2.0 + u)).sqrt()).ln_1p()
}

/// Euclidean inversion `p / |p|²`; fixes the unit hemisphere pointwise.
pub fn invert_through_unit_hemisphere(p: HalfSpacePoint) -> HalfSpacePoint {
    let n2 = p.euclidean_norm_sq();
    HalfSpacePoint { x: p.x / n2, y: p.y / n2, z: p.z / n2 }
}
