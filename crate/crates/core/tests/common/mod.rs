//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls the library's quadrature or root finders: integrals
//! use composite Gauss–Legendre rules built from scratch, roots use plain
//! sign scans.

#![allow(dead_code)]

use horoslab::FamilyParams;
use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

pub fn gl_integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, panels: usize, order: usize) -> f64 {
    let (x, w) = gauss_legendre(order);
    let h = (hi - lo) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let c = lo + h * (p as f64 + 0.5);
        for (xi, wi) in x.iter().zip(&w) {
            total += wi * f(c + 0.5 * h * xi);
        }
    }
    0.5 * h * total
}

/// λ(s1) − λ(s0).
pub fn lambda_oracle(fp: &FamilyParams, s0: f64, s1: f64) -> f64 {
    gl_integrate(|s| fp.lambda_dot(s), s0, s1, 64, 16)
}

/// Model point of c₊(s) normalized so λ(s_ref) = 0.
pub fn point_oracle(fp: &FamilyParams, s_ref: f64, s: f64) -> (f64, f64) {
    let k = lambda_oracle(fp, s_ref, s).exp();
    let u2 = fp.u_squared(s);
    let c = (1.0 + u2).sqrt();
    (k * u2.sqrt() / c, k / c)
}

/// 2π Σ x_mid |Δ| / z_mid² over a polyline with `n` segments.
pub fn polyline_area(points: &[(f64, f64)]) -> f64 {
    let mut total = 0.0;
    for w in points.windows(2) {
        let ((x0, z0), (x1, z1)) = (w[0], w[1]);
        let (xm, zm) = (0.5 * (x0 + x1), 0.5 * (z0 + z1));
        total += xm * (x1 - x0).hypot(z1 - z0) / (zm * zm);
    }
    2.0 * PI * total
}

/// Profile polyline between `s_lo` and `s_hi`, λ accumulated panel by panel.
pub fn profile_polyline_oracle(fp: &FamilyParams, s_lo: f64, s_hi: f64, n: usize) -> Vec<(f64, f64)> {
    let h = (s_hi - s_lo) / n as f64;
    let mut lambda = 0.0;
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let s = s_lo + h * i as f64;
        if i > 0 {
            lambda += gl_integrate(|t| fp.lambda_dot(t), s - h, s, 1, 8);
        }
        let u2 = fp.u_squared(s);
        let c = (1.0 + u2).sqrt();
        let k = lambda.exp();
        out.push((k * u2.sqrt() / c, k / c));
    }
    out
}

/// Volume of the region under a profile arc on which z rises monotonically,
/// as ∫∫ 2π x / z³ dx dz over {z_lo ≤ z ≤ z_hi, 0 ≤ x ≤ X(z)}.
pub fn tube_volume_oracle(fp: &FamilyParams, s_lo: f64, s_hi: f64) -> f64 {
    let (_, z_lo) = point_oracle(fp, s_lo, s_lo);
    let (_, z_hi) = point_oracle(fp, s_lo, s_hi);
    let x_of_z = |z: f64| {
        let (mut a, mut b) = (s_lo, s_hi);
        for _ in 0..60 {
            let m = 0.5 * (a + b);
            if point_oracle(fp, s_lo, m).1 < z {
                a = m;
            } else {
                b = m;
            }
        }
        point_oracle(fp, s_lo, 0.5 * (a + b)).0
    };
    gl_integrate(
        |z| {
            let x_max = x_of_z(z);
            gl_integrate(|x| 2.0 * PI * x / (z * z * z), 0.0, x_max, 1, 4)
        },
        z_lo,
        z_hi,
        8,
        12,
    )
}

/// Volume of the solid swept by the part of the disc of radius `r` centred
/// at `(0, h)` with `z` between `h − r cos φ_lo` and `h − r cos φ_hi`,
/// `0 ≤ φ ≤ π`, computed as a double integral with `z = h − r cos φ`.
pub fn disc_volume_oracle(h: f64, r: f64, phi_lo: f64, phi_hi: f64) -> f64 {
    gl_integrate(
        |phi| {
            let z = h - r * phi.cos();
            let x_max = r * phi.sin();
            r * phi.sin() * gl_integrate(|x| 2.0 * PI * x / (z * z * z), 0.0, x_max, 1, 4)
        },
        phi_lo,
        phi_hi,
        16,
        16,
    )
}

/// Zeros of dx/ds in `[lo, hi]` located by scanning `n` steps and bisecting.
pub fn tangency_scan(fp: &FamilyParams, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let f = |s: f64| fp.jet(s).horizontal_rate();
    let step = (hi - lo) / n as f64;
    let mut out = Vec::new();
    let mut prev = (lo, f(lo));
    for i in 1..=n {
        let s = lo + step * i as f64;
        let v = f(s);
        if prev.1 == 0.0 {
            out.push(prev.0);
        } else if (prev.1 < 0.0) != (v < 0.0) && v != 0.0 {
            let (mut a, mut b, fa) = (prev.0, s, prev.1);
            for _ in 0..80 {
                let m = 0.5 * (a + b);
                if (f(m) < 0.0) == (fa < 0.0) {
                    a = m;
                } else {
                    b = m;
                }
            }
            out.push(0.5 * (a + b));
        }
        prev = (s, v);
    }
    out
}
