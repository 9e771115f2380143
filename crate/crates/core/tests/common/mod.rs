//! Independent numeric oracles for the integration tests: dense Simpson
//! integration of curve speeds (with a power substitution where the speed
//! is singular at an endpoint) and central-difference surface normals.
//!
//! Everything here is computed from the raw parametric formulas, separate
//! from the library's evaluation path.

#![allow(dead_code)]

use nalgebra::{Matrix3, Point3, Vector3};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

/// Signed power for the oracle's own parametric evaluations.
pub fn spow(v: f64, e: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v.signum() * v.abs().powf(e)
    }
}

/// Speed |x'(theta)| of the superellipse (a cos^eps, b sin^eps).
pub fn se_speed(theta: f64, a: f64, b: f64, eps: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    eps * (a * a * c.abs().powf(2.0 * eps - 2.0) * s * s
        + b * b * s.abs().powf(2.0 * eps - 2.0) * c * c)
        .sqrt()
}

/// Speed |x'(u)| of the superparabola (u, a3 (u^(2/eps1) - 1)).
pub fn sp_speed(u: f64, a3: f64, eps1: f64) -> f64 {
    (1.0 + 4.0 * a3 * a3 / (eps1 * eps1) * u.powf(4.0 / eps1 - 2.0)).sqrt()
}

fn simpson<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, panels: usize) -> f64 {
    let h = (hi - lo) / panels as f64;
    let mut acc = f(lo) + f(hi);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(lo + i as f64 * h);
    }
    acc * h / 3.0
}

fn integrate<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> f64 {
    if hi <= lo {
        return 0.0;
    }
    let mut panels = 16;
    let mut prev = simpson(f, lo, hi, panels);
    loop {
        panels *= 2;
        let cur = simpson(f, lo, hi, panels);
        if (cur - prev).abs() <= 1e-12 + 1e-9 * cur.abs() || panels >= 1 << 16 {
            return cur;
        }
        prev = cur;
    }
}

/// Arc length of the superellipse between two parameter values in [0, pi/2].
///
/// For eps < 1 the speed diverges like theta^(eps-1) at 0 (and mirrored at
/// pi/2); the substitution t = theta^eps makes the integrand bounded there.
pub fn se_arc_length(t0: f64, t1: f64, a: f64, b: f64, eps: f64) -> f64 {
    assert!((0.0..=FRAC_PI_2 + 1e-15).contains(&t0) && t0 <= t1 && t1 <= FRAC_PI_2 + 1e-15);
    if eps >= 1.0 {
        return integrate(&|t| se_speed(t, a, b, eps), t0, t1);
    }
    if t0 == 0.0 && t1 >= FRAC_PI_2 - 1e-15 {
        return se_arc_length(0.0, FRAC_PI_4, a, b, eps)
            + se_arc_length(FRAC_PI_4, FRAC_PI_2, a, b, eps);
    }
    if t0 == 0.0 {
        let g = |t: f64| {
            if t == 0.0 {
                return b;
            }
            let theta = t.powf(1.0 / eps);
            se_speed(theta, a, b, eps) * t.powf(1.0 / eps - 1.0) / eps
        };
        return integrate(&g, 0.0, t1.powf(eps));
    }
    if t1 >= FRAC_PI_2 - 1e-15 {
        // mirror through pi/4: swapping a and b reverses the curve
        return se_arc_length(0.0, FRAC_PI_2 - t0, b, a, eps);
    }
    integrate(&|t| se_speed(t, a, b, eps), t0, t1)
}

/// Arc length of the superparabola between two parameter values in [0, 1].
pub fn sp_arc_length(u0: f64, u1: f64, a3: f64, eps1: f64) -> f64 {
    integrate(&|u| sp_speed(u, a3, eps1), u0, u1)
}

/// Invert the arc length: the step from `t` that covers arc `target`.
pub fn invert_se_arc(t: f64, target: f64, a: f64, b: f64, eps: f64) -> f64 {
    let mut lo = 0.0;
    let mut hi = FRAC_PI_2 - t;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if se_arc_length(t, t + mid, a, b, eps) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Invert the superparabola arc length from `u`.
pub fn invert_sp_arc(u: f64, target: f64, a3: f64, eps1: f64) -> f64 {
    let mut lo = 0.0;
    let mut hi = 1.0 - u;
    if sp_arc_length(u, 1.0, a3, eps1) < target {
        hi = 2.0; // allow stepping past 1 when inverting near the end
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if sp_arc_length(u, u + mid, a3, eps1) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Superellipsoid surface point (raw parametric form).
pub fn se_point(eta: f64, omega: f64, a: [f64; 3], eps: [f64; 2]) -> Vector3<f64> {
    Vector3::new(
        a[0] * spow(eta.cos(), eps[0]) * spow(omega.cos(), eps[1]),
        a[1] * spow(eta.cos(), eps[0]) * spow(omega.sin(), eps[1]),
        a[2] * spow(eta.sin(), eps[0]),
    )
}

/// Superparaboloid surface point (raw parametric form).
pub fn sp_point(u: f64, omega: f64, a: [f64; 3], eps: [f64; 2]) -> Vector3<f64> {
    Vector3::new(
        a[0] * u * spow(omega.cos(), eps[1]),
        a[1] * u * spow(omega.sin(), eps[1]),
        a[2] * (u.powf(2.0 / eps[0]) - 1.0),
    )
}

/// Outward normal by central differences: normalize(f_t x f_s) with step h.
///
/// For the superellipsoid (s, t) = (eta, omega) and for the superparaboloid
/// (s, t) = (u, omega); in both cases f_t x f_s points outward.
pub fn fd_normal<F: Fn(f64, f64) -> Vector3<f64>>(f: &F, s: f64, t: f64, h: f64) -> Vector3<f64> {
    let fs = (f(s + h, t) - f(s - h, t)) / (2.0 * h);
    let ft = (f(s, t + h) - f(s, t - h)) / (2.0 * h);
    ft.cross(&fs).normalize()
}

/// Deformation and pose parameters for the composed-map oracle.
#[derive(Debug, Clone, Copy)]
pub struct OracleDeform {
    pub kx: f64,
    pub ky: f64,
    pub a3: f64,
    pub bend_k: Option<f64>,
    pub euler: (f64, f64, f64),
    pub translation: Vector3<f64>,
}

impl OracleDeform {
    pub fn apply(&self, p: Vector3<f64>) -> Vector3<f64> {
        let fx = self.kx / self.a3 * p.z + 1.0;
        let fy = self.ky / self.a3 * p.z + 1.0;
        let mut q = Vector3::new(fx * p.x, fy * p.y, p.z);
        if let Some(k) = self.bend_k {
            q.x += k - (k * k + q.z * q.z).sqrt();
        }
        zyz_matrix(self.euler.0, self.euler.1, self.euler.2) * q + self.translation
    }
}

/// ZYZ rotation matrix built entry by entry.
pub fn zyz_matrix(theta: f64, phi: f64, psi: f64) -> Matrix3<f64> {
    let rz = |t: f64| Matrix3::new(t.cos(), -t.sin(), 0.0, t.sin(), t.cos(), 0.0, 0.0, 0.0, 1.0);
    let ry = |t: f64| Matrix3::new(t.cos(), 0.0, t.sin(), 0.0, 1.0, 0.0, -t.sin(), 0.0, t.cos());
    rz(theta) * ry(phi) * rz(psi)
}

pub fn cosine(a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    a.dot(b) / (a.norm() * b.norm())
}

pub fn to_vec(p: &Point3<f64>) -> Vector3<f64> {
    p.coords
}
