//! Parametric surface normals and their transformation under deformation.
//!
//! Undeformed normals come straight from the parametric forms. The
//! superellipsoid normal is evaluated through the dual-exponent form
//!
//! ```text
//! n(eta, omega) ∝ ( cos^(2-eps1)(eta) cos^(2-eps2)(omega) / a1,
//!                   cos^(2-eps1)(eta) sin^(2-eps2)(omega) / a2,
//!                   sin^(2-eps1)(eta) / a3 )
//! ```
//!
//! which is algebraically equal to the component-reciprocal form
//! `(cos^2 eta cos^2 omega / x, ..., sin^2 eta / z)` wherever both are
//! defined, but stays finite when a coordinate crosses zero. Signed powers
//! extend it to all octants.
//!
//! Deformed normals are obtained by multiplying with the transpose inverse
//! Jacobian of each deformation. Only the direction matters (the result is
//! renormalized), so the determinant factor is dropped.

use nalgebra::{Matrix3, Vector3};

use crate::error::NormalError;
use crate::numeric::{signed_pow, snapped_cos, snapped_sin};
use crate::params::{SuperquadricKind, SuperquadricParams};
use crate::surface::SampledSurface;

/// Magnitude below which a pre-normalization normal counts as degenerate.
pub const DEGENERATE_MAGNITUDE: f64 = 1e-300;

/// Clamp for the taper functions when they cross zero; keeps the transform
/// finite at full pinch.
pub const TAPER_CLAMP: f64 = 1e-8;

/// A 3x3 normal-transformation matrix (identity for identity deformations).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalTransform(pub Matrix3<f64>);

impl NormalTransform {
    pub fn identity() -> Self {
        NormalTransform(Matrix3::identity())
    }

    pub fn apply(&self, n: &Vector3<f64>) -> Vector3<f64> {
        self.0 * n
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }
}

/// Outward unit normal of a superellipsoid at parameter `(eta, omega)`.
pub fn se_normal(
    eta: f64,
    omega: f64,
    params: &SuperquadricParams,
) -> Result<Vector3<f64>, NormalError> {
    debug_assert_eq!(params.kind, SuperquadricKind::Superellipsoid);
    let ce = signed_pow(snapped_cos(eta), 2.0 - params.eps1);
    let se = signed_pow(snapped_sin(eta), 2.0 - params.eps1);
    let co = signed_pow(snapped_cos(omega), 2.0 - params.eps2);
    let so = signed_pow(snapped_sin(omega), 2.0 - params.eps2);
    let n = Vector3::new(ce * co / params.a1, ce * so / params.a2, se / params.a3);
    normalize(n, eta, omega)
}

/// Outward unit normal of a superparaboloid at parameter `(u, omega)`.
///
/// The apex (u = 0) is a parameter singularity for eps1 < 1; the normal
/// there is the continuity limit `(0, 0, -1)`, which also matches the limit
/// from the formula for eps1 >= 1.
pub fn sp_normal(
    u: f64,
    omega: f64,
    params: &SuperquadricParams,
) -> Result<Vector3<f64>, NormalError> {
    debug_assert_eq!(params.kind, SuperquadricKind::Superparaboloid);
    if u == 0.0 {
        return Ok(Vector3::new(0.0, 0.0, -1.0));
    }
    let co = signed_pow(snapped_cos(omega), 2.0 - params.eps2);
    let so = signed_pow(snapped_sin(omega), 2.0 - params.eps2);
    let nz = -params.eps1 / 2.0 * u.powf(2.0 - 2.0 / params.eps1) / params.a3;
    if !nz.is_finite() {
        // u so close to the apex that the z term overflows; take the limit
        return Ok(Vector3::new(0.0, 0.0, -1.0));
    }
    let n = Vector3::new(u * co / params.a1, u * so / params.a2, nz);
    normalize(n, u, omega)
}

fn normalize(n: Vector3<f64>, p0: f64, p1: f64) -> Result<Vector3<f64>, NormalError> {
    let magnitude = n.norm();
    if magnitude < DEGENERATE_MAGNITUDE {
        return Err(NormalError::DegenerateNormal { magnitude, p0, p1 });
    }
    Ok(n / magnitude)
}

/// Normal transform of the taper deformation, evaluated at the pre-taper
/// point `(x, y, z)`.
///
/// This is the transpose inverse of the taper Jacobian. The full transform
/// carries an extra scalar factor det J = f_x * f_y, which renormalization
/// cancels, so it is dropped here. `f_x` and `f_y` are clamped away from
/// zero so the transform stays finite at full pinch.
pub fn taper_normal_transform(
    x: f64,
    y: f64,
    z: f64,
    kx: f64,
    ky: f64,
    a3: f64,
) -> NormalTransform {
    let fx = clamp_taper(kx / a3 * z + 1.0);
    let fy = clamp_taper(ky / a3 * z + 1.0);
    let dfx = kx / a3;
    let dfy = ky / a3;
    NormalTransform(Matrix3::new(
        1.0 / fx,
        0.0,
        0.0,
        0.0,
        1.0 / fy,
        0.0,
        -dfx / fx * x,
        -dfy / fy * y,
        1.0,
    ))
}

fn clamp_taper(f: f64) -> f64 {
    if f.abs() >= TAPER_CLAMP {
        f
    } else if f < 0.0 {
        -TAPER_CLAMP
    } else {
        TAPER_CLAMP
    }
}

/// Normal transform of the bend deformation, evaluated at height `z`.
/// Converges to the identity as `k` grows.
pub fn bend_normal_transform(z: f64, k: f64) -> NormalTransform {
    NormalTransform(Matrix3::new(
        1.0,
        0.0,
        0.0,
        0.0,
        1.0,
        0.0,
        z / (k * k + z * z).sqrt(),
        0.0,
        1.0,
    ))
}

/// Fill `surface.normals` with canonical-frame unit normals evaluated from
/// the stored parameter coordinates.
pub fn fill_normals(surface: &mut SampledSurface) -> Result<(), NormalError> {
    let p = &surface.params;
    let mut normals = Vec::with_capacity(surface.param_coords.len());
    match p.kind {
        SuperquadricKind::Superellipsoid => {
            for &(eta, omega) in &surface.param_coords {
                normals.push(se_normal(eta, omega, p)?);
            }
        }
        SuperquadricKind::Superparaboloid => {
            for &(u, omega) in &surface.param_coords {
                normals.push(sp_normal(u, omega, p)?);
            }
        }
    }
    surface.normals = Some(normals);
    Ok(())
}

/// Push the canonical normals of `surface` through its taper, bend, and
/// rotation, renormalizing each result.
///
/// The surface must still be in the canonical frame: the taper transform is
/// evaluated at each point's pre-taper coordinates, the bend transform at
/// the (taper-invariant) z, and the pose rotation is applied last.
pub fn transform_normals(surface: &SampledSurface) -> Result<Vec<Vector3<f64>>, NormalError> {
    let p = &surface.params;
    let normals = surface
        .normals
        .as_ref()
        .expect("transform_normals requires canonical normals to be filled");

    let taper_active = p.kx != 0.0 || p.ky != 0.0;
    // identity deformation and orientation leave the normals bit-identical
    if !taper_active && p.bend_k.is_none() && p.euler_zyz == (0.0, 0.0, 0.0) {
        return Ok(normals.clone());
    }

    let rot = crate::deform::rotation_zyz(p.euler_zyz.0, p.euler_zyz.1, p.euler_zyz.2);

    let mut out = Vec::with_capacity(normals.len());
    for (pt, n0) in surface.points.iter().zip(normals) {
        let mut n = *n0;
        if taper_active {
            n = taper_normal_transform(pt.x, pt.y, pt.z, p.kx, p.ky, p.a3).apply(&n);
        }
        if let Some(k) = p.bend_k {
            n = bend_normal_transform(pt.z, k).apply(&n);
        }
        n = rot * n;
        let magnitude = n.norm();
        if magnitude < DEGENERATE_MAGNITUDE {
            return Err(NormalError::DegenerateNormal {
                magnitude,
                p0: pt.x,
                p1: pt.z,
            });
        }
        out.push(n / magnitude);
    }
    Ok(out)
}
