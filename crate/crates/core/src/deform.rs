//! Tapering, bending, rotation, and translation of point sets.
//!
//! The full pipeline is Trans(Rot(Bend(Taper(x)))): taper first, then bend,
//! then pose. Deformations act on the already-sampled cloud, so spacing
//! uniformity is only approximate afterwards (taper and bend are not
//! isometries). Bend and taper both leave z unchanged, bend also leaves y.

use nalgebra::{Point3, Rotation3, Vector3};

use crate::error::NormalError;
use crate::normals::transform_normals;
use crate::surface::SampledSurface;

/// Taper a single point: x and y are scaled by linear functions of z.
#[inline]
pub fn taper_point(p: &Point3<f64>, kx: f64, ky: f64, a3: f64) -> Point3<f64> {
    let fx = kx / a3 * p.z + 1.0;
    let fy = ky / a3 * p.z + 1.0;
    Point3::new(fx * p.x, fy * p.y, p.z)
}

/// Taper a point set in place.
pub fn taper_points(points: &mut [Point3<f64>], kx: f64, ky: f64, a3: f64) {
    for p in points.iter_mut() {
        *p = taper_point(p, kx, ky, a3);
    }
}

/// Bend a single point along the circle of radius `k`: x is displaced by
/// `k - sqrt(k^2 + z^2)`, y and z are untouched. The displacement is
/// applied as-is (the cloud is not re-centered afterwards), so bending
/// shifts the centroid toward negative x.
#[inline]
pub fn bend_point(p: &Point3<f64>, k: f64) -> Point3<f64> {
    Point3::new(p.x + (k - (k * k + p.z * p.z).sqrt()), p.y, p.z)
}

/// Bend a point set in place.
pub fn bend_points(points: &mut [Point3<f64>], k: f64) {
    for p in points.iter_mut() {
        *p = bend_point(p, k);
    }
}

/// Rotation from ZYZ Euler angles: `Rz(theta) * Ry(phi) * Rz(psi)`.
pub fn rotation_zyz(theta: f64, phi: f64, psi: f64) -> Rotation3<f64> {
    Rotation3::from_axis_angle(&Vector3::z_axis(), theta)
        * Rotation3::from_axis_angle(&Vector3::y_axis(), phi)
        * Rotation3::from_axis_angle(&Vector3::z_axis(), psi)
}

/// Rigid pose: rotation applied before translation.
pub fn pose_points(points: &mut [Point3<f64>], euler_zyz: (f64, f64, f64), position: Vector3<f64>) {
    let rot = rotation_zyz(euler_zyz.0, euler_zyz.1, euler_zyz.2);
    for p in points.iter_mut() {
        *p = rot * *p + position;
    }
}

/// Apply taper, bend, rotation, and translation — in exactly that order —
/// to a canonical-frame surface. Normals, when present, are transformed in
/// lockstep through the normal-transformation matrices and renormalized.
///
/// Point count and ordering are preserved. The only possible failure is a
/// degenerate normal transform; surfaces without normals never fail.
pub fn apply_pipeline(surface: &SampledSurface) -> Result<SampledSurface, NormalError> {
    let p = &surface.params;

    // Normals first: the taper transform needs the pre-taper coordinates.
    let normals = match &surface.normals {
        Some(_) => Some(transform_normals(surface)?),
        None => None,
    };

    let mut points = surface.points.clone();
    taper_points(&mut points, p.kx, p.ky, p.a3);
    if let Some(k) = p.bend_k {
        bend_points(&mut points, k);
    }
    pose_points(&mut points, p.euler_zyz, p.position);

    Ok(SampledSurface {
        points,
        normals,
        param_coords: surface.param_coords.clone(),
        params: p.clone(),
    })
}
