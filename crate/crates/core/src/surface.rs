//! Assembly of full 3D point sets from the 2D samplers via the spherical
//! product, plus the naive uniform-parameter baseline.
//!
//! Only the first octant of parameters is sampled; the remaining octants are
//! filled by sign mirroring. Mirrored copies of seam points (a parameter at
//! an interval endpoint) would coincide, so a point whose coordinate is an
//! exact zero is emitted only for the positive sign of that coordinate, and
//! rows that collapse to a single point (the poles, the apex) keep one copy.
//!
//! The omega angles are spaced for the equatorial cross-section, so the
//! physical omega spacing shrinks toward the poles where the cross-section
//! contracts. That is inherent to the grid-product construction; the result
//! is close to uniform, not exactly uniform.

use std::f64::consts::PI;

use nalgebra::{Point3, Vector3};

use crate::error::SampleError;
use crate::numeric::{signed_pow, snapped_cos, snapped_sin};
use crate::params::{SamplingConfig, SuperquadricKind, SuperquadricParams, Validated};
use crate::sampler2d::{sample_superellipse_angles, sample_superparabola_params};

/// A sampled surface: points, optional unit normals, and the parameter pair
/// that produced each point.
///
/// Points are emitted in the canonical frame by the samplers; apply the
/// deformation pipeline to obtain the posed, deformed cloud. `param_coords`
/// keeps signed parameter values after mirroring so normals can be evaluated
/// parametrically per point.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSurface {
    pub points: Vec<Point3<f64>>,
    pub normals: Option<Vec<Vector3<f64>>>,
    /// `(eta, omega)` for superellipsoids, `(u, omega)` for superparaboloids.
    pub param_coords: Vec<(f64, f64)>,
    pub params: SuperquadricParams,
}

impl SampledSurface {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Sign octants in emission order (octant-major, then eta-major).
const OCTANTS: [(f64, f64, f64); 8] = [
    (1.0, 1.0, 1.0),
    (1.0, 1.0, -1.0),
    (1.0, -1.0, 1.0),
    (1.0, -1.0, -1.0),
    (-1.0, 1.0, 1.0),
    (-1.0, 1.0, -1.0),
    (-1.0, -1.0, 1.0),
    (-1.0, -1.0, -1.0),
];

/// Quadrants of omega in emission order.
const QUADRANTS: [(f64, f64); 4] = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)];

/// Parameter value that maps to the mirrored omega quadrant.
fn mirror_omega(omega: f64, sx: f64, sy: f64) -> f64 {
    match (sx > 0.0, sy > 0.0) {
        (true, true) => omega,
        (true, false) => -omega,
        (false, true) => PI - omega,
        (false, false) => omega - PI,
    }
}

/// Sample a superellipsoid at near-constant arc spacing.
///
/// Eta angles come from the superellipse `(cos^eps1, a3 sin^eps1)` and omega
/// angles from `(a1 cos^eps2, a2 sin^eps2)`; the spherical product of the two
/// grids covers the first octant, which is then mirrored through all eight
/// sign combinations.
pub fn sample_superellipsoid(
    params: &Validated,
    config: &SamplingConfig,
) -> Result<SampledSurface, SampleError> {
    let p = params.params();
    assert_eq!(
        p.kind,
        SuperquadricKind::Superellipsoid,
        "sample_superellipsoid requires superellipsoid params"
    );

    let etas = sample_superellipse_angles(1.0, p.a3, p.eps1, config)?;
    let omegas = sample_superellipse_angles(p.a1, p.a2, p.eps2, config)?;

    // Per-row and per-column trig powers; the seam values are exact zeros.
    let eta_pows: Vec<(f64, f64)> = etas
        .values()
        .iter()
        .map(|&t| {
            (
                signed_pow(snapped_cos(t), p.eps1),
                signed_pow(snapped_sin(t), p.eps1),
            )
        })
        .collect();
    let omega_pows: Vec<(f64, f64)> = omegas
        .values()
        .iter()
        .map(|&t| {
            (
                signed_pow(snapped_cos(t), p.eps2),
                signed_pow(snapped_sin(t), p.eps2),
            )
        })
        .collect();

    let rows = eta_pows.len();
    let cols = omega_pows.len();
    let mut points = Vec::with_capacity(rows * cols * 8);
    let mut coords = Vec::with_capacity(rows * cols * 8);

    // Zeros sit only on the seams: z = 0 on the first eta row, y = 0 in the
    // first omega column, x = 0 in the last, and the last eta row collapses
    // to the pole. Mirror deduplication therefore reduces to index ranges.
    for &(sx, sy, sz) in &OCTANTS {
        let mirrored: Vec<f64> = omegas
            .values()
            .iter()
            .map(|&w| mirror_omega(w, sx, sy))
            .collect();
        let i_lo = usize::from(sz < 0.0);
        let j_lo = usize::from(sy < 0.0);
        let j_hi = cols - usize::from(sx < 0.0);

        for (i, &(ce, se)) in eta_pows.iter().enumerate().skip(i_lo) {
            let eta = sz * etas.values()[i];
            let z = sz * p.a3 * se;
            if ce == 0.0 {
                // pole row; one copy in the all-positive xy octants
                if sx > 0.0 && sy > 0.0 {
                    points.push(Point3::new(0.0, 0.0, z));
                    coords.push((eta, mirrored[0]));
                }
                continue;
            }
            let xe = sx * p.a1 * ce;
            let ye = sy * p.a2 * ce;
            for j in j_lo..j_hi {
                let (co, so) = omega_pows[j];
                points.push(Point3::new(xe * co, ye * so, z));
                coords.push((eta, mirrored[j]));
            }
        }
    }

    Ok(SampledSurface {
        points,
        normals: None,
        param_coords: coords,
        params: p.clone(),
    })
}

/// Sample a superparaboloid at near-constant arc spacing.
///
/// Superparabola parameters u in [0, 1] give the profile, omega angles the
/// cross-section; the first quadrant of omega is mirrored through the four
/// sign combinations of (x, y).
pub fn sample_superparaboloid(
    params: &Validated,
    config: &SamplingConfig,
) -> Result<SampledSurface, SampleError> {
    let p = params.params();
    assert_eq!(
        p.kind,
        SuperquadricKind::Superparaboloid,
        "sample_superparaboloid requires superparaboloid params"
    );

    let us = sample_superparabola_params(p.a3, p.eps1, config)?;
    let omegas = sample_superellipse_angles(p.a1, p.a2, p.eps2, config)?;

    let omega_pows: Vec<(f64, f64)> = omegas
        .values()
        .iter()
        .map(|&t| {
            (
                signed_pow(snapped_cos(t), p.eps2),
                signed_pow(snapped_sin(t), p.eps2),
            )
        })
        .collect();

    let cols = omega_pows.len();
    let mut points = Vec::with_capacity(us.len() * cols * 4);
    let mut coords = Vec::with_capacity(us.len() * cols * 4);

    // Same seam logic as the superellipsoid: y = 0 in the first omega
    // column, x = 0 in the last, and the u = 0 row collapses to the apex.
    for &(sx, sy) in &QUADRANTS {
        let mirrored: Vec<f64> = omegas
            .values()
            .iter()
            .map(|&w| mirror_omega(w, sx, sy))
            .collect();
        let j_lo = usize::from(sy < 0.0);
        let j_hi = cols - usize::from(sx < 0.0);

        for &u in us.values() {
            let z = p.a3 * (u.powf(2.0 / p.eps1) - 1.0);
            if u == 0.0 {
                if sx > 0.0 && sy > 0.0 {
                    points.push(Point3::new(0.0, 0.0, z));
                    coords.push((u, mirrored[0]));
                }
                continue;
            }
            let xu = sx * p.a1 * u;
            let yu = sy * p.a2 * u;
            for j in j_lo..j_hi {
                let (co, so) = omega_pows[j];
                points.push(Point3::new(xu * co, yu * so, z));
                coords.push((u, mirrored[j]));
            }
        }
    }

    Ok(SampledSurface {
        points,
        normals: None,
        param_coords: coords,
        params: p.clone(),
    })
}

/// Sample the surface matching `params.kind`.
pub fn sample_surface(
    params: &Validated,
    config: &SamplingConfig,
) -> Result<SampledSurface, SampleError> {
    match params.kind {
        SuperquadricKind::Superellipsoid => sample_superellipsoid(params, config),
        SuperquadricKind::Superparaboloid => sample_superparaboloid(params, config),
    }
}

/// Baseline sampler: a uniform grid in parameter space pushed through the
/// parametric surface, duplicates and all. Clusters points in regions of
/// high curvature; used only for comparison metrics.
pub fn naive_sample(params: &Validated, n_eta: usize, n_omega: usize) -> SampledSurface {
    assert!(n_eta >= 2 && n_omega >= 2, "grid sizes must be >= 2");
    let p = params.params();

    let mut points = Vec::with_capacity(n_eta * n_omega);
    let mut coords = Vec::with_capacity(n_eta * n_omega);

    // omega covers [-pi, pi) half-open so the seam is not double-counted
    let omegas: Vec<f64> = (0..n_omega)
        .map(|j| -PI + 2.0 * PI * j as f64 / n_omega as f64)
        .collect();

    match p.kind {
        SuperquadricKind::Superellipsoid => {
            for i in 0..n_eta {
                let eta = -0.5 * PI + PI * i as f64 / (n_eta - 1) as f64;
                let ce = signed_pow(eta.cos(), p.eps1);
                let se = signed_pow(eta.sin(), p.eps1);
                for &omega in &omegas {
                    let co = signed_pow(omega.cos(), p.eps2);
                    let so = signed_pow(omega.sin(), p.eps2);
                    points.push(Point3::new(p.a1 * ce * co, p.a2 * ce * so, p.a3 * se));
                    coords.push((eta, omega));
                }
            }
        }
        SuperquadricKind::Superparaboloid => {
            for i in 0..n_eta {
                let u = i as f64 / (n_eta - 1) as f64;
                let z = p.a3 * (u.powf(2.0 / p.eps1) - 1.0);
                for &omega in &omegas {
                    let co = signed_pow(omega.cos(), p.eps2);
                    let so = signed_pow(omega.sin(), p.eps2);
                    points.push(Point3::new(p.a1 * u * co, p.a2 * u * so, z));
                    coords.push((u, omega));
                }
            }
        }
    }

    SampledSurface {
        points,
        normals: None,
        param_coords: coords,
        params: p.clone(),
    }
}
