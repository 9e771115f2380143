//! Point-cloud metrics: nearest-neighbor spacing statistics, implicit
//! surface residuals, and cloud-to-cloud distance.
//!
//! Nearest neighbors are exact, computed through a uniform grid index with
//! an expanding-shell search (brute force in disguise for degenerate
//! clouds). All statistics are permutation-invariant in the input order.

use nalgebra::Point3;

use crate::error::MetricsError;
use crate::params::inside_outside;
use crate::surface::SampledSurface;

/// Spacing and fidelity statistics of a point cloud.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub point_count: usize,
    /// Mean nearest-neighbor distance.
    pub nn_mean: f64,
    /// Coefficient of variation (population std / mean) of the NN distances.
    pub nn_cv: f64,
    /// Largest NN distance over smallest; 1 for perfectly even spacing.
    pub nn_max_min_ratio: f64,
    /// Max |F - 1| over the cloud, when the generating shape is known.
    pub implicit_residual_max: Option<f64>,
}

/// Directed and symmetric mean nearest-neighbor distances between clouds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CloudDistance {
    /// Mean over a in A of the distance to the closest b in B.
    pub mean_ab: f64,
    /// Mean over b in B of the distance to the closest a in A.
    pub mean_ba: f64,
    /// Average of the two directed means.
    pub symmetric: f64,
}

/// Exact nearest-neighbor distance statistics of a cloud.
pub fn nn_spacing_stats(points: &[Point3<f64>]) -> Result<MetricsReport, MetricsError> {
    if points.len() < 2 {
        return Err(MetricsError::TooFewPoints {
            needed: 2,
            got: points.len(),
        });
    }
    let mut distances = nearest_neighbor_distances(points);
    // summation over sorted values makes the statistics independent of the
    // input point order down to the last bit
    distances.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let n = distances.len() as f64;
    let mean = distances.iter().sum::<f64>() / n;
    let var = distances.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / n;
    let cv = if mean > 0.0 { var.sqrt() / mean } else { 0.0 };
    let min = distances[0];
    let max = *distances.last().unwrap();
    let ratio = if max == min { 1.0 } else { max / min };

    Ok(MetricsReport {
        point_count: points.len(),
        nn_mean: mean,
        nn_cv: cv,
        nn_max_min_ratio: ratio,
        implicit_residual_max: None,
    })
}

/// Max |F - 1| of a canonical-frame surface against its own implicit form.
pub fn surface_residual(surface: &SampledSurface) -> f64 {
    surface
        .points
        .iter()
        .map(|p| (inside_outside(p, &surface.params) - 1.0).abs())
        .fold(0.0, f64::max)
}

/// Mean nearest-neighbor distance from each cloud to the other.
pub fn cloud_distance(a: &[Point3<f64>], b: &[Point3<f64>]) -> Result<CloudDistance, MetricsError> {
    for cloud in [a, b] {
        if cloud.is_empty() {
            return Err(MetricsError::TooFewPoints {
                needed: 1,
                got: cloud.len(),
            });
        }
    }
    let mean_ab = directed_mean(a, b);
    let mean_ba = directed_mean(b, a);
    Ok(CloudDistance {
        mean_ab,
        mean_ba,
        symmetric: 0.5 * (mean_ab + mean_ba),
    })
}

fn directed_mean(from: &[Point3<f64>], to: &[Point3<f64>]) -> f64 {
    let index = GridIndex::build(to);
    let total: f64 = from.iter().map(|q| index.nearest(q, to, usize::MAX)).sum();
    total / from.len() as f64
}

/// Exact nearest-neighbor distance for every point of the cloud.
pub fn nearest_neighbor_distances(points: &[Point3<f64>]) -> Vec<f64> {
    if points.is_empty() {
        return Vec::new();
    }
    let index = GridIndex::build(points);
    (0..points.len())
        .map(|i| index.nearest(&points[i], points, i))
        .collect()
}

/// Uniform grid over the cloud's bounding box. Cell size targets one point
/// per cell; queries expand over Chebyshev shells until no closer point can
/// exist outside the scanned region, so results are exact.
struct GridIndex {
    origin: Point3<f64>,
    cell: f64,
    dims: [usize; 3],
    buckets: Vec<Vec<u32>>,
}

const MAX_BUCKETS: usize = 1 << 22;

impl GridIndex {
    fn build(points: &[Point3<f64>]) -> Self {
        let mut lo = points[0];
        let mut hi = points[0];
        for p in points {
            for k in 0..3 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let extent = [hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]];
        let max_extent = extent[0].max(extent[1]).max(extent[2]);

        let per_axis = (points.len() as f64).cbrt().ceil().max(1.0);
        let mut cell = if max_extent > 0.0 {
            max_extent / per_axis
        } else {
            1.0
        };

        let dims_for = |cell: f64| -> [usize; 3] {
            let mut dims = [1usize; 3];
            for k in 0..3 {
                dims[k] = (extent[k] / cell).floor() as usize + 1;
            }
            dims
        };
        let mut dims = dims_for(cell);
        while dims[0] * dims[1] * dims[2] > MAX_BUCKETS {
            cell *= 2.0;
            dims = dims_for(cell);
        }

        let mut buckets = vec![Vec::new(); dims[0] * dims[1] * dims[2]];
        for (i, p) in points.iter().enumerate() {
            let c = Self::cell_of(p, &lo, cell, &dims);
            buckets[Self::flatten(c, &dims)].push(i as u32);
        }

        GridIndex {
            origin: lo,
            cell,
            dims,
            buckets,
        }
    }

    fn cell_of(p: &Point3<f64>, origin: &Point3<f64>, cell: f64, dims: &[usize; 3]) -> [usize; 3] {
        let mut c = [0usize; 3];
        for k in 0..3 {
            let idx = ((p[k] - origin[k]) / cell).floor();
            c[k] = (idx.max(0.0) as usize).min(dims[k] - 1);
        }
        c
    }

    fn flatten(c: [usize; 3], dims: &[usize; 3]) -> usize {
        (c[0] * dims[1] + c[1]) * dims[2] + c[2]
    }

    /// Distance to the nearest point, excluding index `exclude`
    /// (`usize::MAX` to exclude nothing).
    fn nearest(&self, q: &Point3<f64>, points: &[Point3<f64>], exclude: usize) -> f64 {
        let home = Self::cell_of(q, &self.origin, self.cell, &self.dims);
        let max_ring = self.dims.iter().max().unwrap() + 1;
        let mut best = f64::INFINITY;

        for ring in 0..=max_ring {
            // every cell on a farther shell is at least (ring - 1) cells away
            if ring >= 1 && best <= (ring - 1) as f64 * self.cell {
                break;
            }
            let r = ring as isize;
            for dx in -r..=r {
                let ix = home[0] as isize + dx;
                if ix < 0 || ix >= self.dims[0] as isize {
                    continue;
                }
                for dy in -r..=r {
                    let iy = home[1] as isize + dy;
                    if iy < 0 || iy >= self.dims[1] as isize {
                        continue;
                    }
                    for dz in -r..=r {
                        if dx.abs().max(dy.abs()).max(dz.abs()) != r {
                            continue;
                        }
                        let iz = home[2] as isize + dz;
                        if iz < 0 || iz >= self.dims[2] as isize {
                            continue;
                        }
                        let bucket = &self.buckets
                            [Self::flatten([ix as usize, iy as usize, iz as usize], &self.dims)];
                        for &i in bucket {
                            if i as usize == exclude {
                                continue;
                            }
                            let d = (points[i as usize] - q).norm();
                            if d < best {
                                best = d;
                            }
                        }
                    }
                }
            }
        }
        best
    }
}
