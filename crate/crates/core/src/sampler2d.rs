//! Arc-length adaptive sampling of superellipse angles and superparabola
//! parameters.
//!
//! Both samplers walk their parameter domain with a first-order step that
//! keeps the arc length between consecutive samples close to the target
//! spacing `D`. The superellipse walk runs twice, once up from 0 and once
//! down from pi/2, because the first-order update degenerates at either end;
//! near the ends a closed-form branch steps a fixed distance along the
//! dominant coordinate instead.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use crate::error::SampleError;
use crate::numeric::signed_pow;
use crate::params::{SamplingConfig, MIN_STEP};

/// Tolerance for endpoint snapping and duplicate suppression.
pub const SNAP_TOL: f64 = 1e-12;

/// Strictly increasing superellipse angles covering [0, pi/2].
#[derive(Debug, Clone, PartialEq)]
pub struct AngleSequence {
    values: Vec<f64>,
}

impl AngleSequence {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Strictly increasing superparabola parameters covering [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct ParamSequence {
    values: Vec<f64>,
}

impl ParamSequence {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// First-order angle step that advances the superellipse
/// `(a cos^eps t, b sin^eps t)` by arc length `spacing`.
///
/// Within `theta_singular` of 0 or pi/2 the update switches to the
/// closed-form branch that advances the dominant coordinate by exactly
/// `spacing`; the generic first-order formula degenerates at the ends
/// (0/0 or a blow-up, depending on the exponent). The returned step is
/// floored at [`MIN_STEP`] so sampling loops always make progress.
pub fn delta_theta(
    theta: f64,
    a: f64,
    b: f64,
    eps: f64,
    spacing: f64,
    theta_singular: f64,
) -> Result<f64, SampleError> {
    let step = if theta <= theta_singular {
        (theta.powf(eps) + spacing / b).powf(1.0 / eps) - theta
    } else if FRAC_PI_2 - theta <= theta_singular {
        let phi = FRAC_PI_2 - theta;
        (phi.powf(eps) + spacing / a).powf(1.0 / eps) - phi
    } else {
        let (s, c) = theta.sin_cos();
        let num = c * s;
        let den =
            (a * a * c.powf(2.0 * eps) * s.powi(4) + b * b * s.powf(2.0 * eps) * c.powi(4)).sqrt();
        spacing / eps * num / den
    };
    if !step.is_finite() {
        return Err(SampleError::NonFiniteResult {
            op: "delta_theta",
            at: "theta",
            value: theta,
        });
    }
    Ok(step.max(MIN_STEP))
}

/// First-order parameter step that advances the superparabola
/// `(u, a3 (u^(2/eps1) - 1))` by arc length `spacing`.
pub fn delta_u(u: f64, a3: f64, eps1: f64, spacing: f64) -> Result<f64, SampleError> {
    let slope_sq = 4.0 * a3 * a3 / (eps1 * eps1) * u.powf(4.0 / eps1 - 2.0);
    let den = (slope_sq + 1.0).sqrt();
    let step = spacing / den;
    if !den.is_finite() || !step.is_finite() {
        return Err(SampleError::NonFiniteResult {
            op: "delta_u",
            at: "u",
            value: u,
        });
    }
    Ok(step.max(MIN_STEP))
}

/// Sample the first-quadrant angles of the superellipse
/// `(a cos^eps t, b sin^eps t)` at near-constant arc spacing.
///
/// Runs an ascending pass from 0 and a descending pass from pi/2, each until
/// it crosses pi/4, then merges the two: of the two samples that crossed the
/// midpoint, the one whose removal leaves a seam gap closer to the target
/// spacing is dropped. Both endpoints are always present and the result is
/// strictly increasing.
pub fn sample_superellipse_angles(
    a: f64,
    b: f64,
    eps: f64,
    config: &SamplingConfig,
) -> Result<AngleSequence, SampleError> {
    let spacing = config.spacing();
    let singular = config.theta_singular();
    let cap = config.max_samples_per_curve();

    // Ascending pass; the first sample at or beyond pi/4 is kept for the merge.
    let mut ascending = vec![0.0_f64];
    loop {
        let current = *ascending.last().unwrap();
        let next = current + delta_theta(current, a, b, eps, spacing, singular)?;
        ascending.push(next);
        if next >= FRAC_PI_4 {
            break;
        }
        if ascending.len() >= cap {
            return Err(SampleError::SampleCapExceeded { cap });
        }
    }

    // Descending pass, stored high-to-low.
    let mut descending = vec![FRAC_PI_2];
    loop {
        let current = *descending.last().unwrap();
        let next = current - delta_theta(current, a, b, eps, spacing, singular)?;
        descending.push(next);
        if next <= FRAC_PI_4 {
            break;
        }
        if descending.len() >= cap {
            return Err(SampleError::SampleCapExceeded { cap });
        }
    }

    let values = merge_passes(ascending, descending, a, b, eps, spacing);
    Ok(AngleSequence { values })
}

/// Chord length between two parameter values on the superellipse.
fn superellipse_chord(t0: f64, t1: f64, a: f64, b: f64, eps: f64) -> f64 {
    let p = |t: f64| (a * signed_pow(t.cos(), eps), b * signed_pow(t.sin(), eps));
    let (x0, y0) = p(t0);
    let (x1, y1) = p(t1);
    ((x1 - x0).powi(2) + (y1 - y0).powi(2)).sqrt()
}

fn merge_passes(
    ascending: Vec<f64>,
    descending: Vec<f64>,
    a: f64,
    b: f64,
    eps: f64,
    spacing: f64,
) -> Vec<f64> {
    // Last element of each pass is the sample that crossed pi/4. Dropping
    // neither would leave the merged list out of order, so exactly one goes:
    // whichever removal leaves a seam chord closer to the target spacing.
    let asc_cross = *ascending.last().unwrap();
    let desc_cross = *descending.last().unwrap();
    let asc_prev = ascending[ascending.len() - 2];
    let desc_prev = descending[descending.len() - 2];

    let gap_drop_asc = superellipse_chord(asc_prev, desc_cross, a, b, eps);
    let gap_drop_desc = superellipse_chord(asc_cross, desc_prev, a, b, eps);
    let drop_ascending = (gap_drop_asc - spacing).abs() <= (gap_drop_desc - spacing).abs();

    let asc_keep = ascending.len() - usize::from(drop_ascending);
    let desc_keep = descending.len() - usize::from(!drop_ascending);

    let raw = ascending
        .into_iter()
        .take(asc_keep)
        .chain(descending.into_iter().take(desc_keep).rev());
    finalize(raw, FRAC_PI_2)
}

/// Sample superparabola parameters u in [0, 1] at near-constant arc spacing.
///
/// Single ascending pass; when the update overshoots 1 the final sample is
/// clamped to exactly 1.
pub fn sample_superparabola_params(
    a3: f64,
    eps1: f64,
    config: &SamplingConfig,
) -> Result<ParamSequence, SampleError> {
    let spacing = config.spacing();
    let cap = config.max_samples_per_curve();

    let mut values = vec![0.0_f64];
    loop {
        let current = *values.last().unwrap();
        let next = current + delta_u(current, a3, eps1, spacing)?;
        if next >= 1.0 - SNAP_TOL {
            break;
        }
        values.push(next);
        if values.len() >= cap {
            return Err(SampleError::SampleCapExceeded { cap });
        }
    }

    Ok(ParamSequence {
        values: finalize(values.into_iter(), 1.0),
    })
}

/// Enforce the sequence contract: starts at 0, ends at `end`, strictly
/// increasing, duplicates within [`SNAP_TOL`] suppressed.
fn finalize(raw: impl Iterator<Item = f64>, end: f64) -> Vec<f64> {
    let mut out = vec![0.0];
    for v in raw {
        let last = *out.last().unwrap();
        if v <= last + SNAP_TOL {
            continue;
        }
        if v >= end - SNAP_TOL {
            break;
        }
        out.push(v);
    }
    out.push(end);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::DEFAULT_THETA_SINGULAR;
    use approx::assert_relative_eq;

    fn config(spacing: f64) -> SamplingConfig {
        SamplingConfig::new(spacing).unwrap()
    }

    #[test]
    fn delta_theta_is_spacing_on_unit_circle() {
        let d = delta_theta(FRAC_PI_4, 1.0, 1.0, 1.0, 0.1, DEFAULT_THETA_SINGULAR).unwrap();
        assert_relative_eq!(d, 0.1, max_relative = 1e-12);
    }

    #[test]
    fn delta_theta_near_zero_branch_at_origin() {
        // (D/b)^(1/eps) - 0 with eps = 1
        let d = delta_theta(0.0, 1.0, 1.0, 1.0, 0.05, DEFAULT_THETA_SINGULAR).unwrap();
        assert_relative_eq!(d, 0.05, max_relative = 1e-12);
    }

    #[test]
    fn delta_theta_near_half_pi_branch() {
        let d = delta_theta(FRAC_PI_2, 2.0, 1.0, 1.0, 0.05, DEFAULT_THETA_SINGULAR).unwrap();
        assert_relative_eq!(d, 0.025, max_relative = 1e-12);
    }

    #[test]
    fn delta_theta_rejects_overflowing_combination() {
        // (theta^eps + D/b)^(1/eps) overflows for tiny eps and huge D/b
        let err = delta_theta(0.0, 1.0, 1e-6, 0.01, 1e3, DEFAULT_THETA_SINGULAR).unwrap_err();
        assert!(matches!(err, SampleError::NonFiniteResult { .. }));
    }

    #[test]
    fn delta_u_degenerate_line_case() {
        // eps1 = 2 turns the superparabola into a straight line of slope a3
        let d = delta_u(0.37, 1.0, 2.0, 0.1).unwrap();
        assert_relative_eq!(d, 0.1 / 2.0_f64.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn delta_u_at_zero_with_eps_one() {
        let d = delta_u(0.0, 1.0, 1.0, 0.1).unwrap();
        assert_relative_eq!(d, 0.1, max_relative = 1e-12);
    }

    #[test]
    fn delta_u_rejects_negative_exponent_at_zero() {
        // eps1 > 2 flips the exponent sign, u = 0 blows the denominator up
        let err = delta_u(0.0, 1.0, 3.0, 0.1).unwrap_err();
        assert!(matches!(err, SampleError::NonFiniteResult { .. }));
    }

    #[test]
    fn circle_angles_are_uniform() {
        let seq = sample_superellipse_angles(1.0, 1.0, 1.0, &config(std::f64::consts::PI / 20.0))
            .unwrap();
        assert_eq!(seq.len(), 11);
        assert_eq!(seq.values()[0], 0.0);
        assert_eq!(*seq.values().last().unwrap(), FRAC_PI_2);
        for w in seq.values().windows(2) {
            assert_relative_eq!(w[1] - w[0], std::f64::consts::PI / 20.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn angles_cover_quadrant_for_small_eps() {
        let seq = sample_superellipse_angles(1.0, 1.0, 0.1, &config(0.05)).unwrap();
        assert_eq!(seq.values()[0], 0.0);
        assert_eq!(*seq.values().last().unwrap(), FRAC_PI_2);
        for w in seq.values().windows(2) {
            assert!(w[1] > w[0]);
        }
    }

    #[test]
    fn huge_spacing_collapses_to_endpoints() {
        let seq = sample_superellipse_angles(1.0, 1.0, 1.0, &config(100.0)).unwrap();
        assert_eq!(seq.values(), &[0.0, FRAC_PI_2]);
        let seq = sample_superparabola_params(1.0, 1.0, &config(100.0)).unwrap();
        assert_eq!(seq.values(), &[0.0, 1.0]);
    }

    #[test]
    fn parabola_line_case_is_uniform() {
        let seq = sample_superparabola_params(1.0, 2.0, &config(2.0_f64.sqrt() / 10.0)).unwrap();
        assert_eq!(seq.len(), 11);
        for (i, v) in seq.values().iter().enumerate() {
            assert_relative_eq!(*v, i as f64 / 10.0, epsilon = 1e-9);
        }
        assert_eq!(*seq.values().last().unwrap(), 1.0);
    }

    #[test]
    fn parabola_last_value_is_exactly_one() {
        for eps1 in [0.3, 0.7, 1.0, 1.6, 2.0] {
            let seq = sample_superparabola_params(2.0, eps1, &config(0.037)).unwrap();
            assert_eq!(*seq.values().last().unwrap(), 1.0);
            assert_eq!(seq.values()[0], 0.0);
        }
    }

    #[test]
    fn sample_cap_is_enforced() {
        let cfg = config(1e-8).with_max_samples(100).unwrap();
        let err = sample_superellipse_angles(1.0, 1.0, 1.0, &cfg).unwrap_err();
        assert!(matches!(err, SampleError::SampleCapExceeded { cap: 100 }));
        let err = sample_superparabola_params(1.0, 1.0, &cfg).unwrap_err();
        assert!(matches!(err, SampleError::SampleCapExceeded { cap: 100 }));
    }

    #[test]
    fn halving_spacing_roughly_doubles_samples() {
        for eps in [0.3, 0.5, 1.0, 1.5, 2.0] {
            let n1 = sample_superellipse_angles(1.0, 1.0, eps, &config(0.02))
                .unwrap()
                .len() as f64;
            let n2 = sample_superellipse_angles(1.0, 1.0, eps, &config(0.01))
                .unwrap()
                .len() as f64;
            let ratio = n2 / n1;
            assert!(
                (1.8..=2.3).contains(&ratio),
                "eps={eps}: ratio {ratio} out of range"
            );
        }
    }
}
