//! Superquadric parameterization, validation, and the implicit
//! (inside-outside) functions.
//!
//! A superquadric is described by 14 parameters: three scales `a1, a2, a3`,
//! two shape exponents `eps1, eps2`, a ZYZ Euler orientation, a position,
//! two taper factors `Kx, Ky`, and an optional bend radius `k`. The implicit
//! functions are defined in the canonical frame, i.e. before tapering,
//! bending, and pose are applied; callers working with deformed or posed
//! points must invert those maps first.

use nalgebra::{Point3, Vector3};

use crate::error::{ConfigError, ValidationError};
use crate::numeric::abs_pow;

/// Supported surface families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuperquadricKind {
    Superellipsoid,
    Superparaboloid,
}

impl SuperquadricKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SuperquadricKind::Superellipsoid => "superellipsoid",
            SuperquadricKind::Superparaboloid => "superparaboloid",
        }
    }
}

/// Smallest accepted shape exponent. The exponent `2/eps` appears in the
/// implicit functions, so `eps` must stay strictly positive.
pub const EPS_MIN: f64 = 0.01;
/// Largest supported shape exponent.
pub const EPS_MAX: f64 = 2.0;
/// Largest supported ratio between the largest and smallest scale.
pub const MAX_SCALE_RATIO: f64 = 10.0;

/// Full parameter set of a superquadric in general position.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperquadricParams {
    pub kind: SuperquadricKind,
    /// Scale along x, y, z (model units).
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    /// Shape exponents.
    pub eps1: f64,
    pub eps2: f64,
    /// ZYZ Euler angles (theta, phi, psi) in radians.
    pub euler_zyz: (f64, f64, f64),
    /// Position of the central point.
    pub position: Vector3<f64>,
    /// Taper factors in [-1, 1]; 0 means no taper.
    pub kx: f64,
    pub ky: f64,
    /// Bend circle radius; `None` disables bending entirely.
    pub bend_k: Option<f64>,
}

impl SuperquadricParams {
    /// Canonical-frame superellipsoid with no deformation.
    pub fn superellipsoid(a1: f64, a2: f64, a3: f64, eps1: f64, eps2: f64) -> Self {
        Self::new(SuperquadricKind::Superellipsoid, a1, a2, a3, eps1, eps2)
    }

    /// Canonical-frame superparaboloid with no deformation.
    pub fn superparaboloid(a1: f64, a2: f64, a3: f64, eps1: f64, eps2: f64) -> Self {
        Self::new(SuperquadricKind::Superparaboloid, a1, a2, a3, eps1, eps2)
    }

    fn new(kind: SuperquadricKind, a1: f64, a2: f64, a3: f64, eps1: f64, eps2: f64) -> Self {
        SuperquadricParams {
            kind,
            a1,
            a2,
            a3,
            eps1,
            eps2,
            euler_zyz: (0.0, 0.0, 0.0),
            position: Vector3::zeros(),
            kx: 0.0,
            ky: 0.0,
            bend_k: None,
        }
    }

    pub fn with_pose(mut self, euler_zyz: (f64, f64, f64), position: Vector3<f64>) -> Self {
        self.euler_zyz = euler_zyz;
        self.position = position;
        self
    }

    pub fn with_taper(mut self, kx: f64, ky: f64) -> Self {
        self.kx = kx;
        self.ky = ky;
        self
    }

    pub fn with_bend(mut self, k: f64) -> Self {
        self.bend_k = Some(k);
        self
    }

    /// True when taper, bend, orientation, and position are all identity.
    pub fn is_canonical(&self) -> bool {
        self.kx == 0.0
            && self.ky == 0.0
            && self.bend_k.is_none()
            && self.euler_zyz == (0.0, 0.0, 0.0)
            && self.position == Vector3::zeros()
    }
}

/// Parameters that passed [`validate`]. Sampling entry points require this
/// wrapper so invalid exponents or scale ratios cannot reach the samplers.
#[derive(Debug, Clone, PartialEq)]
pub struct Validated(SuperquadricParams);

impl Validated {
    pub fn params(&self) -> &SuperquadricParams {
        &self.0
    }

    pub fn into_inner(self) -> SuperquadricParams {
        self.0
    }
}

impl std::ops::Deref for Validated {
    type Target = SuperquadricParams;

    fn deref(&self) -> &SuperquadricParams {
        &self.0
    }
}

/// Check every parameter invariant and return the full list of violations.
///
/// Idempotent and side-effect free: the parameters are returned unchanged
/// inside the [`Validated`] wrapper.
pub fn validate(params: &SuperquadricParams) -> Result<Validated, Vec<ValidationError>> {
    let mut errors = Vec::new();

    for (name, value) in [("a1", params.a1), ("a2", params.a2), ("a3", params.a3)] {
        if !(value > 0.0 && value.is_finite()) {
            errors.push(ValidationError::NonPositiveScale { name, value });
        }
    }

    if errors.is_empty() {
        let max = params.a1.max(params.a2).max(params.a3);
        let min = params.a1.min(params.a2).min(params.a3);
        let ratio = max / min;
        if ratio > MAX_SCALE_RATIO {
            errors.push(ValidationError::ScaleRatioTooLarge {
                ratio,
                limit: MAX_SCALE_RATIO,
            });
        }
    }

    for (name, value) in [("eps1", params.eps1), ("eps2", params.eps2)] {
        // negated so NaN lands in the error branch
        if !(EPS_MIN..=EPS_MAX).contains(&value) {
            errors.push(ValidationError::EpsOutOfRange {
                name,
                value,
                lo: EPS_MIN,
                hi: EPS_MAX,
            });
        }
    }

    for (name, value) in [("Kx", params.kx), ("Ky", params.ky)] {
        if !(-1.0..=1.0).contains(&value) {
            errors.push(ValidationError::TaperOutOfRange { name, value });
        }
    }

    if let Some(k) = params.bend_k {
        if !(k > 0.0 && k >= params.a3 && k.is_finite()) {
            errors.push(ValidationError::BendRadiusTooSmall {
                bend_k: k,
                a3: params.a3,
            });
        }
    }

    if errors.is_empty() {
        Ok(Validated(params.clone()))
    } else {
        Err(errors)
    }
}

/// Step floor for the adaptive samplers; guarantees loop progress even when
/// the first-order update underflows.
pub const MIN_STEP: f64 = 1e-9;

/// Default angular threshold for the singularity branches of the
/// superellipse update.
pub const DEFAULT_THETA_SINGULAR: f64 = 0.01;

/// Default cap on samples emitted per curve pass.
pub const DEFAULT_MAX_SAMPLES: usize = 1_000_000;

/// Controls of the arc-length samplers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingConfig {
    spacing: f64,
    theta_singular: f64,
    max_samples_per_curve: usize,
}

impl SamplingConfig {
    /// Sampler configuration with target arc spacing `spacing` (model units)
    /// and default singularity threshold and sample cap.
    pub fn new(spacing: f64) -> Result<Self, ConfigError> {
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(ConfigError::NonPositiveSpacing(spacing));
        }
        Ok(SamplingConfig {
            spacing,
            theta_singular: DEFAULT_THETA_SINGULAR,
            max_samples_per_curve: DEFAULT_MAX_SAMPLES,
        })
    }

    pub fn with_theta_singular(mut self, theta_singular: f64) -> Result<Self, ConfigError> {
        if !(theta_singular > 0.0 && theta_singular < std::f64::consts::FRAC_PI_4) {
            return Err(ConfigError::SingularThresholdOutOfRange(theta_singular));
        }
        self.theta_singular = theta_singular;
        Ok(self)
    }

    pub fn with_max_samples(mut self, cap: usize) -> Result<Self, ConfigError> {
        if cap < 2 {
            return Err(ConfigError::SampleCapTooSmall(cap));
        }
        self.max_samples_per_curve = cap;
        Ok(self)
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn theta_singular(&self) -> f64 {
        self.theta_singular
    }

    pub fn max_samples_per_curve(&self) -> usize {
        self.max_samples_per_curve
    }
}

/// Inside-outside function of a superellipsoid, canonical frame.
///
/// Returns `F` with `F < 1` inside, `F = 1` on the surface, `F > 1`
/// outside. Normalized coordinates enter as absolute values before the
/// fractional exponentiation, which keeps `F` real in every octant.
pub fn inside_outside_se(x: &Point3<f64>, params: &SuperquadricParams) -> f64 {
    debug_assert_eq!(params.kind, SuperquadricKind::Superellipsoid);
    let xy =
        abs_pow(x.x / params.a1, 2.0 / params.eps2) + abs_pow(x.y / params.a2, 2.0 / params.eps2);
    abs_pow(xy, params.eps2 / params.eps1) + abs_pow(x.z / params.a3, 2.0 / params.eps1)
}

/// Inside-outside function of a superparaboloid, canonical frame.
///
/// The radial term matches the superellipsoid form; the height term enters
/// linearly and signed. Substituting the parametric surface gives
/// `u^(2/eps1) - (u^(2/eps1) - 1) = 1`, so surface points satisfy `F = 1`,
/// interior points (like the origin) give `F < 1`, exterior `F > 1`.
pub fn inside_outside_sp(x: &Point3<f64>, params: &SuperquadricParams) -> f64 {
    debug_assert_eq!(params.kind, SuperquadricKind::Superparaboloid);
    let xy =
        abs_pow(x.x / params.a1, 2.0 / params.eps2) + abs_pow(x.y / params.a2, 2.0 / params.eps2);
    abs_pow(xy, params.eps2 / params.eps1) - x.z / params.a3
}

/// Inside-outside function dispatched on `params.kind`.
pub fn inside_outside(x: &Point3<f64>, params: &SuperquadricParams) -> f64 {
    match params.kind {
        SuperquadricKind::Superellipsoid => inside_outside_se(x, params),
        SuperquadricKind::Superparaboloid => inside_outside_sp(x, params),
    }
}
