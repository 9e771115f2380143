//! Error types shared across the crate.

use thiserror::Error;

/// A violated parameter invariant. `validate` collects every violation
/// instead of stopping at the first one.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationError {
    #[error("NonPositiveScale: {name} must be positive and finite, got {value}")]
    NonPositiveScale { name: &'static str, value: f64 },

    #[error("EpsOutOfRange: {name} must lie in [{lo}, {hi}], got {value}")]
    EpsOutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("ScaleRatioTooLarge: max(a)/min(a) = {ratio} exceeds {limit}")]
    ScaleRatioTooLarge { ratio: f64, limit: f64 },

    #[error("TaperOutOfRange: {name} must lie in [-1, 1], got {value}")]
    TaperOutOfRange { name: &'static str, value: f64 },

    #[error("BendRadiusTooSmall: bend radius {bend_k} must be >= a3 = {a3}")]
    BendRadiusTooSmall { bend_k: f64, a3: f64 },
}

/// Invalid sampling configuration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("spacing must be positive and finite, got {0}")]
    NonPositiveSpacing(f64),

    #[error("theta_singular must lie in (0, pi/4), got {0}")]
    SingularThresholdOutOfRange(f64),

    #[error("max_samples_per_curve must be >= 2, got {0}")]
    SampleCapTooSmall(usize),
}

/// Failures of the adaptive curve samplers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SampleError {
    #[error("NonFiniteResult: {op} produced a non-finite step at {at} = {value}")]
    NonFiniteResult {
        op: &'static str,
        at: &'static str,
        value: f64,
    },

    #[error("SampleCapExceeded: curve sampling hit the cap of {cap} samples")]
    SampleCapExceeded { cap: usize },
}

/// Failures of normal evaluation or transformation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NormalError {
    #[error("DegenerateNormal: pre-normalization magnitude {magnitude} at ({p0}, {p1})")]
    DegenerateNormal { magnitude: f64, p0: f64, p1: f64 },
}

/// Failures of the point-cloud metrics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("TooFewPoints: need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
}

/// Any failure on the validate -> sample -> normals -> deform path.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("invalid parameters: {}", format_list(.0))]
    Validation(Vec<ValidationError>),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error(transparent)]
    Normal(#[from] NormalError),
}

impl From<Vec<ValidationError>> for GenerateError {
    fn from(errors: Vec<ValidationError>) -> Self {
        GenerateError::Validation(errors)
    }
}

fn format_list(errors: &[ValidationError]) -> String {
    errors
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
