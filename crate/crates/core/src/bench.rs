//! Timing grid over shape exponent and target spacing, reproducing the
//! scaling behavior of the samplers.
//!
//! Cells run serially and each repetition times one full point sampling
//! with a monotonic clock; the median over the repetitions is recorded.
//! Absolute milliseconds are machine-specific — only trends (monotone in
//! spacing, flat in the exponent) are meaningful across machines.

use std::io::{self, Write};
use std::time::Instant;

use thiserror::Error;

use crate::error::{SampleError, ValidationError};
use crate::params::{validate, SamplingConfig, SuperquadricKind, SuperquadricParams};
use crate::surface::sample_surface;

/// One timing-grid cell: shape, spacing, resulting point count, and the
/// median wall time over `reps` repetitions.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub kind: SuperquadricKind,
    pub eps1: f64,
    pub eps2: f64,
    pub spacing: f64,
    pub points: usize,
    pub median_ms: f64,
    pub reps: usize,
}

/// A failed grid cell; the rest of the grid still runs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BenchCellError {
    #[error("invalid cell parameters: {0:?}")]
    Validation(Vec<ValidationError>),
    #[error(transparent)]
    Sample(#[from] SampleError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchFailure {
    pub eps: f64,
    pub spacing: f64,
    pub error: BenchCellError,
}

/// Timing grid specification. Unit scales, eps1 = eps2 = eps per cell.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchGrid {
    pub kind: SuperquadricKind,
    pub eps_values: Vec<f64>,
    pub spacing_values: Vec<f64>,
    pub reps: usize,
}

impl BenchGrid {
    /// Desk-scale default: eps in {0.1, 0.3, ..., 1.9}, spacing in
    /// {0.01, 0.02, 0.05, 0.1, 0.2}, 31 repetitions.
    pub fn desk(kind: SuperquadricKind) -> Self {
        BenchGrid {
            kind,
            eps_values: (0..10).map(|i| (2 * i + 1) as f64 / 10.0).collect(),
            spacing_values: vec![0.01, 0.02, 0.05, 0.1, 0.2],
            reps: 31,
        }
    }

    /// Full-size grid: eps from 0.1 to 2.0 in steps of 0.05, spacing from
    /// 0.005 to 0.2 in steps of 0.001, 1000 repetitions. Takes hours.
    pub fn full(kind: SuperquadricKind) -> Self {
        BenchGrid {
            kind,
            eps_values: (2..=40).map(|i| i as f64 / 20.0).collect(),
            spacing_values: (5..=200).map(|i| i as f64 / 1000.0).collect(),
            reps: 1000,
        }
    }
}

/// Records plus per-cell failures.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchOutcome {
    pub records: Vec<BenchRecord>,
    pub failures: Vec<BenchFailure>,
}

/// Run every cell of the grid serially, recording median time and point
/// count. Failing cells are collected instead of aborting the sweep.
pub fn run_bench(grid: &BenchGrid) -> BenchOutcome {
    let mut records = Vec::new();
    let mut failures = Vec::new();

    for &eps in &grid.eps_values {
        for &spacing in &grid.spacing_values {
            match run_cell(grid.kind, eps, spacing, grid.reps) {
                Ok(record) => records.push(record),
                Err(error) => failures.push(BenchFailure {
                    eps,
                    spacing,
                    error,
                }),
            }
        }
    }

    BenchOutcome { records, failures }
}

fn run_cell(
    kind: SuperquadricKind,
    eps: f64,
    spacing: f64,
    reps: usize,
) -> Result<BenchRecord, BenchCellError> {
    let params = match kind {
        SuperquadricKind::Superellipsoid => {
            SuperquadricParams::superellipsoid(1.0, 1.0, 1.0, eps, eps)
        }
        SuperquadricKind::Superparaboloid => {
            SuperquadricParams::superparaboloid(1.0, 1.0, 1.0, eps, eps)
        }
    };
    let valid = validate(&params).map_err(BenchCellError::Validation)?;
    let config = SamplingConfig::new(spacing).expect("positive spacing");

    // untimed warmup settles allocator and caches before the measured reps
    let warmup = sample_surface(&valid, &config)?;
    let mut points = warmup.len();
    drop(warmup);

    let mut times = Vec::with_capacity(reps);
    for _ in 0..reps {
        let start = Instant::now();
        let surface = sample_surface(&valid, &config)?;
        times.push(start.elapsed().as_secs_f64() * 1e3);
        points = surface.len();
    }

    Ok(BenchRecord {
        kind,
        eps1: eps,
        eps2: eps,
        spacing,
        points,
        median_ms: median(&mut times),
        reps,
    })
}

fn median(samples: &mut [f64]) -> f64 {
    samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = samples.len();
    if n % 2 == 1 {
        samples[n / 2]
    } else {
        0.5 * (samples[n / 2 - 1] + samples[n / 2])
    }
}

/// Write records as CSV: `kind,eps1,eps2,D,points,median_ms,reps`,
/// LF line endings, '.' decimal separator.
pub fn write_csv<W: Write>(records: &[BenchRecord], mut out: W) -> io::Result<()> {
    out.write_all(b"kind,eps1,eps2,D,points,median_ms,reps\n")?;
    for r in records {
        let kind = match r.kind {
            SuperquadricKind::Superellipsoid => "se",
            SuperquadricKind::Superparaboloid => "sp",
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            kind, r.eps1, r.eps2, r.spacing, r.points, r.median_ms, r.reps
        )?;
    }
    Ok(())
}
