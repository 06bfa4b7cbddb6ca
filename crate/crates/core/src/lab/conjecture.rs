//! Sampling harness for the lower bound `π/2` on circumscribed-ellipse area
//! ratios. Evidence gathering only: low ratios are recorded as candidates,
//! never asserted away.

use std::f64::consts::FRAC_PI_2;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::geometry::Point;
use crate::lab::circumscribed::circumscribed_min_ratio;
use crate::lab::sampling::{random_disk_quad, random_parallelogram, sample_rng};
use crate::quad::{validate, ConvexQuad};

/// Ratios below `π/2 - CANDIDATE_TOL` are counterexample candidates.
pub const CANDIDATE_TOL: f64 = 1e-9;
/// Relative size of the vertex perturbation in the near-parallelogram stratum.
pub const NEAR_PARALLELOGRAM_JITTER: f64 = 1e-3;

/// Upper edges of the histogram of `ratio - π/2`; the last bucket is open.
pub const HISTOGRAM_EDGES: [f64; 8] = [
    -CANDIDATE_TOL,
    CANDIDATE_TOL,
    1e-4,
    1e-2,
    0.1,
    0.5,
    1.0,
    2.0,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stratum {
    Square,
    Disk,
    Parallelogram,
    NearParallelogram,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub index: u64,
    pub stratum: Stratum,
    pub vertices: [Point; 4],
    pub ratio: f64,
    /// `ratio - π/2`.
    pub gap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramBucket {
    /// Lower edge of `ratio - π/2`; `None` for the bottom bucket.
    pub lo: Option<f64>,
    /// Upper edge; `None` for the top bucket.
    pub hi: Option<f64>,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleFailure {
    pub index: u64,
    pub vertices: [Point; 4],
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub samples: usize,
    pub seed: u64,
    pub min_ratio: f64,
    pub argmin: SampleRow,
    pub histogram: Vec<HistogramBucket>,
    pub candidates: Vec<SampleRow>,
    pub failures: Vec<SampleFailure>,
    pub parallelogram_samples: usize,
    /// Largest `|ratio - π/2|` over exact parallelogram samples.
    pub parallelogram_max_deviation: f64,
    /// Smallest and largest gap over the near-parallelogram stratum.
    pub near_parallelogram_gap: Option<(f64, f64)>,
    /// Ratio of the unit square at index 0.
    pub square_ratio: f64,
}

impl ConjectureReport {
    pub fn counterexample_free(&self) -> bool {
        self.candidates.is_empty() && self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureScan {
    pub report: ConjectureReport,
    pub rows: Vec<SampleRow>,
}

/// The quad drawn for `(seed, index)`. Index 0 is always the unit square;
/// other indices draw from the disk (80%), exact parallelogram (10%) and
/// near-parallelogram (10%) strata.
pub fn conjecture_sample(seed: u64, index: u64) -> (Stratum, ConvexQuad) {
    if index == 0 {
        let sq = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)].map(Point::from);
        return (Stratum::Square, validate(sq).expect("unit square"));
    }
    let mut rng = sample_rng(seed, index);
    let u: f64 = rng.random();
    if u < 0.8 {
        return (Stratum::Disk, random_disk_quad(&mut rng));
    }
    if u < 0.9 {
        let q = random_parallelogram(&mut rng)
            .quad()
            .expect("sampled frame is valid");
        return (Stratum::Parallelogram, q);
    }
    loop {
        let frame = random_parallelogram(&mut rng);
        let jitter = NEAR_PARALLELOGRAM_JITTER * frame.l.max(frame.k);
        let pts = frame.vertices().map(|p| {
            p + Point::new(
                rng.random_range(-jitter..jitter),
                rng.random_range(-jitter..jitter),
            )
        });
        if let Ok(q) = validate(pts) {
            return (Stratum::NearParallelogram, q);
        }
    }
}

fn bucket_of(gap: f64) -> usize {
    HISTOGRAM_EDGES
        .iter()
        .position(|&e| gap < e)
        .unwrap_or(HISTOGRAM_EDGES.len())
}

/// Runs `n` samples of stream `seed` in parallel. The result depends only on
/// `(n, seed)`.
pub fn conjecture_scan(n: usize, seed: u64) -> Result<ConjectureScan> {
    if n == 0 {
        return Err(GeometryError::DomainError("conjecture scan needs n >= 1"));
    }
    let outcomes: Vec<std::result::Result<SampleRow, SampleFailure>> = (0..n as u64)
        .into_par_iter()
        .map(|index| {
            let (stratum, q) = conjecture_sample(seed, index);
            let vertices = *q.vertices();
            circumscribed_min_ratio(&q)
                .map(|c| SampleRow {
                    index,
                    stratum,
                    vertices,
                    ratio: c.ratio,
                    gap: c.ratio - FRAC_PI_2,
                })
                .map_err(|e| SampleFailure {
                    index,
                    vertices,
                    error: e.to_string(),
                })
        })
        .collect();

    let mut rows = Vec::with_capacity(n);
    let mut failures = Vec::new();
    for o in outcomes {
        match o {
            Ok(r) => rows.push(r),
            Err(f) => failures.push(f),
        }
    }
    let argmin = *rows
        .iter()
        .min_by(|a, b| a.ratio.total_cmp(&b.ratio))
        .ok_or(GeometryError::OptimizationFailed("every sample failed"))?;

    let mut histogram: Vec<HistogramBucket> = (0..=HISTOGRAM_EDGES.len())
        .map(|i| HistogramBucket {
            lo: i.checked_sub(1).map(|j| HISTOGRAM_EDGES[j]),
            hi: HISTOGRAM_EDGES.get(i).copied(),
            count: 0,
        })
        .collect();
    for r in &rows {
        histogram[bucket_of(r.gap)].count += 1;
    }

    let candidates = rows
        .iter()
        .filter(|r| r.gap < -CANDIDATE_TOL)
        .copied()
        .collect();
    let parallelogram: Vec<f64> = rows
        .iter()
        .filter(|r| matches!(r.stratum, Stratum::Parallelogram | Stratum::Square))
        .map(|r| r.gap.abs())
        .collect();
    let near: Vec<f64> = rows
        .iter()
        .filter(|r| r.stratum == Stratum::NearParallelogram)
        .map(|r| r.gap)
        .collect();
    let near_parallelogram_gap = (!near.is_empty()).then(|| {
        (
            near.iter().copied().fold(f64::INFINITY, f64::min),
            near.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        )
    });
    let square_ratio = rows
        .iter()
        .find(|r| r.stratum == Stratum::Square)
        .map_or(f64::NAN, |r| r.ratio);

    let report = ConjectureReport {
        samples: n,
        seed,
        min_ratio: argmin.ratio,
        argmin,
        histogram,
        candidates,
        failures,
        parallelogram_samples: parallelogram.len(),
        parallelogram_max_deviation: parallelogram.iter().copied().fold(0.0, f64::max),
        near_parallelogram_gap,
        square_ratio,
    };
    Ok(ConjectureScan { report, rows })
}
