//! Orthogonal least-squares lines from complex moments.
//!
//! For points `z_j`, the centroid `g` and the second central moment
//! `Z = Σ (z_j - g)²` decide the line of best fit: when `Z = 0` every line
//! through `g` is optimal, otherwise the unique optimum passes through `g`
//! parallel to `√Z`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::conic::{rotation_angle, ConicCoeffs};
use crate::error::{GeometryError, Result};
use crate::geometry::{Line, Point};

/// `|Z| < ZERO_MOMENT_TOL · Σ|z_j - g|²` selects the degenerate branch.
pub const ZERO_MOMENT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FitLine {
    UniqueLine(Line),
    /// Every line through the centroid attains the minimum.
    AllLinesThroughG,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BestFitResult {
    pub g: Complex64,
    pub z: Complex64,
    pub line: FitLine,
}

impl BestFitResult {
    pub fn centroid(&self) -> Point {
        Point::new(self.g.re, self.g.im)
    }

    pub fn unique_line(&self) -> Option<Line> {
        match self.line {
            FitLine::UniqueLine(l) => Some(l),
            FitLine::AllLinesThroughG => None,
        }
    }
}

pub fn to_complex(p: Point) -> Complex64 {
    Complex64::new(p.x, p.y)
}

pub fn to_point(z: Complex64) -> Point {
    Point::new(z.re, z.im)
}

pub fn centroid(points: &[Complex64]) -> Result<Complex64> {
    if points.is_empty() {
        return Err(GeometryError::EmptyInput);
    }
    Ok(points.iter().sum::<Complex64>() / points.len() as f64)
}

pub fn second_moment(points: &[Complex64]) -> Result<Complex64> {
    let g = centroid(points)?;
    Ok(points.iter().map(|z| (z - g) * (z - g)).sum())
}

pub fn best_fit_line(points: &[Complex64]) -> Result<BestFitResult> {
    let g = centroid(points)?;
    let z: Complex64 = points.iter().map(|p| (p - g) * (p - g)).sum();
    let spread: f64 = points.iter().map(|p| (p - g).norm_sqr()).sum();
    let line = if z.norm() < ZERO_MOMENT_TOL * spread || spread == 0.0 {
        FitLine::AllLinesThroughG
    } else {
        // Principal branch, argument in (-π/2, π/2].
        let root = z.sqrt();
        FitLine::UniqueLine(Line::new(to_point(g), Point::new(root.re, root.im))?)
    };
    Ok(BestFitResult { g, z, line })
}

/// Sum of squared perpendicular distances from the points to `line`.
pub fn sum_sq_dist(points: &[Complex64], line: &Line) -> Result<f64> {
    if line.dir.norm() == 0.0 || !line.dir.is_finite() {
        return Err(GeometryError::DegenerateLine);
    }
    let n = line.dir.norm();
    Ok(points
        .iter()
        .map(|z| {
            let d = line.dir.cross(to_point(*z) - line.point) / n;
            d * d
        })
        .sum())
}

/// The three slope expressions for the best-fit line of the parallelogram
/// `0, l, d + ki, l + d + ki`, plus the tangent of the midpoint ellipse's
/// major-axis angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeIdentityReport {
    pub d: f64,
    pub k: f64,
    pub l: f64,
    /// `Im √Z / Re √Z`.
    pub sqrt_ratio: f64,
    /// `(|Z| - Re Z) / Im Z`.
    pub moment_ratio: f64,
    /// Closed form `(√(((k+l)² + d²)((k-l)² + d²)) - (d² + l² - k²)) / 2dk`.
    pub closed_form: f64,
    /// `tan φ` from the double-angle relation, the positive root of
    /// `r tan² φ + tan φ - r = 0` with `r = dk / (d² + l² - k²)`; `None` when
    /// `k² = d² + l²` makes `r` infinite.
    pub tan_phi_root: Option<f64>,
    /// `tan φ` written as `(k² - d² - l²)/(2dk) · (1 + √(...)/(k² - d² - l²))`;
    /// `None` when `k² = d² + l²`.
    pub tan_phi_factored: Option<f64>,
    /// `tan` of the major-axis angle of the `v = k/2` conic.
    pub tan_phi_conic: f64,
    pub max_abs_gap: f64,
}

pub fn slope_identities(d: f64, k: f64, l: f64) -> Result<SlopeIdentityReport> {
    if !(k > 0.0 && l > 0.0) {
        return Err(GeometryError::ParameterOutOfRange {
            name: "k, l",
            value: k.min(l),
        });
    }
    if !(d > 0.0) {
        return Err(GeometryError::ZeroImaginaryPart);
    }
    let z = Complex64::new(d * d + l * l - k * k, 2.0 * d * k);
    let root = z.sqrt();
    let sqrt_ratio = root.im / root.re;
    let moment_ratio = (z.norm() - z.re) / z.im;
    let product = ((k + l).powi(2) + d * d) * ((k - l).powi(2) + d * d);
    let excess = k * k - d * d - l * l;
    let closed_form = (product.sqrt() + excess) / (2.0 * d * k);

    let degenerate = excess.abs() <= 1e-14 * (k * k + d * d + l * l);
    let (tan_phi_root, tan_phi_factored) = if degenerate {
        (None, None)
    } else {
        let r = d * k / (d * d + l * l - k * k);
        let disc = (1.0 + 4.0 * r * r).sqrt();
        let roots = [(-1.0 + disc) / (2.0 * r), (-1.0 - disc) / (2.0 * r)];
        let positive = roots.into_iter().find(|x| *x > 0.0);
        let factored = excess / (2.0 * d * k) * (1.0 + product.sqrt() / excess);
        (positive, Some(factored))
    };

    let conic = ConicCoeffs::new(k.powi(3), k * (d * d + l * l), -k * k * d, 0.0, 0.0, -1.0);
    let tan_phi_conic = rotation_angle(&conic)?.tan();

    let mut values = vec![sqrt_ratio, moment_ratio, closed_form, tan_phi_conic];
    values.extend(tan_phi_root);
    values.extend(tan_phi_factored);
    let mut gap = 0.0_f64;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            gap = gap.max((a - b).abs());
        }
    }
    if tan_phi_root.is_none() && !degenerate {
        gap = f64::INFINITY;
    }
    Ok(SlopeIdentityReport {
        d,
        k,
        l,
        sqrt_ratio,
        moment_ratio,
        closed_form,
        tan_phi_root,
        tan_phi_factored,
        tan_phi_conic,
        max_abs_gap: gap,
    })
}
