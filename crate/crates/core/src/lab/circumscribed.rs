//! Minimal-area ellipse through the four vertices of a convex quadrilateral.
//!
//! Conics through the vertices form the pencil spanned by the two pairs of
//! opposite side lines. With both products oriented positive inside the
//! quadrilateral, the ellipses of the pencil are an arc of
//! `cos θ · ℓ01ℓ23 + sin θ · ℓ12ℓ30`, `θ ∈ (0, π/2)`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::conic::{
    classify_conic, conic_to_ellipse, det3, ConicCoeffs, ConicKind, EllipseGeom, Mat3,
};
use crate::error::{GeometryError, Result};
use crate::geometry::{Affine2, ImplicitLine};
use crate::quad::ConvexQuad;
use crate::search::{bisect, multistart_golden_min};

const ARC_SAMPLES: usize = 64;
const ANGLE_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircumscribedEllipse {
    pub conic: ConicCoeffs,
    pub geom: EllipseGeom,
    /// Pencil angle of the minimizer.
    pub theta: f64,
    /// Ellipse area over quadrilateral area.
    pub ratio: f64,
    /// Largest `|conic(vertex)|` of the canonical-scaled conic.
    pub vertex_residual: f64,
}

fn line_product(p: &ImplicitLine, q: &ImplicitLine) -> Mat3 {
    let a = p.homogeneous();
    let b = q.homogeneous();
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = 0.5 * (a[i] * b[j] + a[j] * b[i]);
        }
    }
    m
}

fn combine(g1: &Mat3, g2: &Mat3, theta: f64) -> Mat3 {
    let (s, c) = theta.sin_cos();
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = c * g1[i][j] + s * g2[i][j];
        }
    }
    m
}

fn disc(m: &Mat3) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[0][1]
}

/// `π |det M| / (AB - C²)^{3/2}`, the area enclosed by a real ellipse.
fn pencil_area(m: &Mat3) -> f64 {
    let d = disc(m);
    if d <= 0.0 {
        return f64::INFINITY;
    }
    std::f64::consts::PI * det3(m).abs() / d.powf(1.5)
}

/// Minimal-area circumscribed ellipse and its area ratio, which is at least
/// `π/2` with equality exactly for parallelograms.
pub fn circumscribed_min_ratio(q: &ConvexQuad) -> Result<CircumscribedEllipse> {
    let scale = q.diameter();
    let origin = q.centroid();
    let local = q.transformed(&Affine2::new(
        [[1.0 / scale, 0.0], [0.0, 1.0 / scale]],
        -(1.0 / scale) * origin,
    ))?;
    let v = local.vertices();
    let lines = [
        ImplicitLine::through(v[0], v[1])?,
        ImplicitLine::through(v[1], v[2])?,
        ImplicitLine::through(v[2], v[3])?,
        ImplicitLine::through(v[3], v[0])?,
    ];
    let g1 = line_product(&lines[0], &lines[2]);
    let g2 = line_product(&lines[1], &lines[3]);
    let d = |theta: f64| disc(&combine(&g1, &g2, theta));

    let step = FRAC_PI_2 / ARC_SAMPLES as f64;
    let peak = (1..ARC_SAMPLES)
        .map(|i| i as f64 * step)
        .max_by(|a, b| d(*a).total_cmp(&d(*b)))
        .ok_or(GeometryError::OptimizationFailed("empty pencil arc"))?;
    if d(peak) <= 0.0 {
        return Err(GeometryError::OptimizationFailed(
            "no ellipse in the vertex pencil",
        ));
    }
    let lo = bisect(d, 0.0, peak, ANGLE_TOL, 200).unwrap_or(0.0);
    let hi = bisect(d, peak, FRAC_PI_2, ANGLE_TOL, 200).unwrap_or(FRAC_PI_2);
    let best = multistart_golden_min(
        |th| pencil_area(&combine(&g1, &g2, th)),
        lo,
        hi,
        3,
        ANGLE_TOL,
        400,
    );
    if !best.value.is_finite() {
        return Err(GeometryError::OptimizationFailed(
            "pencil area is unbounded",
        ));
    }

    let local_conic = ConicCoeffs::from_matrix(&combine(&g1, &g2, best.x));
    if classify_conic(&local_conic) != ConicKind::Ellipse {
        return Err(GeometryError::NotAnEllipse);
    }
    let to_world = Affine2::new([[scale, 0.0], [0.0, scale]], origin);
    let conic = local_conic.transformed(&to_world)?.canonical();
    let geom = conic_to_ellipse(&conic)?;
    let ratio = best.value / local.area();
    let vertex_residual = q
        .vertices()
        .iter()
        .map(|p| conic.eval(*p).abs())
        .fold(0.0, f64::max);
    Ok(CircumscribedEllipse {
        conic,
        geom,
        theta: best.x,
        ratio,
        vertex_residual,
    })
}
