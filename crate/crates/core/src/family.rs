//! One-parameter families of ellipses inscribed in a convex quadrilateral.
//!
//! Rectangles and parallelograms use closed-form conics parameterized by the
//! tangency abscissa `v ∈ (0, k)`. General quadrilaterals use the dual pencil
//! spanned by the two diagonals: a dual conic `P Qᵀ + Q Pᵀ` built from a
//! pair of opposite vertices is tangent (in the degenerate sense) to all four
//! sides, and its pole of the line at infinity is the diagonal midpoint. The
//! combination `τ S₀₂ + (1-τ) S₁₃` therefore has center `(1-τ) M1 + τ M2`,
//! and its adjugate is the point conic of the inscribed ellipse.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::conic::{
    conic_to_ellipse, dual_ellipse, geometry_to_conic, line_tangency, ConicCoeffs, EllipseGeom,
    Mat3, TangencyResult,
};
use crate::error::{GeometryError, Result};
use crate::geometry::{Affine2, ImplicitLine, Point};
use crate::quad::{check_canonical, diagonal_midpoints, normalize, ConvexQuad, ParallelogramFrame};
use crate::search::golden_section_min;

/// Below this `|t - 1|` the maximizer is taken from the quadratic `A'(h) = 0`.
pub const T_NEAR_ONE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MemberParam {
    /// Center abscissa `h` in the canonical `(s, t)` frame.
    CenterAbscissa(f64),
    /// Tangency parameter `v ∈ (0, k)` of the parallelogram frame.
    Tangency(f64),
    /// Position `τ ∈ (0, 1)` of the center on the segment from `M1` to `M2`.
    LocusFraction(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InscribedMember {
    pub param: MemberParam,
    pub conic: ConicCoeffs,
    pub geom: EllipseGeom,
    /// One tangency point per side, in side order.
    pub tangency: [Point; 4],
}

impl InscribedMember {
    pub fn area(&self) -> f64 {
        self.geom.area()
    }
}

/// Center locus in the canonical frame: the line `y = L(x)` through
/// `M1 = (1/2, 1/2)` and `M2 = (s/2, t/2)`, restricted to abscissas in `I`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CenterLocus {
    pub s: f64,
    pub t: f64,
    pub m1: Point,
    pub m2: Point,
    /// Endpoints of `I`, sorted.
    pub interval: (f64, f64),
}

impl CenterLocus {
    pub fn eval(&self, x: f64) -> f64 {
        0.5 * (self.s - self.t + 2.0 * x * (self.t - 1.0)) / (self.s - 1.0)
    }

    pub fn center(&self, h: f64) -> Point {
        Point::new(h, self.eval(h))
    }

    pub fn contains(&self, h: f64) -> bool {
        self.interval.0 < h && h < self.interval.1
    }
}

pub fn locus_line(s: f64, t: f64) -> Result<CenterLocus> {
    check_canonical(s, t)?;
    let (lo, hi) = if s < 1.0 {
        (0.5 * s, 0.5)
    } else {
        (0.5, 0.5 * s)
    };
    Ok(CenterLocus {
        s,
        t,
        m1: Point::new(0.5, 0.5),
        m2: Point::new(0.5 * s, 0.5 * t),
        interval: (lo, hi),
    })
}

/// The cubic `(2h - 1)(s - 2h)(s + 2h(t - 1))`.
pub fn area_cubic(h: f64, s: f64, t: f64) -> f64 {
    (2.0 * h - 1.0) * (s - 2.0 * h) * (s + 2.0 * h * (t - 1.0))
}

/// Squared area of the inscribed ellipse centered at `(h, L(h))` in the
/// canonical quad.
pub fn area_sq(h: f64, s: f64, t: f64) -> Result<f64> {
    let locus = locus_line(s, t)?;
    let (lo, hi) = locus.interval;
    let slack = 1e-14 * hi;
    if !(h >= lo - slack && h <= hi + slack) {
        return Err(GeometryError::ParameterOutOfRange {
            name: "h",
            value: h,
        });
    }
    Ok(PI * PI / (4.0 * (s - 1.0).powi(2)) * area_cubic(h, s, t).max(0.0))
}

/// Center abscissa `h_a` of the maximal-area inscribed ellipse.
pub fn max_area_param(s: f64, t: f64) -> Result<f64> {
    check_canonical(s, t)?;
    let p = t - 1.0;
    if p.abs() < T_NEAR_ONE {
        // A'(h)/2 = -12p h² + 4(ps - s + p) h + (s² + s - ps); take the root
        // that stays finite as p -> 0.
        let a2 = -12.0 * p;
        let a1 = 4.0 * (p * s - s + p);
        let a0 = s * s + s - p * s;
        let disc = (a1 * a1 - 4.0 * a2 * a0).max(0.0);
        let q = -0.5 * (a1 + a1.signum() * disc.sqrt());
        return Ok(a0 / q);
    }
    let root = (p * p + s * s * (t * t - t + 1.0) - s * (t * t - 3.0 * t + 2.0)).sqrt();
    Ok((s * t + t - 2.0 * s - 1.0 + root) / (6.0 * p))
}

fn frame_side_lines(l: f64, k: f64, d: f64) -> [ImplicitLine; 4] {
    let o = Point::new(0.0, 0.0);
    let p = Point::new(l, 0.0);
    let r = Point::new(d + l, k);
    let q = Point::new(d, k);
    [(o, p), (p, r), (r, q), (q, o)]
        .map(|(a, b)| ImplicitLine::through(a, b).expect("distinct frame vertices"))
}

fn tangency_points(conic: &ConicCoeffs, lines: &[ImplicitLine; 4]) -> Result<[Point; 4]> {
    let results = side_tangency(conic, lines)?;
    Ok(results.map(|r| r.vertex))
}

/// Tangency test of `conic` against each of the four lines.
pub fn side_tangency(
    conic: &ConicCoeffs,
    lines: &[ImplicitLine; 4],
) -> Result<[TangencyResult; 4]> {
    let mut out = [None; 4];
    for (slot, line) in out.iter_mut().zip(lines) {
        *slot = Some(line_tangency(conic, line)?);
    }
    Ok(out.map(|r| r.expect("filled")))
}

fn check_v(k: f64, v: f64) -> Result<()> {
    if v > 0.0 && v < k {
        Ok(())
    } else {
        Err(GeometryError::ParameterOutOfRange {
            name: "v",
            value: v,
        })
    }
}

/// Ellipse inscribed in the rectangle `[0, l] × [0, k]`, tangent to the
/// bottom side at `(l v / k, 0)`.
pub fn rectangle_family(l: f64, k: f64, v: f64) -> Result<InscribedMember> {
    ParallelogramFrame::new(l, k, 0.0)?;
    check_v(k, v)?;
    let conic = ConicCoeffs::new(
        k * k,
        l * l,
        -l * (k - 2.0 * v),
        -2.0 * l * k * v,
        -2.0 * l * l * v,
        l * l * v * v,
    );
    let geom = conic_to_ellipse(&conic)?;
    let tangency = [
        Point::new(l * v / k, 0.0),
        Point::new(l, k - v),
        Point::new(l * (k - v) / k, k),
        Point::new(0.0, v),
    ];
    Ok(InscribedMember {
        param: MemberParam::Tangency(v),
        conic,
        geom,
        tangency,
    })
}

/// Closed-form semi-axes `(a², b²)` of the rectangle member.
pub fn rectangle_semi_axes_sq(l: f64, k: f64, v: f64) -> (f64, f64) {
    let num = 2.0 * l * l * (k - v) * v;
    let s = k * k + l * l;
    let root = (s * s - 16.0 * l * l * (k - v) * v).max(0.0).sqrt();
    (num / (s - root), num / (s + root))
}

/// Ellipse inscribed in the parallelogram `(0,0), (l,0), (d+l,k), (d,k)`.
pub fn parallelogram_family(l: f64, k: f64, d: f64, v: f64) -> Result<InscribedMember> {
    ParallelogramFrame::new(l, k, d)?;
    check_v(k, v)?;
    let conic = ConicCoeffs::new(
        k.powi(3),
        k * (d + l).powi(2) - 4.0 * d * l * v,
        -k * (k * (d + l) - 2.0 * l * v),
        -2.0 * k * k * l * v,
        2.0 * k * l * v * (d - l),
        k * l * l * v * v,
    );
    let geom = conic_to_ellipse(&conic)?;
    let tangency = tangency_points(&conic, &frame_side_lines(l, k, d))?;
    Ok(InscribedMember {
        param: MemberParam::Tangency(v),
        conic,
        geom,
        tangency,
    })
}

/// Parallelogram family member mapped through the frame's placement.
pub fn parallelogram_member(frame: &ParallelogramFrame, v: f64) -> Result<InscribedMember> {
    let local = parallelogram_family(frame.l, frame.k, frame.d, v)?;
    let conic = local.conic.transformed(&frame.placement)?;
    let geom = match rigid_angle(&frame.placement) {
        Some(angle) => EllipseGeom::new(
            frame.placement.apply(local.geom.center),
            local.geom.a,
            local.geom.b,
            local.geom.phi + angle,
        )?,
        None => conic_to_ellipse(&conic)?,
    };
    Ok(InscribedMember {
        param: local.param,
        conic,
        geom,
        tangency: local.tangency.map(|p| frame.placement.apply(p)),
    })
}

/// Rotation angle of an orientation-preserving isometry.
fn rigid_angle(map: &Affine2) -> Option<f64> {
    let [[a, b], [c, d]] = map.m;
    let orthonormal =
        (a - d).abs() < 1e-14 && (b + c).abs() < 1e-14 && (a.hypot(c) - 1.0).abs() < 1e-14;
    orthonormal.then(|| c.atan2(a))
}

/// The `v = k/2` member, tangent at the four side midpoints.
pub fn midpoint_ellipse(frame: &ParallelogramFrame) -> Result<InscribedMember> {
    parallelogram_member(frame, 0.5 * frame.k)
}

fn homogeneous(p: Point) -> [f64; 3] {
    [p.x, p.y, 1.0]
}

fn symmetric_pair(p: [f64; 3], q: [f64; 3]) -> Mat3 {
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = p[i] * q[j] + q[i] * p[j];
        }
    }
    m
}

/// Inscribed ellipse whose center is `(1 - τ) M1 + τ M2`.
pub fn member_at_fraction(q: &ConvexQuad, tau: f64) -> Result<InscribedMember> {
    if q.is_parallelogram() {
        return Err(GeometryError::IsParallelogram);
    }
    if !(tau > 0.0 && tau < 1.0) {
        return Err(GeometryError::CenterOffLocus);
    }
    let v = q.vertices();
    let scale = q.diameter();
    // Work relative to the centroid and at unit scale to keep the adjugate well conditioned.
    let origin = q.centroid();
    let local = |p: Point| homogeneous((1.0 / scale) * (p - origin));
    let s02 = symmetric_pair(local(v[0]), local(v[2]));
    let s13 = symmetric_pair(local(v[1]), local(v[3]));
    let mut dual = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            dual[i][j] = tau * s02[i][j] + (1.0 - tau) * s13[i][j];
        }
    }
    let local_geom = dual_ellipse(&dual).ok_or(GeometryError::CenterOffLocus)?;
    let geom = EllipseGeom::new(
        origin + scale * local_geom.center,
        scale * local_geom.a,
        scale * local_geom.b,
        local_geom.phi,
    )?;
    let conic = geometry_to_conic(&geom).canonical();
    let tangency = tangency_points(&conic, &q.side_lines())?;
    let param = match normalize(q) {
        Ok(n) => MemberParam::CenterAbscissa(n.to_canonical.apply(geom.center).x),
        Err(_) => MemberParam::LocusFraction(tau),
    };
    Ok(InscribedMember {
        param,
        conic,
        geom,
        tangency,
    })
}

/// Position of `center` along `M1 → M2`, or `CenterOffLocus` when it is not
/// strictly inside the segment.
pub fn locus_fraction(q: &ConvexQuad, center: Point) -> Result<f64> {
    if q.is_parallelogram() {
        return Err(GeometryError::IsParallelogram);
    }
    let (m1, m2) = diagonal_midpoints(q);
    let seg = m2 - m1;
    let rel = center - m1;
    let len2 = seg.dot(seg);
    let off_line = seg.cross(rel).abs() / len2.sqrt();
    if !center.is_finite() || off_line > 1e-9 * q.diameter() {
        return Err(GeometryError::CenterOffLocus);
    }
    let tau = rel.dot(seg) / len2;
    if tau > 0.0 && tau < 1.0 {
        Ok(tau)
    } else {
        Err(GeometryError::CenterOffLocus)
    }
}

/// The unique inscribed ellipse with the given center.
pub fn ellipse_at_center(q: &ConvexQuad, center: Point) -> Result<InscribedMember> {
    let tau = locus_fraction(q, center)?;
    member_at_fraction(q, tau)
}

/// Maximal-area inscribed ellipse.
pub fn max_area_ellipse(q: &ConvexQuad) -> Result<InscribedMember> {
    if q.is_parallelogram() {
        return midpoint_ellipse(&crate::quad::parallelogram_frame(q)?);
    }
    if q.is_trapezoid() {
        return Err(GeometryError::TrapezoidUnsupported);
    }
    let n = normalize(q)?;
    let h = max_area_param(n.s, n.t)?;
    let locus = locus_line(n.s, n.t)?;
    let center = n.from_canonical.apply(locus.center(h));
    let mut member = ellipse_at_center(q, center)?;
    member.param = MemberParam::CenterAbscissa(h);
    Ok(member)
}

/// Maximal-area member found by golden-section search over the dual-pencil
/// parameter. Works for every non-parallelogram, trapezoids included.
pub fn max_area_by_search(q: &ConvexQuad) -> Result<InscribedMember> {
    let eps = 1e-9;
    let neg_area = |tau: f64| member_at_fraction(q, tau).map(|m| -m.area()).unwrap_or(0.0);
    let best = golden_section_min(neg_area, eps, 1.0 - eps, 1e-12, 300);
    member_at_fraction(q, best.x)
}

/// `n` members sampled on an open uniform grid of the family parameter:
/// `v` for parallelograms, `h ∈ I` for non-trapezoids, and the locus
/// fraction `τ` for trapezoids.
pub fn family_sweep(q: &ConvexQuad, n: usize) -> Result<Vec<InscribedMember>> {
    let grid = |i: usize| (i + 1) as f64 / (n + 1) as f64;
    if q.is_parallelogram() {
        let frame = crate::quad::parallelogram_frame(q)?;
        return (0..n)
            .map(|i| parallelogram_member(&frame, frame.k * grid(i)))
            .collect();
    }
    match normalize(q) {
        Ok(norm) => {
            let locus = locus_line(norm.s, norm.t)?;
            let (lo, hi) = locus.interval;
            (0..n)
                .map(|i| {
                    let h = lo + (hi - lo) * grid(i);
                    let mut m = ellipse_at_center(q, norm.from_canonical.apply(locus.center(h)))?;
                    m.param = MemberParam::CenterAbscissa(h);
                    Ok(m)
                })
                .collect()
        }
        Err(GeometryError::IsTrapezoid) => (0..n).map(|i| member_at_fraction(q, grid(i))).collect(),
        Err(e) => Err(e),
    }
}
