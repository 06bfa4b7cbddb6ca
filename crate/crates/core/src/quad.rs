//! Convex quadrilateral ingestion, classification and normalization.

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::geometry::{Affine2, ImplicitLine, Point};

/// Opposite sides `u`, `v` are parallel when `|u × v| < PARALLEL_TOL |u||v|`.
pub const PARALLEL_TOL: f64 = 1e-10;
/// Relative tolerance of the Pitot test for tangential quadrilaterals.
pub const TANGENTIAL_TOL: f64 = 1e-9;
/// Consecutive edges with `|u × v| <= COLLINEAR_TOL |u||v|` are collinear.
pub const COLLINEAR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct QuadFlags {
    pub is_parallelogram: bool,
    pub is_trapezoid: bool,
    pub is_tangential: bool,
}

/// Four vertices in strictly convex counterclockwise order, starting from the
/// lexicographically smallest vertex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvexQuad {
    vertices: [Point; 4],
    flags: QuadFlags,
}

impl ConvexQuad {
    pub fn vertices(&self) -> &[Point; 4] {
        &self.vertices
    }

    pub fn flags(&self) -> QuadFlags {
        self.flags
    }

    pub fn is_parallelogram(&self) -> bool {
        self.flags.is_parallelogram
    }

    pub fn is_trapezoid(&self) -> bool {
        self.flags.is_trapezoid
    }

    pub fn is_tangential(&self) -> bool {
        self.flags.is_tangential
    }

    /// Sides `v_i v_{i+1}` in CCW order.
    pub fn sides(&self) -> [(Point, Point); 4] {
        let v = &self.vertices;
        [(v[0], v[1]), (v[1], v[2]), (v[2], v[3]), (v[3], v[0])]
    }

    pub fn side_lines(&self) -> [ImplicitLine; 4] {
        // Validated vertices are distinct, so every side defines a line.
        self.sides().map(|(p, q)| {
            ImplicitLine::through(p, q).expect("validated quad has distinct vertices")
        })
    }

    pub fn side_midpoints(&self) -> [Point; 4] {
        self.sides().map(|(p, q)| p.midpoint(q))
    }

    pub fn centroid(&self) -> Point {
        let v = &self.vertices;
        0.25 * (v[0] + v[1] + v[2] + v[3])
    }

    /// Largest vertex-to-vertex distance.
    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let mut d = 0.0_f64;
        for i in 0..4 {
            for j in i + 1..4 {
                d = d.max(v[i].distance(v[j]));
            }
        }
        d
    }

    pub fn area(&self) -> f64 {
        quad_area(self)
    }

    /// Image under an affine map, re-validated.
    pub fn transformed(&self, map: &Affine2) -> Result<ConvexQuad> {
        validate(self.vertices.map(|p| map.apply(p)))
    }
}

/// Sorts the points into CCW convex order and classifies the quadrilateral.
pub fn validate(points: [Point; 4]) -> Result<ConvexQuad> {
    if points.iter().any(|p| !p.is_finite()) {
        return Err(GeometryError::NonFinite);
    }
    let mut diameter = 0.0_f64;
    let mut closest = f64::INFINITY;
    for i in 0..4 {
        for j in i + 1..4 {
            let d = points[i].distance(points[j]);
            diameter = diameter.max(d);
            closest = closest.min(d);
        }
    }
    if closest <= 1e-12 * diameter || diameter == 0.0 {
        return Err(GeometryError::DegenerateVertices("coincident vertices"));
    }

    let center = 0.25 * (points[0] + points[1] + points[2] + points[3]);
    let mut sorted = points;
    sorted.sort_by(|p, q| {
        let ap = (p.y - center.y).atan2(p.x - center.x);
        let aq = (q.y - center.y).atan2(q.x - center.x);
        ap.total_cmp(&aq)
    });
    let start = (0..4)
        .min_by(|&i, &j| {
            sorted[i]
                .x
                .total_cmp(&sorted[j].x)
                .then(sorted[i].y.total_cmp(&sorted[j].y))
        })
        .unwrap_or(0);
    sorted.rotate_left(start);

    let edges: [Point; 4] = std::array::from_fn(|i| sorted[(i + 1) % 4] - sorted[i]);
    for i in 0..4 {
        let (u, v) = (edges[i], edges[(i + 1) % 4]);
        let cross = u.cross(v);
        if cross.abs() <= COLLINEAR_TOL * u.norm() * v.norm() {
            return Err(GeometryError::DegenerateVertices(
                "three collinear vertices",
            ));
        }
        if cross < 0.0 {
            return Err(GeometryError::NotConvex);
        }
    }

    let parallel = |u: Point, v: Point| u.cross(v).abs() < PARALLEL_TOL * u.norm() * v.norm();
    let p02 = parallel(edges[0], edges[2]);
    let p13 = parallel(edges[1], edges[3]);
    let lens = edges.map(Point::norm);
    let perimeter: f64 = lens.iter().sum();
    let pitot = ((lens[0] + lens[2]) - (lens[1] + lens[3])).abs();
    let flags = QuadFlags {
        is_parallelogram: p02 && p13,
        is_trapezoid: p02 || p13,
        is_tangential: pitot < TANGENTIAL_TOL * perimeter,
    };
    Ok(ConvexQuad {
        vertices: sorted,
        flags,
    })
}

pub fn quad_area(q: &ConvexQuad) -> f64 {
    let v = q.vertices();
    let (a, b, c) = (v[1] - v[0], v[2] - v[0], v[3] - v[0]);
    0.5 * (a.cross(b) + b.cross(c)).abs()
}

/// Midpoints of the diagonals: `M1` of `v1 v3`, `M2` of `v0 v2`.
///
/// For the canonical quad `(0,0), (1,0), (s,t), (0,1)` this gives
/// `M1 = (1/2, 1/2)` and `M2 = (s/2, t/2)`.
pub fn diagonal_midpoints(q: &ConvexQuad) -> (Point, Point) {
    let v = q.vertices();
    (v[1].midpoint(v[3]), v[0].midpoint(v[2]))
}

/// Affine normal form `(0,0), (1,0), (0,1), (s,t)` of a non-trapezoid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizedQuad {
    pub s: f64,
    pub t: f64,
    pub to_canonical: Affine2,
    pub from_canonical: Affine2,
    /// Index of the vertex sent to the origin.
    pub anchor: usize,
}

impl NormalizedQuad {
    /// `|det|` of `from_canonical`: canonical areas scale by this factor.
    pub fn jacobian(&self) -> f64 {
        self.from_canonical.det().abs()
    }
}

/// Canonical `(s, t)` form.
///
/// Any vertex can serve as the anchor; the one chosen is where `s + t` is
/// largest (equivalently, where the corner triangle has the smallest share of
/// the area), ties broken by the smaller pair. The two neighbours are
/// ordered so that `s <= t`. Both rules are affine invariant, so congruent
/// and affinely equivalent quads normalize to the same pair.
pub fn normalize(q: &ConvexQuad) -> Result<NormalizedQuad> {
    if q.is_trapezoid() {
        return Err(GeometryError::IsTrapezoid);
    }
    let v = q.vertices();
    let mut best: Option<NormalizedQuad> = None;
    for anchor in 0..4 {
        let origin = v[anchor];
        let next = v[(anchor + 1) % 4];
        let prev = v[(anchor + 3) % 4];
        let opposite = v[(anchor + 2) % 4];
        for (e1, e2) in [
            (next - origin, prev - origin),
            (prev - origin, next - origin),
        ] {
            let from = Affine2::from_frame(origin, e1, e2);
            let to = from.inverse()?;
            let st = to.apply(opposite);
            if st.x > st.y {
                continue;
            }
            let cand = NormalizedQuad {
                s: st.x,
                t: st.y,
                to_canonical: to,
                from_canonical: from,
                anchor,
            };
            best = match best {
                None => Some(cand),
                Some(cur) => {
                    let (sc, sb) = (cand.s + cand.t, cur.s + cur.t);
                    let tie = (sc - sb).abs() <= 1e-12 * sb;
                    if (!tie && sc > sb) || (tie && cand.s < cur.s - 1e-12 * sb) {
                        Some(cand)
                    } else {
                        Some(cur)
                    }
                }
            };
        }
    }
    let n = best.ok_or(GeometryError::IsTrapezoid)?;
    check_canonical(n.s, n.t)?;
    Ok(n)
}

/// Checks `s, t > 0`, `s + t > 1`, `s != 1 != t`.
pub fn check_canonical(s: f64, t: f64) -> Result<()> {
    let ok = s.is_finite()
        && t.is_finite()
        && s > 0.0
        && t > 0.0
        && s + t > 1.0
        && (s - 1.0).abs() > 1e-12
        && (t - 1.0).abs() > 1e-12;
    if ok {
        Ok(())
    } else {
        Err(GeometryError::CanonicalFormViolated { s, t })
    }
}

/// The canonical quad for a pair `(s, t)`.
pub fn canonical_quad(s: f64, t: f64) -> Result<ConvexQuad> {
    check_canonical(s, t)?;
    validate([
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(s, t),
        Point::new(0.0, 1.0),
    ])
}

/// Parallelogram with vertices `(0,0), (l,0), (d+l,k), (d,k)` placed rigidly
/// in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParallelogramFrame {
    pub l: f64,
    pub k: f64,
    pub d: f64,
    /// Rigid motion from the frame to the input coordinates.
    pub placement: Affine2,
}

impl ParallelogramFrame {
    pub fn new(l: f64, k: f64, d: f64) -> Result<Self> {
        Self::placed(l, k, d, Affine2::IDENTITY)
    }

    pub fn placed(l: f64, k: f64, d: f64, placement: Affine2) -> Result<Self> {
        if !(l > 0.0 && l.is_finite()) {
            return Err(GeometryError::ParameterOutOfRange {
                name: "l",
                value: l,
            });
        }
        if !(k > 0.0 && k.is_finite()) {
            return Err(GeometryError::ParameterOutOfRange {
                name: "k",
                value: k,
            });
        }
        if !(d >= 0.0 && d.is_finite()) {
            return Err(GeometryError::ParameterOutOfRange {
                name: "d",
                value: d,
            });
        }
        Ok(Self { l, k, d, placement })
    }

    /// Vertices in frame coordinates, CCW: `O, P, R, Q`.
    pub fn frame_vertices(&self) -> [Point; 4] {
        [
            Point::new(0.0, 0.0),
            Point::new(self.l, 0.0),
            Point::new(self.d + self.l, self.k),
            Point::new(self.d, self.k),
        ]
    }

    pub fn vertices(&self) -> [Point; 4] {
        self.frame_vertices().map(|p| self.placement.apply(p))
    }

    pub fn quad(&self) -> Result<ConvexQuad> {
        validate(self.vertices())
    }

    pub fn is_square(&self, tol: f64) -> bool {
        self.d.abs() <= tol * self.l && (self.l - self.k).abs() <= tol * self.l
    }
}

/// Reads `(l, k, d)` and a rigid placement off a parallelogram.
///
/// The base edge starts at the first vertex (in CCW order) whose interior
/// angle is at most π/2, so that the shear `d` is nonnegative.
pub fn parallelogram_frame(q: &ConvexQuad) -> Result<ParallelogramFrame> {
    if !q.is_parallelogram() {
        return Err(GeometryError::NotParallelogram);
    }
    let v = q.vertices();
    for i in 0..4 {
        let origin = v[i];
        let base = v[(i + 1) % 4] - origin;
        let side = v[(i + 3) % 4] - origin;
        let l = base.norm();
        let angle = base.y.atan2(base.x);
        let local = side.rotated(-angle);
        if local.x >= -1e-12 * l {
            return ParallelogramFrame::placed(
                l,
                local.y,
                local.x.max(0.0),
                Affine2::rigid(angle, origin),
            );
        }
    }
    Err(GeometryError::NotParallelogram)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: [(f64, f64); 4]) -> [Point; 4] {
        v.map(Point::from)
    }

    #[test]
    fn unit_square_any_order() {
        let q = validate(pts([(1.0, 1.0), (0.0, 0.0), (0.0, 1.0), (1.0, 0.0)])).unwrap();
        assert_eq!(
            q.vertices(),
            &pts([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
        );
        assert!(q.is_parallelogram() && q.is_trapezoid() && q.is_tangential());
        assert_eq!(quad_area(&q), 1.0);
        let (m1, m2) = diagonal_midpoints(&q);
        assert_eq!(m1, Point::new(0.5, 0.5));
        assert_eq!(m2, Point::new(0.5, 0.5));
    }

    #[test]
    fn self_intersecting_order_is_repaired() {
        let q = validate(pts([(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)])).unwrap();
        assert_eq!(
            q.vertices(),
            &pts([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
        );
    }

    #[test]
    fn generic_quad_has_no_flags() {
        let q = validate(pts([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (2.0, 3.0)])).unwrap();
        assert_eq!(q.flags(), QuadFlags::default());
        assert!((quad_area(&q) - 2.5).abs() < 1e-15);
        let (m1, m2) = diagonal_midpoints(&q);
        assert_eq!(m1, Point::new(0.5, 0.5));
        assert_eq!(m2, Point::new(1.0, 1.5));
    }

    #[test]
    fn rejects_bad_inputs() {
        let reflex = pts([(0.0, 0.0), (2.0, 0.0), (0.0, 2.0), (0.5, 0.5)]);
        assert_eq!(validate(reflex), Err(GeometryError::NotConvex));
        let collinear = pts([(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (0.0, 1.0)]);
        assert!(matches!(
            validate(collinear),
            Err(GeometryError::DegenerateVertices(_))
        ));
        let repeated = pts([(0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        assert!(matches!(
            validate(repeated),
            Err(GeometryError::DegenerateVertices(_))
        ));
        let nan = pts([(f64::NAN, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        assert_eq!(validate(nan), Err(GeometryError::NonFinite));
    }

    #[test]
    fn parallelogram_area() {
        let q = validate(pts([(0.0, 0.0), (3.0, 0.0), (4.0, 2.0), (1.0, 2.0)])).unwrap();
        assert!(q.is_parallelogram());
        assert!((quad_area(&q) - 6.0).abs() < 1e-15);
    }

    #[test]
    fn normalize_canonical_is_identity() {
        let q = validate(pts([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (2.0, 3.0)])).unwrap();
        let n = normalize(&q).unwrap();
        assert_eq!((n.s, n.t), (2.0, 3.0));
        assert_eq!(n.from_canonical, Affine2::IDENTITY);
        assert_eq!(
            n.to_canonical.apply(Point::new(2.0, 3.0)),
            Point::new(2.0, 3.0)
        );
    }

    #[test]
    fn normalize_rotated_quad() {
        let center = Point::new(5.0, 5.0);
        let rot = Affine2::rigid(30f64.to_radians(), center)
            .compose(&Affine2::new([[1.0, 0.0], [0.0, 1.0]], -center));
        let q =
            validate(pts([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (2.0, 3.0)]).map(|p| rot.apply(p)))
                .unwrap();
        let n = normalize(&q).unwrap();
        assert!((n.s - 2.0).abs() < 1e-12 && (n.t - 3.0).abs() < 1e-12);
    }

    #[test]
    fn normalize_refuses_trapezoid() {
        let q = validate(pts([(0.0, 0.0), (2.0, 0.0), (1.5, 1.0), (0.5, 1.0)])).unwrap();
        assert!(q.is_trapezoid() && !q.is_parallelogram());
        assert_eq!(normalize(&q), Err(GeometryError::IsTrapezoid));
    }

    #[test]
    fn frame_of_rectangle() {
        let q = validate(pts([(0.0, 0.0), (1.0, 0.0), (1.0, 2.0), (0.0, 2.0)])).unwrap();
        let f = parallelogram_frame(&q).unwrap();
        assert_eq!((f.l, f.k, f.d), (1.0, 2.0, 0.0));
        assert_eq!(f.placement, Affine2::IDENTITY);
    }

    #[test]
    fn frame_of_sheared() {
        let q = validate(pts([(0.0, 0.0), (2.0, 0.0), (3.0, 1.0), (1.0, 1.0)])).unwrap();
        let f = parallelogram_frame(&q).unwrap();
        assert!(
            (f.l - 2.0).abs() < 1e-15 && (f.k - 1.0).abs() < 1e-15 && (f.d - 1.0).abs() < 1e-15
        );
    }

    #[test]
    fn frame_of_rotated_square() {
        let rot = Affine2::rigid(std::f64::consts::FRAC_PI_4, Point::ORIGIN);
        let q =
            validate(pts([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).map(|p| rot.apply(p)))
                .unwrap();
        let f = parallelogram_frame(&q).unwrap();
        assert!((f.l - 1.0).abs() < 1e-12 && (f.k - 1.0).abs() < 1e-12 && f.d.abs() < 1e-12);
        let m = f.placement.m;
        let angle = m[1][0].atan2(m[0][0]);
        let quarter = std::f64::consts::FRAC_PI_2;
        let off = (angle - std::f64::consts::FRAC_PI_4).rem_euclid(quarter);
        assert!(off.min(quarter - off) < 1e-12);
        assert!((f.placement.det() - 1.0).abs() < 1e-12);
        for (a, b) in f.vertices().iter().zip(q.vertices()) {
            assert!((*a - *b).norm() < 1e-12);
        }
        let fq = f.quad().unwrap();
        assert!(fq.is_parallelogram());
    }

    #[test]
    fn frame_requires_parallelogram() {
        let q = validate(pts([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (2.0, 3.0)])).unwrap();
        assert_eq!(
            parallelogram_frame(&q),
            Err(GeometryError::NotParallelogram)
        );
    }
}
