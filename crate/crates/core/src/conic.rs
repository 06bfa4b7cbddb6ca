//! Conic-section algebra for `A x² + B y² + 2C xy + D x + E y + F = 0`.
//!
//! The cross coefficient is stored as `c`, so the symmetric matrix of the
//! conic is
//!
//! ```text
//! | A    C    D/2 |
//! | C    B    E/2 |
//! | D/2  E/2  F   |
//! ```

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::geometry::{Affine2, ImplicitLine, Point};

/// Relative cutoff on the 3×3 determinant below which a conic is degenerate.
pub const DEGENERACY_TOL: f64 = 1e-12;
/// Cutoff on the normalized restricted-quadratic discriminant for tangency.
pub const TANGENCY_TOL: f64 = 1e-9;
/// Relative cutoff used when deciding `C = 0` or `A = B` in the angle table.
const BRANCH_TOL: f64 = 1e-12;

pub type Mat3 = [[f64; 3]; 3];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConicCoeffs {
    pub a: f64,
    pub b: f64,
    /// Half of the `xy` coefficient.
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConicKind {
    Ellipse,
    Parabola,
    Hyperbola,
    Degenerate,
}

impl ConicCoeffs {
    pub const fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Self {
        Self { a, b, c, d, e, f }
    }

    pub fn to_array(&self) -> [f64; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    pub fn from_array(v: [f64; 6]) -> Self {
        Self::new(v[0], v[1], v[2], v[3], v[4], v[5])
    }

    pub fn matrix(&self) -> Mat3 {
        [
            [self.a, self.c, 0.5 * self.d],
            [self.c, self.b, 0.5 * self.e],
            [0.5 * self.d, 0.5 * self.e, self.f],
        ]
    }

    /// Reads a symmetric matrix; off-diagonal entries are averaged.
    pub fn from_matrix(m: &Mat3) -> Self {
        Self::new(
            m[0][0],
            m[1][1],
            0.5 * (m[0][1] + m[1][0]),
            m[0][2] + m[2][0],
            m[1][2] + m[2][1],
            m[2][2],
        )
    }

    pub fn eval(&self, p: Point) -> f64 {
        let (x, y) = (p.x, p.y);
        self.a * x * x + self.b * y * y + 2.0 * self.c * x * y + self.d * x + self.e * y + self.f
    }

    pub fn max_abs(&self) -> f64 {
        self.to_array().iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self::from_array(self.to_array().map(|v| k * v))
    }

    /// Projective representative: the largest-magnitude coefficient becomes `+1`.
    pub fn canonical(&self) -> Self {
        let arr = self.to_array();
        let pivot = arr
            .iter()
            .copied()
            .fold(0.0_f64, |m, v| if v.abs() > m.abs() { v } else { m });
        if pivot == 0.0 {
            return *self;
        }
        self.scaled(1.0 / pivot)
    }

    /// Component-wise comparison of canonical representatives.
    pub fn proportional_to(&self, other: &ConicCoeffs, tol: f64) -> bool {
        let p = self.canonical().to_array();
        let q = other.canonical().to_array();
        p.iter().zip(q.iter()).all(|(x, y)| (x - y).abs() <= tol)
    }

    /// Discriminant of the quadratic part, `AB - C²`.
    pub fn quadratic_discriminant(&self) -> f64 {
        self.a * self.b - self.c * self.c
    }

    pub fn determinant(&self) -> f64 {
        det3(&self.matrix())
    }

    /// Image of the conic under the affine map `map` (the curve is pushed forward).
    pub fn transformed(&self, map: &Affine2) -> Result<Self> {
        let inv = map.inverse()?.homogeneous();
        let m = self.matrix();
        Ok(Self::from_matrix(&congruence(&m, &inv)))
    }
}

/// `Hᵀ M H`.
pub(crate) fn congruence(m: &Mat3, h: &Mat3) -> Mat3 {
    let mut mh = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            mh[i][j] = (0..3).map(|k| m[i][k] * h[k][j]).sum();
        }
    }
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| h[k][i] * mh[k][j]).sum();
        }
    }
    out
}

pub fn det3(m: &Mat3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Classical adjugate (transpose of the cofactor matrix).
pub fn adjugate(m: &Mat3) -> Mat3 {
    let cof =
        |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    [
        [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
        [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
        [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
    ]
}

/// Reduces an angle modulo π into `[0, π)`.
pub fn reduce_angle(phi: f64) -> f64 {
    let r = phi.rem_euclid(PI);
    if r >= PI {
        0.0
    } else {
        r
    }
}

/// Distance between two axis directions, treating angles modulo π.
pub fn axis_angle_gap(p: f64, q: f64) -> f64 {
    let d = (p - q).rem_euclid(PI);
    d.min(PI - d)
}

pub fn classify_conic(c: &ConicCoeffs) -> ConicKind {
    let scale = c.max_abs();
    if scale == 0.0 || (c.a == 0.0 && c.b == 0.0 && c.c == 0.0) {
        return ConicKind::Degenerate;
    }
    let quad_scale = c.a.abs().max(c.b.abs()).max(c.c.abs());
    let disc = c.quadratic_discriminant();
    if disc.abs() <= DEGENERACY_TOL * quad_scale * quad_scale {
        return if c.determinant().abs() < DEGENERACY_TOL * scale * scale * scale {
            ConicKind::Degenerate
        } else {
            ConicKind::Parabola
        };
    }
    // Central conic: det = (AB - C²) f_c with f_c the value at the center.
    // It is degenerate when f_c vanishes up to its own rounding, which keeps
    // the test independent of where the conic sits.
    let x0 = (-0.5 * c.d * c.b + 0.5 * c.c * c.e) / disc;
    let y0 = (-0.5 * c.a * c.e + 0.5 * c.c * c.d) / disc;
    let terms = [c.f, 0.5 * c.d * x0, 0.5 * c.e * y0];
    let f_center: f64 = terms.iter().sum();
    let size: f64 = terms.iter().map(|v| v.abs()).sum();
    if f_center.abs() <= DEGENERACY_TOL * size {
        ConicKind::Degenerate
    } else if disc < 0.0 {
        ConicKind::Hyperbola
    } else if (c.a + c.b) * f_center < 0.0 {
        ConicKind::Ellipse
    } else {
        // Imaginary ellipse: no real points.
        ConicKind::Degenerate
    }
}

/// Counterclockwise angle from the x-direction to the major axis, in `[0, π)`.
///
/// Follows the six-branch table: `0` / `π/2` for `C = 0`, the half-arccot
/// formula (shifted by `π/2` when `A > B`) for `C ≠ 0`, and `π/4` / `3π/4`
/// for `A = B`. The arccot is taken with range `(-π/2, π/2]`, so the
/// `C > 0, A < B` branch yields a negative angle that is reduced modulo π.
pub fn rotation_angle(c: &ConicCoeffs) -> Result<f64> {
    if classify_conic(c) != ConicKind::Ellipse {
        return Err(GeometryError::NotAnEllipse);
    }
    // Normalize the overall sign so the quadratic part is positive definite.
    let c = if c.a + c.b < 0.0 { c.scaled(-1.0) } else { *c };
    let scale = c.a.abs().max(c.b.abs()).max(c.c.abs());
    let c_zero = c.c.abs() <= BRANCH_TOL * scale;
    let a_eq_b = (c.a - c.b).abs() <= BRANCH_TOL * scale;
    let phi = if c_zero {
        if c.a <= c.b {
            0.0
        } else {
            FRAC_PI_2
        }
    } else if a_eq_b {
        if c.c < 0.0 {
            FRAC_PI_4
        } else {
            3.0 * FRAC_PI_4
        }
    } else {
        let half_arccot = 0.5 * arccot((c.a - c.b) / (2.0 * c.c));
        if c.a < c.b {
            half_arccot
        } else {
            FRAC_PI_2 + half_arccot
        }
    };
    Ok(reduce_angle(phi))
}

fn arccot(x: f64) -> f64 {
    (1.0 / x).atan()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipseGeom {
    pub center: Point,
    /// Semi-major axis.
    pub a: f64,
    /// Semi-minor axis.
    pub b: f64,
    /// Major-axis angle in `[0, π)`.
    pub phi: f64,
}

impl EllipseGeom {
    pub fn new(center: Point, a: f64, b: f64, phi: f64) -> Result<Self> {
        if !(center.is_finite() && a.is_finite() && b.is_finite() && phi.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        if !(b > 0.0) {
            return Err(GeometryError::ParameterOutOfRange {
                name: "b",
                value: b,
            });
        }
        if a < b {
            return Err(GeometryError::ParameterOutOfRange {
                name: "a",
                value: a,
            });
        }
        Ok(Self {
            center,
            a,
            b,
            phi: reduce_angle(phi),
        })
    }

    pub fn area(&self) -> f64 {
        ellipse_area(self)
    }

    pub fn foci(&self) -> (Point, Point) {
        foci(self)
    }

    pub fn major_direction(&self) -> Point {
        Point::new(self.phi.cos(), self.phi.sin())
    }

    /// Boundary point at eccentric anomaly `theta`.
    pub fn point_at(&self, theta: f64) -> Point {
        let local = Point::new(self.a * theta.cos(), self.b * theta.sin());
        self.center + local.rotated(self.phi)
    }

    pub fn to_conic(&self) -> ConicCoeffs {
        geometry_to_conic(self)
    }

    /// Implicit value normalized so the boundary is 0 and the center is -1.
    pub fn level(&self, p: Point) -> f64 {
        let q = (p - self.center).rotated(-self.phi);
        (q.x / self.a).powi(2) + (q.y / self.b).powi(2) - 1.0
    }
}

pub fn conic_to_ellipse(c: &ConicCoeffs) -> Result<EllipseGeom> {
    if classify_conic(c) != ConicKind::Ellipse {
        return Err(GeometryError::NotAnEllipse);
    }
    let phi = rotation_angle(c)?;
    let c = if c.a + c.b < 0.0 { c.scaled(-1.0) } else { *c };
    let disc = c.quadratic_discriminant();
    let quad_scale = c.a.abs().max(c.b.abs()).max(c.c.abs());
    if disc.abs() <= DEGENERACY_TOL * quad_scale * quad_scale {
        return Err(GeometryError::SingularCenterSystem);
    }
    let x0 = (-0.5 * c.d * c.b + 0.5 * c.c * c.e) / disc;
    let y0 = (-0.5 * c.a * c.e + 0.5 * c.c * c.d) / disc;
    let f_center = c.f + 0.5 * c.d * x0 + 0.5 * c.e * y0;
    let mean = 0.5 * (c.a + c.b);
    let radius = (0.5 * (c.a - c.b)).hypot(c.c);
    let lam_max = mean + radius;
    let lam_min = disc / lam_max;
    if !(f_center < 0.0) {
        return Err(GeometryError::NotAnEllipse);
    }
    let a = (-f_center / lam_min).sqrt();
    let b = (-f_center / lam_max).sqrt();
    EllipseGeom::new(Point::new(x0, y0), a.max(b), b, phi)
}

/// Ellipse whose dual (line) conic is `dual`, or `None` if `dual` is not the
/// dual of a real ellipse.
///
/// The center is the pole of the line at infinity and `c cᵀ - D / D₂₂` is the
/// shape matrix with eigenvalues `a²`, `b²`; nothing passes through the
/// adjugate, which squares the conditioning of thin ellipses.
pub fn dual_ellipse(dual: &Mat3) -> Option<EllipseGeom> {
    let w = dual[2][2];
    let scale = dual.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs()));
    if !(w.abs() > DEGENERACY_TOL * scale) {
        return None;
    }
    let c = Point::new(dual[0][2] / w, dual[1][2] / w);
    let sxx = c.x * c.x - dual[0][0] / w;
    let syy = c.y * c.y - dual[1][1] / w;
    let sxy = c.x * c.y - dual[0][1] / w;
    let det = sxx * syy - sxy * sxy;
    if !(sxx > 0.0 && syy > 0.0 && det > 0.0) {
        return None;
    }
    let a2 = 0.5 * (sxx + syy) + (0.5 * (sxx - syy)).hypot(sxy);
    let phi = 0.5 * (2.0 * sxy).atan2(sxx - syy);
    EllipseGeom::new(c, a2.sqrt(), (det / a2).sqrt(), phi).ok()
}

/// Inverse of [`conic_to_ellipse`]; the result is normalized so that `F` is
/// the value at the center minus one, i.e. `eval(center) = -1`.
pub fn geometry_to_conic(g: &EllipseGeom) -> ConicCoeffs {
    let (s, c) = g.phi.sin_cos();
    let ia = 1.0 / (g.a * g.a);
    let ib = 1.0 / (g.b * g.b);
    let a = c * c * ia + s * s * ib;
    let b = s * s * ia + c * c * ib;
    let cc = c * s * (ia - ib);
    let (x0, y0) = (g.center.x, g.center.y);
    let d = -2.0 * (a * x0 + cc * y0);
    let e = -2.0 * (cc * x0 + b * y0);
    let f = a * x0 * x0 + b * y0 * y0 + 2.0 * cc * x0 * y0 - 1.0;
    ConicCoeffs::new(a, b, cc, d, e, f)
}

pub fn ellipse_area(g: &EllipseGeom) -> f64 {
    PI * g.a * g.b
}

pub fn foci(g: &EllipseGeom) -> (Point, Point) {
    let focal = (g.a * g.a - g.b * g.b).max(0.0).sqrt();
    let offset = focal * g.major_direction();
    (g.center + offset, g.center - offset)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Tangency {
    Tangent(Point),
    SecantTwoPoints,
    Disjoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TangencyResult {
    pub kind: Tangency,
    /// `|discriminant|` of the restricted quadratic with unit leading coefficient.
    pub residual: f64,
    /// Point of the line where the restricted quadratic is extremal; the
    /// tangency point when `kind` is `Tangent`.
    pub vertex: Point,
}

impl TangencyResult {
    pub fn is_tangent(&self) -> bool {
        matches!(self.kind, Tangency::Tangent(_))
    }
}

/// Restricts the conic to the line and inspects the discriminant.
pub fn line_tangency(c: &ConicCoeffs, line: &ImplicitLine) -> Result<TangencyResult> {
    let n2 = line.alpha * line.alpha + line.beta * line.beta;
    if n2 == 0.0 || !n2.is_finite() {
        return Err(GeometryError::DegenerateLine);
    }
    if classify_conic(c) != ConicKind::Ellipse {
        return Err(GeometryError::NotAnEllipse);
    }
    let n = n2.sqrt();
    let base = Point::new(-line.gamma * line.alpha / n2, -line.gamma * line.beta / n2);
    let dir = Point::new(-line.beta / n, line.alpha / n);
    // Q(τ) = qa τ² + qb τ + qc along base + τ dir.
    let qa = c.a * dir.x * dir.x + c.b * dir.y * dir.y + 2.0 * c.c * dir.x * dir.y;
    let qb = 2.0
        * (c.a * base.x * dir.x + c.b * base.y * dir.y + c.c * (base.x * dir.y + base.y * dir.x))
        + c.d * dir.x
        + c.e * dir.y;
    let qc = c.eval(base);
    let p = qb / qa;
    let q = qc / qa;
    let disc = p * p - 4.0 * q;
    let vertex = base + (-0.5 * p) * dir;
    let residual = disc.abs();
    let kind = if residual < TANGENCY_TOL {
        Tangency::Tangent(vertex)
    } else if disc > 0.0 {
        Tangency::SecantTwoPoints
    } else {
        Tangency::Disjoint
    };
    Ok(TangencyResult {
        kind,
        residual,
        vertex,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: ConicCoeffs = ConicCoeffs::new(4.0, 1.0, 0.0, -4.0, -2.0, 1.0);
    const UNIT_CIRCLE: ConicCoeffs = ConicCoeffs::new(1.0, 1.0, 0.0, 0.0, 0.0, -1.0);

    #[test]
    fn classify_examples() {
        assert_eq!(classify_conic(&EXAMPLE), ConicKind::Ellipse);
        assert_eq!(classify_conic(&UNIT_CIRCLE), ConicKind::Ellipse);
        let line_pair = ConicCoeffs::new(1.0, -1.0, 0.0, 0.0, 0.0, 0.0);
        assert_eq!(classify_conic(&line_pair), ConicKind::Degenerate);
        let hyperbola = ConicCoeffs::new(1.0, -1.0, 0.0, 0.0, 0.0, -1.0);
        assert_eq!(classify_conic(&hyperbola), ConicKind::Hyperbola);
        let parabola = ConicCoeffs::new(1.0, 0.0, 0.0, 0.0, -1.0, 0.0);
        assert_eq!(classify_conic(&parabola), ConicKind::Parabola);
        let imaginary = ConicCoeffs::new(1.0, 1.0, 0.0, 0.0, 0.0, 1.0);
        assert_eq!(classify_conic(&imaginary), ConicKind::Degenerate);
    }

    #[test]
    fn rotation_angle_table() {
        let axis = ConicCoeffs::new(1.0, 4.0, 0.0, 0.0, 0.0, -1.0);
        assert_eq!(rotation_angle(&axis).unwrap(), 0.0);
        let diag = ConicCoeffs::new(2.0, 2.0, -1.0, 0.0, 0.0, -1.0);
        assert!((rotation_angle(&diag).unwrap() - FRAC_PI_4).abs() < 1e-15);
        let anti = ConicCoeffs::new(2.0, 2.0, 1.0, 0.0, 0.0, -1.0);
        assert!((rotation_angle(&anti).unwrap() - 3.0 * FRAC_PI_4).abs() < 1e-15);
        assert!((rotation_angle(&EXAMPLE).unwrap() - FRAC_PI_2).abs() < 1e-15);
        // Midpoint member of a parallelogram with k² = d² + l².
        let (d, l, k) = (3.0_f64, 4.0_f64, 5.0_f64);
        let m = ConicCoeffs::new(k.powi(3), k * (d * d + l * l), -k * k * d, 0.0, 0.0, -1.0);
        assert!((rotation_angle(&m).unwrap() - FRAC_PI_4).abs() < 1e-15);
        assert_eq!(
            rotation_angle(&ConicCoeffs::new(1.0, -1.0, 0.0, 0.0, 0.0, -1.0)),
            Err(GeometryError::NotAnEllipse)
        );
    }

    #[test]
    fn example_geometry() {
        let g = conic_to_ellipse(&EXAMPLE).unwrap();
        assert!((g.center - Point::new(0.5, 1.0)).norm() < 1e-14);
        assert!((g.a - 1.0).abs() < 1e-14);
        assert!((g.b - 0.5).abs() < 1e-14);
        assert!((g.phi - FRAC_PI_2).abs() < 1e-15);
        let (f1, f2) = g.foci();
        let h = 3f64.sqrt() / 2.0;
        assert!((f1 - Point::new(0.5, 1.0 + h)).norm() < 1e-14);
        assert!((f2 - Point::new(0.5, 1.0 - h)).norm() < 1e-14);
        assert!((g.area() - FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn unit_circle_geometry() {
        let g = conic_to_ellipse(&UNIT_CIRCLE).unwrap();
        assert!(g.center.norm() < 1e-15);
        assert!((g.a - 1.0).abs() < 1e-15 && (g.b - 1.0).abs() < 1e-15);
        assert!((g.area() - PI).abs() < 1e-15);
        let (f1, f2) = g.foci();
        assert_eq!(f1, g.center);
        assert_eq!(f2, g.center);
    }

    #[test]
    fn foci_axis_aligned() {
        let g = EllipseGeom::new(Point::ORIGIN, 1.0, 0.5, 0.0).unwrap();
        let (f1, f2) = g.foci();
        let c = (1.0_f64 - 0.25).sqrt();
        assert!((f1 - Point::new(c, 0.0)).norm() < 1e-15);
        assert!((f2 - Point::new(-c, 0.0)).norm() < 1e-15);
        assert!((c - 3f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn negated_conic_has_same_geometry() {
        let g1 = conic_to_ellipse(&EXAMPLE).unwrap();
        let g2 = conic_to_ellipse(&EXAMPLE.scaled(-3.0)).unwrap();
        assert!((g1.center - g2.center).norm() < 1e-14);
        assert!((g1.a - g2.a).abs() < 1e-14 && (g1.b - g2.b).abs() < 1e-14);
    }

    #[test]
    fn tangency_examples() {
        let x1 = ImplicitLine::new(1.0, 0.0, -1.0).unwrap();
        let t = line_tangency(&UNIT_CIRCLE, &x1).unwrap();
        match t.kind {
            Tangency::Tangent(p) => assert!((p - Point::new(1.0, 0.0)).norm() < 1e-15),
            other => panic!("expected tangent, got {other:?}"),
        }
        let x2 = ImplicitLine::new(1.0, 0.0, -2.0).unwrap();
        assert_eq!(
            line_tangency(&UNIT_CIRCLE, &x2).unwrap().kind,
            Tangency::Disjoint
        );
        let x0 = ImplicitLine::new(1.0, 0.0, 0.0).unwrap();
        assert_eq!(
            line_tangency(&UNIT_CIRCLE, &x0).unwrap().kind,
            Tangency::SecantTwoPoints
        );
        let bad = ImplicitLine {
            alpha: 0.0,
            beta: 0.0,
            gamma: 1.0,
        };
        assert_eq!(
            line_tangency(&UNIT_CIRCLE, &bad),
            Err(GeometryError::DegenerateLine)
        );
    }

    #[test]
    fn canonical_scaling() {
        let c = EXAMPLE.scaled(-2.5).canonical();
        assert_eq!(c.to_array(), [1.0, 0.25, 0.0, -1.0, -0.5, 0.25]);
        assert!(EXAMPLE.proportional_to(&EXAMPLE.scaled(7.0), 1e-15));
    }

    #[test]
    fn transformed_conic_follows_map() {
        let map = Affine2::new([[2.0, 0.5], [-0.3, 1.5]], Point::new(1.0, -2.0));
        let moved = UNIT_CIRCLE.transformed(&map).unwrap();
        for k in 0..16 {
            let th = k as f64 * PI / 8.0;
            let p = map.apply(Point::new(th.cos(), th.sin()));
            assert!(moved.eval(p).abs() < 1e-12);
        }
        let g = conic_to_ellipse(&moved).unwrap();
        assert!((g.area() - PI * map.det().abs()).abs() < 1e-12);
    }

    #[test]
    fn adjugate_is_scaled_inverse() {
        let m = EXAMPLE.matrix();
        let adj = adjugate(&m);
        let det = det3(&m);
        for i in 0..3 {
            for j in 0..3 {
                let v: f64 = (0..3).map(|k| m[i][k] * adj[k][j]).sum();
                let expect = if i == j { det } else { 0.0 };
                assert!((v - expect).abs() < 1e-12);
            }
        }
    }
}
