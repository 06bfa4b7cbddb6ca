//! Plane primitives shared by every module: points, affine maps and lines.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    #[inline]
    pub fn midpoint(self, other: Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Counterclockwise rotation by `angle` radians about the origin.
    pub fn rotated(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<Point> for f64 {
    type Output = Point;
    #[inline]
    fn mul(self, rhs: Point) -> Point {
        Point::new(self * rhs.x, self * rhs.y)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

/// Affine map `p -> M p + t` with `M = [[m11, m12], [m21, m22]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Affine2 {
    pub m: [[f64; 2]; 2],
    pub t: Point,
}

impl Affine2 {
    pub const IDENTITY: Affine2 = Affine2 {
        m: [[1.0, 0.0], [0.0, 1.0]],
        t: Point::ORIGIN,
    };

    pub const fn new(m: [[f64; 2]; 2], t: Point) -> Self {
        Self { m, t }
    }

    /// Map sending `(0,0)`, `(1,0)`, `(0,1)` onto `origin`, `origin + e1`, `origin + e2`.
    pub fn from_frame(origin: Point, e1: Point, e2: Point) -> Self {
        Self::new([[e1.x, e2.x], [e1.y, e2.y]], origin)
    }

    /// Rotation by `angle` followed by translation by `t`.
    pub fn rigid(angle: f64, t: Point) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new([[c, -s], [s, c]], t)
    }

    #[inline]
    pub fn apply(&self, p: Point) -> Point {
        self.apply_linear(p) + self.t
    }

    #[inline]
    pub fn apply_linear(&self, p: Point) -> Point {
        Point::new(
            self.m[0][0] * p.x + self.m[0][1] * p.y,
            self.m[1][0] * p.x + self.m[1][1] * p.y,
        )
    }

    #[inline]
    pub fn det(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn inverse(&self) -> Result<Affine2> {
        let det = self.det();
        let scale = self.m.iter().flatten().fold(0.0_f64, |a, v| a.max(v.abs()));
        if !det.is_finite() || det.abs() <= 1e-300_f64.max(1e-14 * scale * scale) {
            return Err(GeometryError::DegenerateVertices("singular affine map"));
        }
        let inv = [
            [self.m[1][1] / det, -self.m[0][1] / det],
            [-self.m[1][0] / det, self.m[0][0] / det],
        ];
        let lin = Affine2::new(inv, Point::ORIGIN);
        Ok(Affine2::new(inv, -lin.apply_linear(self.t)))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Affine2) -> Affine2 {
        let a = &self.m;
        let b = &other.m;
        let m = [
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ];
        Affine2::new(m, self.apply(other.t))
    }

    /// Homogeneous 3×3 matrix of the map.
    pub fn homogeneous(&self) -> [[f64; 3]; 3] {
        [
            [self.m[0][0], self.m[0][1], self.t.x],
            [self.m[1][0], self.m[1][1], self.t.y],
            [0.0, 0.0, 1.0],
        ]
    }
}

/// Implicit line `alpha x + beta y + gamma = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImplicitLine {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl ImplicitLine {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite() && gamma.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        if alpha == 0.0 && beta == 0.0 {
            return Err(GeometryError::DegenerateLine);
        }
        Ok(Self { alpha, beta, gamma })
    }

    /// Line through two distinct points.
    pub fn through(p: Point, q: Point) -> Result<Self> {
        let d = q - p;
        Self::new(-d.y, d.x, d.y * p.x - d.x * p.y)
    }

    pub fn eval(&self, p: Point) -> f64 {
        self.alpha * p.x + self.beta * p.y + self.gamma
    }

    pub fn homogeneous(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    pub fn distance(&self, p: Point) -> f64 {
        self.eval(p).abs() / self.alpha.hypot(self.beta)
    }
}

/// Line through `point` with unit direction `dir`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub point: Point,
    pub dir: Point,
}

impl Line {
    pub fn new(point: Point, dir: Point) -> Result<Self> {
        if !point.is_finite() || !dir.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        let n = dir.norm();
        if n == 0.0 {
            return Err(GeometryError::DegenerateLine);
        }
        Ok(Self {
            point,
            dir: (1.0 / n) * dir,
        })
    }

    pub fn from_angle(point: Point, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            point,
            dir: Point::new(c, s),
        }
    }

    pub fn distance(&self, p: Point) -> f64 {
        self.dir.cross(p - self.point).abs()
    }

    pub fn to_implicit(&self) -> ImplicitLine {
        ImplicitLine {
            alpha: -self.dir.y,
            beta: self.dir.x,
            gamma: self.dir.y * self.point.x - self.dir.x * self.point.y,
        }
    }

    /// Direction angle reduced to `[0, π)`.
    pub fn angle(&self) -> f64 {
        crate::conic::reduce_angle(self.dir.y.atan2(self.dir.x))
    }
}
