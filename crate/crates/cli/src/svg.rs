//! Deterministic SVG output. Drawing happens inside a `scale(1,-1)` group so
//! the y axis points up, and the view box is padded by 5% on every side.

use std::fmt::Write;

use inellipse_core::{EllipseGeom, Line, Point};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("nothing to draw")]
    EmptyScene,
    #[error("scene contains a non-finite coordinate")]
    NonFinite,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Scene {
    pub polygon: Vec<Point>,
    pub ellipses: Vec<EllipseGeom>,
    pub lines: Vec<Line>,
    pub points: Vec<Point>,
}

impl Scene {
    fn is_empty(&self) -> bool {
        self.polygon.is_empty() && self.ellipses.is_empty() && self.points.is_empty()
    }

    fn is_finite(&self) -> bool {
        self.polygon
            .iter()
            .chain(&self.points)
            .all(|p| p.is_finite())
            && self
                .ellipses
                .iter()
                .all(|e| e.center.is_finite() && e.a.is_finite() && e.b.is_finite())
            && self
                .lines
                .iter()
                .all(|l| l.point.is_finite() && l.dir.is_finite())
    }

    /// Bounding box of the polygon, points and ellipses; lines are clipped to it.
    fn bounds(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut add = |p: Point| {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        };
        self.polygon
            .iter()
            .chain(&self.points)
            .for_each(|p| add(*p));
        for e in &self.ellipses {
            let (s, c) = e.phi.sin_cos();
            let hx = (e.a * c).hypot(e.b * s);
            let hy = (e.a * s).hypot(e.b * c);
            add(e.center - Point::new(hx, hy));
            add(e.center + Point::new(hx, hy));
        }
        (lo, hi)
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Segment of `line` inside the box, if any.
fn clip(line: &Line, lo: Point, hi: Point) -> Option<(Point, Point)> {
    let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
    for (p, d, a, b) in [
        (line.point.x, line.dir.x, lo.x, hi.x),
        (line.point.y, line.dir.y, lo.y, hi.y),
    ] {
        if d.abs() < 1e-15 {
            if p < a || p > b {
                return None;
            }
        } else {
            let (u, v) = ((a - p) / d, (b - p) / d);
            t0 = t0.max(u.min(v));
            t1 = t1.min(u.max(v));
        }
    }
    (t0 <= t1).then(|| (line.point + t0 * line.dir, line.point + t1 * line.dir))
}

pub fn render_svg(scene: &Scene) -> Result<String, RenderError> {
    if scene.is_empty() {
        return Err(RenderError::EmptyScene);
    }
    if !scene.is_finite() {
        return Err(RenderError::NonFinite);
    }
    let (lo, hi) = scene.bounds();
    let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
    let pad = 0.05 * span;
    let (lo, hi) = (lo - Point::new(pad, pad), hi + Point::new(pad, pad));
    let (w, h) = (hi.x - lo.x, hi.y - lo.y);
    let marker = 0.01 * span;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="600" height="{}">"#,
        num(lo.x),
        num(-hi.y),
        num(w),
        num(h),
        num((600.0 * h / w).round())
    );
    let _ = writeln!(
        out,
        r#"<g transform="scale(1,-1)" fill="none" stroke-width="1.5">"#
    );
    if !scene.polygon.is_empty() {
        let pts: Vec<String> = scene
            .polygon
            .iter()
            .map(|p| format!("{},{}", num(p.x), num(p.y)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polygon points="{}" stroke="black" vector-effect="non-scaling-stroke"/>"#,
            pts.join(" ")
        );
    }
    for e in &scene.ellipses {
        let (cx, cy) = (num(e.center.x), num(e.center.y));
        let _ = writeln!(
            out,
            r#"<ellipse cx="{cx}" cy="{cy}" rx="{}" ry="{}" transform="rotate({} {cx} {cy})" stroke="steelblue" vector-effect="non-scaling-stroke"/>"#,
            num(e.a),
            num(e.b),
            num(e.phi.to_degrees())
        );
    }
    for l in &scene.lines {
        if let Some((p, q)) = clip(l, lo, hi) {
            let _ = writeln!(
                out,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="firebrick" stroke-dasharray="4 3" vector-effect="non-scaling-stroke"/>"#,
                num(p.x),
                num(p.y),
                num(q.x),
                num(q.y)
            );
        }
    }
    for p in &scene.points {
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" fill="darkorange" stroke="none"/>"#,
            num(p.x),
            num(p.y),
            num(marker)
        );
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect() -> Vec<Point> {
        [(0.0, 0.0), (1.0, 0.0), (1.0, 2.0), (0.0, 2.0)]
            .map(Point::from)
            .to_vec()
    }

    #[test]
    fn empty_scene_is_an_error() {
        assert_eq!(render_svg(&Scene::default()), Err(RenderError::EmptyScene));
    }

    #[test]
    fn polygon_only() {
        let svg = render_svg(&Scene {
            polygon: rect(),
            ..Scene::default()
        })
        .unwrap();
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert_eq!(svg.matches("<ellipse").count(), 0);
        assert!(svg.contains(r#"viewBox="-0.1 -2.1 1.2 2.2""#), "{svg}");
    }

    #[test]
    fn rotated_ellipse_and_clipped_line() {
        let e =
            EllipseGeom::new(Point::new(0.5, 1.0), 1.0, 0.5, std::f64::consts::FRAC_PI_2).unwrap();
        let line = Line::from_angle(Point::new(0.5, 1.0), std::f64::consts::FRAC_PI_2);
        let scene = Scene {
            polygon: rect(),
            ellipses: vec![e],
            lines: vec![line],
            points: vec![],
        };
        let svg = render_svg(&scene).unwrap();
        assert!(svg.contains(r#"transform="rotate(90 0.5 1)""#), "{svg}");
        assert!(
            svg.contains(r#"<line x1="0.5" y1="-0.1" x2="0.5" y2="2.1""#),
            "{svg}"
        );
        assert_eq!(svg, render_svg(&scene).unwrap());
    }

    #[test]
    fn number_format() {
        assert_eq!(num(1.0), "1");
        assert_eq!(num(-0.0000001), "0");
        assert_eq!(num(0.8660254037844386), "0.866025");
    }
}
