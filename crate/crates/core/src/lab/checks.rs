//! Per-instance checks of the inscribed-ellipse results.

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::family::{
    area_sq, locus_line, max_area_by_search, max_area_ellipse, max_area_param, midpoint_ellipse,
    InscribedMember,
};
use crate::fit::{best_fit_line, to_complex, to_point, FitLine};
use crate::geometry::Point;
use crate::lab::sampling::{random_canonical_pair, sample_rng, SignCase};
use crate::quad::{parallelogram_frame, ConvexQuad, ParallelogramFrame, QuadFlags};

/// Equality tolerance for parallelograms.
pub const EQUALITY_TOL: f64 = 1e-12;
/// Minimum gap for non-parallelograms.
pub const STRICT_GAP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaxAreaRoute {
    MidpointEllipse,
    ClosedForm,
    PencilSearch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub id: Option<String>,
    pub ratio: f64,
    /// `π/4 - ratio`.
    pub bound_gap: f64,
    pub flags: QuadFlags,
    pub route: MaxAreaRoute,
}

impl InequalityReport {
    pub fn equality_case(&self) -> bool {
        self.flags.is_parallelogram
    }

    pub fn holds(&self) -> bool {
        if self.equality_case() {
            self.bound_gap.abs() < EQUALITY_TOL
        } else {
            self.bound_gap > STRICT_GAP
        }
    }
}

/// Maximal-area inscribed ellipse of any convex quad: the midpoint ellipse
/// for parallelograms, a pencil search for other trapezoids, the closed form
/// otherwise.
pub fn maximal_member(q: &ConvexQuad) -> Result<(InscribedMember, MaxAreaRoute)> {
    Ok(if q.is_parallelogram() {
        (
            midpoint_ellipse(&parallelogram_frame(q)?)?,
            MaxAreaRoute::MidpointEllipse,
        )
    } else if q.is_trapezoid() {
        (max_area_by_search(q)?, MaxAreaRoute::PencilSearch)
    } else {
        (max_area_ellipse(q)?, MaxAreaRoute::ClosedForm)
    })
}

/// Maximal inscribed area over quad area, compared with `π/4`.
pub fn check_area_inequality(q: &ConvexQuad) -> Result<InequalityReport> {
    let (member, route) = maximal_member(q)?;
    let ratio = member.area() / q.area();
    Ok(InequalityReport {
        id: None,
        ratio,
        bound_gap: FRAC_PI_4 - ratio,
        flags: q.flags(),
        route,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaximizerIntervalFailure {
    pub s: f64,
    pub t: f64,
    pub h_a: f64,
    pub interval: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaximizerIntervalReport {
    pub seed: u64,
    /// Samples per sign case, in [`SignCase::ALL`] order.
    pub counts: [usize; 4],
    pub failures: [usize; 4],
    pub first_failure: Option<MaximizerIntervalFailure>,
}

impl MaximizerIntervalReport {
    pub fn passed(&self) -> bool {
        self.counts.iter().all(|&c| c > 0) && self.failures.iter().all(|&f| f == 0)
    }
}

/// Checks that `h_a` lies strictly inside `I` for `samples` canonical pairs
/// split evenly over the four sign cases.
pub fn check_maximizer_interval(samples: usize, seed: u64) -> Result<MaximizerIntervalReport> {
    let per_case = samples.div_ceil(4);
    let mut report = MaximizerIntervalReport {
        seed,
        counts: [0; 4],
        failures: [0; 4],
        first_failure: None,
    };
    for case in SignCase::ALL {
        let mut rng = sample_rng(seed, case.index() as u64);
        for _ in 0..per_case {
            let (s, t) = random_canonical_pair(&mut rng, case);
            let h_a = max_area_param(s, t)?;
            let locus = locus_line(s, t)?;
            report.counts[case.index()] += 1;
            if !locus.contains(h_a) {
                report.failures[case.index()] += 1;
                report
                    .first_failure
                    .get_or_insert(MaximizerIntervalFailure {
                        s,
                        t,
                        h_a,
                        interval: locus.interval,
                    });
            }
        }
    }
    Ok(report)
}

/// Largest relative excess of `area_sq` on an `n`-point open grid of `I`
/// over its value at `h_a`. Nonpositive when `h_a` is the maximizer.
pub fn grid_area_excess(s: f64, t: f64, n: usize) -> Result<f64> {
    let h_a = max_area_param(s, t)?;
    let best = area_sq(h_a, s, t)?;
    let (lo, hi) = locus_line(s, t)?.interval;
    let mut excess = f64::NEG_INFINITY;
    for i in 1..=n {
        let h = lo + (hi - lo) * i as f64 / (n + 1) as f64;
        excess = excess.max((area_sq(h, s, t)? - best) / best);
    }
    Ok(excess)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FocalLineReport {
    pub foci: (Point, Point),
    pub centroid: Point,
    pub z_abs: f64,
    /// The best-fit problem has no unique solution.
    pub degenerate: bool,
    /// The midpoint ellipse is a circle.
    pub circle: bool,
    /// Largest distance of a focus to the best-fit line; zero when degenerate.
    pub max_focus_distance: f64,
    /// Distance between the vertex centroid and the ellipse center.
    pub center_offset: f64,
    /// Slope of the best-fit line; infinite for vertical lines.
    pub slope: Option<f64>,
}

impl FocalLineReport {
    pub fn holds(&self, tol: f64) -> bool {
        let on_line = if self.degenerate {
            self.circle
        } else {
            self.max_focus_distance < tol
        };
        on_line && self.center_offset < tol
    }
}

/// Distance of the midpoint-ellipse foci to the best-fit line of the vertices.
pub fn check_foci_on_bestfit(frame: &ParallelogramFrame) -> Result<FocalLineReport> {
    let member = midpoint_ellipse(frame)?;
    let pts = frame.vertices().map(to_complex);
    let fit = best_fit_line(&pts)?;
    let foci = member.geom.foci();
    let circle = (member.geom.a - member.geom.b).abs() < 1e-9 * member.geom.a;
    let (degenerate, max_focus_distance, slope) = match fit.line {
        FitLine::UniqueLine(line) => {
            let slope = (line.dir.x != 0.0).then(|| line.dir.y / line.dir.x);
            (
                false,
                line.distance(foci.0).max(line.distance(foci.1)),
                slope,
            )
        }
        FitLine::AllLinesThroughG => (true, 0.0, None),
    };
    Ok(FocalLineReport {
        foci,
        centroid: fit.centroid(),
        z_abs: fit.z.norm(),
        degenerate,
        circle,
        max_focus_distance,
        center_offset: fit.centroid().distance(member.geom.center),
        slope,
    })
}

/// Roots of `Q''` for `Q(z) = Π (z - z_j)`: `12z² - 6e₁z + 2e₂ = 0`.
pub fn second_derivative_roots(z: &[Complex64; 4]) -> [Complex64; 2] {
    let (e1, e2) = elementary_symmetric(z);
    let disc = (36.0 * e1 * e1 - 96.0 * e2).sqrt();
    [(6.0 * e1 - disc) / 24.0, (6.0 * e1 + disc) / 24.0]
}

/// `e₁ = Σ z_j`, `e₂ = Σ_{i<j} z_i z_j`.
pub fn elementary_symmetric(z: &[Complex64; 4]) -> (Complex64, Complex64) {
    let e1 = z.iter().sum();
    let mut e2 = Complex64::new(0.0, 0.0);
    for i in 0..4 {
        for j in i + 1..4 {
            e2 += z[i] * z[j];
        }
    }
    (e1, e2)
}

/// `Q''(x) = 12x² - 6e₁x + 2e₂`.
pub fn second_derivative(z: &[Complex64; 4], x: Complex64) -> Complex64 {
    let (e1, e2) = elementary_symmetric(z);
    12.0 * x * x - 6.0 * e1 * x + 2.0 * e2
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MardenReport {
    pub vertices: [Complex64; 4],
    pub foci: [Complex64; 2],
    pub roots: [Complex64; 2],
    /// Smallest distance between a focus and a root of `Q''`.
    pub min_distance: f64,
    /// Largest `|Q''(root)|`.
    pub root_residual: f64,
}

/// Compares the midpoint-ellipse foci with the roots of `Q''`.
pub fn marden_check(frame: &ParallelogramFrame) -> Result<MardenReport> {
    let vertices = frame.vertices().map(to_complex);
    let member = midpoint_ellipse(frame)?;
    let (f1, f2) = member.geom.foci();
    let foci = [to_complex(f1), to_complex(f2)];
    let roots = second_derivative_roots(&vertices);
    let min_distance = foci
        .iter()
        .flat_map(|f| roots.iter().map(move |r| (f - r).norm()))
        .fold(f64::INFINITY, f64::min);
    let root_residual = roots
        .iter()
        .map(|r| second_derivative(&vertices, *r).norm())
        .fold(0.0, f64::max);
    Ok(MardenReport {
        vertices,
        foci,
        roots,
        min_distance,
        root_residual,
    })
}

/// Root of `Q''` as a point, for plotting.
pub fn root_point(z: Complex64) -> Point {
    to_point(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{canonical_quad, validate};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inequality_routes() {
        let sq =
            validate([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)].map(Point::from)).unwrap();
        let r = check_area_inequality(&sq).unwrap();
        assert_eq!(r.route, MaxAreaRoute::MidpointEllipse);
        assert!(r.holds() && r.bound_gap.abs() < 1e-15);

        let r = check_area_inequality(&canonical_quad(2.0, 3.0).unwrap()).unwrap();
        assert_eq!(r.route, MaxAreaRoute::ClosedForm);
        assert!(r.holds() && r.bound_gap > 0.079);
        assert!((r.ratio - 0.705_918_209_410_624_8).abs() < 1e-12);

        let trap =
            validate([(0.0, 0.0), (3.0, 0.0), (2.0, 1.0), (1.0, 1.0)].map(Point::from)).unwrap();
        let r = check_area_inequality(&trap).unwrap();
        assert_eq!(r.route, MaxAreaRoute::PencilSearch);
        assert!(r.holds());
    }

    #[test]
    fn maximizer_interval_examples() {
        let h = max_area_param(2.0, 3.0).unwrap();
        assert!((h - (2.0 + 7f64.sqrt()) / 6.0).abs() < 1e-14);
        assert!(h > 0.5 && h < 1.0);
        let h = max_area_param(0.5, 3.0).unwrap();
        assert!(h > 0.25 && h < 0.5);
        let h = max_area_param(0.7, 0.6).unwrap();
        assert!(h > 0.35 && h < 0.5);
    }

    #[test]
    fn maximizer_interval_sampler_small() {
        let r = check_maximizer_interval(400, 9).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.counts, [100; 4]);
    }

    #[test]
    fn grid_never_beats_h_a() {
        for (s, t) in [(2.0, 3.0), (0.5, 3.0), (0.7, 0.6), (3.0, 0.2)] {
            assert!(grid_area_excess(s, t, 2000).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn rectangle_foci_on_vertical_line() {
        let r = check_foci_on_bestfit(&ParallelogramFrame::new(1.0, 2.0, 0.0).unwrap()).unwrap();
        assert!(!r.degenerate && r.holds(1e-9));
        assert!(r.slope.is_none());
        let lo = r.foci.0.y.min(r.foci.1.y);
        assert!((lo - (1.0 - 3f64.sqrt() / 2.0)).abs() < 1e-12);
    }

    #[test]
    fn sheared_slope_one() {
        let r = check_foci_on_bestfit(&ParallelogramFrame::new(4.0, 5.0, 3.0).unwrap()).unwrap();
        assert!((r.slope.unwrap() - 1.0).abs() < 1e-12);
        assert!(r.holds(1e-9));
    }

    #[test]
    fn square_is_degenerate() {
        let r = check_foci_on_bestfit(&ParallelogramFrame::new(1.0, 1.0, 0.0).unwrap()).unwrap();
        assert!(r.degenerate && r.circle && r.z_abs < 1e-12);
    }

    #[test]
    fn marden_example() {
        let r = marden_check(&ParallelogramFrame::new(1.0, 2.0, 0.0).unwrap()).unwrap();
        assert!((r.roots[0] - c(0.5, 0.5)).norm() < 1e-12);
        assert!((r.roots[1] - c(0.5, 1.5)).norm() < 1e-12);
        assert!(r.min_distance > 0.1);
        assert!(r.root_residual < 1e-12);
    }

    #[test]
    fn quartic_expansion() {
        let z = [c(0.3, -1.0), c(2.0, 0.5), c(-1.0, 1.5), c(0.0, 0.25)];
        // Coefficients of Π (x - z_j), lowest degree first.
        let mut poly = vec![c(1.0, 0.0)];
        for zj in z {
            let mut next = vec![c(0.0, 0.0); poly.len() + 1];
            for (i, a) in poly.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * zj;
            }
            poly = next;
        }
        let (e1, e2) = elementary_symmetric(&z);
        assert!((poly[3] + e1).norm() < 1e-14);
        assert!((poly[2] - e2).norm() < 1e-14);
        let x = c(0.4, 0.7);
        let direct = 12.0 * poly[4] * x * x + 6.0 * poly[3] * x + 2.0 * poly[2];
        assert!((direct - second_derivative(&z, x)).norm() < 1e-13);
    }

    #[test]
    fn square_has_double_root_at_center() {
        // For a square Q(z) = (z - c)⁴ - r⁴, so Q'' = 12 (z - c)².
        let r = marden_check(&ParallelogramFrame::new(1.0, 1.0, 0.0).unwrap()).unwrap();
        assert!((r.roots[0] - c(0.5, 0.5)).norm() < 1e-7);
        assert!((r.roots[1] - c(0.5, 0.5)).norm() < 1e-7);
        assert!((r.foci[0] - r.foci[1]).norm() < 1e-7);
        assert!(r.min_distance < 1e-7);
    }
}
