//! The ten acceptance checks, shared by the `verify` command and the
//! acceptance test. Sample counts are quoted for the default budget of
//! 10 000 samples and scale linearly with [`SuiteConfig::samples`].

use std::f64::consts::FRAC_PI_2;
use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conic::{ConicCoeffs, Tangency};
use crate::error::Result;
use crate::family::{
    area_sq, ellipse_at_center, max_area_ellipse, rectangle_family, side_tangency,
};
use crate::fit::{best_fit_line, to_complex, FitLine};
use crate::geometry::Point;
use crate::lab::bounds::{check_ratio_formula, scan_z_bound, z_fn};
use crate::lab::checks::{
    check_area_inequality, check_foci_on_bestfit, grid_area_excess, marden_check,
};
use crate::lab::conjecture::conjecture_scan;
use crate::lab::sampling::{
    random_canonical_pair, random_generic_quad, random_non_square_parallelogram,
    random_parallelogram, random_square, sample_rng, SignCase,
};
use crate::quad::{diagonal_midpoints, normalize, ParallelogramFrame};

pub mod tol {
    /// Closed-form example values.
    pub const EXAMPLE: f64 = 1e-12;
    /// Parallelogram ratio against `π/4`.
    pub const EQUALITY: f64 = 1e-12;
    /// Tangency points against side midpoints.
    pub const MIDPOINT_TANGENCY: f64 = 1e-10;
    /// Smallest accepted `π/4 - ratio` for non-parallelograms.
    pub const STRICT_GAP: f64 = 1e-12;
    /// Pairwise relative agreement of the analytic ratio formulas.
    pub const FORMULA_AGREEMENT: f64 = 1e-10;
    /// Relative agreement of the analytic and geometric ratios.
    pub const GEOMETRIC_AGREEMENT: f64 = 1e-8;
    /// Relative grid improvement allowed over `area_sq(h_a)`.
    pub const GRID_EXCESS: f64 = 1e-10;
    pub const Z_AT_ZERO: f64 = 1e-6;
    pub const Z_AT_ONE: f64 = 1e-4;
    /// Brute-force line objective improvement allowed over the best fit.
    pub const BRUTE_FORCE: f64 = 1e-9;
    /// Best-fit line distance to the centroid.
    pub const CENTROID: f64 = 1e-12;
    /// Focus distance to the best-fit line.
    pub const FOCAL_LINE: f64 = 1e-9;
    /// `|Z|` for squares.
    pub const SQUARE_MOMENT: f64 = 1e-12;
    /// Pairwise agreement of the slope identities.
    pub const SLOPE: f64 = 1e-10;
    /// Center reproduction, tangency residual.
    pub const CENTER: f64 = 1e-9;
    pub const TANGENCY: f64 = 1e-9;
    /// Relative agreement of pencil areas and the area formula.
    pub const AREA: f64 = 1e-8;
    /// Conjecture lower bound slack, parallelogram deviation.
    pub const CONJECTURE: f64 = 1e-9;
    /// Square ratio against `π/2`.
    pub const SQUARE_RATIO: f64 = 1e-12;
}

/// Wall-clock limits in seconds for the timed checks.
pub mod budget {
    pub const EXAMPLE: f64 = 1.0;
    pub const STRICTNESS: f64 = 30.0;
    pub const CONJECTURE: f64 = 60.0;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            samples: 10_000,
        }
    }
}

impl SuiteConfig {
    /// `base` samples at the default budget, scaled, at least one.
    fn count(&self, base: usize) -> usize {
        (base * self.samples).div_ceil(10_000).max(1)
    }

    fn stream(&self, criterion: u64, index: u64) -> rand_chacha::ChaCha8Rng {
        sample_rng(self.seed, (criterion << 40) | index)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl std::fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "[{status}] {:>2} {}: {} ({:.2} s)",
            self.id, self.name, self.detail, self.seconds
        )
    }
}

fn outcome(id: u8, name: &str, start: Instant, result: Result<(bool, String)>) -> CriterionOutcome {
    let seconds = start.elapsed().as_secs_f64();
    let (passed, detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionOutcome {
        id,
        name: name.to_string(),
        passed,
        detail,
        seconds,
    }
}

fn max_of(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(f64::NEG_INFINITY, f64::max)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

/// Rectangle example: conic, foci, `Q''` roots.
pub fn example_reproduction(_cfg: &SuiteConfig) -> CriterionOutcome {
    let start = Instant::now();
    let result = (|| {
        let member = rectangle_family(1.0, 2.0, 1.0)?;
        let expected = ConicCoeffs::new(4.0, 1.0, 0.0, -4.0, -2.0, 1.0);
        let conic_ok = member.conic.proportional_to(&expected, tol::EXAMPLE);
        let h = 3f64.sqrt() / 2.0;
        let (f1, f2) = member.geom.foci();
        let (lo, hi) = if f1.y < f2.y { (f1, f2) } else { (f2, f1) };
        let foci_err = lo
            .distance(Point::new(0.5, 1.0 - h))
            .max(hi.distance(Point::new(0.5, 1.0 + h)));
        let marden = marden_check(&ParallelogramFrame::new(1.0, 2.0, 0.0)?)?;
        let mut roots = marden.roots;
        roots.sort_by(|a, b| a.im.total_cmp(&b.im));
        let root_err = (roots[0] - Complex64::new(0.5, 0.5))
            .norm()
            .max((roots[1] - Complex64::new(0.5, 1.5)).norm());
        let secs = start.elapsed().as_secs_f64();
        let passed = conic_ok
            && foci_err < tol::EXAMPLE
            && root_err < tol::EXAMPLE
            && marden.min_distance > 0.1
            && secs < budget::EXAMPLE;
        Ok((
            passed,
            format!(
                "conic proportional: {conic_ok}, focus error {foci_err:.1e}, root error {root_err:.1e}, \
                 focus-root distance {:.4}",
                marden.min_distance
            ),
        ))
    })();
    outcome(1, "rectangle example", start, result)
}

/// Parallelograms attain `π/4` with tangency at the side midpoints.
pub fn parallelogram_equality(cfg: &SuiteConfig) -> CriterionOutcome {
    let start = Instant::now();
    let n = cfg.count(1_000);
    let result = (0..n as u64)
        .into_par_iter()
        .map(|i| -> Result<(f64, f64)> {
            let q = random_parallelogram(&mut cfg.stream(2, i)).quad()?;
            let gap = check_area_inequality(&q)?.bound_gap.abs();
            let member = max_area_ellipse(&q)?;
            let mids = q.side_midpoints();
            let tangency = max_of(
                mids.iter()
                    .map(|m| member.tangency.iter().map(|p| p.distance(*m)).fold(f64::INFINITY, f64::min)),
            );
            Ok((gap, tangency))
        })
        .collect::<Result<Vec<_>>>()
        .map(|rows| {
            let gap = max_of(rows.iter().map(|r| r.0));
            let tangency = max_of(rows.iter().map(|r| r.1));
            (
                gap < tol::EQUALITY && tangency < tol::MIDPOINT_TANGENCY,
                format!("{n} parallelograms, max |π/4 - ratio| {gap:.1e}, max midpoint offset {tangency:.1e}"),
            )
        });
    outcome(2, "parallelogram equality", start, result)
}

/// Non-parallelograms stay strictly below `π/4`; all ratio formulas agree.
pub fn strict_inequality(cfg: &SuiteConfig) -> CriterionOutcome {
    let start = Instant::now();
    let n = cfg.count(10_000);
    let rows = (0..n as u64)
        .into_par_iter()
        .map(|i| -> Result<(f64, f64, f64, bool)> {
            let q = random_generic_quad(&mut cfg.stream(3, i));
            let report = check_area_inequality(&q)?;
            let norm = normalize(&q)?;
            let formula = check_ratio_formula(norm.s, norm.t)?;
            let geometric = rel(report.ratio * report.ratio, formula.ratio_sq_factored);
            Ok((
                report.bound_gap,
                formula.max_rel_gap,
                geometric,
                formula.bound_chain_holds(),
            ))
        })
        .collect::<Result<Vec<_>>>();
    let result = rows.map(|rows| {
        let min_gap = rows.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
        let formula = max_of(rows.iter().map(|r| r.1));
        let geometric = max_of(rows.iter().map(|r| r.2));
        let chain = rows.iter().all(|r| r.3);
        let secs = start.elapsed().as_secs_f64();
        (
            min_gap > tol::STRICT_GAP
                && formula < tol::FORMULA_AGREEMENT
                && geometric < tol::GEOMETRIC_AGREEMENT
                && chain
                && secs < budget::STRICTNESS,
            format!(
                "{n} quads, min gap {min_gap:.3e}, formula spread {formula:.1e}, \
                 geometric spread {geometric:.1e}, bound chain {chain}"
            ),
        )
    });
    outcome(3, "strict inequality", start, result)
}

/// `h_a` lies inside `I` and maximizes the area on a grid, in all sign cases.
pub fn maximizer_interval(cfg: &SuiteConfig) -> CriterionOutcome {
    let start = Instant::now();
    let per_case = cfg.count(2_500);
    let result = (|| {
        let report = crate::lab::checks::check_maximizer_interval(4 * per_case, cfg.seed)?;
        let excess = SignCase::ALL
            .par_iter()
            .flat_map(|case| {
                (0..per_case as u64)
                    .into_par_iter()
                    .map(move |i| (*case, i))
            })
            .map(|(case, i)| {
                let (s, t) = random_canonical_pair(
                    &mut cfg.stream(4, ((case.index() as u64) << 32) | i),
                    case,
                );
                grid_area_excess(s, t, 10_000)
            })
            .collect::<Result<Vec<_>>>()?;
        let worst = max_of(excess.into_iter());
        Ok((
            report.passed() && worst <= tol::GRID_EXCESS,
            format!(
                "counts {:?}, outside I {:?}, max grid excess {worst:.1e}",
                report.counts, report.failures
            ),
        ))
    })();
    outcome(4, "maximizer interval", start, result)
}

/// `z < 27/4` on a fine grid, with the expected endpoint limits.
pub fn z_bound(_cfg: &SuiteConfig) -> CriterionOutcome {
    let start = Instant::now();
    let result = (|| {
        let scan = scan_z_bound(1_000_000)?;
        let at_zero = (z_fn(1e-9)? - 4.0).abs();
        let at_one = (z_fn(1.0 - 1e-6)? - 6.75).abs();
        Ok((
            scan.below_bound && scan.resultant_negative && at_zero < tol::Z_AT_ZERO && at_one < tol::Z_AT_ONE,
            format!(
                "grid max {:.12} at w = {:.6}, |z(0+) - 4| {at_zero:.1e}, |z(1-) - 27/4| {at_one:.1e}",
                scan.max, scan.argmax
            ),
        ))
    })();
    outcome(5, "bound function z", start, result)
}

const ANCHOR_GRID: usize = 41;
const ANGLES: usize = 720;

/// Smallest sum of squared distances over lines through a grid of anchors
/// in the unit square at `ANGLES` equally spaced directions.
pub fn brute_force_line_objective(points: &[Point]) -> f64 {
    let normals: Vec<Point> = (0..ANGLES)
        .map(|j| {
            let (s, c) = (std::f64::consts::PI * j as f64 / ANGLES as f64).sin_cos();
            Point::new(-s, c)
        })
        .collect();
    let mut best = f64::INFINITY;
    for ix in 0..ANCHOR_GRID {
        for iy in 0..ANCHOR_GRID {
            let a = (1.0 / (ANCHOR_GRID - 1) as f64) * Point::new(ix as f64, iy as f64);
            for n in &normals {
                let v: f64 = points.iter().map(|p| n.dot(*p - a).powi(2)).sum();
                best = best.min(v);
            }
        }
    }
    best
}

/// The complex-moment line beats every brute-force line and passes through `g`.
pub fn best_fit_oracle(cfg: &SuiteConfig) -> CriterionOutcome {
    let start = Instant::now();
    let n = cfg.count(1_000);
    let rows = (0..n as u64)
        .into_par_iter()
        .map(|i| -> Result<(f64, f64)> {
            let mut rng = cfg.stream(6, i);
            loop {
                let pts: [Point; 4] = [(); 4].map(|_| Point::new(rng.random(), rng.random()));
                let fit = best_fit_line(&pts.map(to_complex))?;
                if let FitLine::UniqueLine(line) = fit.line {
                    let objective = crate::fit::sum_sq_dist(&pts.map(to_complex), &line)?;
                    let improvement = objective - brute_force_line_objective(&pts);
                    return Ok((improvement, line.distance(fit.centroid())));
                }
            }
        })
        .collect::<Result<Vec<_>>>();
    let result = rows.map(|rows| {
        let improvement = max_of(rows.iter().map(|r| r.0));
        let offset = max_of(rows.iter().map(|r| r.1));
        (
            improvement <= tol::BRUTE_FORCE && offset < tol::CENTROID,
            format!(
                "{n} point sets, {ANCHOR_GRID}x{ANCHOR_GRID} anchors x {ANGLES} angles, \
                 max brute-force improvement {improvement:.1e}, centroid offset {offset:.1e}"
            ),
        )
    });
    outcome(6, "best-fit line oracle", start, result)
}

/// Midpoint-ellipse foci lie on the best-fit line of the vertices.
pub fn focal_line(cfg: &SuiteConfig) -> CriterionOutcome {
    let start = Instant::now();
    let n = cfg.count(1_000);
    let result = (|| {
        let rows = (0..n as u64)
            .into_par_iter()
            .map(|i| check_foci_on_bestfit(&random_non_square_parallelogram(&mut cfg.stream(7, i))))
            .collect::<Result<Vec<_>>>()?;
        let generic_ok = rows
            .iter()
            .all(|r| !r.degenerate && r.holds(tol::FOCAL_LINE));
        let distance = max_of(rows.iter().map(|r| r.max_focus_distance));
        let sheared = check_foci_on_bestfit(&ParallelogramFrame::new(4.0, 5.0, 3.0)?)?;
        let slope_err = sheared.slope.map_or(f64::INFINITY, |m| (m - 1.0).abs());
        let squares = (0..n as u64)
            .into_par_iter()
            .map(|i| check_foci_on_bestfit(&random_square(&mut cfg.stream(7, (1 << 32) | i))))
            .collect::<Result<Vec<_>>>()?;
        let square_ok = squares
            .iter()
            .all(|r| r.degenerate && r.circle && r.z_abs < tol::SQUARE_MOMENT);
        let square_z = max_of(squares.iter().map(|r| r.z_abs));
        Ok((
            generic_ok && slope_err < tol::EXAMPLE && sheared.holds(tol::FOCAL_LINE) && square_ok,
            format!(
                "{n} parallelograms, max focus distance {distance:.1e}; slope error {slope_err:.1e}; \
                 {n} squares degenerate: {square_ok}, max |Z| {square_z:.1e}"
            ),
        ))
    })();
    outcome(7, "focal line", start, result)
}

/// The slope expressions of the best-fit line agree on both sides of `k² = d² + l²`.
pub fn slope_identities(cfg: &SuiteConfig) -> CriterionOutcome {
    let start = Instant::now();
    let n = cfg.count(10_000);
    let rows = (0..n as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = cfg.stream(8, i);
            let d = rng.random_range(0.1..2.0);
            let l = rng.random_range(0.1..2.0);
            let hyp = f64::hypot(d, l);
            let k = if i % 2 == 0 {
                hyp * rng.random_range(1.05..3.0)
            } else {
                hyp * rng.random_range(0.1..0.95)
            };
            crate::fit::slope_identities(d, k, l).map(|r| (r.max_abs_gap, k * k > d * d + l * l))
        })
        .collect::<Result<Vec<_>>>();
    let result = rows.map(|rows| {
        let gap = max_of(rows.iter().map(|r| r.0));
        let above = rows.iter().filter(|r| r.1).count();
        (
            gap < tol::SLOPE && above > 0 && above < rows.len(),
            format!("{n} triples ({above} with k² > d² + l²), max pairwise gap {gap:.1e}"),
        )
    });
    outcome(8, "slope identities", start, result)
}

const LOCUS_POINTS: usize = 16;

/// Every interior locus point carries exactly one inscribed ellipse.
pub fn locus_contract(cfg: &SuiteConfig) -> CriterionOutcome {
    let start = Instant::now();
    let n = cfg.count(1_000);
    let rows = (0..n as u64)
        .into_par_iter()
        .map(|i| -> Result<(f64, f64, f64, bool)> {
            let q = random_generic_quad(&mut cfg.stream(9, i));
            let norm = normalize(&q)?;
            let (m1, m2) = diagonal_midpoints(&q);
            let lines = q.side_lines();
            let (mut center_err, mut tangency, mut area) = (0.0_f64, 0.0_f64, 0.0_f64);
            for j in 0..LOCUS_POINTS {
                let tau = (j as f64 + 0.5) / LOCUS_POINTS as f64;
                let center = m1 + tau * (m2 - m1);
                let member = ellipse_at_center(&q, center)?;
                center_err = center_err.max(member.geom.center.distance(center));
                for r in side_tangency(&member.conic, &lines)? {
                    let ok = matches!(r.kind, Tangency::Tangent(_));
                    tangency = tangency.max(if ok { r.residual } else { f64::INFINITY });
                }
                let h = norm.to_canonical.apply(center).x;
                let expected = area_sq(h, norm.s, norm.t)? * norm.jacobian().powi(2);
                area = area.max(rel(member.area().powi(2), expected));
            }
            let normal = Point::new(m1.y - m2.y, m2.x - m1.x);
            let mid = m1.midpoint(m2);
            let rejected = [
                m1 + (-0.25) * (m2 - m1),
                m1 + 1.25 * (m2 - m1),
                mid + 0.1 * normal,
            ]
            .iter()
            .all(|c| ellipse_at_center(&q, *c).is_err());
            Ok((center_err, tangency, area, rejected))
        })
        .collect::<Result<Vec<_>>>();
    let result = rows.map(|rows| {
        let center = max_of(rows.iter().map(|r| r.0));
        let tangency = max_of(rows.iter().map(|r| r.1));
        let area = max_of(rows.iter().map(|r| r.2));
        let rejected = rows.iter().all(|r| r.3);
        (
            center < tol::CENTER && tangency < tol::TANGENCY && area < tol::AREA && rejected,
            format!(
                "{n} quads x {LOCUS_POINTS} centers, center error {center:.1e}, tangency residual {tangency:.1e}, \
                 area spread {area:.1e}, exterior rejected {rejected}"
            ),
        )
    });
    outcome(9, "center locus", start, result)
}

/// Circumscribed ratios stay above `π/2` on the seeded scan.
pub fn conjecture_evidence(cfg: &SuiteConfig) -> CriterionOutcome {
    let start = Instant::now();
    let result = conjecture_scan(cfg.samples, cfg.seed).map(|scan| {
        let r = scan.report;
        let secs = start.elapsed().as_secs_f64();
        (
            r.min_ratio >= FRAC_PI_2 - tol::CONJECTURE
                && r.counterexample_free()
                && r.parallelogram_max_deviation < tol::CONJECTURE
                && (r.square_ratio - FRAC_PI_2).abs() < tol::SQUARE_RATIO
                && secs < budget::CONJECTURE,
            format!(
                "{} samples, min ratio {:.12} (π/2 = {FRAC_PI_2:.12}), {} candidates, \
                 parallelogram deviation {:.1e}, square error {:.1e}",
                r.samples,
                r.min_ratio,
                r.candidates.len(),
                r.parallelogram_max_deviation,
                (r.square_ratio - FRAC_PI_2).abs()
            ),
        )
    });
    outcome(10, "circumscribed lower bound", start, result)
}

pub type Criterion = fn(&SuiteConfig) -> CriterionOutcome;

pub const CRITERIA: [Criterion; 10] = [
    example_reproduction,
    parallelogram_equality,
    strict_inequality,
    maximizer_interval,
    z_bound,
    best_fit_oracle,
    focal_line,
    slope_identities,
    locus_contract,
    conjecture_evidence,
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub outcomes: Vec<CriterionOutcome>,
    pub seconds: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }
}

/// Runs every check in order.
pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let start = Instant::now();
    let outcomes = CRITERIA.iter().map(|c| c(cfg)).collect();
    SuiteReport {
        config: *cfg,
        outcomes,
        seconds: start.elapsed().as_secs_f64(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_budget_passes() {
        let cfg = SuiteConfig {
            seed: 7,
            samples: 100,
        };
        for c in [
            example_reproduction,
            parallelogram_equality,
            strict_inequality,
            slope_identities,
            locus_contract,
        ] {
            let o = c(&cfg);
            assert!(o.passed, "{o}");
        }
    }

    #[test]
    fn brute_force_finds_a_good_line() {
        let pts = [(0.0, 0.0), (1.0, 0.1), (0.5, 0.05), (0.2, 0.02)].map(Point::from);
        assert!(brute_force_line_objective(&pts) < 1e-3);
    }
}
