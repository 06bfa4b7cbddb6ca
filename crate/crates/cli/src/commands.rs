use std::f64::consts::FRAC_PI_4;
use std::path::Path;

use inellipse_core::fit::{to_complex, FitLine};
use inellipse_core::lab::checks::{
    check_area_inequality, check_foci_on_bestfit, marden_check, maximal_member, FocalLineReport,
    InequalityReport, MardenReport, MaxAreaRoute,
};
use inellipse_core::lab::circumscribed::circumscribed_min_ratio;
use inellipse_core::lab::conjecture::{conjecture_scan, SampleRow};
use inellipse_core::lab::suite::{run_suite, SuiteConfig, SuiteReport};
use inellipse_core::{
    best_fit_line, diagonal_midpoints, normalize, parallelogram_frame, sum_sq_dist, ConicCoeffs,
    ConvexQuad, Line, MemberParam, Point, QuadFlags,
};
use serde::Serialize;

use crate::error::CliError;
use crate::format::{conic_equation, csv_f64, ANALYZE_COLUMNS, CONJECTURE_COLUMNS, FAMILY_COLUMNS};
use crate::svg::{render_svg, Scene};
use crate::{Command, Format, Layer, QuadDocument, RunConfig};

pub fn execute(command: &Command, cfg: &RunConfig) -> Result<i32, CliError> {
    match command {
        Command::Analyze { input } => analyze(input, cfg),
        Command::MaxEllipse { input } => max_ellipse(input, cfg),
        Command::Family { input, members } => family(input, *members as usize, cfg),
        Command::Bestfit { input } => bestfit(input, cfg),
        Command::Verify { input } => verify(input.as_deref(), cfg),
        Command::Conjecture { candidates } => conjecture(candidates, cfg),
        Command::Render { input, show } => render(input, show, cfg),
    }
}

fn pick_format(
    cfg: &RunConfig,
    command: &str,
    default: Format,
    allowed: &[Format],
) -> Result<Format, CliError> {
    let f = cfg.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(
            format!("`{command}` does not support --format {f:?}").to_lowercase(),
        ))
    }
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn load(input: &Path) -> Result<(QuadDocument, ConvexQuad), CliError> {
    let doc = QuadDocument::read(input)?;
    let q = doc.quad()?;
    Ok((doc, q))
}

#[derive(Serialize)]
struct Canonical {
    s: f64,
    t: f64,
    anchor: usize,
}

#[derive(Serialize)]
struct Frame {
    l: f64,
    k: f64,
    d: f64,
}

#[derive(Serialize)]
struct AnalyzeReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    vertices: [[f64; 2]; 4],
    flags: QuadFlags,
    area: f64,
    diagonal_midpoints: [Point; 2],
    canonical: Option<Canonical>,
    parallelogram_frame: Option<Frame>,
}

fn analyze(input: &Path, cfg: &RunConfig) -> Result<i32, CliError> {
    let (doc, q) = load(input)?;
    let format = pick_format(
        cfg,
        "analyze",
        Format::Json,
        &[Format::Json, Format::Csv, Format::Svg],
    )?;
    let (m1, m2) = diagonal_midpoints(&q);
    let canonical = normalize(&q).ok().map(|n| Canonical {
        s: n.s,
        t: n.t,
        anchor: n.anchor,
    });
    let frame = parallelogram_frame(&q).ok().map(|f| Frame {
        l: f.l,
        k: f.k,
        d: f.d,
    });
    let flags = q.flags();
    let text = match format {
        Format::Json => to_json(&AnalyzeReport {
            id: doc.id,
            vertices: QuadDocument::from_quad(&q, None).vertices,
            flags,
            area: q.area(),
            diagonal_midpoints: [m1, m2],
            canonical,
            parallelogram_frame: frame,
        }),
        Format::Csv => {
            let mut cols: Vec<String> = q
                .vertices()
                .iter()
                .flat_map(|p| [csv_f64(p.x), csv_f64(p.y)])
                .collect();
            cols.push(csv_f64(q.area()));
            cols.extend(
                [
                    flags.is_parallelogram,
                    flags.is_trapezoid,
                    flags.is_tangential,
                ]
                .map(|b| b.to_string()),
            );
            cols.extend([m1.x, m1.y, m2.x, m2.y].map(csv_f64));
            cols.push(canonical.as_ref().map_or(String::new(), |c| csv_f64(c.s)));
            cols.push(canonical.as_ref().map_or(String::new(), |c| csv_f64(c.t)));
            format!("{ANALYZE_COLUMNS}\n{}\n", cols.join(","))
        }
        Format::Svg => render_svg(&Scene {
            polygon: q.vertices().to_vec(),
            ..Scene::default()
        })?,
    };
    emit(cfg, &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct MaxEllipseReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    route: MaxAreaRoute,
    equation: String,
    conic: ConicCoeffs,
    center: Point,
    semi_major: f64,
    semi_minor: f64,
    phi: f64,
    foci: [Point; 2],
    tangency: [Point; 4],
    area: f64,
    quad_area: f64,
    ratio: f64,
    bound: f64,
    bound_gap: f64,
    equality_case: bool,
}

fn max_ellipse(input: &Path, cfg: &RunConfig) -> Result<i32, CliError> {
    let (doc, q) = load(input)?;
    let format = pick_format(
        cfg,
        "max-ellipse",
        Format::Json,
        &[Format::Json, Format::Svg],
    )?;
    let (member, route) = maximal_member(&q)?;
    let (f1, f2) = member.geom.foci();
    let text = match format {
        Format::Svg => render_svg(&Scene {
            polygon: q.vertices().to_vec(),
            ellipses: vec![member.geom],
            points: vec![f1, f2],
            ..Scene::default()
        })?,
        _ => {
            let ratio = member.area() / q.area();
            to_json(&MaxEllipseReport {
                id: doc.id,
                route,
                equation: conic_equation(&member.conic, cfg.tol),
                conic: member.conic,
                center: member.geom.center,
                semi_major: member.geom.a,
                semi_minor: member.geom.b,
                phi: member.geom.phi,
                foci: [f1, f2],
                tangency: member.tangency,
                area: member.area(),
                quad_area: q.area(),
                ratio,
                bound: FRAC_PI_4,
                bound_gap: FRAC_PI_4 - ratio,
                equality_case: q.is_parallelogram(),
            })
        }
    };
    emit(cfg, &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct FamilyRow {
    index: usize,
    parameter_kind: &'static str,
    parameter: f64,
    area: f64,
    center: Point,
    semi_major: f64,
    semi_minor: f64,
    phi: f64,
}

fn family(input: &Path, members: usize, cfg: &RunConfig) -> Result<i32, CliError> {
    let (_, q) = load(input)?;
    let format = pick_format(
        cfg,
        "family",
        Format::Csv,
        &[Format::Csv, Format::Json, Format::Svg],
    )?;
    let sweep = inellipse_core::family::family_sweep(&q, members)?;
    let rows: Vec<FamilyRow> = sweep
        .iter()
        .enumerate()
        .map(|(index, m)| {
            let (parameter_kind, parameter) = match m.param {
                MemberParam::Tangency(v) => ("v", v),
                MemberParam::CenterAbscissa(h) => ("h", h),
                MemberParam::LocusFraction(t) => ("tau", t),
            };
            FamilyRow {
                index,
                parameter_kind,
                parameter,
                area: m.area(),
                center: m.geom.center,
                semi_major: m.geom.a,
                semi_minor: m.geom.b,
                phi: m.geom.phi,
            }
        })
        .collect();
    let text = match format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut out = format!("{FAMILY_COLUMNS}\n");
            for r in &rows {
                let nums = [
                    r.parameter,
                    r.area,
                    r.center.x,
                    r.center.y,
                    r.semi_major,
                    r.semi_minor,
                    r.phi,
                ]
                .map(csv_f64);
                out.push_str(&format!(
                    "{},{},{}\n",
                    r.index,
                    r.parameter_kind,
                    nums.join(",")
                ));
            }
            out
        }
        Format::Svg => render_svg(&Scene {
            polygon: q.vertices().to_vec(),
            ellipses: sweep.iter().map(|m| m.geom).collect(),
            ..Scene::default()
        })?,
    };
    emit(cfg, &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct FitLineReport {
    point: Point,
    direction: Point,
    angle: f64,
    slope: Option<f64>,
}

#[derive(Serialize)]
struct BestFitReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    centroid: Point,
    z: [f64; 2],
    degenerate: bool,
    line: Option<FitLineReport>,
    /// Sum of squared distances; for the degenerate case, of any line through the centroid.
    objective: f64,
}

fn bestfit(input: &Path, cfg: &RunConfig) -> Result<i32, CliError> {
    let (doc, q) = load(input)?;
    let format = pick_format(cfg, "bestfit", Format::Json, &[Format::Json, Format::Svg])?;
    let pts = q.vertices().map(to_complex);
    let fit = best_fit_line(&pts)?;
    let g = fit.centroid();
    let line = fit.unique_line();
    let objective = sum_sq_dist(&pts, &line.unwrap_or_else(|| Line::from_angle(g, 0.0)))?;
    let text = match format {
        Format::Svg => render_svg(&Scene {
            polygon: q.vertices().to_vec(),
            lines: line.into_iter().collect(),
            points: vec![g],
            ..Scene::default()
        })?,
        _ => to_json(&BestFitReport {
            id: doc.id,
            centroid: g,
            z: [fit.z.re, fit.z.im],
            degenerate: matches!(fit.line, FitLine::AllLinesThroughG),
            line: line.map(|l| FitLineReport {
                point: l.point,
                direction: l.dir,
                angle: l.angle(),
                slope: (l.dir.x != 0.0).then(|| l.dir.y / l.dir.x),
            }),
            objective,
        }),
    };
    emit(cfg, &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct InputChecks {
    #[serde(skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    inequality: InequalityReport,
    best_fit_degenerate: bool,
    z_abs: f64,
    focal_line: Option<FocalLineReport>,
    marden: Option<MardenReport>,
    passed: bool,
}

#[derive(Serialize)]
struct VerifyReport {
    input: Option<InputChecks>,
    suite: SuiteReport,
    passed: bool,
}

fn input_checks(input: &Path, cfg: &RunConfig) -> Result<InputChecks, CliError> {
    let (doc, q) = load(input)?;
    let mut inequality = check_area_inequality(&q)?;
    inequality.id = doc.id.clone();
    let fit = best_fit_line(&q.vertices().map(to_complex))?;
    let (focal_line, marden) = if q.is_parallelogram() {
        let frame = parallelogram_frame(&q)?;
        (
            Some(check_foci_on_bestfit(&frame)?),
            Some(marden_check(&frame)?),
        )
    } else {
        (None, None)
    };
    let passed = inequality.holds() && focal_line.is_none_or(|f| f.holds(cfg.tol));
    Ok(InputChecks {
        id: doc.id,
        inequality,
        best_fit_degenerate: matches!(fit.line, FitLine::AllLinesThroughG),
        z_abs: fit.z.norm(),
        focal_line,
        marden,
        passed,
    })
}

fn verify(input: Option<&Path>, cfg: &RunConfig) -> Result<i32, CliError> {
    pick_format(cfg, "verify", Format::Json, &[Format::Json])?;
    let checks = input.map(|p| input_checks(p, cfg)).transpose()?;
    let suite = run_suite(&SuiteConfig {
        seed: cfg.seed,
        samples: cfg.samples as usize,
    });
    if let Some(c) = &checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        eprintln!(
            "[{status}] input: ratio {:.15} (π/4 - ratio = {:.3e}), best-fit {}",
            c.inequality.ratio,
            c.inequality.bound_gap,
            if c.best_fit_degenerate {
                "degenerate (every line through the centroid)"
            } else {
                "unique"
            }
        );
    }
    for o in &suite.outcomes {
        eprintln!("{o}");
    }
    let passed = suite.passed() && checks.as_ref().is_none_or(|c| c.passed);
    emit(
        cfg,
        &to_json(&VerifyReport {
            input: checks,
            suite,
            passed,
        }),
    )?;
    Ok(if passed { 0 } else { 1 })
}

#[derive(Serialize)]
struct CandidateFile<'a> {
    seed: u64,
    samples: usize,
    candidates: &'a [SampleRow],
}

fn conjecture(candidates: &Path, cfg: &RunConfig) -> Result<i32, CliError> {
    let format = pick_format(
        cfg,
        "conjecture",
        Format::Json,
        &[Format::Json, Format::Csv],
    )?;
    let scan = conjecture_scan(cfg.samples as usize, cfg.seed)?;
    let text = match format {
        Format::Csv => {
            let mut out = format!("{CONJECTURE_COLUMNS}\n");
            for r in &scan.rows {
                let stratum = serde_json::to_value(r.stratum).expect("stratum serializes");
                let coords: Vec<String> = r
                    .vertices
                    .iter()
                    .flat_map(|p| [csv_f64(p.x), csv_f64(p.y)])
                    .collect();
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.index,
                    stratum.as_str().unwrap_or_default(),
                    coords.join(","),
                    csv_f64(r.ratio),
                    csv_f64(r.gap)
                ));
            }
            out
        }
        _ => to_json(&scan.report),
    };
    emit(cfg, &text)?;
    let report = &scan.report;
    eprintln!(
        "{} samples, min ratio {:.15} at index {}, {} candidates, {} failures",
        report.samples,
        report.min_ratio,
        report.argmin.index,
        report.candidates.len(),
        report.failures.len()
    );
    if report.candidates.is_empty() && report.failures.is_empty() {
        return Ok(0);
    }
    let file = CandidateFile {
        seed: report.seed,
        samples: report.samples,
        candidates: &report.candidates,
    };
    std::fs::write(candidates, to_json(&file)).map_err(|source| CliError::Write {
        path: candidates.to_path_buf(),
        source,
    })?;
    eprintln!("candidates written to {}", candidates.display());
    Ok(1)
}

fn render(input: &Path, show: &[Layer], cfg: &RunConfig) -> Result<i32, CliError> {
    let (_, q) = load(input)?;
    pick_format(cfg, "render", Format::Svg, &[Format::Svg])?;
    let mut scene = Scene {
        polygon: q.vertices().to_vec(),
        ..Scene::default()
    };
    let mut layers = show.to_vec();
    layers.sort_by_key(|l| *l as u8);
    layers.dedup();
    for layer in layers {
        match layer {
            Layer::Max => scene.ellipses.push(maximal_member(&q)?.0.geom),
            Layer::Circumscribed => scene.ellipses.push(circumscribed_min_ratio(&q)?.geom),
            Layer::Bestfit => scene
                .lines
                .extend(best_fit_line(&q.vertices().map(to_complex))?.unique_line()),
            Layer::Foci => {
                let (f1, f2) = maximal_member(&q)?.0.geom.foci();
                scene.points.extend([f1, f2]);
            }
        }
    }
    emit(cfg, &render_svg(&scene)?)?;
    Ok(0)
}
