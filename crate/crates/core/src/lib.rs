//! Ellipses inscribed in and circumscribed about convex quadrilaterals.
//!
//! - [`conic`]: conic classification, geometry extraction and tangency.
//! - [`quad`]: quadrilateral validation, classification and normal forms.
//! - [`family`]: inscribed families and the maximal-area member.
//! - [`fit`]: orthogonal least-squares lines from complex moments.
//! - [`lab`]: numeric checks of the area inequality, the focal-line
//!   property, the Marden counterexample and the circumscribed-ellipse
//!   conjecture.

// `!(x > 0.0)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod conic;
pub mod error;
pub mod family;
pub mod fit;
pub mod geometry;
pub mod lab;
pub mod quad;
pub mod search;

pub use conic::{
    classify_conic, conic_to_ellipse, dual_ellipse, ellipse_area, foci, geometry_to_conic,
    line_tangency, rotation_angle, ConicCoeffs, ConicKind, EllipseGeom, Tangency, TangencyResult,
};
pub use error::{GeometryError, Result};
pub use family::{
    area_sq, ellipse_at_center, locus_line, max_area_ellipse, max_area_param, midpoint_ellipse,
    parallelogram_family, rectangle_family, CenterLocus, InscribedMember, MemberParam,
};
pub use fit::{
    best_fit_line, centroid, second_moment, slope_identities, sum_sq_dist, BestFitResult, FitLine,
};
pub use geometry::{Affine2, ImplicitLine, Line, Point};
pub use quad::{
    diagonal_midpoints, normalize, parallelogram_frame, quad_area, validate, ConvexQuad,
    NormalizedQuad, ParallelogramFrame, QuadFlags,
};
