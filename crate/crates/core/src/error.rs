use thiserror::Error;

/// Errors raised by the geometric constructions and checks in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("conic is not a real non-degenerate ellipse")]
    NotAnEllipse,
    #[error("center system is singular (AB - C^2 is zero)")]
    SingularCenterSystem,
    #[error("line has a vanishing normal (alpha = beta = 0)")]
    DegenerateLine,
    #[error("points are not in strictly convex position")]
    NotConvex,
    #[error("degenerate vertices: {0}")]
    DegenerateVertices(&'static str),
    #[error("quadrilateral is a trapezoid; the canonical (s, t) form does not exist")]
    IsTrapezoid,
    #[error("quadrilateral is not a parallelogram")]
    NotParallelogram,
    #[error("parameter {name} = {value} lies outside its admissible range")]
    ParameterOutOfRange { name: &'static str, value: f64 },
    #[error(
        "canonical form violated: need s, t > 0, s + t > 1, s != 1, t != 1 (got s = {s}, t = {t})"
    )]
    CanonicalFormViolated { s: f64, t: f64 },
    #[error("requested center is not on the open segment between the diagonal midpoints")]
    CenterOffLocus,
    #[error("quadrilateral is a parallelogram; its centers collapse to a single point")]
    IsParallelogram,
    #[error("non-parallelogram trapezoids are not supported by the closed-form maximizer")]
    TrapezoidUnsupported,
    #[error("empty point set")]
    EmptyInput,
    #[error("Im Z vanishes (d = 0); use the axis-aligned branch")]
    ZeroImaginaryPart,
    #[error("argument outside the function domain: {0}")]
    DomainError(&'static str),
    #[error("optimization failed: {0}")]
    OptimizationFailed(&'static str),
    #[error("non-finite input coordinate")]
    NonFinite,
}

impl GeometryError {
    /// Variant name, for diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            GeometryError::NotAnEllipse => "NotAnEllipse",
            GeometryError::SingularCenterSystem => "SingularCenterSystem",
            GeometryError::DegenerateLine => "DegenerateLine",
            GeometryError::NotConvex => "NotConvex",
            GeometryError::DegenerateVertices(_) => "DegenerateVertices",
            GeometryError::IsTrapezoid => "IsTrapezoid",
            GeometryError::NotParallelogram => "NotParallelogram",
            GeometryError::ParameterOutOfRange { .. } => "ParameterOutOfRange",
            GeometryError::CanonicalFormViolated { .. } => "CanonicalFormViolated",
            GeometryError::CenterOffLocus => "CenterOffLocus",
            GeometryError::IsParallelogram => "IsParallelogram",
            GeometryError::TrapezoidUnsupported => "TrapezoidUnsupported",
            GeometryError::EmptyInput => "EmptyInput",
            GeometryError::ZeroImaginaryPart => "ZeroImaginaryPart",
            GeometryError::DomainError(_) => "DomainError",
            GeometryError::OptimizationFailed(_) => "OptimizationFailed",
            GeometryError::NonFinite => "NonFinite",
        }
    }
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
