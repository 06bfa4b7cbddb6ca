//! Numeric verification of the area inequality, its auxiliary bounds, the
//! focal-line property, the Marden comparison and the circumscribed-ellipse
//! lower bound.

pub mod bounds;
pub mod checks;
pub mod circumscribed;
pub mod conjecture;
pub mod sampling;
pub mod suite;

pub use bounds::{
    b_fn, c_fn, check_ratio_formula, d_fn, scan_z_bound, z_fn, ProofCase, ProofVars,
    RatioFormulaReport,
};
pub use checks::{
    check_area_inequality, check_foci_on_bestfit, check_maximizer_interval, marden_check,
    InequalityReport, MardenReport, MaximizerIntervalReport,
};
pub use circumscribed::{circumscribed_min_ratio, CircumscribedEllipse};
pub use conjecture::{conjecture_scan, ConjectureReport, ConjectureScan};
pub use suite::{run_suite, CriterionOutcome, SuiteConfig, SuiteReport};
