//! Auxiliary functions of the area-ratio bound and the three closed forms of
//! the squared maximal ratio in the canonical `(s, t)` frame.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::quad::check_canonical;

/// `b(s, t) = (st - (s + t - 1))² + st(s + t - 1)`.
pub fn b_fn(s: f64, t: f64) -> Result<f64> {
    if !(s > 0.0 && t > 0.0) {
        return Err(GeometryError::DomainError("b(s, t) needs s, t > 0"));
    }
    let u = s + t - 1.0;
    let v = s * t;
    Ok((v - u).powi(2) + v * u)
}

/// `c(u, v) = u² - uv + v²`.
pub fn c_fn(u: f64, v: f64) -> Result<f64> {
    if !(u > 0.0 && v > 0.0) {
        return Err(GeometryError::DomainError("c(u, v) needs u, v > 0"));
    }
    Ok(u * u - u * v + v * v)
}

/// `d(u, v) = ((v - 2u)(2v - u)(u + v) + 2 c(u, v)^{3/2}) / ((u + 1)² (v - u)²)`.
pub fn d_fn(u: f64, v: f64) -> Result<f64> {
    let c = c_fn(u, v)?;
    if v == u {
        return Err(GeometryError::DomainError("d(u, v) needs v != u"));
    }
    let num = (v - 2.0 * u) * (2.0 * v - u) * (u + v) + 2.0 * c.powf(1.5);
    Ok(num / ((u + 1.0).powi(2) * (v - u).powi(2)))
}

/// `z(w) = ((1 - 2w)(2 - w)(1 + w) + 2(w² - w + 1)^{3/2}) / (1 - w)²` on `(0, 1)`.
///
/// The numerator and denominator both vanish to second order at `w = 1`.
/// Since `4(w² - w + 1)³ - ((1 - 2w)(2 - w)(1 + w))² = 27 w² (1 - w)²`, the
/// upper half of the interval is evaluated as `27 w² / (2(w² - w + 1)^{3/2} - (1 - 2w)(2 - w)(1 + w))`,
/// which has no cancellation there.
pub fn z_fn(w: f64) -> Result<f64> {
    if !(w > 0.0 && w < 1.0) {
        return Err(GeometryError::DomainError("z(w) needs 0 < w < 1"));
    }
    let poly = (1.0 - 2.0 * w) * (2.0 - w) * (1.0 + w);
    let root = 2.0 * (w * w - w + 1.0).powf(1.5);
    if w <= 0.5 {
        Ok((poly + root) / (1.0 - w).powi(2))
    } else {
        Ok(27.0 * w * w / (root - poly))
    }
}

/// `z(w)` straight from the defining quotient, without the rewrite used by
/// [`z_fn`] near `w = 1`.
pub fn z_fn_direct(w: f64) -> f64 {
    let poly = (1.0 - 2.0 * w) * (2.0 - w) * (1.0 + w);
    (poly + 2.0 * (w * w - w + 1.0).powf(1.5)) / (1.0 - w).powi(2)
}

/// Numerator of `z'(w)`: `2w³ - 6w² + 9w - 1 + (2w² - 5w - 1)√(w² - w + 1)`;
/// `z'(w)` is this divided by `(w - 1)³`.
///
/// It has a triple zero at `w = 1`; where both terms have opposite signs the
/// value is taken from the resultant identity instead of the raw sum.
pub fn z_prime_numerator(w: f64) -> f64 {
    let a = 2.0 * w.powi(3) - 6.0 * w * w + 9.0 * w - 1.0;
    let b = (2.0 * w * w - 5.0 * w - 1.0) * (w * w - w + 1.0).sqrt();
    if a > 0.0 && b < 0.0 {
        27.0 * w * (w - 1.0).powi(3) / (a - b)
    } else {
        a + b
    }
}

/// `(2w³ - 6w² + 9w - 1)² - (2w² - 5w - 1)²(w² - w + 1)`, which equals `27 w (w - 1)³`.
pub fn z_prime_resultant(w: f64) -> f64 {
    (2.0 * w.powi(3) - 6.0 * w * w + 9.0 * w - 1.0).powi(2)
        - (2.0 * w * w - 5.0 * w - 1.0).powi(2) * (w * w - w + 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProofCase {
    /// `v > u`, i.e. `(s - 1)(t - 1) > 0`; `w = u / v`.
    UOverV,
    /// `v < u`, i.e. exactly one of `s, t` below one; `w = v / u`.
    VOverU,
}

/// Change of variables `u = s + t - 1`, `v = st` and the reduced variable `w`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProofVars {
    pub s: f64,
    pub t: f64,
    pub u: f64,
    pub v: f64,
    pub w: f64,
    pub case: ProofCase,
}

impl ProofVars {
    pub fn new(s: f64, t: f64) -> Result<Self> {
        check_canonical(s, t)?;
        let u = s + t - 1.0;
        let v = s * t;
        // v - u = (s - 1)(t - 1), computed without cancellation.
        let (w, case) = if (s - 1.0) * (t - 1.0) > 0.0 {
            (u / v, ProofCase::UOverV)
        } else {
            (v / u, ProofCase::VOverU)
        };
        Ok(Self {
            s,
            t,
            u,
            v,
            w,
            case,
        })
    }

    /// `v/(u+1)²` or `u/(u+1)²` depending on the case; at most `1/4`.
    pub fn prefactor(&self) -> f64 {
        let lead = match self.case {
            ProofCase::UOverV => self.v,
            ProofCase::VOverU => self.u,
        };
        lead / (self.u + 1.0).powi(2)
    }

    /// `(u + 1)² - 4v = (s - t)²`.
    pub fn inversion_discriminant(&self) -> f64 {
        (self.u + 1.0).powi(2) - 4.0 * self.v
    }

    /// `(s, t)` recovered from `(u, v)` with `s <= t`.
    pub fn inverted(&self) -> (f64, f64) {
        let root = self.inversion_discriminant().max(0.0).sqrt();
        (0.5 * (self.u + 1.0 - root), 0.5 * (self.u + 1.0 + root))
    }
}

/// Squared maximal ratio from the expression in `s, t` and `b(s, t)`.
pub fn ratio_sq_st(s: f64, t: f64) -> Result<f64> {
    check_canonical(s, t)?;
    let rb = b_fn(s, t)?.sqrt();
    let ts = t * s;
    let num = (2.0 * ts - s - t + 1.0 - rb)
        * (ts - 2.0 * t - 2.0 * s + 2.0 + rb)
        * (s + ts + t - 1.0 + rb);
    let den = (s - 1.0).powi(2) * (t - 1.0).powi(2) * (s + t).powi(2);
    Ok(PI * PI / 27.0 * num / den)
}

/// Squared maximal ratio `π²/27 · d(u, v)`.
pub fn ratio_sq_uv(s: f64, t: f64) -> Result<f64> {
    check_canonical(s, t)?;
    Ok(PI * PI / 27.0 * d_fn(s + t - 1.0, s * t)?)
}

/// Squared maximal ratio `π²/27 · prefactor · z(w)`.
pub fn ratio_sq_factored(s: f64, t: f64) -> Result<f64> {
    let vars = ProofVars::new(s, t)?;
    Ok(PI * PI / 27.0 * vars.prefactor() * z_fn(vars.w)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioFormulaReport {
    pub vars: ProofVars,
    pub ratio_sq_st: f64,
    pub ratio_sq_uv: f64,
    pub ratio_sq_factored: f64,
    pub z: f64,
    /// Largest pairwise relative difference of the three evaluations.
    pub max_rel_gap: f64,
}

impl RatioFormulaReport {
    pub fn ratio(&self) -> f64 {
        self.ratio_sq_factored.sqrt()
    }

    /// Every link of the bound chain: `prefactor <= 1/4`, `z < 27/4`, ratio `< π/4`.
    pub fn bound_chain_holds(&self) -> bool {
        self.vars.prefactor() <= 0.25 && self.z < 6.75 && self.ratio() < PI / 4.0
    }
}

/// Evaluates the squared maximal ratio three ways. Inputs with `s > t` are
/// swapped first; the ratio is symmetric.
pub fn check_ratio_formula(s: f64, t: f64) -> Result<RatioFormulaReport> {
    let (s, t) = if s <= t { (s, t) } else { (t, s) };
    let vars = ProofVars::new(s, t)?;
    let a = ratio_sq_st(s, t)?;
    let b = ratio_sq_uv(s, t)?;
    let c = ratio_sq_factored(s, t)?;
    let z = z_fn(vars.w)?;
    let rel = |x: f64, y: f64| (x - y).abs() / x.abs().max(y.abs());
    let max_rel_gap = rel(a, b).max(rel(a, c)).max(rel(b, c));
    Ok(RatioFormulaReport {
        vars,
        ratio_sq_st: a,
        ratio_sq_uv: b,
        ratio_sq_factored: c,
        z,
        max_rel_gap,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZScanReport {
    pub grid_n: usize,
    pub max: f64,
    pub argmax: f64,
    pub argmax_index: usize,
    pub below_bound: bool,
    /// `z'` numerator stays negative (so `z' > 0`) on the whole grid.
    pub increasing: bool,
    /// The resultant `27 w (w - 1)³` is negative at every grid point.
    pub resultant_negative: bool,
}

/// Maximizes `z` on the open grid `w_i = i / (grid_n + 1)`, `i = 1..=grid_n`.
pub fn scan_z_bound(grid_n: usize) -> Result<ZScanReport> {
    if grid_n < 2 {
        return Err(GeometryError::DomainError("grid_n must be at least 2"));
    }
    let mut max = f64::NEG_INFINITY;
    let mut argmax_index = 0;
    let mut increasing = true;
    let mut resultant_negative = true;
    let step = 1.0 / (grid_n + 1) as f64;
    for i in 1..=grid_n {
        let w = i as f64 * step;
        let z = z_fn(w)?;
        if z > max {
            max = z;
            argmax_index = i;
        }
        increasing &= z_prime_numerator(w) < 0.0;
        resultant_negative &= 27.0 * w * (w - 1.0).powi(3) < 0.0;
    }
    Ok(ZScanReport {
        grid_n,
        max,
        argmax: argmax_index as f64 * step,
        argmax_index,
        below_bound: max < 6.75,
        increasing,
        resultant_negative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_limits() {
        assert!((z_fn(1e-9).unwrap() - 4.0).abs() < 1e-6);
        assert!((z_fn(1.0 - 1e-6).unwrap() - 6.75).abs() < 1e-4);
        assert!(z_fn(0.0).is_err() && z_fn(1.0).is_err());
    }

    #[test]
    fn z_branches_agree() {
        for w in [0.2, 0.45, 0.5, 0.55, 0.7, 0.8] {
            let direct = z_fn_direct(w);
            assert!(
                (z_fn(w).unwrap() - direct).abs() < 1e-12 * direct,
                "w = {w}"
            );
        }
    }

    #[test]
    fn z_monotone_samples() {
        let lo = z_fn(1e-9).unwrap();
        let mid = z_fn(0.5).unwrap();
        let hi = z_fn(1.0 - 1e-6).unwrap();
        assert!(lo < mid && mid < hi);
    }

    #[test]
    fn resultant_identity() {
        for w in [-1.5, 0.1, 0.37, 0.9, 2.0, 3.3] {
            let lhs = z_prime_resultant(w);
            let rhs = 27.0 * w * (w - 1.0f64).powi(3);
            assert!((lhs - rhs).abs() < 1e-10 * (1.0 + rhs.abs()), "w = {w}");
        }
    }

    #[test]
    fn derivative_numerator_negative() {
        for w in [1e-6, 0.1, 0.5, 0.9, 1.0 - 1e-6, 1.0 - 1e-9] {
            assert!(z_prime_numerator(w) < 0.0, "w = {w}");
        }
        let w = 0.3;
        let raw = 2.0 * w * w * w - 6.0 * w * w + 9.0 * w - 1.0
            + (2.0 * w * w - 5.0 * w - 1.0) * (w * w - w + 1.0f64).sqrt();
        assert!((z_prime_numerator(w) - raw).abs() < 1e-14);
    }

    #[test]
    fn substitution_example() {
        assert_eq!(b_fn(2.0, 3.0).unwrap(), 28.0);
        assert_eq!(c_fn(4.0, 6.0).unwrap(), 28.0);
        assert!(d_fn(2.0, 2.0).is_err());
    }

    #[test]
    fn ratio_example_2_3() {
        let r = check_ratio_formula(2.0, 3.0).unwrap();
        assert!((r.ratio_sq_factored - 0.498_320_518_377_502_7).abs() < 1e-12);
        assert!((r.ratio() - 0.705_918_209_410_624_8).abs() < 1e-12);
        assert!(r.max_rel_gap < 1e-13);
        assert_eq!(r.vars.case, ProofCase::UOverV);
        assert!((r.vars.w - 4.0 / 6.0).abs() < 1e-15);
        assert!(r.bound_chain_holds());
        // d(4, 6) = (6/25) z(2/3)
        let d = d_fn(4.0, 6.0).unwrap();
        assert!((d - 6.0 / 25.0 * z_fn(2.0 / 3.0).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn case_membership() {
        let a = ProofVars::new(1.5, 2.5).unwrap();
        assert!(a.case == ProofCase::UOverV && a.w > 0.0 && a.w < 1.0);
        let b = ProofVars::new(0.4, 3.0).unwrap();
        assert!(b.case == ProofCase::VOverU && b.w > 0.0 && b.w < 1.0);
        // Both below one: v > u, so w = u / v.
        let c = ProofVars::new(0.7, 0.6).unwrap();
        assert!(c.case == ProofCase::UOverV && c.w > 0.0 && c.w < 1.0);
        let (s, t) = c.inverted();
        assert!((s - 0.6).abs() < 1e-14 && (t - 0.7).abs() < 1e-14);
    }

    #[test]
    fn symmetric_in_s_t() {
        let a = check_ratio_formula(2.0, 3.0).unwrap().ratio();
        let b = check_ratio_formula(3.0, 2.0).unwrap().ratio();
        assert_eq!(a, b);
    }

    #[test]
    fn z_scan_small() {
        let r = scan_z_bound(1000).unwrap();
        assert!(r.below_bound && r.increasing && r.resultant_negative);
        assert_eq!(r.argmax_index, 1000);
        assert!(scan_z_bound(1).is_err());
    }
}
