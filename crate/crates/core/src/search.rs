//! Bracketed one-dimensional search.

/// `1/φ` where `φ` is the golden ratio.
const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Golden-section minimization of `f` on `[lo, hi]`.
///
/// Stops when the bracket is narrower than `x_tol` (absolute) or after
/// `max_iter` reductions.
pub fn golden_section_min<F>(mut f: F, lo: f64, hi: f64, x_tol: f64, max_iter: usize) -> Minimum
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iterations = 0;
    while (b - a) > x_tol && iterations < max_iter {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        iterations += 1;
    }
    let (x, value) = if fc < fd { (c, fc) } else { (d, fd) };
    Minimum {
        x,
        value,
        iterations,
    }
}

/// Golden-section run independently on `starts` equal sub-brackets of
/// `[lo, hi]`; the best of the local minima is returned.
pub fn multistart_golden_min<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    starts: usize,
    x_tol: f64,
    max_iter: usize,
) -> Minimum
where
    F: FnMut(f64) -> f64,
{
    let starts = starts.max(1);
    let width = (hi - lo) / starts as f64;
    (0..starts)
        .map(|i| {
            let a = lo + width * i as f64;
            golden_section_min(&mut f, a, a + width, x_tol, max_iter)
        })
        .min_by(|p, q| p.value.total_cmp(&q.value))
        .expect("at least one start")
}

/// Bisection for a sign change of `f` on `[lo, hi]`; returns the endpoint
/// on the side where `f(hi)` has its sign. `None` if there is no sign change.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, x_tol: f64, max_iter: usize) -> Option<f64>
where
    F: FnMut(f64) -> f64,
{
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    let mut iter = 0;
    while (hi - lo).abs() > x_tol && iter < max_iter {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
        iter += 1;
    }
    Some(hi)
}
