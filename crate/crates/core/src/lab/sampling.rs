//! Seeded samplers. Every draw is keyed by `(seed, index)` so parallel scans
//! reproduce the same samples regardless of scheduling.

use std::f64::consts::TAU;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geometry::{Affine2, Point};
use crate::quad::{normalize, validate, ConvexQuad, ParallelogramFrame};

/// Minimum normalized cross product of consecutive sides for an accepted quad.
pub const MIN_CROSS: f64 = 1e-6;
/// Minimum `|s - 1|` and `|t - 1|` for sampled canonical pairs.
pub const TRAPEZOID_MARGIN: f64 = 1e-3;
/// Minimum `|(s - 1)(t - 1)|` for generic quads. The closed-form ratio
/// expressions lose about `ε / ((s - 1)(t - 1))²` relative accuracy.
pub const GENERIC_MARGIN: f64 = 1e-2;
const MAX_REJECTIONS: usize = 10_000;

/// Generator for sample `index` of stream `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn min_turn(q: &ConvexQuad) -> f64 {
    let v = q.vertices();
    let scale = q.diameter();
    (0..4)
        .map(|i| {
            let a = v[(i + 1) % 4] - v[i];
            let b = v[(i + 2) % 4] - v[(i + 1) % 4];
            a.cross(b) / (scale * scale)
        })
        .fold(f64::INFINITY, f64::min)
}

fn accept(points: [Point; 4]) -> Option<ConvexQuad> {
    validate(points).ok().filter(|q| min_turn(q) > MIN_CROSS)
}

/// Four uniform points of the unit square in strictly convex position.
pub fn random_convex_quad<R: Rng>(rng: &mut R) -> ConvexQuad {
    loop {
        let pts = [(); 4].map(|_| Point::new(rng.random(), rng.random()));
        if let Some(q) = accept(pts) {
            return q;
        }
    }
}

/// Four uniform points of the unit disk in strictly convex position.
pub fn random_disk_quad<R: Rng>(rng: &mut R) -> ConvexQuad {
    loop {
        let pts = [(); 4].map(|_| {
            let r = rng.random::<f64>().sqrt();
            let a = rng.random::<f64>() * TAU;
            Point::new(r * a.cos(), r * a.sin())
        });
        if let Some(q) = accept(pts) {
            return q;
        }
    }
}

/// Convex quad of the unit square whose canonical pair satisfies
/// `|(s - 1)(t - 1)| > GENERIC_MARGIN`, away from the trapezoids.
pub fn random_generic_quad<R: Rng>(rng: &mut R) -> ConvexQuad {
    for _ in 0..MAX_REJECTIONS {
        let q = random_convex_quad(rng);
        if q.is_trapezoid() {
            continue;
        }
        if let Ok(n) = normalize(&q) {
            if ((n.s - 1.0) * (n.t - 1.0)).abs() > GENERIC_MARGIN {
                return q;
            }
        }
    }
    unreachable!("generic quads have positive probability")
}

/// Parallelogram with random side lengths, shear, rotation and translation.
pub fn random_parallelogram<R: Rng>(rng: &mut R) -> ParallelogramFrame {
    let l = rng.random_range(0.2..2.0);
    let k = rng.random_range(0.2..2.0);
    let d = rng.random_range(0.0..2.0);
    random_placement(rng, l, k, d)
}

/// Parallelogram that is not a square: either the sides differ or the shear
/// is clearly nonzero.
pub fn random_non_square_parallelogram<R: Rng>(rng: &mut R) -> ParallelogramFrame {
    loop {
        let f = random_parallelogram(rng);
        if (f.l - f.k).abs() > 1e-3 || f.d > 1e-3 {
            return f;
        }
    }
}

/// Square with random side, rotation and translation.
pub fn random_square<R: Rng>(rng: &mut R) -> ParallelogramFrame {
    let l = rng.random_range(0.2..2.0);
    random_placement(rng, l, l, 0.0)
}

fn random_placement<R: Rng>(rng: &mut R, l: f64, k: f64, d: f64) -> ParallelogramFrame {
    let angle = rng.random_range(0.0..TAU);
    let t = Point::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
    ParallelogramFrame::placed(l, k, d, Affine2::rigid(angle, t)).expect("sampled frame is valid")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignCase {
    /// `s, t > 1`
    BothAbove,
    /// `s < 1 < t`
    SBelow,
    /// `t < 1 < s`
    TBelow,
    /// `s, t < 1`, `s + t > 1`
    BothBelow,
}

impl SignCase {
    pub const ALL: [SignCase; 4] = [
        SignCase::BothAbove,
        SignCase::SBelow,
        SignCase::TBelow,
        SignCase::BothBelow,
    ];

    pub fn of(s: f64, t: f64) -> SignCase {
        match (s > 1.0, t > 1.0) {
            (true, true) => SignCase::BothAbove,
            (false, true) => SignCase::SBelow,
            (true, false) => SignCase::TBelow,
            (false, false) => SignCase::BothBelow,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Canonical pair `(s, t)` in the requested sign case. Not ordered: `s > t`
/// is allowed.
pub fn random_canonical_pair<R: Rng>(rng: &mut R, case: SignCase) -> (f64, f64) {
    let above = |rng: &mut R| rng.random_range(1.0 + TRAPEZOID_MARGIN..4.0);
    let below = |rng: &mut R| rng.random_range(TRAPEZOID_MARGIN..1.0 - TRAPEZOID_MARGIN);
    match case {
        SignCase::BothAbove => (above(rng), above(rng)),
        SignCase::SBelow => (below(rng), above(rng)),
        SignCase::TBelow => (above(rng), below(rng)),
        SignCase::BothBelow => loop {
            let (s, t) = (below(rng), below(rng));
            if s + t > 1.0 + TRAPEZOID_MARGIN {
                break (s, t);
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let a = random_convex_quad(&mut sample_rng(42, 7));
        let b = random_convex_quad(&mut sample_rng(42, 7));
        let c = random_convex_quad(&mut sample_rng(42, 8));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn generic_quads_normalize() {
        let mut rng = sample_rng(1, 0);
        for _ in 0..200 {
            let q = random_generic_quad(&mut rng);
            assert!(!q.is_trapezoid());
            let n = normalize(&q).unwrap();
            assert!(((n.s - 1.0) * (n.t - 1.0)).abs() > GENERIC_MARGIN);
        }
    }

    #[test]
    fn parallelograms_are_flagged() {
        let mut rng = sample_rng(2, 0);
        for _ in 0..200 {
            assert!(random_parallelogram(&mut rng)
                .quad()
                .unwrap()
                .is_parallelogram());
        }
    }

    #[test]
    fn pairs_land_in_their_case() {
        let mut rng = sample_rng(3, 0);
        for case in SignCase::ALL {
            for _ in 0..100 {
                let (s, t) = random_canonical_pair(&mut rng, case);
                assert_eq!(SignCase::of(s, t), case);
                assert!(s + t > 1.0 && s > 0.0 && t > 0.0);
            }
        }
    }
}
