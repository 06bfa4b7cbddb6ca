use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use inellipse_core::fit::to_complex;
use inellipse_core::lab::circumscribed::circumscribed_min_ratio;
use inellipse_core::lab::sampling::{random_generic_quad, sample_rng};
use inellipse_core::{
    best_fit_line, diagonal_midpoints, ellipse_at_center, max_area_ellipse, ConvexQuad,
};

fn quads() -> Vec<ConvexQuad> {
    let mut rng = sample_rng(7, 0);
    (0..64).map(|_| random_generic_quad(&mut rng)).collect()
}

fn bench(c: &mut Criterion) {
    let qs = quads();
    c.bench_function("max_area_ellipse", |b| {
        b.iter(|| {
            qs.iter()
                .map(|q| max_area_ellipse(black_box(q)).unwrap().area())
                .sum::<f64>()
        })
    });
    c.bench_function("ellipse_at_center", |b| {
        b.iter(|| {
            qs.iter()
                .map(|q| {
                    let (m1, m2) = diagonal_midpoints(q);
                    ellipse_at_center(black_box(q), m1 + 0.3 * (m2 - m1))
                        .unwrap()
                        .area()
                })
                .sum::<f64>()
        })
    });
    c.bench_function("circumscribed_min_ratio", |b| {
        b.iter(|| {
            qs.iter()
                .map(|q| circumscribed_min_ratio(black_box(q)).unwrap().ratio)
                .sum::<f64>()
        })
    });
    c.bench_function("best_fit_line", |b| {
        b.iter(|| {
            qs.iter()
                .map(|q| {
                    best_fit_line(black_box(&q.vertices().map(to_complex)))
                        .unwrap()
                        .z
                        .re
                })
                .sum::<f64>()
        })
    });
}

criterion_group!(benches, bench);
criterion_main!(benches);
