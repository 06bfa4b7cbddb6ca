//! Criterion benchmarks for the geometry kernels; see `benches/geometry.rs`.
