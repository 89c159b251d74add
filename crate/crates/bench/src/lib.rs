//! Benchmarks for the saturation kernels live in `benches/`.
