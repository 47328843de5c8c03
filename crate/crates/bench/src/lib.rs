//! Criterion benchmarks for `ibd-core`; see `benches/`.
