//! Criterion benchmarks for `molrate`; see `benches/`.
