//! Criterion benchmarks for `varz-core`; see `benches/`.
