//! Criterion benchmarks for `geomink`; see `benches/`.
