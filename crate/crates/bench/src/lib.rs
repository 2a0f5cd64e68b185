//! Criterion benchmarks for the spinboost pipeline; see `benches/`.
