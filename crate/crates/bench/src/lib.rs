//! Criterion benchmarks for `sggmix`; see `benches/`.
