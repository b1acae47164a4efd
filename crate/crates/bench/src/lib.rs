//! Benchmarks for the dodeca pipeline live in `benches/`.
