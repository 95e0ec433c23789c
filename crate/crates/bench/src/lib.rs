//! Criterion benchmarks for the closure, membership and growth routines live in `benches/`.
