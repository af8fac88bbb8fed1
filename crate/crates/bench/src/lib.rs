//! Criterion benchmarks for `nstep-core`; see `benches/`. No library API.
