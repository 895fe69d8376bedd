//! Criterion benchmarks for the diffusion engines; see `benches/engines.rs`.
