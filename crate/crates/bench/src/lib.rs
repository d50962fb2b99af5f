//! Benchmarks for `kv-core` live in `benches/`.
