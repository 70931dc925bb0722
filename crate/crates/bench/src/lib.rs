//! Benchmarks for `sgc-core`; see `benches/`.
