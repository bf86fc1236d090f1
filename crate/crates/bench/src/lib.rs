//! Criterion benchmarks for the collgate numerics; see `benches/`.
