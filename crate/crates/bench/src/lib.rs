//! Criterion benchmarks for code construction, encoding and decoding; see `benches/`.
