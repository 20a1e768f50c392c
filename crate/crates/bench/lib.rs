//! Benchmarks live in `benches/`; run them with `cargo bench -p torus-identities-bench`.
