//! Criterion benchmarks for the curvecheck kernels; run with `cargo bench -p curvecheck-bench`.
