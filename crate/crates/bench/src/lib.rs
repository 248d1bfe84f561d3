//! Benchmarks for `qstat-core`; run with `cargo bench -p qstat-bench`.
