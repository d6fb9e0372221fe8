//! Criterion benchmarks for the `cubeknot` engines: grid and cube homology,
//! lifting, and GF(2) rank. Run with `cargo bench -p cubeknot-bench`.
