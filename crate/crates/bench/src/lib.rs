//! Criterion benchmarks for the episturm crate; see benches/.
