//! Benchmarks for the rewrite engine and the model evaluator; see `benches/`.
