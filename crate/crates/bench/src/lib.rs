//! Criterion benchmarks for the ingestion, snapshot and report pipeline.
