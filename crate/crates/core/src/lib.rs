//! Sorting laboratory: reference implementations of shell, heap and treap
//! sort, an allocator-instrumented benchmark harness measuring time and
//! memory per run, and a from-scratch exploratory factor analysis of the
//! collected metrics.
//!
//! The crates in this workspace split the work as follows: this crate holds
//! the algorithms and analysis, `sortlab-cli` drives them from the command
//! line, and `sortlab-bench` hosts criterion micro-benchmarks.

pub mod bench;
pub mod report;
pub mod sort;
pub mod stats;
