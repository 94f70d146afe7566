//! IO companion to `sloane-core`: b-file and report serialization,
//! layered run configuration, number-notation parsing, and parallel scan
//! drivers with deterministic merging. The `sloane` binary is a thin
//! layer over this crate.

pub mod config;
pub mod drivers;
pub mod numparse;
pub mod seqio;
