//! Instance files and experiment orchestration behind the `srr` binary.

pub mod experiment;
pub mod instance;
