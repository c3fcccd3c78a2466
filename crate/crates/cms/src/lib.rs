//! Reports and verification sweeps over `cms-core`.

pub mod commands;
pub mod report;
pub mod suites;

pub use commands::{CliError, Options, Suite, SweepParams};
pub use report::Report;
