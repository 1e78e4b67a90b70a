//! Library side of the command-line front end: run configuration, bit-exact
//! file formats, deterministic verification reports and the twelve
//! theorem-verification suites.

pub mod config;
pub mod formats;
pub mod report;
pub mod suites;

pub use config::RunConfig;
pub use report::{FailureReport, SuiteReport, VerifyReport};
