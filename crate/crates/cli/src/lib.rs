//! Batch verification harness over `gspin-core`: named suites, script replay
//! and deterministic text reports.

pub mod oracle;
pub mod report;
pub mod suites;

pub use report::{strip_timing, Record, Report, Verdict};
pub use suites::{run_replay, run_suite, Suite, SuiteConfig};
