//! Front end of the `boxdtw` binary: configuration, input parsing, runs and
//! reports.

pub mod input;
pub mod report;
pub mod run;
pub mod selftest;

pub use input::{parse_input, parse_input_str};
pub use report::{BenchReport, Output, Report, SelftestReport, WorkUnits};
pub use run::{exit_code, run, Algorithm, Command, Mode, OutputFormat, RunConfig};
