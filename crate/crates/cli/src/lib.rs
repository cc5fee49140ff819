//! Command-line front end for `qwhit-core`: JSON reports and the acceptance runner.

pub mod acceptance;
pub mod args;
pub mod commands;
pub mod json;
pub mod report;

pub use args::{Cli, Command};
pub use commands::run;
pub use report::{Check, RunReport, UsageError};

/// Exit codes: 0 all checks pass, 1 an invariant failed, 2 usage error.
pub fn exit_code_for(err: &anyhow::Error) -> i32 {
    if err.downcast_ref::<UsageError>().is_some() {
        2
    } else {
        1
    }
}
