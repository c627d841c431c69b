//! Reports and checks behind the `ntc` binary.

pub mod commands;
pub mod report;
pub mod verify;

pub use commands::CliError;
pub use report::Report;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const INPUT_ERROR: i32 = 2;
    pub const VERIFICATION_FAILURE: i32 = 3;
}
