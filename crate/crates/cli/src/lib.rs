//! File formats, report writers and the command implementations behind the
//! `pathinfo` binary.

pub mod args;
pub mod commands;
pub mod config_file;
mod error;
pub mod families;
pub mod report;

pub use error::CliError;

/// Whether every checked relation held.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Violated,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Holds => 0,
            Outcome::Violated => 1,
        }
    }
}
