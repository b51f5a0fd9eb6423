//! JSON formats, verification suites and the command implementations behind
//! `magctl`.

pub mod cli;
pub mod codec;
pub mod error;
pub mod suites;

pub use error::{CliError, Result};
