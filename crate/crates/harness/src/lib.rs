//! Command-line harness: instance files, verification reports, sweeps,
//! tightness search and the degenerate-case demo.
//!
//! Exit codes are shared across subcommands: `0` when every defined
//! relation holds, `1` on a numerical violation, `2` on bad input.

pub mod cli;
pub mod demo;
pub mod error;
pub mod extremal;
pub mod format;
pub mod instance;
pub mod sweep;
pub mod verify;

pub use error::{exit, HarnessError, Result};
