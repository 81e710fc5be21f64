//! Command-line front end for the `qtheta` identity harness.

pub mod commands;
pub mod document;
pub mod numfmt;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const CHECK_FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const IO: u8 = 3;
}
