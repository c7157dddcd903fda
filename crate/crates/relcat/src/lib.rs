//! Library half of the `relcat` command: the `.rel` file format and the
//! subcommand implementations.

pub mod commands;
pub mod format;
