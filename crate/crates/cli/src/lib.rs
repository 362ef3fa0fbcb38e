//! File format, reports and subcommands of the `segal-abacus` tool.

pub mod commands;
pub mod format;
pub mod report;
