//! Command line front end for `isgcoh`: JSON instance files and subcommands.

pub mod commands;
pub mod format;
