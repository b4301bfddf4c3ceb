//! File formats and the command-line front end for `plsheaf-core`.

pub mod cli;
pub mod format;
