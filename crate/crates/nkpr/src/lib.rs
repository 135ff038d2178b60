//! File formats and command line for `nkpr-core`.

pub mod cli;
pub mod format;
pub mod output;
