//! File formats and command-line front end for `chernkit-core`.

pub mod cli;
pub mod formats;

pub use chernkit_core as core;
