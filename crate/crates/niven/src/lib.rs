//! Certificate files and the `niven` command line on top of `niven-core`.

pub mod json;

pub use niven_core as core;
