//! Text formats, parallel drivers and the `syndetic` command line on top of
//! [`syndetic_core`].

pub mod cli;
pub mod format;
pub mod par;

pub use syndetic_core as core;
