//! Library side of the `qgcount` tool: run configuration, seeded random
//! instances and the reproduction suite behind `verify-paper`.

pub mod commands;
pub mod config;
pub mod random;
pub mod verify;

pub use config::{OutputFormat, RunConfig};
