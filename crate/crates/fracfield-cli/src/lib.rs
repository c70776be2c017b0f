//! Library face of the fracfield CLI: the config schema, CSV conventions
//! and command implementations, shared with the integration tests.

pub mod commands;
pub mod config;
pub mod csvio;
pub mod manifest;
