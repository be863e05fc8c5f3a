//! Std companion to `permfield-core`: run configuration, text and JSON
//! formats, latin square files, and parallel drivers behind the `permfield`
//! command-line tool.

pub mod config;
pub mod export;
pub mod json;
pub mod parallel;
pub mod parse;
pub mod sweep;

pub use permfield_core as core;
