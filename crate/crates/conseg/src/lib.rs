//! File formats and command-line pipeline around `conseg-core`: annotated
//! corpora, pair lists, Burmeister contexts, JSON and DOT exports, and a flat
//! configuration file.

pub mod cli;
pub mod config;
pub mod corpus;
pub mod cxt;
pub mod dot;
pub mod error;
pub mod json;

pub use config::PipelineConfig;
pub use error::{CliError, FormatError};
