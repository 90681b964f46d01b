//! Library side of the `sggmix` command: settings, file formats and the
//! `simulate`, `fit` and `summarize` commands.

pub mod commands;
pub mod config;
pub mod io;
pub mod manifest;

pub use commands::{cmd_fit, cmd_rerun, cmd_simulate, cmd_summarize, FitOutcome, FitRun};
pub use config::FitSettings;
pub use manifest::RunManifest;
