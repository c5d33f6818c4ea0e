//! Command-line and HTTP JSON front end for `quivercat`.

pub mod cli;
pub mod http;
pub mod jobs;
pub mod models;
