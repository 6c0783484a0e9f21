//! Storage, parallel exploration, configuration and reports on top of
//! `omegaforge-core`.

pub mod checkpoint;
pub mod parallel;
pub mod config;
pub mod report;
pub mod cli;
