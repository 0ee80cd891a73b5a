//! Command-line scenarios for the `tlsrelax` library.

pub mod config;
pub mod output;
pub mod scenarios;
pub mod validate;

pub use config::{Method, RunConfig, Scenario};
