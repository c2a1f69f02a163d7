//! Command line and HTTP service around the semantic-units engine.

pub mod cli;
pub mod config;
pub mod error;
pub mod http;
pub mod ops;
pub mod store;
