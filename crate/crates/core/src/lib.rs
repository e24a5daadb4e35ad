//! Equality-of-effort fairness audits built on causal algorithmic recourse.

pub mod audit;
pub mod cli;
pub mod config;
pub mod data;
pub mod error;
pub mod models;
pub mod recourse;
pub mod scm;
pub mod similarity;
pub mod stats;

pub use error::{Error, Result};
