pub mod check;
pub mod cli;
pub mod config;
pub mod dsl;
pub mod error;
pub mod fields;
pub mod forms;
pub mod geometry;
pub mod grassmann;
pub mod scalars;

pub use error::{Error, Result};
