pub mod blocks;
pub mod cli;
pub mod descent;
pub mod error;
pub mod expr;
pub mod fields;
pub mod groups;
pub mod json;
pub mod linalg;
pub mod ore;
pub mod partial_fractions;
pub mod realization;
pub mod report;
pub mod selftest;

pub use error::{Error, Result};
