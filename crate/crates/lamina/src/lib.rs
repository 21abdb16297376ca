pub mod cli;
pub mod cluster;
pub mod cones;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod lamination;
pub mod surface;

pub use error::{Error, Result};
