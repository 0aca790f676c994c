pub mod abelian;
pub mod cli;
pub mod error;
pub mod model;
pub mod past;
pub mod shift;
pub mod transforms;

pub use error::{Error, Result};
