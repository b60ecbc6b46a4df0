pub mod error;
pub mod exec;
pub mod eisenstein;
pub mod formal;
pub mod fourier;
pub mod mahler;
pub mod rings;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
