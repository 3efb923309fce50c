pub mod ca;
pub mod cli;
pub mod emergence;
pub mod error;
pub mod galois;
pub mod meso;
pub mod quantum;
pub mod group;
pub mod relation;

pub use error::{Error, Result};
