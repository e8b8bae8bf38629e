pub mod arith;
pub mod certificates;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod ff;
pub mod galois;
pub mod poly;
pub mod serde_util;

pub use error::{Error, Result};
