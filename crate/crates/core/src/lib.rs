pub mod cli;
pub mod error;
pub mod field;
pub mod gin;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod poly;
pub mod sampler;
pub mod sparsity;
pub mod verify;

pub use error::{Error, Result};
