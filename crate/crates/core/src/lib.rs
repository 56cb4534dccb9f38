pub mod bits;
pub mod bounds;
pub mod cli;
pub mod crac;
pub mod error;
pub mod linalg;
pub mod qfa;
pub mod qrac;
pub mod table;

pub use error::{Error, Result};
