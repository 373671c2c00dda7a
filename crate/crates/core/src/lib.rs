pub mod cli;
pub mod error;
pub mod exactalg;
pub mod homspace;
pub mod liestruct;
pub mod sympcx;
pub mod symplin;

pub use error::{Error, Result};
