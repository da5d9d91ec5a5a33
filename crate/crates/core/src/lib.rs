pub mod error;
pub mod scalar;

pub use error::{Error, Result};
pub mod bell;
pub mod cli;
pub mod newton;
pub mod normal_order;
pub mod partitions;
pub mod report;
pub mod sequences;
pub mod stirling;
pub mod suite;
