#![no_std]
extern crate alloc;

pub mod algebra;
pub mod error;
pub mod partitions;
pub mod ch_oracle;
pub mod chern;
pub mod cobordism;
pub mod fixtures;
pub mod icis;
pub mod series;

pub use error::{Error, Result};
