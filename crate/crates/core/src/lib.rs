#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod constructions;
pub mod error;
pub mod euclid;
pub mod exact;
pub mod genpoly;
pub mod magnitude;
pub mod metric;
pub mod multipoly;
pub mod planar;
pub mod report;
pub mod riesz;

pub use error::{Error, Result};
