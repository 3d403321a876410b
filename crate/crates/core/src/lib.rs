//! Design calculations for atoms trapped around a subwavelength optical fiber and
//! coupled to superconducting microwave circuits.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod cli;
pub mod config;
pub mod coupling;
pub mod error;
pub mod fibermode;
pub mod numerics;
pub mod specfun;
pub mod taper;
pub mod trap;

pub use error::{Error, Result};
