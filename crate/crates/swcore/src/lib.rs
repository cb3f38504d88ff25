//! Stiefel-Whitney presentations of group cohomology over F2.
#![no_std]
extern crate alloc;

pub mod chow;
pub mod error;
pub mod f2algebra;
pub mod formalring;
pub mod repdata;
pub mod swsolver;

pub use error::{Error, Result};
