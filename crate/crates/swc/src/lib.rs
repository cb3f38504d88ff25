//! File formats, reports and the command-line driver around `swcore`.

pub mod cli;
pub mod pool;
pub mod repdoc;
pub mod report;
pub mod selftest;
