//! Atlas pipeline and output formats behind the `gsa` command-line tool.

pub mod atlas;
pub mod cache;
pub mod emit;
pub mod spec;
