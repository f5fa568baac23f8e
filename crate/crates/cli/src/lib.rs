//! Report generation for the `edsx` command-line tool.

pub mod checks;
pub mod properties;
