//! Library surface of the command-line front end, exposed for integration
//! tests: configuration, report assembly, and apartment figures.

pub mod config;
pub mod report;
pub mod svg;
