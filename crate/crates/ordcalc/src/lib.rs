//! Catalog of concrete groups, verification sweeps, report formats and the
//! `ordcalc` command line, on top of `ordcalc-core`.

pub mod catalog;
pub mod census;
pub mod checks;
pub mod cli;
pub mod error;
pub mod golden;
pub mod parse;
pub mod report;
pub mod spec;
pub mod sweep;

pub use error::AppError;
