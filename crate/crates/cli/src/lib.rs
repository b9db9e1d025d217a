//! Batch front end: JSON instances in, deterministic JSON reports out.

pub mod commands;
pub mod criteria;
pub mod report;
pub mod spec;

pub use commands::{run, Command, Selection};
pub use report::Report;
pub use spec::{load, parse, InputError, Instance};
