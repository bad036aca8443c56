//! Batch front end: parse spec documents, run checks, and emit reports.

pub mod runner;
pub mod spec;

pub use runner::{builtin_suite, run, Check, InputError, Record, Report, ReportBody, RunConfig, SpecSource, Theorem};
pub use spec::{digest, parse_spec, Spec, SpecError};
