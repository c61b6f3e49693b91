//! File formats, result rendering and the benchmark harness on top of
//! `graphbench-core`.

pub mod format;
pub mod harness;
pub mod results;

pub use format::{checksum, parse, serialize, ParseCause, ParseError};
pub use harness::{
    emit_report, run, HarnessError, KernelId, KernelParams, KernelReport, Repr, RunConfig,
};
