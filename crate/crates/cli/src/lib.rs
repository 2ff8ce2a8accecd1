//! Descriptor parsing, command dispatch and JSON reports for the `adapted` tool.

pub mod commands;
pub mod descriptor;
pub mod expr;
pub mod report;

pub use commands::{run_command, Command, Mode, Options};
pub use descriptor::{load, parse_descriptor, resolve, serialize_descriptor, AlgebraDescriptor};
pub use report::RunReport;
