//! Input documents, reports and the job runner behind the CLI.

pub mod report;
pub mod run;
pub mod schema;

pub use report::{Format, Report, Status, Table, Verdict};
pub use run::{exit_code, exit_status, parse_window, run, Command, JobSpec};
pub use schema::{parse_str, Document, Object, ParseContext};
