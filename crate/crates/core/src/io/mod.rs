//! Text formats: the PMF monitor format, trace files, Graphviz export and
//! the classification report.

mod dot;
mod pmf;
mod report;
mod trace;

pub use dot::{emit_dot, emit_nba_dot};
pub use pmf::{emit_monitor, parse_monitor};
pub use report::{report_json, ReportDocument};
pub use trace::parse_trace;
