use serde::Serialize;

use crate::ltl::Alphabet;
use crate::partial::{Classification, MonitorabilityReport};

/// Serializable view of a [`MonitorabilityReport`] with event names.
#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub classification: Classification,
    pub can_reach_top: bool,
    pub can_reach_bot: bool,
    pub state_count: usize,
    pub giveup_state_count: usize,
    pub ugly_witness: Option<Vec<String>>,
}

impl ReportDocument {
    pub fn new(report: &MonitorabilityReport, alphabet: &Alphabet) -> Self {
        ReportDocument {
            classification: report.classification,
            can_reach_top: report.can_reach_top,
            can_reach_bot: report.can_reach_bot,
            state_count: report.state_count,
            giveup_state_count: report.giveup_state_count,
            ugly_witness: report
                .ugly_witness
                .as_ref()
                .map(|t| t.names(alphabet).into_iter().map(String::from).collect()),
        }
    }
}

/// Pretty-printed JSON object; an empty witness is `[]`, none is `null`.
pub fn report_json(report: &MonitorabilityReport, alphabet: &Alphabet) -> String {
    serde_json::to_string_pretty(&ReportDocument::new(report, alphabet))
        .expect("report serialization cannot fail")
}
