//! Partial runtime-verification monitors for LTL.
//!
//! A formula is turned into a Büchi automaton, then into a three-valued
//! Moore machine (⊤, ⊥, ?), and finally into a partial monitor whose hopeless
//! inconclusive states output χ ("give up"). Monitors can be classified,
//! serialized, and executed over event traces.
//!
//! ```
//! use pmon_core::prelude::*;
//!
//! let sigma = Alphabet::parse_list("ev1,ev2,ev3,ev4").unwrap();
//! let phi = parse_formula("(ev1 & <>ev2) | (ev3 & []<>ev4)", &sigma).unwrap();
//! let monitor = partialize(&synthesize_monitor(&phi, &sigma, true).unwrap());
//!
//! let report = classify(&monitor);
//! assert_eq!(report.classification, Classification::ExistsPzOnly);
//!
//! let trace = parse_trace("ev3 ev1", &sigma).unwrap();
//! assert_eq!(monitor_verdict(&monitor, &trace).unwrap(), Verdict::GiveUp);
//! ```

pub mod buchi;
pub mod check;
pub mod error;
pub mod fsm;
mod graph;
pub mod io;
pub mod ltl;
pub mod partial;
pub mod runtime;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::buchi::{ltl_to_nba, nba_accepts_lasso, Nba};
    pub use crate::error::{Error, Result};
    pub use crate::fsm::{
        minimize_moore, monitor_verdict, synthesize_monitor, Monitor3, MooreMonitor, PartialMonitor,
        Verdict, VerdictB3,
    };
    pub use crate::io::{emit_dot, emit_monitor, parse_monitor, parse_trace, report_json};
    pub use crate::ltl::{
        lasso_eval, negate_nnf, nnf, parse_formula, parse_formula_infer, Alphabet, Event,
        FiniteTrace, Formula, LassoWord,
    };
    pub use crate::partial::{classify, partialize, reachability_oracle, Classification, MonitorabilityReport};
    pub use crate::runtime::{run_trace, MonitorSession, Status};
}
