//! From Büchi automata to three-valued Moore monitors: per-state emptiness,
//! prefix NFAs, determinization, the product machine and its minimization.

mod dfa;
mod moore;
mod nfa;
mod synth;

pub use dfa::{determinize, Dfa};
pub use moore::{
    minimize_moore, monitor_verdict, Monitor3, MooreMonitor, Output, PartialMonitor, Verdict,
    VerdictB3,
};
pub use nfa::{nba_to_nfa, per_state_nonempty, Nfa};
pub use synth::{prefix_dfa, synthesize_monitor, Synthesis};
