//! Partial monitors: inconclusive states from which no ⊤ or ⊥ state can be
//! reached are relabeled χ (give up), and machines are classified by where
//! such states occur.

use std::collections::VecDeque;

use serde::Serialize;

use crate::fsm::{MooreMonitor, Output, PartialMonitor, Verdict};
use crate::graph;
use crate::ltl::{Event, FiniteTrace};

/// Relabels every `?` state that cannot reach a conclusive state as χ.
/// Structure and ⊤/⊥ outputs are untouched. One backward sweep from the
/// conclusive states, linear in states plus transitions.
pub fn partialize<O: Output>(m: &MooreMonitor<O>) -> PartialMonitor {
    let conclusive: Vec<bool> = m.outputs().iter().map(|o| o.verdict().is_conclusive()).collect();
    let hopeful = graph::can_reach(&m.adjacency(), &conclusive);
    m.map_outputs(|q, o| match o.verdict() {
        Verdict::Unknown | Verdict::GiveUp if !hopeful[q] => Verdict::GiveUp,
        Verdict::GiveUp => Verdict::Unknown,
        v => v,
    })
}

/// Forward search from `from` for a ⊤ or ⊥ state.
pub fn reachability_oracle<O: Output>(m: &MooreMonitor<O>, from: usize) -> bool {
    let mut seen = vec![false; m.len()];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(q) = queue.pop_front() {
        if m.output(q).verdict().is_conclusive() {
            return true;
        }
        for &t in m.row(q) {
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Classification {
    /// The initial state already gives up: no prefix ever determines the
    /// property.
    NonMonitorable,
    /// Some prefixes can still be determined, others are ugly.
    ExistsPzOnly,
    /// No ugly prefix exists.
    ForallPz,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::NonMonitorable => "NON_MONITORABLE",
            Classification::ExistsPzOnly => "EXISTS_PZ_ONLY",
            Classification::ForallPz => "FORALL_PZ",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonitorabilityReport {
    pub classification: Classification,
    pub can_reach_top: bool,
    pub can_reach_bot: bool,
    pub state_count: usize,
    pub giveup_state_count: usize,
    /// Shortest (then alphabet-lexicographically least) trace into a χ
    /// state; `None` when there is none.
    pub ugly_witness: Option<FiniteTrace>,
}

/// Classifies a partialized machine.
pub fn classify(m: &PartialMonitor) -> MonitorabilityReport {
    let giveup_state_count = m.count(Verdict::GiveUp);
    let classification = if m.output(m.initial()) == Verdict::GiveUp {
        Classification::NonMonitorable
    } else if giveup_state_count == 0 {
        Classification::ForallPz
    } else {
        Classification::ExistsPzOnly
    };

    let (reached, witness) = explore(m);
    let can_reach = |v: Verdict| m.states().any(|q| reached[q] && m.output(q) == v);
    MonitorabilityReport {
        classification,
        can_reach_top: can_reach(Verdict::Top),
        can_reach_bot: can_reach(Verdict::Bot),
        state_count: m.len(),
        giveup_state_count,
        ugly_witness: witness,
    }
}

/// Breadth-first search from the initial state with successors in alphabet
/// order. Returns the reached set and the first χ state's access path.
fn explore(m: &PartialMonitor) -> (Vec<bool>, Option<FiniteTrace>) {
    let n = m.len();
    let mut parent: Vec<Option<(usize, Event)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([m.initial()]);
    seen[m.initial()] = true;
    let mut ugly = None;
    while let Some(q) = queue.pop_front() {
        if ugly.is_none() && m.output(q) == Verdict::GiveUp {
            ugly = Some(q);
        }
        for e in m.alphabet().events() {
            let t = m.step(q, e);
            if !seen[t] {
                seen[t] = true;
                parent[t] = Some((q, e));
                queue.push_back(t);
            }
        }
    }
    let witness = ugly.map(|mut q| {
        let mut events = Vec::new();
        while let Some((p, e)) = parent[q] {
            events.push(e);
            q = p;
        }
        events.reverse();
        FiniteTrace::new(events)
    });
    (seen, witness)
}
