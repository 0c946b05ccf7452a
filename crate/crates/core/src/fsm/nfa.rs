use std::collections::BTreeSet;

use crate::buchi::Nba;
use crate::error::Result;
use crate::graph;
use crate::ltl::{Alphabet, Event, FiniteTrace};

/// Finite automaton on finite words with the transition structure of an NBA.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    initial: Vec<usize>,
    delta: Vec<Vec<Vec<usize>>>,
    finals: Vec<bool>,
}

impl Nfa {
    pub fn new(
        alphabet: Alphabet,
        states: usize,
        initial: Vec<usize>,
        transitions: &[(usize, Event, usize)],
        finals: &[usize],
    ) -> Result<Self> {
        // Same validation as a Büchi automaton; only the reading differs.
        let nba = Nba::new(alphabet, states, initial, transitions, finals)?;
        Ok(Nfa {
            alphabet: nba.alphabet().clone(),
            initial: nba.initial().to_vec(),
            delta: (0..states)
                .map(|q| nba.alphabet().events().map(|e| nba.successors(q, e).to_vec()).collect())
                .collect(),
            finals: (0..states).map(|q| nba.is_accepting(q)).collect(),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delta.is_empty()
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn successors(&self, state: usize, event: Event) -> &[usize] {
        &self.delta[state][event.index()]
    }

    pub fn is_final(&self, state: usize) -> bool {
        self.finals[state]
    }

    pub fn accepts(&self, trace: &FiniteTrace) -> bool {
        let mut current: BTreeSet<usize> = self.initial.iter().copied().collect();
        for &e in &trace.events {
            current = current
                .iter()
                .flat_map(|&q| self.successors(q, e).iter().copied())
                .collect();
        }
        current.iter().any(|&q| self.finals[q])
    }
}

/// States from which the automaton accepts a nonempty language: those that
/// can reach an accepting state lying on a cycle.
pub fn per_state_nonempty(a: &Nba) -> BTreeSet<usize> {
    let adj = a.adjacency();
    let cyclic = graph::on_cycle(&adj);
    let good: Vec<bool> = (0..a.len()).map(|q| cyclic[q] && a.is_accepting(q)).collect();
    graph::can_reach(&adj, &good)
        .into_iter()
        .enumerate()
        .filter_map(|(q, live)| live.then_some(q))
        .collect()
}

/// Keeps the structure of `a` and makes final exactly the states with a
/// nonempty Büchi language. The result accepts the finite prefixes that have
/// at least one accepted infinite continuation.
pub fn nba_to_nfa(a: &Nba) -> Nfa {
    let live = per_state_nonempty(a);
    let delta = (0..a.len())
        .map(|q| a.alphabet().events().map(|e| a.successors(q, e).to_vec()).collect())
        .collect();
    Nfa {
        alphabet: a.alphabet().clone(),
        initial: a.initial().to_vec(),
        delta,
        finals: (0..a.len()).map(|q| live.contains(&q)).collect(),
    }
}
