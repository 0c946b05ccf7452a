use std::collections::{HashMap, VecDeque};

use super::Nfa;
use crate::ltl::{Alphabet, Event, FiniteTrace};

/// Complete deterministic automaton. State 0 is initial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    delta: Vec<Vec<usize>>,
    finals: Vec<bool>,
}

impl Dfa {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delta.is_empty()
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn step(&self, state: usize, event: Event) -> usize {
        self.delta[state][event.index()]
    }

    pub fn is_final(&self, state: usize) -> bool {
        self.finals[state]
    }

    pub fn run(&self, trace: &FiniteTrace) -> usize {
        trace.events.iter().fold(0, |q, &e| self.step(q, e))
    }

    pub fn accepts(&self, trace: &FiniteTrace) -> bool {
        self.is_final(self.run(trace))
    }
}

/// Powerset construction over the reachable subsets. The empty subset acts
/// as the non-final sink, so the result is total.
pub fn determinize(n: &Nfa) -> Dfa {
    let mut start: Vec<usize> = n.initial().to_vec();
    start.sort_unstable();
    start.dedup();

    let mut ids: HashMap<Vec<usize>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut subsets = vec![start];
    let mut queue = VecDeque::from([0usize]);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    // stamp[q] == round marks q as already collected for the current target.
    let mut stamp = vec![0usize; n.len()];
    let mut round = 0;
    while let Some(id) = queue.pop_front() {
        let mut row = Vec::with_capacity(n.alphabet().len());
        for e in n.alphabet().events() {
            round += 1;
            let mut target = Vec::new();
            for &q in &subsets[id] {
                for &t in n.successors(q, e) {
                    if stamp[t] != round {
                        stamp[t] = round;
                        target.push(t);
                    }
                }
            }
            target.sort_unstable();
            let next = match ids.get(&target) {
                Some(&t) => t,
                None => {
                    let t = subsets.len();
                    ids.insert(target.clone(), t);
                    subsets.push(target);
                    queue.push_back(t);
                    t
                }
            };
            row.push(next);
        }
        delta.push(row);
    }
    let finals = subsets
        .iter()
        .map(|s| s.iter().any(|&q| n.is_final(q)))
        .collect();
    Dfa {
        alphabet: n.alphabet().clone(),
        delta,
        finals,
    }
}
