//! Nondeterministic Büchi automata over exclusive events.

mod tableau;

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph;
use crate::ltl::{Alphabet, Event, LassoWord};

pub use tableau::ltl_to_nba;

/// Büchi automaton with state-based acceptance. States are `0..len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nba {
    alphabet: Alphabet,
    initial: Vec<usize>,
    /// `delta[q][e]` holds the sorted successors of `q` on event `e`.
    delta: Vec<Vec<Vec<usize>>>,
    accepting: Vec<bool>,
}

impl Nba {
    /// Builds an automaton from explicit parts, checking that every endpoint
    /// is in range.
    pub fn new(
        alphabet: Alphabet,
        states: usize,
        initial: Vec<usize>,
        transitions: &[(usize, Event, usize)],
        accepting: &[usize],
    ) -> Result<Self> {
        if initial.is_empty() {
            return Err(Error::Validation("no initial state".into()));
        }
        if let Some(q) = initial.iter().chain(accepting).find(|&&q| q >= states) {
            return Err(Error::Validation(format!("state {q} out of range")));
        }
        let mut delta = vec![vec![Vec::new(); alphabet.len()]; states];
        for &(from, event, to) in transitions {
            if from >= states || to >= states {
                return Err(Error::Validation(format!("transition {from}->{to} out of range")));
            }
            if !alphabet.contains(event) {
                return Err(Error::Validation(format!("event #{} not in alphabet", event.0)));
            }
            let succ: &mut Vec<usize> = &mut delta[from][event.index()];
            if let Err(pos) = succ.binary_search(&to) {
                succ.insert(pos, to);
            }
        }
        let mut acc = vec![false; states];
        for &q in accepting {
            acc[q] = true;
        }
        let mut initial = initial;
        initial.sort_unstable();
        initial.dedup();
        Ok(Nba {
            alphabet,
            initial,
            delta,
            accepting: acc,
        })
    }

    pub(crate) fn from_parts(
        alphabet: Alphabet,
        initial: Vec<usize>,
        delta: Vec<Vec<Vec<usize>>>,
        accepting: Vec<bool>,
    ) -> Self {
        debug_assert_eq!(delta.len(), accepting.len());
        Nba {
            alphabet,
            initial,
            delta,
            accepting,
        }
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

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn transition_count(&self) -> usize {
        self.delta.iter().flatten().map(Vec::len).sum()
    }

    /// All `(from, event, to)` triples in canonical order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, Event, usize)> + '_ {
        self.delta.iter().enumerate().flat_map(move |(q, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(e, succ)| succ.iter().map(move |&t| (q, Event(e as u32), t)))
        })
    }

    /// Event-erased successor lists.
    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        self.delta
            .iter()
            .map(|row| {
                let mut succ: Vec<usize> = row.iter().flatten().copied().collect();
                succ.sort_unstable();
                succ.dedup();
                succ
            })
            .collect()
    }

    /// Copy of the automaton started from the given states instead.
    pub fn with_initial(&self, initial: Vec<usize>) -> Nba {
        Nba {
            initial,
            ..self.clone()
        }
    }
}

/// Decides whether `stem · loop^ω` is accepted, by looking for a reachable
/// accepting vertex on a cycle of the product with the lasso graph.
pub fn nba_accepts_lasso(a: &Nba, w: &LassoWord) -> bool {
    let positions = w.positions();
    let key = |q: usize, i: usize| q * positions + i;
    let mut ids = std::collections::HashMap::new();
    let mut nodes: Vec<(usize, usize)> = Vec::new();
    let mut queue = VecDeque::new();
    for &q in a.initial() {
        if ids.insert(key(q, 0), nodes.len()).is_none() {
            nodes.push((q, 0));
            queue.push_back(nodes.len() - 1);
        }
    }
    let mut adj: Vec<Vec<usize>> = Vec::new();
    while let Some(id) = queue.pop_front() {
        let (q, i) = nodes[id];
        let next = w.successor(i);
        let mut succ = Vec::new();
        for &t in a.successors(q, w.at(i)) {
            let target = *ids.entry(key(t, next)).or_insert_with(|| {
                nodes.push((t, next));
                queue.push_back(nodes.len() - 1);
                nodes.len() - 1
            });
            succ.push(target);
        }
        if adj.len() <= id {
            adj.resize(id + 1, Vec::new());
        }
        adj[id] = succ;
    }
    adj.resize(nodes.len(), Vec::new());
    let cyclic = graph::on_cycle(&adj);
    nodes
        .iter()
        .enumerate()
        .any(|(id, &(q, _))| cyclic[id] && a.is_accepting(q))
}

/// States reachable from the initial states.
pub fn reachable_states(a: &Nba) -> HashSet<usize> {
    let adj = a.adjacency();
    let mut seen: HashSet<usize> = a.initial().iter().copied().collect();
    let mut queue: VecDeque<usize> = a.initial().iter().copied().collect();
    while let Some(q) = queue.pop_front() {
        for &t in &adj[q] {
            if seen.insert(t) {
                queue.push_back(t);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::{negate_nnf, nnf, parse_formula};

    fn sigma(n: usize) -> Alphabet {
        Alphabet::new((1..=n).map(|i| format!("ev{i}"))).unwrap()
    }

    fn lasso(stem: &[u32], cycle: &[u32]) -> LassoWord {
        LassoWord::new(
            stem.iter().map(|&i| Event(i - 1)).collect(),
            cycle.iter().map(|&i| Event(i - 1)).collect(),
        )
        .unwrap()
    }

    fn nba(text: &str, n: usize) -> Nba {
        let s = sigma(n);
        ltl_to_nba(&nnf(&parse_formula(text, &s).unwrap()), &s)
    }

    #[test]
    fn eventually_membership() {
        let a = nba("<>ev1", 3);
        assert!(nba_accepts_lasso(&a, &lasso(&[2], &[1])));
        assert!(nba_accepts_lasso(&a, &lasso(&[1], &[3])));
        assert!(!nba_accepts_lasso(&a, &lasso(&[], &[2, 3])));
    }

    #[test]
    fn recurrence_membership() {
        let a = nba("[]<>ev4", 4);
        assert!(nba_accepts_lasso(&a, &lasso(&[], &[4, 2])));
        assert!(!nba_accepts_lasso(&a, &lasso(&[4, 4], &[2])));
    }

    #[test]
    fn constants() {
        let t = nba("true", 2);
        let f = nba("false", 2);
        for w in [lasso(&[], &[1]), lasso(&[2, 1], &[2]), lasso(&[1], &[1, 2])] {
            assert!(nba_accepts_lasso(&t, &w));
            assert!(!nba_accepts_lasso(&f, &w));
        }
    }

    #[test]
    fn negation_splits_language() {
        let s = sigma(3);
        let phi = parse_formula("(ev1 U ev2) R X !ev3", &s).unwrap();
        let pos = ltl_to_nba(&nnf(&phi), &s);
        let neg = ltl_to_nba(&negate_nnf(&phi), &s);
        for stem in [vec![], vec![1], vec![3, 2]] {
            for cycle in [vec![1], vec![3], vec![2, 3]] {
                let w = lasso(&stem, &cycle);
                assert!(nba_accepts_lasso(&pos, &w) ^ nba_accepts_lasso(&neg, &w));
            }
        }
    }

    #[test]
    fn hand_built_validation() {
        let s = sigma(1);
        assert!(Nba::new(s.clone(), 1, vec![], &[], &[]).is_err());
        assert!(Nba::new(s.clone(), 1, vec![0], &[(0, Event(0), 3)], &[]).is_err());
        let a = Nba::new(s, 1, vec![0], &[(0, Event(0), 0)], &[0]).unwrap();
        assert!(nba_accepts_lasso(&a, &lasso(&[], &[1])));
    }
}
