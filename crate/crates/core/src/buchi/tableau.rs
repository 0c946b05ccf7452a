//! Tableau construction of a generalized Büchi automaton from an NNF
//! formula, followed by counter degeneralization.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::Nba;
use crate::ltl::{is_nnf, Alphabet, Event, Formula};

type Id = u32;

/// Hash-consed NNF subformula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Sub {
    True,
    False,
    Lit(Event, bool),
    And(Id, Id),
    Or(Id, Id),
    Next(Id),
    Until(Id, Id),
    Release(Id, Id),
}

#[derive(Default)]
struct Closure {
    subs: Vec<Sub>,
    ids: HashMap<Sub, Id>,
}

impl Closure {
    fn intern(&mut self, sub: Sub) -> Id {
        if let Some(&id) = self.ids.get(&sub) {
            return id;
        }
        let id = self.subs.len() as Id;
        self.subs.push(sub);
        self.ids.insert(sub, id);
        id
    }

    fn add(&mut self, f: &Formula) -> Id {
        let sub = match f {
            Formula::True => Sub::True,
            Formula::False => Sub::False,
            Formula::Atom(e) => Sub::Lit(*e, true),
            Formula::Not(g) => match **g {
                Formula::Atom(e) => Sub::Lit(e, false),
                _ => unreachable!("formula is not in negation normal form"),
            },
            Formula::And(a, b) => Sub::And(self.add(a), self.add(b)),
            Formula::Or(a, b) => Sub::Or(self.add(a), self.add(b)),
            Formula::Next(g) => Sub::Next(self.add(g)),
            Formula::Until(a, b) => Sub::Until(self.add(a), self.add(b)),
            Formula::Release(a, b) => Sub::Release(self.add(a), self.add(b)),
            Formula::Eventually(g) => {
                let t = self.intern(Sub::True);
                Sub::Until(t, self.add(g))
            }
            Formula::Always(g) => {
                let f = self.intern(Sub::False);
                Sub::Release(f, self.add(g))
            }
            Formula::Implies(..) => unreachable!("formula is not in negation normal form"),
        };
        self.intern(sub)
    }
}

type Set = BTreeSet<Id>;

struct Pending {
    incoming: BTreeSet<usize>,
    new: Set,
    old: Set,
    next: Set,
}

struct TableauNode {
    incoming: BTreeSet<usize>,
    old: Set,
}

/// Graph id 0 stands for the virtual initial node; tableau nodes are
/// numbered from 1 in creation order.
fn expand(closure: &Closure, root: Id) -> Vec<TableauNode> {
    let mut nodes: Vec<TableauNode> = vec![TableauNode {
        incoming: BTreeSet::new(),
        old: Set::new(),
    }];
    let mut index: HashMap<(Set, Set), usize> = HashMap::new();
    let mut stack = vec![Pending {
        incoming: BTreeSet::from([0]),
        new: Set::from([root]),
        old: Set::new(),
        next: Set::new(),
    }];

    while let Some(mut p) = stack.pop() {
        let Some(eta) = p.new.pop_first() else {
            let key = (p.old, p.next);
            if let Some(&id) = index.get(&key) {
                nodes[id].incoming.extend(p.incoming);
                continue;
            }
            let id = nodes.len();
            let (old, next) = key;
            nodes.push(TableauNode {
                incoming: p.incoming,
                old: old.clone(),
            });
            stack.push(Pending {
                incoming: BTreeSet::from([id]),
                new: next.clone(),
                old: Set::new(),
                next: Set::new(),
            });
            index.insert((old, next), id);
            continue;
        };
        if p.old.contains(&eta) {
            stack.push(p);
            continue;
        }
        match closure.subs[eta as usize] {
            Sub::False => {}
            Sub::True => {
                p.old.insert(eta);
                stack.push(p);
            }
            Sub::Lit(e, positive) => {
                let clash = p.old.iter().any(|&o| match closure.subs[o as usize] {
                    Sub::Lit(f, pos) => (f == e && pos != positive) || (positive && pos && f != e),
                    _ => false,
                });
                if !clash {
                    p.old.insert(eta);
                    stack.push(p);
                }
            }
            Sub::And(a, b) => {
                p.old.insert(eta);
                for s in [a, b] {
                    if !p.old.contains(&s) {
                        p.new.insert(s);
                    }
                }
                stack.push(p);
            }
            Sub::Next(a) => {
                p.old.insert(eta);
                p.next.insert(a);
                stack.push(p);
            }
            Sub::Or(a, b) | Sub::Until(a, b) | Sub::Release(a, b) => {
                let (new1, next1, new2): (Vec<Id>, Option<Id>, Vec<Id>) =
                    match closure.subs[eta as usize] {
                        Sub::Or(..) => (vec![a], None, vec![b]),
                        Sub::Until(..) => (vec![a], Some(eta), vec![b]),
                        _ => (vec![b], Some(eta), vec![a, b]),
                    };
                p.old.insert(eta);
                let mut second = Pending {
                    incoming: p.incoming.clone(),
                    new: p.new.clone(),
                    old: p.old.clone(),
                    next: p.next.clone(),
                };
                second
                    .new
                    .extend(new2.into_iter().filter(|s| !second.old.contains(s)));
                let mut first = p;
                first
                    .new
                    .extend(new1.into_iter().filter(|s| !first.old.contains(s)));
                first.next.extend(next1);
                // Pushed second so the first branch is expanded first.
                stack.push(second);
                stack.push(first);
            }
        }
    }
    nodes
}

/// Events compatible with the literals in `old`.
fn label(closure: &Closure, old: &Set, alphabet: &Alphabet) -> Vec<Event> {
    let mut positive = None;
    let mut negative = Vec::new();
    for &o in old {
        if let Sub::Lit(e, pos) = closure.subs[o as usize] {
            if pos {
                positive = Some(e);
            } else {
                negative.push(e);
            }
        }
    }
    match positive {
        Some(e) if !negative.contains(&e) => vec![e],
        Some(_) => Vec::new(),
        None => alphabet.events().filter(|e| !negative.contains(e)).collect(),
    }
}

/// Translates an NNF formula into a Büchi automaton accepting exactly the
/// infinite words over `alphabet` that satisfy it.
///
/// State numbers follow breadth-first discovery from the initial state, so
/// equal inputs always produce equal automata.
pub fn ltl_to_nba(phi: &Formula, alphabet: &Alphabet) -> Nba {
    assert!(is_nnf(phi), "ltl_to_nba expects a formula in negation normal form");
    let mut closure = Closure::default();
    let root = closure.add(phi);
    let nodes = expand(&closure, root);

    // Generalized automaton: graph ids 0..nodes.len(), 0 initial.
    let n = nodes.len();
    let mut gdelta: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); alphabet.len()]; n];
    for (j, node) in nodes.iter().enumerate().skip(1) {
        let events = label(&closure, &node.old, alphabet);
        for &i in &node.incoming {
            for &e in &events {
                gdelta[i][e.index()].push(j);
            }
        }
    }
    for row in gdelta.iter_mut().flatten() {
        row.sort_unstable();
        row.dedup();
    }

    let untils: Vec<(Id, Id)> = closure
        .subs
        .iter()
        .enumerate()
        .filter_map(|(id, s)| match *s {
            Sub::Until(_, rhs) => Some((id as Id, rhs)),
            _ => None,
        })
        .collect();
    // in_set[k][q]: q satisfies the k-th eventuality.
    let in_set: Vec<Vec<bool>> = untils
        .iter()
        .map(|&(u, rhs)| {
            nodes
                .iter()
                .map(|node| !node.old.contains(&u) || node.old.contains(&rhs))
                .collect()
        })
        .collect();

    degeneralize(alphabet, &gdelta, &in_set)
}

/// Counter construction: product states `(q, k)`; the counter advances from
/// `k` when leaving a state of the `k`-th acceptance set, and `(q, 0)` is
/// accepting when `q` is in the first set.
fn degeneralize(alphabet: &Alphabet, gdelta: &[Vec<Vec<usize>>], in_set: &[Vec<bool>]) -> Nba {
    let sets = in_set.len().max(1);
    let member = |k: usize, q: usize| in_set.is_empty() || in_set[k][q];

    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut states: Vec<(usize, usize)> = vec![(0, 0)];
    ids.insert((0, 0), 0);
    let mut queue = VecDeque::from([0usize]);
    let mut delta: Vec<Vec<Vec<usize>>> = Vec::new();
    while let Some(id) = queue.pop_front() {
        let (q, k) = states[id];
        let k2 = if member(k, q) { (k + 1) % sets } else { k };
        let mut row = Vec::with_capacity(alphabet.len());
        for succ in &gdelta[q] {
            let mut targets: Vec<usize> = succ
                .iter()
                .map(|&t| {
                    *ids.entry((t, k2)).or_insert_with(|| {
                        states.push((t, k2));
                        queue.push_back(states.len() - 1);
                        states.len() - 1
                    })
                })
                .collect();
            targets.sort_unstable();
            row.push(targets);
        }
        delta.push(row);
    }
    let accepting = states.iter().map(|&(q, k)| k == 0 && member(0, q)).collect();
    Nba::from_parts(alphabet.clone(), vec![0], delta, accepting)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::{nnf, parse_formula};

    #[test]
    fn construction_is_deterministic() {
        let s = Alphabet::new(["a", "b", "c"]).unwrap();
        let phi = nnf(&parse_formula("([]<>a & <>b) | (c U X b)", &s).unwrap());
        assert_eq!(ltl_to_nba(&phi, &s), ltl_to_nba(&phi, &s));
    }

    #[test]
    fn conflicting_positive_literals_have_no_transitions() {
        let s = Alphabet::new(["a", "b"]).unwrap();
        let phi = parse_formula("a & b", &s).unwrap();
        let nba = ltl_to_nba(&phi, &s);
        assert_eq!(nba.transition_count(), 0);
    }

    #[test]
    #[should_panic]
    fn rejects_non_nnf() {
        let s = Alphabet::new(["a"]).unwrap();
        ltl_to_nba(&parse_formula("!(a U a)", &s).unwrap(), &s);
    }
}
