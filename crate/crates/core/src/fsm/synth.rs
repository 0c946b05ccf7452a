use std::collections::{HashMap, VecDeque};

use super::{determinize, minimize_moore, nba_to_nfa, Dfa, Monitor3, MooreMonitor, VerdictB3};
use crate::buchi::ltl_to_nba;
use crate::error::Result;
use crate::ltl::{negate_nnf, nnf, Alphabet, Formula};

/// Deterministic automaton accepting the finite prefixes that still have a
/// continuation satisfying `phi`.
pub fn prefix_dfa(phi: &Formula, alphabet: &Alphabet) -> Dfa {
    let nba = ltl_to_nba(&nnf(phi), alphabet);
    determinize(&nba_to_nfa(&nba))
}

/// Intermediate artefacts of a synthesis run, kept for inspection.
#[derive(Debug, Clone)]
pub struct Synthesis {
    pub positive: Dfa,
    pub negative: Dfa,
    /// Product machine before minimization.
    pub product: Monitor3,
    /// `(positive final, negative final)` of each product state, indexed as
    /// in `product`.
    pub liveness: Vec<(bool, bool)>,
}

impl Synthesis {
    pub fn run(phi: &Formula, alphabet: &Alphabet) -> Result<Self> {
        phi.validate(alphabet)?;
        let positive = determinize(&nba_to_nfa(&ltl_to_nba(&nnf(phi), alphabet)));
        let negative = determinize(&nba_to_nfa(&ltl_to_nba(&negate_nnf(phi), alphabet)));

        let mut ids: HashMap<(usize, usize), usize> = HashMap::from([((0, 0), 0)]);
        let mut pairs = vec![(0usize, 0usize)];
        let mut queue = VecDeque::from([0usize]);
        let mut delta = Vec::new();
        while let Some(id) = queue.pop_front() {
            let (p, n) = pairs[id];
            let row = alphabet
                .events()
                .map(|e| {
                    let target = (positive.step(p, e), negative.step(n, e));
                    *ids.entry(target).or_insert_with(|| {
                        pairs.push(target);
                        queue.push_back(pairs.len() - 1);
                        pairs.len() - 1
                    })
                })
                .collect();
            delta.push(row);
        }
        let liveness: Vec<(bool, bool)> = pairs
            .iter()
            .map(|&(p, n)| (positive.is_final(p), negative.is_final(n)))
            .collect();
        let outputs = liveness
            .iter()
            .map(|&(pos, neg)| {
                debug_assert!(pos || neg, "product state dead for both phi and !phi");
                if !neg {
                    VerdictB3::Top
                } else if !pos {
                    VerdictB3::Bot
                } else {
                    VerdictB3::Unknown
                }
            })
            .collect();
        // The BFS above already yields canonical numbering.
        let product = MooreMonitor::new(alphabet.clone(), 0, delta, outputs)?;
        Ok(Synthesis {
            positive,
            negative,
            product,
            liveness,
        })
    }
}

/// Three-valued monitor for `phi`: product of the prefix automata of `phi`
/// and `!phi`, with ⊤ where no violating continuation remains, ⊥ where no
/// satisfying one remains and ? otherwise.
pub fn synthesize_monitor(phi: &Formula, alphabet: &Alphabet, minimize: bool) -> Result<Monitor3> {
    let product = Synthesis::run(phi, alphabet)?.product;
    Ok(if minimize {
        minimize_moore(&product)
    } else {
        product
    })
}
