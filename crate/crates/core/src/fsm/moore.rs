use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ltl::{Alphabet, Event, FiniteTrace};

/// Three-valued monitor output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VerdictB3 {
    Top,
    Bot,
    Unknown,
}

/// Four-valued partial monitor output; `GiveUp` marks ugly prefixes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "TOP")]
    Top,
    #[serde(rename = "BOT")]
    Bot,
    #[serde(rename = "?")]
    Unknown,
    #[serde(rename = "x")]
    GiveUp,
}

impl Verdict {
    /// Text-format spelling: `TOP`, `BOT`, `?`, `x`.
    pub fn symbol(self) -> &'static str {
        match self {
            Verdict::Top => "TOP",
            Verdict::Bot => "BOT",
            Verdict::Unknown => "?",
            Verdict::GiveUp => "x",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Verdict> {
        match s {
            "TOP" => Some(Verdict::Top),
            "BOT" => Some(Verdict::Bot),
            "?" => Some(Verdict::Unknown),
            "x" => Some(Verdict::GiveUp),
            _ => None,
        }
    }

    pub fn glyph(self) -> &'static str {
        match self {
            Verdict::Top => "⊤",
            Verdict::Bot => "⊥",
            Verdict::Unknown => "?",
            Verdict::GiveUp => "χ",
        }
    }

    pub fn is_conclusive(self) -> bool {
        matches!(self, Verdict::Top | Verdict::Bot)
    }

    /// Exchanges ⊤ and ⊥.
    pub fn swap(self) -> Verdict {
        match self {
            Verdict::Top => Verdict::Bot,
            Verdict::Bot => Verdict::Top,
            v => v,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl From<VerdictB3> for Verdict {
    fn from(v: VerdictB3) -> Self {
        match v {
            VerdictB3::Top => Verdict::Top,
            VerdictB3::Bot => Verdict::Bot,
            VerdictB3::Unknown => Verdict::Unknown,
        }
    }
}

/// Output alphabet of a Moore machine.
pub trait Output: Copy + Eq + Hash + Ord + fmt::Debug + Send + Sync {
    fn verdict(self) -> Verdict;
}

impl Output for VerdictB3 {
    fn verdict(self) -> Verdict {
        self.into()
    }
}

impl Output for Verdict {
    fn verdict(self) -> Verdict {
        self
    }
}

/// Moore machine with total transition function. Always kept in canonical
/// form: every state reachable, state 0 initial, remaining states numbered in
/// breadth-first order following the alphabet. Two machines are isomorphic
/// exactly when they are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MooreMonitor<O> {
    alphabet: Alphabet,
    delta: Vec<Vec<usize>>,
    outputs: Vec<O>,
}

/// Three-valued monitor.
pub type Monitor3 = MooreMonitor<VerdictB3>;
/// Partial (four-valued) monitor.
pub type PartialMonitor = MooreMonitor<Verdict>;

impl<O: Output> MooreMonitor<O> {
    /// Validates totality, then prunes unreachable states and renumbers.
    pub fn new(
        alphabet: Alphabet,
        initial: usize,
        delta: Vec<Vec<usize>>,
        outputs: Vec<O>,
    ) -> Result<Self> {
        let n = delta.len();
        if outputs.len() != n {
            return Err(Error::Validation("gamma not total".into()));
        }
        if initial >= n {
            return Err(Error::Validation("initial state missing".into()));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::Validation(format!("delta not total at state {q}")));
            }
            if let Some(t) = row.iter().find(|&&t| t >= n) {
                return Err(Error::Validation(format!("state {q} targets unknown state {t}")));
            }
        }
        Ok(Self::canonical(alphabet, initial, &delta, &outputs))
    }

    fn canonical(alphabet: Alphabet, initial: usize, delta: &[Vec<usize>], outputs: &[O]) -> Self {
        let mut order = vec![usize::MAX; delta.len()];
        let mut visit = vec![initial];
        order[initial] = 0;
        let mut head = 0;
        while head < visit.len() {
            let q = visit[head];
            head += 1;
            for &t in &delta[q] {
                if order[t] == usize::MAX {
                    order[t] = visit.len();
                    visit.push(t);
                }
            }
        }
        MooreMonitor {
            alphabet,
            delta: visit
                .iter()
                .map(|&q| delta[q].iter().map(|&t| order[t]).collect())
                .collect(),
            outputs: visit.iter().map(|&q| outputs[q]).collect(),
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

    pub fn initial(&self) -> usize {
        0
    }

    pub fn states(&self) -> std::ops::Range<usize> {
        0..self.delta.len()
    }

    pub fn step(&self, state: usize, event: Event) -> usize {
        self.delta[state][event.index()]
    }

    pub fn output(&self, state: usize) -> O {
        self.outputs[state]
    }

    pub fn outputs(&self) -> &[O] {
        &self.outputs
    }

    pub fn row(&self, state: usize) -> &[usize] {
        &self.delta[state]
    }

    /// Event-erased successor lists.
    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        self.delta
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.sort_unstable();
                r.dedup();
                r
            })
            .collect()
    }

    /// State reached from the initial state by `trace`.
    pub fn run(&self, trace: &FiniteTrace) -> Result<usize> {
        let mut q = 0;
        for (i, &e) in trace.events.iter().enumerate() {
            if !self.alphabet.contains(e) {
                return Err(Error::UnknownEvent {
                    name: format!("#{}", e.0),
                    position: i + 1,
                });
            }
            q = self.step(q, e);
        }
        Ok(q)
    }

    /// Same machine with every output passed through `f`.
    pub fn map_outputs<P: Output>(&self, f: impl Fn(usize, O) -> P) -> MooreMonitor<P> {
        MooreMonitor {
            alphabet: self.alphabet.clone(),
            delta: self.delta.clone(),
            outputs: self.outputs.iter().enumerate().map(|(q, &o)| f(q, o)).collect(),
        }
    }

    pub fn count(&self, output: O) -> usize {
        self.outputs.iter().filter(|&&o| o == output).count()
    }

    /// Longest shortest path from the initial state.
    pub fn diameter(&self) -> usize {
        let mut dist = vec![usize::MAX; self.len()];
        dist[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(q) = queue.pop_front() {
            for &t in &self.delta[q] {
                if dist[t] == usize::MAX {
                    dist[t] = dist[q] + 1;
                    queue.push_back(t);
                }
            }
        }
        dist.into_iter().max().unwrap_or(0)
    }
}

/// Output of the state reached by `sigma`. The empty trace yields the
/// initial state's output.
pub fn monitor_verdict<O: Output>(m: &MooreMonitor<O>, sigma: &FiniteTrace) -> Result<O> {
    m.run(sigma).map(|q| m.output(q))
}

/// Moore-style partition refinement seeded by outputs. The result is the
/// unique minimal machine with the same input/output behaviour.
pub fn minimize_moore<O: Output>(m: &MooreMonitor<O>) -> MooreMonitor<O> {
    let n = m.len();
    let mut seed: HashMap<O, usize> = HashMap::new();
    let mut block: Vec<usize> = (0..n)
        .map(|q| {
            let next = seed.len();
            *seed.entry(m.output(q)).or_insert(next)
        })
        .collect();
    let mut blocks = seed.len();
    loop {
        let mut sigs: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let refined: Vec<usize> = (0..n)
            .map(|q| {
                let sig = (block[q], m.row(q).iter().map(|&t| block[t]).collect());
                let next = sigs.len();
                *sigs.entry(sig).or_insert(next)
            })
            .collect();
        let count = sigs.len();
        block = refined;
        if count == blocks {
            break;
        }
        blocks = count;
    }
    let mut delta = vec![Vec::new(); blocks];
    let mut outputs = vec![m.output(0); blocks];
    for q in 0..n {
        let b = block[q];
        if delta[b].is_empty() {
            delta[b] = m.row(q).iter().map(|&t| block[t]).collect();
            outputs[b] = m.output(q);
        }
    }
    MooreMonitor::canonical(m.alphabet.clone(), block[0], &delta, &outputs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use VerdictB3::*;

    fn sigma() -> Alphabet {
        Alphabet::new(["ev1", "ev2", "ev3"]).unwrap()
    }

    fn eventually_machine() -> Monitor3 {
        MooreMonitor::new(sigma(), 0, vec![vec![1, 0, 0], vec![1, 1, 1]], vec![Unknown, Top]).unwrap()
    }

    #[test]
    fn verdict_fold() {
        let m = eventually_machine();
        let t = |v: &[u32]| FiniteTrace::new(v.iter().map(|&i| Event(i)).collect());
        assert_eq!(monitor_verdict(&m, &t(&[1, 2, 1])).unwrap(), Unknown);
        assert_eq!(monitor_verdict(&m, &t(&[1, 0])).unwrap(), Top);
        assert_eq!(monitor_verdict(&m, &t(&[])).unwrap(), Unknown);
        assert!(matches!(
            monitor_verdict(&m, &t(&[0, 7])),
            Err(Error::UnknownEvent { position: 2, .. })
        ));
    }

    #[test]
    fn minimal_machine_is_fixpoint() {
        let m = eventually_machine();
        assert_eq!(minimize_moore(&m), m);
    }

    #[test]
    fn duplicate_sinks_merge() {
        // 0 -ev1-> 1 (TOP), 0 -ev2-> 2 (TOP), 0 -ev3-> 0
        let m = MooreMonitor::new(
            sigma(),
            0,
            vec![vec![1, 2, 0], vec![1, 1, 1], vec![2, 2, 2]],
            vec![Unknown, Top, Top],
        )
        .unwrap();
        let min = minimize_moore(&m);
        assert_eq!(min.len(), 2);
        assert_eq!(min.row(0), &[1, 1, 0]);
    }

    #[test]
    fn new_prunes_and_validates() {
        let m = MooreMonitor::new(
            sigma(),
            1,
            vec![vec![0, 0, 0], vec![1, 1, 1]],
            vec![Top, Unknown],
        )
        .unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.output(0), Unknown);
        assert!(MooreMonitor::new(sigma(), 0, vec![vec![0, 0]], vec![Top]).is_err());
        assert!(MooreMonitor::new(sigma(), 0, vec![vec![0, 0, 5]], vec![Top]).is_err());
        assert!(MooreMonitor::<VerdictB3>::new(sigma(), 3, vec![vec![0, 0, 0]], vec![Top]).is_err());
    }

    #[test]
    fn verdict_symbols_round_trip() {
        for v in [Verdict::Top, Verdict::Bot, Verdict::Unknown, Verdict::GiveUp] {
            assert_eq!(Verdict::from_symbol(v.symbol()), Some(v));
            assert_eq!(v.swap().swap(), v);
        }
        assert_eq!(Verdict::from_symbol("MAYBE"), None);
    }
}
