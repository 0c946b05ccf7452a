//! LTL formulas over an alphabet of mutually exclusive events.
//!
//! Each position of a trace carries exactly one event, so the atom `ev`
//! holds at a position iff the event observed there is `ev`.

mod nnf;
mod parser;
mod semantics;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub use nnf::{is_nnf, negate_nnf, nnf};
pub use parser::{parse_formula, parse_formula_infer, CATCH_ALL};
pub use semantics::lasso_eval;

/// Index of an event inside its [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Event(pub u32);

impl Event {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered set of event names. Declaration order drives every downstream
/// construction, so automata built from the same inputs are identical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Event>,
}

pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet {
            names: Vec::new(),
            index: HashMap::new(),
        };
        for name in names {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(Error::Alphabet(format!("`{name}` is not an identifier")));
            }
            if parser::is_keyword(&name) {
                return Err(Error::Alphabet(format!("`{name}` is a reserved word")));
            }
            if alphabet.index.contains_key(&name) {
                return Err(Error::Alphabet(format!("duplicate event `{name}`")));
            }
            alphabet.push_unchecked(name);
        }
        if alphabet.names.is_empty() {
            return Err(Error::Alphabet("alphabet is empty".into()));
        }
        Ok(alphabet)
    }

    /// Parses a comma separated list such as `ev1,ev2,ev3`.
    pub fn parse_list(list: &str) -> Result<Self> {
        Alphabet::new(list.split(',').map(str::trim).filter(|s| !s.is_empty()))
    }

    fn push_unchecked(&mut self, name: String) -> Event {
        let event = Event(self.names.len() as u32);
        self.index.insert(name.clone(), event);
        self.names.push(name);
        event
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn lookup(&self, name: &str) -> Option<Event> {
        self.index.get(name).copied()
    }

    pub fn name(&self, event: Event) -> &str {
        &self.names[event.index()]
    }

    pub fn contains(&self, event: Event) -> bool {
        event.index() < self.names.len()
    }

    pub fn events(&self) -> impl ExactSizeIterator<Item = Event> + '_ {
        (0..self.names.len() as u32).map(Event)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Resolves a sequence of names, reporting the first unknown one with
    /// its 1-based position.
    pub fn resolve<'a, I>(&self, names: I) -> Result<Vec<Event>>
    where
        I: IntoIterator<Item = &'a str>,
    {
        names
            .into_iter()
            .enumerate()
            .map(|(i, name)| {
                self.lookup(name).ok_or_else(|| Error::UnknownEvent {
                    name: name.to_string(),
                    position: i + 1,
                })
            })
            .collect()
    }
}

/// LTL abstract syntax.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Atom(Event),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Release(Box<Formula>, Box<Formula>),
    Eventually(Box<Formula>),
    Always(Box<Formula>),
}

impl Formula {
    pub fn atom(event: Event) -> Self {
        Formula::Atom(event)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn next(f: Formula) -> Self {
        Formula::Next(Box::new(f))
    }

    pub fn until(a: Formula, b: Formula) -> Self {
        Formula::Until(Box::new(a), Box::new(b))
    }

    pub fn release(a: Formula, b: Formula) -> Self {
        Formula::Release(Box::new(a), Box::new(b))
    }

    pub fn eventually(f: Formula) -> Self {
        Formula::Eventually(Box::new(f))
    }

    pub fn always(f: Formula) -> Self {
        Formula::Always(Box::new(f))
    }

    /// Height of the syntax tree; leaves have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 0,
            Formula::Not(f) | Formula::Next(f) | Formula::Eventually(f) | Formula::Always(f) => {
                1 + f.depth()
            }
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Until(a, b)
            | Formula::Release(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Atoms in order of first occurrence (left to right).
    pub fn atoms(&self) -> Vec<Event> {
        fn walk(f: &Formula, out: &mut Vec<Event>) {
            match f {
                Formula::True | Formula::False => {}
                Formula::Atom(e) => {
                    if !out.contains(e) {
                        out.push(*e);
                    }
                }
                Formula::Not(g) | Formula::Next(g) | Formula::Eventually(g) | Formula::Always(g) => {
                    walk(g, out)
                }
                Formula::And(a, b)
                | Formula::Or(a, b)
                | Formula::Implies(a, b)
                | Formula::Until(a, b)
                | Formula::Release(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Checks that every atom belongs to `alphabet`.
    pub fn validate(&self, alphabet: &Alphabet) -> Result<()> {
        match self.atoms().into_iter().find(|e| !alphabet.contains(*e)) {
            Some(e) => Err(Error::UnknownAtom(format!("#{}", e.0))),
            None => Ok(()),
        }
    }

    /// Renders the formula in the concrete syntax accepted by
    /// [`parse_formula`]. Binary operators are always parenthesized.
    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> DisplayFormula<'a> {
        DisplayFormula {
            formula: self,
            alphabet,
        }
    }
}

pub struct DisplayFormula<'a> {
    formula: &'a Formula,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayFormula<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |g| DisplayFormula {
            formula: g,
            alphabet: self.alphabet,
        };
        match self.formula {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Atom(e) => write!(f, "{}", self.alphabet.name(*e)),
            Formula::Not(g) => write!(f, "!{}", sub(g)),
            Formula::Next(g) => write!(f, "X {}", sub(g)),
            Formula::Eventually(g) => write!(f, "<> {}", sub(g)),
            Formula::Always(g) => write!(f, "[] {}", sub(g)),
            Formula::And(a, b) => write!(f, "({} & {})", sub(a), sub(b)),
            Formula::Or(a, b) => write!(f, "({} | {})", sub(a), sub(b)),
            Formula::Implies(a, b) => write!(f, "({} -> {})", sub(a), sub(b)),
            Formula::Until(a, b) => write!(f, "({} U {})", sub(a), sub(b)),
            Formula::Release(a, b) => write!(f, "({} R {})", sub(a), sub(b)),
        }
    }
}

/// Ultimately periodic word `stem · loop^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LassoWord {
    stem: Vec<Event>,
    cycle: Vec<Event>,
}

impl LassoWord {
    pub fn new(stem: Vec<Event>, cycle: Vec<Event>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Lasso("loop must be nonempty".into()));
        }
        Ok(LassoWord { stem, cycle })
    }

    pub fn stem(&self) -> &[Event] {
        &self.stem
    }

    pub fn cycle(&self) -> &[Event] {
        &self.cycle
    }

    /// Number of distinct positions in the lasso graph.
    pub fn positions(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    pub fn at(&self, position: usize) -> Event {
        if position < self.stem.len() {
            self.stem[position]
        } else {
            self.cycle[(position - self.stem.len()) % self.cycle.len()]
        }
    }

    /// Successor position in the lasso graph.
    pub fn successor(&self, position: usize) -> usize {
        if position + 1 < self.positions() {
            position + 1
        } else {
            self.stem.len()
        }
    }

    /// The word `prefix · self`.
    pub fn prepend(&self, prefix: &[Event]) -> LassoWord {
        let mut stem = prefix.to_vec();
        stem.extend_from_slice(&self.stem);
        LassoWord {
            stem,
            cycle: self.cycle.clone(),
        }
    }
}

/// Finite sequence of observed events.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FiniteTrace {
    pub events: Vec<Event>,
}

impl FiniteTrace {
    pub fn new(events: Vec<Event>) -> Self {
        FiniteTrace { events }
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn names<'a>(&'a self, alphabet: &'a Alphabet) -> Vec<&'a str> {
        self.events.iter().map(|e| alphabet.name(*e)).collect()
    }
}

impl From<Vec<Event>> for FiniteTrace {
    fn from(events: Vec<Event>) -> Self {
        FiniteTrace { events }
    }
}
