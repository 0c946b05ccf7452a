//! Bounded cross-checks of synthesized monitors against the lasso-word
//! semantics, over whole formula corpora.
//!
//! Every formula is checked independently, so corpus runs are spread over a
//! rayon pool when the `parallel` feature is enabled; `*_seq` variants are
//! always available for comparison.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::buchi::{ltl_to_nba, nba_accepts_lasso};
use crate::error::Result;
use crate::fsm::{minimize_moore, monitor_verdict, synthesize_monitor, PartialMonitor, Synthesis, Verdict};
use crate::ltl::{lasso_eval, negate_nnf, nnf, Alphabet, Event, FiniteTrace, Formula, LassoWord};
use crate::partial::{partialize, reachability_oracle};

/// Random formula of depth at most `depth` over `alphabet_size` events.
pub fn random_formula<R: Rng>(rng: &mut R, alphabet_size: u32, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..10) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::Atom(Event(rng.gen_range(0..alphabet_size))),
        };
    }
    let sub = |rng: &mut R| random_formula(rng, alphabet_size, depth - 1);
    match rng.gen_range(0..11) {
        0 => Formula::not(sub(rng)),
        1 => Formula::next(sub(rng)),
        2 => Formula::eventually(sub(rng)),
        3 => Formula::always(sub(rng)),
        4 => Formula::and(sub(rng), sub(rng)),
        5 => Formula::or(sub(rng), sub(rng)),
        6 => Formula::implies(sub(rng), sub(rng)),
        7 | 8 => Formula::until(sub(rng), sub(rng)),
        _ => Formula::release(sub(rng), sub(rng)),
    }
}

/// Reproducible corpus of `count` random formulas.
pub fn random_corpus(seed: u64, count: usize, alphabet_size: u32, depth: usize) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_formula(&mut rng, alphabet_size, depth))
        .collect()
}

/// Alphabet `a, b, c, ...` of the given size (at most 26).
pub fn letters(size: usize) -> Alphabet {
    Alphabet::new((0..size).map(|i| ((b'a' + i as u8) as char).to_string()))
        .expect("letters form a valid alphabet")
}

/// Every word of length at most `max_len`, shortest first.
pub fn all_words(alphabet: &Alphabet, max_len: usize) -> Vec<Vec<Event>> {
    let mut out = vec![Vec::new()];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for e in alphabet.events() {
                let mut w = out[i].clone();
                w.push(e);
                out.push(w);
            }
        }
        start = end;
    }
    out
}

/// Every lasso with `|stem| <= max_stem` and `1 <= |loop| <= max_loop`.
pub fn all_lassos(alphabet: &Alphabet, max_stem: usize, max_loop: usize) -> Vec<LassoWord> {
    let stems = all_words(alphabet, max_stem);
    let loops: Vec<_> = all_words(alphabet, max_loop)
        .into_iter()
        .filter(|w| !w.is_empty())
        .collect();
    stems
        .iter()
        .flat_map(|s| {
            loops
                .iter()
                .map(move |l| LassoWord::new(s.clone(), l.clone()).expect("loop is nonempty"))
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub struct Bounds {
    /// Longest prefix whose verdict is checked.
    pub prefix_len: usize,
    /// Lasso family used as continuations and for NBA membership.
    pub stem_len: usize,
    pub loop_len: usize,
    /// Longest extension explored after a χ verdict.
    pub extension_len: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            prefix_len: 4,
            stem_len: 2,
            loop_len: 2,
            extension_len: 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    /// ⊤ verdict with a violating continuation.
    TopUnsound,
    /// ⊥ verdict with a satisfying continuation.
    BotUnsound,
    /// NBA membership differs from the lasso semantics.
    NbaMismatch,
    /// A lasso accepted by both or neither of the automata for φ and ¬φ.
    ComplementSplit,
    /// Mon_¬φ differs from the swapped Mon_φ.
    Duality,
    /// A conclusive verdict changed after more events.
    NotSticky,
    /// Backward labeling disagrees with forward reachability.
    ReachabilityDisagreement,
    /// A χ state has a non-χ successor.
    GiveUpNotClosed,
    /// Relabeling twice changed the machine.
    NotIdempotent,
    /// A χ verdict was later followed by ⊤ or ⊥.
    ConclusionAfterGiveUp,
    /// A ? verdict with no conclusive extension within the diameter.
    UnknownWithoutConclusion,
    /// Minimizing before or after relabeling gave different machines.
    OrderSensitive,
    /// The minimized machine disagrees with the unminimized product.
    MinimizationChangedVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub formula: usize,
    pub kind: ViolationKind,
    pub detail: String,
}

/// Outcome of checking one formula.
#[derive(Debug, Clone, Default)]
pub struct FormulaCheck {
    pub states: usize,
    pub giveup_states: usize,
    pub prefixes: usize,
    pub violations: Vec<Violation>,
}

/// Aggregate over a corpus.
#[derive(Debug, Clone, Default)]
pub struct CorpusReport {
    pub formulas: usize,
    pub prefixes_checked: usize,
    pub total_states: usize,
    pub machines_with_giveup: usize,
    pub violations: Vec<Violation>,
}

impl CorpusReport {
    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }

    pub fn by_kind(&self) -> BTreeMap<ViolationKind, usize> {
        let mut out = BTreeMap::new();
        for v in &self.violations {
            *out.entry(v.kind).or_insert(0) += 1;
        }
        out
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    fn absorb(mut self, index: usize, check: FormulaCheck) -> Self {
        self.formulas += 1;
        self.prefixes_checked += check.prefixes;
        self.total_states += check.states;
        if check.giveup_states > 0 {
            self.machines_with_giveup += 1;
        }
        self.violations.extend(check.violations.into_iter().map(|mut v| {
            v.formula = index;
            v
        }));
        self
    }
}

impl fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} formulas, {} prefixes, {} states, {} machines with give-up, {} violations",
            self.formulas,
            self.prefixes_checked,
            self.total_states,
            self.machines_with_giveup,
            self.violations.len()
        )
    }
}

struct Checker<'a> {
    phi: &'a Formula,
    alphabet: &'a Alphabet,
    bounds: Bounds,
    out: FormulaCheck,
}

impl Checker<'_> {
    fn flag(&mut self, kind: ViolationKind, detail: String) {
        // Cap per-kind noise; one witness per kind is enough to debug.
        if self.out.violations.iter().filter(|v| v.kind == kind).count() < 3 {
            self.out.violations.push(Violation {
                formula: 0,
                kind,
                detail,
            });
        }
    }

    fn show(&self, w: &[Event]) -> String {
        format!("[{}]", w.iter().map(|&e| self.alphabet.name(e)).collect::<Vec<_>>().join(" "))
    }

    fn run(mut self) -> Result<FormulaCheck> {
        let phi = self.phi;
        let alphabet = self.alphabet;
        let b = self.bounds;
        let lassos = all_lassos(alphabet, b.stem_len, b.loop_len);
        let prefixes = all_words(alphabet, b.prefix_len);
        self.out.prefixes = prefixes.len();

        // Automata against the lasso semantics.
        let pos_nba = ltl_to_nba(&nnf(phi), alphabet);
        let neg_nba = ltl_to_nba(&negate_nnf(phi), alphabet);
        for w in &lassos {
            let truth = lasso_eval(phi, w);
            let pos = nba_accepts_lasso(&pos_nba, w);
            let neg = nba_accepts_lasso(&neg_nba, w);
            if pos != truth {
                self.flag(ViolationKind::NbaMismatch, format!("{w:?}: nba {pos}, oracle {truth}"));
            }
            if pos == neg {
                self.flag(ViolationKind::ComplementSplit, format!("{w:?}"));
            }
        }

        let synthesis = Synthesis::run(phi, alphabet)?;
        let mon = minimize_moore(&synthesis.product);
        let partial = partialize(&mon);
        let neg_partial = partialize(&synthesize_monitor(&Formula::not(phi.clone()), alphabet, true)?);
        self.out.states = mon.len();
        self.out.giveup_states = partial.count(Verdict::GiveUp);

        // Prefix verdicts.
        for sigma in &prefixes {
            let trace = FiniteTrace::new(sigma.clone());
            let v = monitor_verdict(&partial, &trace)?;
            let raw = monitor_verdict(&synthesis.product, &trace)?;
            if Verdict::from(raw) != Verdict::from(monitor_verdict(&mon, &trace)?) {
                self.flag(ViolationKind::MinimizationChangedVerdict, self.show(sigma));
            }
            match v {
                Verdict::Top | Verdict::Bot => {
                    let expected = v == Verdict::Top;
                    if let Some(w) = lassos.iter().find(|w| lasso_eval(phi, &w.prepend(sigma)) != expected) {
                        let kind = if expected {
                            ViolationKind::TopUnsound
                        } else {
                            ViolationKind::BotUnsound
                        };
                        self.flag(kind, format!("{} then {w:?}", self.show(sigma)));
                    }
                }
                _ => {}
            }
            let dual = monitor_verdict(&neg_partial, &trace)?;
            if dual != v.swap() {
                self.flag(
                    ViolationKind::Duality,
                    format!("{}: {v} vs negation {dual}", self.show(sigma)),
                );
            }
        }

        self.machine_checks(&partial, &mon);
        let relabel_then_min = minimize_moore(&partialize(&synthesis.product));
        if relabel_then_min != partial {
            self.flag(ViolationKind::OrderSensitive, String::new());
        }
        Ok(self.out)
    }

    fn machine_checks(&mut self, partial: &PartialMonitor, mon: &crate::fsm::Monitor3) {
        let diameter = partial.diameter();
        for q in partial.states() {
            let v = partial.output(q);
            if v.is_conclusive() && partial.row(q).iter().any(|&t| partial.output(t) != v) {
                self.flag(ViolationKind::NotSticky, format!("state {q}"));
            }
            if matches!(v, Verdict::Unknown | Verdict::GiveUp)
                && (v == Verdict::Unknown) != reachability_oracle(mon, q)
            {
                self.flag(ViolationKind::ReachabilityDisagreement, format!("state {q}"));
            }
            if v == Verdict::GiveUp && partial.row(q).iter().any(|&t| partial.output(t) != Verdict::GiveUp) {
                self.flag(ViolationKind::GiveUpNotClosed, format!("state {q}"));
            }
        }
        if partialize(partial) != *partial {
            self.flag(ViolationKind::NotIdempotent, String::new());
        }

        let extensions = all_words(self.alphabet, self.bounds.extension_len);
        let probes = all_words(self.alphabet, diameter);
        for sigma in all_words(self.alphabet, self.bounds.prefix_len) {
            let Ok(q) = partial.run(&FiniteTrace::new(sigma.clone())) else {
                continue;
            };
            match partial.output(q) {
                Verdict::GiveUp => {
                    let reached = extensions.iter().any(|u| {
                        let t = u.iter().fold(q, |s, &e| partial.step(s, e));
                        partial.output(t).is_conclusive()
                    });
                    if reached {
                        self.flag(ViolationKind::ConclusionAfterGiveUp, self.show(&sigma));
                    }
                }
                Verdict::Unknown => {
                    let reached = probes.iter().any(|u| {
                        let t = u.iter().fold(q, |s, &e| partial.step(s, e));
                        partial.output(t).is_conclusive()
                    });
                    if !reached {
                        self.flag(ViolationKind::UnknownWithoutConclusion, self.show(&sigma));
                    }
                }
                _ => {}
            }
        }
    }
}

/// Runs every bounded check on one formula.
pub fn check_formula(phi: &Formula, alphabet: &Alphabet, bounds: Bounds) -> Result<FormulaCheck> {
    Checker {
        phi,
        alphabet,
        bounds,
        out: FormulaCheck::default(),
    }
    .run()
}

fn fold_results(results: Vec<Result<FormulaCheck>>) -> Result<CorpusReport> {
    results
        .into_iter()
        .enumerate()
        .try_fold(CorpusReport::default(), |acc, (i, r)| Ok(acc.absorb(i, r?)))
}

/// Checks a corpus on the current thread.
pub fn check_corpus_seq(formulas: &[Formula], alphabet: &Alphabet, bounds: Bounds) -> Result<CorpusReport> {
    fold_results(
        formulas
            .iter()
            .map(|phi| check_formula(phi, alphabet, bounds))
            .collect(),
    )
}

/// Checks a corpus, one formula per task when `parallel` is enabled.
pub fn check_corpus(formulas: &[Formula], alphabet: &Alphabet, bounds: Bounds) -> Result<CorpusReport> {
    #[cfg(feature = "parallel")]
    {
        fold_results(
            formulas
                .par_iter()
                .map(|phi| check_formula(phi, alphabet, bounds))
                .collect(),
        )
    }
    #[cfg(not(feature = "parallel"))]
    {
        check_corpus_seq(formulas, alphabet, bounds)
    }
}

/// Synthesizes the partial monitor of every formula, sequentially.
pub fn synthesize_all_seq(formulas: &[Formula], alphabet: &Alphabet) -> Result<Vec<PartialMonitor>> {
    formulas
        .iter()
        .map(|phi| synthesize_monitor(phi, alphabet, true).map(|m| partialize(&m)))
        .collect()
}

/// Synthesizes the partial monitor of every formula, in parallel when the
/// `parallel` feature is enabled. Output order follows input order.
pub fn synthesize_all(formulas: &[Formula], alphabet: &Alphabet) -> Result<Vec<PartialMonitor>> {
    #[cfg(feature = "parallel")]
    {
        formulas
            .par_iter()
            .map(|phi| synthesize_monitor(phi, alphabet, true).map(|m| partialize(&m)))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        synthesize_all_seq(formulas, alphabet)
    }
}
