use std::collections::BTreeMap;
use std::fmt::Write;

use crate::buchi::Nba;
use crate::fsm::{MooreMonitor, Output, Verdict};
use crate::ltl::{Alphabet, Event};

fn style(v: Verdict) -> (&'static str, &'static str) {
    match v {
        Verdict::Unknown => ("circle", "#f8e71c"),
        Verdict::Top => ("doublecircle", "#7ed321"),
        Verdict::Bot => ("doubleoctagon", "#d0021b"),
        Verdict::GiveUp => ("octagon", "#9b9b9b"),
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Edge label for a bundle of events: `*` for the whole alphabet,
/// `* \ e` when only `e` is missing (and at least three events are covered),
/// otherwise the comma-joined names.
fn bundle_label(events: &[Event], alphabet: &Alphabet) -> String {
    if events.len() == alphabet.len() {
        return "*".into();
    }
    if events.len() + 1 == alphabet.len() && events.len() >= 3 {
        let missing = alphabet
            .events()
            .find(|e| !events.contains(e))
            .expect("exactly one event is missing");
        return format!("* \\ {}", alphabet.name(missing));
    }
    events
        .iter()
        .map(|&e| alphabet.name(e))
        .collect::<Vec<_>>()
        .join(", ")
}

fn edges(out: &mut String, bundles: &BTreeMap<(usize, usize), Vec<Event>>, alphabet: &Alphabet) {
    for (&(from, to), events) in bundles {
        let _ = writeln!(
            out,
            "  s{from} -> s{to} [label=\"{}\"];",
            escape(&bundle_label(events, alphabet))
        );
    }
}

/// Graphviz digraph of a monitor. Parallel edges are merged into one edge
/// per state pair.
pub fn emit_dot<O: Output>(m: &MooreMonitor<O>) -> String {
    let mut out = String::from("digraph monitor {\n  rankdir=LR;\n  node [style=filled];\n");
    out.push_str("  __start [shape=point];\n");
    let _ = writeln!(out, "  __start -> s{};", m.initial());
    for q in m.states() {
        let v = m.output(q).verdict();
        let (shape, color) = style(v);
        let _ = writeln!(
            out,
            "  s{q} [label=\"{}\", shape={shape}, fillcolor=\"{color}\"];",
            v.glyph()
        );
    }
    let mut bundles: BTreeMap<(usize, usize), Vec<Event>> = BTreeMap::new();
    for q in m.states() {
        for e in m.alphabet().events() {
            bundles.entry((q, m.step(q, e))).or_default().push(e);
        }
    }
    edges(&mut out, &bundles, m.alphabet());
    out.push_str("}\n");
    out
}

/// Graphviz digraph of a Büchi automaton, accepting states doubled.
pub fn emit_nba_dot(a: &Nba) -> String {
    let mut out = String::from("digraph nba {\n  rankdir=LR;\n");
    for (i, &q) in a.initial().iter().enumerate() {
        let _ = writeln!(out, "  __start{i} [shape=point];\n  __start{i} -> s{q};");
    }
    for q in 0..a.len() {
        let shape = if a.is_accepting(q) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(out, "  s{q} [label=\"{q}\", shape={shape}];");
    }
    let mut bundles: BTreeMap<(usize, usize), Vec<Event>> = BTreeMap::new();
    for (from, e, to) in a.transitions() {
        bundles.entry((from, to)).or_default().push(e);
    }
    edges(&mut out, &bundles, a.alphabet());
    out.push_str("}\n");
    out
}
