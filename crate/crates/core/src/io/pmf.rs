//! PMF, a line-oriented monitor format:
//!
//! ```text
//! PMF 1
//! ALPHABET ev1 ev2 ev3
//! INITIAL 0
//! STATE 0 ?
//! STATE 1 TOP
//! TRANS 0 ev1 1
//! ...
//! ```
//!
//! Outputs are `TOP`, `BOT`, `?` and `x` (give up). Blank lines and `#`
//! comments are ignored.

use std::collections::HashMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::fsm::{MooreMonitor, Output, PartialMonitor, Verdict};
use crate::ltl::Alphabet;

/// Deterministic rendering: states by canonical id, transitions by state
/// then alphabet order.
pub fn emit_monitor<O: Output>(m: &MooreMonitor<O>) -> String {
    let mut out = String::from("PMF 1\n");
    let _ = writeln!(out, "ALPHABET {}", m.alphabet().names().join(" "));
    let _ = writeln!(out, "INITIAL {}", m.initial());
    for q in m.states() {
        let _ = writeln!(out, "STATE {q} {}", m.output(q).verdict().symbol());
    }
    for q in m.states() {
        for e in m.alphabet().events() {
            let _ = writeln!(out, "TRANS {q} {} {}", m.alphabet().name(e), m.step(q, e));
        }
    }
    out
}

fn format_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Format {
        line,
        reason: reason.into(),
    }
}

fn invalid(reason: impl Into<String>) -> Error {
    Error::Validation(reason.into())
}

/// Parses and validates a PMF document. State ids are arbitrary tokens;
/// the result is renumbered canonically.
pub fn parse_monitor(text: &str) -> Result<PartialMonitor> {
    let mut header_seen = false;
    let mut alphabet: Option<Alphabet> = None;
    let mut initial: Option<(usize, String)> = None;
    let mut states: Vec<(usize, String, String)> = Vec::new();
    let mut transitions: Vec<(usize, String, String, String)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = line.split_whitespace().collect();
        let Some((&keyword, args)) = fields.split_first() else {
            continue;
        };
        if !header_seen {
            if fields != ["PMF", "1"] {
                return Err(format_err(line_no, "expected header `PMF 1`"));
            }
            header_seen = true;
            continue;
        }
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(format_err(
                    line_no,
                    format!("{keyword} takes {n} field(s), found {}", args.len()),
                ))
            }
        };
        match keyword {
            "PMF" => return Err(format_err(line_no, "duplicate header")),
            "ALPHABET" => {
                if alphabet.is_some() {
                    return Err(format_err(line_no, "duplicate ALPHABET"));
                }
                let a = Alphabet::new(args.iter().copied())
                    .map_err(|e| format_err(line_no, e.to_string()))?;
                alphabet = Some(a);
            }
            "INITIAL" => {
                arity(1)?;
                if initial.is_some() {
                    return Err(format_err(line_no, "duplicate INITIAL"));
                }
                initial = Some((line_no, args[0].to_string()));
            }
            "STATE" => {
                arity(2)?;
                states.push((line_no, args[0].to_string(), args[1].to_string()));
            }
            "TRANS" => {
                arity(3)?;
                transitions.push((
                    line_no,
                    args[0].to_string(),
                    args[1].to_string(),
                    args[2].to_string(),
                ));
            }
            other => return Err(format_err(line_no, format!("unknown record `{other}`"))),
        }
    }

    if !header_seen {
        return Err(format_err(1, "expected header `PMF 1`"));
    }
    let alphabet = alphabet.ok_or_else(|| invalid("missing ALPHABET"))?;
    let (_, initial) = initial.ok_or_else(|| invalid("missing INITIAL"))?;

    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut outputs = Vec::with_capacity(states.len());
    for (line, id, output) in &states {
        let verdict = Verdict::from_symbol(output)
            .ok_or_else(|| invalid(format!("unknown output `{output}` (line {line})")))?;
        if ids.insert(id.clone(), outputs.len()).is_some() {
            return Err(invalid(format!("duplicate state `{id}` (line {line})")));
        }
        outputs.push(verdict);
    }
    let state = |id: &str, line: usize| {
        ids.get(id)
            .copied()
            .ok_or_else(|| invalid(format!("undeclared state `{id}` (line {line})")))
    };
    let start = state(&initial, 0)
        .map_err(|_| invalid(format!("initial state `{initial}` is not declared")))?;

    let mut delta: Vec<Vec<Option<usize>>> = vec![vec![None; alphabet.len()]; outputs.len()];
    for (line, from, event, to) in &transitions {
        let from_id = state(from, *line)?;
        let to_id = state(to, *line)?;
        let e = alphabet
            .lookup(event)
            .ok_or_else(|| invalid(format!("event `{event}` not in alphabet (line {line})")))?;
        let slot = &mut delta[from_id][e.index()];
        match slot {
            Some(prev) if *prev != to_id => {
                return Err(invalid(format!(
                    "nondeterministic transition from `{from}` on `{event}` (line {line})"
                )))
            }
            _ => *slot = Some(to_id),
        }
    }
    let names: Vec<&String> = {
        let mut v = vec![None; outputs.len()];
        for (id, &q) in &ids {
            v[q] = Some(id);
        }
        v.into_iter().map(|s| s.expect("every state has a name")).collect()
    };
    let delta = delta
        .into_iter()
        .enumerate()
        .map(|(q, row)| {
            row.into_iter()
                .enumerate()
                .map(|(e, t)| {
                    t.ok_or_else(|| {
                        invalid(format!(
                            "delta not total: state `{}` has no transition on `{}`",
                            names[q],
                            alphabet.names()[e]
                        ))
                    })
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    MooreMonitor::new(alphabet, start, delta, outputs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fsm::{synthesize_monitor, VerdictB3};
    use crate::ltl::parse_formula;
    use crate::partial::partialize;

    const EVENTUALLY: &str = "PMF 1
ALPHABET ev1 ev2 ev3
INITIAL 0
STATE 0 ?
STATE 1 TOP
TRANS 0 ev1 1
TRANS 0 ev2 0
TRANS 0 ev3 0
TRANS 1 ev1 1
TRANS 1 ev2 1
TRANS 1 ev3 1
";

    #[test]
    fn emits_eventually_machine() {
        let s = Alphabet::new(["ev1", "ev2", "ev3"]).unwrap();
        let m = synthesize_monitor(&parse_formula("<>ev1", &s).unwrap(), &s, true).unwrap();
        let text = emit_monitor(&m);
        assert_eq!(text, EVENTUALLY);
        assert_eq!(text.lines().filter(|l| l.starts_with("STATE")).count(), 2);
        assert_eq!(text.lines().filter(|l| l.starts_with("TRANS")).count(), 6);
        let parsed = parse_monitor(&text).unwrap();
        assert_eq!(parsed, m.map_outputs(|_, o: VerdictB3| o.into()));
    }

    #[test]
    fn give_up_written_as_x() {
        let (phi, s) = crate::ltl::parse_formula_infer("[]<>inspect_tank_1").unwrap();
        let m = partialize(&synthesize_monitor(&phi, &s, true).unwrap());
        let text = emit_monitor(&m);
        let states: Vec<&str> = text.lines().filter(|l| l.starts_with("STATE")).collect();
        assert_eq!(states, ["STATE 0 x"]);
    }

    #[test]
    fn arbitrary_ids_and_comments() {
        let text = "# a monitor\n\nPMF 1\nALPHABET a b\nINITIAL start\nSTATE done TOP # sink\nSTATE start ?\n\
                    TRANS start a done\nTRANS start b start\nTRANS done a done\nTRANS done b done\n";
        let m = parse_monitor(text).unwrap();
        assert_eq!(m.outputs(), &[Verdict::Unknown, Verdict::Top]);
    }

    #[test]
    fn validation_errors() {
        let missing = EVENTUALLY.replace("TRANS 1 ev3 1\n", "");
        match parse_monitor(&missing) {
            Err(Error::Validation(msg)) => assert!(msg.contains("delta not total"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        let maybe = EVENTUALLY.replace("STATE 1 TOP", "STATE 1 MAYBE");
        match parse_monitor(&maybe) {
            Err(Error::Validation(msg)) => assert!(msg.contains("unknown output"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        let dup = EVENTUALLY.replace("STATE 1 TOP", "STATE 0 TOP");
        assert!(matches!(parse_monitor(&dup), Err(Error::Validation(_))));
        let nondet = format!("{EVENTUALLY}TRANS 0 ev1 0\n");
        assert!(matches!(parse_monitor(&nondet), Err(Error::Validation(_))));
        let no_init = EVENTUALLY.replace("INITIAL 0\n", "");
        assert!(matches!(parse_monitor(&no_init), Err(Error::Validation(_))));
    }

    #[test]
    fn format_errors() {
        assert!(matches!(
            parse_monitor("PMF 2\n"),
            Err(Error::Format { line: 1, .. })
        ));
        let bad = EVENTUALLY.replace("TRANS 0 ev2 0", "TRANS 0 ev2");
        assert!(matches!(parse_monitor(&bad), Err(Error::Format { line: 7, .. })));
        let unknown = format!("{EVENTUALLY}EDGE 0 1\n");
        assert!(matches!(parse_monitor(&unknown), Err(Error::Format { line: 12, .. })));
        assert!(matches!(parse_monitor(""), Err(Error::Format { .. })));
    }
}
