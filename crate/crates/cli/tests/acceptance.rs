//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use pmon_core::check::{all_lassos, all_words, check_corpus, letters, random_corpus, synthesize_all, Bounds, ViolationKind};
use pmon_core::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = std::result::Result<String, String>;

const CORPUS_SEED: u64 = 0x5eed_2024;
const EVENTUALLY: &str = "<>ev1";
const BRANCHING: &str = "(ev1 & <>ev2) | (ev3 & []<>ev4)";
const RADIATION: &str = "rad_low U ((rad_high & <>mv_dec) | (rad_medium & []<>(insp_t1 | insp_t2)))";

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn sigma(list: &str) -> Alphabet {
    Alphabet::parse_list(list).unwrap()
}

fn ev(s: &Alphabet, name: &str) -> Event {
    s.lookup(name).unwrap()
}

fn within(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let took = start.elapsed();
    ensure!(took < limit, "took {took:?}, limit {limit:?}");
    Ok(format!("{detail}; {took:.2?}"))
}

fn ac1() -> Outcome {
    within(Duration::from_secs(1), || {
        let s = sigma("ev1,ev2,ev3");
        let m = partialize(&synthesize_monitor(&parse_formula(EVENTUALLY, &s).unwrap(), &s, true).unwrap());
        ensure!(m.len() == 2, "{} states", m.len());
        let (init, top) = (m.initial(), 1 - m.initial());
        ensure!(m.output(init) == Verdict::Unknown && m.output(top) == Verdict::Top, "outputs {:?}", m.outputs());
        ensure!(m.step(init, ev(&s, "ev1")) == top, "ev1 does not reach the ⊤ state");
        ensure!(m.step(init, ev(&s, "ev2")) == init && m.step(init, ev(&s, "ev3")) == init, "no ev2/ev3 self-loops");
        ensure!(m.row(top).iter().all(|&t| t == top), "⊤ state is not a sink");
        Ok("2 states, ? --ev1--> ⊤ sink".into())
    })
}

fn ac2() -> Outcome {
    within(Duration::from_secs(1), || {
        let s = sigma("ev1,ev2,ev3,ev4");
        let three = synthesize_monitor(&parse_formula(BRANCHING, &s).unwrap(), &s, true).unwrap();
        let m = partialize(&three);
        ensure!(m.len() == 5, "{} states", m.len());
        let chi: Vec<usize> = m.states().filter(|&q| m.output(q) == Verdict::GiveUp).collect();
        ensure!(chi.len() == 1, "{} χ states", chi.len());
        ensure!(m.step(m.initial(), ev(&s, "ev3")) == chi[0], "χ state not entered on ev3");
        for q in m.states() {
            let before = Verdict::from(three.output(q));
            if q != chi[0] {
                ensure!(m.output(q) == before, "state {q} changed from {before}");
            } else {
                ensure!(before == Verdict::Unknown, "χ state was {before}");
            }
            ensure!(m.row(q) == three.row(q), "transitions of {q} changed");
        }
        Ok("5 states, one χ entered on ev3".into())
    })
}

fn ac3() -> Outcome {
    within(Duration::from_secs(1), || {
        let (phi, s) = parse_formula_infer("[]<>inspect_tank_1").unwrap();
        let m = partialize(&synthesize_monitor(&phi, &s, true).unwrap());
        ensure!(m.outputs() == [Verdict::GiveUp], "outputs {:?}", m.outputs());
        let r = classify(&m);
        ensure!(r.classification == Classification::NonMonitorable, "{:?}", r.classification);
        ensure!(r.ugly_witness == Some(FiniteTrace::default()), "witness {:?}", r.ugly_witness);
        Ok(format!("1 χ state over {{{}}}, NON_MONITORABLE, witness ε", s.names().join(",")))
    })
}

fn ac4() -> Outcome {
    within(Duration::from_secs(2), || {
        let s = sigma("rad_low,rad_high,rad_medium,mv_dec,insp_t1,insp_t2");
        let phi = parse_formula(RADIATION, &s).unwrap();
        let m = partialize(&synthesize_monitor(&phi, &s, true).unwrap());
        ensure!(m.len() == 5, "{} states", m.len());
        ensure!(m.count(Verdict::GiveUp) == 1, "{} χ states", m.count(Verdict::GiveUp));
        ensure!(
            m.output(m.step(m.initial(), ev(&s, "rad_medium"))) == Verdict::GiveUp,
            "χ not reached on rad_medium"
        );
        let lassos = all_lassos(&s, 2, 2);
        let cases: [(&str, Verdict); 3] = [
            ("rad_medium", Verdict::GiveUp),
            ("insp_t1", Verdict::Bot),
            ("rad_low rad_high mv_dec", Verdict::Top),
        ];
        for (text, expected) in cases {
            let t = parse_trace(text, &s).unwrap();
            let got = monitor_verdict(&m, &t).unwrap();
            ensure!(got == expected, "[{text}] gave {got}, expected {expected}");
            // Independent confirmation on bounded continuations.
            let truths: Vec<bool> = lassos.iter().map(|w| lasso_eval(&phi, &w.prepend(&t.events))).collect();
            let consistent = match expected {
                Verdict::Top => truths.iter().all(|&b| b),
                Verdict::Bot => truths.iter().all(|&b| !b),
                _ => truths.contains(&true) && truths.contains(&false),
            };
            ensure!(consistent, "lasso semantics disagrees on [{text}]");
        }
        Ok(format!("5 states, one χ on rad_medium, 3 traces checked on {} lassos", lassos.len()))
    })
}

struct Corpus {
    formulas: Vec<Formula>,
    alphabet: Alphabet,
    report: pmon_core::check::CorpusReport,
    took: Duration,
}

fn corpus() -> Corpus {
    let alphabet = letters(3);
    let formulas = random_corpus(CORPUS_SEED, 200, 3, 4);
    let start = Instant::now();
    let report = check_corpus(&formulas, &alphabet, Bounds::default()).expect("corpus formulas are valid");
    Corpus {
        formulas,
        alphabet,
        report,
        took: start.elapsed(),
    }
}

fn kinds_clean(c: &Corpus, kinds: &[ViolationKind]) -> Outcome {
    let counts: BTreeMap<ViolationKind, usize> = kinds.iter().map(|&k| (k, c.report.count(k))).collect();
    let bad: Vec<String> = counts
        .iter()
        .filter(|(_, &n)| n > 0)
        .map(|(k, n)| format!("{k:?}={n}"))
        .collect();
    if !bad.is_empty() {
        let first = c.report.violations.iter().find(|v| kinds.contains(&v.kind)).unwrap();
        return Err(format!(
            "{}; first: formula {} `{}` {}",
            bad.join(" "),
            first.formula,
            c.formulas[first.formula].display(&c.alphabet),
            first.detail
        ));
    }
    Ok(String::new())
}

fn ac5(c: &Corpus) -> Outcome {
    ensure!(c.took < Duration::from_secs(300), "took {:?}", c.took);
    kinds_clean(
        c,
        &[
            ViolationKind::TopUnsound,
            ViolationKind::BotUnsound,
            ViolationKind::NbaMismatch,
            ViolationKind::ComplementSplit,
            ViolationKind::Duality,
            ViolationKind::NotSticky,
            ViolationKind::MinimizationChangedVerdict,
        ],
    )?;
    Ok(format!(
        "{} formulas, {} prefixes each, {} lassos; {:.2?}",
        c.report.formulas,
        c.report.prefixes_checked / c.report.formulas.max(1),
        all_lassos(&c.alphabet, 2, 2).len(),
        c.took
    ))
}

fn ac6(c: &Corpus) -> Outcome {
    kinds_clean(
        c,
        &[
            ViolationKind::ReachabilityDisagreement,
            ViolationKind::GiveUpNotClosed,
            ViolationKind::NotIdempotent,
            ViolationKind::ConclusionAfterGiveUp,
            ViolationKind::UnknownWithoutConclusion,
            ViolationKind::OrderSensitive,
        ],
    )?;
    Ok(format!(
        "{} machines, {} states, {} with χ",
        c.report.formulas, c.report.total_states, c.report.machines_with_giveup
    ))
}

fn ac7() -> Outcome {
    let s = sigma("ev1,ev2,ev3,ev4");
    let class = |text: &str| {
        let m = partialize(&synthesize_monitor(&parse_formula(text, &s).unwrap(), &s, true).unwrap());
        classify(&m).classification
    };
    let cases = [
        (EVENTUALLY, Classification::ForallPz),
        (BRANCHING, Classification::ExistsPzOnly),
        ("[]<>ev1", Classification::NonMonitorable),
    ];
    for (text, expected) in cases {
        let got = class(text);
        ensure!(got == expected, "`{text}` gave {}", got.as_str());
    }
    Ok("FORALL_PZ, EXISTS_PZ_ONLY, NON_MONITORABLE".into())
}

fn ac8(c: &Corpus) -> Outcome {
    let machines = synthesize_all(&c.formulas, &c.alphabet).map_err(|e| e.to_string())?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let traces = all_words(&c.alphabet, 3);
    let mut runs = 0;
    for (i, m) in machines.iter().enumerate() {
        let text = emit_monitor(m);
        let parsed = parse_monitor(&text).map_err(|e| format!("machine {i}: {e}"))?;
        ensure!(parsed == *m, "machine {i} changed in round trip");
        ensure!(emit_monitor(&parsed) == text, "machine {i} re-emits differently");

        let path = dir.path().join(format!("m{i}.pmf"));
        std::fs::write(&path, &text).map_err(|e| e.to_string())?;
        let path = path.to_str().unwrap().to_string();
        for (j, t) in traces.iter().enumerate() {
            let names: Vec<&str> = t.iter().map(|&e| c.alphabet.name(e)).collect();
            let input = names.join(" ");
            let mut out = Vec::new();
            let mut err = Vec::new();
            let code = pmon_cli::main_with(
                ["pmon", "run", "--monitor", &path, "--trace", "-"],
                &mut input.as_bytes(),
                &mut out,
                &mut err,
            );
            let mut expected = String::new();
            for k in 1..=t.len() {
                let v = monitor_verdict(m, &FiniteTrace::new(t[..k].to_vec())).unwrap();
                expected.push_str(&format!("{k} {} {}\n", names[k - 1], v.symbol()));
            }
            let last = monitor_verdict(m, &FiniteTrace::new(t.clone())).unwrap();
            expected.push_str(&format!("FINAL {}\n", last.symbol()));
            ensure!(String::from_utf8_lossy(&out) == expected, "machine {i} trace [{input}] output differs");
            ensure!(code == pmon_cli::verdict_code(last), "machine {i} trace [{input}] exit {code}");
            // A sample through the real binary checks process exit codes.
            if j % 13 == 0 && i % 10 == 0 {
                let status = Command::new(env!("CARGO_BIN_EXE_pmon"))
                    .args(["run", "--monitor", &path, "--trace", "-"])
                    .stdin(std::process::Stdio::piped())
                    .stdout(std::process::Stdio::null())
                    .spawn()
                    .and_then(|mut child| {
                        use std::io::Write;
                        child.stdin.take().unwrap().write_all(input.as_bytes())?;
                        child.wait()
                    })
                    .map_err(|e| e.to_string())?;
                let want = match last {
                    Verdict::Top => 0,
                    Verdict::Bot => 1,
                    Verdict::Unknown => 2,
                    Verdict::GiveUp => 3,
                };
                ensure!(status.code() == Some(want), "binary exit {:?}, expected {want}", status.code());
            }
            runs += 1;
        }
    }
    Ok(format!("{} machines round-tripped, {runs} runs compared", machines.len()))
}

/// 10,000 states over 8 events. States below `half` step to a ⊤ or ⊥ sink
/// on `a`; states from `half` up only reach each other and are all ?, so
/// exactly those must become χ.
fn ac9() -> Outcome {
    let n = 10_000;
    let half = n / 2;
    let (top, bot) = (half - 2, half - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut delta = Vec::with_capacity(n);
    let mut outputs = Vec::with_capacity(n);
    for q in 0..n {
        let row: Vec<usize> = if q == top || q == bot {
            vec![q; 8]
        } else if q < half {
            let mut row: Vec<usize> = (0..8).map(|_| rng.gen_range(0..n)).collect();
            row[0] = if q % 2 == 0 { top } else { bot };
            row[1] = if q + 1 == top { half } else { q + 1 };
            row
        } else {
            let mut row: Vec<usize> = (0..8).map(|_| rng.gen_range(half..n)).collect();
            row[1] = if q + 1 < n { q + 1 } else { half };
            row
        };
        delta.push(row);
        outputs.push(match q {
            _ if q == top => VerdictB3::Top,
            _ if q == bot => VerdictB3::Bot,
            _ => VerdictB3::Unknown,
        });
    }
    let m = MooreMonitor::new(letters(8), 0, delta, outputs).map_err(|e| e.to_string())?;
    ensure!(m.len() == n, "only {} states reachable", m.len());

    let start = Instant::now();
    let p = partialize(&m);
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(1), "took {took:?}");
    ensure!(p.count(Verdict::GiveUp) == n - half, "{} χ states, expected {}", p.count(Verdict::GiveUp), n - half);
    let mut sampled = 0;
    for q in p.states().step_by(97) {
        let hopeless = !reachability_oracle(&m, q);
        ensure!((p.output(q) == Verdict::GiveUp) == hopeless, "state {q} disagrees with forward search");
        sampled += 1;
    }
    Ok(format!("{n} states x 8 events in {took:.2?}; {} χ; {sampled} states cross-checked", n - half))
}

fn main() {
    let start = Instant::now();
    let corpus = corpus();
    let results: Vec<(&str, &str, Outcome)> = vec![
        ("AC1", "eventually monitor golden", ac1()),
        ("AC2", "existential monitor relabeling golden", ac2()),
        ("AC3", "recurrence gives up immediately", ac3()),
        ("AC4", "radiation monitor golden", ac4()),
        ("AC5", "oracle soundness on random corpus", ac5(&corpus)),
        ("AC6", "partialize correctness on random corpus", ac6(&corpus)),
        ("AC7", "classification concordance", ac7()),
        ("AC8", "PMF round trip and CLI replay", ac8(&corpus)),
        ("AC9", "linear-time partialize at scale", ac9()),
    ];
    let mut failed = 0;
    for (id, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("[PASS] {id} {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {id} {name}: {why}");
            }
        }
    }
    println!("{} passed, {failed} failed in {:.2?}", results.len() - failed, start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
