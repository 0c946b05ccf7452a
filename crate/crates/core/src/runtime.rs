//! Online execution of partial monitors.

use crate::error::{Error, Result};
use crate::fsm::{PartialMonitor, Verdict};
use crate::ltl::{Event, FiniteTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Running,
    Concluded(Verdict),
}

/// A single run of a monitor. Once the verdict is ⊤, ⊥ or χ the session is
/// concluded and further events are absorbed without moving.
#[derive(Debug, Clone)]
pub struct MonitorSession<'m> {
    machine: &'m PartialMonitor,
    current: usize,
    status: Status,
    steps: usize,
}

fn status_of(v: Verdict) -> Status {
    match v {
        Verdict::Unknown => Status::Running,
        v => Status::Concluded(v),
    }
}

impl<'m> MonitorSession<'m> {
    pub fn start(machine: &'m PartialMonitor) -> Self {
        let current = machine.initial();
        MonitorSession {
            machine,
            current,
            status: status_of(machine.output(current)),
            steps: 0,
        }
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn verdict(&self) -> Verdict {
        self.machine.output(self.current)
    }

    pub fn state(&self) -> usize {
        self.current
    }

    /// Number of events consumed before conclusion.
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn is_concluded(&self) -> bool {
        matches!(self.status, Status::Concluded(_))
    }

    pub fn step(&mut self, event: Event) -> Result<Verdict> {
        if !self.machine.alphabet().contains(event) {
            return Err(Error::UnknownEvent {
                name: format!("#{}", event.0),
                position: self.steps + 1,
            });
        }
        if let Status::Concluded(v) = self.status {
            return Ok(v);
        }
        self.current = self.machine.step(self.current, event);
        self.steps += 1;
        let v = self.verdict();
        self.status = status_of(v);
        Ok(v)
    }

    pub fn step_name(&mut self, name: &str) -> Result<Verdict> {
        let event = self.machine.alphabet().lookup(name).ok_or_else(|| Error::UnknownEvent {
            name: name.to_string(),
            position: self.steps + 1,
        })?;
        self.step(event)
    }
}

/// Verdict after each event, as `(1-based index, verdict)`. With
/// `stop_early` the output ends at the first ⊤, ⊥ or χ.
pub fn run_trace(
    m: &PartialMonitor,
    sigma: &FiniteTrace,
    stop_early: bool,
) -> Result<Vec<(usize, Verdict)>> {
    let mut session = MonitorSession::start(m);
    let mut out = Vec::with_capacity(sigma.len());
    for (i, &e) in sigma.events.iter().enumerate() {
        if stop_early && session.is_concluded() {
            break;
        }
        let v = session.step(e).map_err(|err| match err {
            Error::UnknownEvent { name, .. } => Error::UnknownEvent {
                name,
                position: i + 1,
            },
            other => other,
        })?;
        out.push((i + 1, v));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fsm::synthesize_monitor;
    use crate::ltl::{parse_formula, parse_formula_infer, Alphabet};
    use crate::partial::partialize;

    fn partial(text: &str, s: &Alphabet) -> PartialMonitor {
        partialize(&synthesize_monitor(&parse_formula(text, s).unwrap(), s, true).unwrap())
    }

    fn trace(s: &Alphabet, names: &[&str]) -> FiniteTrace {
        FiniteTrace::new(s.resolve(names.iter().copied()).unwrap())
    }

    #[test]
    fn start_states() {
        let (phi, s) = parse_formula_infer("[]<>inspect_tank_1").unwrap();
        let m = partialize(&synthesize_monitor(&phi, &s, true).unwrap());
        let session = MonitorSession::start(&m);
        assert_eq!(session.status(), Status::Concluded(Verdict::GiveUp));
        assert_eq!(session.steps(), 0);

        let s = Alphabet::new(["ev1", "ev2", "ev3"]).unwrap();
        let m = partial("<>ev1", &s);
        let session = MonitorSession::start(&m);
        assert_eq!(session.status(), Status::Running);
        assert_eq!(session.verdict(), Verdict::Unknown);

        let m = partial("true", &s);
        assert_eq!(MonitorSession::start(&m).status(), Status::Concluded(Verdict::Top));
    }

    #[test]
    fn conclusion_is_absorbing() {
        let s = Alphabet::new(["ev1", "ev2", "ev3"]).unwrap();
        let m = partial("<>ev1", &s);
        let mut session = MonitorSession::start(&m);
        assert_eq!(session.step_name("ev2").unwrap(), Verdict::Unknown);
        assert_eq!(session.step_name("ev1").unwrap(), Verdict::Top);
        assert_eq!(session.step_name("ev3").unwrap(), Verdict::Top);
        assert_eq!(session.steps(), 2);
        assert!(matches!(
            session.step_name("ev9"),
            Err(Error::UnknownEvent { .. })
        ));
    }

    #[test]
    fn existential_example_traces() {
        let s = Alphabet::new(["ev1", "ev2", "ev3", "ev4"]).unwrap();
        let m = partial("(ev1 & <>ev2) | (ev3 & []<>ev4)", &s);
        assert_eq!(
            run_trace(&m, &trace(&s, &["ev1", "ev2"]), false).unwrap(),
            vec![(1, Verdict::Unknown), (2, Verdict::Top)]
        );
        assert_eq!(
            run_trace(&m, &trace(&s, &["ev3", "ev1", "ev2"]), true).unwrap(),
            vec![(1, Verdict::GiveUp)]
        );
        assert_eq!(
            run_trace(&m, &trace(&s, &["ev3", "ev1"]), false).unwrap(),
            vec![(1, Verdict::GiveUp), (2, Verdict::GiveUp)]
        );
        assert!(run_trace(&m, &FiniteTrace::default(), true).unwrap().is_empty());
        let bad = FiniteTrace::new(vec![Event(0), Event(9)]);
        assert_eq!(
            run_trace(&m, &bad, false),
            Err(Error::UnknownEvent {
                name: "#9".into(),
                position: 2
            })
        );
    }
}
