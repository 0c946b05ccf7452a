use super::Formula;

/// Negation normal form of `phi`: `Not` appears only directly above atoms
/// and `Implies` is rewritten away. `F`/`G` are kept as is.
pub fn nnf(phi: &Formula) -> Formula {
    push(phi, false)
}

/// Negation normal form of `!phi`.
pub fn negate_nnf(phi: &Formula) -> Formula {
    push(phi, true)
}

fn push(phi: &Formula, negated: bool) -> Formula {
    use Formula as F;
    match (phi, negated) {
        (F::True, false) | (F::False, true) => F::True,
        (F::True, true) | (F::False, false) => F::False,
        (F::Atom(e), false) => F::Atom(*e),
        (F::Atom(e), true) => F::not(F::Atom(*e)),
        (F::Not(g), n) => push(g, !n),
        (F::And(a, b), false) => F::and(push(a, false), push(b, false)),
        (F::And(a, b), true) => F::or(push(a, true), push(b, true)),
        (F::Or(a, b), false) => F::or(push(a, false), push(b, false)),
        (F::Or(a, b), true) => F::and(push(a, true), push(b, true)),
        (F::Implies(a, b), false) => F::or(push(a, true), push(b, false)),
        (F::Implies(a, b), true) => F::and(push(a, false), push(b, true)),
        (F::Next(g), n) => F::next(push(g, n)),
        (F::Until(a, b), false) => F::until(push(a, false), push(b, false)),
        (F::Until(a, b), true) => F::release(push(a, true), push(b, true)),
        (F::Release(a, b), false) => F::release(push(a, false), push(b, false)),
        (F::Release(a, b), true) => F::until(push(a, true), push(b, true)),
        (F::Eventually(g), false) => F::eventually(push(g, false)),
        (F::Eventually(g), true) => F::always(push(g, true)),
        (F::Always(g), false) => F::always(push(g, false)),
        (F::Always(g), true) => F::eventually(push(g, true)),
    }
}

/// True when `phi` is in negation normal form.
pub fn is_nnf(phi: &Formula) -> bool {
    use Formula as F;
    match phi {
        F::True | F::False | F::Atom(_) => true,
        F::Not(g) => matches!(**g, F::Atom(_)),
        F::Implies(..) => false,
        F::Next(g) | F::Eventually(g) | F::Always(g) => is_nnf(g),
        F::And(a, b) | F::Or(a, b) | F::Until(a, b) | F::Release(a, b) => is_nnf(a) && is_nnf(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::Event;

    fn ev(i: u32) -> Formula {
        Formula::Atom(Event(i))
    }

    #[test]
    fn dualities() {
        assert_eq!(
            negate_nnf(&Formula::eventually(ev(1))),
            Formula::always(Formula::not(ev(1)))
        );
        assert_eq!(
            negate_nnf(&Formula::always(ev(4))),
            Formula::eventually(Formula::not(ev(4)))
        );
        assert_eq!(
            negate_nnf(&Formula::until(ev(1), ev(2))),
            Formula::release(Formula::not(ev(1)), Formula::not(ev(2)))
        );
    }

    #[test]
    fn implication_and_double_negation() {
        let f = Formula::not(Formula::not(Formula::implies(ev(0), Formula::next(ev(1)))));
        let g = nnf(&f);
        assert_eq!(g, Formula::or(Formula::not(ev(0)), Formula::next(ev(1))));
        assert!(is_nnf(&g));
        assert!(!is_nnf(&f));
        assert_eq!(nnf(&Formula::not(Formula::True)), Formula::False);
    }
}
