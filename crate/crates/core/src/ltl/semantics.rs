use super::{Formula, LassoWord};

/// Decides `stem · loop^ω ⊨ phi` by labeling the positions of the lasso
/// graph bottom-up. Until and Release are solved as least/greatest fixpoints
/// on the loop, then propagated backwards through the stem.
///
/// This never touches the automata pipeline; it is the reference the
/// synthesized machines are checked against.
pub fn lasso_eval(phi: &Formula, w: &LassoWord) -> bool {
    label(phi, w)[0]
}

fn label(phi: &Formula, w: &LassoWord) -> Vec<bool> {
    let n = w.positions();
    match phi {
        Formula::True => vec![true; n],
        Formula::False => vec![false; n],
        Formula::Atom(e) => (0..n).map(|i| w.at(i) == *e).collect(),
        Formula::Not(g) => label(g, w).into_iter().map(|b| !b).collect(),
        Formula::And(a, b) => zip(label(a, w), label(b, w), |x, y| x && y),
        Formula::Or(a, b) => zip(label(a, w), label(b, w), |x, y| x || y),
        Formula::Implies(a, b) => zip(label(a, w), label(b, w), |x, y| !x || y),
        Formula::Next(g) => {
            let inner = label(g, w);
            (0..n).map(|i| inner[w.successor(i)]).collect()
        }
        Formula::Until(a, b) => until(&label(a, w), &label(b, w), w),
        Formula::Release(a, b) => release(&label(a, w), &label(b, w), w),
        Formula::Eventually(g) => until(&vec![true; n], &label(g, w), w),
        Formula::Always(g) => release(&vec![false; n], &label(g, w), w),
    }
}

fn zip(a: Vec<bool>, b: Vec<bool>, op: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(x, y)| op(x, y)).collect()
}

/// Solves `sat(i) = now(i) ∘ (keep(i) ∘' sat(succ i))` starting from `seed`
/// on the loop, iterating until stable, then sweeps the stem backwards.
fn fixpoint(
    w: &LassoWord,
    seed: bool,
    step: impl Fn(usize, bool) -> bool,
) -> Vec<bool> {
    let n = w.positions();
    let s = w.stem().len();
    let mut sat = vec![seed; n];
    loop {
        let mut changed = false;
        for i in (s..n).rev() {
            let v = step(i, sat[w.successor(i)]);
            if v != sat[i] {
                sat[i] = v;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    for i in (0..s).rev() {
        sat[i] = step(i, sat[i + 1]);
    }
    sat
}

fn until(a: &[bool], b: &[bool], w: &LassoWord) -> Vec<bool> {
    fixpoint(w, false, |i, next| b[i] || (a[i] && next))
}

fn release(a: &[bool], b: &[bool], w: &LassoWord) -> Vec<bool> {
    fixpoint(w, true, |i, next| b[i] && (a[i] || next))
}
