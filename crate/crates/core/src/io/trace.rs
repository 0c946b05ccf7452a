use crate::error::Result;
use crate::ltl::{Alphabet, FiniteTrace};

/// Whitespace separated event names; `#` starts a comment that runs to the
/// end of the line. Unknown names are reported with their 1-based position.
pub fn parse_trace(text: &str, alphabet: &Alphabet) -> Result<FiniteTrace> {
    let tokens = text
        .lines()
        .map(|line| line.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace);
    alphabet.resolve(tokens).map(FiniteTrace::new)
}
