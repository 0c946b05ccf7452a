use super::{is_identifier, Alphabet, Formula};
use crate::error::{Error, Result};

const KEYWORDS: [&str; 7] = ["true", "false", "X", "F", "G", "U", "R"];

pub(crate) fn is_keyword(name: &str) -> bool {
    KEYWORDS.contains(&name)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    Next,
    Eventually,
    Always,
    Until,
    Release,
    And,
    Or,
    Implies,
    LParen,
    RParen,
}

fn syntax(position: usize, expected: &[&str]) -> Error {
    Error::Syntax {
        position,
        expected: expected.iter().map(|s| s.to_string()).collect(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'!' => {
                out.push((i, Tok::Not));
                i += 1;
            }
            b'&' => {
                out.push((i, Tok::And));
                i += 1;
            }
            b'|' => {
                out.push((i, Tok::Or));
                i += 1;
            }
            b'(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                out.push((i, Tok::Implies));
                i += 2;
            }
            b'<' if bytes.get(i + 1) == Some(&b'>') => {
                out.push((i, Tok::Eventually));
                i += 2;
            }
            b'[' if bytes.get(i + 1) == Some(&b']') => {
                out.push((i, Tok::Always));
                i += 2;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = match word {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "X" => Tok::Next,
                    "F" => Tok::Eventually,
                    "G" => Tok::Always,
                    "U" => Tok::Until,
                    "R" => Tok::Release,
                    _ => Tok::Ident(word.to_string()),
                };
                out.push((start, tok));
            }
            _ => return Err(syntax(i, &["an operator", "an identifier", "`(`"])),
        }
    }
    Ok(out)
}

trait Atoms {
    fn resolve(&mut self, name: &str) -> Result<Formula>;
}

struct Fixed<'a>(&'a Alphabet);

impl Atoms for Fixed<'_> {
    fn resolve(&mut self, name: &str) -> Result<Formula> {
        self.0
            .lookup(name)
            .map(Formula::Atom)
            .ok_or_else(|| Error::UnknownAtom(name.to_string()))
    }
}

struct Inferred(Vec<String>);

impl Atoms for Inferred {
    fn resolve(&mut self, name: &str) -> Result<Formula> {
        let idx = match self.0.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                self.0.push(name.to_string());
                self.0.len() - 1
            }
        };
        Ok(Formula::Atom(super::Event(idx as u32)))
    }
}

struct Parser<'t, A> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    atoms: &'t mut A,
}

const PRIMARY: &[&str] = &["`true`", "`false`", "an identifier", "`(`", "a unary operator"];

impl<A: Atoms> Parser<'_, A> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.temporal()?;
        while self.eat(&Tok::And) {
            let rhs = self.temporal()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    // U and R share a level and associate to the right.
    fn temporal(&mut self) -> Result<Formula> {
        let lhs = self.unary()?;
        if self.eat(&Tok::Until) {
            return Ok(Formula::until(lhs, self.temporal()?));
        }
        if self.eat(&Tok::Release) {
            return Ok(Formula::release(lhs, self.temporal()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        let op = self.peek().cloned();
        match op {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Next) => {
                self.pos += 1;
                Ok(Formula::next(self.unary()?))
            }
            Some(Tok::Eventually) => {
                self.pos += 1;
                Ok(Formula::eventually(self.unary()?))
            }
            Some(Tok::Always) => {
                self.pos += 1;
                Ok(Formula::always(self.unary()?))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula> {
        let at = self.offset();
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::True) => {
                self.pos += 1;
                Ok(Formula::True)
            }
            Some(Tok::False) => {
                self.pos += 1;
                Ok(Formula::False)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.atoms.resolve(&name)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.formula()?;
                if !self.eat(&Tok::RParen) {
                    return Err(syntax(self.offset(), &["`)`"]));
                }
                Ok(inner)
            }
            _ => Err(syntax(at, PRIMARY)),
        }
    }
}

fn run<A: Atoms>(text: &str, atoms: &mut A) -> Result<Formula> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.len(),
        atoms,
    };
    let formula = parser.formula()?;
    if parser.peek().is_some() {
        return Err(syntax(parser.offset(), &["end of input", "a binary operator"]));
    }
    Ok(formula)
}

/// Parses `text` against a fixed alphabet.
///
/// Precedence from tightest to loosest: unary `! X F G <> []`, then `U`/`R`
/// (right associative), then `&`, then `|`, then `->` (right associative).
pub fn parse_formula(text: &str, alphabet: &Alphabet) -> Result<Formula> {
    run(text, &mut Fixed(alphabet))
}

/// Name of the event that stands for everything a formula does not mention.
pub const CATCH_ALL: &str = "_other";

/// Parses `text`, building the alphabet from its atoms in order of first
/// occurrence, followed by a catch-all event (`_other`, padded with
/// underscores if the formula already uses that name).
///
/// Events are mutually exclusive, so without the catch-all an alphabet of
/// one atom `p` would admit only the word `p^ω` and `[]<>p` would be trivially
/// true.
pub fn parse_formula_infer(text: &str) -> Result<(Formula, Alphabet)> {
    let mut inferred = Inferred(Vec::new());
    let formula = run(text, &mut inferred)?;
    let mut names = inferred.0;
    debug_assert!(names.iter().all(|n| is_identifier(n)));
    let mut other = CATCH_ALL.to_string();
    while names.contains(&other) {
        other.push('_');
    }
    names.push(other);
    Ok((formula, Alphabet::new(names)?))
}
