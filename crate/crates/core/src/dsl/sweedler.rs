//! Builds diagrams from Sweedler-style formulas.
//!
//! `x(1)(2)` (or the short form `x12`) names the wire reached from input `x`
//! by taking the first coproduct leg, then the second. Juxtaposition or `.`
//! multiplies (left-nested unless parenthesized), `|` or `⊗` separates output
//! factors, and `1` is the unit. Legs that are split but never mentioned are
//! capped with a counit; inputs that never appear are capped as well.
//!
//! ```text
//! x1 x221 | x21 | x222        (1 input, 3 outputs)
//! ```

use std::collections::BTreeMap;

use super::DslError;
use crate::diagram::{Diagram, DiagramError, Generator, Kind, Node, Src};

#[derive(Debug, Clone)]
enum Term {
    One,
    Leg { var: usize, path: Vec<u8> },
    Mul(Box<Term>, Box<Term>),
}

/// Parses a Sweedler formula over the named input variables (single letters,
/// wire order as given).
pub fn sweedler(inputs: &[char], text: &str) -> Result<Diagram, DslError> {
    let mut p = SweedlerParser { chars: text.char_indices().collect(), i: 0, text, inputs };
    let mut factors = vec![p.product()?];
    loop {
        p.skip_ws();
        match p.peek() {
            Some('|') | Some('⊗') => {
                p.i += 1;
                factors.push(p.product()?);
            }
            None => break,
            Some(c) => return Err(DslError::syntax(p.pos(), format!("unexpected `{c}`"))),
        }
    }
    build(inputs.len(), &factors)
}

struct SweedlerParser<'a> {
    chars: Vec<(usize, char)>,
    i: usize,
    text: &'a str,
    inputs: &'a [char],
}

impl SweedlerParser<'_> {
    fn pos(&self) -> usize {
        self.chars.get(self.i).map_or(self.text.len(), |c| c.0)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).map(|c| c.1)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.i += 1;
        }
    }

    fn product(&mut self) -> Result<Term, DslError> {
        let mut acc = self.atom()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('.') | Some('·') => {
                    self.i += 1;
                    let rhs = self.atom()?;
                    acc = Term::Mul(Box::new(acc), Box::new(rhs));
                }
                Some(c) if c == '(' || c == '1' || self.inputs.contains(&c) => {
                    let rhs = self.atom()?;
                    acc = Term::Mul(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn atom(&mut self) -> Result<Term, DslError> {
        self.skip_ws();
        let at = self.pos();
        match self.peek() {
            Some('(') => {
                self.i += 1;
                let t = self.product()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(DslError::syntax(self.pos(), "expected `)`"));
                }
                self.i += 1;
                Ok(t)
            }
            Some('1') => {
                self.i += 1;
                Ok(Term::One)
            }
            Some(c) => {
                let Some(var) = self.inputs.iter().position(|&v| v == c) else {
                    return Err(DslError::syntax(at, format!("unknown variable `{c}`")));
                };
                self.i += 1;
                let mut path = Vec::new();
                loop {
                    match (self.peek(), self.chars.get(self.i + 1).map(|c| c.1), self.chars.get(self.i + 2).map(|c| c.1)) {
                        (Some(d @ ('1' | '2')), _, _) => {
                            path.push(d as u8 - b'0');
                            self.i += 1;
                        }
                        (Some('('), Some(d @ ('1' | '2')), Some(')')) => {
                            path.push(d as u8 - b'0');
                            self.i += 3;
                        }
                        _ => break,
                    }
                }
                Ok(Term::Leg { var, path })
            }
            None => Err(DslError::syntax(at, "unexpected end of input")),
        }
    }
}

fn collect_legs(t: &Term, out: &mut Vec<(usize, Vec<u8>)>) {
    match t {
        Term::One => {}
        Term::Leg { var, path } => out.push((*var, path.clone())),
        Term::Mul(a, b) => {
            collect_legs(a, out);
            collect_legs(b, out);
        }
    }
}

fn build(n_in: usize, factors: &[Term]) -> Result<Diagram, DslError> {
    let mut legs = Vec::new();
    for f in factors {
        collect_legs(f, &mut legs);
    }
    for (k, a) in legs.iter().enumerate() {
        for b in &legs[k + 1..] {
            if a.0 == b.0 && (a.1.starts_with(&b.1) || b.1.starts_with(&a.1)) {
                return Err(DiagramError::Malformed(format!("Sweedler leg {:?} overlaps {:?}", a.1, b.1)).into());
            }
        }
    }
    let mut nodes = Vec::new();
    let mut wire: BTreeMap<(usize, Vec<u8>), Src> = BTreeMap::new();
    for var in 0..n_in {
        split(var, Vec::new(), Src::Input(var as u16), &legs, &mut nodes, &mut wire);
    }
    let mut outs = Vec::with_capacity(factors.len());
    for f in factors {
        outs.push(eval(f, &wire, &mut nodes));
    }
    Ok(Diagram::from_parts(n_in, nodes, outs)?)
}

fn split(
    var: usize,
    path: Vec<u8>,
    src: Src,
    legs: &[(usize, Vec<u8>)],
    nodes: &mut Vec<Node>,
    wire: &mut BTreeMap<(usize, Vec<u8>), Src>,
) {
    let used = legs.iter().any(|(v, p)| *v == var && *p == path);
    let below = legs.iter().any(|(v, p)| *v == var && p.len() > path.len() && p.starts_with(&path));
    if used {
        wire.insert((var, path), src);
    } else if below {
        let v = nodes.len() as u16;
        nodes.push(Node::new(Generator::plain(Kind::Comul), &[src]));
        for leg in 1..=2u8 {
            let mut child = path.clone();
            child.push(leg);
            split(var, child, Src::Node(v, leg - 1), legs, nodes, wire);
        }
    } else {
        nodes.push(Node::new(Generator::plain(Kind::Counit), &[src]));
    }
}

fn eval(t: &Term, wire: &BTreeMap<(usize, Vec<u8>), Src>, nodes: &mut Vec<Node>) -> Src {
    match t {
        Term::One => {
            nodes.push(Node::new(Generator::plain(Kind::Unit), &[]));
            Src::Node(nodes.len() as u16 - 1, 0)
        }
        Term::Leg { var, path } => wire[&(*var, path.clone())],
        Term::Mul(a, b) => {
            let l = eval(a, wire, nodes);
            let r = eval(b, wire, nodes);
            nodes.push(Node::new(Generator::plain(Kind::Mul), &[l, r]));
            Src::Node(nodes.len() as u16 - 1, 0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    #[test]
    fn q_from_sweedler() {
        assert_eq!(sweedler(&['x'], "x1 x2").unwrap(), parse("comul ; mul").unwrap());
        assert_eq!(sweedler(&['x'], "x(1)x(2)").unwrap(), parse("comul ; mul").unwrap());
    }

    #[test]
    fn counit_on_unused_leg() {
        assert_eq!(sweedler(&['x'], "x2").unwrap(), parse("comul ; counit * id(1)").unwrap());
        assert_eq!(sweedler(&['x'], "x").unwrap(), Diagram::id(1));
    }

    #[test]
    fn several_inputs_and_unit() {
        assert_eq!(sweedler(&['x', 'y'], "y | x").unwrap(), Diagram::swap());
        assert_eq!(sweedler(&['x', 'y'], "x.y | 1").unwrap(), parse("mul * unit").unwrap());
        assert_eq!(sweedler(&['x', 'y', 'z'], "x(yz)").unwrap(), parse("id(1) * mul ; mul").unwrap());
    }

    #[test]
    fn overlapping_legs_rejected() {
        assert!(sweedler(&['x'], "x1 | x12").is_err());
        assert!(sweedler(&['x'], "x1 x1").is_err());
        assert!(matches!(sweedler(&['x'], "x1 + x2"), Err(DslError::Syntax { .. })));
    }
}
