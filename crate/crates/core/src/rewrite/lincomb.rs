//! Integer linear combinations of diagrams with explicit powers of `h`.
//!
//! Text form: a bare diagram, `0`, or signed terms `[coef] [h^k] [dsl]`, e.g.
//! `[comul%0] + [comul%+]` or `2 h^1 [mul] - [comul ; mul]`.

use std::fmt;

use super::RewriteError;
use crate::diagram::{Diagram, Label};
use crate::dsl;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub diagram: Diagram,
    pub hdeg: u32,
    pub coeff: i64,
}

impl Term {
    /// Explicit `h` power plus one per `%+` generator.
    pub fn degree(&self) -> u32 {
        self.hdeg + self.diagram.count_label(Label::Plus) as u32
    }
}

/// Normalized combination: terms sorted by (diagram, h-degree), no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinComb {
    arity: (usize, usize),
    terms: Vec<Term>,
}

impl From<Diagram> for LinComb {
    fn from(d: Diagram) -> Self {
        LinComb { arity: d.arity(), terms: vec![Term { diagram: d, hdeg: 0, coeff: 1 }] }
    }
}

impl LinComb {
    pub fn zero(arity: (usize, usize)) -> Self {
        LinComb { arity, terms: Vec::new() }
    }

    pub fn new(arity: (usize, usize), terms: Vec<Term>) -> Result<Self, RewriteError> {
        for t in &terms {
            if t.diagram.arity() != arity {
                return Err(RewriteError::ArityMismatch { lhs: arity, rhs: t.diagram.arity() });
            }
        }
        Ok(Self::normalized(arity, terms))
    }

    pub(crate) fn normalized(arity: (usize, usize), mut terms: Vec<Term>) -> Self {
        terms.sort_by(|a, b| (&a.diagram, a.hdeg).cmp(&(&b.diagram, b.hdeg)));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.diagram == t.diagram && last.hdeg == t.hdeg => last.coeff += t.coeff,
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coeff != 0);
        LinComb { arity, terms: out }
    }

    pub fn arity(&self) -> (usize, usize) {
        self.arity
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The diagram when this is exactly `1 · d` with no `h`.
    pub fn as_diagram(&self) -> Option<&Diagram> {
        match self.terms.as_slice() {
            [t] if t.coeff == 1 && t.hdeg == 0 => Some(&t.diagram),
            _ => None,
        }
    }

    /// Drops terms of degree above `order`.
    pub fn truncated(mut self, order: Option<u32>) -> Self {
        if let Some(n) = order {
            self.terms.retain(|t| t.degree() <= n);
        }
        self
    }

    pub fn coefficient(&self, d: &Diagram, hdeg: u32) -> i64 {
        self.find(d, hdeg).map_or(0, |i| self.terms[i].coeff)
    }

    pub(crate) fn find(&self, d: &Diagram, hdeg: u32) -> Option<usize> {
        self.terms.binary_search_by(|t| (&t.diagram, t.hdeg).cmp(&(d, hdeg))).ok()
    }

    pub fn max_width(&self) -> usize {
        self.terms.iter().map(|t| t.diagram.width()).max().unwrap_or(0)
    }

    pub fn sub(&self, other: &LinComb) -> LinComb {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|t| Term { coeff: -t.coeff, ..t.clone() }));
        Self::normalized(self.arity, terms)
    }

    /// Parses the text form. `arity` is required only for `0`.
    pub fn parse(text: &str, arity: Option<(usize, usize)>) -> Result<LinComb, RewriteError> {
        let s = text.trim();
        if s == "0" {
            return arity.map(LinComb::zero).ok_or_else(|| RewriteError::Parse("arity of `0` is unknown".into()));
        }
        if !s.contains('[') {
            return Ok(dsl::parse(s)?.into());
        }
        let mut terms = Vec::new();
        let mut rest = s;
        let mut first = true;
        while !rest.trim().is_empty() {
            rest = rest.trim_start();
            let mut sign = 1i64;
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                sign = -1;
                rest = r;
            } else if !first {
                return Err(RewriteError::Parse(format!("expected `+` or `-` before `{rest}`")));
            }
            first = false;
            rest = rest.trim_start();
            let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
            let mut coeff = 1i64;
            if !digits.is_empty() {
                coeff = digits.parse().map_err(|_| RewriteError::Parse(format!("bad coefficient `{digits}`")))?;
                rest = rest[digits.len()..].trim_start();
            }
            let mut hdeg = 0u32;
            if let Some(r) = rest.strip_prefix("h^") {
                let digits: String = r.chars().take_while(char::is_ascii_digit).collect();
                hdeg = digits.parse().map_err(|_| RewriteError::Parse("bad h exponent".into()))?;
                rest = r[digits.len()..].trim_start();
            }
            let Some(r) = rest.strip_prefix('[') else {
                return Err(RewriteError::Parse(format!("expected `[` at `{rest}`")));
            };
            let end = r.find(']').ok_or_else(|| RewriteError::Parse("missing `]`".into()))?;
            let diagram = dsl::parse(&r[..end])?;
            terms.push(Term { diagram, hdeg, coeff: sign * coeff });
            rest = &r[end + 1..];
        }
        let arity = terms[0].diagram.arity();
        LinComb::new(arity, terms)
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(d) = self.as_diagram() {
            return write!(f, "{d}");
        }
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff < 0;
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let c = t.coeff.unsigned_abs();
            if c != 1 {
                write!(f, "{c} ")?;
            }
            if t.hdeg > 0 {
                write!(f, "h^{} ", t.hdeg)?;
            }
            write!(f, "[{}]", t.diagram)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn like_terms_collect_and_cancel() {
        let q = dsl::parse("comul ; mul").unwrap();
        let c = LinComb::new(
            (1, 1),
            vec![
                Term { diagram: q.clone(), hdeg: 0, coeff: 2 },
                Term { diagram: q.clone(), hdeg: 0, coeff: -2 },
                Term { diagram: q.clone(), hdeg: 1, coeff: 3 },
            ],
        )
        .unwrap();
        assert_eq!(c.terms().len(), 1);
        assert_eq!(c.coefficient(&q, 1), 3);
    }

    #[test]
    fn text_round_trip() {
        for s in ["comul ; mul", "[comul%+] + [comul%0]", "2 h^1 [mul] - [swap ; mul]", "-[id(1)]"] {
            let c = LinComb::parse(s, None).unwrap();
            assert_eq!(LinComb::parse(&c.to_string(), None).unwrap(), c, "{s}");
        }
        assert!(LinComb::parse("0", Some((1, 1))).unwrap().is_zero());
        assert!(LinComb::parse("[comul] + [mul]", None).is_err());
    }

    #[test]
    fn truncation_counts_plus_labels() {
        let c = LinComb::parse("[comul%0] + [comul%+] + h^1 [comul]", None).unwrap();
        assert_eq!(c.clone().truncated(Some(0)).terms().len(), 1);
        assert_eq!(c.truncated(Some(1)).terms().len(), 3);
    }
}
