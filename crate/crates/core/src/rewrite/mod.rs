//! Rewriting diagrams and linear combinations of diagrams.
//!
//! A rule relates two combinations of equal arity. Applying it at an
//! occurrence of the pattern side's first ("anchor") term inside one term of
//! the current combination replaces that term's context filled with the
//! pattern by the same context filled with the replacement. When the pattern
//! side has several terms, the other context-filled pattern terms must
//! already be present with matching coefficients (or be truncated away), so
//! such steps only ever collapse sums.

mod lincomb;
mod matching;
mod search;
mod soundness;
mod trace;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::{Diagram, Src};
use crate::dsl::DslError;

pub use lincomb::{LinComb, Term};
pub use matching::{find_occurrences, replace, Occurrence};
pub use search::{prove_equal, search, Exhaustion, SearchBudget, SearchOutcome, SearchStats};
pub use soundness::{check_soundness, SoundnessFailure, SoundnessReport};
pub use trace::{ProofTrace, ReplayError, TraceStep};

use crate::theories::Theory;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("arity mismatch: {lhs:?} vs {rhs:?}")]
    ArityMismatch { lhs: (usize, usize), rhs: (usize, usize) },
    #[error("rule `{rule}` does not match at {position}")]
    NoMatch { rule: String, position: String },
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("bad position `{0}`")]
    BadPosition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid budget: {0}")]
    Budget(String),
    #[error(transparent)]
    Dsl(#[from] DslError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// Left-hand side to right-hand side.
    Fwd,
    Bwd,
}

impl Direction {
    pub fn reversed(self) -> Direction {
        match self {
            Direction::Fwd => Direction::Bwd,
            Direction::Bwd => Direction::Fwd,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Fwd => "fwd",
            Direction::Bwd => "bwd",
        })
    }
}

impl FromStr for Direction {
    type Err = RewriteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fwd" => Ok(Direction::Fwd),
            "bwd" => Ok(Direction::Bwd),
            other => Err(RewriteError::Parse(format!("bad direction `{other}`"))),
        }
    }
}

/// Where a step applies: a term of the combination and an occurrence of the
/// anchor pattern inside it. Printed as `t0:[3,5|in0,2.1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    pub term: usize,
    pub occ: Occurrence,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nodes: Vec<String> = self.occ.nodes.iter().map(u16::to_string).collect();
        let ins: Vec<String> = self
            .occ
            .ins
            .iter()
            .map(|s| match s {
                Src::Input(i) => format!("in{i}"),
                Src::Node(v, p) => format!("{v}.{p}"),
            })
            .collect();
        write!(f, "t{}:[{}|{}]", self.term, nodes.join(","), ins.join(","))
    }
}

impl FromStr for Position {
    type Err = RewriteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RewriteError::BadPosition(s.to_string());
        let rest = s.strip_prefix('t').ok_or_else(bad)?;
        let (term, rest) = rest.split_once(":[").ok_or_else(bad)?;
        let body = rest.strip_suffix(']').ok_or_else(bad)?;
        let (nodes, ins) = body.split_once('|').ok_or_else(bad)?;
        let term = term.parse().map_err(|_| bad())?;
        let nodes = if nodes.is_empty() {
            Vec::new()
        } else {
            nodes.split(',').map(|n| n.parse::<u16>().map_err(|_| bad())).collect::<Result<_, _>>()?
        };
        let ins = if ins.is_empty() {
            Vec::new()
        } else {
            ins.split(',')
                .map(|w| {
                    if let Some(i) = w.strip_prefix("in") {
                        i.parse().map(Src::Input).map_err(|_| bad())
                    } else {
                        let (v, p) = w.split_once('.').ok_or_else(bad)?;
                        Ok(Src::Node(v.parse().map_err(|_| bad())?, p.parse().map_err(|_| bad())?))
                    }
                })
                .collect::<Result<_, _>>()?
        };
        Ok(Position { term, occ: Occurrence { nodes, ins } })
    }
}

/// A bidirectional equation between two combinations of the same arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub name: String,
    pub lhs: LinComb,
    pub rhs: LinComb,
    /// Only terms whose degree lies in this closed range are rewritten.
    pub window: Option<(u32, u32)>,
}

impl RewriteRule {
    pub fn new(name: impl Into<String>, lhs: Diagram, rhs: Diagram) -> Result<Self, RewriteError> {
        Self::linear(name, lhs.into(), rhs.into())
    }

    pub fn linear(name: impl Into<String>, lhs: LinComb, rhs: LinComb) -> Result<Self, RewriteError> {
        let name = name.into();
        if lhs.arity() != rhs.arity() {
            return Err(RewriteError::ArityMismatch { lhs: lhs.arity(), rhs: rhs.arity() });
        }
        if lhs.is_zero() || rhs.is_zero() {
            return Err(RewriteError::Parse(format!("rule `{name}` has an empty side")));
        }
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(RewriteError::Parse(format!("bad rule name `{name}`")));
        }
        Ok(RewriteRule { name, lhs, rhs, window: None })
    }

    pub fn with_window(mut self, lo: u32, hi: u32) -> Self {
        self.window = Some((lo, hi));
        self
    }

    /// (pattern side, replacement side) for a direction.
    pub fn sides(&self, dir: Direction) -> (&LinComb, &LinComb) {
        match dir {
            Direction::Fwd => (&self.lhs, &self.rhs),
            Direction::Bwd => (&self.rhs, &self.lhs),
        }
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} = {}", self.name, self.lhs, self.rhs)
    }
}

/// Rewrites `comb` at `term`/`occ`; `None` when the step is not applicable.
/// Also returns the position of the replacement's anchor in the result, when
/// that term survives collection and truncation unchanged.
pub(crate) fn rewrite_at(
    comb: &LinComb,
    rule: &RewriteRule,
    dir: Direction,
    term: usize,
    occ: &Occurrence,
    truncation: Option<u32>,
) -> Option<(LinComb, Option<Position>)> {
    let t = comb.terms().get(term)?;
    if let Some((lo, hi)) = rule.window {
        if t.degree() < lo || t.degree() > hi {
            return None;
        }
    }
    let (pat, rep) = rule.sides(dir);
    let anchor = &pat.terms()[0];
    if t.coeff % anchor.coeff != 0 {
        return None;
    }
    let k = t.coeff / anchor.coeff;
    let mut terms: Vec<Term> = comb.terms().to_vec();
    terms[term].coeff = 0;
    for other in &pat.terms()[1..] {
        let (filled, _) = replace(&t.diagram, &anchor.diagram, occ, &other.diagram);
        let probe = Term { diagram: filled, hdeg: t.hdeg + other.hdeg, coeff: k * other.coeff };
        let beyond = truncation.is_some_and(|n| probe.degree() > n);
        if !beyond {
            let idx = comb.find(&probe.diagram, probe.hdeg)?;
            if comb.terms()[idx].coeff != probe.coeff || idx == term {
                return None;
            }
            terms[idx].coeff = 0;
        }
    }
    let mut anchor_out = None;
    for (r, rt) in rep.terms().iter().enumerate() {
        let (filled, inv) = replace(&t.diagram, &anchor.diagram, occ, &rt.diagram);
        if r == 0 {
            anchor_out = Some((filled.clone(), t.hdeg + rt.hdeg, k * rt.coeff, inv));
        }
        terms.push(Term { diagram: filled, hdeg: t.hdeg + rt.hdeg, coeff: k * rt.coeff });
    }
    let result = LinComb::normalized(comb.arity(), terms).truncated(truncation);
    let inverse = anchor_out.and_then(|(d, h, c, inv)| {
        let idx = result.find(&d, h)?;
        (result.terms()[idx].coeff == c).then_some(Position { term: idx, occ: inv })
    });
    Some((result, inverse))
}

/// Applies `rule` at `position`, checking that the position is a genuine occurrence.
pub fn apply_rule(
    comb: &LinComb,
    rule: &RewriteRule,
    position: &Position,
    dir: Direction,
    truncation: Option<u32>,
) -> Result<LinComb, RewriteError> {
    let no_match = || RewriteError::NoMatch { rule: rule.name.clone(), position: position.to_string() };
    let t = comb.terms().get(position.term).ok_or_else(no_match)?;
    let anchor = &rule.sides(dir).0.terms()[0].diagram;
    if !find_occurrences(anchor, &t.diagram).contains(&position.occ) {
        return Err(no_match());
    }
    rewrite_at(comb, rule, dir, position.term, &position.occ, truncation).map(|(r, _)| r).ok_or_else(no_match)
}

/// Every position at which `rule` applies to `comb` in direction `dir`, sorted.
pub fn positions(comb: &LinComb, rule: &RewriteRule, dir: Direction) -> Vec<Position> {
    let anchor = &rule.sides(dir).0.terms()[0].diagram;
    let mut out = Vec::new();
    for (term, t) in comb.terms().iter().enumerate() {
        for occ in find_occurrences(anchor, &t.diagram) {
            out.push(Position { term, occ });
        }
    }
    out
}

/// Convenience wrapper for single diagrams: applies the rule at the first
/// occurrence of its pattern side.
pub fn apply_first(d: &Diagram, rule: &RewriteRule, dir: Direction) -> Result<LinComb, RewriteError> {
    let comb = LinComb::from(d.clone());
    let pos = positions(&comb, rule, dir)
        .into_iter()
        .next()
        .ok_or_else(|| RewriteError::NoMatch { rule: rule.name.clone(), position: "anywhere".into() })?;
    apply_rule(&comb, rule, &pos, dir, None)
}

/// Looks a rule up by name in a theory.
pub(crate) fn rule_named<'a>(theory: &'a Theory, name: &str) -> Result<&'a RewriteRule, RewriteError> {
    theory.rules().iter().find(|r| r.name == name).ok_or_else(|| RewriteError::UnknownRule(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    fn rule(name: &str, l: &str, r: &str) -> RewriteRule {
        RewriteRule::new(name, parse(l).unwrap(), parse(r).unwrap()).unwrap()
    }

    #[test]
    fn counit_rule_collapses() {
        let r = rule("counit-left", "comul ; counit * id(1)", "id(1)");
        let out = apply_first(&parse("comul ; (counit * id(1))").unwrap(), &r, Direction::Fwd).unwrap();
        assert_eq!(out.as_diagram(), Some(&Diagram::id(1)));
    }

    #[test]
    fn cocommutativity_on_q() {
        let r = rule("cocomm", "comul", "comul ; swap");
        let out = apply_first(&parse("comul ; mul").unwrap(), &r, Direction::Fwd).unwrap();
        assert_eq!(out.to_string(), "comul ; swap ; mul");
    }

    #[test]
    fn root_match_gives_rhs_verbatim() {
        let lhs = parse("comul ; id(1) * comul ; id(2) * comul ; id(1) * swap * id(1) ; mul * id(2)").unwrap();
        let rhs = parse("comul ; comul * id(1) ; comul * id(2) ; id(1) * swap * id(1) ; mul * id(2)").unwrap();
        let r = RewriteRule::new("comoufang_l", lhs.clone(), rhs.clone()).unwrap();
        assert_eq!(apply_first(&lhs, &r, Direction::Fwd).unwrap().as_diagram(), Some(&rhs));
    }

    #[test]
    fn arity_mismatch_rejected() {
        assert!(RewriteRule::new("bad", Diagram::mul(), Diagram::comul()).is_err());
    }

    #[test]
    fn position_text_round_trip() {
        let p = Position { term: 2, occ: Occurrence { nodes: vec![3, 5], ins: vec![Src::Input(0), Src::Node(2, 1)] } };
        assert_eq!(p.to_string(), "t2:[3,5|in0,2.1]");
        assert_eq!(p.to_string().parse::<Position>().unwrap(), p);
        let q = Position { term: 0, occ: Occurrence { nodes: vec![], ins: vec![Src::Input(1)] } };
        assert_eq!(q.to_string().parse::<Position>().unwrap(), q);
        assert!("t0[1|]".parse::<Position>().is_err());
    }

    #[test]
    fn splitting_and_collapsing() {
        let split = RewriteRule::linear(
            "split-comul",
            LinComb::from(Diagram::comul()),
            LinComb::parse("[comul%0] + [comul%+]", None).unwrap(),
        )
        .unwrap();
        let q = LinComb::from(parse("comul ; mul").unwrap());
        let pos = &positions(&q, &split, Direction::Fwd)[0];
        let (expanded, inv) = rewrite_at(&q, &split, Direction::Fwd, pos.term, &pos.occ, None).unwrap();
        assert_eq!(expanded.terms().len(), 2);
        let inv = inv.unwrap();
        let back = apply_rule(&expanded, &split, &inv, Direction::Bwd, None).unwrap();
        assert_eq!(back, q);
        // mod h the %+ term vanishes, and the collapse still applies
        let (trunc, inv) = rewrite_at(&q, &split, Direction::Fwd, pos.term, &pos.occ, Some(0)).unwrap();
        assert_eq!(trunc.to_string(), "comul%0 ; mul");
        let back = apply_rule(&trunc, &split, &inv.unwrap(), Direction::Bwd, Some(0)).unwrap();
        assert_eq!(back, q);
    }
}
