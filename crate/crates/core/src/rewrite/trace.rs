//! Proof traces and their line-oriented text form.
//!
//! ```text
//! @theory base
//! @lhs comul ; counit * id(1)
//! @rhs id(1)
//! counit-left fwd t0:[0,1|in0] -> id(1)
//! ```

use std::fmt;

use thiserror::Error;

use super::{apply_rule, rule_named, Direction, LinComb, Position, RewriteError};
use crate::theories::Theory;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: String,
    pub dir: Direction,
    pub position: Position,
    /// Canonical state after the step.
    pub result: LinComb,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofTrace {
    pub theory: String,
    pub lhs: LinComb,
    pub rhs: LinComb,
    pub steps: Vec<TraceStep>,
}

/// Replay failure. `step` is 1-based; `steps + 1` means the final state
/// differs from the stated right-hand side.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("replay failed at step {step}: {message}")]
pub struct ReplayError {
    pub step: usize,
    pub message: String,
}

impl ProofTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Re-applies every step from the left endpoint and checks each stated
    /// intermediate state and the right endpoint exactly.
    pub fn replay(&self, theory: &Theory) -> Result<(), ReplayError> {
        let mut current = self.lhs.clone().truncated(theory.truncation);
        for (k, step) in self.steps.iter().enumerate() {
            let fail = |message: String| ReplayError { step: k + 1, message };
            let rule = rule_named(theory, &step.rule).map_err(|e| fail(e.to_string()))?;
            let next = apply_rule(&current, rule, &step.position, step.dir, theory.truncation)
                .map_err(|e| fail(e.to_string()))?;
            if next != step.result {
                return Err(fail(format!("expected `{}`, got `{next}`", step.result)));
            }
            current = next;
        }
        if current != self.rhs.clone().truncated(theory.truncation) {
            return Err(ReplayError {
                step: self.steps.len() + 1,
                message: format!("final state `{current}` differs from `{}`", self.rhs),
            });
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<ProofTrace, RewriteError> {
        let mut theory = None;
        let mut lhs = None;
        let mut rhs = None;
        let mut steps = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |m: &str| RewriteError::Parse(format!("trace line {}: {m}", n + 1));
            if let Some(rest) = line.strip_prefix("@theory ") {
                theory = Some(rest.trim().to_string());
            } else if let Some(rest) = line.strip_prefix("@lhs ") {
                lhs = Some(LinComb::parse(rest, None)?);
            } else if let Some(rest) = line.strip_prefix("@rhs ") {
                rhs = Some(LinComb::parse(rest, lhs.as_ref().map(LinComb::arity))?);
            } else {
                let (head, result) = line.split_once(" -> ").ok_or_else(|| err("missing ` -> `"))?;
                let mut parts = head.split_whitespace();
                let (Some(rule), Some(dir), Some(pos), None) = (parts.next(), parts.next(), parts.next(), parts.next())
                else {
                    return Err(err("expected `<rule> <dir> <position> -> <result>`"));
                };
                let arity = lhs.as_ref().map(LinComb::arity);
                steps.push(TraceStep {
                    rule: rule.to_string(),
                    dir: dir.parse()?,
                    position: pos.parse()?,
                    result: LinComb::parse(result, arity)?,
                });
            }
        }
        let missing = |what: &str| RewriteError::Parse(format!("trace is missing {what}"));
        Ok(ProofTrace {
            theory: theory.ok_or_else(|| missing("@theory"))?,
            lhs: lhs.ok_or_else(|| missing("@lhs"))?,
            rhs: rhs.ok_or_else(|| missing("@rhs"))?,
            steps,
        })
    }
}

impl fmt::Display for ProofTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "@theory {}", self.theory)?;
        writeln!(f, "@lhs {}", self.lhs)?;
        writeln!(f, "@rhs {}", self.rhs)?;
        for s in &self.steps {
            writeln!(f, "{} {} {} -> {}", s.rule, s.dir, s.position, s.result)?;
        }
        Ok(())
    }
}
