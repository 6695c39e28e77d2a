//! Theory files.
//!
//! ```text
//! theory my-theory
//! flags comoufang_l comoufang_r
//! truncation 1
//! rule swap-mul: swap ; mul = mul
//! goal g1: x11 | x12 x2 = x1 | x21 x22    (sweedler, one input x)
//! goal g2: [comul ; swap] = [comul]
//! ```
//!
//! A goal side is read as DSL when it parses as DSL, otherwise as a Sweedler
//! formula in the single input `x`. Rules are combinations in the usual text
//! form. `#` starts a comment line.

use std::collections::BTreeSet;

use super::goals::{Expectation, Goal};
use super::{builtin_theory, Flag, Theory, TheoryError};
use crate::diagram::Diagram;
use crate::dsl::{parse, sweedler};
use crate::rewrite::{LinComb, RewriteRule};

#[derive(Clone, Debug)]
pub struct TheoryFile {
    pub theory: Theory,
    pub goals: Vec<Goal>,
}

fn goal_side(text: &str) -> Result<Diagram, TheoryError> {
    let t = text.trim();
    let t = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(t);
    match parse(t) {
        Ok(d) => Ok(d),
        Err(dsl_err) => sweedler(&['x'], t).map_err(|_| dsl_err.into()),
    }
}

/// Splits `name: a = b`; the separator is the first ` = `.
fn named_equation(rest: &str) -> Option<(&str, &str, &str)> {
    let (name, eq) = rest.split_once(':')?;
    let (a, b) = eq.split_once(" = ")?;
    Some((name.trim(), a.trim(), b.trim()))
}

pub fn parse_theory_file(text: &str) -> Result<TheoryFile, TheoryError> {
    let mut name = None;
    let mut flags = BTreeSet::new();
    let mut truncation = None;
    let mut rules = Vec::new();
    let mut goal_lines = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |message: String| TheoryError::File { line: n + 1, message };
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match key {
            "theory" => name = Some(rest.trim().to_string()),
            "flags" => {
                for f in rest.split_whitespace() {
                    flags.insert(f.parse::<Flag>()?);
                }
            }
            "truncation" => {
                truncation = Some(rest.trim().parse::<u32>().map_err(|_| bad(format!("bad truncation `{rest}`")))?)
            }
            "rule" => {
                let (rn, a, b) = named_equation(rest).ok_or_else(|| bad("expected `rule name: lhs = rhs`".into()))?;
                let lhs = LinComb::parse(a, None).map_err(|e| bad(e.to_string()))?;
                let rhs = LinComb::parse(b, Some(lhs.arity())).map_err(|e| bad(e.to_string()))?;
                rules.push(RewriteRule::linear(rn, lhs, rhs).map_err(|e| bad(e.to_string()))?);
            }
            "goal" => {
                let (gn, a, b) = named_equation(rest).ok_or_else(|| bad("expected `goal name: lhs = rhs`".into()))?;
                let lhs = goal_side(a).map_err(|e| bad(e.to_string()))?;
                let rhs = goal_side(b).map_err(|e| bad(e.to_string()))?;
                if lhs.arity() != rhs.arity() {
                    return Err(bad(format!("goal `{gn}` sides have arities {:?} and {:?}", lhs.arity(), rhs.arity())));
                }
                goal_lines.push((gn.to_string(), lhs, rhs));
            }
            other => return Err(bad(format!("unknown directive `{other}`"))),
        }
    }
    let flag_list: Vec<Flag> = flags.iter().copied().collect();
    let mut theory = builtin_theory(&flag_list);
    theory.extend(rules)?;
    if let Some(n) = name {
        theory.name = n;
    }
    if let Some(order) = truncation {
        theory.truncation = Some(order);
    }
    let goals = goal_lines
        .into_iter()
        .map(|(name, lhs, rhs)| Goal {
            name,
            theory: theory.name.clone(),
            lhs,
            rhs,
            locator: "theory file".into(),
            expect: Expectation::Provable { steps: None },
        })
        .collect();
    Ok(TheoryFile { theory, goals })
}

/// Writes a file that parses back to the same flags, user rules and goals.
pub fn write_theory_file(file: &TheoryFile) -> String {
    let t = &file.theory;
    let mut out = format!("theory {}\n", t.name);
    if !t.flags.is_empty() {
        let names: Vec<_> = t.flags.iter().map(|f| f.name()).collect();
        out.push_str(&format!("flags {}\n", names.join(" ")));
    }
    if let Some(n) = t.truncation {
        out.push_str(&format!("truncation {n}\n"));
    }
    let builtin = builtin_theory(&t.flags.iter().copied().collect::<Vec<_>>());
    for r in t.rules() {
        if builtin.rule(&r.name) != Some(r) {
            out.push_str(&format!("rule {r}\n"));
        }
    }
    for g in &file.goals {
        out.push_str(&format!("goal {}: [{}] = [{}]\n", g.name, g.lhs, g.rhs));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# sample
theory mine
flags comoufang_l cocomm
rule swap-mul: swap ; mul = mul
goal g1: x11 | x12 x2 = x1 | x21 x22
goal g2: [comul ; swap] = [comul]
";

    #[test]
    fn parses_and_round_trips() {
        let f = parse_theory_file(SAMPLE).unwrap();
        assert_eq!(f.theory.name, "mine");
        assert_eq!(f.theory.rules().len(), 7 + 2 + 1);
        assert_eq!(f.goals.len(), 2);
        assert_eq!(f.goals[0].lhs.arity(), (1, 2));
        let again = parse_theory_file(&write_theory_file(&f)).unwrap();
        assert_eq!(again.theory.rules(), f.theory.rules());
        assert_eq!(again.goals, f.goals);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_theory_file("theory t\nrule oops\n").unwrap_err();
        assert!(matches!(err, TheoryError::File { line: 2, .. }), "{err}");
        assert!(matches!(parse_theory_file("flags nope").unwrap_err(), TheoryError::UnknownFlag(_)));
        assert!(parse_theory_file("rule counit-left: mul = mul").is_err());
    }
}
