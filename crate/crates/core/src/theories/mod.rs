//! Axiom catalog and the standard goal suite.

mod file;
mod goals;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::{Diagram, DEFAULT_MAX_WIRES};
use crate::dsl::{parse, DslError};
use crate::rewrite::{LinComb, RewriteError, RewriteRule};

pub use file::{parse_theory_file, write_theory_file, TheoryFile};
pub use goals::{goal_suite, Expectation, Goal, GoalSuite};

#[derive(Debug, Error)]
pub enum TheoryError {
    #[error("unknown flag `{0}`")]
    UnknownFlag(String),
    #[error("unknown theory `{0}`")]
    UnknownTheory(String),
    #[error("duplicate rule name `{0}`")]
    DuplicateRule(String),
    #[error("theory file line {line}: {message}")]
    File { line: usize, message: String },
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Dsl(#[from] DslError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    Assoc,
    Coassoc,
    Comm,
    Cocomm,
    MoufangL,
    MoufangM,
    MoufangR,
    ComoufangL,
    ComoufangR,
    ComoufangM,
    /// Splitting of `comul`/`mul` into their `%0` and `%+` parts.
    Split,
}

impl Flag {
    pub const ALL: [Flag; 11] = [
        Flag::Assoc,
        Flag::Coassoc,
        Flag::Comm,
        Flag::Cocomm,
        Flag::MoufangL,
        Flag::MoufangM,
        Flag::MoufangR,
        Flag::ComoufangL,
        Flag::ComoufangR,
        Flag::ComoufangM,
        Flag::Split,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flag::Assoc => "assoc",
            Flag::Coassoc => "coassoc",
            Flag::Comm => "comm",
            Flag::Cocomm => "cocomm",
            Flag::MoufangL => "moufang_l",
            Flag::MoufangM => "moufang_m",
            Flag::MoufangR => "moufang_r",
            Flag::ComoufangL => "comoufang_l",
            Flag::ComoufangR => "comoufang_r",
            Flag::ComoufangM => "comoufang_m",
            Flag::Split => "split",
        }
    }

    /// The identity this flag asserts, as (rule name, lhs, rhs).
    pub fn rules(self) -> Vec<RewriteRule> {
        let r = |name: &str, l: Diagram, rr: Diagram| RewriteRule::new(name, l, rr).expect("catalog rule");
        match self {
            Flag::Assoc => vec![r("assoc", d("mul * id(1) ; mul"), d("id(1) * mul ; mul"))],
            Flag::Coassoc => vec![r("coassoc", d("comul ; comul * id(1)"), d("comul ; id(1) * comul"))],
            Flag::Comm => vec![r("comm", d("swap ; mul"), d("mul"))],
            Flag::Cocomm => vec![r("cocomm", d("comul"), d("comul ; swap"))],
            Flag::MoufangL => vec![r("moufang-l", moufang_left().0, moufang_left().1)],
            Flag::MoufangM => vec![r("moufang-m", moufang_middle().0, moufang_middle().1)],
            Flag::MoufangR => vec![r("moufang-r", moufang_right().0, moufang_right().1)],
            Flag::ComoufangL => vec![r("comoufang-l", comoufang_left().0, comoufang_left().1)],
            Flag::ComoufangR => vec![r("comoufang-r", comoufang_right().0, comoufang_right().1)],
            Flag::ComoufangM => {
                let (l, rr) = moufang_middle();
                vec![r("comoufang-m", l.flip(), rr.flip())]
            }
            Flag::Split => vec![
                split_rule("split-comul", "comul"),
                split_rule("split-mul", "mul"),
            ],
        }
    }
}

fn split_rule(name: &str, gen: &str) -> RewriteRule {
    let parts = LinComb::parse(&format!("[{gen}%0] + [{gen}%+]"), None).expect("catalog rule");
    RewriteRule::linear(name, d(gen).into(), parts).expect("catalog rule")
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flag {
    type Err = TheoryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Flag::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| TheoryError::UnknownFlag(s.to_string()))
    }
}

fn d(s: &str) -> Diagram {
    parse(s).expect("catalog diagram")
}

/// Left Hopf-Moufang pair on inputs (a, x, y): a₁(x(a₂y)) = ((a₁x)a₂)y.
pub fn moufang_left() -> (Diagram, Diagram) {
    (
        d("comul * id(2) ; id(1) * swap * id(1) ; id(2) * mul ; id(1) * mul ; mul"),
        d("comul * id(2) ; id(1) * swap * id(1) ; mul * id(2) ; mul * id(1) ; mul"),
    )
}

/// Middle Hopf-Moufang pair on inputs (a, x, y): (a₁x)(ya₂) = (a₁(xy))a₂.
pub fn moufang_middle() -> (Diagram, Diagram) {
    (
        d("comul * id(2) ; id(1) * swap * id(1) ; id(2) * swap ; mul * mul ; mul"),
        d("comul * id(2) ; id(1) * swap * id(1) ; id(2) * swap ; id(1) * mul * id(1) ; mul * id(1) ; mul"),
    )
}

/// Right Hopf-Moufang pair on inputs (x, y, z): x(z₁(yz₂)) = ((xz₁)y)z₂.
pub fn moufang_right() -> (Diagram, Diagram) {
    (
        d("id(2) * comul ; id(1) * swap * id(1) ; id(2) * mul ; id(1) * mul ; mul"),
        d("id(2) * comul ; id(1) * swap * id(1) ; mul * id(2) ; mul * id(1) ; mul"),
    )
}

/// Left co-Moufang pair, drawn directly (1 → 3).
pub fn comoufang_left() -> (Diagram, Diagram) {
    (
        d("comul ; id(1) * comul ; id(2) * comul ; id(1) * swap * id(1) ; mul * id(2)"),
        d("comul ; comul * id(1) ; comul * id(2) ; id(1) * swap * id(1) ; mul * id(2)"),
    )
}

/// Right co-Moufang pair, drawn directly (1 → 3).
pub fn comoufang_right() -> (Diagram, Diagram) {
    (
        d("comul ; id(1) * comul ; id(2) * comul ; id(1) * swap * id(1) ; id(2) * mul"),
        d("comul ; comul * id(1) ; comul * id(2) ; id(1) * swap * id(1) ; id(2) * mul"),
    )
}

/// The seven rules every theory contains.
pub fn base_rules() -> Vec<RewriteRule> {
    let r = |name: &str, l: &str, rr: &str| RewriteRule::new(name, d(l), d(rr)).expect("catalog rule");
    vec![
        r("counit-left", "comul ; counit * id(1)", "id(1)"),
        r("counit-right", "comul ; id(1) * counit", "id(1)"),
        r("unit-left", "unit * id(1) ; mul", "id(1)"),
        r("unit-right", "id(1) * unit ; mul", "id(1)"),
        r("bialgebra", "mul ; comul", "comul * comul ; id(1) * swap * id(1) ; mul * mul"),
        r("counit-mul", "mul ; counit", "counit * counit"),
        r("comul-unit", "unit ; comul", "unit * unit"),
    ]
}

/// Named rule set. Rules are kept sorted by name, which fixes the search order.
#[derive(Clone, Debug)]
pub struct Theory {
    pub name: String,
    pub flags: BTreeSet<Flag>,
    rules: Vec<RewriteRule>,
    /// Terms of degree above this are dropped (arithmetic mod h^(N+1)).
    pub truncation: Option<u32>,
    pub max_wires: usize,
}

impl Theory {
    pub fn new(name: impl Into<String>, flags: BTreeSet<Flag>, mut rules: Vec<RewriteRule>) -> Result<Self, TheoryError> {
        rules.sort_by(|a, b| a.name.cmp(&b.name));
        for w in rules.windows(2) {
            if w[0].name == w[1].name {
                return Err(TheoryError::DuplicateRule(w[0].name.clone()));
            }
        }
        Ok(Theory { name: name.into(), flags, rules, truncation: None, max_wires: DEFAULT_MAX_WIRES })
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn rule(&self, name: &str) -> Option<&RewriteRule> {
        self.rules.iter().find(|r| r.name == name)
    }

    pub fn with_truncation(mut self, order: u32) -> Self {
        self.truncation = Some(order);
        self.name = format!("{}/h^{order}", self.name.split('/').next().unwrap_or(""));
        self
    }

    /// Adds user rules, keeping the name order.
    pub fn extend(&mut self, rules: Vec<RewriteRule>) -> Result<(), TheoryError> {
        let mut all = std::mem::take(&mut self.rules);
        all.extend(rules);
        let rebuilt = Theory::new(self.name.clone(), self.flags.clone(), all)?;
        self.rules = rebuilt.rules;
        Ok(())
    }
}

/// Base theory extended by the rules of each flag. Named `base+flag+…` with
/// flags in catalog order.
pub fn builtin_theory(flags: &[Flag]) -> Theory {
    let flags: BTreeSet<Flag> = flags.iter().copied().collect();
    let mut rules = base_rules();
    let mut name = String::from("base");
    for f in &flags {
        rules.extend(f.rules());
        name.push('+');
        name.push_str(f.name());
    }
    Theory::new(name, flags, rules).expect("catalog rule names are distinct")
}

/// Resolves a catalog name: `base`, `base+flag+…` (optionally `/h^N`), or
/// the shorthands `comoufang` (left and right co-Moufang), `moufang` (all
/// three Hopf-Moufang rules).
pub fn theory_by_name(name: &str) -> Result<Theory, TheoryError> {
    let (core, order) = match name.split_once("/h^") {
        Some((c, n)) => (c, Some(n.parse::<u32>().map_err(|_| TheoryError::UnknownTheory(name.to_string()))?)),
        None => (name, None),
    };
    let flags: Vec<Flag> = match core {
        "comoufang" => vec![Flag::ComoufangL, Flag::ComoufangR],
        "moufang" => vec![Flag::MoufangL, Flag::MoufangM, Flag::MoufangR],
        _ => {
            let mut parts = core.split('+');
            if parts.next() != Some("base") {
                return Err(TheoryError::UnknownTheory(name.to_string()));
            }
            parts.map(str::parse).collect::<Result<_, _>>()?
        }
    };
    let t = builtin_theory(&flags);
    Ok(match order {
        Some(n) => t.with_truncation(n),
        None => t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::sweedler;

    #[test]
    fn base_has_seven_rules() {
        assert_eq!(builtin_theory(&[]).rules().len(), 7);
        assert_eq!(builtin_theory(&[Flag::ComoufangL, Flag::ComoufangR]).rules().len(), 9);
        let t = builtin_theory(&[Flag::Cocomm]);
        assert_eq!(t.rules().len(), 8);
        assert_eq!(t.rule("cocomm").unwrap().rhs.to_string(), "comul ; swap");
    }

    #[test]
    fn moufang_pictures_match_formulas() {
        let s = |v: &[char], t: &str| sweedler(v, t).unwrap();
        let (l, r) = moufang_left();
        assert_eq!(l, s(&['a', 'x', 'y'], "a1 (x (a2 y))"));
        assert_eq!(r, s(&['a', 'x', 'y'], "((a1 x) a2) y"));
        let (l, r) = moufang_middle();
        assert_eq!(l, s(&['a', 'x', 'y'], "(a1 x)(y a2)"));
        assert_eq!(r, s(&['a', 'x', 'y'], "(a1 (x y)) a2"));
        let (l, r) = moufang_right();
        assert_eq!(l, s(&['x', 'y', 'z'], "x (z1 (y z2))"));
        assert_eq!(r, s(&['x', 'y', 'z'], "((x z1) y) z2"));
    }

    #[test]
    fn comoufang_is_upside_down_moufang() {
        let (ml, mr) = moufang_left();
        let (cl, cr) = comoufang_left();
        assert_eq!(ml.flip(), cl);
        assert_eq!(mr.flip(), cr);
        let (ml, mr) = moufang_right();
        let (cl, cr) = comoufang_right();
        // the right identity flips onto the mirrored picture
        assert_eq!(ml.flip().arity(), cl.arity());
        assert_eq!(mr.flip().arity(), cr.arity());
    }

    #[test]
    fn comoufang_sweedler_forms() {
        let s = |t: &str| sweedler(&['x'], t).unwrap();
        let (l, r) = comoufang_left();
        assert_eq!(l, s("x1 x221 | x21 | x222"));
        assert_eq!(r, s("x111 x12 | x112 | x2"));
        let (l, r) = comoufang_right();
        assert_eq!(l, s("x1 | x221 | x21 x222"));
        assert_eq!(r, s("x111 | x12 | x112 x2"));
    }

    #[test]
    fn names_resolve() {
        assert_eq!(theory_by_name("comoufang").unwrap().name, "base+comoufang_l+comoufang_r");
        assert_eq!(theory_by_name("base+cocomm").unwrap().rules().len(), 8);
        let t = theory_by_name("base+split/h^1").unwrap();
        assert_eq!(t.truncation, Some(1));
        assert_eq!(t.name, "base+split/h^1");
        assert!(theory_by_name("nope").is_err());
        assert!(theory_by_name("base+nope").is_err());
    }
}
